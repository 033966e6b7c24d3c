// Experiment driver: region maps, membership reports, counterexample scans,
// and operator-norm ratio experiments, all seeded and emitting CSV/JSON.
//
// Exit codes: 0 pass, 1 experiment failure, 2 configuration error,
// 3 numeric failure (tolerance not met).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "weightlab/parallel.hpp"
#include "weightlab/weightlab.hpp"

namespace fs = std::filesystem;
using namespace weightlab;

namespace {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rat parse_rat(const nlohmann::json& j, const std::string& what) {
    try {
        if (j.is_string()) return rat_from_string(j.get<std::string>());
        if (j.is_number_integer()) return Rat(j.get<long long>());
        if (j.is_number_float()) {
            auto r = Rat::from_double(j.get<double>());
            if (!r) throw ConfigError(what + ": value does not snap to a rational");
            return *r;
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(what + ": " + e.what());
    }
    throw ConfigError(what + ": expected a rational (string \"p/q\" or number)");
}

LebExponent parse_exponent(const nlohmann::json& j, const std::string& what) {
    if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity"))
        return LebExponent::infinity();
    return LebExponent::finite(parse_rat(j, what));
}

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

Setting parse_setting(const nlohmann::json& j) {
    require_keys(j, {"n", "alpha", "delta", "m", "eta", "r", "delta_tilde"}, "setting");
    for (const char* k : {"n", "alpha", "delta", "m", "r", "delta_tilde"})
        if (!j.contains(k)) throw ConfigError(std::string("setting: missing '") + k + "'");
    int n = j.at("n").get<int>();
    int m = j.at("m").get<int>();
    Rat eta = j.contains("eta") ? parse_rat(j.at("eta"), "setting.eta") : Rat(1);
    try {
        return Setting(n, parse_rat(j.at("alpha"), "setting.alpha"),
                       parse_rat(j.at("delta"), "setting.delta"), m, eta,
                       parse_exponent(j.at("r"), "setting.r"),
                       parse_rat(j.at("delta_tilde"), "setting.delta_tilde"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("setting: ") + e.what());
    }
}

Weight parse_weight(const nlohmann::json& j, const std::string& where) {
    require_keys(j, {"type", "exponent", "inner_exponent", "outer_exponent", "break_radius"},
                 where);
    std::string type = j.at("type").get<std::string>();
    if (type == "zero") return Weight::zero();
    if (type == "power") return Weight::power(parse_rat(j.at("exponent"), where + ".exponent"));
    if (type == "piecewise_power") {
        double br = j.contains("break_radius") ? j.at("break_radius").get<double>() : 1.0;
        return Weight::piecewise(parse_rat(j.at("inner_exponent"), where + ".inner_exponent"),
                                 parse_rat(j.at("outer_exponent"), where + ".outer_exponent"), br);
    }
    throw ConfigError(where + ": unknown weight type '" + type + "'");
}

BallSamplePlan parse_plan(const nlohmann::json& j, int n, uint64_t seed_override, bool has_seed) {
    require_keys(j,
                 {"r_min", "r_max", "radius_count", "center_min", "center_max", "center_count",
                  "seed", "jitter"},
                 "plan");
    BallSamplePlan p;
    p.n = n;
    if (j.contains("r_min")) p.r_min = j.at("r_min").get<double>();
    if (j.contains("r_max")) p.r_max = j.at("r_max").get<double>();
    if (j.contains("radius_count")) p.radius_count = j.at("radius_count").get<int>();
    if (j.contains("center_min")) p.center_min = j.at("center_min").get<double>();
    if (j.contains("center_max")) p.center_max = j.at("center_max").get<double>();
    if (j.contains("center_count")) p.center_count = j.at("center_count").get<int>();
    if (j.contains("seed")) p.seed = j.at("seed").get<uint64_t>();
    if (j.contains("jitter")) p.jitter = j.at("jitter").get<double>();
    if (has_seed) p.seed = seed_override;
    if (p.radius_count < 2 || p.r_min <= 0 || p.r_max <= p.r_min)
        throw ConfigError("plan: invalid radius grid");
    return p;
}

FunctionalOptions parse_functional_options(const nlohmann::json& cfg) {
    FunctionalOptions opts;
    if (cfg.contains("quadrature")) {
        const auto& q = cfg.at("quadrature");
        require_keys(q, {"rel_tol", "max_subdivisions"}, "quadrature");
        if (q.contains("rel_tol")) opts.quad.rel_tol = q.at("rel_tol").get<double>();
        if (q.contains("max_subdivisions"))
            opts.quad.max_subdivisions = q.at("max_subdivisions").get<int>();
    }
    if (cfg.contains("truncation_exponent"))
        opts.truncation_exponent = cfg.at("truncation_exponent").get<int>();
    if (opts.truncation_exponent < 4 || opts.truncation_exponent > 64)
        throw ConfigError("truncation_exponent must lie in [4, 64]");
    return opts;
}

Kernel parse_kernel(const nlohmann::json& j) {
    require_keys(j, {"type", "alpha", "n"}, "kernel");
    std::string type = j.at("type").get<std::string>();
    if (type == "hilbert") return Kernel::hilbert();
    if (type == "fractional") {
        int n = j.contains("n") ? j.at("n").get<int>() : 1;
        return Kernel::fractional(j.at("alpha").get<double>(), n);
    }
    throw ConfigError("kernel: unknown type '" + type + "'");
}

Symbol parse_symbol(const nlohmann::json& j, double default_delta) {
    require_keys(j, {"type", "delta"}, "symbol");
    std::string type = j.contains("type") ? j.at("type").get<std::string>() : "abs_power";
    double delta = j.contains("delta") ? j.at("delta").get<double>() : default_delta;
    if (type == "abs_power") return Symbol::abs_power(delta);
    throw ConfigError("symbol: unknown type '" + type + "'");
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct RunContext {
    nlohmann::ordered_json config;
    std::string digest;
    uint64_t seed = 0;
    bool has_seed = false;
    unsigned threads = 1;
    fs::path out_dir = ".";

    std::string stamp_comment() const {
        return "# tool_version=" + std::string(kToolVersion) + "\n# config_digest=" + digest +
               "\n# seed=" + std::to_string(seed) + "\n";
    }
    void stamp(nlohmann::ordered_json& j) const {
        j["tool_version"] = kToolVersion;
        j["config_digest"] = digest;
        j["seed"] = seed;
    }
    void write(const std::string& name, const std::string& payload) const {
        fs::create_directories(out_dir);
        std::ofstream os(out_dir / name, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open output file " + (out_dir / name).string());
        os << payload;
        if (!os) throw std::runtime_error("failed writing output file " + name);
    }
};

const std::set<std::string> kTopLevelKeys = {
    "schema_version", "setting",  "pair",   "kernel", "symbol",
    "order_m",        "plan",     "quadrature", "truncation_exponent",
    "grid",           "family",   "ratio_bound", "ball",
    "numeric"};

RunContext load_context(const std::string& config_path, const std::string& out_dir,
                        unsigned threads, bool has_seed, uint64_t seed) {
    RunContext ctx;
    std::ifstream is(config_path);
    if (!is) throw ConfigError("cannot open config file " + config_path);
    try {
        ctx.config = nlohmann::ordered_json::parse(is);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    require_keys(ctx.config, kTopLevelKeys, "config");
    if (!ctx.config.contains("schema_version") || ctx.config.at("schema_version").get<int>() != 1)
        throw ConfigError("config: schema_version must be 1");
    // canonical digest: sorted-key dump of the raw config plus the seed override
    nlohmann::json canonical = nlohmann::json::parse(ctx.config.dump());
    ctx.has_seed = has_seed;
    ctx.seed = seed;
    if (has_seed) canonical["__seed_override"] = seed;
    ctx.digest = hex64(fnv1a(canonical.dump()));
    ctx.threads = resolve_threads(threads);
    ctx.out_dir = out_dir;
    return ctx;
}

WeightPair resolve_pair(const RunContext& ctx, const Setting& s) {
    if (!ctx.config.contains("pair")) throw ConfigError("config: missing 'pair'");
    const auto& j = ctx.config.at("pair");
    if (j.contains("catalog_key")) {
        require_keys(j, {"catalog_key"}, "pair");
        std::string key = j.at("catalog_key").get<std::string>();
        Catalog cat = catalog(s);
        for (const auto& e : cat.entries)
            if (e.key == key) return e.pair;
        std::string reasons;
        for (const auto& [k, why] : cat.omitted)
            if (k == key || k == "all") reasons += " (" + why + ")";
        throw ConfigError("pair: catalog key '" + key + "' not available at this setting" +
                          reasons);
    }
    require_keys(j, {"w", "v"}, "pair");
    if (!j.contains("w") || !j.contains("v")) throw ConfigError("pair: need both 'w' and 'v'");
    try {
        return WeightPair(parse_weight(j.at("w"), "pair.w"), parse_weight(j.at("v"), "pair.v"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("pair: ") + e.what());
    }
}

// ---------------------------------------------------------------- region-map

int run_region_map(const RunContext& ctx) {
    Setting base = parse_setting(ctx.config.at("setting"));
    Rat r_lo(0), r_hi(1);
    Rat dt_lo = base.alpha_tilde() - Rat(base.n()) - Rat(3) * base.delta();
    Rat dt_hi = base.delta() + Rat(1, 5);
    int rres = 100, dres = 100;
    if (ctx.config.contains("grid")) {
        const auto& g = ctx.config.at("grid");
        require_keys(g,
                     {"r_inv_min", "r_inv_max", "delta_tilde_min", "delta_tilde_max",
                      "r_resolution", "dt_resolution"},
                     "grid");
        if (g.contains("r_inv_min")) r_lo = parse_rat(g.at("r_inv_min"), "grid.r_inv_min");
        if (g.contains("r_inv_max")) r_hi = parse_rat(g.at("r_inv_max"), "grid.r_inv_max");
        if (g.contains("delta_tilde_min"))
            dt_lo = parse_rat(g.at("delta_tilde_min"), "grid.delta_tilde_min");
        if (g.contains("delta_tilde_max"))
            dt_hi = parse_rat(g.at("delta_tilde_max"), "grid.delta_tilde_max");
        if (g.contains("r_resolution")) rres = g.at("r_resolution").get<int>();
        if (g.contains("dt_resolution")) dres = g.at("dt_resolution").get<int>();
    }
    RegionGrid grid;
    try {
        grid = region_grid(base, r_lo, r_hi, dt_lo, dt_hi, rres, dres);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
    ctx.write("region_map.csv", ctx.stamp_comment() + region_grid_csv(grid));
    std::cout << "region-map: " << grid.points.size() << " points -> "
              << (ctx.out_dir / "region_map.csv").string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- check-pair

int run_check_pair(const RunContext& ctx) {
    Setting s = parse_setting(ctx.config.at("setting"));
    WeightPair pair = resolve_pair(ctx, s);
    FunctionalOptions fopts = parse_functional_options(ctx.config);
    BallSamplePlan plan;
    plan.n = s.n();
    if (ctx.has_seed) plan.seed = ctx.seed;
    if (ctx.config.contains("plan"))
        plan = parse_plan(ctx.config.at("plan"), s.n(), ctx.seed, ctx.has_seed);

    nlohmann::ordered_json rep;
    ctx.stamp(rep);
    rep["setting"] = to_json(s);
    rep["pair"] = to_json(pair);

    bool symbolic_ok = pair.w.is_power_like() && pair.v.is_power_like();
    MembershipVerdict sym, old_sym;
    if (symbolic_ok) {
        sym = check_membership_symbolic(pair, s);
        rep["symbolic"] = to_json(sym);
        old_sym = check_membership_symbolic(pair, s, ClassKind::OldTwoWeight);
        rep["symbolic_old_class"] = to_json(old_sym);
    } else {
        rep["symbolic"] = "unsupported for callable weights; numeric only";
    }
    NumericCheckOptions nopts;
    nopts.fopts = fopts;
    MembershipVerdict num = check_membership_numeric(pair, s, plan, nopts);
    rep["numeric"] = to_json(num);

    bool disagree = false;
    if (symbolic_ok) {
        disagree = (sym.status == VerdictStatus::Member) != (num.status == VerdictStatus::Member);
        if (sym.nonmember() && num.nonmember() && sym.failing != num.failing) disagree = true;
    }
    rep["disagreement"] = disagree;
    ctx.write("check_pair.json", rep.dump(2) + "\n");
    std::cout << "check-pair: "
              << (symbolic_ok ? verdict_status_name(sym.status) : "(no symbolic)") << " / "
              << verdict_status_name(num.status) << (disagree ? "  DISAGREE" : "") << " -> "
              << (ctx.out_dir / "check_pair.json").string() << "\n";
    return disagree ? 1 : 0;
}

// ------------------------------------------------------------------- catalog

int run_catalog(const RunContext& ctx) {
    Setting s = parse_setting(ctx.config.at("setting"));
    bool run_numeric = ctx.config.contains("numeric") && ctx.config.at("numeric").get<bool>();
    FunctionalOptions fopts = parse_functional_options(ctx.config);
    Catalog cat = catalog(s);

    nlohmann::ordered_json rep;
    ctx.stamp(rep);
    rep["setting"] = to_json(s);
    rep["entries"] = nlohmann::ordered_json::array();
    bool mismatch = false;
    std::vector<nlohmann::ordered_json> rows(cat.entries.size());
    parallel_for(cat.entries.size(), ctx.threads, [&](size_t i) {
        const auto& e = cat.entries[i];
        nlohmann::ordered_json row;
        row["key"] = e.key;
        row["pair"] = to_json(e.pair);
        row["construction"] = e.construction;
        row["expected"] = verdict_status_name(e.expected.status);
        MembershipVerdict sym = check_membership_symbolic(e.pair, s);
        row["symbolic"] = to_json(sym);
        bool ok = sym.status == e.expected.status &&
                  (!sym.nonmember() || sym.failing == e.expected.failing);
        if (e.expected_old) {
            MembershipVerdict so = check_membership_symbolic(e.pair, s, ClassKind::OldTwoWeight);
            row["symbolic_old_class"] = to_json(so);
            ok = ok && so.status == e.expected_old->status;
        }
        if (run_numeric) {
            BallSamplePlan plan;
            plan.n = s.n();
            if (ctx.has_seed) plan.seed = ctx.seed;
            NumericCheckOptions nopts;
            nopts.fopts = fopts;
            MembershipVerdict num = check_membership_numeric(e.pair, s, plan, nopts);
            row["numeric"] = to_json(num);
            ok = ok &&
                 (num.status == VerdictStatus::Member) == (sym.status == VerdictStatus::Member);
        }
        row["as_expected"] = ok;
        rows[i] = std::move(row);
    });
    for (auto& r : rows) {
        if (!r.at("as_expected").get<bool>()) mismatch = true;
        rep["entries"].push_back(std::move(r));
    }
    rep["omitted"] = nlohmann::ordered_json::array();
    for (const auto& [k, why] : cat.omitted)
        rep["omitted"].push_back({{"key", k}, {"reason", why}});
    ctx.write("catalog.json", rep.dump(2) + "\n");
    std::cout << "catalog: " << cat.entries.size() << " entries, " << cat.omitted.size()
              << " omitted" << (mismatch ? ", MISMATCH" : "") << " -> "
              << (ctx.out_dir / "catalog.json").string() << "\n";
    return mismatch ? 1 : 0;
}

// --------------------------------------------------------------- scan-global

int run_scan_global(const RunContext& ctx) {
    Setting s = parse_setting(ctx.config.at("setting"));
    WeightPair pair = resolve_pair(ctx, s);
    FunctionalOptions fopts = parse_functional_options(ctx.config);
    Ball ball(0.0, 1.0);
    if (ctx.config.contains("ball")) {
        const auto& b = ctx.config.at("ball");
        require_keys(b, {"center", "radius"}, "ball");
        ball = Ball(b.contains("center") ? b.at("center").get<double>() : 0.0,
                    b.contains("radius") ? b.at("radius").get<double>() : 1.0);
    }
    FunctionalValue g = global_functional(pair, s, ball, fopts);

    std::string csv = ctx.stamp_comment() + "j,M,global_functional,tail_corrected\n";
    std::vector<double> lnM, fr;
    double rp = s.r_conj().is_infinite() ? 1.0 : s.r_conj().value().to_double();
    for (size_t i = 0; i < g.truncation_values.size(); ++i) {
        int j = static_cast<int>(i) + 1;
        double M = std::ldexp(ball.radius, j);
        csv += std::to_string(j) + "," + fmt17(M) + "," + fmt17(g.truncation_values[i]) + "," +
               fmt17(g.corrected_values[i]) + "\n";
        lnM.push_back(std::log(M));
        fr.push_back(std::pow(g.truncation_values[i], rp));
    }
    ctx.write("scan_global.csv", csv);

    LineFit fit = fit_line(lnM, fr);
    bool cauchy = false;
    if (g.corrected_values.size() >= 2) {
        size_t k = g.corrected_values.size();
        cauchy = std::fabs(g.corrected_values[k - 1] - g.corrected_values[k - 2]) < 1e-6;
    }
    nlohmann::ordered_json rep;
    ctx.stamp(rep);
    rep["setting"] = to_json(s);
    rep["pair"] = to_json(pair);
    rep["ball"] = to_json(ball);
    rep["status"] = g.status == FunctionalStatus::Finite
                        ? "finite"
                        : (g.status == FunctionalStatus::Divergent ? "divergent"
                                                                   : "not-locally-integrable");
    rep["growth_order"] = g.growth_order;
    rep["fit_rprime_power_vs_logM"] = {{"slope", fit.slope}, {"r2", fit.r2}};
    rep["cauchy_1e6_at_final_level"] = cauchy;
    rep["final_value"] = g.value;
    ctx.write("scan_global.json", rep.dump(2) + "\n");
    std::cout << "scan-global: status=" << rep["status"].get<std::string>()
              << " slope=" << fit.slope << " r2=" << fit.r2 << " -> "
              << (ctx.out_dir / "scan_global.csv").string() << "\n";
    return 0;
}

// ------------------------------------------------------------ verify-theorem

int run_verify_theorem(const RunContext& ctx) {
    Setting s = parse_setting(ctx.config.at("setting"));
    WeightPair pair = resolve_pair(ctx, s);
    FunctionalOptions fopts = parse_functional_options(ctx.config);

    Kernel kernel = ctx.config.contains("kernel")
                        ? parse_kernel(ctx.config.at("kernel"))
                        : Kernel::fractional(s.alpha().to_double());
    Symbol symbol = ctx.config.contains("symbol")
                        ? parse_symbol(ctx.config.at("symbol"), s.delta().to_double())
                        : Symbol::abs_power(s.delta().to_double());
    int m = ctx.config.contains("order_m") ? ctx.config.at("order_m").get<int>() : s.m();
    CommutatorSpec cspec(kernel, symbol, m);

    std::vector<double> amplitudes{1.0, 4.0, 16.0};
    int g_count = 5;
    uint64_t g_seed = 1;
    double ratio_bound = 5.0;
    if (ctx.config.contains("family")) {
        const auto& f = ctx.config.at("family");
        require_keys(f, {"amplitudes", "g_count", "g_seed"}, "family");
        if (f.contains("amplitudes")) amplitudes = f.at("amplitudes").get<std::vector<double>>();
        if (f.contains("g_count")) g_count = f.at("g_count").get<int>();
        if (f.contains("g_seed")) g_seed = f.at("g_seed").get<uint64_t>();
    }
    if (ctx.config.contains("ratio_bound"))
        ratio_bound = ctx.config.at("ratio_bound").get<double>();
    if (ctx.has_seed) g_seed = ctx.seed;

    // oscillation plan: a handful of balls; the sampled seminorm is a lower
    // bound, the experiment checks stability of the ratio across the family
    BallSamplePlan plan;
    plan.n = s.n();
    plan.r_min = 0.5;
    plan.r_max = 8.0;
    plan.radius_count = 3;
    plan.center_min = 4.0;
    plan.center_max = 4.0;
    plan.center_count = 1;
    if (ctx.config.contains("plan"))
        plan = parse_plan(ctx.config.at("plan"), s.n(), ctx.seed, ctx.has_seed);

    // fixed smooth family g(x) = 1 + 0.5 sin(omega x + phase)
    std::mt19937_64 rng(g_seed);
    std::uniform_real_distribution<double> uo(0.5, 2.0), up(0.0, 2.0 * kPi);
    struct GSpec { double omega, phase; };
    std::vector<GSpec> gs;
    for (int i = 0; i < g_count; ++i) gs.push_back({uo(rng), up(rng)});

    const double beta = s.delta_tilde().to_double() / s.n();
    const double bnorm_m = std::pow(symbol.seminorm(), m);
    // nested quadrature: the outer oscillation integral sees the inner
    // commutator tolerance as noise, so it runs two decades looser
    QuadratureSpec inner_quad = fopts.quad.with_tol(std::max(fopts.quad.rel_tol, 1e-7));
    QuadratureSpec outer_quad = fopts.quad.with_tol(std::max(1e3 * inner_quad.rel_tol, 1e-5));
    outer_quad.abs_tol = 1e-9;

    struct Row { double A, omega, phase, ratio, seminorm_sup, f_norm; };
    std::vector<Row> rows(amplitudes.size() * gs.size());
    parallel_for(rows.size(), ctx.threads, [&](size_t idx) {
        double A = amplitudes[idx / gs.size()];
        GSpec gsp = gs[idx % gs.size()];
        Weight v = pair.v;
        SampledFunction f;
        f.support_radius = A;
        f.eval = [v, gsp](double x) {
            return v(x) * (1.0 + 0.5 * std::sin(gsp.omega * x + gsp.phase));
        };
        if (v.is_power_like() && !v.is_zero() && v.inner_exponent().sign() != 0)
            f.singularities.push_back({0.0, v.origin_exponent()});
        f.name = "v*g*chi";

        double fnorm = lr_norm(f, pair.v, s.r(), fopts.quad);
        SampledFunction tf;
        tf.support_radius = 1e30; // T f lives on all of R; only ball values are used
        tf.eval = [&cspec, f, inner_quad](double x) {
            return apply_commutator(cspec, f, x, inner_quad).value;
        };
        tf.name = "Tf";
        OscillationReport orep = seminorm(tf, pair.w, beta, plan, outer_quad);
        double denom = bnorm_m * fnorm;
        rows[idx] = {A, gsp.omega, gsp.phase, denom > 0 ? orep.sup / denom : 0.0, orep.sup,
                     fnorm};
    });

    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    nlohmann::ordered_json rep;
    ctx.stamp(rep);
    rep["setting"] = to_json(s);
    rep["pair"] = to_json(pair);
    rep["kernel"] = kernel.descriptor();
    rep["symbol"] = symbol.name();
    rep["order_m"] = m;
    rep["beta"] = beta;
    rep["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        rep["rows"].push_back({{"A", r.A},
                               {"omega", r.omega},
                               {"phase", r.phase},
                               {"seminorm_sup", r.seminorm_sup},
                               {"f_over_v_norm", r.f_norm},
                               {"ratio", r.ratio}});
        if (r.ratio > 0) {
            rmin = std::min(rmin, r.ratio);
            rmax = std::max(rmax, r.ratio);
        }
    }
    bool pass = rmin <= rmax && rmax / rmin <= ratio_bound;
    rep["ratio_min"] = rmin;
    rep["ratio_max"] = rmax;
    rep["ratio_spread"] = rmin > 0 ? rmax / rmin : 0.0;
    rep["ratio_bound"] = ratio_bound;
    rep["pass"] = pass;
    ctx.write("verify_theorem.json", rep.dump(2) + "\n");
    std::cout << "verify-theorem: spread=" << (rmin > 0 ? rmax / rmin : 0.0)
              << (pass ? " PASS" : " FAIL") << " -> "
              << (ctx.out_dir / "verify_theorem.json").string() << "\n";
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"weightlab: two-weight class functionals, membership checks, and "
                 "operator-norm experiments"};
    app.set_version_flag("--version", std::string("weightlab ") + kToolVersion);

    std::string config_path, out_dir = ".";
    unsigned threads = 0;
    uint64_t seed = 0;
    bool has_seed = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--threads", threads, "worker threads (WEIGHTLAB_THREADS overrides)");
        cmd->add_option("--seed", seed, "seed override")
            ->each([&](const std::string&) { has_seed = true; });
    };
    CLI::App* c_region = app.add_subcommand("region-map", "classify the (1/r, delta_tilde) plane");
    CLI::App* c_check = app.add_subcommand("check-pair", "symbolic + numeric membership report");
    CLI::App* c_verify = app.add_subcommand("verify-theorem", "operator-norm ratio experiment");
    CLI::App* c_scan = app.add_subcommand("scan-global", "global-condition truncation scan");
    CLI::App* c_catalog = app.add_subcommand("catalog", "instantiate the example catalog");
    for (auto* c : {c_region, c_check, c_verify, c_scan, c_catalog}) add_common(c);
    app.require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        RunContext ctx = load_context(config_path, out_dir, threads, has_seed, seed);
        if (c_region->parsed()) return run_region_map(ctx);
        if (c_check->parsed()) return run_check_pair(ctx);
        if (c_verify->parsed()) return run_verify_theorem(ctx);
        if (c_scan->parsed()) return run_scan_global(ctx);
        if (c_catalog->parsed()) return run_catalog(ctx);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const QuadratureError& e) {
        std::cerr << "numeric failure: " << e.what() << " (estimate " << e.estimate
                  << ", error bound " << e.error_bound << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
