#pragma once

// Umbrella header.

#include "weightlab/catalog.hpp"
#include "weightlab/functionals.hpp"
#include "weightlab/geometry.hpp"
#include "weightlab/norms.hpp"
#include "weightlab/numeric_check.hpp"
#include "weightlab/operators.hpp"
#include "weightlab/parallel.hpp"
#include "weightlab/plan.hpp"
#include "weightlab/quadrature.hpp"
#include "weightlab/rational.hpp"
#include "weightlab/report.hpp"
#include "weightlab/setting.hpp"
#include "weightlab/symbolic.hpp"
#include "weightlab/weight.hpp"
