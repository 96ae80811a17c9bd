#pragma once

#include "types.hpp"
#include "double_double.hpp"
#include "summation.hpp"
#include "bernoulli.hpp"
#include "quadrature.hpp"
#include "gamma.hpp"
#include "constants.hpp"
#include "zeta.hpp"
#include "psi1.hpp"
#include "expint.hpp"
#include "mittag_leffler.hpp"
#include "arith.hpp"
#include "lambert.hpp"
#include "sigma_transform.hpp"
#include "kloosterman.hpp"
#include "moments.hpp"
#include "report.hpp"
