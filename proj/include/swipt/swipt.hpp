#pragma once

#include "swipt/analytic_coop.hpp"
#include "swipt/analytic_nc.hpp"
#include "swipt/errors.hpp"
#include "swipt/estimate.hpp"
#include "swipt/model.hpp"
#include "swipt/optimizer.hpp"
#include "swipt/parallel.hpp"
#include "swipt/rng.hpp"
#include "swipt/sim.hpp"
#include "swipt/specfun.hpp"
#include "swipt/stats.hpp"

namespace swipt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace swipt
