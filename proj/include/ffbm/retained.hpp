#pragma once

#include <cstdint>
#include <vector>

namespace ffbm {

// Burn-in and thinning: {T*kappa + i*lambda : 0 <= i <= floor(T(1-kappa)/lambda)}.
// T*kappa is rounded to the nearest integer before the integer arithmetic so
// that e.g. T = 10000, kappa = 0.4 yields 601 indices despite 0.6 not being
// representable.  Throws UsageError on kappa outside [0, 1), lambda < 1 or
// T < 0.
std::vector<std::int64_t> retained_indices(std::int64_t iterations, double burn_in,
                                           std::int64_t thinning);

}  // namespace ffbm
