#include "ffbm/retained.hpp"

#include <cmath>

#include "ffbm/errors.hpp"

namespace ffbm {

std::vector<std::int64_t> retained_indices(std::int64_t iterations, double burn_in,
                                           std::int64_t thinning) {
  if (iterations < 0) throw UsageError("iteration count must be nonnegative");
  if (!(burn_in >= 0.0 && burn_in < 1.0)) throw UsageError("burn-in fraction must lie in [0, 1)");
  if (thinning < 1) throw UsageError("thinning stride must be at least 1");

  const auto start = static_cast<std::int64_t>(std::llround(static_cast<double>(iterations) * burn_in));
  const std::int64_t count = (iterations - start) / thinning;
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(count + 1));
  for (std::int64_t i = 0; i <= count; ++i) out.push_back(start + i * thinning);
  return out;
}

}  // namespace ffbm
