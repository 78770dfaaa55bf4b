#include "ffbm/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ffbm {

LogFactorial::LogFactorial(std::int64_t max_n) : table_(std::max<std::int64_t>(max_n, 1) + 1) {
  table_[0] = 0.0;
  for (std::size_t n = 1; n < table_.size(); ++n) {
    table_[n] = table_[n - 1] + std::log(static_cast<double>(n));
  }
}

double LogFactorial::slow(std::int64_t n) {
  if (n < 0) throw std::domain_error("factorial of negative number");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double LogFactorial::double_factorial_even(std::int64_t n) const {
  if (n % 2 != 0) throw std::domain_error("double factorial of odd number");
  std::int64_t m = n / 2;
  return static_cast<double>(m) * std::log(2.0) + (*this)(m);
}

double log_multiset(double n, double m) {
  if (m == 0.0) return 0.0;
  return std::lgamma(n + m) - std::lgamma(n) - std::lgamma(m + 1.0);
}

double log_bigint(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(x));
  if (bits < 1000) return std::log(x.convert_to<double>());
  std::int64_t shift = bits - 62;
  BigInt top = x >> static_cast<unsigned>(shift);
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

BigInt count_partitions(std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0) throw std::domain_error("count_partitions: negative argument");
  n = std::min(n, m);
  std::vector<BigInt> q(m + 1, 0);
  q[0] = 1;
  for (std::int64_t parts = 1; parts <= n; ++parts) {
    for (std::int64_t j = parts; j <= m; ++j) q[j] += q[j - parts];
  }
  return q[m];
}

PartitionCountTable::PartitionCountTable(std::int64_t max_m, std::int64_t max_n)
    : max_m_(max_m), max_n_(std::min(max_n, max_m)) {
  if (max_m < 0 || max_n < 0) throw std::domain_error("negative table bounds");
  const std::int64_t rows = max_m_ + 1;
  table_.resize(static_cast<std::size_t>((max_n_ + 1) * rows));

  std::vector<BigInt> q(rows, 0);
  q[0] = 1;
  for (std::int64_t n = 0; n <= max_n_; ++n) {
    if (n > 0) {
      for (std::int64_t m = n; m <= max_m_; ++m) q[m] += q[m - n];
    }
    double* column = &table_[n * rows];
    for (std::int64_t m = 0; m <= max_m_; ++m) column[m] = log_bigint(q[m]);
  }
}

double PartitionCountTable::log_q(std::int64_t m, std::int64_t n) const {
  if (m < 0 || n < 0) throw std::domain_error("log_q: negative argument");
  if (m > max_m_) {
    throw std::out_of_range("log_q: m = " + std::to_string(m) + " exceeds table bound " +
                            std::to_string(max_m_));
  }
  if (n > m) n = m;
  if (n > max_n_) {
    throw std::out_of_range("log_q: n = " + std::to_string(n) + " exceeds table bound");
  }
  return table_[n * (max_m_ + 1) + m];
}

}  // namespace ffbm
