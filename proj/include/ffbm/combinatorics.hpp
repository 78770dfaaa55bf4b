#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ffbm {

using BigInt = boost::multiprecision::cpp_int;

// log(n!) served from a table up to `max_n`, lgamma beyond.
class LogFactorial {
 public:
  explicit LogFactorial(std::int64_t max_n = 0);

  double operator()(std::int64_t n) const {
    return n < static_cast<std::int64_t>(table_.size()) ? table_[n] : slow(n);
  }

  // log((2m)!!) = m log 2 + log m!; argument must be even.
  double double_factorial_even(std::int64_t n) const;

 private:
  static double slow(std::int64_t n);
  std::vector<double> table_;
};

// log C(n + m - 1, m): number of histograms of m samples over n bins.
double log_multiset(double n, double m);

// Natural log of a positive big integer.
double log_bigint(const BigInt& x);

// Number of partitions of m into at most n parts, exact.
BigInt count_partitions(std::int64_t m, std::int64_t n);

// Memoized log q(m, n) for 0 <= m <= max_m, any n >= 0.
//
// Built by the exact big-integer recurrence q(m, n) = q(m, n-1) + q(m-n, n),
// one column of n at a time, storing only the logarithm.  Columns with
// n > m are not stored since q(m, n) = q(m, m) there.
class PartitionCountTable {
 public:
  PartitionCountTable() = default;
  PartitionCountTable(std::int64_t max_m, std::int64_t max_n);

  std::int64_t max_m() const { return max_m_; }

  // log q(m, n); -inf when q = 0 (m > 0, n = 0).  Throws std::out_of_range
  // if m exceeds the table.
  double log_q(std::int64_t m, std::int64_t n) const;

 private:
  std::int64_t max_m_ = -1;
  std::int64_t max_n_ = -1;
  std::vector<double> table_;  // column n holds m = 0..max_m
};

}  // namespace ffbm
