#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ffbm/combinatorics.hpp"
#include "oracles.hpp"

using namespace ffbm;

TEST_CASE("log factorial table and fallback") {
  LogFactorial lf(10);
  CHECK(lf(0) == doctest::Approx(0.0));
  CHECK(lf(5) == doctest::Approx(std::log(120.0)));
  CHECK(lf(50) == doctest::Approx(std::lgamma(51.0)));
  CHECK(lf.double_factorial_even(4) == doctest::Approx(std::log(8.0)));
  CHECK(lf.double_factorial_even(0) == doctest::Approx(0.0));
  CHECK_THROWS(lf.double_factorial_even(3));
}

TEST_CASE("multiset coefficient") {
  CHECK(log_multiset(1, 1) == doctest::Approx(0.0));
  CHECK(log_multiset(3, 1) == doctest::Approx(std::log(3.0)));
  CHECK(log_multiset(3, 2) == doctest::Approx(std::log(6.0)));
  CHECK(log_multiset(5, 0) == 0.0);
}

TEST_CASE("restricted partition counts") {
  CHECK(count_partitions(4, 2) == 3);
  CHECK(count_partitions(5, 5) == 7);
  CHECK(count_partitions(2, 2) == 2);
  CHECK(count_partitions(0, 0) == 1);
  CHECK(count_partitions(3, 0) == 0);
  CHECK(count_partitions(100, 100) == BigInt("190569292"));
  for (int m = 0; m <= 20; ++m) {
    for (int n = 0; n <= 20; ++n) {
      CHECK(count_partitions(m, n) == BigInt(oracle::partitions_brute(m, n)));
    }
  }
}

TEST_CASE("partition table logs match exact counts") {
  PartitionCountTable table(200, 50);
  CHECK(std::isinf(table.log_q(3, 0)));
  CHECK(table.log_q(0, 0) == 0.0);
  CHECK(table.log_q(4, 2) == doctest::Approx(std::log(3.0)));
  CHECK(table.log_q(7, 100) == doctest::Approx(std::log(15.0)));  // n clamps to m
  for (int m : {0, 1, 17, 64, 150, 200}) {
    for (int n : {1, 2, 7, 30, 50}) {
      CHECK(table.log_q(m, n) == doctest::Approx(log_bigint(count_partitions(m, n))).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(table.log_q(201, 3), std::out_of_range);
}

TEST_CASE("log of huge integers") {
  BigInt x = 1;
  for (int i = 0; i < 2000; ++i) x *= 3;
  CHECK(log_bigint(x) == doctest::Approx(2000 * std::log(3.0)).epsilon(1e-12));
}
