#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "coboson/schmidt.hpp"
#include "support/brute_symmetric.hpp"

using namespace coboson;

TEST_CASE("uniform spectra hold d equal entries of exactly 1/d") {
  CHECK(make_uniform(1).lambdas()[0] == 1.0);
  const auto two = make_uniform(2);
  CHECK(two.rank() == 2);
  CHECK(two[0] == 0.5);
  CHECK(two[1] == 0.5);
  const auto four = make_uniform(4);
  for (int p = 0; p < 4; ++p) CHECK(four[p] == 0.25);
  CHECK_THROWS_AS(make_uniform(0), std::invalid_argument);
}

TEST_CASE("geometric spectra truncate at the first q^P below tolerance") {
  const auto s = make_geometric(0.5, 0.26);
  REQUIRE(s.rank() == 2);
  CHECK(s[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(s[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  CHECK(make_geometric(1e-20, 1e-3).rank() == 1);
  CHECK(make_geometric(1e-20, 1e-3)[0] == 1.0);

  // Entry count by direct evaluation of q^P < tol.
  int expected = 0;
  while (std::pow(0.9, expected) >= 1e-12) ++expected;
  CHECK(expected == 263);
  CHECK(make_geometric(0.9, 1e-12).rank() == expected);

  CHECK_THROWS_AS(make_geometric(0.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(make_geometric(1.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(make_geometric(0.5, 0.0), std::invalid_argument);
  CHECK(make_geometric_rank(0.3, 5).rank() == 5);
}

TEST_CASE("from_values sorts, drops zeros and normalizes") {
  const std::vector<double> a{0.2, 0.8};
  const auto sa = from_values(a);
  CHECK(sa[0] == 0.8);
  CHECK(sa[1] == 0.2);

  const std::vector<double> b{2, 2};
  CHECK(from_values(b)[0] == 0.5);

  const std::vector<double> c{1, 0, 0};
  CHECK(from_values(c).rank() == 1);
  CHECK(from_values(c)[0] == 1.0);

  // Below 1e-15 of the maximum counts as zero.
  const std::vector<double> tiny{1.0, 1e-16, 2e-15};
  CHECK(from_values(tiny).rank() == 2);

  CHECK_THROWS_AS(from_values(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(from_values(std::vector<double>{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(from_values(std::vector<double>{0.5, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(from_values(std::vector<double>{NAN}), std::invalid_argument);
}

TEST_CASE("purity") {
  CHECK(purity(make_uniform(4)) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(purity(from_values(std::vector<double>{1.0})) == 1.0);
  CHECK(purity(from_values(std::vector<double>{0.8, 0.2})) == doctest::Approx(0.68).epsilon(1e-15));

  // Untruncated geometric purity is (1-q)/(1+q); a deep truncation gets there.
  CHECK(purity(make_geometric(0.5, 1e-15)) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  for (int d = 1; d <= 10000; d += (d < 100 ? 1 : 97)) {
    const double p = purity(make_uniform(d));
    CHECK(std::abs(p * d - 1.0) <= 1e-14);
  }
}

TEST_CASE("power sums") {
  const auto two = power_sums(make_uniform(2), 3);
  REQUIRE(two.size() == 3);
  CHECK(two[0] == 1.0);
  CHECK(two[1] == 0.5);
  CHECK(two[2] == 0.25);
  CHECK(power_sums(from_values(std::vector<double>{1.0}), 4) == std::vector<double>{1, 1, 1, 1});
  CHECK(power_sums(make_uniform(4), 2) == std::vector<double>{1, 0.25});
  CHECK_THROWS_AS(power_sums(make_uniform(2), 0), std::invalid_argument);
}

TEST_CASE("property: normalization, permutation invariance and power-sum ordering") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> rank_dist(1, 60);
  std::uniform_real_distribution<double> value(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(rank_dist(rng)));
    for (auto& x : v) x = value(rng);
    v.push_back(1.0);
    const auto s = from_values(v);
    CHECK(std::abs(stable_sum(s.lambdas()) - 1.0) <= 1e-12);
    CHECK(std::is_sorted(s.lambdas().data(), s.lambdas().data() + s.rank(), std::greater<>()));
    CHECK(s.lambdas().minCoeff() > 0.0);

    std::shuffle(v.begin(), v.end(), rng);
    CHECK(from_values(v) == s);

    const double p = purity(s);
    CHECK(p >= 1.0 / s.rank() - 1e-15);
    CHECK(p <= 1.0 + 1e-15);

    const auto sums = power_sums(s, 8);
    CHECK(std::abs(sums[0] - 1.0) <= 1e-12);
    for (std::size_t k = 1; k < sums.size(); ++k) CHECK(sums[k] <= sums[k - 1]);
  }
}
