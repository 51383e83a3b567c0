#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "freecomp/entropy.hpp"
#include "freecomp/rng.hpp"
#include "freecomp/violation.hpp"

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("probability vector construction") {
  CHECK_THROWS(fc::ProbVector({0.5, 0.6}));
  CHECK_THROWS(fc::ProbVector({-0.1, 1.1}));
  CHECK_THROWS(fc::ProbVector({}));
  const fc::ProbVector p({0.5, 3.0, 1.5}, /*renormalize=*/true);
  CHECK(p[0] == doctest::Approx(0.1));
  const auto sorted = p.sorted_desc();
  CHECK(sorted[0] == doctest::Approx(0.6));
}

TEST_CASE("Renyi entropy of uniform and point-mass vectors") {
  for (int k : {2, 5, 17}) {
    const std::vector<double> uni(k, 1.0 / k);
    for (double p : {1.0, 1.5, 2.0, 7.0, kInf})
      CHECK(fc::renyi_entropy(uni, p) ==
            doctest::Approx(std::log(k)).epsilon(1e-13));
  }
  std::vector<double> point{1.0, 0.0, 0.0};
  for (double p : {1.0, 2.0, kInf})
    CHECK(fc::renyi_entropy(point, p) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("collision entropy of a fair coin") {
  CHECK(fc::renyi_entropy(std::vector<double>{0.5, 0.5}, 2.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("entropy is monotone decreasing in the order p") {
  fc::Rng rng(41, 0, fc::Rng::Purpose::test);
  for (int rep = 0; rep < 200; ++rep) {
    const int k = 2 + static_cast<int>(rng.uniform_below(6));
    std::vector<double> lam(k);
    double s = 0.0;
    for (double& v : lam) {
      v = rng.uniform_pos();
      s += v;
    }
    for (double& v : lam) v /= s;
    const double orders[] = {1.0, 1.3, 2.0, 3.5, 10.0, kInf};
    double prev = fc::renyi_entropy(lam, orders[0]);
    for (int i = 1; i < 6; ++i) {
      const double cur = fc::renyi_entropy(lam, orders[i]);
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("orders below one are rejected") {
  const std::vector<double> lam{0.5, 0.5};
  CHECK_THROWS_AS(fc::renyi_entropy(lam, 0.5), std::domain_error);
  CHECK_THROWS_AS(fc::renyi_entropy(lam, 0.999999), std::domain_error);
}

TEST_CASE("two-level Shannon entropy closed form") {
  CHECK(fc::two_level_entropy(1.0, 3) == 0.0);
  CHECK(fc::two_level_entropy(0.25, 3) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-14));  // uniform
  // hand evaluation: -0.625 log 0.625 - 0.375 log 0.125
  CHECK(fc::two_level_entropy(0.625, 3) ==
        doctest::Approx(1.0735428464085231).epsilon(1e-13));
}

TEST_CASE("two-level closed form agrees with the expanded vector") {
  fc::Rng rng(42, 0, fc::Rng::Purpose::test);
  for (int rep = 0; rep < 100; ++rep) {
    const int m = 1 + static_cast<int>(rng.uniform_below(20));
    const double a = rng.uniform(1e-3, 1.0);
    const fc::TwoLevel tl{a, (1.0 - a) / m, m};
    const auto expanded = tl.expand();
    CHECK(fc::two_level_entropy(a, m) ==
          doctest::Approx(fc::renyi_entropy(expanded, 1.0)).epsilon(1e-13));
    for (double p : {1.0, 2.0, 4.5, kInf})
      CHECK(tl.renyi(p) ==
            doctest::Approx(fc::renyi_entropy(expanded, p)).epsilon(1e-12));
  }
}

TEST_CASE("the mixed reference spectrum has larger entropy") {
  fc::Rng rng(43, 0, fc::Rng::Purpose::test);
  for (int rep = 0; rep < 300; ++rep) {
    const int k = 2 + static_cast<int>(rng.uniform_below(12));
    // below 1/k^2 the reference vector is no longer sorted and the
    // comparison degenerates, so sample above it
    const double t = rng.uniform(1.0 / (static_cast<double>(k) * k), 0.999);
    const double p = 1.0 + rng.uniform(0.0, 5.0);
    CHECK(fc::gamma_hw(k, t).renyi(p) >=
          fc::gamma_opt(k, t).renyi(p) - 1e-12);
  }
}
