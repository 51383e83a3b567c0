#include <doctest.h>

#include <cmath>
#include <vector>

#include "freecomp/rng.hpp"
#include "freecomp/spectral_measure.hpp"

using fc::AtomicMeasure;

namespace {
const double kRoot3 = std::sqrt(3.0);
const double kW = 0.5 * (1.0 + kRoot3);  // evaluation point for atoms (1,0)
}  // namespace

TEST_CASE("cauchy transform at hand-computed points") {
  CHECK(fc::cauchy_transform(AtomicMeasure({0.0, 0.0}), 1.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fc::cauchy_transform(AtomicMeasure({1.0, 0.0}), kW) ==
        doctest::Approx(kRoot3).epsilon(1e-14));
  // constant measure: G(v) = 1/(v - c)
  AtomicMeasure constant({0.7, 0.7, 0.7});
  for (double v : {0.71, 1.0, 5.0, 123.0})
    CHECK(fc::cauchy_transform(constant, v) ==
          doctest::Approx(1.0 / (v - 0.7)).epsilon(1e-14));
}

TEST_CASE("evaluation at or below the spectrum is rejected") {
  AtomicMeasure m({1.0, 0.0});
  CHECK_THROWS_AS(fc::cauchy_transform(m, 1.0), std::domain_error);
  CHECK_THROWS_AS(fc::cauchy_transform(m, 0.5), std::domain_error);
  CHECK_THROWS_AS(fc::transforms_at(m, 1.0), std::domain_error);
  const double p2 = 2.0;
  CHECK_THROWS_AS(fc::power_sums(m, 0.9, std::span(&p2, 1)),
                  std::domain_error);
}

TEST_CASE("transform bundle values") {
  AtomicMeasure m({1.0, 0.0});
  const auto b = fc::transforms_at(m, kW);
  CHECK(b.f == doctest::Approx(1.0 / kRoot3).epsilon(1e-14));
  CHECK(b.g1 < 0.0);

  // point mass: F(v) = v - c, F' = 1
  const auto bc = fc::transforms_at(AtomicMeasure({0.0, 0.0}), 2.0);
  CHECK(bc.f == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(bc.f1 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("power sums") {
  AtomicMeasure m({1.0, 0.0});
  const std::vector<double> exps{2.0, 0.0};
  const auto s = fc::power_sums(m, kW, exps);
  CHECK(s[0] == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(s[1] == doctest::Approx(2.0).epsilon(1e-15));  // p = 0 counts atoms

  CHECK_THROWS(AtomicMeasure({1.0}));  // k >= 2 invariant
}

TEST_CASE("max multiplicity with tie tolerance") {
  auto mm = fc::max_multiplicity(std::vector<double>{1.0, 0.0, 0.0});
  CHECK(mm.count == 1);
  CHECK(mm.value == 1.0);

  mm = fc::max_multiplicity(std::vector<double>{0.5, 0.5, 0.0});
  CHECK(mm.count == 2);
  CHECK(mm.value == 0.5);

  mm = fc::max_multiplicity(
      std::vector<double>{0.5, 0.5 * (1.0 + 1e-15), 0.0});
  CHECK(mm.count == 2);
}

TEST_CASE("G is decreasing and convex above the spectrum") {
  fc::Rng rng(11, 0, fc::Rng::Purpose::test);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> atoms(4);
    for (double& a : atoms) a = rng.uniform();
    AtomicMeasure m(atoms);
    const double base = m.max_atom();
    double prev = fc::cauchy_transform(m, base + 0.05);
    double prev_diff = 0.0;
    for (int i = 1; i < 20; ++i) {
      const double cur = fc::cauchy_transform(m, base + 0.05 + 0.1 * i);
      CHECK(cur < prev);
      if (i > 1) CHECK(prev - cur < prev_diff);  // slope is flattening
      prev_diff = prev - cur;
      prev = cur;
    }
  }
}

TEST_CASE("F(v) - v tends to -mean far from the spectrum") {
  // residual at finite v is var/v, so keep the atom spread modest
  AtomicMeasure m({0.30, 0.32, 0.35, 0.40});
  const double v = m.max_atom() + 1e6;
  const auto b = fc::transforms_at(m, v);
  CHECK(std::abs(b.f + m.mean() - v) < 1e-8);
}

TEST_CASE("power sums match the transform derivatives") {
  fc::Rng rng(12, 0, fc::Rng::Purpose::test);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> atoms(5);
    for (double& a : atoms) a = rng.uniform();
    AtomicMeasure m(atoms);
    const double w = m.max_atom() + 0.1 + rng.uniform();
    const std::vector<double> exps{1.0, 2.0};
    const auto s = fc::power_sums(m, w, exps);
    const auto b = fc::transforms_at(m, w);
    CHECK(s[0] / 5.0 == doctest::Approx(b.g).epsilon(1e-14));
    CHECK(s[1] / 5.0 == doctest::Approx(-b.g1).epsilon(1e-14));
  }
}
