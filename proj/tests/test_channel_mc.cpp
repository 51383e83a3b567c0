#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "freecomp/channel_mc.hpp"
#include "freecomp/entropy.hpp"
#include "freecomp/rng.hpp"

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

// Direct assembly of the conjugate-pair output from the n^2 rank-one
// vectors; test-only oracle for the blocked Gram-product implementation.
std::vector<double> bell_spectrum_direct(const fc::ChannelSample& sample) {
  const int k = sample.k, n = sample.n, d = sample.d;
  std::vector<MatrixXcd> kraus(n);
  for (int s = 0; s < n; ++s) {
    kraus[s].resize(k, d);
    for (int a = 0; a < k; ++a)
      kraus[s].row(a) = sample.isometry.row(a * n + s);
  }
  MatrixXcd rho = MatrixXcd::Zero(k * k, k * k);
  for (int s = 0; s < n; ++s)
    for (int u = 0; u < n; ++u) {
      const MatrixXcd b = kraus[s] * kraus[u].adjoint();
      VectorXcd v(k * k);
      for (int a = 0; a < k; ++a)
        for (int c = 0; c < k; ++c) v[a * k + c] = b(a, c);
      rho.noalias() += v * v.adjoint();
    }
  rho /= static_cast<double>(d);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  std::vector<double> ev(k * k);
  for (int i = 0; i < k * k; ++i) ev[i] = es.eigenvalues()[k * k - 1 - i];
  return ev;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double dist = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    dist = std::max(dist, std::abs(static_cast<double>(i) / a.size() -
                                   static_cast<double>(j) / b.size()));
  }
  return dist;
}

}  // namespace

TEST_CASE("sampled isometries are orthonormal") {
  const auto s = fc::sample_isometry(3, 20, 10, 7, 0);
  const MatrixXcd gram = s.isometry.adjoint() * s.isometry;
  CHECK((gram - MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-10);
  for (int j = 0; j < 10; ++j)
    CHECK(s.isometry.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));

  // d = k n gives a unitary
  const auto u = fc::sample_isometry(2, 3, 6, 7, 0);
  CHECK((u.isometry * u.isometry.adjoint() - MatrixXcd::Identity(6, 6))
            .cwiseAbs()
            .maxCoeff() < 1e-10);

  CHECK_THROWS_AS(fc::sample_isometry(2, 3, 7, 7, 0), std::invalid_argument);
}

TEST_CASE("identical (seed, trial) reproduces the sample bit for bit") {
  const auto a = fc::sample_isometry(3, 15, 9, 42, 5);
  const auto b = fc::sample_isometry(3, 15, 9, 42, 5);
  CHECK((a.isometry.array() == b.isometry.array()).all());
}

TEST_CASE("different trials give decorrelated streams") {
  const int count = 1000;
  fc::Rng r0(42, 0, fc::Rng::Purpose::isometry);
  fc::Rng r1(42, 1, fc::Rng::Purpose::isometry);
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int i = 0; i < count; ++i) {
    const double x = r0.gaussian();
    const double y = r1.gaussian();
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double cov = sxy / count - (sx / count) * (sy / count);
  const double vx = sxx / count - (sx / count) * (sx / count);
  const double vy = syy / count - (sy / count) * (sy / count);
  CHECK(std::abs(cov / std::sqrt(vx * vy)) < 0.05);
}

TEST_CASE("schmidt spectrum of canonical vectors") {
  const int k = 3, n = 5;
  VectorXcd y = VectorXcd::Zero(k * n);
  y[2] = 1.0;  // e_1 (x) f_3: a product vector
  auto spec = fc::schmidt_spectrum(y, k, n);
  CHECK(spec[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(spec[1] == doctest::Approx(0.0).epsilon(1e-14));

  // maximally entangled across the k factor
  y.setZero();
  for (int i = 0; i < k; ++i) y[i * n + i] = 1.0 / std::sqrt(3.0);
  spec = fc::schmidt_spectrum(y, k, n);
  for (double v : spec) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-13));

  y *= 1.2;
  CHECK_THROWS_AS(fc::schmidt_spectrum(y, k, n), std::domain_error);
}

TEST_CASE("schmidt spectrum is invariant under environment rotations") {
  fc::Rng rng(71, 0, fc::Rng::Purpose::test);
  const int k = 3, n = 8;
  for (int rep = 0; rep < 20; ++rep) {
    VectorXcd y(k * n);
    for (int i = 0; i < k * n; ++i) y[i] = rng.complex_gaussian();
    y.normalize();
    const auto base = fc::schmidt_spectrum(y, k, n);

    const MatrixXcd u = fc::haar_unitary(n, rng);
    Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                   Eigen::Dynamic, Eigen::RowMajor>>
        m(y.data(), k, n);
    const MatrixXcd rotated = m * u.transpose();
    VectorXcd yr(k * n);
    for (int a = 0; a < k; ++a)
      for (int s = 0; s < n; ++s) yr[a * n + s] = rotated(a, s);
    const auto after = fc::schmidt_spectrum(yr, k, n);
    for (int i = 0; i < k; ++i)
      CHECK(after[i] == doctest::Approx(base[i]).epsilon(1e-12));
  }
}

TEST_CASE("output spectra are distributionally invariant under system "
          "rotations") {
  const int k = 3, n = 30, d = 27, trials = 500;
  std::vector<double> plain, rotated;
  fc::Rng urng(99, 0, fc::Rng::Purpose::test);
  for (int trial = 0; trial < trials; ++trial) {
    const auto s = fc::sample_isometry(k, n, d, 17, trial);
    VectorXcd x = VectorXcd::Zero(d);
    x[0] = 1.0;
    const VectorXcd y = s.isometry * x;
    plain.push_back(fc::schmidt_spectrum(y, k, n)[0]);

    const MatrixXcd u = fc::haar_unitary(k, urng);
    Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                   Eigen::Dynamic, Eigen::RowMajor>>
        m(y.data(), k, n);
    const MatrixXcd my = u * m;
    VectorXcd yr(k * n);
    for (int a = 0; a < k; ++a)
      for (int ss = 0; ss < n; ++ss) yr[a * n + ss] = my(a, ss);
    rotated.push_back(fc::schmidt_spectrum(yr, k, n)[0]);
  }
  CHECK(ks_distance(plain, rotated) < 0.1);
}

TEST_CASE("bell output: fast assembly matches the rank-one oracle") {
  for (int trial = 0; trial < 3; ++trial) {
    const auto s = fc::sample_isometry(2, 6, 4, 13, trial);
    const auto fast = fc::bell_output_spectrum(s);
    const auto direct = bell_spectrum_direct(s);
    REQUIRE(fast.eigenvalues.size() == direct.size());
    for (std::size_t i = 0; i < direct.size(); ++i)
      CHECK(fast.eigenvalues[i] ==
            doctest::Approx(direct[i]).epsilon(1e-12));
  }
  const auto s3 = fc::sample_isometry(3, 7, 9, 14, 0);
  const auto fast3 = fc::bell_output_spectrum(s3);
  const auto direct3 = bell_spectrum_direct(s3);
  for (std::size_t i = 0; i < direct3.size(); ++i)
    CHECK(fast3.eigenvalues[i] ==
          doctest::Approx(direct3[i]).epsilon(1e-12));
}

TEST_CASE("bell output: trace, positivity and the top-eigenvalue bound") {
  const int k = 3, n = 60;
  const int d = static_cast<int>(std::lround(0.3 * k * n));
  std::vector<double> tops;
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = fc::sample_isometry(k, n, d, 21, trial);
    const auto spec = fc::bell_output_spectrum(s);
    double sum = 0.0;
    for (double v : spec.eigenvalues) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::is_sorted(spec.eigenvalues.rbegin(), spec.eigenvalues.rend()));
    tops.push_back(spec.eigenvalues[0]);
  }
  double mean = 0.0;
  for (double v : tops) mean += v;
  mean /= tops.size();
  double var = 0.0;
  for (double v : tops) var += (v - mean) * (v - mean);
  const double sigma = std::sqrt(var / tops.size());
  CHECK(mean >= static_cast<double>(d) / (k * n) - 3.0 * sigma);
}

TEST_CASE("bell output determinism") {
  const auto a =
      fc::bell_output_spectrum(fc::sample_isometry(2, 10, 8, 3, 1));
  const auto b =
      fc::bell_output_spectrum(fc::sample_isometry(2, 10, 8, 3, 1));
  CHECK(a.eigenvalues == b.eigenvalues);
}

TEST_CASE("empirical minimum output entropy basics") {
  const auto s = fc::sample_isometry(4, 40, 32, 5, 0);
  const double h = fc::empirical_moe(s, 1.0, 200);
  CHECK(h >= 0.0);
  CHECK(h <= std::log(4.0));
  // nested input streams: a longer scan can only lower the minimum
  CHECK(fc::empirical_moe(s, 1.0, 400) <= h + 1e-15);
  // higher orders only reduce the entropy
  CHECK(fc::empirical_moe(s, 2.0, 200) <= h + 1e-12);
}

TEST_CASE("output-set check behaviour in the slack parameter") {
  const auto s = fc::sample_isometry(4, 100, 80, 9, 0);
  const double impossible = fc::empirical_output_set_check(s, 100, -0.5);
  CHECK(impossible == 0.0);
  const double f1 = fc::empirical_output_set_check(s, 100, 0.02);
  const double f2 = fc::empirical_output_set_check(s, 100, 0.05);
  const double f3 = fc::empirical_output_set_check(s, 100, 0.2);
  CHECK(f1 <= f2);
  CHECK(f2 <= f3);
  CHECK(f3 == 1.0);
}
