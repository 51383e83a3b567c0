#include "freecomp/channel_mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "freecomp/entropy.hpp"
#include "freecomp/kkt_geometry.hpp"
#include "freecomp/tnorm.hpp"

namespace fc {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

MatrixXcd gaussian_matrix(int rows, int cols, Rng& rng) {
  MatrixXcd a(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) a(i, j) = rng.complex_gaussian();
  return a;
}

// Orthonormalization via two rounds of Gram/Cholesky. The triangular
// factors have positive real diagonals, so the result equals the Q factor
// of the phase-fixed QR decomposition.
bool cholesky_orthonormalize(MatrixXcd& a) {
  const int d = static_cast<int>(a.cols());
  for (int round = 0; round < 2; ++round) {
    MatrixXcd g(d, d);
    g.noalias() = a.adjoint() * a;
    g = 0.5 * (g + g.adjoint()).eval();
    Eigen::LLT<MatrixXcd> llt(g);
    if (llt.info() != Eigen::Success) return false;
    MatrixXcd uinv =
        llt.matrixU().solve(MatrixXcd::Identity(d, d));
    a = (a * uinv).eval();
  }
  return true;
}

void householder_orthonormalize(MatrixXcd& a) {
  const int rows = static_cast<int>(a.rows());
  const int d = static_cast<int>(a.cols());
  Eigen::HouseholderQR<MatrixXcd> qr(a);
  MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(rows, d);
  const MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const std::complex<double> rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  a = std::move(q);
}

}  // namespace

ChannelSample sample_isometry(int k, int n, int d, std::uint64_t seed,
                              std::uint64_t trial) {
  if (k < 1 || n < 1 || d < 1 || d > k * n)
    throw std::invalid_argument("sample_isometry: need 1 <= d <= k*n");
  Rng rng(seed, trial, Rng::Purpose::isometry);
  MatrixXcd a = gaussian_matrix(k * n, d, rng);
  if (!cholesky_orthonormalize(a)) householder_orthonormalize(a);
  return {k, n, d, std::move(a), seed, trial};
}

Eigen::MatrixXcd haar_unitary(int dim, Rng& rng) {
  MatrixXcd a = gaussian_matrix(dim, dim, rng);
  householder_orthonormalize(a);
  return a;
}

std::vector<double> schmidt_spectrum(const VectorXcd& y, int k, int n) {
  if (y.size() != static_cast<Eigen::Index>(k) * n)
    throw std::invalid_argument("schmidt_spectrum: length mismatch");
  if (std::abs(y.norm() - 1.0) > 1e-10)
    throw std::domain_error("schmidt_spectrum: input must be a unit vector");
  // rows indexed (a, s) = a*n + s: reshape row-major over the k factor
  Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                 Eigen::Dynamic, Eigen::RowMajor>>
      m(y.data(), k, n);
  MatrixXcd gram = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gram,
                                              Eigen::EigenvaluesOnly);
  std::vector<double> ev(k);
  for (int i = 0; i < k; ++i)
    ev[i] = std::max(0.0, es.eigenvalues()[k - 1 - i]);
  return ev;
}

SpectrumSample bell_output_spectrum(const ChannelSample& sample) {
  const int k = sample.k, n = sample.n, d = sample.d;
  const MatrixXcd& w = sample.isometry;
  if (w.rows() != static_cast<Eigen::Index>(k) * n || w.cols() != d)
    throw std::invalid_argument("bell_output_spectrum: bad sample");

  // Row slices of W grouped by the output index: Ua(mu, s) = W(a*n+s, mu).
  // The Gram blocks Ua Uc^* hold every Kraus cross term
  //   (A_s A_u^*)_{ac} = sum_mu W(a*n+s, mu) conj(W(c*n+u, mu)),
  // so the k^2 x k^2 output state is one further Gram product away.
  std::vector<MatrixXcd> u_slices(k);
  for (int a = 0; a < k; ++a)
    u_slices[a] = w.middleRows(static_cast<Eigen::Index>(a) * n, n)
                      .transpose();  // d x n

  const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
  MatrixXcd cpt(dd, static_cast<Eigen::Index>(k) * k);
  MatrixXcd block(d, d);
  for (int a = 0; a < k; ++a) {
    for (int c = a; c < k; ++c) {
      block.noalias() = u_slices[a] * u_slices[c].adjoint();
      std::memcpy(cpt.col(a * k + c).data(), block.data(),
                  sizeof(std::complex<double>) * dd);
      if (c != a) {
        Eigen::Map<MatrixXcd> dst(cpt.col(c * k + a).data(), d, d);
        dst = block.adjoint();
      }
    }
  }

  MatrixXcd small(static_cast<Eigen::Index>(k) * k,
                  static_cast<Eigen::Index>(k) * k);
  small.noalias() = cpt.adjoint() * cpt;
  small = small.conjugate().eval();
  small /= static_cast<double>(d);

  // reshuffle (a,c),(b,e) -> (a,b),(c,e)
  MatrixXcd rho(k * k, k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c)
        for (int e = 0; e < k; ++e)
          rho(a * k + b, c * k + e) = small(a * k + c, b * k + e);
  rho = 0.5 * (rho + rho.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  SpectrumSample out;
  out.kind = SpectrumSample::Kind::bell_output;
  out.k = k;
  out.n = n;
  out.d = d;
  out.seed = sample.seed;
  out.trial = sample.trial;
  out.eigenvalues.resize(k * k);
  for (int i = 0; i < k * k; ++i) {
    double v = es.eigenvalues()[k * k - 1 - i];
    if (v < -1e-8)
      std::fprintf(stderr,
                   "bell_output_spectrum: eigenvalue %.3e below zero, "
                   "clamping (k=%d n=%d trial=%llu)\n",
                   v, k, n, static_cast<unsigned long long>(sample.trial));
    out.eigenvalues[i] = std::max(0.0, v);
  }
  return out;
}

double empirical_moe(const ChannelSample& sample, double p, int num_inputs) {
  if (num_inputs < 1)
    throw std::invalid_argument("empirical_moe: need at least one input");
  Rng rng(sample.seed, sample.trial, Rng::Purpose::inputs);
  const int batch = 128;
  MatrixXcd x(sample.d, batch);
  double best = std::numeric_limits<double>::infinity();
  int done = 0;
  while (done < num_inputs) {
    const int b = std::min(batch, num_inputs - done);
    for (int j = 0; j < b; ++j) {
      for (int i = 0; i < sample.d; ++i) x(i, j) = rng.complex_gaussian();
      x.col(j).normalize();
    }
    MatrixXcd y = sample.isometry * x.leftCols(b);
    for (int j = 0; j < b; ++j) {
      const auto spec = schmidt_spectrum(y.col(j), sample.k, sample.n);
      best = std::min(best, renyi_entropy(spec, p));
    }
    done += b;
  }
  return best;
}

double empirical_output_set_check(const ChannelSample& sample, int num_inputs,
                                  double slack) {
  if (num_inputs < 1)
    throw std::invalid_argument("empirical_output_set_check: no inputs");
  const double t_eff =
      static_cast<double>(sample.d) / (static_cast<double>(sample.k) * sample.n);
  if (!(t_eff > 0.0 && t_eff < 1.0))
    throw std::domain_error("empirical_output_set_check: needs d < k*n");
  const TNormContext ctx(sample.k, t_eff);

  Rng rng(sample.seed, sample.trial, Rng::Purpose::inputs);
  const int batch = 128;
  MatrixXcd x(sample.d, batch);
  int passed = 0, done = 0;
  while (done < num_inputs) {
    const int b = std::min(batch, num_inputs - done);
    for (int j = 0; j < b; ++j) {
      for (int i = 0; i < sample.d; ++i) x(i, j) = rng.complex_gaussian();
      x.col(j).normalize();
    }
    MatrixXcd y = sample.isometry * x.leftCols(b);
    for (int j = 0; j < b; ++j) {
      const auto spec = schmidt_spectrum(y.col(j), sample.k, sample.n);
      if (support_necessary_test(spec, ctx).margin <= slack) ++passed;
    }
    done += b;
  }
  return static_cast<double>(passed) / num_inputs;
}

}  // namespace fc
