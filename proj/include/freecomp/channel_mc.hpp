#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "freecomp/rng.hpp"

namespace fc {

/// Haar-random isometry W : C^d -> C^k (x) C^n together with its sampling
/// metadata. Rows are indexed (a, s) = a*n + s with a the output (system)
/// index and s the environment index.
struct ChannelSample {
  int k;
  int n;
  int d;
  Eigen::MatrixXcd isometry;  // (k n) x d, W^* W = I_d
  std::uint64_t seed;
  std::uint64_t trial;
};

/// Output spectrum sample with provenance.
struct SpectrumSample {
  enum class Kind { single_output, bell_output };
  std::vector<double> eigenvalues;  // sorted decreasing
  Kind kind;
  int k, n, d;
  std::uint64_t seed;
  std::uint64_t trial;
};

/// Gaussian matrix orthonormalized with the unique phase convention
/// (triangular factor with positive real diagonal), so the result is Haar
/// on the isometry manifold. Streams derive from (seed, trial).
ChannelSample sample_isometry(int k, int n, int d, std::uint64_t seed,
                              std::uint64_t trial);

/// Haar-distributed dim x dim unitary drawn from the given stream.
Eigen::MatrixXcd haar_unitary(int dim, Rng& rng);

/// Squared singular values of the k x n reshaping of a unit vector,
/// sorted decreasing; they sum to one.
std::vector<double> schmidt_spectrum(const Eigen::VectorXcd& y, int k, int n);

/// Spectrum of the conjugate-pair channel output on the maximally entangled
/// input: eigenvalues of (1/d) sum_{s,u} vec(A_s A_u^*) vec(A_s A_u^*)^*
/// where A_s = (I_k (x) <f_s|) W are the Kraus operators. Assembled through
/// one large Gram product rather than the n^2 rank-one terms; the two
/// assemblies agree to rounding (see tests).
SpectrumSample bell_output_spectrum(const ChannelSample& sample);

/// Minimum output Renyi entropy over num_inputs Gaussian-normalized random
/// inputs; an upper estimate of the true minimum.
double empirical_moe(const ChannelSample& sample, double p, int num_inputs);

/// Fraction of sampled output spectra whose sorted partial sums stay within
/// `slack` of the closed-form indicator caps.
double empirical_output_set_check(const ChannelSample& sample, int num_inputs,
                                  double slack);

}  // namespace fc
