#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>
#include <vector>

#include "freecomp/spectral_measure.hpp"

namespace fc {

/// Parameters of the free-compression norm: ambient dimension k and
/// compression ratio t in (0,1).
struct TNormContext {
  int k;
  double t;

  TNormContext(int k_, double t_);

  /// True when a vector whose maximal coordinate has multiplicity m sits on
  /// the sup-norm branch (m/k + t >= 1); the norm is non-smooth there.
  bool sup_branch(int m) const {
    return static_cast<double>(m) / k + t >= 1.0;
  }
};

enum class Branch { root_branch, sup_branch };

struct TNormResult {
  double value;
  std::optional<double> w;  // root location, present on the smooth branch
  Branch branch;
};

/// Largest root w > max(x) of
///   (1-t) (1/k) sum (v-x_i)^{-2} - [ (1/k) sum (v-x_i)^{-1} ]^2 = 0.
/// Requires a non-constant x with m_x/k + t < 1; throws std::domain_error
/// otherwise. The left side is +inf at max(x)+ and tends to 0 from below at
/// +inf, so the largest root sits at the rightmost sign change.
double solve_w(std::span<const double> x, const TNormContext& ctx);

/// Free-compression norm of a nonnegative, nonzero vector. On the smooth
/// branch the value is w - (1-t) F(w); when the maximal coordinate has
/// multiplicity m with m/k + t >= 1 it equals max(x).
TNormResult tnorm(std::span<const double> x, const TNormContext& ctx);

inline double tnorm_value(std::span<const double> x, const TNormContext& ctx) {
  return tnorm(x, ctx).value;
}

/// Closed-form norm of an indicator vector with a fraction u of ones:
/// (sqrt(u(1-t)) + sqrt(t(1-u)))^2, capped at 1 when u + t >= 1.
double indicator_norm(double u, double t);

/// Gradient of the norm at a smooth point; components are positive and sum
/// to one, and the map preserves the coordinate order of x.
std::vector<double> tnorm_gradient(std::span<const double> x,
                                   const TNormContext& ctx);

/// Hessian of the norm at a smooth, non-constant point. Symmetric, PSD,
/// annihilates both x and the all-ones vector.
Eigen::MatrixXd tnorm_hessian(std::span<const double> x,
                              const TNormContext& ctx);

/// Upper edge functional: the norm continued to arbitrary real vectors by
/// translation covariance, upper_edge(x + s 1) = upper_edge(x) + s. Agrees
/// with the norm on the nonnegative orthant; can be negative elsewhere.
double tnorm_upper_edge(std::span<const double> x, const TNormContext& ctx);

/// Norm of an arbitrary real vector: max(upper_edge(x), upper_edge(-x)).
double tnorm_signed_value(std::span<const double> x, const TNormContext& ctx);

/// Minimizer s0 of s -> ||x + s 1|| together with the minimal value. The
/// norm is V-shaped around s0: ||x + s 1|| = |s - s0| + min_value.
struct MinShift {
  double s0;
  double min_value;
};
MinShift min_shift(std::span<const double> x, const TNormContext& ctx);

}  // namespace fc
