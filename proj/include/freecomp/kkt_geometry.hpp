#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "freecomp/rng.hpp"
#include "freecomp/tnorm.hpp"

namespace fc {

/// Tolerance for the approximate membership verdicts.
inline constexpr double kMembershipTol = 1e-7;

/// Necessary condition for membership in the dual body: every partial sum
/// of the sorted candidate must stay below the closed-form norm of the
/// matching indicator direction.
struct SupportTest {
  bool pass;
  int worst_m;    // partial-sum index with the largest excess
  double margin;  // max_m (partial sum - cap); <= tolerance when passing
};
SupportTest support_necessary_test(std::span<const double> lambda_sorted,
                                   const TNormContext& ctx);

enum class Membership { inside, boundary, outside };

struct MembershipVerdict {
  Membership status;
  double slack;  // best value of <lambda,a> - ||a|| found over the simplex
  std::vector<double> certificate;  // maximizing direction a
};

struct AscentConfig {
  int restarts = 32;
  int iterations = 500;
  double step_scale = 0.1;
  std::uint64_t seed = 1;
};

/// Approximate membership test for the dual body: projected supergradient
/// ascent of a -> <lambda,a> - ||a|| over the simplex, from random starts
/// plus the indicator corners. A positive slack certifies exclusion; the
/// verdict is only as sharp as the ascent.
MembershipVerdict membership(std::span<const double> lambda,
                             const TNormContext& ctx,
                             const AscentConfig& cfg = {});

/// Gradient of the norm at a smooth point, viewed as a point of the dual
/// body (an exposed point).
std::vector<double> exposed_point(std::span<const double> x,
                                  const TNormContext& ctx);

/// Left-hand side of the power-sum inequality
///   a_k^{1+q}(s1 s3 - s2^2) + (s2 s_{3+q} - s3 s_{2+q})
///     - a_k(s1 s_{3+q} - s2 s_{2+q}) >= 0,
/// zero exactly when a takes at most two distinct values.
double power_sum_gap(std::span<const double> a_sorted, double q);

/// Directional derivative of g(x) = || grad ||x|| ||_p^p along the direction
/// moving x away from the barycenter of its face (trailing zeros fixed).
/// Positive for at least-three-valued x, zero for two-valued x.
double ascent_derivative(std::span<const double> x_sorted,
                         const TNormContext& ctx, double p);

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> v);

/// Indicator corner m^{-1}(1^m 0^{k-m}).
std::vector<double> simplex_corner(int m, int k);

/// Uniform sample from the probability simplex.
std::vector<double> random_simplex_point(Rng& rng, int k);

}  // namespace fc
