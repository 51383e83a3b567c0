#include "freecomp/tnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fc {

TNormContext::TNormContext(int k_, double t_) : k(k_), t(t_) {
  if (k < 2) throw std::invalid_argument("TNormContext: k must be >= 2");
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("TNormContext: t must lie in (0,1)");
}

namespace {

struct VectorStats {
  double min;
  double max;
  double abs_sum;
  double spread;  // max - min
};

VectorStats stats_of(std::span<const double> x) {
  VectorStats s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -s.min;
  s.abs_sum = 0.0;
  for (double v : x) {
    if (!std::isfinite(v))
      throw std::invalid_argument("tnorm: entries must be finite");
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    s.abs_sum += std::abs(v);
  }
  s.spread = s.max - s.min;
  return s;
}

// Critical equation evaluated at v = mx + g, g > 0:
//   (1-t) (1/k) sum (v-x_i)^{-2} - [ (1/k) sum (v-x_i)^{-1} ]^2
double critical_fn(std::span<const double> x, double mx, double g, double t) {
  double s1 = 0.0, s2 = 0.0;
  for (double xi : x) {
    const double r = 1.0 / (g + (mx - xi));
    s1 += r;
    s2 += r * r;
  }
  const double k = static_cast<double>(x.size());
  return (1.0 - t) * s2 / k - (s1 / k) * (s1 / k);
}

void check_smooth_branch(std::span<const double> x, const TNormContext& ctx,
                         const VectorStats& st) {
  if (static_cast<int>(x.size()) != ctx.k)
    throw std::invalid_argument("vector length does not match context k");
  if (st.spread <= kTieTolerance * std::abs(st.max))
    throw std::domain_error("constant vector: norm is non-smooth (sup branch)");
  const auto mm = max_multiplicity(x);
  if (ctx.sup_branch(mm.count))
    throw std::domain_error(
        "m_x/k + t >= 1: sup branch, root equation does not apply");
}

}  // namespace

double solve_w(std::span<const double> x, const TNormContext& ctx) {
  const VectorStats st = stats_of(x);
  check_smooth_branch(x, ctx, st);

  const double scale = st.spread;
  double lo = 1e-9 * scale;
  double hi = 1e3 * std::max(scale, st.abs_sum);

  // Locate the rightmost sign change on a log grid; the critical function is
  // positive near max(x) and negative at infinity.
  const int grid_n = 400;
  int extend = 0;
  for (;;) {
    const double ratio = std::pow(hi / lo, 1.0 / (grid_n - 1));
    double g_right = hi;
    double f_right = critical_fn(x, st.max, g_right, ctx.t);
    double bracket_lo = -1.0, bracket_hi = -1.0;
    for (int j = grid_n - 2; j >= 0; --j) {
      const double g_left = lo * std::pow(ratio, j);
      const double f_left = critical_fn(x, st.max, g_left, ctx.t);
      if (f_left == 0.0) return st.max + g_left;
      if ((f_left > 0.0) != (f_right > 0.0)) {
        bracket_lo = g_left;
        bracket_hi = g_right;
        break;
      }
      g_right = g_left;
      f_right = f_left;
    }
    if (bracket_lo > 0.0) {
      // bisection/secant hybrid
      double a = bracket_lo, b = bracket_hi;
      double fa = critical_fn(x, st.max, a, ctx.t);
      double fb = critical_fn(x, st.max, b, ctx.t);
      for (int it = 0; it < 200 && b - a > 1e-13 * std::max(b, scale); ++it) {
        double c = (std::abs(fb - fa) > 0.0)
                       ? b - fb * (b - a) / (fb - fa)
                       : 0.5 * (a + b);
        if (!(c > a && c < b)) c = 0.5 * (a + b);
        const double fc = critical_fn(x, st.max, c, ctx.t);
        if (fc == 0.0) return st.max + c;
        if ((fc > 0.0) == (fa > 0.0)) {
          a = c;
          fa = fc;
        } else {
          b = c;
          fb = fc;
        }
      }
      return st.max + 0.5 * (a + b);
    }
    // No sign change found: widen the window a couple of times before
    // giving up (should not happen for valid inputs).
    if (++extend > 2)
      throw std::runtime_error("solve_w: failed to bracket the largest root");
    lo *= 1e-3;
    hi *= 1e3;
  }
}

TNormResult tnorm(std::span<const double> x, const TNormContext& ctx) {
  const VectorStats st = stats_of(x);
  if (static_cast<int>(x.size()) != ctx.k)
    throw std::invalid_argument("vector length does not match context k");
  if (st.min < 0.0)
    throw std::domain_error("tnorm: vector must be nonnegative");
  if (st.max == 0.0) throw std::domain_error("tnorm: zero vector");

  const auto mm = max_multiplicity(x);
  if (ctx.sup_branch(mm.count))
    return {st.max, std::nullopt, Branch::sup_branch};

  const double w = solve_w(x, ctx);
  const AtomicMeasure mu{std::vector<double>(x.begin(), x.end())};
  const double f = 1.0 / cauchy_transform(mu, w);
  return {w - (1.0 - ctx.t) * f, w, Branch::root_branch};
}

double indicator_norm(double u, double t) {
  if (!(u > 0.0 && u < 1.0) || !(t > 0.0 && t < 1.0))
    throw std::domain_error("indicator_norm: arguments must lie in (0,1)");
  if (u + t >= 1.0) return 1.0;
  const double r = std::sqrt(u * (1.0 - t)) + std::sqrt(t * (1.0 - u));
  return r * r;
}

std::vector<double> tnorm_gradient(std::span<const double> x,
                                   const TNormContext& ctx) {
  const double w = solve_w(x, ctx);  // validates the smooth branch
  std::vector<double> grad(x.size());
  double s2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = 1.0 / (w - x[i]);
    grad[i] = a * a;
    s2 += a * a;
  }
  for (double& g : grad) g /= s2;
  return grad;
}

Eigen::MatrixXd tnorm_hessian(std::span<const double> x,
                              const TNormContext& ctx) {
  const double w = solve_w(x, ctx);
  const int k = static_cast<int>(x.size());
  std::vector<double> a(k);
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (int i = 0; i < k; ++i) {
    a[i] = 1.0 / (w - x[i]);
    s1 += a[i];
    s2 += a[i] * a[i];
    s3 += a[i] * a[i] * a[i];
  }
  const double det = s1 * s3 - s2 * s2;  // > 0 for non-constant x
  if (det < 1e-12 * s2 * s2)
    throw std::domain_error("tnorm_hessian: near-constant vector, "
                            "Hessian denominator ill-conditioned");
  Eigen::MatrixXd h(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= i; ++j) {
      double v = 2.0 * a[i] * a[i] * a[j] * a[j] / (s2 * det) *
                 (-s3 + s2 * (a[i] + a[j]) - s1 * a[i] * a[j]);
      if (i == j) v += 2.0 * a[i] * a[i] * a[i] / s2;
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

double tnorm_upper_edge(std::span<const double> x, const TNormContext& ctx) {
  const VectorStats st = stats_of(x);
  if (st.spread <= kTieTolerance * std::abs(st.max)) return st.max;
  std::vector<double> shifted(x.begin(), x.end());
  for (double& v : shifted) v -= st.min;
  return tnorm(shifted, ctx).value + st.min;
}

double tnorm_signed_value(std::span<const double> x, const TNormContext& ctx) {
  std::vector<double> neg(x.begin(), x.end());
  for (double& v : neg) v = -v;
  return std::max(tnorm_upper_edge(x, ctx), tnorm_upper_edge(neg, ctx));
}

MinShift min_shift(std::span<const double> x, const TNormContext& ctx) {
  const VectorStats st = stats_of(x);
  if (st.spread <= kTieTolerance * std::abs(st.max))
    throw std::domain_error("min_shift: constant vector");
  std::vector<double> neg(x.begin(), x.end());
  for (double& v : neg) v = -v;
  const double upper = tnorm_upper_edge(x, ctx);
  const double lower = tnorm_upper_edge(neg, ctx);
  // ||x + s 1|| = max(upper + s, lower - s); the two lines cross at s0.
  return {0.5 * (lower - upper), 0.5 * (lower + upper)};
}

}  // namespace fc
