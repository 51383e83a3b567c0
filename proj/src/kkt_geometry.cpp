#include "freecomp/kkt_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fc {

namespace {

void require_sorted_desc(std::span<const double> v, const char* who) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i + 1] > v[i] + 1e-12 * std::max(1.0, std::abs(v[i])))
      throw std::invalid_argument(std::string(who) +
                                  ": input must be sorted decreasing");
}

// Supergradient of a -> <lambda,a> - ||a||: lambda minus a subgradient of
// the norm. On the sup branch the uniform vector on the tied maximal
// entries is a valid norm subgradient.
std::vector<double> norm_subgradient(std::span<const double> a,
                                     const TNormContext& ctx) {
  const auto mm = max_multiplicity(a);
  if (!ctx.sup_branch(mm.count)) {
    const double spread =
        mm.value - *std::min_element(a.begin(), a.end());
    if (spread > kTieTolerance * std::abs(mm.value))
      return tnorm_gradient(a, ctx);
  }
  std::vector<double> g(a.size(), 0.0);
  const double thresh = kTieTolerance * std::abs(mm.value);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (mm.value - a[i] <= thresh) g[i] = 1.0 / mm.count;
  return g;
}

double objective(std::span<const double> lambda, std::span<const double> a,
                 const TNormContext& ctx) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += lambda[i] * a[i];
  return dot - tnorm_value(a, ctx);
}

}  // namespace

SupportTest support_necessary_test(std::span<const double> lambda_sorted,
                                   const TNormContext& ctx) {
  require_sorted_desc(lambda_sorted, "support_necessary_test");
  if (static_cast<int>(lambda_sorted.size()) != ctx.k)
    throw std::invalid_argument("support_necessary_test: length mismatch");
  double partial = 0.0;
  double margin = -std::numeric_limits<double>::infinity();
  int worst_m = 1;
  for (int m = 1; m <= ctx.k; ++m) {
    partial += lambda_sorted[m - 1];
    const double cap =
        (m == ctx.k) ? 1.0
                     : indicator_norm(static_cast<double>(m) / ctx.k, ctx.t);
    if (partial - cap > margin) {
      margin = partial - cap;
      worst_m = m;
    }
  }
  return {margin <= kMembershipTol, worst_m, margin};
}

std::vector<double> project_to_simplex(std::span<const double> v) {
  const int k = static_cast<int>(v.size());
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, tau = 0.0;
  int rho = 0;
  for (int i = 0; i < k; ++i) {
    css += u[i];
    const double cand = (css - 1.0) / (i + 1);
    if (u[i] - cand > 0.0) {
      rho = i + 1;
      tau = cand;
    }
  }
  std::vector<double> out(v.size());
  for (int i = 0; i < k; ++i) out[i] = std::max(v[i] - tau, 0.0);
  // guard against accumulated rounding
  double s = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& x : out) x /= s;
  (void)rho;
  return out;
}

std::vector<double> simplex_corner(int m, int k) {
  if (m < 1 || m > k) throw std::invalid_argument("simplex_corner: bad m");
  std::vector<double> a(k, 0.0);
  for (int i = 0; i < m; ++i) a[i] = 1.0 / m;
  return a;
}

std::vector<double> random_simplex_point(Rng& rng, int k) {
  std::vector<double> a(k);
  double s = 0.0;
  for (double& v : a) {
    v = -std::log(rng.uniform_pos());
    s += v;
  }
  for (double& v : a) v /= s;
  return a;
}

MembershipVerdict membership(std::span<const double> lambda,
                             const TNormContext& ctx,
                             const AscentConfig& cfg) {
  const int k = ctx.k;
  if (static_cast<int>(lambda.size()) != k)
    throw std::invalid_argument("membership: length mismatch");

  std::vector<std::vector<double>> starts;
  // Indicator corners are the binding directions for two-valued candidates.
  // The uniform corner m = k is omitted: <lambda, 1/k> - ||1/k|| = 0 for
  // every lambda in the simplex, so it carries no membership information.
  for (int m = 1; m < k; ++m) starts.push_back(simplex_corner(m, k));
  Rng rng(cfg.seed, 0, Rng::Purpose::ascent);
  for (int r = 0; r < cfg.restarts; ++r)
    starts.push_back(random_simplex_point(rng, k));

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_a;
  std::vector<double> step(k);
  for (auto& a : starts) {
    double f = objective(lambda, a, ctx);
    if (f > best) {
      best = f;
      best_a = a;
    }
    for (int it = 1; it <= cfg.iterations; ++it) {
      const auto sub = norm_subgradient(a, ctx);
      const double eta = cfg.step_scale / std::sqrt(static_cast<double>(it));
      for (int i = 0; i < k; ++i) step[i] = a[i] + eta * (lambda[i] - sub[i]);
      a = project_to_simplex(step);
      f = objective(lambda, a, ctx);
      if (f > best) {
        best = f;
        best_a = a;
      }
    }
  }

  Membership status = Membership::boundary;
  if (best > kMembershipTol)
    status = Membership::outside;
  else if (best < -kMembershipTol)
    status = Membership::inside;
  return {status, best, std::move(best_a)};
}

std::vector<double> exposed_point(std::span<const double> x,
                                  const TNormContext& ctx) {
  return tnorm_gradient(x, ctx);
}

double power_sum_gap(std::span<const double> a_sorted, double q) {
  require_sorted_desc(a_sorted, "power_sum_gap");
  if (!(q > 0.0)) throw std::domain_error("power_sum_gap: requires q > 0");
  for (double v : a_sorted)
    if (!(v > 0.0))
      throw std::domain_error("power_sum_gap: entries must be positive");
  const double ak = a_sorted.back();
  double s1 = 0, s2 = 0, s3 = 0, s2q = 0, s3q = 0;
  for (double v : a_sorted) {
    s1 += v;
    s2 += v * v;
    s3 += v * v * v;
    s2q += std::pow(v, 2.0 + q);
    s3q += std::pow(v, 3.0 + q);
  }
  return std::pow(ak, 1.0 + q) * (s1 * s3 - s2 * s2) + (s2 * s3q - s3 * s2q) -
         ak * (s1 * s3q - s2 * s2q);
}

double ascent_derivative(std::span<const double> x_sorted,
                         const TNormContext& ctx, double p) {
  require_sorted_desc(x_sorted, "ascent_derivative");
  if (!(p > 1.0)) throw std::domain_error("ascent_derivative: requires p > 1");
  const int k = static_cast<int>(x_sorted.size());
  const double mx = x_sorted.front();
  int l = 0;
  while (l < k && x_sorted[k - 1 - l] <= kTieTolerance * std::abs(mx)) ++l;
  if (l == 0)
    throw std::invalid_argument(
        "ascent_derivative: expected at least one trailing zero");
  if (l == k) throw std::domain_error("ascent_derivative: zero vector");

  Eigen::VectorXd y(k);
  for (int i = 0; i < k; ++i)
    y[i] = (i < k - l) ? x_sorted[i] - 1.0 / (k - l) : 0.0;

  const auto grad = tnorm_gradient(x_sorted, ctx);
  const Eigen::MatrixXd h = tnorm_hessian(x_sorted, ctx);
  Eigen::VectorXd gp(k);
  for (int i = 0; i < k; ++i) gp[i] = std::pow(grad[i], p - 1.0);
  return p * gp.dot(h * y);
}

}  // namespace fc
