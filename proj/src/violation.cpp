#include "freecomp/violation.hpp"

#include <cmath>
#include <stdexcept>

#include "freecomp/tnorm.hpp"

namespace fc {

namespace {
constexpr double kGridEdge = 1e-4;

void check_kt(int k, double t) {
  if (k < 2) throw std::domain_error("requires k >= 2");
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("requires t in (0,1)");
}
}  // namespace

TwoLevel x_opt(int k, double t) {
  check_kt(k, t);
  const double a =
      (t + 1.0 / k >= 1.0) ? 1.0 : indicator_norm(1.0 / k, t);
  return {a, (1.0 - a) / (k - 1), k - 1};
}

TwoLevel gamma_opt(int k, double t) {
  check_kt(k, t);
  const double kk = static_cast<double>(k) * k;
  const double rest = (1.0 - t) / kk;
  return {t + rest, rest, static_cast<std::int64_t>(k) * k - 1};
}

TwoLevel gamma_hw(int k, double t) {
  check_kt(k, t);
  const double kk = static_cast<double>(k) * k;
  return {t, (1.0 - t) / (kk - 1.0), static_cast<std::int64_t>(k) * k - 1};
}

double entropy_diff(int k, double t, double p, Bound bound) {
  const TwoLevel gamma =
      (bound == Bound::exact) ? gamma_opt(k, t) : gamma_hw(k, t);
  return gamma.renyi(p) - 2.0 * x_opt(k, t).renyi(p);
}

double t_domain_min(int k, Bound bound) {
  if (bound == Bound::hayden_winter)
    return std::max(kGridEdge, 1.0 / (static_cast<double>(k) * k));
  return kGridEdge;
}

TMinimum min_over_t(int k, double p, Bound bound, int grid_n,
                    double refine_tol) {
  if (grid_n < 3) throw std::invalid_argument("min_over_t: grid too small");
  const double lo = t_domain_min(k, bound);
  const double hi = 1.0 - kGridEdge;
  const double h = (hi - lo) / (grid_n - 1);
  double best_d = std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i < grid_n; ++i) {
    const double d = entropy_diff(k, lo + i * h, p, bound);
    if (d < best_d) {
      best_d = d;
      best_i = i;
    }
  }
  // golden-section refinement inside the best bracket
  const double gr = 0.6180339887498948482;
  double a = lo + std::max(0, best_i - 1) * h;
  double b = lo + std::min(grid_n - 1, best_i + 1) * h;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = entropy_diff(k, c, p, bound);
  double fd = entropy_diff(k, d, p, bound);
  while (b - a > refine_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = entropy_diff(k, c, p, bound);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = entropy_diff(k, d, p, bound);
    }
  }
  const double t_ref = 0.5 * (a + b);
  const double d_ref = entropy_diff(k, t_ref, p, bound);
  if (d_ref <= best_d) return {t_ref, d_ref};
  return {lo + best_i * h, best_d};
}

std::optional<int> threshold_k(double p, Bound bound, TMode t_mode,
                               double fixed_t, int k_max, int grid_n) {
  for (int k = 2; k <= k_max; ++k) {
    double d;
    switch (t_mode) {
      case TMode::free:
        d = min_over_t(k, p, bound, grid_n).d_star;
        break;
      case TMode::fixed:
        d = entropy_diff(k, fixed_t, p, bound);
        break;
      case TMode::inverse_k:
        d = entropy_diff(k, 1.0 / k, p, bound);
        break;
      default:
        throw std::logic_error("threshold_k: bad mode");
    }
    if (d < 0.0) return k;
  }
  return std::nullopt;
}

std::vector<AsymptoticRow> asymptotic_check(double t,
                                            const std::vector<int>& k_list) {
  if (!(t > 0.0 && t < 1.0))
    throw std::domain_error("asymptotic_check: t must lie in (0,1)");
  const double limit = t * std::log(t) + (1.0 - t) * std::log(1.0 - t);
  std::vector<AsymptoticRow> rows;
  rows.reserve(k_list.size());
  for (int k : k_list) {
    const double d = entropy_diff(k, t, 1.0, Bound::exact);
    rows.push_back({k, t, d, limit, std::abs(d - limit)});
  }
  return rows;
}

std::vector<AsymptoticRow> asymptotic_check_inverse_k(
    const std::vector<int>& k_list) {
  std::vector<AsymptoticRow> rows;
  rows.reserve(k_list.size());
  for (int k : k_list) {
    const double t = 1.0 / k;
    const double d = entropy_diff(k, t, 1.0, Bound::exact);
    const double limit = -std::log(static_cast<double>(k)) / k;
    rows.push_back({k, t, d, limit, d * k / (-std::log(static_cast<double>(k)))});
  }
  return rows;
}

std::vector<SweepRecord> sweep(int k_lo, int k_hi, int grid_n, double p,
                               Bound bound) {
  if (k_lo < 2 || k_hi < k_lo) throw std::invalid_argument("sweep: bad k range");
  if (grid_n < 2) throw std::invalid_argument("sweep: grid too small");
  std::vector<SweepRecord> rows;
  rows.reserve(static_cast<std::size_t>(k_hi - k_lo + 1) * grid_n);
  for (int k = k_lo; k <= k_hi; ++k) {
    const double lo = t_domain_min(k, bound);
    const double hi = 1.0 - kGridEdge;
    const double h = (hi - lo) / (grid_n - 1);
    for (int i = 0; i < grid_n; ++i) {
      const double t = lo + i * h;
      const TwoLevel gamma =
          (bound == Bound::exact) ? gamma_opt(k, t) : gamma_hw(k, t);
      rows.push_back({k, t, p, bound, entropy_diff(k, t, p, bound),
                      x_opt(k, t).top, gamma.top});
    }
  }
  return rows;
}

}  // namespace fc
