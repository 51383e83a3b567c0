#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "freecomp/entropy.hpp"

namespace fc {

enum class Bound { exact, hayden_winter };

/// Limiting optimizer of every l^p norm on the dual body: first entry is
/// the closed-form norm of e_1, the remaining k-1 entries are equal.
TwoLevel x_opt(int k, double t);

/// Limiting spectrum of the conjugate-pair channel output on the maximally
/// entangled input: (t + (1-t)/k^2, (1-t)/k^2 x (k^2-1)).
TwoLevel gamma_opt(int k, double t);

/// More mixed reference spectrum (t, (1-t)/(k^2-1) x (k^2-1)) from the
/// largest-eigenvalue bound.
TwoLevel gamma_hw(int k, double t);

/// Entropy difference H_p(gamma) - 2 H_p(x*) in nats; negative values
/// certify an additivity violation.
double entropy_diff(int k, double t, double p, Bound bound);

/// Smallest admissible t for the given bound. The mixed reference spectrum
/// is a sorted probability vector only for t >= 1/k^2, so the
/// hayden_winter scan starts there.
double t_domain_min(int k, Bound bound);

struct TMinimum {
  double t_star;
  double d_star;
};

/// Dense-grid minimum of t -> entropy_diff over the admissible t range,
/// refined by golden-section search in the best bracket. No unimodality is
/// assumed: the refinement only sharpens the best grid cell.
TMinimum min_over_t(int k, double p, Bound bound, int grid_n = 2000,
                    double refine_tol = 1e-8);

enum class TMode { free, fixed, inverse_k };

/// Smallest k <= k_max whose entropy difference (minimized over t per
/// t_mode) is negative; empty when no such k exists.
std::optional<int> threshold_k(double p, Bound bound, TMode t_mode,
                               double fixed_t, int k_max,
                               int grid_n = 2000);

struct AsymptoticRow {
  int k;
  double t;
  double d;         // entropy difference at (k, t)
  double limit;     // asymptotic reference value
  double gap;       // |d - limit| (fixed t) or d * k / (-log k) (t = 1/k)
};

/// Fixed-t rows: reference -H(t, 1-t), gap = |D + H(t,1-t)|.
std::vector<AsymptoticRow> asymptotic_check(double t,
                                            const std::vector<int>& k_list);

/// t = 1/k rows: reference -log(k)/k, gap column is the ratio
/// D(k,1/k) * k / (-log k), which should drift towards 1.
std::vector<AsymptoticRow> asymptotic_check_inverse_k(
    const std::vector<int>& k_list);

struct SweepRecord {
  int k;
  double t;
  double p;
  Bound bound;
  double d_nats;
  double a_star;     // top entry of x*_t
  double gamma_top;  // top entry of the output spectrum
};

/// Grid sweep of the entropy difference over k in [k_lo, k_hi] and a t-grid
/// of grid_n points. Rows are emitted in (k, t) order.
std::vector<SweepRecord> sweep(int k_lo, int k_hi, int grid_n, double p,
                               Bound bound);

}  // namespace fc
