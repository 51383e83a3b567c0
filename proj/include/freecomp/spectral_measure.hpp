#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fc {

/// Empirical measure of a real vector: k atoms x_i, each of weight 1/k.
/// Evaluation of the transforms is only supported strictly above the
/// largest atom.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(std::vector<double> atoms);

  const std::vector<double>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double max_atom() const { return max_; }
  double mean() const { return mean_; }

 private:
  std::vector<double> atoms_;
  double max_ = 0.0;
  double mean_ = 0.0;
};

/// Cauchy transform G(v) = (1/k) sum 1/(v - x_i), defined for v > max(x).
double cauchy_transform(const AtomicMeasure& m, double v);

/// G, its first two derivatives, F = 1/G and F' = -G'/G^2 at one point.
struct TransformBundle {
  double g;
  double g1;
  double g2;
  double f;
  double f1;
};
TransformBundle transforms_at(const AtomicMeasure& m, double v);

/// Power sums s_p = sum_i (w - x_i)^{-p} for each requested exponent p >= 0.
std::vector<double> power_sums(const AtomicMeasure& m, double w,
                               std::span<const double> exponents);

/// Multiplicity of the maximal coordinate, grouping entries within a
/// relative tie tolerance of the maximum, and the maximum itself.
struct MaxMultiplicity {
  int count;
  double value;
};
MaxMultiplicity max_multiplicity(std::span<const double> x);

/// Relative tolerance used to group near-equal maximal coordinates.
inline constexpr double kTieTolerance = 1e-12;

}  // namespace fc
