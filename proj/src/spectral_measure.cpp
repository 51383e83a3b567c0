#include "freecomp/spectral_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fc {

AtomicMeasure::AtomicMeasure(std::vector<double> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.size() < 2)
    throw std::invalid_argument("AtomicMeasure: need at least 2 atoms");
  for (double a : atoms_)
    if (!std::isfinite(a))
      throw std::invalid_argument("AtomicMeasure: atoms must be finite");
  max_ = *std::max_element(atoms_.begin(), atoms_.end());
  mean_ = std::accumulate(atoms_.begin(), atoms_.end(), 0.0) /
          static_cast<double>(atoms_.size());
}

namespace {
void require_above_spectrum(const AtomicMeasure& m, double v) {
  if (!(v > m.max_atom()))
    throw std::domain_error(
        "transform evaluation requires v > max(atoms)");
}
}  // namespace

double cauchy_transform(const AtomicMeasure& m, double v) {
  require_above_spectrum(m, v);
  double s = 0.0;
  for (double a : m.atoms()) s += 1.0 / (v - a);
  return s / static_cast<double>(m.size());
}

TransformBundle transforms_at(const AtomicMeasure& m, double v) {
  require_above_spectrum(m, v);
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (double a : m.atoms()) {
    const double r = 1.0 / (v - a);
    s1 += r;
    s2 += r * r;
    s3 += r * r * r;
  }
  const double k = static_cast<double>(m.size());
  TransformBundle b;
  b.g = s1 / k;
  b.g1 = -s2 / k;
  b.g2 = 2.0 * s3 / k;
  b.f = 1.0 / b.g;
  b.f1 = -b.g1 / (b.g * b.g);
  return b;
}

std::vector<double> power_sums(const AtomicMeasure& m, double w,
                               std::span<const double> exponents) {
  require_above_spectrum(m, w);
  for (double p : exponents)
    if (!(p >= 0.0)) throw std::domain_error("power_sums: exponent must be >= 0");
  std::vector<double> out(exponents.size(), 0.0);
  for (double a : m.atoms()) {
    const double r = 1.0 / (w - a);
    for (std::size_t j = 0; j < exponents.size(); ++j)
      out[j] += std::pow(r, exponents[j]);
  }
  return out;
}

MaxMultiplicity max_multiplicity(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("max_multiplicity: empty vector");
  const double mx = *std::max_element(x.begin(), x.end());
  const double thresh = kTieTolerance * std::abs(mx);
  int count = 0;
  for (double v : x)
    if (mx - v <= thresh) ++count;
  return {count, mx};
}

}  // namespace fc
