#include "freecomp/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fc {

ProbVector::ProbVector(std::vector<double> entries, bool renormalize)
    : entries_(std::move(entries)) {
  if (entries_.empty())
    throw std::invalid_argument("ProbVector: empty vector");
  double sum = 0.0;
  for (double v : entries_) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("ProbVector: entries must be nonnegative");
    sum += v;
  }
  if (renormalize) {
    if (sum <= 0.0)
      throw std::invalid_argument("ProbVector: cannot normalize zero vector");
    for (double& v : entries_) v /= sum;
  } else if (std::abs(sum - 1.0) > 1e-10) {
    throw std::invalid_argument("ProbVector: entries must sum to 1");
  }
}

ProbVector ProbVector::sorted_desc() const {
  std::vector<double> s = entries_;
  std::sort(s.begin(), s.end(), std::greater<>());
  return ProbVector(std::move(s), false);
}

double renyi_entropy(std::span<const double> lambda, double p) {
  if (!(p >= 1.0)) throw std::domain_error("renyi_entropy: requires p >= 1");
  const double mx = *std::max_element(lambda.begin(), lambda.end());
  if (mx <= 0.0) throw std::domain_error("renyi_entropy: zero vector");
  if (std::isinf(p)) return -std::log(mx);
  if (p == 1.0) {
    double h = 0.0;
    for (double v : lambda)
      if (v > 0.0) h -= v * std::log(v);
    return h;
  }
  // factor out the largest entry so the power sum cannot underflow to zero
  double s = 0.0;
  for (double v : lambda) s += std::pow(v / mx, p);
  return (p * std::log(mx) + std::log(s)) / (1.0 - p);
}

double two_level_entropy(double a, std::int64_t rest_count) {
  if (!(a > 0.0 && a <= 1.0))
    throw std::domain_error("two_level_entropy: a must lie in (0,1]");
  if (rest_count < 0)
    throw std::domain_error("two_level_entropy: negative rest count");
  if (a == 1.0 || rest_count == 0) {
    if (1.0 - a > 1e-12)
      throw std::domain_error("two_level_entropy: mass left with no entries");
    return 0.0;
  }
  const double b = (1.0 - a) / static_cast<double>(rest_count);
  double h = -a * std::log(a);
  if (b > 0.0) h -= (1.0 - a) * std::log(b);
  return h;
}

double TwoLevel::renyi(double p) const {
  if (!(p >= 1.0)) throw std::domain_error("TwoLevel::renyi: requires p >= 1");
  if (p == 1.0) {
    double h = 0.0;
    if (top > 0.0) h -= top * std::log(top);
    if (rest > 0.0 && rest_count > 0)
      h -= static_cast<double>(rest_count) * rest * std::log(rest);
    return h;
  }
  const double mx = std::max(top, rest);
  if (std::isinf(p)) return -std::log(mx);
  double s = std::pow(top / mx, p);
  if (rest > 0.0 && rest_count > 0)
    s += static_cast<double>(rest_count) * std::pow(rest / mx, p);
  return (p * std::log(mx) + std::log(s)) / (1.0 - p);
}

std::vector<double> TwoLevel::expand() const {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(rest_count) + 1);
  v.push_back(top);
  for (std::int64_t i = 0; i < rest_count; ++i) v.push_back(rest);
  return v;
}

}  // namespace fc
