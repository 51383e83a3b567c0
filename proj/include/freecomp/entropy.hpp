#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fc {

/// Probability vector: nonnegative entries summing to one (within 1e-10,
/// checked on construction; pass renormalize to rescale instead).
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> entries, bool renormalize = false);

  const std::vector<double>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }

  ProbVector sorted_desc() const;

 private:
  std::vector<double> entries_;
};

/// Renyi entropy H_p in nats for p in [1, inf]; p = 1 is the Shannon /
/// von Neumann limit, p = inf gives -log max. Rejects p < 1.
double renyi_entropy(std::span<const double> lambda, double p);

inline double renyi_entropy(const ProbVector& lambda, double p) {
  return renyi_entropy(lambda.entries(), p);
}

/// Shannon entropy of a vector of shape (a, b, ..., b) with rest_count
/// trailing entries b = (1-a)/rest_count.
double two_level_entropy(double a, std::int64_t rest_count);

/// Two-level probability vector (top, rest, ..., rest) kept in closed form;
/// sweeps over k up to 1e4 evaluate entropies without materializing the
/// k^2-length vectors.
struct TwoLevel {
  double top;
  double rest;
  std::int64_t rest_count;

  double renyi(double p) const;
  std::vector<double> expand() const;
};

}  // namespace fc
