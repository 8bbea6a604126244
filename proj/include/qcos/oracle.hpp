#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "qcos/encoding.hpp"
#include "qcos/errors.hpp"

/// Classical O(Nd) reference for the cosine-similarity model. Tie rules match the
/// quantum path so any disagreement is a genuine discrepancy.
namespace qcos::oracle {

inline double cosine_similarity(const DataVector& a, const DataVector& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch("cosine of vectors with dimensions " + std::to_string(a.dimension()) +
                            " and " + std::to_string(b.dimension()));
  }
  double dot = 0.0;
  for (std::size_t j = 0; j < a.dimension(); ++j) dot += a[j] * b[j];
  return std::clamp(dot / (a.norm() * b.norm()), -1.0, 1.0);
}

struct OracleResult {
  double score;  // sum_i y_i cos(x_i, x)
  int label;     // sign(score), with sign(0) = +1
  std::vector<double> per_point_cosines;
};

/// Label for a model score. Zero maps to +1, as in the quantum decision rule.
constexpr int label_for_score(double score) noexcept { return score < 0.0 ? -1 : 1; }

inline OracleResult classical_classify(const TrainingSet& ts, const DataVector& x) {
  OracleResult r{0.0, 1, {}};
  r.per_point_cosines.reserve(ts.size());
  for (const auto& p : ts) {
    const double c = cosine_similarity(p.features, x);
    r.per_point_cosines.push_back(c);
    r.score += p.label * c;
  }
  r.label = label_for_score(r.score);
  return r;
}

/// Indexes of the k largest cosine similarities; equal similarities keep ascending index order.
inline std::vector<std::size_t> classical_knn(const TrainingSet& ts, const DataVector& x,
                                              std::size_t k) {
  if (k == 0 || k > ts.size()) {
    throw UsageError("k = " + std::to_string(k) + " must be in [1, " + std::to_string(ts.size()) +
                     "]");
  }
  std::vector<double> cos(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) cos[i] = cosine_similarity(ts[i].features, x);
  std::vector<std::size_t> order(ts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cos[a] > cos[b]; });
  order.resize(k);
  return order;
}

}  // namespace qcos::oracle
