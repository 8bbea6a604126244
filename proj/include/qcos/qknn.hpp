#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qcos/circuit.hpp"
#include "qcos/classifier.hpp"
#include "qcos/encoding.hpp"
#include "qcos/errors.hpp"
#include "qcos/oracle.hpp"
#include "qcos/sampling.hpp"
#include "qcos/statevector.hpp"

namespace qcos {

/// Below this, an ancilla outcome is treated as impossible.
inline constexpr double kZeroProbability = 1e-12;

struct KnnConfig {
  std::size_t k = 1;
  std::uint64_t shots = 10000;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
  bool analytic_only = false;
};

struct KnnSelection {
  std::array<std::vector<std::uint64_t>, 2> counts;  // counts[alpha][i]
  std::uint64_t shots = 0;
  std::vector<double> score_estimates;                // freq(i|0) - freq(i|1)
  std::vector<std::size_t> selected;
  std::optional<std::vector<double>> analytic_scores;
  bool degenerate = false;                            // all fidelities 1
  std::vector<std::string> warnings;
};

/// f_i = |<x|x_i>|^2
inline std::vector<double> fidelities(const TrainingSet& ts, const DataVector& x) {
  std::vector<double> f(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double c = oracle::cosine_similarity(ts[i].features, x);
    f[i] = c * c;
  }
  return f;
}

/// P(alpha) = 1/2 + (-1)^alpha (1/2N) sum_i f_i
inline double analytic_ancilla_prob(const TrainingSet& ts, const DataVector& x, int alpha) {
  const auto f = fidelities(ts, x);
  const double sum = std::accumulate(f.begin(), f.end(), 0.0);
  const double half_mean = sum / (2.0 * static_cast<double>(ts.size()));
  return alpha == 0 ? 0.5 + half_mean : 0.5 - half_mean;
}

/// P(i | alpha) = (1 + (-1)^alpha f_i) / (N + (-1)^alpha sum_j f_j)
inline double analytic_index_prob(const TrainingSet& ts, const DataVector& x, std::size_t i,
                                  int alpha) {
  if (i >= ts.size()) throw UsageError("index out of range");
  if (analytic_ancilla_prob(ts, x, alpha) < kZeroProbability) {
    throw NumericalError("ancilla outcome " + std::to_string(alpha) +
                         " has zero probability; P(i|alpha) is undefined");
  }
  const auto f = fidelities(ts, x);
  const double sign = alpha == 0 ? 1.0 : -1.0;
  const double sum = std::accumulate(f.begin(), f.end(), 0.0);
  return (1.0 + sign * f[i]) / (static_cast<double>(ts.size()) + sign * sum);
}

/// Scores P(i|0) - P(i|1) = 2 (f_i - C) / (N (1 - C^2)), C = mean fidelity, or nothing
/// when every fidelity is 1 and the scores are 0/0.
inline std::optional<std::vector<double>> analytic_knn_scores(const TrainingSet& ts,
                                                              const DataVector& x) {
  const auto f = fidelities(ts, x);
  const double n = static_cast<double>(ts.size());
  const double mean = std::accumulate(f.begin(), f.end(), 0.0) / n;
  const double denom = 1.0 - mean * mean;
  if (!(denom > 1e-12)) return std::nullopt;
  std::vector<double> scores(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) scores[i] = 2.0 * (f[i] - mean) / (n * denom);
  return scores;
}

inline double knn_score(const TrainingSet& ts, const DataVector& x, std::size_t i) {
  if (i >= ts.size()) throw UsageError("index out of range");
  auto scores = analytic_knn_scores(ts, x);
  if (!scores) {
    throw DegenerateSimilarity("all training points have fidelity 1 with the query; "
                               "every neighbor is equally near");
  }
  return (*scores)[i];
}

/// Ranks by descending score; equal scores keep ascending index order.
inline std::vector<std::size_t> top_k(const std::vector<double>& scores, std::size_t k) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  order.resize(std::min(k, order.size()));
  return order;
}

/// Builds the K-NN state, applies the register-wide SWAP test controlled by the ancilla.
inline StateVector knn_post_swap_state(const TrainingSet& ts, const DataVector& x,
                                       std::vector<std::string>* warnings = nullptr) {
  const auto layout = EncodingLayout::for_set(ts);
  auto state = build_knn_state(ts, x, warnings);
  apply_circuit(state, build_swap_test(layout.knn_ancilla(), layout.knn_training_register(),
                                       layout.knn_query_register(), state.num_qubits()));
  return state;
}

/// Joint distribution of (alpha, i) after the SWAP test, laid out as [alpha * 2^ni + i].
inline std::vector<double> knn_outcome_distribution(const StateVector& post,
                                                    const EncodingLayout& layout) {
  QubitList measured = layout.index_register();
  measured.push_back(layout.knn_ancilla());
  return post.marginal(measured);
}

namespace detail {
inline void check_k(const TrainingSet& ts, std::size_t k) {
  if (k == 0 || k > ts.size()) {
    throw UsageError("k = " + std::to_string(k) + " must be in [1, " + std::to_string(ts.size()) +
                     "]");
  }
}

inline std::vector<std::size_t> first_k(std::size_t k) {
  std::vector<std::size_t> out(k);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

inline constexpr const char* kDegenerateWarning =
    "every training point has fidelity 1 with the query; selecting the first K indexes";
}  // namespace detail

/// Quantum neighbor selection: each shot measures the ancilla then the index register,
/// scores are freq(i|0) - freq(i|1), and the K best scores are kept.
inline KnnSelection run_knn_selection(const TrainingSet& ts, const DataVector& x,
                                      const KnnConfig& cfg) {
  detail::check_k(ts, cfg.k);
  const std::size_t n = ts.size();
  KnnSelection sel;
  sel.analytic_scores = analytic_knn_scores(ts, x);

  if (cfg.analytic_only) {
    if (has_negative_entries(ts, x)) sel.warnings.emplace_back(kNegativeEntryWarning);
    if (!sel.analytic_scores) {
      sel.degenerate = true;
      sel.warnings.emplace_back(detail::kDegenerateWarning);
      sel.score_estimates.assign(n, 0.0);
      sel.selected = detail::first_k(cfg.k);
    } else {
      sel.score_estimates = *sel.analytic_scores;
      sel.selected = top_k(sel.score_estimates, cfg.k);
    }
    return sel;
  }

  if (cfg.shots == 0) throw UsageError("shots must be positive");
  const auto layout = EncodingLayout::for_set(ts);
  const auto post = knn_post_swap_state(ts, x, &sel.warnings);
  const auto dist = knn_outcome_distribution(post, layout);
  const auto tallies = sample_counts(dist, cfg.shots, cfg.master_seed, cfg.workers);

  const std::size_t stride = layout.padded_points();
  sel.shots = cfg.shots;
  std::array<std::uint64_t, 2> stratum{0, 0};
  for (int alpha = 0; alpha < 2; ++alpha) {
    sel.counts[alpha].assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sel.counts[alpha][i] = tallies[alpha * stride + i];
      stratum[alpha] += sel.counts[alpha][i];
    }
  }

  const double p1 = post.probability_of(layout.knn_ancilla(), 1);
  if (stratum[1] == 0 && p1 < kZeroProbability) {
    sel.degenerate = true;
    sel.warnings.emplace_back(detail::kDegenerateWarning);
    sel.score_estimates.assign(n, 0.0);
    sel.selected = detail::first_k(cfg.k);
    return sel;
  }
  for (int alpha = 0; alpha < 2; ++alpha) {
    if (stratum[alpha] == 0) {
      throw InsufficientShots("no shot produced ancilla outcome " + std::to_string(alpha) +
                              " (P = " + std::to_string(post.probability_of(layout.knn_ancilla(), alpha)) +
                              ") in " + std::to_string(cfg.shots) +
                              " shots; conditional frequencies are undefined, increase shots");
    }
  }
  sel.score_estimates.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sel.score_estimates[i] =
        static_cast<double>(sel.counts[0][i]) / static_cast<double>(stratum[0]) -
        static_cast<double>(sel.counts[1][i]) / static_cast<double>(stratum[1]);
  }
  sel.selected = top_k(sel.score_estimates, cfg.k);
  return sel;
}

struct HybridResult {
  KnnSelection selection;
  TrainingSet restricted;
  ClassificationResult classification;
  int label;
};

/// Select K neighbors quantumly, restrict the training set to them, then classify.
inline HybridResult hybrid_classify(const TrainingSet& ts, const DataVector& x,
                                    const KnnConfig& knn_cfg, const SamplingConfig& cls_cfg) {
  auto sel = run_knn_selection(ts, x, knn_cfg);
  auto restricted = ts.subset(sel.selected);
  auto cls = run_classification(restricted, x, cls_cfg);
  const int label = cls.label;
  return {std::move(sel), std::move(restricted), std::move(cls), label};
}

}  // namespace qcos
