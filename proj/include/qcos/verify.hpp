#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcos/circuit.hpp"
#include "qcos/classifier.hpp"
#include "qcos/encoding.hpp"
#include "qcos/example.hpp"
#include "qcos/oracle.hpp"
#include "qcos/qasm.hpp"
#include "qcos/qknn.hpp"
#include "qcos/random_instances.hpp"

namespace qcos {

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double max_error = 0.0;

  void record(bool ok, double err = 0.0) {
    ok ? ++passed : ++failed;
    max_error = std::max(max_error, err);
  }
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool ok() const {
    return std::all_of(suites.begin(), suites.end(),
                       [](const SuiteResult& s) { return s.failed == 0 && s.passed > 0; });
  }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t instances = 50;
  std::optional<TrainingSet> training;  // checked in addition to the random suites
  std::optional<DataVector> query;
};

namespace detail {

inline void check_instance(SuiteResult& formula, SuiteResult& bridge, const TrainingSet& ts,
                           const DataVector& x) {
  for (auto prep : {AncillaPrep::plus, AncillaPrep::minus}) {
    const double err = std::abs(analytic_p1(ts, x, prep) - simulated_p1(ts, x, prep));
    formula.record(err <= 1e-10, err);
  }
  const double p1 = analytic_p1(ts, x);
  if (std::abs(1.0 - 4.0 * p1) > 1e-12) {
    bridge.record(oracle::classical_classify(ts, x).label == decide(p1));
  }
}

inline void check_knn_instance(SuiteResult& knn, const TrainingSet& ts, const DataVector& x) {
  const auto layout = EncodingLayout::for_set(ts);
  const auto post = knn_post_swap_state(ts, x);
  const QubitIndex anc = layout.knn_ancilla();
  for (int alpha = 0; alpha < 2; ++alpha) {
    const double p = post.probability_of(anc, alpha);
    const double err = std::abs(p - analytic_ancilla_prob(ts, x, alpha));
    knn.record(err <= 1e-10, err);
    if (p < kZeroProbability) continue;
    const auto dist = post.collapse(anc, alpha).marginal(layout.index_register());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double e = std::abs(dist[i] - analytic_index_prob(ts, x, i, alpha));
      knn.record(e <= 1e-10, e);
    }
  }
  if (auto scores = analytic_knn_scores(ts, x)) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double diff = analytic_index_prob(ts, x, i, 0) - analytic_index_prob(ts, x, i, 1);
      const double e = std::abs(diff - (*scores)[i]);
      knn.record(e <= 1e-12, e);
    }
  }
}

}  // namespace detail

/// Runs the self-check suites: SWAP-test identity, closed form vs simulation,
/// oracle agreement, K-NN probabilities and QASM export fidelity.
inline VerifyReport run_verification(const VerifyOptions& opts) {
  Rng rng(derive_seed(opts.seed, 0x7665726966ULL));
  SuiteResult swap{"swap_test_identity"};
  SuiteResult formula{"formula_vs_simulation"};
  SuiteResult bridge{"oracle_agreement"};
  SuiteResult knn{"knn_probabilities"};
  SuiteResult qasm_suite{"qasm_export_fidelity"};

  for (std::size_t t = 0; t < opts.instances; ++t) {
    const std::size_t w = 1 + t % 3;
    const auto phi = gen::random_state(w, rng);
    const auto psi = gen::random_state(w, rng);
    auto state = phi.tensor(psi).tensor(StateVector(1));
    QubitList rb, ra;
    for (std::size_t k = 0; k < w; ++k) {
      rb.push_back(k);
      ra.push_back(w + k);
    }
    apply_circuit(state, build_swap_test(2 * w, rb, ra));
    const double expected = 0.5 * (1.0 - std::norm(inner_product(phi, psi)));
    const double err = std::abs(state.probability_of(2 * w, 1) - expected);
    swap.record(err <= 1e-10, err);
  }

  const std::size_t sizes[] = {1, 2, 4, 8};
  const std::size_t dims[] = {2, 4, 8};
  for (std::size_t t = 0; t < opts.instances; ++t) {
    auto inst = gen::random_instance(sizes[t % 4], dims[(t / 4) % 3], rng);
    detail::check_instance(formula, bridge, inst.training, inst.query);
    auto pos = gen::random_instance(sizes[t % 4], dims[(t / 4) % 3], rng, true);
    detail::check_knn_instance(knn, pos.training, pos.query);
  }

  const auto ts = example::training_set();
  const auto x = example::query();
  const double reference = analytic_p1(ts, x);
  for (auto mode : {qasm::FredkinMode::native, qasm::FredkinMode::toffoli}) {
    const auto text = qasm::export_qasm(example::build_circuits().full, {mode, {example::q::c}});
    const auto state = simulate(qasm::import_qasm(text));
    const double err = std::abs(state.probability_of(example::q::c, 1) - reference);
    qasm_suite.record(err <= 1e-9, err);
  }

  VerifyReport report;
  report.suites = {swap, formula, bridge, knn, qasm_suite};
  if (opts.training && opts.query) {
    SuiteResult f{"dataset_formula_vs_simulation"};
    SuiteResult b{"dataset_oracle_agreement"};
    SuiteResult k{"dataset_knn_probabilities"};
    detail::check_instance(f, b, *opts.training, *opts.query);
    detail::check_knn_instance(k, *opts.training, *opts.query);
    report.suites.push_back(f);
    if (b.passed + b.failed > 0) report.suites.push_back(b);
    report.suites.push_back(k);
  }
  return report;
}

}  // namespace qcos
