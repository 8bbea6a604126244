#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "qcos/circuit.hpp"
#include "qcos/encoding.hpp"
#include "qcos/errors.hpp"
#include "qcos/example.hpp"
#include "qcos/oracle.hpp"
#include "qcos/sampling.hpp"
#include "qcos/statevector.hpp"

namespace qcos {

/// Hoeffding sample size: ceil(ln(2/delta) / (2 eps^2)) shots bound |p_hat - P(1)| <= eps
/// with probability at least 1 - delta.
inline std::uint64_t shots_for_accuracy(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon <= 0.25)) {
    throw UsageError("epsilon must be in (0, 0.25], got " + std::to_string(epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw UsageError("delta must be in (0, 1), got " + std::to_string(delta));
  }
  const double n = std::log(2.0 / delta) / (2.0 * epsilon * epsilon);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(n)));
}

/// Shot budget, given either directly or as an (epsilon, delta) accuracy target.
class SamplingConfig {
 public:
  static SamplingConfig with_shots(std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw UsageError("shots must be positive");
    SamplingConfig c;
    c.shots_ = shots;
    c.master_seed = seed;
    return c;
  }

  static SamplingConfig with_accuracy(double epsilon, double delta, std::uint64_t seed) {
    SamplingConfig c;
    c.shots_ = shots_for_accuracy(epsilon, delta);
    c.epsilon_ = epsilon;
    c.delta_ = delta;
    c.master_seed = seed;
    return c;
  }

  /// No sampling: decisions come from the closed-form probability.
  static SamplingConfig analytic() {
    SamplingConfig c;
    c.analytic_only = true;
    return c;
  }

  std::uint64_t shots() const noexcept { return shots_; }
  std::optional<double> epsilon() const noexcept { return epsilon_; }
  std::optional<double> delta() const noexcept { return delta_; }

  std::uint64_t master_seed = 1;
  AncillaPrep ancilla_b = AncillaPrep::plus;
  unsigned workers = 1;
  bool analytic_only = false;

 private:
  SamplingConfig() = default;
  std::uint64_t shots_ = 0;
  std::optional<double> epsilon_;
  std::optional<double> delta_;
};

struct ClassificationResult {
  std::optional<double> p_hat;          // empty on the analytic path
  std::optional<std::uint64_t> shots;   // empty on the analytic path
  std::uint64_t ones = 0;               // count of outcome 1
  int label = 1;
  double analytic_p1 = 0.0;             // closed form
  double simulated_p1 = 0.0;            // from the simulated state
  double margin = 0.0;                  // |1 - 4 p_hat| (analytic P(1) when not sampled)
  bool zero_margin = false;             // analytic margin below 1e-12
  std::uint64_t seed = 0;
  AncillaPrep ancilla_b = AncillaPrep::plus;
};

/// Decision threshold at 0.25. With |+> on qubit b the label is -1 iff p_hat > 0.25
/// (equality gives +1); with |-> the inequality flips, again sending equality to +1.
constexpr int decide(double p_hat, AncillaPrep ancilla_b = AncillaPrep::plus) noexcept {
  if (ancilla_b == AncillaPrep::plus) return p_hat > 0.25 ? -1 : 1;
  return p_hat < 0.25 ? -1 : 1;
}

/// <X|psi_x> = (1 / (N sqrt 2)) sum_i y_i cos(x_i, x)
inline double training_query_overlap(const TrainingSet& ts, const DataVector& x) {
  const double score = oracle::classical_classify(ts, x).score;
  return score / (static_cast<double>(ts.size()) * std::numbers::sqrt2);
}

inline double analytic_p1(const TrainingSet& ts, const DataVector& x,
                          AncillaPrep ancilla_b = AncillaPrep::plus) {
  const double overlap = training_query_overlap(ts, x);
  return ancilla_b == AncillaPrep::plus ? 0.25 * (1.0 - overlap) : 0.25 * (1.0 + overlap);
}

/// Full register state after the SWAP test: joint state, then b at qubit m and c at m+1.
struct SwapTestState {
  StateVector state;
  QubitIndex control;
};

inline SwapTestState prepare_swap_test_state(const TrainingSet& ts, const DataVector& x,
                                             AncillaPrep ancilla_b = AncillaPrep::plus) {
  const auto layout = EncodingLayout::for_set(ts);
  StateVector b(1);
  if (ancilla_b == AncillaPrep::minus) b.apply(Gate::x(0));
  b.apply(Gate::h(0));
  auto state = build_joint_state(ts, x).tensor(b).tensor(StateVector(1));
  const QubitIndex qb = layout.joint_qubits();
  const QubitIndex qc = qb + 1;
  apply_circuit(state, build_swap_test(qc, {qb}, {layout.ancilla_a()}, state.num_qubits()));
  return {std::move(state), qc};
}

/// P(c = 1) obtained by simulating the prepared state and the SWAP test.
inline double simulated_p1(const TrainingSet& ts, const DataVector& x,
                           AncillaPrep ancilla_b = AncillaPrep::plus) {
  const auto s = prepare_swap_test_state(ts, x, ancilla_b);
  return s.state.probability_of(s.control, 1);
}

namespace detail {

inline ClassificationResult finish(double p1_sim, double p1_exact, const SamplingConfig& cfg) {
  ClassificationResult r;
  r.analytic_p1 = p1_exact;
  r.simulated_p1 = p1_sim;
  r.ancilla_b = cfg.ancilla_b;
  r.zero_margin = std::abs(1.0 - 4.0 * p1_exact) < 1e-12;
  if (cfg.analytic_only) {
    r.label = decide(p1_exact, cfg.ancilla_b);
    r.margin = std::abs(1.0 - 4.0 * p1_exact);
    return r;
  }
  // Each shot re-prepares the same state, so only the control-qubit marginal matters.
  r.seed = cfg.master_seed;
  r.shots = cfg.shots();
  r.ones = count_ones(p1_sim, cfg.shots(), cfg.master_seed, cfg.workers);
  r.p_hat = static_cast<double>(r.ones) / static_cast<double>(cfg.shots());
  r.label = decide(*r.p_hat, cfg.ancilla_b);
  r.margin = std::abs(1.0 - 4.0 * *r.p_hat);
  return r;
}

}  // namespace detail

/// Prepare the joint state, run the SWAP test, sample the control qubit and decide.
inline ClassificationResult run_classification(const TrainingSet& ts, const DataVector& x,
                                               const SamplingConfig& cfg) {
  const double exact = analytic_p1(ts, x, cfg.ancilla_b);
  const double sim = simulated_p1(ts, x, cfg.ancilla_b);
  return detail::finish(sim, exact, cfg);
}

/// Same contract as run_classification, driving the registered gate-level circuit.
inline ClassificationResult classify_via_circuit(const TrainingSet& ts, const DataVector& x,
                                                 const SamplingConfig& cfg) {
  auto reg = find_registered_circuit(ts, x, cfg.ancilla_b);
  if (!reg) throw UnsupportedInstance("no preparation circuit is registered for this instance");
  const auto state = simulate(reg->circuit);
  return detail::finish(state.probability_of(reg->control, 1), analytic_p1(ts, x, cfg.ancilla_b),
                        cfg);
}

}  // namespace qcos
