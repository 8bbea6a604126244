// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qcos/classifier.hpp"
#include "qcos/example.hpp"
#include "qcos/oracle.hpp"
#include "qcos/qasm.hpp"
#include "qcos/qknn.hpp"
#include "qcos/random_instances.hpp"

using namespace qcos;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome demo_decision() {
  const auto ts = example::training_set();
  const auto x = example::query();
  const double p1 = analytic_p1(ts, x);
  int minus = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto cfg = SamplingConfig::with_shots(1000000, seed);
    cfg.workers = worker_count();
    if (classify_via_circuit(ts, x, cfg).label == -1) ++minus;
  }
  const bool ok = std::abs(p1 - 0.2568) <= 5e-4 && minus >= 99;
  return {ok, fmt("analytic P(1)=%.6f, label -1 in %d/100 seeds at 1e6 shots", p1, minus)};
}

Outcome swap_identity() {
  Rng rng(derive_seed(2, 0));
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t w = 1 + t % 4;
    const auto phi = gen::random_state(w, rng);
    const auto psi = gen::random_state(w, rng);
    auto state = phi.tensor(psi).tensor(StateVector(1));
    QubitList rb, ra;
    for (std::size_t k = 0; k < w; ++k) {
      rb.push_back(k);
      ra.push_back(w + k);
    }
    apply_circuit(state, build_swap_test(2 * w, rb, ra));
    const double expect = 0.5 * (1.0 - std::norm(inner_product(phi, psi)));
    worst = std::max(worst, std::abs(state.probability_of(2 * w, 1) - expect));
  }
  return {worst <= 1e-10, fmt("200 pairs, max error %.3g", worst)};
}

Outcome formula_agreement() {
  Rng rng(derive_seed(3, 0));
  const std::size_t sizes[] = {1, 2, 4, 8};
  const std::size_t dims[] = {2, 4, 8};
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    auto inst = gen::random_instance(sizes[t % 4], dims[(t / 4) % 3], rng);
    const double err = std::abs(analytic_p1(inst.training, inst.query) -
                                simulated_p1(inst.training, inst.query));
    worst = std::max(worst, err);
  }
  return {worst <= 1e-10, fmt("200 instances, max error %.3g", worst)};
}

Outcome oracle_equivalence() {
  Rng rng(derive_seed(4, 0));
  const double eps = 0.02, delta = 0.01;
  int used = 0, failures = 0;
  std::uint64_t t = 0;
  while (used < 1000) {
    auto inst = gen::random_instance(1 + t % 8, 2 + t % 7, rng);
    ++t;
    if (std::abs(1.0 - 4.0 * analytic_p1(inst.training, inst.query)) <= 4.0 * eps) continue;
    const auto r = run_classification(inst.training, inst.query,
                                      SamplingConfig::with_accuracy(eps, delta, derive_seed(4, t)));
    if (r.label != oracle::classical_classify(inst.training, inst.query).label) ++failures;
    ++used;
  }
  return {failures <= 10, fmt("%d/1000 disagreements at %llu shots", failures,
                              static_cast<unsigned long long>(shots_for_accuracy(eps, delta)))};
}

bool distinct_similarities(const TrainingSet& ts, const DataVector& x) {
  std::vector<double> c;
  for (const auto& p : ts) c.push_back(oracle::cosine_similarity(p.features, x));
  std::sort(c.begin(), c.end());
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] - c[i - 1] < 1e-9) return false;
  }
  return true;
}

Outcome knn_analytics() {
  Rng rng(derive_seed(5, 0));
  const std::size_t sizes[] = {1, 2, 4, 8};
  const std::size_t dims[] = {2, 4, 8};
  double prob_err = 0.0, score_err = 0.0;
  for (int t = 0; t < 200; ++t) {
    auto inst = gen::random_instance(sizes[t % 4], dims[(t / 4) % 3], rng, t % 2 == 0);
    const auto& ts = inst.training;
    const auto& x = inst.query;
    const auto layout = EncodingLayout::for_set(ts);
    const auto post = knn_post_swap_state(ts, x);
    for (int alpha = 0; alpha < 2; ++alpha) {
      const double p = post.probability_of(layout.knn_ancilla(), alpha);
      prob_err = std::max(prob_err, std::abs(p - analytic_ancilla_prob(ts, x, alpha)));
      if (p < kZeroProbability) continue;
      const auto dist = post.collapse(layout.knn_ancilla(), alpha).marginal(layout.index_register());
      for (std::size_t i = 0; i < ts.size(); ++i) {
        prob_err = std::max(prob_err, std::abs(dist[i] - analytic_index_prob(ts, x, i, alpha)));
      }
    }
    if (auto scores = analytic_knn_scores(ts, x)) {
      for (std::size_t i = 0; i < ts.size(); ++i) {
        const double diff = analytic_index_prob(ts, x, i, 0) - analytic_index_prob(ts, x, i, 1);
        score_err = std::max(score_err, std::abs(diff - (*scores)[i]));
      }
    }
  }

  int agree = 0, total = 0;
  while (total < 200) {
    auto inst = gen::random_instance(2 + total % 7, 2 + total % 5, rng, true);
    if (!distinct_similarities(inst.training, inst.query)) continue;
    const std::size_t k = 1 + total % inst.training.size();
    KnnConfig cfg;
    cfg.k = k;
    cfg.analytic_only = true;
    if (run_knn_selection(inst.training, inst.query, cfg).selected ==
        oracle::classical_knn(inst.training, inst.query, k)) {
      ++agree;
    }
    ++total;
  }
  const bool ok = prob_err <= 1e-10 && score_err <= 1e-12 && agree == total;
  return {ok, fmt("prob error %.3g, score identity error %.3g, top-K agreement %d/%d", prob_err,
                  score_err, agree, total)};
}

Outcome hybrid_pipeline() {
  KnnConfig kc;
  kc.k = 1;
  kc.master_seed = 6;
  const auto demo = hybrid_classify(example::training_set(), example::query(), kc,
                                    SamplingConfig::with_shots(1000000, 6));
  Rng rng(derive_seed(6, 0));
  int agree = 0;
  for (int t = 0; t < 100; ++t) {
    auto inst = gen::random_instance(1 + t % 8, 2 + t % 5, rng);
    KnnConfig full;
    full.k = inst.training.size();
    full.analytic_only = true;
    const auto h = hybrid_classify(inst.training, inst.query, full, SamplingConfig::analytic());
    const auto plain = run_classification(inst.training, inst.query, SamplingConfig::analytic());
    if (h.label == plain.label) ++agree;
  }
  return {demo.label == -1 && agree == 100,
          fmt("demo K=1 label %d, K=N agreement %d/100", demo.label, agree)};
}

Outcome sampling_convergence() {
  // Seed fixed before the first run; not tuned.
  const std::uint64_t seed = 7;
  Rng rng(derive_seed(seed, 0));
  const std::uint64_t base = 1000;
  std::vector<double> coarse, fine;
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto inst = gen::random_instance(1 + t % 4, 2 + t % 3, rng);
    const double p1 = analytic_p1(inst.training, inst.query);
    const auto lo = run_classification(inst.training, inst.query,
                                       SamplingConfig::with_shots(base, derive_seed(seed, 2 * t + 1)));
    const auto hi = run_classification(
        inst.training, inst.query, SamplingConfig::with_shots(16 * base, derive_seed(seed, 2 * t + 2)));
    coarse.push_back(std::abs(*lo.p_hat - p1));
    fine.push_back(std::abs(*hi.p_hat - p1));
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
  };
  const double a = median(coarse), b = median(fine);
  const double ratio = a / b;
  return {ratio >= 3.2 && ratio <= 5.0,
          fmt("median error %.5f at %llu shots, %.5f at %llu shots, ratio %.3f", a,
              static_cast<unsigned long long>(base), b, static_cast<unsigned long long>(16 * base),
              ratio)};
}

Outcome export_fidelity() {
  const double p1 = analytic_p1(example::training_set(), example::query());
  const auto full = example::build_circuits().full;
  const std::string dir = QCOS_SOURCE_DIR "/tests/golden/";
  double worst = 0.0;
  bool golden = true;
  const std::pair<qasm::FredkinMode, const char*> modes[] = {
      {qasm::FredkinMode::native, "example_native.qasm"},
      {qasm::FredkinMode::toffoli, "example_toffoli.qasm"}};
  for (const auto& [mode, file] : modes) {
    const auto text = qasm::export_qasm(full, {mode, {example::q::c}});
    const auto state = simulate(qasm::import_qasm(text));
    worst = std::max(worst, std::abs(state.probability_of(example::q::c, 1) - p1));
    golden = golden && text == read_file(dir + file);
  }
  return {worst <= 1e-9 && golden,
          fmt("max error %.3g, golden files %s", worst, golden ? "identical" : "differ")};
}

Outcome gate_performance() {
  StateVector s(20);
  const auto t0 = Clock::now();
  s.apply(Gate::h(10));
  const double secs = seconds_since(t0);
  return {secs < 1.0, fmt("H on 20 qubits in %.4f s", secs)};
}

}  // namespace

int main() {
  const auto start = Clock::now();
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget;  // seconds
  };
  const std::vector<Criterion> criteria{
      {1, "demo reproduction", demo_decision, 10.0},
      {2, "swap test identity", swap_identity, 5.0},
      {3, "formula vs simulation", formula_agreement, 30.0},
      {4, "oracle decision equivalence", oracle_equivalence, 120.0},
      {5, "k-nn analytics", knn_analytics, 60.0},
      {6, "hybrid pipeline", hybrid_pipeline, 300.0},
      {7, "sampling convergence", sampling_convergence, 300.0},
      {8, "export fidelity", export_fidelity, 300.0},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    const bool ok = o.pass && secs < c.budget;
    if (!ok) ++failed;
    std::printf("%s %d %s: %s [%.2f s, budget %.0f s]\n", ok ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget);
    std::fflush(stdout);
  }

  const auto perf = gate_performance();
  const double total = seconds_since(start);
  const bool perf_ok = perf.pass && total < 300.0;
  if (!perf_ok) ++failed;
  std::printf("%s 9 performance floor: %s, suite %.2f s [budget 300 s]\n", perf_ok ? "PASS" : "FAIL",
              perf.detail.c_str(), total);
  return failed == 0 ? 0 : 1;
}
