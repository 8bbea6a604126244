#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcos/classifier.hpp"
#include "qcos/dataset.hpp"
#include "qcos/errors.hpp"
#include "qcos/example.hpp"
#include "qcos/oracle.hpp"
#include "qcos/qasm.hpp"
#include "qcos/qknn.hpp"
#include "qcos/verify.hpp"

namespace qcos::cli {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kSeedEnv = "QCOS_SEED";
inline constexpr std::uint64_t kFallbackSeed = 1;

enum class Command { classify, knn_classify, verify, export_qasm, example };

inline const char* to_string(Command c) {
  switch (c) {
    case Command::classify: return "classify";
    case Command::knn_classify: return "knn-classify";
    case Command::verify: return "verify";
    case Command::export_qasm: return "export-qasm";
    case Command::example: return "example";
  }
  return "?";
}

struct RunConfig {
  Command command = Command::example;
  std::string dataset;
  std::string query;
  std::optional<std::uint64_t> shots;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::size_t k = 1;
  std::uint64_t knn_shots = 10000;
  std::uint64_t seed = kFallbackSeed;
  bool analytic_only = false;
  bool circuit = false;  // classify: drive the registered gate-level circuit
  std::string output;
  AncillaPrep ancilla_b = AncillaPrep::plus;
  qasm::FredkinMode fredkin = qasm::FredkinMode::native;
  bool rounded_angles = false;
  unsigned workers = 1;
  std::size_t verify_instances = 50;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Seed used when --seed is absent: $QCOS_SEED if set, otherwise 1.
inline std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv); env && *env) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(env, &pos, 0);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string(kSeedEnv) + "='" + env + "' is not an unsigned integer");
  }
  return kFallbackSeed;
}

/// Thrown by parse_args for --help; carries the formatted help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv (without the program name). Throws UsageError or HelpRequested.
inline RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Cosine-similarity quantum binary classifier simulator", "qcos"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string ancilla = "plus";
  std::string fredkin = "native";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Master seed (default $QCOS_SEED or 1)");
    sub->add_option("-o,--output", cfg.output, "Write the report to this file instead of stdout");
  };
  auto add_sampling = [&](CLI::App* sub) {
    auto* shots = sub->add_option("--shots", cfg.shots, "Number of shots")->check(CLI::PositiveNumber);
    auto* eps = sub->add_option("--epsilon", cfg.epsilon, "Target accuracy on P(1)");
    auto* del = sub->add_option("--delta", cfg.delta, "Failure probability for --epsilon");
    eps->needs(del);
    del->needs(eps);
    shots->excludes(eps);
    shots->excludes(del);
    sub->add_flag("--analytic-only", cfg.analytic_only, "Decide from the closed-form P(1)");
    sub->add_option("--ancilla-b", ancilla, "State of SWAP partner qubit b")
        ->check(CLI::IsMember({"plus", "minus"}));
    sub->add_option("--workers", cfg.workers, "Sampling threads")->check(CLI::PositiveNumber);
  };

  auto* classify = app.add_subcommand("classify", "Classify a query against a CSV training set");
  classify->add_option("--dataset", cfg.dataset, "Training CSV")->required();
  classify->add_option("--query", cfg.query, "Query CSV file or inline list 'a,b,...'")->required();
  classify->add_flag("--circuit", cfg.circuit, "Use the registered gate-level circuit");
  add_sampling(classify);
  add_common(classify);

  auto* knn = app.add_subcommand("knn-classify", "Quantum K-NN selection followed by classification");
  knn->add_option("--dataset", cfg.dataset, "Training CSV")->required();
  knn->add_option("--query", cfg.query, "Query CSV file or inline list")->required();
  knn->add_option("-k,--k", cfg.k, "Number of neighbors")->required()->check(CLI::PositiveNumber);
  knn->add_option("--knn-shots", cfg.knn_shots, "Shots for neighbor selection")
      ->check(CLI::PositiveNumber);
  add_sampling(knn);
  add_common(knn);

  auto* verify = app.add_subcommand("verify", "Run the built-in invariant suites");
  verify->add_option("--dataset", cfg.dataset, "Optional training CSV to check as well");
  verify->add_option("--query", cfg.query, "Query for --dataset");
  verify->add_option("--instances", cfg.verify_instances, "Random instances per suite")
      ->check(CLI::PositiveNumber);
  add_common(verify);

  auto* exportq = app.add_subcommand("export-qasm", "Write the registered circuit as OpenQASM 2.0");
  exportq->add_option("--dataset", cfg.dataset, "Training CSV of a registered instance");
  exportq->add_option("--query", cfg.query, "Query of a registered instance");
  exportq->add_option("--fredkin", fredkin, "Controlled-swap emission")
      ->check(CLI::IsMember({"native", "toffoli"}));
  exportq->add_flag("--rounded-angles", cfg.rounded_angles,
                    "Use the rounded 0.49*pi / 0.31*pi rotations");
  exportq->add_option("--ancilla-b", ancilla, "State of SWAP partner qubit b")
      ->check(CLI::IsMember({"plus", "minus"}));
  exportq->add_option("-o,--output", cfg.output, "Output file (default stdout)");

  auto* example = app.add_subcommand("example", "Reproduce the two-point demonstration run");
  add_sampling(example);
  add_common(example);

  std::vector<const char*> argv{"qcos"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::ostringstream help, ignored;
      app.exit(e, help, ignored);
      throw HelpRequested(help.str());
    }
    throw UsageError(e.what());
  }

  if (classify->parsed()) cfg.command = Command::classify;
  if (knn->parsed()) cfg.command = Command::knn_classify;
  if (verify->parsed()) cfg.command = Command::verify;
  if (exportq->parsed()) cfg.command = Command::export_qasm;
  if (example->parsed()) cfg.command = Command::example;

  cfg.seed = seed ? *seed : default_seed();
  cfg.ancilla_b = ancilla == "minus" ? AncillaPrep::minus : AncillaPrep::plus;
  cfg.fredkin = fredkin == "toffoli" ? qasm::FredkinMode::toffoli : qasm::FredkinMode::native;
  if (cfg.command == Command::verify && cfg.dataset.empty() != cfg.query.empty()) {
    throw UsageError("verify: --dataset and --query go together");
  }
  if (cfg.command == Command::export_qasm && cfg.dataset.empty() != cfg.query.empty()) {
    throw UsageError("export-qasm: --dataset and --query go together");
  }
  return cfg;
}

/// Canonical argument list reproducing `cfg` (the report's invocation block).
inline std::vector<std::string> to_argv(const RunConfig& cfg) {
  std::vector<std::string> a{to_string(cfg.command)};
  auto opt = [&](const char* name, const std::string& v) {
    if (!v.empty()) {
      a.emplace_back(name);
      a.push_back(v);
    }
  };
  auto num = [](double v) { return qasm::format_angle(v); };
  opt("--dataset", cfg.dataset);
  opt("--query", cfg.query);
  const bool sampled = cfg.command == Command::classify || cfg.command == Command::knn_classify ||
                       cfg.command == Command::example;
  if (cfg.command == Command::knn_classify) {
    opt("--k", std::to_string(cfg.k));
    opt("--knn-shots", std::to_string(cfg.knn_shots));
  }
  if (sampled) {
    if (cfg.shots) opt("--shots", std::to_string(*cfg.shots));
    if (cfg.epsilon) opt("--epsilon", num(*cfg.epsilon));
    if (cfg.delta) opt("--delta", num(*cfg.delta));
    if (cfg.analytic_only) a.emplace_back("--analytic-only");
    if (cfg.command == Command::classify && cfg.circuit) a.emplace_back("--circuit");
    opt("--ancilla-b", to_string(cfg.ancilla_b));
    if (cfg.workers != 1) opt("--workers", std::to_string(cfg.workers));
  }
  if (cfg.command == Command::verify) opt("--instances", std::to_string(cfg.verify_instances));
  if (cfg.command == Command::export_qasm) {
    opt("--fredkin", cfg.fredkin == qasm::FredkinMode::toffoli ? "toffoli" : "native");
    if (cfg.rounded_angles) a.emplace_back("--rounded-angles");
    opt("--ancilla-b", to_string(cfg.ancilla_b));
  } else {
    opt("--seed", std::to_string(cfg.seed));
  }
  opt("--output", cfg.output);
  return a;
}

namespace detail {

inline SamplingConfig sampling_for(const RunConfig& cfg, std::uint64_t default_shots) {
  SamplingConfig s = cfg.analytic_only ? SamplingConfig::analytic()
                     : cfg.epsilon     ? SamplingConfig::with_accuracy(*cfg.epsilon, *cfg.delta, cfg.seed)
                                       : SamplingConfig::with_shots(cfg.shots.value_or(default_shots), cfg.seed);
  s.master_seed = cfg.seed;
  s.ancilla_b = cfg.ancilla_b;
  s.workers = cfg.workers;
  return s;
}

inline json optional_json(const auto& v) { return v ? json(*v) : json(nullptr); }

inline json classification_json(const ClassificationResult& r) {
  json j;
  j["label"] = r.label;
  j["p_hat"] = optional_json(r.p_hat);
  j["analytic_p1"] = r.analytic_p1;
  j["simulated_p1"] = r.simulated_p1;
  j["shots"] = optional_json(r.shots);
  j["ones"] = r.shots ? json(r.ones) : json(nullptr);
  j["margin"] = r.margin;
  j["zero_margin"] = r.zero_margin;
  j["ancilla_b"] = to_string(r.ancilla_b);
  return j;
}

inline json oracle_json(const oracle::OracleResult& o) {
  return {{"score", o.score}, {"label", o.label}, {"cosines", o.per_point_cosines}};
}

inline json selection_json(const KnnSelection& s, std::size_t k) {
  json j;
  j["k"] = k;
  j["shots"] = s.shots == 0 ? json(nullptr) : json(s.shots);
  j["selected"] = s.selected;
  j["score_estimates"] = s.score_estimates;
  j["analytic_scores"] = optional_json(s.analytic_scores);
  j["counts"] = {{"0", s.counts[0]}, {"1", s.counts[1]}};
  j["degenerate"] = s.degenerate;
  j["warnings"] = s.warnings;
  return j;
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw DataError("cannot write " + cfg.output);
  f << text;
}

inline json header(const RunConfig& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = to_string(cfg.command);
  j["seed"] = cfg.seed;
  j["invocation"] = to_argv(cfg);
  return j;
}

inline int execute(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::classify: {
      const auto ts = io::load_dataset(cfg.dataset);
      const auto x = io::load_query(cfg.query);
      const auto s = sampling_for(cfg, 8192);
      const auto r = cfg.circuit ? classify_via_circuit(ts, x, s) : run_classification(ts, x, s);
      json j = header(cfg);
      j.update(classification_json(r));
      if (s.epsilon()) j["accuracy"] = {{"epsilon", *s.epsilon()}, {"delta", *s.delta()}};
      j["oracle"] = oracle_json(oracle::classical_classify(ts, x));
      emit(cfg, j.dump(2) + "\n", out);
      return 0;
    }
    case Command::knn_classify: {
      const auto ts = io::load_dataset(cfg.dataset);
      const auto x = io::load_query(cfg.query);
      KnnConfig kc;
      kc.k = cfg.k;
      kc.shots = cfg.knn_shots;
      kc.master_seed = derive_seed(cfg.seed, 0x6b6e6eULL);
      kc.workers = cfg.workers;
      kc.analytic_only = cfg.analytic_only;
      const auto h = hybrid_classify(ts, x, kc, sampling_for(cfg, 8192));
      json j = header(cfg);
      j.update(classification_json(h.classification));
      j["knn"] = selection_json(h.selection, cfg.k);
      j["oracle"] = {{"knn", oracle::classical_knn(ts, x, cfg.k)},
                     {"restricted", oracle_json(oracle::classical_classify(h.restricted, x))}};
      emit(cfg, j.dump(2) + "\n", out);
      return 0;
    }
    case Command::verify: {
      VerifyOptions vo;
      vo.seed = cfg.seed;
      vo.instances = cfg.verify_instances;
      if (!cfg.dataset.empty()) {
        vo.training = io::load_dataset(cfg.dataset);
        vo.query = io::load_query(cfg.query);
      }
      const auto rep = run_verification(vo);
      json j = header(cfg);
      j["ok"] = rep.ok();
      std::size_t passed = 0, failed = 0;
      json suites = json::array();
      for (const auto& s : rep.suites) {
        passed += s.passed;
        failed += s.failed;
        suites.push_back({{"name", s.name}, {"passed", s.passed}, {"failed", s.failed},
                          {"max_error", s.max_error}});
      }
      j["passed"] = passed;
      j["failed"] = failed;
      j["suites"] = suites;
      emit(cfg, j.dump(2) + "\n", out);
      return rep.ok() ? 0 : static_cast<int>(ErrorCategory::internal);
    }
    case Command::export_qasm: {
      Circuit circuit(1);
      if (!cfg.dataset.empty()) {
        auto reg = find_registered_circuit(io::load_dataset(cfg.dataset), io::load_query(cfg.query),
                                           cfg.ancilla_b);
        if (!reg) throw UnsupportedInstance("no circuit is registered for this instance");
        circuit = std::move(reg->circuit);
      }
      if (cfg.dataset.empty() || cfg.rounded_angles) {
        const auto angles = cfg.rounded_angles ? example::Angles::rounded() : example::Angles::exact();
        circuit = example::build_circuits(angles, cfg.ancilla_b).full;
      }
      emit(cfg, qasm::export_qasm(circuit, {cfg.fredkin, {example::q::c}}), out);
      return 0;
    }
    case Command::example: {
      const auto ts = example::training_set();
      const auto x = example::query();
      const auto s = sampling_for(cfg, 1000000);
      const auto r = classify_via_circuit(ts, x, s);
      json j = header(cfg);
      j.update(classification_json(r));
      j["direct_state_p1"] = simulated_p1(ts, x, cfg.ancilla_b);
      j["oracle"] = oracle_json(oracle::classical_classify(ts, x));
      emit(cfg, j.dump(2) + "\n", out);
      return 0;
    }
  }
  return static_cast<int>(ErrorCategory::internal);
}

}  // namespace detail

/// Runs one command. Exit codes: 0 ok, 1 usage, 2 data, 3 numerical/degenerate, 4 internal.
inline int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return detail::execute(cfg, out);
  } catch (const Error& e) {
    const char* names[] = {"", "usage", "data", "numerical", "internal"};
    err << "error (" << names[static_cast<int>(e.category())] << "): " << e.what() << "\n";
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    err << "error (internal): " << e.what() << "\n";
    return static_cast<int>(ErrorCategory::internal);
  }
}

/// Full entry point: parse then run.
inline int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const Error& e) {
    err << "error (usage): " << e.what() << "\n";
    return static_cast<int>(ErrorCategory::usage);
  }
  return run_command(cfg, out, err);
}

}  // namespace qcos::cli
