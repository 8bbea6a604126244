#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qcos/errors.hpp"

namespace qcos {

/// Qubit position. Qubit 0 is the least-significant bit of a basis-state label.
using QubitIndex = std::size_t;
using QubitList = std::vector<QubitIndex>;

enum class GateKind { H, X, RY, CNOT, Fredkin };

inline const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::RY: return "ry";
    case GateKind::CNOT: return "cnot";
    case GateKind::Fredkin: return "fredkin";
  }
  return "?";
}

/// A gate is a base operation on its targets (H, X, RY(angle) on one target, or a swap of two
/// targets for Fredkin) applied only on basis states where every control qubit is 1.
/// CNOT is X with at least one control; an X given controls is stored as CNOT.
class Gate {
 public:
  Gate(GateKind kind, QubitList targets, QubitList controls = {}, double angle = 0.0)
      : kind_(kind), angle_(angle), targets_(std::move(targets)), controls_(std::move(controls)) {
    if (kind_ == GateKind::X && !controls_.empty()) kind_ = GateKind::CNOT;
    validate();
  }

  static Gate h(QubitIndex target, QubitList controls = {}) {
    return Gate(GateKind::H, {target}, std::move(controls));
  }
  static Gate x(QubitIndex target) { return Gate(GateKind::X, {target}); }
  static Gate ry(double angle, QubitIndex target, QubitList controls = {}) {
    return Gate(GateKind::RY, {target}, std::move(controls), angle);
  }
  static Gate cnot(QubitIndex control, QubitIndex target) {
    return Gate(GateKind::CNOT, {target}, {control});
  }
  static Gate toffoli(QubitIndex c0, QubitIndex c1, QubitIndex target) {
    return Gate(GateKind::CNOT, {target}, {c0, c1});
  }
  static Gate mcx(QubitList controls, QubitIndex target) {
    return Gate(GateKind::CNOT, {target}, std::move(controls));
  }
  static Gate fredkin(QubitIndex control, QubitIndex a, QubitIndex b) {
    return Gate(GateKind::Fredkin, {a, b}, {control});
  }
  static Gate controlled_swap(QubitList controls, QubitIndex a, QubitIndex b) {
    return Gate(GateKind::Fredkin, {a, b}, std::move(controls));
  }

  GateKind kind() const noexcept { return kind_; }
  double angle() const noexcept { return angle_; }
  const QubitList& targets() const noexcept { return targets_; }
  const QubitList& controls() const noexcept { return controls_; }

  /// Largest qubit index referenced by the gate.
  QubitIndex max_qubit() const {
    QubitIndex m = *std::max_element(targets_.begin(), targets_.end());
    for (auto c : controls_) m = std::max(m, c);
    return m;
  }

  std::string describe() const {
    std::ostringstream os;
    os << to_string(kind_);
    if (kind_ == GateKind::RY) os << '(' << angle_ << ')';
    os << " targets=[";
    for (std::size_t i = 0; i < targets_.size(); ++i) os << (i ? "," : "") << targets_[i];
    os << "] controls=[";
    for (std::size_t i = 0; i < controls_.size(); ++i) os << (i ? "," : "") << controls_[i];
    os << ']';
    return os.str();
  }

  friend bool operator==(const Gate&, const Gate&) = default;

 private:
  void validate() const {
    const std::size_t want = kind_ == GateKind::Fredkin ? 2 : 1;
    if (targets_.size() != want) {
      throw InvalidCircuit(std::string(to_string(kind_)) + " needs exactly " +
                           std::to_string(want) + " target(s)");
    }
    if ((kind_ == GateKind::CNOT || kind_ == GateKind::Fredkin) && controls_.empty()) {
      throw InvalidCircuit(std::string(to_string(kind_)) + " needs at least one control");
    }
    if (!std::isfinite(angle_)) throw InvalidCircuit("gate angle must be finite");
    QubitList all = targets_;
    all.insert(all.end(), controls_.begin(), controls_.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
      throw InvalidCircuit("duplicate qubit index in gate " + describe());
    }
  }

  GateKind kind_;
  double angle_;
  QubitList targets_;
  QubitList controls_;
};

}  // namespace qcos
