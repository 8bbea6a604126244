#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcos/errors.hpp"
#include "qcos/gate.hpp"
#include "qcos/statevector.hpp"

namespace qcos {

/// Standard register role names used by the builders.
namespace roles {
inline constexpr const char* index_register = "index-register";
inline constexpr const char* data_register = "data-register";
inline constexpr const char* label = "label";
inline constexpr const char* ancilla_a = "ancilla-a";
inline constexpr const char* ancilla_b = "ancilla-b";
inline constexpr const char* control_c = "control-c";
inline constexpr const char* control_ancilla = "control-ancilla";
}  // namespace roles

/// Ordered gate list over a fixed qubit count, with named register roles.
/// Every mutation is validated, so a Circuit object is always well-formed.
class Circuit {
 public:
  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits_ == 0) throw InvalidCircuit("a circuit needs at least one qubit");
  }

  Circuit& add(Gate gate) {
    if (gate.max_qubit() >= num_qubits_) {
      throw InvalidCircuit("gate " + gate.describe() + " exceeds " + std::to_string(num_qubits_) +
                           "-qubit circuit");
    }
    gates_.push_back(std::move(gate));
    return *this;
  }

  Circuit& append(const Circuit& other) {
    for (const auto& g : other.gates()) add(g);
    return *this;
  }

  /// Names a register. Roles must stay in range and pairwise disjoint.
  Circuit& set_role(const std::string& name, QubitList qubits) {
    for (auto q : qubits) {
      if (q >= num_qubits_) throw InvalidCircuit("role " + name + " references qubit out of range");
      for (const auto& [other, qs] : roles_) {
        if (other != name && std::find(qs.begin(), qs.end(), q) != qs.end()) {
          throw InvalidCircuit("roles " + name + " and " + other + " overlap on qubit " +
                               std::to_string(q));
        }
      }
    }
    roles_[name] = std::move(qubits);
    return *this;
  }

  const QubitList& role(const std::string& name) const {
    auto it = roles_.find(name);
    if (it == roles_.end()) throw InvalidCircuit("circuit has no role " + name);
    return it->second;
  }

  bool has_role(const std::string& name) const { return roles_.contains(name); }
  const std::map<std::string, QubitList>& roles() const noexcept { return roles_; }

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

 private:
  std::size_t num_qubits_;
  std::vector<Gate> gates_;
  std::map<std::string, QubitList> roles_;
};

inline void apply_circuit(StateVector& state, const Circuit& circuit) {
  if (circuit.num_qubits() > state.num_qubits()) {
    throw InvalidCircuit(std::to_string(circuit.num_qubits()) + "-qubit circuit applied to " +
                         std::to_string(state.num_qubits()) + "-qubit state");
  }
  for (const auto& g : circuit.gates()) state.apply(g);
}

/// Runs `circuit` on |0...0>.
inline StateVector simulate(const Circuit& circuit) {
  StateVector s(circuit.num_qubits());
  apply_circuit(s, circuit);
  return s;
}

/// H(c), one Fredkin per qubit pair reg_b[k] <-> reg_a[k] (all controlled by c), H(c).
/// With `num_qubits == 0` the circuit is sized to the largest index used.
inline Circuit build_swap_test(QubitIndex control, const QubitList& reg_b, const QubitList& reg_a,
                               std::size_t num_qubits = 0) {
  if (reg_a.size() != reg_b.size()) {
    throw InvalidCircuit("swap test registers differ in width (" + std::to_string(reg_b.size()) +
                         " vs " + std::to_string(reg_a.size()) + ")");
  }
  if (reg_a.empty()) throw InvalidCircuit("swap test registers must be non-empty");
  if (num_qubits == 0) {
    QubitIndex top = control;
    for (auto q : reg_a) top = std::max(top, q);
    for (auto q : reg_b) top = std::max(top, q);
    num_qubits = top + 1;
  }
  Circuit c(num_qubits);
  c.set_role(roles::control_c, {control});
  c.set_role(roles::ancilla_b, reg_b);
  c.set_role(roles::ancilla_a, reg_a);
  c.add(Gate::h(control));
  for (std::size_t k = 0; k < reg_a.size(); ++k) c.add(Gate::fredkin(control, reg_b[k], reg_a[k]));
  c.add(Gate::h(control));
  return c;
}

}  // namespace qcos
