#pragma once

#include <cmath>
#include <numbers>
#include <optional>

#include "qcos/circuit.hpp"
#include "qcos/encoding.hpp"

namespace qcos {

/// State of the SWAP-test partner qubit b. With |+> the control qubit gives
/// P(1) = (1 - <X|psi_x>)/4; with |-> it gives P(1) = (1 + <X|psi_x>)/4.
enum class AncillaPrep { plus, minus };

inline const char* to_string(AncillaPrep p) { return p == AncillaPrep::plus ? "plus" : "minus"; }

/// The two-point, two-feature demonstration instance:
/// training set {((1,0),+1), ((0.718,0.696),-1)} and query (0.884,0.468).
namespace example {

inline TrainingSet training_set() {
  return TrainingSet({{DataVector{1.0, 0.0}, 1}, {DataVector{0.718, 0.696}, -1}});
}

inline DataVector query() { return DataVector{0.884, 0.468}; }

/// RY angle taking |0> to the normalized 2-vector v.
inline double rotation_angle(const DataVector& v) { return 2.0 * std::atan2(v[1], v[0]); }

/// RY angles used by the preparation circuits.
struct Angles {
  double training;  // prepares |x_1>
  double query;     // prepares |x>

  /// Angles computed from the instance data; the circuits then reproduce the
  /// direct state preparation to machine precision.
  static Angles exact() {
    return {rotation_angle(training_set()[1].features), rotation_angle(example::query())};
  }

  /// The rounded hardware-run angles 0.49*pi and 0.31*pi (agree with the data to ~1e-3).
  static Angles rounded() { return {0.49 * std::numbers::pi, 0.31 * std::numbers::pi}; }
};

/// Qubit map of the composite 7-qubit circuit.
namespace q {
inline constexpr QubitIndex c = 0;
inline constexpr QubitIndex b = 1;
inline constexpr QubitIndex a = 2;
inline constexpr QubitIndex index = 3;
inline constexpr QubitIndex aux = 4;
inline constexpr QubitIndex data = 5;
inline constexpr QubitIndex label = 6;
}  // namespace q

struct Circuits {
  Circuit prep_training;  // 3 qubits: index, data, label -> |X>
  Circuit prep_query;     // 3 qubits: index, data, label -> |+>|x>|->
  Circuit full;           // 7 qubits: joint preparation + SWAP test
};

inline Circuits build_circuits(Angles angles = Angles::exact(),
                               AncillaPrep ancilla_b = AncillaPrep::plus) {
  Circuit prep_x(3);
  prep_x.set_role(roles::index_register, {0}).set_role(roles::data_register, {1});
  prep_x.set_role(roles::label, {2});
  prep_x.add(Gate::h(0)).add(Gate::ry(angles.training, 1, {0})).add(Gate::cnot(0, 2));

  Circuit prep_psi(3);
  prep_psi.set_role(roles::index_register, {0}).set_role(roles::data_register, {1});
  prep_psi.set_role(roles::label, {2});
  prep_psi.add(Gate::h(0)).add(Gate::ry(angles.query, 1)).add(Gate::x(2)).add(Gate::h(2));

  Circuit full(7);
  full.set_role(roles::control_c, {q::c}).set_role(roles::ancilla_b, {q::b});
  full.set_role(roles::ancilla_a, {q::a}).set_role(roles::index_register, {q::index});
  full.set_role(roles::control_ancilla, {q::aux}).set_role(roles::data_register, {q::data});
  full.set_role(roles::label, {q::label});

  // Both branches share the uniform index superposition.
  full.add(Gate::h(q::index));
  full.add(Gate::h(q::a));
  // a = 0 branch: |X>. The doubly controlled RY goes through the aux qubit.
  full.add(Gate::x(q::a));
  full.add(Gate::toffoli(q::a, q::index, q::aux));
  full.add(Gate::ry(angles.training, q::data, {q::aux}));
  full.add(Gate::toffoli(q::a, q::index, q::aux));
  full.add(Gate::toffoli(q::a, q::index, q::label));
  full.add(Gate::x(q::a));
  // a = 1 branch: |psi_x>
  full.add(Gate::ry(angles.query, q::data, {q::a}));
  full.add(Gate::cnot(q::a, q::label));
  full.add(Gate::h(q::label, {q::a}));
  // partner qubit b
  if (ancilla_b == AncillaPrep::minus) full.add(Gate::x(q::b));
  full.add(Gate::h(q::b));
  full.append(build_swap_test(q::c, {q::b}, {q::a}, 7));

  return {std::move(prep_x), std::move(prep_psi), std::move(full)};
}

}  // namespace example

/// A gate-level circuit registered for a specific (training set, query) instance.
struct RegisteredCircuit {
  Circuit circuit;
  QubitIndex control;  // qubit measured for the decision
};

namespace detail {
inline bool same_vector(const DataVector& a, const DataVector& b) {
  if (a.dimension() != b.dimension()) return false;
  for (std::size_t j = 0; j < a.dimension(); ++j) {
    if (std::abs(a[j] - b[j]) > 1e-12) return false;
  }
  return true;
}
}  // namespace detail

/// Looks up an explicit preparation circuit for the instance. Only the built-in
/// demonstration instance is registered.
inline std::optional<RegisteredCircuit> find_registered_circuit(
    const TrainingSet& ts, const DataVector& x, AncillaPrep ancilla_b = AncillaPrep::plus) {
  const auto ref = example::training_set();
  if (ts.size() != ref.size() || !detail::same_vector(x, example::query())) return std::nullopt;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].label != ref[i].label || !detail::same_vector(ts[i].features, ref[i].features)) {
      return std::nullopt;
    }
  }
  return RegisteredCircuit{example::build_circuits(example::Angles::exact(), ancilla_b).full,
                           example::q::c};
}

}  // namespace qcos
