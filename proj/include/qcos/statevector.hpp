#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcos/errors.hpp"
#include "qcos/gate.hpp"
#include "qcos/random.hpp"

namespace qcos {

using amplitude_t = std::complex<double>;

/// Tolerance on |norm^2 - 1| enforced after construction and after every gate.
inline constexpr double kNormTolerance = 1e-10;

/// Dense state vector of m qubits, little-endian: bit k of a basis label is qubit k.
///
/// Gates are applied in place and the norm is checked afterwards; the state is never
/// renormalized behind the caller's back, so a broken gate kernel surfaces immediately
/// as an InternalError.
class StateVector {
 public:
  static constexpr std::size_t kDefaultMaxQubits = 26;

  /// |0...0> on `num_qubits` qubits.
  explicit StateVector(std::size_t num_qubits, std::size_t max_qubits = kDefaultMaxQubits)
      : num_qubits_(checked_width(num_qubits, max_qubits)),
        amps_(std::size_t{1} << num_qubits_, amplitude_t{0.0, 0.0}) {
    amps_[0] = 1.0;
  }

  static StateVector basis(std::size_t num_qubits, std::uint64_t label,
                           std::size_t max_qubits = kDefaultMaxQubits) {
    StateVector s(num_qubits, max_qubits);
    if (label >= s.dimension()) throw InvalidCircuit("basis label out of range");
    s.amps_[0] = 0.0;
    s.amps_[label] = 1.0;
    return s;
  }

  /// Takes ownership of `amps`; the length must be a power of two and the norm 1.
  static StateVector from_amplitudes(std::vector<amplitude_t> amps,
                                     std::size_t max_qubits = kDefaultMaxQubits) {
    if (amps.size() < 2 || (amps.size() & (amps.size() - 1)) != 0) {
      throw DimensionMismatch("amplitude count " + std::to_string(amps.size()) +
                              " is not a power of two >= 2");
    }
    std::size_t m = 0;
    while ((std::size_t{1} << m) < amps.size()) ++m;
    StateVector s(m, max_qubits, std::move(amps));
    if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) {
      throw DataError("amplitudes are not normalized (norm^2 = " +
                      std::to_string(s.norm_squared()) + ")");
    }
    return s;
  }

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const amplitude_t> amplitudes() const noexcept { return amps_; }
  const amplitude_t& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
  }

  /// this ⊗ high: the qubits of `high` are appended above the current ones.
  StateVector tensor(const StateVector& high) const {
    const std::size_t m = num_qubits_ + high.num_qubits_;
    std::vector<amplitude_t> out(std::size_t{1} << checked_width(m, kDefaultMaxQubits));
    for (std::size_t h = 0; h < high.dimension(); ++h) {
      const amplitude_t ah = high.amps_[h];
      if (ah == amplitude_t{}) continue;
      for (std::size_t l = 0; l < dimension(); ++l) out[h * dimension() + l] = ah * amps_[l];
    }
    return StateVector(m, kDefaultMaxQubits, std::move(out));
  }

  void apply(const Gate& gate) {
    check_indices(gate);
    std::uint64_t cmask = 0;
    for (auto c : gate.controls()) cmask |= std::uint64_t{1} << c;
    switch (gate.kind()) {
      case GateKind::H: {
        const double r = std::numbers::sqrt2 / 2.0;
        apply_1q(gate.targets()[0], cmask, r, r, r, -r);
        break;
      }
      case GateKind::X:
      case GateKind::CNOT:
        apply_x(gate.targets()[0], cmask);
        break;
      case GateKind::RY: {
        const double c = std::cos(gate.angle() / 2.0);
        const double s = std::sin(gate.angle() / 2.0);
        apply_1q(gate.targets()[0], cmask, c, -s, s, c);
        break;
      }
      case GateKind::Fredkin:
        apply_swap(gate.targets()[0], gate.targets()[1], cmask);
        break;
    }
    check_norm([&] { return gate.describe(); });
  }

  /// Probability that measuring `qubit` yields `outcome`.
  double probability_of(QubitIndex qubit, int outcome) const {
    check_qubit(qubit);
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    double p = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if (((i & bit) != 0) == (outcome != 0)) p += std::norm(amps_[i]);
    }
    return p;
  }

  /// Joint distribution of the listed qubits. Entry j has bit k equal to the value of qubits[k].
  std::vector<double> marginal(std::span<const QubitIndex> qubits) const {
    for (auto q : qubits) check_qubit(q);
    std::vector<double> dist(std::size_t{1} << qubits.size(), 0.0);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      std::size_t j = 0;
      for (std::size_t k = 0; k < qubits.size(); ++k) j |= ((i >> qubits[k]) & 1U) << k;
      dist[j] += std::norm(amps_[i]);
    }
    return dist;
  }

  /// Projects onto `outcome` of `qubit` and renormalizes. The outcome must have
  /// nonzero probability.
  StateVector collapse(QubitIndex qubit, int outcome) const {
    const double p = probability_of(qubit, outcome);
    if (!(p > 0.0)) throw NumericalError("cannot collapse onto a zero-probability outcome");
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const double scale = 1.0 / std::sqrt(p);
    std::vector<amplitude_t> out(amps_.size());
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if (((i & bit) != 0) == (outcome != 0)) out[i] = amps_[i] * scale;
    }
    return StateVector(num_qubits_, kDefaultMaxQubits, std::move(out));
  }

 private:
  StateVector(std::size_t num_qubits, std::size_t max_qubits, std::vector<amplitude_t> amps)
      : num_qubits_(checked_width(num_qubits, max_qubits)), amps_(std::move(amps)) {}

  static std::size_t checked_width(std::size_t m, std::size_t max_qubits) {
    if (m < 1) throw InvalidCircuit("a state needs at least one qubit");
    if (m > max_qubits) {
      throw InvalidCircuit(std::to_string(m) + " qubits exceeds the configured cap of " +
                           std::to_string(max_qubits));
    }
    return m;
  }

  static std::uint64_t insert_zero(std::uint64_t k, QubitIndex bit) noexcept {
    const std::uint64_t low = (std::uint64_t{1} << bit) - 1;
    return ((k & ~low) << 1) | (k & low);
  }

  void check_qubit(QubitIndex q) const {
    if (q >= num_qubits_) {
      throw InvalidCircuit("qubit " + std::to_string(q) + " out of range for " +
                           std::to_string(num_qubits_) + "-qubit state");
    }
  }

  void check_indices(const Gate& gate) const {
    if (gate.max_qubit() >= num_qubits_) {
      throw InvalidCircuit("gate " + gate.describe() + " out of range for " +
                           std::to_string(num_qubits_) + "-qubit state");
    }
  }

  template <class Where>
  void check_norm(Where&& where) const {
    const double drift = std::abs(norm_squared() - 1.0);
    if (drift > kNormTolerance) {
      throw InternalError("norm drift " + std::to_string(drift) + " after " + where());
    }
  }

  void apply_1q(QubitIndex t, std::uint64_t cmask, double m00, double m01, double m10,
                double m11) {
    const std::uint64_t tbit = std::uint64_t{1} << t;
    const std::uint64_t half = amps_.size() >> 1;
    for (std::uint64_t k = 0; k < half; ++k) {
      const std::uint64_t i0 = insert_zero(k, t);
      if ((i0 & cmask) != cmask) continue;
      const std::uint64_t i1 = i0 | tbit;
      const amplitude_t a0 = amps_[i0];
      const amplitude_t a1 = amps_[i1];
      amps_[i0] = m00 * a0 + m01 * a1;
      amps_[i1] = m10 * a0 + m11 * a1;
    }
  }

  void apply_x(QubitIndex t, std::uint64_t cmask) {
    const std::uint64_t tbit = std::uint64_t{1} << t;
    const std::uint64_t half = amps_.size() >> 1;
    for (std::uint64_t k = 0; k < half; ++k) {
      const std::uint64_t i0 = insert_zero(k, t);
      if ((i0 & cmask) == cmask) std::swap(amps_[i0], amps_[i0 | tbit]);
    }
  }

  void apply_swap(QubitIndex a, QubitIndex b, std::uint64_t cmask) {
    const std::uint64_t abit = std::uint64_t{1} << a;
    const std::uint64_t bbit = std::uint64_t{1} << b;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      // visit each |..a=1..b=0..> once and exchange it with its partner
      if ((i & abit) && !(i & bbit) && (i & cmask) == cmask) {
        std::swap(amps_[i], amps_[(i ^ abit) | bbit]);
      }
    }
  }

  std::size_t num_qubits_;
  std::vector<amplitude_t> amps_;
};

/// Value-semantics gate application.
inline StateVector apply_gate(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

/// <a|b>, conjugate-linear in `a`.
inline amplitude_t inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionMismatch("inner product of " + std::to_string(a.num_qubits()) + "- and " +
                            std::to_string(b.num_qubits()) + "-qubit states");
  }
  amplitude_t acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.dimension(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

struct Measurement {
  int outcome;
  StateVector collapsed;
};

/// Projective measurement of one qubit drawing the outcome from `rng`.
inline Measurement measure_qubit(const StateVector& state, QubitIndex qubit, Rng& rng) {
  const double p1 = state.probability_of(qubit, 1);
  const double p0 = state.probability_of(qubit, 0);
  const double u = rng.uniform();
  // rounding can leave p1 a hair below 1 while p0 is exactly 0; never pick an empty branch
  const int outcome = (p1 > 0.0 && (p0 == 0.0 || u < p1)) ? 1 : 0;
  return {outcome, state.collapse(qubit, outcome)};
}

}  // namespace qcos
