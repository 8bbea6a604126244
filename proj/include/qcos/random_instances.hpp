#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "qcos/encoding.hpp"
#include "qcos/random.hpp"
#include "qcos/statevector.hpp"

/// Random generators for property checks, shared by `qcos verify` and the test suites.
namespace qcos::gen {

/// Standard normal via Box-Muller (kept local so streams stay platform independent).
inline double normal(Rng& rng) {
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Haar-like random pure state on m qubits.
inline StateVector random_state(std::size_t m, Rng& rng) {
  std::vector<amplitude_t> amps(std::size_t{1} << m);
  double acc = 0.0;
  for (auto& a : amps) {
    a = {normal(rng), normal(rng)};
    acc += std::norm(a);
  }
  const double s = 1.0 / std::sqrt(acc);
  for (auto& a : amps) a *= s;
  return StateVector::from_amplitudes(std::move(amps));
}

/// Gaussian feature vector, or uniform on (0, 1] when `positive`.
inline DataVector random_vector(std::size_t d, Rng& rng, bool positive = false) {
  for (;;) {
    std::vector<double> v(d);
    double acc = 0.0;
    for (auto& c : v) {
      c = positive ? 1.0 - rng.uniform() : normal(rng);
      acc += c * c;
    }
    if (acc > 1e-12) return DataVector(std::move(v));
  }
}

struct Instance {
  TrainingSet training;
  DataVector query;
};

inline Instance random_instance(std::size_t n, std::size_t d, Rng& rng, bool positive = false) {
  std::vector<LabeledPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({random_vector(d, rng, positive), rng.uniform() < 0.5 ? 1 : -1});
  }
  return {TrainingSet(std::move(pts)), random_vector(d, rng, positive)};
}

}  // namespace qcos::gen
