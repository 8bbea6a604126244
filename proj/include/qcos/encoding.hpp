#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcos/errors.hpp"
#include "qcos/gate.hpp"
#include "qcos/statevector.hpp"

namespace qcos {

/// Real feature vector with its cached 2-norm. Zero and non-finite vectors are rejected.
class DataVector {
 public:
  explicit DataVector(std::vector<double> components) : components_(std::move(components)) {
    if (components_.empty()) throw DataError("feature vector is empty");
    double acc = 0.0;
    for (double v : components_) {
      if (!std::isfinite(v)) throw DataError("feature vector has a non-finite component");
      acc += v * v;
    }
    norm_ = std::sqrt(acc);
    if (!(norm_ > 0.0)) throw DataError("zero feature vector: cosine similarity is undefined");
  }

  DataVector(std::initializer_list<double> components)
      : DataVector(std::vector<double>(components)) {}

  std::span<const double> components() const noexcept { return components_; }
  std::size_t dimension() const noexcept { return components_.size(); }
  double norm() const noexcept { return norm_; }
  double operator[](std::size_t j) const { return components_[j]; }

  bool has_negative_entry() const {
    for (double v : components_) {
      if (v < 0.0) return true;
    }
    return false;
  }

 private:
  std::vector<double> components_;
  double norm_ = 0.0;
};

struct LabeledPoint {
  DataVector features;
  int label;  // -1 or +1

  /// b = (1 - y) / 2, the basis state of the label qubit.
  int label_bit() const noexcept { return (1 - label) / 2; }
};

/// N >= 1 labeled points sharing one dimension.
class TrainingSet {
 public:
  explicit TrainingSet(std::vector<LabeledPoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw DataError("training set is empty");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const auto& p = points_[i];
      if (p.label != 1 && p.label != -1) {
        throw DataError("label " + std::to_string(p.label) + " of point " + std::to_string(i) +
                        " is not in {-1,+1}");
      }
      if (p.features.dimension() != points_.front().features.dimension()) {
        throw DimensionMismatch("point " + std::to_string(i) + " has dimension " +
                                std::to_string(p.features.dimension()) + ", expected " +
                                std::to_string(points_.front().features.dimension()));
      }
    }
  }

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dimension() const noexcept { return points_.front().features.dimension(); }
  const LabeledPoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<LabeledPoint>& points() const noexcept { return points_; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  TrainingSet subset(std::span<const std::size_t> indexes) const {
    std::vector<LabeledPoint> out;
    out.reserve(indexes.size());
    for (auto i : indexes) {
      if (i >= points_.size()) throw DataError("subset index out of range");
      out.push_back(points_[i]);
    }
    return TrainingSet(std::move(out));
  }

 private:
  std::vector<LabeledPoint> points_;
};

/// Smallest k with 2^k >= n (0 for n <= 1).
constexpr std::size_t ceil_log2(std::size_t n) noexcept {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

/// Register placement. Classifier states use
///   index [0, ni) | data [ni, ni+n) | label | ancilla a
/// and K-NN states use
///   index [0, ni) | training copy [ni, ni+n) | query copy [ni+n, ni+2n) | ancilla.
/// Features are zero-padded to 2^n and unused index branches carry zero amplitude.
struct EncodingLayout {
  std::size_t num_points = 1;
  std::size_t dimension = 1;
  std::size_t index_qubits = 0;
  std::size_t data_qubits = 1;

  static EncodingLayout for_shape(std::size_t num_points, std::size_t dimension) {
    if (num_points == 0 || dimension == 0) throw DataError("empty encoding shape");
    EncodingLayout l;
    l.num_points = num_points;
    l.dimension = dimension;
    l.index_qubits = ceil_log2(num_points);
    l.data_qubits = std::max<std::size_t>(1, ceil_log2(dimension));
    return l;
  }

  static EncodingLayout for_set(const TrainingSet& ts) {
    return for_shape(ts.size(), ts.dimension());
  }

  std::size_t padded_dimension() const noexcept { return std::size_t{1} << data_qubits; }
  std::size_t padded_points() const noexcept { return std::size_t{1} << index_qubits; }

  QubitList index_register() const { return range(0, index_qubits); }
  QubitList data_register() const { return range(index_qubits, data_qubits); }
  QubitIndex label_qubit() const noexcept { return index_qubits + data_qubits; }
  QubitIndex ancilla_a() const noexcept { return label_qubit() + 1; }
  /// index + data + label
  std::size_t register_qubits() const noexcept { return index_qubits + data_qubits + 1; }
  /// register_qubits plus ancilla a
  std::size_t joint_qubits() const noexcept { return register_qubits() + 1; }

  QubitList knn_training_register() const { return range(index_qubits, data_qubits); }
  QubitList knn_query_register() const { return range(index_qubits + data_qubits, data_qubits); }
  QubitIndex knn_ancilla() const noexcept { return index_qubits + 2 * data_qubits; }
  std::size_t knn_qubits() const noexcept { return knn_ancilla() + 1; }

 private:
  static QubitList range(std::size_t first, std::size_t count) {
    QubitList out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = first + k;
    return out;
  }
};

namespace detail {

inline void check_dimension(const EncodingLayout& layout, const DataVector& v) {
  if (v.dimension() != layout.dimension) {
    throw DimensionMismatch("vector of dimension " + std::to_string(v.dimension()) +
                            " does not match layout dimension " +
                            std::to_string(layout.dimension));
  }
}

inline void check_layout(const EncodingLayout& layout, const TrainingSet& ts) {
  if (ts.size() != layout.num_points) {
    throw DimensionMismatch("training set has " + std::to_string(ts.size()) +
                            " points, layout expects " + std::to_string(layout.num_points));
  }
  for (const auto& p : ts) check_dimension(layout, p.features);
}

}  // namespace detail

/// |v> = sum_j v_j / |v| |j> on `data_qubits` qubits (0 selects the minimal width).
inline StateVector amplitude_encode(const DataVector& v, std::size_t data_qubits = 0) {
  const std::size_t n =
      data_qubits == 0 ? std::max<std::size_t>(1, ceil_log2(v.dimension())) : data_qubits;
  if ((std::size_t{1} << n) < v.dimension()) {
    throw DimensionMismatch("vector of dimension " + std::to_string(v.dimension()) +
                            " does not fit in " + std::to_string(n) + " qubits");
  }
  std::vector<amplitude_t> amps(std::size_t{1} << n);
  for (std::size_t j = 0; j < v.dimension(); ++j) amps[j] = v[j] / v.norm();
  return StateVector::from_amplitudes(std::move(amps));
}

/// (1/sqrt N) sum_i |i>|x_i>|b_i>
inline StateVector build_training_state(const TrainingSet& ts, const EncodingLayout& layout) {
  detail::check_layout(layout, ts);
  const std::size_t ni = layout.index_qubits;
  const std::size_t n = layout.data_qubits;
  const double w = 1.0 / std::sqrt(static_cast<double>(ts.size()));
  std::vector<amplitude_t> amps(std::size_t{1} << layout.register_qubits());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& p = ts[i];
    const std::size_t lab = static_cast<std::size_t>(p.label_bit()) << (ni + n);
    for (std::size_t j = 0; j < p.features.dimension(); ++j) {
      amps[i | (j << ni) | lab] = w * p.features[j] / p.features.norm();
    }
  }
  return StateVector::from_amplitudes(std::move(amps));
}

/// (1/sqrt N) sum_i |i>|x>|->
inline StateVector build_query_state(const DataVector& x, const EncodingLayout& layout) {
  detail::check_dimension(layout, x);
  const std::size_t ni = layout.index_qubits;
  const std::size_t n = layout.data_qubits;
  const double w = 1.0 / std::sqrt(static_cast<double>(layout.num_points) * 2.0);
  std::vector<amplitude_t> amps(std::size_t{1} << layout.register_qubits());
  for (std::size_t i = 0; i < layout.num_points; ++i) {
    for (std::size_t j = 0; j < x.dimension(); ++j) {
      const double a = w * x[j] / x.norm();
      amps[i | (j << ni)] = a;
      amps[i | (j << ni) | (std::size_t{1} << (ni + n))] = -a;
    }
  }
  return StateVector::from_amplitudes(std::move(amps));
}

/// (1/sqrt 2)(|X>|0>_a + |psi_x>|1>_a)
inline StateVector build_joint_state(const TrainingSet& ts, const DataVector& x) {
  const auto layout = EncodingLayout::for_set(ts);
  const auto training = build_training_state(ts, layout);
  const auto query = build_query_state(x, layout);
  const std::size_t half = training.dimension();
  std::vector<amplitude_t> amps(2 * half);
  const double r = std::numbers::sqrt2 / 2.0;
  for (std::size_t k = 0; k < half; ++k) {
    amps[k] = r * training[k];
    amps[half + k] = r * query[k];
  }
  return StateVector::from_amplitudes(std::move(amps));
}

inline bool has_negative_entries(const TrainingSet& ts, const DataVector& x) {
  if (x.has_negative_entry()) return true;
  for (const auto& p : ts) {
    if (p.features.has_negative_entry()) return true;
  }
  return false;
}

inline constexpr const char* kNegativeEntryWarning =
    "negative feature entries: K-NN ranks by squared overlap and cannot tell x_i from -x_i";

/// (1/sqrt N) sum_i |i>|x_i>|x>|0>_a. Pushes a warning when any entry is negative.
inline StateVector build_knn_state(const TrainingSet& ts, const DataVector& x,
                                   std::vector<std::string>* warnings = nullptr) {
  const auto layout = EncodingLayout::for_set(ts);
  detail::check_dimension(layout, x);
  if (warnings && has_negative_entries(ts, x)) warnings->emplace_back(kNegativeEntryWarning);
  const std::size_t ni = layout.index_qubits;
  const std::size_t n = layout.data_qubits;
  const double w = 1.0 / std::sqrt(static_cast<double>(ts.size()));
  std::vector<amplitude_t> amps(std::size_t{1} << layout.knn_qubits());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& xi = ts[i].features;
    for (std::size_t j = 0; j < xi.dimension(); ++j) {
      const double aj = w * xi[j] / xi.norm();
      if (aj == 0.0) continue;
      for (std::size_t k = 0; k < x.dimension(); ++k) {
        amps[i | (j << ni) | (k << (ni + n))] = aj * x[k] / x.norm();
      }
    }
  }
  return StateVector::from_amplitudes(std::move(amps));
}

}  // namespace qcos
