#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "qcos/encoding.hpp"
#include "qcos/oracle.hpp"
#include "qcos/random_instances.hpp"

using namespace qcos;

TEST(DataVector, RejectsDegenerateInput) {
  EXPECT_THROW(DataVector(std::vector<double>{}), DataError);
  EXPECT_THROW((DataVector{0.0, 0.0}), DataError);
  EXPECT_THROW((DataVector{1.0, std::numeric_limits<double>::quiet_NaN()}), DataError);
  EXPECT_THROW((DataVector{std::numeric_limits<double>::infinity()}), DataError);
  DataVector v{3.0, -4.0};
  EXPECT_DOUBLE_EQ(v.norm(), 5.0);
  EXPECT_TRUE(v.has_negative_entry());
}

TEST(TrainingSet, Validation) {
  EXPECT_THROW(TrainingSet(std::vector<LabeledPoint>{}), DataError);
  EXPECT_THROW(TrainingSet({{DataVector{1.0, 0.0}, 0}}), DataError);
  EXPECT_THROW(TrainingSet({{DataVector{1.0, 0.0}, 1}, {DataVector{1.0}, -1}}), DimensionMismatch);

  TrainingSet ts({{DataVector{1.0, 0.0}, 1}, {DataVector{0.0, 1.0}, -1}, {DataVector{1.0, 1.0}, 1}});
  EXPECT_EQ(ts[1].label_bit(), 1);
  EXPECT_EQ(ts[0].label_bit(), 0);
  const std::size_t pick[] = {2, 0};
  auto sub = ts.subset(pick);
  ASSERT_EQ(sub.size(), 2u);
  EXPECT_DOUBLE_EQ(sub[0].features[1], 1.0);
  const std::size_t bad[] = {3};
  EXPECT_THROW(ts.subset(bad), DataError);
}

TEST(Layout, RegisterWidthsAndPadding) {
  auto l = EncodingLayout::for_shape(3, 5);
  EXPECT_EQ(l.index_qubits, 2u);
  EXPECT_EQ(l.data_qubits, 3u);
  EXPECT_EQ(l.padded_points(), 4u);
  EXPECT_EQ(l.padded_dimension(), 8u);
  EXPECT_EQ(l.index_register(), (QubitList{0, 1}));
  EXPECT_EQ(l.data_register(), (QubitList{2, 3, 4}));
  EXPECT_EQ(l.label_qubit(), 5u);
  EXPECT_EQ(l.ancilla_a(), 6u);
  EXPECT_EQ(l.joint_qubits(), 7u);
  EXPECT_EQ(l.knn_query_register(), (QubitList{5, 6, 7}));
  EXPECT_EQ(l.knn_ancilla(), 8u);

  auto single = EncodingLayout::for_shape(1, 1);
  EXPECT_EQ(single.index_qubits, 0u);
  EXPECT_EQ(single.data_qubits, 1u);
  EXPECT_THROW(EncodingLayout::for_shape(0, 2), DataError);
}

TEST(AmplitudeEncoding, NormalizesAndPads) {
  auto s = amplitude_encode(DataVector{3.0, 0.0, 4.0});
  ASSERT_EQ(s.num_qubits(), 2u);
  EXPECT_NEAR(s[0].real(), 0.6, 1e-15);
  EXPECT_NEAR(s[2].real(), 0.8, 1e-15);
  EXPECT_EQ(s[3], amplitude_t(0.0));
  EXPECT_EQ(amplitude_encode(DataVector{2.0}).num_qubits(), 1u);
  EXPECT_THROW(amplitude_encode(DataVector{1.0, 1.0, 1.0}, 1), DimensionMismatch);
}

TEST(AmplitudeEncodingProperty, OverlapIsCosine) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 9;
    const auto a = gen::random_vector(d, rng);
    const auto b = gen::random_vector(d, rng);
    const double overlap = inner_product(amplitude_encode(a), amplitude_encode(b)).real();
    ASSERT_NEAR(overlap, oracle::cosine_similarity(a, b), 1e-12);
  }
}

TEST(JointState, DemoInstanceAmplitudes) {
  TrainingSet ts({{DataVector{1.0, 0.0}, 1}, {DataVector{0.718, 0.696}, -1}});
  DataVector x{0.884, 0.468};
  const auto layout = EncodingLayout::for_set(ts);
  const auto train = build_training_state(ts, layout);
  const double r = std::numbers::sqrt2 / 2.0;
  // |i=0>|x_0=(1,0)>|b=0> and |i=1>|x_1>|b=1>; index is qubit 0, data qubit 1, label qubit 2
  EXPECT_NEAR(train[0b000].real(), r, 1e-15);
  EXPECT_NEAR(train[0b101].real(), r * 0.7180215409693484, 1e-12);
  EXPECT_NEAR(train[0b111].real(), r * 0.696020880939647, 1e-12);

  const auto query = build_query_state(x, layout);
  EXPECT_NEAR(query[0b000].real(), 0.5 * 0.8837879163470619, 1e-12);
  EXPECT_NEAR(query[0b100].real(), -0.5 * 0.8837879163470619, 1e-12);

  const auto joint = build_joint_state(ts, x);
  EXPECT_EQ(joint.num_qubits(), 4u);
  EXPECT_NEAR(joint.probability_of(layout.ancilla_a(), 1), 0.5, 1e-15);
}

TEST(JointStateProperty, OverlapMatchesWeightedCosines) {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t sizes[] = {1, 2, 3, 4, 8};
    auto inst = gen::random_instance(sizes[trial % 5], 1 + trial % 7, rng);
    const auto layout = EncodingLayout::for_set(inst.training);
    const auto overlap = inner_product(build_training_state(inst.training, layout),
                                       build_query_state(inst.query, layout));
    const double expect = oracle::classical_classify(inst.training, inst.query).score /
                          (static_cast<double>(inst.training.size()) * std::numbers::sqrt2);
    ASSERT_NEAR(overlap.real(), expect, 1e-12);
    ASSERT_NEAR(overlap.imag(), 0.0, 1e-15);
  }
}

TEST(JointState, DimensionMismatch) {
  TrainingSet ts({{DataVector{1.0, 0.0}, 1}});
  EXPECT_THROW(build_joint_state(ts, DataVector{1.0, 0.0, 0.0}), DimensionMismatch);
  EXPECT_THROW(build_knn_state(ts, DataVector{1.0}), DimensionMismatch);
}

TEST(KnnState, WarnsOnNegativeEntries) {
  TrainingSet ts({{DataVector{1.0, -1.0}, 1}, {DataVector{1.0, 1.0}, -1}});
  std::vector<std::string> warnings;
  const auto s = build_knn_state(ts, DataVector{1.0, 0.0}, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_EQ(warnings[0], kNegativeEntryWarning);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);

  warnings.clear();
  build_knn_state(ts.subset(std::vector<std::size_t>{1}), DataVector{1.0, 0.0}, &warnings);
  EXPECT_TRUE(warnings.empty());
}
