#include <gtest/gtest.h>

#include "qcos/example.hpp"
#include "qcos/oracle.hpp"

using namespace qcos;

TEST(Oracle, CosineSimilarity) {
  EXPECT_DOUBLE_EQ(oracle::cosine_similarity(DataVector{1.0, 0.0}, DataVector{5.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(oracle::cosine_similarity(DataVector{1.0, 0.0}, DataVector{0.0, 2.0}), 0.0);
  EXPECT_DOUBLE_EQ(oracle::cosine_similarity(DataVector{1.0, 1.0}, DataVector{-1.0, -1.0}), -1.0);
  EXPECT_THROW(oracle::cosine_similarity(DataVector{1.0}, DataVector{1.0, 0.0}), DimensionMismatch);
}

TEST(Oracle, DemoInstanceScore) {
  const auto r = oracle::classical_classify(example::training_set(), example::query());
  ASSERT_EQ(r.per_point_cosines.size(), 2u);
  EXPECT_NEAR(r.per_point_cosines[0], 0.8837879163470619, 1e-12);
  EXPECT_NEAR(r.per_point_cosines[1], 0.9602383849325055, 1e-12);
  EXPECT_NEAR(r.score, -0.07645046858544358, 1e-12);
  EXPECT_EQ(r.label, -1);
}

TEST(Oracle, ZeroScoreGivesPlusOne) {
  EXPECT_EQ(oracle::label_for_score(0.0), 1);
  EXPECT_EQ(oracle::label_for_score(-1e-300), -1);
  TrainingSet ts({{DataVector{1.0, 0.0}, 1}, {DataVector{1.0, 0.0}, -1}});
  EXPECT_EQ(oracle::classical_classify(ts, DataVector{0.3, 0.7}).label, 1);
}

TEST(Oracle, KnnStableOrder) {
  TrainingSet ts({{DataVector{0.0, 1.0}, 1},
                  {DataVector{1.0, 0.0}, -1},
                  {DataVector{2.0, 0.0}, 1},
                  {DataVector{1.0, 1.0}, -1}});
  const DataVector x{1.0, 0.0};
  EXPECT_EQ(oracle::classical_knn(ts, x, 1), (std::vector<std::size_t>{1}));
  EXPECT_EQ(oracle::classical_knn(ts, x, 3), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(oracle::classical_knn(ts, x, 4), (std::vector<std::size_t>{1, 2, 3, 0}));
  EXPECT_THROW(oracle::classical_knn(ts, x, 0), UsageError);
  EXPECT_THROW(oracle::classical_knn(ts, x, 5), UsageError);
}
