#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "optwin/errors.hpp"
#include "optwin/window.hpp"

using namespace optwin;

namespace {

std::vector<double> weights(const WeightWindow& w) { return {w.weights().begin(), w.weights().end()}; }

void expect_weights(const WeightWindow& w, const std::vector<double>& want, double tol = 1e-15) {
  ASSERT_EQ(w.length(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(w.weights()[i], want[i], tol) << "index " << i;
}

}  // namespace

TEST(WeightWindow, Validation) {
  EXPECT_THROW(WeightWindow({0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(WeightWindow({1.0}), InvalidArgument);
  EXPECT_THROW(WeightWindow({0.5, 0.6, -0.1}), InvalidArgument);
  EXPECT_THROW(WeightWindow({0.3, 0.3, 0.3}), InvalidArgument);
  EXPECT_NO_THROW(WeightWindow({0.0, 1.0, 0.0}));
}

TEST(WeightWindow, AtReadsZeroOutsideSupport) {
  const WeightWindow w({0.25, 0.5, 0.25});
  EXPECT_EQ(w.at(-1), 0.25);
  EXPECT_EQ(w.at(0), 0.5);
  EXPECT_EQ(w.at(2), 0.0);
  EXPECT_EQ(w.at(-5), 0.0);
}

TEST(ExpandVertex, WorkedValues) {
  expect_weights(expand_vertex({1, {0.0, 2}}), {0, 1.0 / 3, 1.0 / 3, 1.0 / 3, 0});
  expect_weights(expand_vertex({1, {1.0, 1}}), {0.25, 0.5, 0.25});
  expect_weights(expand_vertex({3, {0.0, 3}}), std::vector<double>(7, 1.0 / 7));
}

TEST(ExpandVertex, Errors) {
  EXPECT_THROW(expand_vertex({3, {0.0, 2}}), InvalidArgument);
  EXPECT_THROW(expand_vertex({0, {0.0, 2}}), InvalidArgument);
  EXPECT_THROW(expand_vertex({1, {-0.5, 2}}), InvalidArgument);
}

TEST(ExpandVertex, SumsToOne) {
  for (double eps : {0.0, 0.1, 1.0, 7.5}) {
    for (std::size_t i = 1; i <= 40; ++i) {
      const auto w = expand_vertex({i, {eps, 40}});
      EXPECT_NEAR(std::accumulate(w.weights().begin(), w.weights().end(), 0.0), 1.0, 1e-12);
      EXPECT_TRUE(is_tapered(w, eps).ok);
    }
  }
}

TEST(MakeUniform, Cases) {
  expect_weights(make_uniform(3, 1), {1.0 / 3, 1.0 / 3, 1.0 / 3});
  expect_weights(make_uniform(5, 2), {0.2, 0.2, 0.2, 0.2, 0.2});
  EXPECT_EQ(make_uniform(5, 4), expand_vertex({2, {0.0, 4}}));
  EXPECT_THROW(make_uniform(4, 2), InvalidArgument);
  EXPECT_THROW(make_uniform(7, 2), InvalidArgument);
  EXPECT_THROW(make_uniform(1, 2), InvalidArgument);
}

TEST(IsTapered, Cases) {
  EXPECT_TRUE(is_tapered(make_uniform(3, 1), 0.0).ok);

  const auto peaked = is_tapered(WeightWindow({0.2, 0.6, 0.2}), 0.0);
  EXPECT_FALSE(peaked.ok);
  EXPECT_EQ(peaked.constraint, "center");

  const auto wide = is_tapered(WeightWindow({0.1, 0.15, 0.5, 0.15, 0.1}), 0.0);
  EXPECT_FALSE(wide.ok);
  EXPECT_EQ(wide.constraint, "center");
  // w0 = (1 + eps) w1 holds for eps = 7/3 only.
  EXPECT_TRUE(is_tapered(WeightWindow({0.1, 0.15, 0.5, 0.15, 0.1}), 7.0 / 3.0).ok);

  const auto skew = is_tapered(WeightWindow({0.2, 0.3, 0.3, 0.1, 0.1}), 0.0);
  EXPECT_FALSE(skew.ok);
  EXPECT_EQ(skew.constraint, "symmetry");

  const auto rising = is_tapered(WeightWindow({0.15, 0.1, 0.5, 0.1, 0.15}), 4.0);
  EXPECT_FALSE(rising.ok);
  EXPECT_EQ(rising.constraint, "monotonicity");
}

TEST(RandomTapered, SingleVertexPolytope) {
  for (double eps : {0.0, 0.5, 2.0}) {
    const auto w = random_tapered({eps, 1}, 42);
    expect_weights(w, {1.0 / (3 + eps), (1 + eps) / (3 + eps), 1.0 / (3 + eps)});
  }
}

TEST(RandomTapered, AlwaysTaperedAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const double eps = (seed % 4) * 0.5;
    const WsymmParams params{eps, 1 + seed % 30};
    const auto w = random_tapered(params, seed);
    EXPECT_TRUE(is_tapered(w, eps).ok) << is_tapered(w, eps).detail;
    EXPECT_EQ(w, random_tapered(params, seed));
  }
}

TEST(CombineVertices, HandComputedMix) {
  const std::vector<double> p{0.5, 0.5};
  // 0.5 * [0, 1/3, 1/3, 1/3, 0] + 0.5 * [1/5 x5]
  expect_weights(combine_vertices(p, {0.0, 2}), {0.1, 4.0 / 15, 4.0 / 15, 4.0 / 15, 0.1});
}

// Recovering p from w = sum p_i v_i gives p back.
TEST(DecomposeTapered, RoundTrip) {
  std::mt19937_64 rng(11);
  std::exponential_distribution<double> expo;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t half = 1 + rng() % 25;
    const double eps = (rng() % 5) * 0.75;
    std::vector<double> p(half);
    double total = 0.0;
    for (auto& v : p) total += (v = expo(rng));
    for (auto& v : p) v /= total;
    const auto back = decompose_tapered(combine_vertices(p, {eps, half}), eps);
    ASSERT_EQ(back.size(), half);
    for (std::size_t i = 0; i < half; ++i) EXPECT_NEAR(back[i], p[i], 1e-9);
  }
}

TEST(ShiftMirror, Cases) {
  expect_weights(mirror_window(WeightWindow({0.5, 0.3, 0.2})), {0.2, 0.3, 0.5});
  expect_weights(shift_window(WeightWindow({1, 0, 0}), 1), {0, 1, 0});
  expect_weights(shift_window(WeightWindow({1, 0, 0}), -1), {0, 0, 1});
  expect_weights(shift_window(WeightWindow({0.5, 0.3, 0.2}), 3), {0.5, 0.3, 0.2});
  const WeightWindow w({0.1, 0.2, 0.3, 0.15, 0.25});
  EXPECT_EQ(mirror_window(mirror_window(w)), w);
  EXPECT_EQ(shift_window(shift_window(w, 2), -2), w);
}

TEST(LoadWeights, ValidatesAndNormalizes) {
  std::istringstream ok("0.25\n0.5\n0.25\n");
  expect_weights(load_weights(ok), {0.25, 0.5, 0.25});

  std::istringstream near_one("0.3333333333\n0.3333333334\n0.3333333333\n");
  const auto w = load_weights(near_one);
  EXPECT_NEAR(std::accumulate(w.weights().begin(), w.weights().end(), 0.0), 1.0, 1e-12);

  std::istringstream even("0.5\n0.5\n");
  EXPECT_THROW(load_weights(even), InvalidArgument);
  std::istringstream off("0.2\n0.2\n0.2\n");
  EXPECT_THROW(load_weights(off), InvalidArgument);
  std::istringstream negative("-0.1\n0.6\n0.5\n");
  EXPECT_THROW(load_weights(negative), InvalidArgument);
}
