#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "optwin/oracle.hpp"
#include "optwin/spectral.hpp"

using namespace optwin;

namespace {

std::vector<double> as_vector(const Autocorrelation& r) { return {r.values().begin(), r.values().end()}; }

void expect_close(const Autocorrelation& got, const Autocorrelation& want) {
  ASSERT_EQ(got.size(), want.size());
  const double r0 = want.zero_lag();
  for (std::size_t t = 0; t < got.size(); ++t) {
    const double tol = r0 > 0 ? 1e-9 * r0 : 1e-12;
    EXPECT_NEAR(got.values()[t], want.values()[t], tol) << "lag " << t;
  }
}

}  // namespace

TEST(AutocorrNaive, WorkedValues) {
  EXPECT_EQ(as_vector(autocorr_naive(Signal({1, 1, 1}))), (std::vector<double>{3, 3, 3}));
  EXPECT_EQ(as_vector(autocorr_naive(Signal({1, 0, 0}))), (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(as_vector(autocorr_naive(Signal({1, 2, 3, 4, 5}))), (std::vector<double>{55, 45, 40, 40, 45}));
}

TEST(AutocorrNaive, SymmetryIsExact) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Signal y = oracle::random_signal(3 + seed % 40, seed);
    const auto r = autocorr_naive(y);
    const auto n = static_cast<std::int64_t>(r.size());
    for (std::int64_t t = 1; t < n; ++t) EXPECT_EQ(r.at(t), r.at(n - t));
  }
}

TEST(AutocorrNaive, LagLookupWrapsBothWays) {
  const auto r = autocorr_naive(Signal({1, 2, 3, 4, 5}));
  EXPECT_EQ(r.at(-1), 45);
  EXPECT_EQ(r.at(5), 55);
  EXPECT_EQ(r.at(-7), r.at(2));
}

TEST(AutocorrFft, WorkedValues) {
  expect_close(autocorr_fft(Signal({1, 1, 1})), Autocorrelation({3, 3, 3}));
  expect_close(autocorr_fft(Signal({1, 2, 3, 4, 5})), Autocorrelation({55, 45, 40, 40, 45}));
  const auto zero = autocorr_fft(Signal(std::vector<double>(8, 0.0)));
  for (double v : zero.values()) EXPECT_EQ(v, 0.0);
}

// 500 random signals, odd/even and prime lengths up to 257.
TEST(AutocorrFft, MatchesNaive) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::size_t n = 3 + seed % 255;
    const Signal y = oracle::random_signal(n, seed * 7919 + 1);
    expect_close(autocorr_fft(y), autocorr_naive(y));
  }
}

TEST(AutocorrFft, SymmetryWithinTolerance) {
  const Signal y = oracle::random_signal(101, 5);
  const auto r = autocorr_fft(y);
  const auto n = static_cast<std::int64_t>(r.size());
  for (std::int64_t t = 1; t < n; ++t) EXPECT_NEAR(r.at(t), r.at(n - t), 1e-9 * r.zero_lag());
}

TEST(AutocorrFft, ConcurrentCallsAgree) {
  const Signal y = oracle::random_signal(211, 17);
  const auto expected = as_vector(autocorr_fft(y));
  std::vector<std::vector<double>> results(8);
  std::vector<std::thread> threads;
  for (auto& slot : results) {
    threads.emplace_back([&] {
      for (int i = 0; i < 20; ++i) slot = as_vector(autocorr_fft(y));
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& r : results) EXPECT_EQ(r, expected);
}

// PSD of R: v^T R v >= -1e-9 r_0 |v|^2 for random v.
TEST(Autocorrelation, QuadraticFormIsPositiveSemidefinite) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Signal y = oracle::random_signal(3 + seed % 60, seed + 1000);
    const auto r = autocorr_naive(y);
    const auto n = static_cast<std::int64_t>(y.size());
    std::vector<double> v(y.size());
    double norm2 = 0.0;
    for (auto& x : v) {
      x = normal(rng);
      norm2 += x * x;
    }
    double form = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
      for (std::int64_t k = 0; k < n; ++k) form += v[j] * v[k] * r.at(k - j);
    }
    EXPECT_GE(form, -1e-9 * r.zero_lag() * norm2);
  }
}
