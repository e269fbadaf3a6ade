#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "optwin/errors.hpp"
#include "optwin/signal.hpp"

using namespace optwin;

TEST(Signal, RejectsShortOrNonFinite) {
  EXPECT_THROW(Signal({1.0, 2.0}), InvalidArgument);
  EXPECT_THROW(Signal({1.0, std::nan(""), 2.0}), InvalidArgument);
  EXPECT_THROW(Signal({1.0, std::numeric_limits<double>::infinity(), 2.0}), InvalidArgument);
  EXPECT_NO_THROW(Signal({1.0, 2.0, 3.0}));
}

TEST(Signal, CyclicGet) {
  const Signal s({1, 2, 3});
  // 1-based logical indices 4, 0 and 2 are 0-based 3, -1 and 1.
  EXPECT_EQ(s.cyclic_get(3), 1);
  EXPECT_EQ(s.cyclic_get(-1), 3);
  EXPECT_EQ(s.cyclic_get(1), 2);
}

TEST(Signal, CyclicGetIsPeriodic) {
  const Signal s({0.5, -1.25, 3, 7, 11});
  const auto n = static_cast<std::int64_t>(s.size());
  for (std::int64_t i = -12; i <= 12; ++i) {
    for (std::int64_t m = -3; m <= 3; ++m) EXPECT_EQ(s.cyclic_get(i + m * n), s.cyclic_get(i));
  }
}

TEST(Signal, MaxHalfWidthHandlesEvenLength) {
  EXPECT_EQ(Signal({1, 2, 3}).max_half_width(), 1u);
  EXPECT_EQ(Signal({1, 2, 3, 4}).max_half_width(), 1u);
  EXPECT_EQ(Signal({1, 2, 3, 4, 5, 6}).max_half_width(), 2u);
}

TEST(Generate, ConstantAndImpulse) {
  const Signal c = generate_signal(parse_noise_spec("constant:c=2"), 5, 123);
  for (double v : c.values()) EXPECT_EQ(v, 2.0);

  const Signal imp = generate_signal(parse_noise_spec("impulse:position=3,height=10"), 5, 0);
  const std::vector<double> expected{0, 0, 10, 0, 0};
  EXPECT_EQ(std::vector<double>(imp.values().begin(), imp.values().end()), expected);
}

TEST(Generate, DeterministicPerSeed) {
  const auto spec = parse_noise_spec("sine+gaussian:amplitude=1,period=16,sigma=0.1");
  const Signal a = generate_signal(spec, 64, 7);
  const Signal b = generate_signal(spec, 64, 7);
  const Signal c = generate_signal(spec, 64, 8);
  EXPECT_EQ(0, std::memcmp(a.values().data(), b.values().data(), 64 * sizeof(double)));
  EXPECT_NE(0, std::memcmp(a.values().data(), c.values().data(), 64 * sizeof(double)));
}

TEST(Generate, LaplaceNoiseIsCenteredAroundSine) {
  const Signal s = generate_signal(parse_noise_spec("sine+laplace:amplitude=0,period=8,b=1"), 20000, 3);
  double mean = 0.0, mean_abs = 0.0;
  for (double v : s.values()) {
    mean += v;
    mean_abs += std::abs(v);
  }
  mean /= 20000.0;
  mean_abs /= 20000.0;
  EXPECT_NEAR(mean, 0.0, 0.05);
  EXPECT_NEAR(mean_abs, 1.0, 0.05);  // E|X| = b for Laplace(0, b)
}

TEST(Generate, Errors) {
  EXPECT_THROW(generate_signal(noise::Constant{1.0}, 2, 0), InvalidArgument);
  EXPECT_THROW(generate_signal(noise::Impulse{6, 1.0}, 5, 0), InvalidArgument);
  EXPECT_THROW(parse_noise_spec("pink"), InvalidArgument);
  EXPECT_THROW(parse_noise_spec("constant:q=1"), InvalidArgument);
  EXPECT_THROW(parse_noise_spec("constant:c=abc"), InvalidArgument);
}

TEST(LoadSignal, Csv) {
  std::istringstream in("1\n2\n3\n");
  const Signal s = load_signal(in, SignalFormat::Csv);
  EXPECT_EQ(std::vector<double>(s.values().begin(), s.values().end()), (std::vector<double>{1, 2, 3}));
}

TEST(LoadSignal, CsvHeaderSkippedAndCrlf) {
  std::istringstream in("value\r\n1.5\r\n-2\r\n3e2\r\n\r\n");
  const Signal s = load_signal(in, SignalFormat::Csv);
  EXPECT_EQ(std::vector<double>(s.values().begin(), s.values().end()), (std::vector<double>{1.5, -2, 300}));
}

TEST(LoadSignal, CsvHeaderLeavesTooFewValues) {
  std::istringstream in("a\n1\n");
  EXPECT_THROW(load_signal(in, SignalFormat::Csv), InvalidArgument);
}

TEST(LoadSignal, CsvBadLineReportsLine) {
  std::istringstream in("1\n2\nx\n4\n");
  try {
    load_signal(in, SignalFormat::Csv);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(LoadSignal, CsvNonFinite) {
  std::istringstream in("1\ninf\n3\n");
  EXPECT_THROW(load_signal(in, SignalFormat::Csv), InvalidArgument);
}

TEST(LoadSignal, Json) {
  std::istringstream in("[1.5, 2.5, 3.5]");
  const Signal s = load_signal(in, SignalFormat::Json);
  EXPECT_EQ(std::vector<double>(s.values().begin(), s.values().end()), (std::vector<double>{1.5, 2.5, 3.5}));
}

TEST(LoadSignal, JsonErrors) {
  std::istringstream bad("[1, 2,");
  EXPECT_THROW(load_signal(bad, SignalFormat::Json), FormatError);
  std::istringstream nested("[1, [2], 3]");
  EXPECT_THROW(load_signal(nested, SignalFormat::Json), FormatError);
  std::istringstream object("{\"a\": 1}");
  EXPECT_THROW(load_signal(object, SignalFormat::Json), FormatError);
  std::istringstream short_array("[1, 2]");
  EXPECT_THROW(load_signal(short_array, SignalFormat::Json), InvalidArgument);
}

// Save/load is bit-exact for arbitrary doubles in both formats.
TEST(LoadSignal, RoundTripIsBitExact) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(3 + rng() % 40);
    for (auto& x : v) {
      double d;
      do {
        const std::uint64_t bits = rng();
        std::memcpy(&d, &bits, sizeof d);
      } while (!std::isfinite(d));
      x = d;
    }
    const Signal s(v);
    for (auto format : {SignalFormat::Csv, SignalFormat::Json}) {
      std::stringstream io;
      save_signal(io, s, format);
      const Signal back = load_signal(io, format);
      ASSERT_EQ(back.size(), s.size());
      EXPECT_EQ(0, std::memcmp(back.values().data(), s.values().data(), s.size() * sizeof(double)));
    }
  }
}
