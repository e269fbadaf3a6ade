#pragma once

#include <span>
#include <string>
#include <vector>

#include "optwin/objectives.hpp"
#include "optwin/signal.hpp"
#include "optwin/window.hpp"

namespace optwin {

struct SmoothedSignal {
  std::vector<double> values;
  std::string window;  // e.g. "uniform:5" or "weights:K=3"
  std::string loss;    // "squared" / "absolute"
};

// x_n = sum_k w_k y_{n+k}, cyclic, O(NK).
SmoothedSignal weighted_mean_filter(const Signal& y, const WeightWindow& w);

// Lower weighted median: sorts by value (stable, so equal values keep input
// order) and returns the first value whose cumulative weight reaches half the
// total. Equivalently the smallest ordered index i with weight strictly below
// <= 1/2 and weight strictly above <= 1/2.
// Throws InvalidArgument on empty input.
double weighted_median(std::span<const WeightedSample> samples);

// x_n = weighted_median({(y_{n+k}, w_k)}). Uniform windows take the sliding
// order-statistics path; both paths return identical values.
SmoothedSignal weighted_median_filter(const Signal& y, const WeightWindow& w);

// Always the per-window sort path.
std::vector<double> weighted_median_filter_naive(const Signal& y, const WeightWindow& w);

// Uniform window of half-width i via the sliding structure, O(N log N).
std::vector<double> moving_median_uniform(const Signal& y, std::size_t half_width);

// True when w is an unweighted window over |k| <= i for some i (zeros outside).
bool is_uniform_window(const WeightWindow& w, std::size_t* half_width = nullptr);

}  // namespace optwin
