#include "optwin/smoothers.hpp"

#include <algorithm>
#include <cstdint>

#include "optwin/errors.hpp"
#include "order_statistics.hpp"

namespace optwin {

namespace {

void require_fits(const Signal& y, const WeightWindow& w) {
  if (w.length() > y.size()) {
    throw InvalidArgument("window length " + std::to_string(w.length()) + " exceeds signal length " +
                          std::to_string(y.size()));
  }
}

std::string describe(const WeightWindow& w) {
  std::size_t half = 0;
  if (is_uniform_window(w, &half)) return "uniform:" + std::to_string(2 * half + 1);
  return "weights:K=" + std::to_string(w.half_width());
}

}  // namespace

SmoothedSignal weighted_mean_filter(const Signal& y, const WeightWindow& w) {
  require_fits(y, w);
  const auto half = static_cast<std::int64_t>(w.half_width());
  std::vector<double> x(y.size());
  for (std::size_t n = 0; n < y.size(); ++n) {
    double acc = 0.0;
    for (std::int64_t k = -half; k <= half; ++k) {
      acc += w.at(k) * y.cyclic_get(static_cast<std::int64_t>(n) + k);
    }
    x[n] = acc;
  }
  return {std::move(x), describe(w), "squared"};
}

double weighted_median(std::span<const WeightedSample> samples) {
  if (samples.empty()) throw InvalidArgument("weighted median of an empty set");
  std::vector<WeightedSample> sorted(samples.begin(), samples.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const WeightedSample& a, const WeightedSample& b) { return a.value < b.value; });
  double total = 0.0;
  for (const auto& s : sorted) total += s.weight;
  // cumulative >= total/2 is the same as "weight above <= 1/2"; the first such
  // index also has weight below < 1/2.
  const double half = 0.5 * total;
  const double slack = kSimplexTolerance * total;
  double cumulative = 0.0;
  for (const auto& s : sorted) {
    cumulative += s.weight;
    if (cumulative >= half - slack) return s.value;
  }
  return sorted.back().value;
}

std::vector<double> weighted_median_filter_naive(const Signal& y, const WeightWindow& w) {
  require_fits(y, w);
  const auto half = static_cast<std::int64_t>(w.half_width());
  std::vector<WeightedSample> window;
  window.reserve(w.length());
  std::vector<double> x(y.size());
  for (std::size_t n = 0; n < y.size(); ++n) {
    window.clear();
    for (std::int64_t k = -half; k <= half; ++k) {
      window.push_back({y.cyclic_get(static_cast<std::int64_t>(n) + k), w.at(k)});
    }
    x[n] = weighted_median(window);
  }
  return x;
}

std::vector<double> moving_median_uniform(const Signal& y, std::size_t half_width) {
  const std::size_t n = y.size();
  const std::size_t length = 2 * half_width + 1;
  if (length > n) {
    throw InvalidArgument("window length " + std::to_string(length) + " exceeds signal length " +
                          std::to_string(n));
  }
  // Lower median of L samples. For odd L this is the middle element; with the
  // stable (value, index) order equal values resolve identically to the sort
  // path.
  detail::RankedWindow window(y.values());
  const auto h = static_cast<std::int64_t>(half_width);
  auto wrap = [n](std::int64_t i) {
    auto m = i % static_cast<std::int64_t>(n);
    return static_cast<std::size_t>(m < 0 ? m + static_cast<std::int64_t>(n) : m);
  };
  for (std::int64_t k = -h; k <= h; ++k) window.insert(wrap(k));
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      const auto c = static_cast<std::int64_t>(i);
      window.erase(wrap(c - 1 - h));
      window.insert(wrap(c + h));
    }
    x[i] = window.value_at_rank(window.kth(half_width));
  }
  return x;
}

bool is_uniform_window(const WeightWindow& w, std::size_t* half_width) {
  const auto half = static_cast<std::int64_t>(w.half_width());
  const double center = w.at(0);
  std::int64_t support = 0;
  while (support < half && w.at(support + 1) == center && w.at(-support - 1) == center) ++support;
  if (support == 0) return false;
  for (std::int64_t k = support + 1; k <= half; ++k) {
    if (w.at(k) != 0.0 || w.at(-k) != 0.0) return false;
  }
  if (half_width) *half_width = static_cast<std::size_t>(support);
  return true;
}

SmoothedSignal weighted_median_filter(const Signal& y, const WeightWindow& w) {
  require_fits(y, w);
  std::size_t half = 0;
  std::vector<double> x =
      is_uniform_window(w, &half) ? moving_median_uniform(y, half) : weighted_median_filter_naive(y, w);
  return {std::move(x), describe(w), "absolute"};
}

}  // namespace optwin
