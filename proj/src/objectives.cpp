#include "optwin/objectives.hpp"

#include <cmath>
#include <cstdint>

#include "optwin/errors.hpp"
#include "optwin/smoothers.hpp"
#include "order_statistics.hpp"

namespace optwin {

namespace {

double weighted_mean(std::span<const WeightedSample> samples) {
  double acc = 0.0;
  for (const auto& s : samples) acc += s.weight * s.value;
  return acc;
}

void require_fits(std::size_t window_length, std::size_t signal_length) {
  if (window_length > signal_length) {
    throw InvalidArgument("window length " + std::to_string(window_length) + " exceeds signal length " +
                          std::to_string(signal_length));
  }
}

}  // namespace

LossKind::LossKind(Tag tag, std::string name, PointLoss loss, Minimizer minimizer)
    : tag_(tag), name_(std::move(name)), loss_(std::move(loss)), minimizer_(std::move(minimizer)) {}

LossKind LossKind::squared() {
  return LossKind(
      Tag::Squared, "squared", [](double y, double x) { return (y - x) * (y - x); }, weighted_mean);
}

LossKind LossKind::absolute() {
  return LossKind(
      Tag::Absolute, "absolute", [](double y, double x) { return std::abs(y - x); },
      [](std::span<const WeightedSample> s) { return weighted_median(s); });
}

LossKind LossKind::custom(std::string name, PointLoss loss, Minimizer minimizer) {
  if (!loss) throw InvalidArgument("custom loss '" + name + "' has no point loss");
  if (!minimizer) {
    throw InvalidArgument("custom loss '" + name + "' needs an exact minimizer; none was supplied");
  }
  return LossKind(Tag::Custom, std::move(name), std::move(loss), std::move(minimizer));
}

LossKind parse_loss(const std::string& name) {
  if (name == "squared") return LossKind::squared();
  if (name == "absolute") return LossKind::absolute();
  throw InvalidArgument("unknown loss '" + name + "' (expected squared or absolute)");
}

double quad_form(const WeightWindow& w, const Autocorrelation& r) {
  require_fits(w.length(), r.size());
  const auto half = static_cast<std::int64_t>(w.half_width());
  double acc = 0.0;
  for (std::int64_t k = -half; k <= half; ++k) {
    const double wk = w.at(k);
    if (wk == 0.0) continue;
    double row = 0.0;
    for (std::int64_t m = -half; m <= half; ++m) row += w.at(m) * r.at(m - k);
    acc += wk * row;
  }
  return acc;
}

double objective_mean(const WeightWindow& w, const Autocorrelation& r) {
  return r.zero_lag() - quad_form(w, r);
}

double objective_mean_direct(const WeightWindow& w, const Signal& y) {
  require_fits(w.length(), y.size());
  const auto half = static_cast<std::int64_t>(w.half_width());
  double total = 0.0;
  for (std::size_t n = 0; n < y.size(); ++n) {
    const auto base = static_cast<std::int64_t>(n);
    double x = 0.0;
    for (std::int64_t k = -half; k <= half; ++k) x += w.at(k) * y.cyclic_get(base + k);
    double term = 0.0;
    for (std::int64_t k = -half; k <= half; ++k) {
      const double d = y.cyclic_get(base + k) - x;
      term += w.at(k) * d * d;
    }
    total += term;
  }
  return total;
}

VertexObjectiveSeries vertex_objective_series(const Autocorrelation& r, const WsymmParams& params) {
  validate(params);
  const std::size_t big_k = params.half_width;
  require_fits(2 * big_k + 1, r.size());
  const double eps = params.epsilon;
  const double r0 = r.zero_lag();

  VertexObjectiveSeries series{eps, {}};
  series.entries.reserve(big_k);

  // L = 3 start: T_3 = 3 r_0 + 4 r_1 + 2 r_2, P_2 = r_0 + 2 r_1 + 2 r_2,
  // P_1 = r_0 + 2 r_1.
  double tri = 3.0 * r0 + 4.0 * r.at(1) + 2.0 * r.at(2);
  double band = r0 + 2.0 * r.at(1) + 2.0 * r.at(2);  // P_{L-1}
  double center_row = r0 + 2.0 * r.at(1);            // P_i
  for (std::size_t i = 1; i <= big_k; ++i) {
    const auto len = static_cast<std::int64_t>(2 * i + 1);
    const double a = 1.0 / (static_cast<double>(len) + eps);
    const double q = a * a * (tri + 2.0 * eps * center_row + eps * eps * r0);
    series.entries.push_back({i, static_cast<std::size_t>(len), q, r0 - q});
    if (i == big_k) break;
    tri += 2.0 * band + 4.0 * r.at(len) + 2.0 * r.at(len + 1);
    band += 2.0 * r.at(len) + 2.0 * r.at(len + 1);
    center_row += 2.0 * r.at(static_cast<std::int64_t>(i) + 1);
  }
  return series;
}

double objective_abs(const WeightWindow& w, const Signal& y) {
  require_fits(w.length(), y.size());
  const auto half = static_cast<std::int64_t>(w.half_width());
  std::vector<WeightedSample> window;
  window.reserve(w.length());
  double total = 0.0;
  for (std::size_t n = 0; n < y.size(); ++n) {
    const auto base = static_cast<std::int64_t>(n);
    window.clear();
    for (std::int64_t k = -half; k <= half; ++k) window.push_back({y.cyclic_get(base + k), w.at(k)});
    const double x = weighted_median(window);
    double term = 0.0;
    for (const auto& s : window) term += s.weight * std::abs(s.value - x);
    total += term;
  }
  return total;
}

double objective_abs_uniform(const Signal& y, std::size_t half_width) {
  const std::size_t n = y.size();
  const std::size_t length = 2 * half_width + 1;
  require_fits(length, n);
  if (half_width < 1) throw InvalidArgument("half-width must be >= 1");

  detail::RankedWindow window(y.values());
  const auto h = static_cast<std::int64_t>(half_width);
  const auto sn = static_cast<std::int64_t>(n);
  auto wrap = [sn](std::int64_t i) {
    const auto m = i % sn;
    return static_cast<std::size_t>(m < 0 ? m + sn : m);
  };
  for (std::int64_t k = -h; k <= h; ++k) window.insert(wrap(k));

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      const auto c = static_cast<std::int64_t>(i);
      window.erase(wrap(c - 1 - h));
      window.insert(wrap(c + h));
    }
    const std::size_t mid = window.kth(half_width);
    const double median = window.value_at_rank(mid);
    const double below_sum = window.sum_below(mid);
    const double all_sum = window.sum_below(n);
    const double above_sum = all_sum - below_sum - median;
    // half_width elements sit on each side of the median rank.
    const double spread = (static_cast<double>(half_width) * median - below_sum) +
                          (above_sum - static_cast<double>(half_width) * median);
    total += spread;
  }
  return total / static_cast<double>(length);
}

double objective_general(const WeightWindow& w, const Signal& y, const LossKind& loss) {
  if (loss.tag() == LossKind::Tag::Absolute) return objective_abs(w, y);
  require_fits(w.length(), y.size());
  const auto half = static_cast<std::int64_t>(w.half_width());
  std::vector<WeightedSample> window;
  window.reserve(w.length());
  double total = 0.0;
  for (std::size_t n = 0; n < y.size(); ++n) {
    const auto base = static_cast<std::int64_t>(n);
    window.clear();
    for (std::int64_t k = -half; k <= half; ++k) window.push_back({y.cyclic_get(base + k), w.at(k)});
    const double x = loss.minimizer()(window);
    if (!std::isfinite(x)) {
      throw ContractViolation("loss '" + loss.name() + "' minimizer returned a non-finite value at n=" +
                              std::to_string(n));
    }
    double term = 0.0;
    for (const auto& s : window) term += s.weight * loss.loss()(s.value, x);
    total += term;
  }
  return total;
}

}  // namespace optwin
