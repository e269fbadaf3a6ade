#include "optwin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "optwin/errors.hpp"
#include "optwin/optimizer.hpp"
#include "optwin/spectral.hpp"
#include "random.hpp"

namespace optwin::oracle {

namespace {

constexpr double kSlack = 1e-9;

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return detail::splitmix64(seed ^ detail::splitmix64(trial + 1));
}

double energy(const Signal& y) {
  double s = 0.0;
  for (double v : y.values()) s += v * v;
  return s;
}

double abs_mass(const Signal& y) {
  double s = 0.0;
  for (double v : y.values()) s += std::abs(v);
  return s;
}

CheckReport make_report(std::string check, std::size_t trials, std::uint64_t seed) {
  CheckReport report;
  report.check = std::move(check);
  report.trials = trials;
  report.seed = seed;
  return report;
}

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

void require_trials(std::size_t trials) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
}

void require_sizes(const SizeRange& sizes) {
  if (sizes.min_length < 3 || sizes.max_length < sizes.min_length) {
    throw InvalidArgument("size range must satisfy 3 <= min <= max");
  }
}

// Tracks |deviation| / slack and keeps the first failing case.
struct Tally {
  CheckReport& report;

  // Returns false on violation.
  bool record(double deviation, double slack, const auto& make_counterexample) {
    report.max_deviation = std::max(report.max_deviation, deviation);
    const double ratio = slack > 0 ? deviation / slack : (deviation > 0 ? std::numeric_limits<double>::infinity() : 0.0);
    report.worst_ratio = std::max(report.worst_ratio, ratio);
    if (deviation > slack) {
      if (report.passed) report.counterexample = make_counterexample();
      report.passed = false;
      return false;
    }
    return true;
  }
};

double objective_for(const WeightWindow& w, const Signal& y, const Autocorrelation& r, const LossKind& loss) {
  switch (loss.tag()) {
    case LossKind::Tag::Squared:
      return objective_mean(w, r);
    case LossKind::Tag::Absolute:
      return objective_abs(w, y);
    case LossKind::Tag::Custom:
      break;
  }
  return objective_general(w, y, loss);
}

OptimizationReport best_vertex(const Signal& y, const LossKind& loss, double epsilon) {
  const OptimizeOptions options{epsilon, 0};
  switch (loss.tag()) {
    case LossKind::Tag::Squared:
      return best_mean_window(y, options);
    case LossKind::Tag::Absolute:
      return best_median_window(y, options);
    case LossKind::Tag::Custom:
      break;
  }
  return best_general_window(y, loss, options);
}

double scale_for(const Signal& y, const LossKind& loss) {
  return loss.tag() == LossKind::Tag::Squared ? std::max(1.0, energy(y)) : std::max(1.0, abs_mass(y));
}

// Shared body of the sampled and grid dominance checks.
class DominanceCheck {
 public:
  DominanceCheck(const Signal& y, const LossKind& loss, double epsilon, std::string name)
      : y_(y), loss_(loss), r_(autocorr_fft(y)), best_(best_vertex(y, loss, epsilon)), scale_(scale_for(y, loss)) {
    report_.check = std::move(name);
    report_.min_margin = std::numeric_limits<double>::infinity();
    report_.max_margin = -std::numeric_limits<double>::infinity();
  }

  void sample(const WeightWindow& w) {
    const double g = objective_for(w, y_, r_, loss_);
    const double margin = g - best_.best_objective;
    ++report_.trials;
    report_.min_margin = std::min(report_.min_margin, margin);
    report_.max_margin = std::max(report_.max_margin, margin);
    margin_sum_ += margin;
    Tally{report_}.record(std::max(0.0, -margin), kSlack * scale_, [&] {
      return Counterexample{to_vector(y_.values()), to_vector(w.weights()), {}, g, best_.best_objective,
                            "sampled window beats best vertex of length " + std::to_string(best_.best_length)};
    });
  }

  CheckReport finish() {
    report_.mean_margin = report_.trials ? margin_sum_ / static_cast<double>(report_.trials) : 0.0;
    return report_;
  }

 private:
  const Signal& y_;
  const LossKind& loss_;
  Autocorrelation r_;
  OptimizationReport best_;
  double scale_;
  double margin_sum_ = 0.0;
  CheckReport report_;
};

}  // namespace

Signal random_signal(std::size_t length, std::uint64_t seed) {
  detail::Rng rng(seed);
  std::vector<double> y(length);
  switch (rng.integer(0, 3)) {
    case 0: {  // Gaussian, random scale and offset
      const double sigma = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
      const double offset = rng.uniform(-5.0, 5.0);
      for (auto& v : y) v = offset + sigma * rng.normal();
      break;
    }
    case 1: {  // noisy sine with heavy-tailed noise
      const double period = rng.uniform(2.0, static_cast<double>(length));
      const double b = rng.uniform(0.01, 1.0);
      for (std::size_t n = 0; n < length; ++n) {
        y[n] = std::sin(2.0 * 3.141592653589793 * static_cast<double>(n) / period) + rng.laplace(b);
      }
      break;
    }
    case 2:  // small integers: many ties
      for (auto& v : y) v = static_cast<double>(static_cast<std::int64_t>(rng.integer(0, 18)) - 9);
      break;
    default:  // uniform
      for (auto& v : y) v = rng.uniform(-1.0, 1.0);
  }
  return Signal(std::move(y));
}

WeightWindow random_simplex_window(std::size_t half_width, std::uint64_t seed) {
  if (half_width < 1) throw InvalidArgument("half-width must be >= 1");
  detail::Rng rng(seed);
  std::vector<double> w(2 * half_width + 1);
  const bool sparse = rng.uniform() < 0.3;
  double total = 0.0;
  for (auto& v : w) {
    v = (sparse && rng.uniform() < 0.5) ? 0.0 : rng.exponential();
    total += v;
  }
  if (total == 0.0) {
    w[half_width] = 1.0;
    total = 1.0;
  }
  for (auto& v : w) v /= total;
  return WeightWindow(std::move(w));
}

CheckReport verify_reduction(std::size_t trials, std::uint64_t seed, SizeRange sizes, bool constant_signals) {
  require_trials(trials);
  require_sizes(sizes);
  CheckReport report = make_report("reduction", trials, seed);
  for (std::size_t t = 0; t < trials; ++t) {
    detail::Rng rng(trial_seed(seed, t));
    const auto n = static_cast<std::size_t>(rng.integer(sizes.min_length, sizes.max_length));
    const Signal y = constant_signals ? Signal(std::vector<double>(n, rng.uniform(-10.0, 10.0)))
                                      : random_signal(n, rng.integer(0, ~0ULL - 1));
    const auto half = static_cast<std::size_t>(rng.integer(1, y.max_half_width()));
    const WeightWindow w = random_simplex_window(half, rng.integer(0, ~0ULL - 1));
    const Autocorrelation r = autocorr_fft(y);
    const double via_r = objective_mean(w, r);
    const double direct = objective_mean_direct(w, y);
    Tally{report}.record(std::abs(via_r - direct), kSlack * std::max(1.0, r.zero_lag()), [&] {
      return Counterexample{to_vector(y.values()), to_vector(w.weights()), {}, via_r, direct,
                            "r_0 - w^T R w differs from the direct objective"};
    });
  }
  return report;
}

CheckReport verify_vertex_optimality(const Signal& y, std::size_t trials, std::uint64_t seed, const LossKind& loss,
                                     double epsilon) {
  require_trials(trials);
  DominanceCheck check(y, loss, epsilon, "vertex");
  const WsymmParams params{epsilon, y.max_half_width()};
  for (std::size_t t = 0; t < trials; ++t) check.sample(random_tapered(params, trial_seed(seed, t)));
  auto report = check.finish();
  report.seed = seed;
  return report;
}

CheckReport verify_vertex_grid(const Signal& y, const LossKind& loss, double epsilon, std::size_t steps) {
  if (steps < 1) throw InvalidArgument("grid needs at least one step");
  DominanceCheck check(y, loss, epsilon, "vertex-grid");
  const std::size_t half = y.max_half_width();
  const WsymmParams params{epsilon, half};

  // Enumerate every composition c of `steps` into `half` non-negative parts.
  std::vector<std::size_t> c(half, 0);
  c[0] = steps;
  std::vector<double> p(half);
  while (true) {
    for (std::size_t i = 0; i < half; ++i) p[i] = static_cast<double>(c[i]) / static_cast<double>(steps);
    check.sample(combine_vertices(p, params));
    // Next composition in reverse-lexicographic order.
    if (c[half - 1] == steps) break;
    std::size_t j = half - 1;
    while (c[j - 1] == 0) --j;  // rightmost nonzero among c[0..half-2] is c[j-1]
    const std::size_t tail = c[half - 1];
    c[half - 1] = 0;
    --c[j - 1];
    c[j] = tail + 1;
  }
  return check.finish();
}

CheckReport verify_onehot_degeneracy(const Signal& y) {
  CheckReport report = make_report("onehot", 0, 0);
  const Autocorrelation r = autocorr_fft(y);
  const double r0 = r.zero_lag();
  const std::size_t half = y.max_half_width();
  const WeightWindow delta = make_one_hot(half, 0);
  const double g0 = objective_mean(delta, r);

  auto counterexample = [&](const WeightWindow& w, double other, std::string note) {
    return [&, other, note = std::move(note)] {
      return Counterexample{to_vector(y.values()), to_vector(w.weights()), {}, g0, other, note};
    };
  };

  ++report.trials;
  Tally{report}.record(std::abs(g0), 1e-12 * r0, counterexample(delta, 0.0, "G(delta_0) is not zero"));

  const double slack = kSlack * std::max(1.0, r0);
  const auto h = static_cast<std::int64_t>(half);
  for (std::int64_t lag = -h; lag <= h; ++lag) {
    const WeightWindow e = make_one_hot(half, lag);
    const double g = objective_mean(e, r);
    ++report.trials;
    Tally{report}.record(std::max(0.0, g0 - g), slack, counterexample(e, g, "another one-hot window beats delta_0"));
  }
  const OptimizationReport best = best_mean_window(y);
  const WeightWindow vertex = expand_vertex({best.best_index, {0.0, half}});
  ++report.trials;
  Tally{report}.record(std::max(0.0, g0 - best.best_objective), slack,
                       counterexample(vertex, best.best_objective, "a tapered vertex beats delta_0"));
  report.min_margin = best.best_objective - g0;
  report.max_margin = report.min_margin;
  report.mean_margin = report.min_margin;
  return report;
}

CheckReport verify_concavity_abs(std::size_t trials, std::uint64_t seed, SizeRange sizes) {
  require_trials(trials);
  require_sizes(sizes);
  CheckReport report = make_report("concavity", trials, seed);
  constexpr double kLambdas[] = {0.25, 0.5, 0.75};
  for (std::size_t t = 0; t < trials; ++t) {
    detail::Rng rng(trial_seed(seed, t));
    const auto n = static_cast<std::size_t>(rng.integer(sizes.min_length, sizes.max_length));
    const Signal y = random_signal(n, rng.integer(0, ~0ULL - 1));
    const auto half = static_cast<std::size_t>(rng.integer(1, y.max_half_width()));
    const WeightWindow w0 = random_simplex_window(half, rng.integer(0, ~0ULL - 1));
    const WeightWindow w1 = random_simplex_window(half, rng.integer(0, ~0ULL - 1));
    const double g0 = objective_abs(w0, y);
    const double g1 = objective_abs(w1, y);
    const double slack = kSlack * std::max(1.0, abs_mass(y));
    for (double lambda : kLambdas) {
      std::vector<double> mix(w0.length());
      for (std::size_t k = 0; k < mix.size(); ++k) mix[k] = lambda * w0.weights()[k] + (1.0 - lambda) * w1.weights()[k];
      const WeightWindow wm(std::move(mix));
      const double gm = objective_abs(wm, y);
      const double chord = lambda * g0 + (1.0 - lambda) * g1;
      Tally{report}.record(std::max(0.0, chord - gm), slack, [&] {
        return Counterexample{to_vector(y.values()), to_vector(w0.weights()), to_vector(w1.weights()), gm, chord,
                              "G_A below its chord at lambda=" + std::to_string(lambda)};
      });
    }
  }
  return report;
}

CheckReport verify_psd(std::size_t trials, std::uint64_t seed, SizeRange sizes) {
  require_trials(trials);
  require_sizes(sizes);
  CheckReport report = make_report("psd", trials, seed);
  for (std::size_t t = 0; t < trials; ++t) {
    detail::Rng rng(trial_seed(seed, t));
    const auto n = static_cast<std::size_t>(rng.integer(sizes.min_length, sizes.max_length));
    const Signal y = random_signal(n, rng.integer(0, ~0ULL - 1));
    const Autocorrelation r = autocorr_fft(y);
    std::vector<double> v(n);
    double norm2 = 0.0;
    for (auto& x : v) {
      x = rng.normal();
      norm2 += x * x;
    }
    double form = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double row = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        row += v[k] * r.at(static_cast<std::int64_t>(k) - static_cast<std::int64_t>(j));
      }
      form += v[j] * row;
    }
    Tally{report}.record(std::max(0.0, -form), kSlack * r.zero_lag() * norm2, [&] {
      return Counterexample{to_vector(y.values()), v, {}, form, 0.0, "v^T R v is negative"};
    });
  }
  return report;
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json out = {
      {"schema", 1},
      {"check", check},
      {"passed", passed},
      {"trials", trials},
      {"seed", seed},
      {"max_deviation", max_deviation},
      {"worst_ratio", worst_ratio},
      {"margin", {{"min", min_margin}, {"max", max_margin}, {"mean", mean_margin}}},
  };
  if (counterexample) {
    out["counterexample"] = {
        {"signal", counterexample->signal},
        {"window", counterexample->window},
        {"lhs", counterexample->lhs},
        {"rhs", counterexample->rhs},
        {"note", counterexample->note},
    };
    if (!counterexample->other_window.empty()) out["counterexample"]["other_window"] = counterexample->other_window;
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

}  // namespace optwin::oracle
