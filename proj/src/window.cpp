#include "optwin/window.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "optwin/errors.hpp"
#include "optwin/signal.hpp"
#include "random.hpp"

namespace optwin {

WeightWindow::WeightWindow(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.size() < 3 || weights_.size() % 2 == 0) {
    throw InvalidArgument("window needs an odd number (>= 3) of weights, got " + std::to_string(weights_.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidArgument("window weight " + std::to_string(i) + " must be finite and non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw InvalidArgument("window weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
}

void validate(const WsymmParams& params) {
  if (!std::isfinite(params.epsilon) || params.epsilon < 0.0) {
    throw InvalidArgument("epsilon must be finite and >= 0");
  }
  if (params.half_width < 1) throw InvalidArgument("half-width K must be >= 1");
}

namespace {

// Vertex i accumulated into `out` (size 2K+1) with coefficient `scale`.
void add_vertex(std::vector<double>& out, std::size_t i, double epsilon, double scale) {
  const std::size_t center = (out.size() - 1) / 2;
  const double a = scale / (2.0 * static_cast<double>(i) + 1.0 + epsilon);
  out[center] += (1.0 + epsilon) * a;
  for (std::size_t k = 1; k <= i; ++k) {
    out[center - k] += a;
    out[center + k] += a;
  }
}

}  // namespace

WeightWindow expand_vertex(const VertexWindow& vertex) {
  validate(vertex.params);
  const std::size_t half = vertex.params.half_width;
  if (vertex.index < 1 || vertex.index > half) {
    throw InvalidArgument("vertex index " + std::to_string(vertex.index) + " outside 1.." + std::to_string(half));
  }
  std::vector<double> w(2 * half + 1, 0.0);
  add_vertex(w, vertex.index, vertex.params.epsilon, 1.0);
  return WeightWindow(std::move(w));
}

WeightWindow make_uniform(std::size_t length, std::size_t half_width) {
  if (length % 2 == 0) throw InvalidArgument("window length must be odd, got " + std::to_string(length));
  if (length < 3 || length > 2 * half_width + 1) {
    throw InvalidArgument("window length " + std::to_string(length) + " outside 3.." +
                          std::to_string(2 * half_width + 1));
  }
  return expand_vertex({(length - 1) / 2, {0.0, half_width}});
}

WeightWindow make_one_hot(std::size_t half_width, std::int64_t lag) {
  const auto half = static_cast<std::int64_t>(half_width);
  if (half_width < 1 || lag < -half || lag > half) throw InvalidArgument("one-hot lag outside the window");
  std::vector<double> w(2 * half_width + 1, 0.0);
  w[static_cast<std::size_t>(lag + half)] = 1.0;
  return WeightWindow(std::move(w));
}

TaperCheck is_tapered(const WeightWindow& window, double epsilon) {
  const auto half = static_cast<std::int64_t>(window.half_width());
  auto fail = [](std::string constraint, std::string detail) {
    return TaperCheck{false, std::move(constraint), std::move(detail)};
  };
  for (std::int64_t k = 1; k <= half; ++k) {
    if (std::abs(window.at(k) - window.at(-k)) > kSimplexTolerance) {
      return fail("symmetry", "w[" + std::to_string(k) + "] != w[-" + std::to_string(k) + "]");
    }
  }
  for (std::int64_t k = 1; k < half; ++k) {
    if (window.at(k) < window.at(k + 1) - kSimplexTolerance) {
      return fail("monotonicity", "w[" + std::to_string(k) + "] < w[" + std::to_string(k + 1) + "]");
    }
    if (window.at(-k) < window.at(-k - 1) - kSimplexTolerance) {
      return fail("monotonicity", "w[-" + std::to_string(k) + "] < w[-" + std::to_string(k + 1) + "]");
    }
  }
  if (std::abs(window.at(0) - (1.0 + epsilon) * window.at(1)) > kSimplexTolerance) {
    return fail("center", "w[0] != (1+epsilon) * w[1]");
  }
  return {};
}

WeightWindow combine_vertices(std::span<const double> p, const WsymmParams& params) {
  validate(params);
  if (p.size() != params.half_width) {
    throw InvalidArgument("need one coefficient per vertex (" + std::to_string(params.half_width) + ")");
  }
  double total = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("vertex coefficients must be non-negative");
    total += v;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) throw InvalidArgument("vertex coefficients must sum to 1");

  std::vector<double> w(2 * params.half_width + 1, 0.0);
  for (std::size_t i = 1; i <= params.half_width; ++i) {
    if (p[i - 1] != 0.0) add_vertex(w, i, params.epsilon, p[i - 1]);
  }
  return WeightWindow(std::move(w));
}

WeightWindow random_tapered(const WsymmParams& params, std::uint64_t seed) {
  validate(params);
  detail::Rng rng(seed);
  std::vector<double> p(params.half_width);
  double total = 0.0;
  for (auto& v : p) {
    v = rng.exponential();
    total += v;
  }
  for (auto& v : p) v /= total;
  return combine_vertices(p, params);
}

std::vector<double> decompose_tapered(const WeightWindow& window, double epsilon) {
  const std::size_t half = window.half_width();
  std::vector<double> p(half);
  for (std::size_t i = 1; i <= half; ++i) {
    const auto k = static_cast<std::int64_t>(i);
    const double scale = 2.0 * static_cast<double>(i) + 1.0 + epsilon;
    p[i - 1] = (window.at(k) - window.at(k + 1)) * scale;  // at(K+1) reads 0
  }
  return p;
}

WeightWindow shift_window(const WeightWindow& window, std::int64_t n) {
  const auto len = static_cast<std::int64_t>(window.length());
  const auto w = window.weights();
  std::vector<double> out(w.size());
  for (std::int64_t j = 0; j < len; ++j) {
    auto dst = (j + n) % len;
    if (dst < 0) dst += len;
    out[static_cast<std::size_t>(dst)] = w[static_cast<std::size_t>(j)];
  }
  return WeightWindow(std::move(out));
}

WeightWindow mirror_window(const WeightWindow& window) {
  const auto w = window.weights();
  return WeightWindow(std::vector<double>(w.rbegin(), w.rend()));
}

WeightWindow load_weights(std::istream& in) {
  auto w = read_csv_numbers(in);
  if (w.size() < 3 || w.size() % 2 == 0) {
    throw InvalidArgument("weights file needs an odd number (>= 3) of values, got " + std::to_string(w.size()));
  }
  double sum = 0.0;
  for (double v : w) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("weights must be finite and non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidArgument("weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
  for (auto& v : w) v /= sum;
  return WeightWindow(std::move(w));
}

WeightWindow load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return load_weights(in);
}

}  // namespace optwin
