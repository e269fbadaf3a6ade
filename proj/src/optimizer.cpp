#include "optwin/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "optwin/errors.hpp"
#include "optwin/spectral.hpp"
#include "optwin/window.hpp"

namespace optwin {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
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

void finish(OptimizationReport& report, double scale) {
  const std::size_t best = pick_best(report.vertices, scale);
  report.best_index = report.vertices[best].index;
  report.best_length = report.vertices[best].length;
  report.best_objective = report.vertices[best].objective;
}

}  // namespace

nlohmann::json OptimizationReport::to_json(bool include_timings) const {
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : vertices) {
    vs.push_back({{"index", v.index}, {"length", v.length}, {"objective", v.objective}});
  }
  nlohmann::json out = {
      {"schema", 1},
      {"loss", loss},
      {"epsilon", epsilon},
      {"vertices", std::move(vs)},
      {"best_index", best_index},
      {"best_length", best_length},
      {"best_objective", best_objective},
  };
  if (include_timings) {
    out["timings"] = {{"autocorrelation_seconds", autocorrelation_seconds}, {"scan_seconds", scan_seconds}};
  }
  return out;
}

std::size_t resolve_half_width(const Signal& y, const OptimizeOptions& options) {
  std::size_t half = y.max_half_width();
  if (options.max_length != 0) {
    if (options.max_length < 3) throw InvalidArgument("max-length must be at least 3");
    half = std::min(half, (options.max_length - 1) / 2);
  }
  if (half < 1) throw InvalidArgument("half-width K must be >= 1");
  return half;
}

std::size_t pick_best(const std::vector<VertexRecord>& records, double scale) {
  if (records.empty()) throw InvalidArgument("no vertices to choose from");
  double best = records.front().objective;
  for (const auto& r : records) best = std::min(best, r.objective);
  const double tolerance = kTieTolerance * std::max(std::abs(best), scale);
  std::size_t pick = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].objective - best <= tolerance &&
        (records[pick].objective - best > tolerance || records[i].length < records[pick].length)) {
      pick = i;
    }
  }
  return pick;
}

OptimizationReport best_mean_window(const Signal& y, const OptimizeOptions& options) {
  const WsymmParams params{options.epsilon, resolve_half_width(y, options)};
  validate(params);

  OptimizationReport report;
  report.loss = "squared";
  report.epsilon = params.epsilon;

  auto start = Clock::now();
  const Autocorrelation r = autocorr_fft(y);
  report.autocorrelation_seconds = seconds_since(start);

  start = Clock::now();
  const VertexObjectiveSeries series = vertex_objective_series(r, params);
  report.vertices.reserve(series.entries.size());
  for (const auto& e : series.entries) report.vertices.push_back({e.index, e.length, e.objective});
  finish(report, std::max(1.0, r.zero_lag()));
  report.scan_seconds = seconds_since(start);
  return report;
}

OptimizationReport best_median_window(const Signal& y, const OptimizeOptions& options) {
  const WsymmParams params{options.epsilon, resolve_half_width(y, options)};
  validate(params);

  OptimizationReport report;
  report.loss = "absolute";
  report.epsilon = params.epsilon;

  const auto start = Clock::now();
  report.vertices.reserve(params.half_width);
  for (std::size_t i = 1; i <= params.half_width; ++i) {
    const double g = params.epsilon == 0.0 ? objective_abs_uniform(y, i)
                                           : objective_abs(expand_vertex({i, params}), y);
    report.vertices.push_back({i, 2 * i + 1, g});
  }
  finish(report, std::max(1.0, abs_mass(y)));
  report.scan_seconds = seconds_since(start);
  return report;
}

OptimizationReport best_general_window(const Signal& y, const LossKind& loss, const OptimizeOptions& options) {
  const WsymmParams params{options.epsilon, resolve_half_width(y, options)};
  validate(params);

  OptimizationReport report;
  report.loss = loss.name();
  report.epsilon = params.epsilon;

  const auto start = Clock::now();
  report.vertices.reserve(params.half_width);
  for (std::size_t i = 1; i <= params.half_width; ++i) {
    report.vertices.push_back({i, 2 * i + 1, objective_general(expand_vertex({i, params}), y, loss)});
  }
  const double scale = loss.tag() == LossKind::Tag::Squared ? std::max(1.0, energy(y)) : std::max(1.0, abs_mass(y));
  finish(report, scale);
  report.scan_seconds = seconds_since(start);
  return report;
}

}  // namespace optwin
