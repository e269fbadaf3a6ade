#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "optwin/objectives.hpp"
#include "optwin/signal.hpp"

namespace optwin {

// Relative tolerance under which two vertex objectives count as tied; the
// shorter window wins a tie.
inline constexpr double kTieTolerance = 1e-12;

struct OptimizeOptions {
  double epsilon = 0.0;
  // Caps the largest candidate window length (2K+1). 0 means no cap, i.e.
  // K = floor((N-1)/2).
  std::size_t max_length = 0;
};

struct VertexRecord {
  std::size_t index;
  std::size_t length;
  double objective;
};

struct OptimizationReport {
  std::string loss;
  double epsilon = 0.0;
  std::vector<VertexRecord> vertices;
  std::size_t best_index = 0;
  std::size_t best_length = 0;
  double best_objective = 0.0;
  double autocorrelation_seconds = 0.0;
  double scan_seconds = 0.0;

  // Schema-versioned JSON. Wall times are only included on request so that
  // reports are reproducible byte for byte.
  nlohmann::json to_json(bool include_timings = false) const;
};

// Resolves the half-width K for a signal under the options.
// Throws InvalidArgument if it ends up below 1.
std::size_t resolve_half_width(const Signal& y, const OptimizeOptions& options);

// Index (0-based into records) of the smallest-length record within the tie
// tolerance of the minimum. `scale` anchors the tolerance when the minimum is
// near zero.
std::size_t pick_best(const std::vector<VertexRecord>& records, double scale);

// Squared loss: FFT autocorrelation plus the O(1)-per-vertex series.
OptimizationReport best_mean_window(const Signal& y, const OptimizeOptions& options = {});

// Absolute loss: G_A at every vertex. Uniform (epsilon = 0) vertices use the
// sliding order-statistics path; epsilon > 0 sorts every window.
OptimizationReport best_median_window(const Signal& y, const OptimizeOptions& options = {});

// Any loss: objective_general at every vertex.
OptimizationReport best_general_window(const Signal& y, const LossKind& loss,
                                       const OptimizeOptions& options = {});

}  // namespace optwin
