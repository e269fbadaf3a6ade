#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "optwin/objectives.hpp"
#include "optwin/signal.hpp"
#include "optwin/window.hpp"

namespace optwin::oracle {

// Brute-force checks of the window-optimality results. Every check is
// deterministic per seed and reports the first counterexample it meets.

struct Counterexample {
  std::vector<double> signal;
  std::vector<double> window;
  std::vector<double> other_window;  // second window for Jensen checks
  double lhs = 0.0;
  double rhs = 0.0;
  std::string note;
};

struct CheckReport {
  std::string check;
  bool passed = true;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  // Largest raw discrepancy (or violation amount) seen.
  double max_deviation = 0.0;
  // Largest discrepancy divided by its allowed slack; <= 1 means within slack.
  double worst_ratio = 0.0;
  // Vertex dominance margins (sample objective - best vertex objective).
  double min_margin = 0.0;
  double max_margin = 0.0;
  double mean_margin = 0.0;
  std::optional<Counterexample> counterexample;

  nlohmann::json to_json() const;
};

struct SizeRange {
  std::size_t min_length = 3;
  std::size_t max_length = 257;
};

// Random simplex windows over random signals; compares objective_mean against
// objective_mean_direct at 1e-9 * max(1, r_0). `constant_signals` restricts the
// draw to constant signals.
CheckReport verify_reduction(std::size_t trials, std::uint64_t seed, SizeRange sizes = {},
                             bool constant_signals = false);

// Samples `trials` random tapered windows and checks that none beats the best
// vertex (1e-9 * scale slack; scale = max(1, r_0) for squared loss,
// max(1, sum |y_n|) otherwise).
CheckReport verify_vertex_optimality(const Signal& y, std::size_t trials, std::uint64_t seed,
                                     const LossKind& loss, double epsilon);

// Every composition of p over the K vertices on a grid of step 1/steps;
// no grid point may beat the best vertex.
CheckReport verify_vertex_grid(const Signal& y, const LossKind& loss, double epsilon,
                               std::size_t steps = 10);

// G(delta_0) = 0 within 1e-12 r_0, and it weakly beats every other one-hot
// window and every tapered vertex.
CheckReport verify_onehot_degeneracy(const Signal& y);

// Jensen checks of G_A at lambda in {0.25, 0.5, 0.75} on random simplex
// windows; slack 1e-9 * max(1, sum |y_n|).
CheckReport verify_concavity_abs(std::size_t trials, std::uint64_t seed,
                                 SizeRange sizes = {5, 65});

// PSD of the circulant autocorrelation matrix: v^T R v >= -1e-9 r_0 |v|^2.
CheckReport verify_psd(std::size_t trials, std::uint64_t seed, SizeRange sizes = {});

// Random signal of the given length with entries drawn from several scales.
Signal random_signal(std::size_t length, std::uint64_t seed);

// Random point of the full simplex of half-width K.
WeightWindow random_simplex_window(std::size_t half_width, std::uint64_t seed);

}  // namespace optwin::oracle
