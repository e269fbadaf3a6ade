#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace optwin {

inline constexpr double kSimplexTolerance = 1e-12;

// Probability weights w_{-K} .. w_{K}, stored densely. Lags outside [-K, K]
// read as zero.
class WeightWindow {
 public:
  // Throws InvalidArgument unless weights.size() == 2K+1 for some K >= 1,
  // every weight is finite and non-negative, and the sum is within 1e-12 of 1.
  explicit WeightWindow(std::vector<double> weights);

  std::size_t half_width() const noexcept { return (weights_.size() - 1) / 2; }
  std::size_t length() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }

  // Weight at lag k in [-K, K]; 0 outside.
  double at(std::int64_t k) const noexcept {
    const auto half = static_cast<std::int64_t>(half_width());
    if (k < -half || k > half) return 0.0;
    return weights_[static_cast<std::size_t>(k + half)];
  }

  friend bool operator==(const WeightWindow&, const WeightWindow&) = default;

 private:
  std::vector<double> weights_;
};

struct WsymmParams {
  double epsilon = 0.0;
  std::size_t half_width = 1;
};

// Throws InvalidArgument for epsilon < 0 (or non-finite) or half_width < 1.
void validate(const WsymmParams& params);

// Vertex i (1 <= i <= K) of the symmetric tapered window polytope: a uniform
// window over |k| <= i whose center weight is scaled by (1 + epsilon).
struct VertexWindow {
  std::size_t index = 1;
  WsymmParams params;
};

WeightWindow expand_vertex(const VertexWindow& vertex);

// Unweighted moving average of odd `length`, embedded in half-width K.
WeightWindow make_uniform(std::size_t length, std::size_t half_width);

// Delta at lag 0 with the given half-width.
WeightWindow make_one_hot(std::size_t half_width, std::int64_t lag = 0);

struct TaperCheck {
  bool ok = true;
  // Empty when ok; otherwise names the first violated constraint:
  // "symmetry", "monotonicity" or "center".
  std::string constraint;
  std::string detail;
};

// Membership test for the symmetric tapered set with parameter epsilon, with
// every comparison done at 1e-12 absolute slack.
TaperCheck is_tapered(const WeightWindow& window, double epsilon);

// Random point of the polytope: p drawn from the K-simplex via normalized
// exponential variates (mt19937_64, inverse CDF), then sum_i p_i v_i.
WeightWindow random_tapered(const WsymmParams& params, std::uint64_t seed);

// sum_i p_i v_i for a caller-chosen p of size K.
WeightWindow combine_vertices(std::span<const double> p, const WsymmParams& params);

// Inverse of combine_vertices for a member of the polytope:
// p_i = (w_i - w_{i+1})(2i+1+eps), p_K = w_K (2K+1+eps).
std::vector<double> decompose_tapered(const WeightWindow& window, double epsilon);

// Cyclic shift over the 2K+1 support: result[k] = w[k - n].
WeightWindow shift_window(const WeightWindow& window, std::int64_t n);

// Reversal around lag 0: result[k] = w[-k].
WeightWindow mirror_window(const WeightWindow& window);

// Weights file: one real per line, 2K+1 lines, center in the middle.
// The sum must be within 1e-9 of 1; it is then renormalized.
WeightWindow load_weights(std::istream& in);
WeightWindow load_weights_file(const std::string& path);

}  // namespace optwin
