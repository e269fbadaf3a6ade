#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "optwin/signal.hpp"
#include "optwin/spectral.hpp"
#include "optwin/window.hpp"

namespace optwin {

struct WeightedSample {
  double value;
  double weight;
};

// Per-point loss f(y, x) and the smoothing rule that minimizes
// sum_k w_k f(y_k, x) over x.
class LossKind {
 public:
  enum class Tag { Squared, Absolute, Custom };

  using PointLoss = std::function<double(double y, double x)>;
  using Minimizer = std::function<double(std::span<const WeightedSample>)>;

  static LossKind squared();
  static LossKind absolute();
  // The minimizer must return a global minimizer of the weighted loss; losses
  // without a closed-form rule (Huber, ...) are only accepted with one.
  // Throws InvalidArgument when either callback is empty.
  static LossKind custom(std::string name, PointLoss loss, Minimizer minimizer);

  Tag tag() const noexcept { return tag_; }
  const std::string& name() const noexcept { return name_; }
  const PointLoss& loss() const noexcept { return loss_; }
  const Minimizer& minimizer() const noexcept { return minimizer_; }

 private:
  LossKind(Tag tag, std::string name, PointLoss loss, Minimizer minimizer);

  Tag tag_;
  std::string name_;
  PointLoss loss_;
  Minimizer minimizer_;
};

// "squared" / "absolute"; anything else throws InvalidArgument.
LossKind parse_loss(const std::string& name);

// w^T R w = sum_k sum_m w_k w_m r_{m-k}, O(K^2).
// Throws InvalidArgument when 2K+1 exceeds the signal length.
double quad_form(const WeightWindow& w, const Autocorrelation& r);

// G(w) = r_0 - w^T R w.
double objective_mean(const WeightWindow& w, const Autocorrelation& r);

// sum_n sum_k w_k (y_{n+k} - x_n)^2 with x the weighted moving average.
// Computed from the definition; used to check objective_mean.
double objective_mean_direct(const WeightWindow& w, const Signal& y);

struct VertexObjective {
  std::size_t index;   // i
  std::size_t length;  // 2i+1
  double quad_form;    // v_i^T R v_i
  double objective;    // r_0 - v_i^T R v_i
};

struct VertexObjectiveSeries {
  double epsilon = 0.0;
  std::vector<VertexObjective> entries;  // i = 1..K in order
};

// Squared-loss objective at every vertex i = 1..K in O(K) total after r is
// known. Uses v_i = a (u_i + eps delta_0), a = 1/(2i+1+eps), u_i the 0/1
// indicator of |k| <= i:
//   v_i^T R v_i = a^2 (T_{2i+1} + 2 eps P_i + eps^2 r_0)
//   T_L = sum_{|t| <= L-1} (L - |t|) r_t,   P_i = sum_{|t| <= i} r_t
// updated as
//   T_{L+2} = T_L + 2 P_{L-1} + 4 r_L + 2 r_{L+1}
//   P_{L+1} = P_{L-1} + 2 r_L + 2 r_{L+1}
//   P_{i+1} = P_i + 2 r_{i+1}
VertexObjectiveSeries vertex_objective_series(const Autocorrelation& r, const WsymmParams& params);

// G_A(w) = sum_n sum_k w_k |y_{n+k} - x_n| with x the weighted moving median.
double objective_abs(const WeightWindow& w, const Signal& y);

// G_A for the uniform window of half-width i using an order-statistics
// sliding window, O(N log N).
double objective_abs_uniform(const Signal& y, std::size_t half_width);

// G_G(w) = sum_n min_x sum_k w_k f(y_{n+k}, x), minimized per n through the
// loss's smoothing rule. Squared: weighted mean. Absolute: objective_abs.
// Throws ContractViolation if a custom minimizer returns a non-finite value.
double objective_general(const WeightWindow& w, const Signal& y, const LossKind& loss);

}  // namespace optwin
