#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "optwin/signal.hpp"

namespace optwin {

// Cyclic autocorrelation r_t = sum_n y_n y_{n+t}, t = 0..N-1.
//
// Lags outside [0, N) are resolved through periodicity and symmetry
// (r_{-t} = r_t = r_{N+t}), so at() accepts any integer lag.
class Autocorrelation {
 public:
  explicit Autocorrelation(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double zero_lag() const noexcept { return values_.front(); }

  double at(std::int64_t lag) const noexcept {
    const auto n = static_cast<std::int64_t>(values_.size());
    auto m = lag % n;
    if (m < 0) m += n;
    return values_[static_cast<std::size_t>(m)];
  }

 private:
  std::vector<double> values_;
};

// Direct O(N^2) summation, left to right. Reference route.
Autocorrelation autocorr_naive(const Signal& signal);

// r = IFFT(FFT(y) * conj(FFT(y))) with a length-N transform, no padding.
// Thread-safe.
Autocorrelation autocorr_fft(const Signal& signal);

}  // namespace optwin
