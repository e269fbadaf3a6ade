#include "optwin/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "optwin/errors.hpp"

namespace optwin {

Autocorrelation::Autocorrelation(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("autocorrelation needs at least one lag");
}

Autocorrelation autocorr_naive(const Signal& signal) {
  const std::size_t n = signal.size();
  const auto y = signal.values();
  std::vector<double> r(n, 0.0);
  // Lags above N/2 are copied from their mirror so r_t = r_{N-t} holds bit for bit.
  for (std::size_t t = 0; t <= n / 2; ++t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = i + t;
      if (j >= n) j -= n;
      acc += y[i] * y[j];
    }
    r[t] = acc;
    if (t > 0) r[n - t] = acc;
  }
  return Autocorrelation(std::move(r));
}

namespace {

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

ComplexBuffer allocate(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (!p) throw std::bad_alloc();
  return ComplexBuffer(p);
}

// Per-thread scratch, grown on demand. fftw_malloc keeps the SIMD alignment
// the cached plans were made with.
struct Workspace {
  ComplexBuffer time;
  ComplexBuffer freq;
  std::size_t capacity = 0;

  void reserve(std::size_t n) {
    if (n <= capacity) return;
    time = allocate(n);
    freq = allocate(n);
    capacity = n;
  }
};

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Plans are created once per length and never mutated afterwards; FFTW's
// new-array execute interface is thread-safe, its planner is not.
class PlanCache {
 public:
  PlanPair get(std::size_t n) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(n); it != plans_.end()) return it->second;
    auto in = allocate(n);
    auto out = allocate(n);
    const int len = static_cast<int>(n);
    PlanPair pair{fftw_plan_dft_1d(len, in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE),
                  fftw_plan_dft_1d(len, out.get(), in.get(), FFTW_BACKWARD, FFTW_ESTIMATE)};
    if (!pair.forward || !pair.backward) {
      throw std::runtime_error("FFTW could not create a plan of length " + std::to_string(n));
    }
    plans_.emplace(n, pair);
    return pair;
  }

  ~PlanCache() {
    for (auto& [n, pair] : plans_) {
      fftw_destroy_plan(pair.forward);
      fftw_destroy_plan(pair.backward);
    }
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

Autocorrelation autocorr_fft(const Signal& signal) {
  const std::size_t n = signal.size();
  const PlanPair plans = plan_cache().get(n);
  thread_local Workspace work;
  work.reserve(n);
  fftw_complex* buffer = work.time.get();
  fftw_complex* spectrum = work.freq.get();

  const auto y = signal.values();
  for (std::size_t i = 0; i < n; ++i) {
    buffer[i][0] = y[i];
    buffer[i][1] = 0.0;
  }
  fftw_execute_dft(plans.forward, buffer, spectrum);
  for (std::size_t i = 0; i < n; ++i) {
    const double re = spectrum[i][0];
    const double im = spectrum[i][1];
    spectrum[i][0] = re * re + im * im;
    spectrum[i][1] = 0.0;
  }
  fftw_execute_dft(plans.backward, spectrum, buffer);

  const double scale = 1.0 / static_cast<double>(n);
  std::vector<double> r(n);
  double max_imag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = buffer[i][0] * scale;
    max_imag = std::max(max_imag, std::abs(buffer[i][1] * scale));
  }
  // r_0 = sum y^2 is known exactly; use it as the residue anchor.
  double energy = 0.0;
  for (double v : y) energy += v * v;
  if (max_imag > 1e-9 * energy && max_imag > 1e-300) {
    throw std::runtime_error("inverse transform left an imaginary residue of " + std::to_string(max_imag));
  }
  return Autocorrelation(std::move(r));
}

}  // namespace optwin
