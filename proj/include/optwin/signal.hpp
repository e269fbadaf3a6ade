#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace optwin {

// Fixed-length real signal with cyclic indexing. Immutable once built.
//
// Indices are 0-based here; logical index n maps to n mod N for any integer n,
// so cyclic_get(-1) is the last sample and cyclic_get(N) the first.
class Signal {
 public:
  static constexpr std::size_t kMinLength = 3;

  // Throws InvalidArgument when fewer than 3 values or any value is non-finite.
  explicit Signal(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  double cyclic_get(std::int64_t index) const noexcept {
    const auto n = static_cast<std::int64_t>(values_.size());
    auto m = index % n;
    if (m < 0) m += n;
    return values_[static_cast<std::size_t>(m)];
  }

  // Largest half-width K with 2K+1 <= N, i.e. floor((N-1)/2).
  std::size_t max_half_width() const noexcept { return (values_.size() - 1) / 2; }

 private:
  std::vector<double> values_;
};

namespace noise {

struct SineGaussian {
  double amplitude = 1.0;
  double period = 16.0;
  double sigma = 0.1;
};

struct SineLaplace {
  double amplitude = 1.0;
  double period = 16.0;
  double b = 0.1;
};

struct Constant {
  double c = 0.0;
};

// `position` is 1-based, matching the CLI.
struct Impulse {
  std::size_t position = 1;
  double height = 1.0;
};

}  // namespace noise

using NoiseSpec = std::variant<noise::SineGaussian, noise::SineLaplace, noise::Constant, noise::Impulse>;

// Parses "name:key=value,..." where name is one of sine+gaussian, sine+laplace,
// constant, impulse. Unspecified keys keep their defaults.
NoiseSpec parse_noise_spec(const std::string& text);

// Deterministic for a fixed (spec, length, seed). Randomness comes from
// std::mt19937_64 (bit-exact across standard libraries); uniforms take the top
// 53 bits, Gaussians use Box-Muller and Laplace variates the inverse CDF, so no
// implementation-defined std::*_distribution is involved.
Signal generate_signal(const NoiseSpec& spec, std::size_t length, std::uint64_t seed);

enum class SignalFormat { Csv, Json };

// CSV: one number per line; a non-numeric first line is treated as a header.
// JSON: a flat array of numbers.
Signal load_signal(std::istream& in, SignalFormat format);
Signal load_signal_file(const std::string& path);

// Writes with 17 significant digits so load(save(s)) is bit-exact.
void save_signal(std::ostream& out, const Signal& signal, SignalFormat format);
void save_signal_file(const std::string& path, const Signal& signal);

// Format picked from the file extension: ".json" means JSON, anything else CSV.
SignalFormat format_for_path(const std::string& path);

// Reads plain CSV numbers (same rules as the signal loader, no length check).
std::vector<double> read_csv_numbers(std::istream& in);

}  // namespace optwin
