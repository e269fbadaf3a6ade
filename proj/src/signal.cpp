#include "optwin/signal.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <cctype>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "optwin/errors.hpp"
#include "optwin/json_writer.hpp"
#include "random.hpp"

namespace optwin {

Signal::Signal(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < kMinLength) {
    throw InvalidArgument("signal needs at least 3 values, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InvalidArgument("signal value at index " + std::to_string(i) + " is not finite");
    }
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Whole-string strtod. Rejects trailing garbage.
std::optional<double> parse_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') return std::nullopt;
  return v;
}

std::map<std::string, double> parse_params(const std::string& body, const std::string& kind) {
  std::map<std::string, double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("noise spec '" + kind + "': expected key=value, got '" + item + "'");
    }
    const auto value = parse_number(trim(item.substr(eq + 1)));
    if (!value) throw InvalidArgument("noise spec '" + kind + "': bad number in '" + item + "'");
    out[trim(item.substr(0, eq))] = *value;
  }
  return out;
}

void take(std::map<std::string, double>& params, const std::string& key, double& field) {
  if (auto it = params.find(key); it != params.end()) {
    field = it->second;
    params.erase(it);
  }
}

void reject_leftovers(const std::map<std::string, double>& params, const std::string& kind) {
  if (!params.empty()) {
    throw InvalidArgument("noise spec '" + kind + "': unknown key '" + params.begin()->first + "'");
  }
}

}  // namespace

NoiseSpec parse_noise_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = trim(text.substr(0, colon));
  auto params = parse_params(colon == std::string::npos ? "" : text.substr(colon + 1), kind);

  if (kind == "sine+gaussian") {
    noise::SineGaussian s;
    take(params, "amplitude", s.amplitude);
    take(params, "period", s.period);
    take(params, "sigma", s.sigma);
    reject_leftovers(params, kind);
    return s;
  }
  if (kind == "sine+laplace") {
    noise::SineLaplace s;
    take(params, "amplitude", s.amplitude);
    take(params, "period", s.period);
    take(params, "b", s.b);
    reject_leftovers(params, kind);
    return s;
  }
  if (kind == "constant") {
    noise::Constant s;
    take(params, "c", s.c);
    reject_leftovers(params, kind);
    return s;
  }
  if (kind == "impulse") {
    noise::Impulse s;
    double position = static_cast<double>(s.position);
    take(params, "position", position);
    take(params, "height", s.height);
    reject_leftovers(params, kind);
    if (position < 1 || position != std::floor(position)) {
      throw InvalidArgument("impulse position must be a positive integer");
    }
    s.position = static_cast<std::size_t>(position);
    return s;
  }
  throw InvalidArgument("unknown noise kind '" + kind +
                        "' (expected sine+gaussian, sine+laplace, constant or impulse)");
}

namespace {

struct Generator {
  std::size_t length;
  detail::Rng& rng;

  double sine(double amplitude, double period, std::size_t n) const {
    return amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(n) / period);
  }

  std::vector<double> operator()(const noise::SineGaussian& s) const {
    if (!(s.period > 0) || !(s.sigma >= 0)) throw InvalidArgument("sine+gaussian needs period > 0, sigma >= 0");
    std::vector<double> v(length);
    for (std::size_t n = 0; n < length; ++n) v[n] = sine(s.amplitude, s.period, n) + s.sigma * rng.normal();
    return v;
  }

  std::vector<double> operator()(const noise::SineLaplace& s) const {
    if (!(s.period > 0) || !(s.b >= 0)) throw InvalidArgument("sine+laplace needs period > 0, b >= 0");
    std::vector<double> v(length);
    for (std::size_t n = 0; n < length; ++n) v[n] = sine(s.amplitude, s.period, n) + rng.laplace(s.b);
    return v;
  }

  std::vector<double> operator()(const noise::Constant& s) const { return std::vector<double>(length, s.c); }

  std::vector<double> operator()(const noise::Impulse& s) const {
    if (s.position < 1 || s.position > length) {
      throw InvalidArgument("impulse position " + std::to_string(s.position) + " outside 1.." +
                            std::to_string(length));
    }
    std::vector<double> v(length, 0.0);
    v[s.position - 1] = s.height;
    return v;
  }
};

}  // namespace

Signal generate_signal(const NoiseSpec& spec, std::size_t length, std::uint64_t seed) {
  if (length < Signal::kMinLength) {
    throw InvalidArgument("signal length must be at least 3, got " + std::to_string(length));
  }
  detail::Rng rng(seed);
  return Signal(std::visit(Generator{length, rng}, spec));
}

std::vector<double> read_csv_numbers(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string cell = trim(line);
    if (cell.empty()) continue;
    const auto value = parse_number(cell);
    if (!value) {
      if (!seen_content) {
        seen_content = true;  // header
        continue;
      }
      throw FormatError("not a number: '" + cell + "'", line_no);
    }
    seen_content = true;
    values.push_back(*value);
  }
  if (in.bad()) throw IoError("read failed");
  return values;
}

namespace {

std::vector<double> read_json_numbers(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_array()) throw FormatError("JSON signal must be a flat array of numbers");
  std::vector<double> values;
  values.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_number()) {
      throw FormatError("JSON signal element " + std::to_string(i) + " is not a number");
    }
    values.push_back(doc[i].get<double>());
  }
  return values;
}

}  // namespace

Signal load_signal(std::istream& in, SignalFormat format) {
  return Signal(format == SignalFormat::Csv ? read_csv_numbers(in) : read_json_numbers(in));
}

SignalFormat format_for_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    std::string ext = path.substr(dot + 1);
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == "json") return SignalFormat::Json;
  }
  return SignalFormat::Csv;
}

Signal load_signal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return load_signal(in, format_for_path(path));
}

void save_signal(std::ostream& out, const Signal& signal, SignalFormat format) {
  if (format == SignalFormat::Csv) {
    for (double v : signal.values()) out << format_double(v) << '\n';
  } else {
    nlohmann::json doc = nlohmann::json::array();
    for (double v : signal.values()) doc.push_back(v);
    out << dump_json(doc) << '\n';
  }
}

void save_signal_file(const std::string& path, const Signal& signal) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save_signal(out, signal, format_for_path(path));
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace optwin
