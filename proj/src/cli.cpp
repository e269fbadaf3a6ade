#include "optwin/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <limits>
#include <ostream>

#include "optwin/errors.hpp"
#include "optwin/json_writer.hpp"
#include "optwin/optimizer.hpp"
#include "optwin/oracle.hpp"
#include "optwin/signal.hpp"
#include "optwin/smoothers.hpp"
#include "optwin/spectral.hpp"

namespace optwin::cli {

namespace {

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw IoError("write to '" + path + "' failed");
}

std::string csv_lines(std::span<const double> values) {
  std::string text;
  for (double v : values) text += format_double(v) + "\n";
  return text;
}

oracle::CheckReport merge(oracle::CheckReport acc, const oracle::CheckReport& next) {
  const auto total = acc.trials + next.trials;
  if (total > 0) {
    acc.mean_margin = (acc.mean_margin * static_cast<double>(acc.trials) +
                       next.mean_margin * static_cast<double>(next.trials)) /
                      static_cast<double>(total);
  }
  acc.trials = total;
  acc.max_deviation = std::max(acc.max_deviation, next.max_deviation);
  acc.worst_ratio = std::max(acc.worst_ratio, next.worst_ratio);
  acc.min_margin = std::min(acc.min_margin, next.min_margin);
  acc.max_margin = std::max(acc.max_margin, next.max_margin);
  if (acc.passed && !next.passed) acc.counterexample = next.counterexample;
  acc.passed = acc.passed && next.passed;
  return acc;
}

struct GenerateArgs {
  std::string kind;
  std::size_t length = 0;
  std::uint64_t seed = 0;
  std::string out;
};

struct AutocorrArgs {
  std::string in;
  std::string method = "fft";
  std::string out;
};

struct SmoothArgs {
  std::string in;
  std::size_t length = 0;
  std::string weights;
  std::string loss;
  std::string out;
};

struct OptimizeArgs {
  std::string in;
  std::string loss;
  double epsilon = 0.0;
  std::size_t max_length = 0;
  std::string report;
  bool timings = false;
};

struct VerifyArgs {
  std::string check;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string report;
  std::string in;
  std::string loss = "squared";
  double epsilon = 0.0;
  std::size_t signals = 5;
  std::size_t min_length = 0;
  std::size_t max_length = 0;
};

int do_generate(const GenerateArgs& a, std::ostream& out) {
  const Signal s = generate_signal(parse_noise_spec(a.kind), a.length, a.seed);
  std::ostringstream text;
  save_signal(text, s, format_for_path(a.out));
  write_text(a.out, text.str(), out);
  return kExitOk;
}

int do_autocorr(const AutocorrArgs& a, std::ostream& out) {
  const Signal s = load_signal_file(a.in);
  const Autocorrelation r = a.method == "naive" ? autocorr_naive(s) : autocorr_fft(s);
  write_text(a.out, csv_lines(r.values()), out);
  return kExitOk;
}

int do_smooth(const SmoothArgs& a, std::ostream& out) {
  const Signal s = load_signal_file(a.in);
  const LossKind loss = parse_loss(a.loss);
  const WeightWindow w = a.weights.empty() ? make_uniform(a.length, (a.length - 1) / 2) : load_weights_file(a.weights);
  const SmoothedSignal x =
      loss.tag() == LossKind::Tag::Squared ? weighted_mean_filter(s, w) : weighted_median_filter(s, w);
  write_text(a.out, csv_lines(x.values), out);
  return kExitOk;
}

int do_optimize(const OptimizeArgs& a, std::ostream& out) {
  const Signal s = load_signal_file(a.in);
  const LossKind loss = parse_loss(a.loss);
  const OptimizeOptions options{a.epsilon, a.max_length};
  const OptimizationReport report =
      loss.tag() == LossKind::Tag::Squared ? best_mean_window(s, options) : best_median_window(s, options);
  write_text(a.report, dump_json(report.to_json(a.timings)) + "\n", out);
  return kExitOk;
}

int do_verify(const VerifyArgs& a, std::ostream& out) {
  oracle::SizeRange sizes;
  if (a.check == "concavity") sizes = {5, 65};
  if (a.check == "vertex" || a.check == "onehot") sizes = {5, 33};
  if (a.min_length) sizes.min_length = a.min_length;
  if (a.max_length) sizes.max_length = a.max_length;

  std::optional<Signal> given;
  if (!a.in.empty()) given = load_signal_file(a.in);

  // Signals for the per-signal checks: the given one, or seeded random ones.
  auto signals = [&](std::size_t count) {
    std::vector<Signal> out_signals;
    if (given) {
      out_signals.push_back(*given);
      return out_signals;
    }
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t s = a.seed + 0x51ed2701ULL * (i + 1);
      const std::size_t n = sizes.min_length + static_cast<std::size_t>(s % (sizes.max_length - sizes.min_length + 1));
      out_signals.push_back(oracle::random_signal(n, s));
    }
    return out_signals;
  };

  oracle::CheckReport report;
  if (a.check == "reduction") {
    report = oracle::verify_reduction(a.trials, a.seed, sizes);
  } else if (a.check == "concavity") {
    report = oracle::verify_concavity_abs(a.trials, a.seed, sizes);
  } else if (a.check == "psd") {
    report = oracle::verify_psd(a.trials, a.seed, sizes);
  } else if (a.check == "vertex") {
    const LossKind loss = parse_loss(a.loss);
    bool first = true;
    std::uint64_t offset = 0;
    for (const Signal& y : signals(a.signals)) {
      auto r = oracle::verify_vertex_optimality(y, a.trials, a.seed + offset++, loss, a.epsilon);
      report = first ? r : merge(std::move(report), r);
      first = false;
    }
    report.seed = a.seed;
  } else if (a.check == "onehot") {
    bool first = true;
    for (const Signal& y : signals(a.trials)) {
      auto r = oracle::verify_onehot_degeneracy(y);
      report = first ? r : merge(std::move(report), r);
      first = false;
    }
    report.seed = a.seed;
  } else {
    throw InvalidArgument("unknown check '" + a.check + "'");
  }
  write_text(a.report, dump_json(report.to_json()) + "\n", out);
  return report.passed ? kExitOk : kExitDomain;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal tapered-window smoothing: find the best moving average / median length"};
  app.name(argv.empty() ? "optwin" : argv.front());
  app.require_subcommand(1);

  std::function<int()> action;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic signal");
  generate->add_option("--kind", gen.kind, "sine+gaussian:amplitude=1,period=16,sigma=0.1 | sine+laplace:...,b=0.1 | constant:c=2 | impulse:position=3,height=10")
      ->required();
  generate->add_option("--length", gen.length, "Number of samples (>= 3)")->required();
  generate->add_option("--seed", gen.seed, "PRNG seed")->required();
  generate->add_option("--out", gen.out, "Output file (.csv or .json)")->required();
  generate->callback([&] { action = [&] { return do_generate(gen, out); }; });

  AutocorrArgs ac;
  auto* autocorr = app.add_subcommand("autocorr", "Cyclic autocorrelation r_0..r_{N-1} as CSV");
  autocorr->add_option("--in", ac.in, "Signal file")->required();
  autocorr->add_option("--method", ac.method, "fft or naive")->check(CLI::IsMember({"fft", "naive"}));
  autocorr->add_option("--out", ac.out, "Output CSV")->required();
  autocorr->callback([&] { action = [&] { return do_autocorr(ac, out); }; });

  SmoothArgs sm;
  auto* smooth = app.add_subcommand("smooth", "Apply a moving average or moving median");
  smooth->add_option("--in", sm.in, "Signal file")->required();
  auto* length_opt = smooth->add_option("--length", sm.length, "Odd uniform window length");
  auto* weights_opt = smooth->add_option("--weights", sm.weights, "Weights CSV (2K+1 values, center in the middle)");
  length_opt->excludes(weights_opt);
  smooth->add_option("--loss", sm.loss, "squared (mean) or absolute (median)")->required();
  smooth->add_option("--out", sm.out, "Output CSV")->required();
  smooth->callback([&] {
    if (sm.weights.empty() && length_opt->count() == 0) throw CLI::RequiredError("--length or --weights");
    action = [&] { return do_smooth(sm, out); };
  });

  OptimizeArgs op;
  auto* optimize = app.add_subcommand("optimize", "Find the optimal tapered window by vertex enumeration");
  optimize->add_option("--in", op.in, "Signal file")->required();
  optimize->add_option("--loss", op.loss, "squared or absolute")->required();
  optimize->add_option("--epsilon", op.epsilon, "Center weight boost (>= 0)");
  optimize->add_option("--max-length", op.max_length, "Largest window length considered");
  optimize->add_option("--report", op.report, "JSON report file (stdout if omitted)");
  optimize->add_flag("--timings", op.timings, "Include wall times in the report");
  optimize->callback([&] { action = [&] { return do_optimize(op, out); }; });

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "Run a brute-force check and write a JSON report");
  verify->add_option("--check", vf.check, "reduction | vertex | onehot | concavity | psd")
      ->required()
      ->check(CLI::IsMember({"reduction", "vertex", "onehot", "concavity", "psd"}));
  verify->add_option("--trials", vf.trials, "Number of trials")->required();
  verify->add_option("--seed", vf.seed, "Base seed")->required();
  verify->add_option("--report", vf.report, "JSON report file (stdout if omitted)");
  verify->add_option("--in", vf.in, "Signal for vertex/onehot checks (random signals if omitted)");
  verify->add_option("--loss", vf.loss, "Loss for the vertex check")->check(CLI::IsMember({"squared", "absolute"}));
  verify->add_option("--epsilon", vf.epsilon, "Epsilon for the vertex check");
  verify->add_option("--signals", vf.signals, "Random signals for the vertex check");
  verify->add_option("--min-length", vf.min_length, "Smallest random signal length");
  verify->add_option("--max-length", vf.max_length, "Largest random signal length");
  verify->callback([&] { action = [&] { return do_verify(vf, out); }; });

  std::vector<const char*> raw;
  raw.reserve(argv.size() + 1);
  if (argv.empty()) raw.push_back("optwin");
  for (const auto& a : argv) raw.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitIo;
  }

  try {
    return action();
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace optwin::cli
