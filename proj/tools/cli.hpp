#pragma once

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "missmass/missmass.hpp"

namespace missmass::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kSizeLimit = 3, kIoError = 4 };

enum class Format { kJson, kCsv };
enum class Spacing { kLinear, kGeometric };

/// Alpha sampled at `steps` values of b in [b_min, b_max]; columns b,val.
inline io::Table sweep_table(double b_min, double b_max, std::size_t steps, Spacing spacing) {
  if (!(b_min > 0.0) || !(b_max > b_min) || !std::isfinite(b_max)) {
    throw Error(ErrorCode::kInvalidB, "need 0 < b_min < b_max");
  }
  if (steps < 2) throw Error(ErrorCode::kInvalidArgument, "steps must be >= 2");
  io::Table table{{"b", "val"}, {}};
  table.rows.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
    double b = spacing == Spacing::kLinear ? b_min + t * (b_max - b_min)
                                           : b_min * std::pow(b_max / b_min, t);
    if (i + 1 == steps) b = b_max;
    table.rows.push_back({b, solve_alpha(AlphabetRatio::finite(b)).alpha});
  }
  return table;
}

/// objective_alpha on a grid x grid lattice of [0, 1] x (0, c_max]; columns w,c,alpha.
inline io::Table landscape_table(double c_max, std::size_t grid) {
  if (!(c_max > 0.0) || !std::isfinite(c_max)) {
    throw Error(ErrorCode::kInvalidArgument, "c_max must be positive");
  }
  if (grid < 2) throw Error(ErrorCode::kInvalidArgument, "grid must be >= 2");
  io::Table table{{"w", "c", "alpha"}, {}};
  table.rows.reserve(grid * grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(grid - 1);
    for (std::size_t j = 0; j < grid; ++j) {
      const double c = c_max * static_cast<double>(j + 1) / static_cast<double>(grid);
      table.rows.push_back({w, c, objective_alpha(w, c)});
    }
  }
  return table;
}

inline AlphabetBound parse_alphabet(const std::string& text) {
  if (text == "inf" || text == "INF" || text == "infinity") return AlphabetBound::infinite();
  std::uint64_t m = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), m);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kInvalidAlphabet, "m must be a positive integer or 'inf', got '" + text + "'");
  }
  if (m < 2) throw Error(ErrorCode::kInvalidAlphabet, "m must be >= 2, got " + text);
  return AlphabetBound::finite(m);
}

inline io::Record to_record(const VarianceEstimate& v) {
  io::Record r;
  r.add("method", std::string(to_string(v.method))).add("n", v.n).add("value", v.value);
  return r;
}

inline io::Record to_record(const SimulationEstimate& s, std::uint64_t n) {
  io::Record r;
  r.add("n", n)
      .add("trials", s.trials)
      .add("mean", s.mean)
      .add("variance", s.variance)
      .add("se_mean", s.se_mean)
      .add("se_variance", s.se_variance)
      .add("seed", s.seed);
  return r;
}

inline io::Record to_record(const GapReport& g) {
  io::Record r;
  r.add("n", g.n)
      .add("mode", std::string(to_string(g.mode)))
      .add("true_variance", g.true_variance)
      .add("subgamma_v", g.subgamma_v)
      .add("iid_major_v", g.iid_major_v)
      .add("gap_subgamma", g.gap_subgamma)
      .add("gap_iid", g.gap_iid);
  return r;
}

namespace detail {

struct Options {
  Format format = Format::kJson;
  std::string out;
  std::string dist;
  std::uint64_t n = 0;
  std::string m = "inf";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double b_min = 0.05;
  double b_max = 0.9;
  std::size_t steps = 200;
  Spacing spacing = Spacing::kLinear;
  double c_max = 5.0;
  std::size_t grid = 50;
  std::string method = "exact";
  std::string mode = "exact";
};

// Input-side failures (bad distribution file included) map to 2.
inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTooLarge: return kSizeLimit;
    case ErrorCode::kIo: return kIoError;
    default: return kInputError;
  }
}

inline DiscreteDistribution load_distribution(const std::string& path) {
  try {
    return read_distribution(path);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw Error(ErrorCode::kParse, e.what());
    throw;
  }
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty() || out_path == "-") {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot open " + out_path + " for writing");
  file << text;
  file.flush();
  if (!file) throw Error(ErrorCode::kIo, "write to " + out_path + " failed");
}

inline std::string render(const io::Record& rec, Format format) {
  std::ostringstream s;
  if (format == Format::kJson) {
    io::write_json(s, rec);
  } else {
    io::write_csv(s, rec);
  }
  return s.str();
}

inline std::string render(const io::Table& table) {
  std::ostringstream s;
  io::write_table(s, table);
  return s.str();
}

}  // namespace detail

/// Runs the command line (args excludes the program name). Returns the exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options opt;
  CLI::App app{"Missing-mass variance: exact values, approximations and extremal bounds",
               "missmass"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"json", Format::kJson}, {"csv", Format::kCsv}};
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  const auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out, "Output path (default stdout)");
  };
  const auto add_n = [&](CLI::App* sub) {
    sub->add_option("--n", opt.n, "Sample size")->required()->check(CLI::Range(
        std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  };
  const auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", opt.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  };

  auto* variance = app.add_subcommand("variance", "Variance of the missing mass");
  variance->add_option("--dist", opt.dist, "Distribution file")->required();
  add_n(variance);
  variance
      ->add_option("--method", opt.method, "exact | thm1 | poisson")
      ->check(CLI::IsMember({"exact", "thm1", "poisson"}));
  add_format(variance);
  add_out(variance);
  add_workers(variance);

  auto* maximize = app.add_subcommand("maximize", "Extremal variance and worst-case distribution");
  add_n(maximize);
  maximize->add_option("--m", opt.m, "Alphabet size, integer >= 2 or 'inf'");
  add_format(maximize);
  add_out(maximize);

  const std::map<std::string, Spacing> spacings{{"linear", Spacing::kLinear},
                                                {"geometric", Spacing::kGeometric}};
  auto* sweep = app.add_subcommand("sweep", "Extremal constant alpha as a function of b = m/n");
  sweep->add_option("--b-min", opt.b_min, "Smallest b");
  sweep->add_option("--b-max", opt.b_max, "Largest b");
  sweep->add_option("--steps", opt.steps, "Number of rows");
  sweep->add_option("--spacing", opt.spacing, "linear | geometric")
      ->transform(CLI::CheckedTransformer(spacings, CLI::ignore_case));
  add_out(sweep);

  auto* landscape = app.add_subcommand("landscape", "Objective alpha(w, c) on a lattice");
  landscape->add_option("--c-max", opt.c_max, "Upper end of the c range");
  landscape->add_option("--grid", opt.grid, "Lattice points per axis");
  add_out(landscape);

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo mean and variance of M0");
  simulate->add_option("--dist", opt.dist, "Distribution file")->required();
  add_n(simulate);
  simulate->add_option("--trials", opt.trials, "Replications (>= 2)");
  simulate->add_option("--seed", opt.seed, "Master seed");
  add_format(simulate);
  add_out(simulate);
  add_workers(simulate);

  auto* gap = app.add_subcommand("gap", "True variance vs concentration variance factors");
  gap->add_option("--dist", opt.dist, "Distribution file")->required();
  add_n(gap);
  gap->add_option("--mode", opt.mode, "exact | poisson")
      ->check(CLI::IsMember({"exact", "poisson"}));
  add_format(gap);
  add_out(gap);
  add_workers(gap);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (variance->parsed()) {
      const auto dist = detail::load_distribution(opt.dist);
      const auto method = opt.method == "thm1"      ? VarianceMethod::kThm1
                          : opt.method == "poisson" ? VarianceMethod::kPoissonized
                                                    : VarianceMethod::kExact;
      const auto v = compute_variance(dist, opt.n, method, opt.workers);
      detail::emit(detail::render(to_record(v), opt.format), opt.out, out);
    } else if (maximize->parsed()) {
      const AlphabetBound m = parse_alphabet(opt.m);
      const auto sol = solve_alpha(AlphabetRatio::of(m, opt.n));
      const auto worst = worst_case_distribution(opt.n, m);
      io::Record r;
      r.add("n", opt.n)
          .add("m", m.is_infinite() ? std::string("inf") : std::to_string(m.value()))
          .add("alpha", sol.alpha)
          .add("w", sol.w)
          .add("c", sol.c)
          .add("regime", std::string(to_string(sol.regime)))
          .add("atom_count", worst.atom_count)
          .add("atom_mass", worst.atom_mass)
          .add("dirac_mass", worst.dirac_mass)
          .add("variance_estimate", sol.alpha / static_cast<double>(opt.n));
      detail::emit(detail::render(r, opt.format), opt.out, out);
    } else if (sweep->parsed()) {
      detail::emit(detail::render(sweep_table(opt.b_min, opt.b_max, opt.steps, opt.spacing)),
                   opt.out, out);
    } else if (landscape->parsed()) {
      detail::emit(detail::render(landscape_table(opt.c_max, opt.grid)), opt.out, out);
    } else if (simulate->parsed()) {
      const auto dist = detail::load_distribution(opt.dist);
      const auto est = estimate_variance(dist, opt.n, opt.trials, opt.seed, opt.workers);
      detail::emit(detail::render(to_record(est, opt.n), opt.format), opt.out, out);
    } else if (gap->parsed()) {
      const auto dist = detail::load_distribution(opt.dist);
      const auto mode = opt.mode == "poisson" ? GapMode::kPoissonized : GapMode::kExact;
      const auto report = gap_report(dist, opt.n, mode, opt.workers);
      detail::emit(detail::render(to_record(report), opt.format), opt.out, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return detail::exit_code_for(e.code());
  }
  return kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace missmass::cli
