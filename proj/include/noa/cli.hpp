#pragma once

// Command-line front end. Exit codes: 0 ok, 1 usage or I/O error, 2 invalid
// construction input (plan errors), 3 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "noa/bench.hpp"
#include "noa/bush.hpp"
#include "noa/noa.hpp"
#include "noa/sampling.hpp"

namespace noa::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kPlanError = 2, kVerifyFailed = 3 };

inline std::string format_ladder(const std::vector<Rung>& ladder) {
  std::string out;
  for (const auto& rung : ladder) {
    if (!out.empty()) out += "  ";
    out += std::to_string(rung.levels) + "," + std::to_string(rung.strength) + "," + std::to_string(rung.lambda);
  }
  return out;
}

inline std::string format_report(const StrengthReport& report, Level levels) {
  std::string out;
  if (report.ok)
    return "ok t=" + std::to_string(report.t) + " s=" + std::to_string(levels) +
           " lambda=" + std::to_string(report.lambda);
  const auto& v = *report.violation;
  out = "violation t=" + std::to_string(report.t) + " s=" + std::to_string(levels) + " columns=(";
  for (std::size_t i = 0; i < v.columns.size(); ++i) out += (i ? "," : "") + std::to_string(v.columns[i]);
  out += ") levels=(";
  for (std::size_t i = 0; i < v.levels.size(); ++i) out += (i ? "," : "") + std::to_string(v.levels[i]);
  std::ostringstream expected;
  expected << v.expected;
  out += ") observed=" + std::to_string(v.observed) + " expected=" + expected.str();
  return out;
}

inline nlohmann::json report_to_json(const BenchReport& report) {
  nlohmann::json j;
  j["n"] = report.config.n;
  j["d"] = report.config.d;
  j["reps"] = report.config.reps;
  j["seed"] = report.config.seed;
  j["integrand"] = report.config.integrand;
  j["true_integral"] = report.true_integral;
  j["degenerate_reps"] = report.degenerate_reps;
  if (report.degenerate_reps) j["warning"] = "R=1: variance is not estimable and is reported as 0";
  auto& kinds = j["kinds"];
  kinds = nlohmann::json::object();
  for (const auto& k : report.kinds)
    kinds[std::string(to_string(k.kind))] = {{"mean", k.mean}, {"var", k.var}, {"mse", k.mse},
                                              {"r", report.config.reps}, {"n", report.config.n},
                                              {"d", report.config.d}};
  return j;
}

inline nlohmann::json rates_to_json(const std::vector<RateResult>& results, const RateConfig& config) {
  nlohmann::json j;
  j["d"] = config.d;
  j["reps"] = config.reps;
  j["seed"] = config.seed;
  j["integrand"] = config.integrand;
  j["n"] = config.ns;
  auto& rates = j["rates"];
  rates = nlohmann::json::object();
  for (const auto& r : results) {
    nlohmann::json entry{{"var", r.variances}, {"degenerate", r.degenerate()}};
    entry["slope"] = r.slope ? nlohmann::json(*r.slope) : nlohmann::json(nullptr);
    rates[std::string(to_string(r.kind))] = entry;
  }
  return j;
}

namespace detail {

struct GenArgs {
  std::string kind;
  std::optional<std::uint64_t> n;
  std::optional<std::size_t> d;
  std::optional<std::uint32_t> s;
  std::size_t t = 2;
  Seed seed = 0;
  std::string out;
};

struct VerifyArgs {
  std::string in;
  std::size_t t = 1;
  std::optional<Level> collapse;
};

struct SampleArgs {
  std::string in;
  std::string mode = "uniform";
  Seed seed = 0;
  std::string out;
};

struct BenchArgs {
  std::optional<std::uint64_t> n;
  std::size_t d = 3;
  std::vector<std::string> kinds;
  std::string integrand;
  std::size_t reps = 1000;
  Seed seed = 0;
  std::vector<std::uint64_t> rate;
  std::string estimates;
};

inline Design load_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return read_design(in);
}

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
  writer(out);
  out.flush();
  if (!out) throw std::ios_base::failure("failed writing " + path);
}

inline int gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  auto need = [&](const auto& opt, const char* name) {
    if (!opt) throw Error(ErrorKind::InvalidArgument, std::string("--kind ") + a.kind + " requires " + name);
    return *opt;
  };
  std::optional<NestedDesign> nested;
  if (a.kind == "bush") {
    const auto s = need(a.s, "--s");
    auto design = bush_construct(FieldSpec::of_order(s), a.t);
    if (a.n && *a.n != design.runs())
      throw Error(ErrorKind::InvalidArgument, "bush design over GF(" + std::to_string(s) + ") with t=" +
                                                  std::to_string(a.t) + " has " + std::to_string(design.runs()) +
                                                  " runs, not " + std::to_string(*a.n));
    if (a.d) {
      if (*a.d < 1 || *a.d > design.factors())
        throw Error(ErrorKind::InvalidArgument, "bush design has at most " + std::to_string(design.factors()) +
                                                    " columns");
      std::vector<std::size_t> cols(*a.d);
      std::iota(cols.begin(), cols.end(), std::size_t{0});
      design = select_columns(design, cols);
    }
    const auto t = std::min(a.t, design.factors());
    nested = NestedDesign{design, {Rung{s, t, 1}}, a.seed, std::nullopt};
  } else if (a.kind == "lhs") {
    const auto n = need(a.n, "--n");
    nested = NestedDesign{construct_lhs(n, need(a.d, "--d"), a.seed), {Rung{n, 1, 1}}, a.seed, std::nullopt};
  } else if (a.kind == "tang") {
    nested = construct_tang(need(a.n, "--n"), need(a.d, "--d"), a.seed);
  } else if (a.kind == "noa3") {
    nested = construct_noa(plan_noa(need(a.n, "--n"), need(a.d, "--d")), a.seed);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown kind '" + a.kind + "'");
  }

  if (const auto failure = verify_ladder(nested->design, nested->ladder)) {
    err << "ladder verification failed at " << failure->first.levels << " levels: "
        << format_report(failure->second, static_cast<Level>(failure->first.levels)) << '\n';
    return kVerifyFailed;
  }
  if (!a.out.empty()) {
    const auto header = a.kind == "bush" ? std::string{} : ladder_header(*nested);
    write_file(a.out, [&](std::ostream& os) { write_design(os, nested->design, header); });
  }
  out << format_ladder(nested->ladder) << '\n';
  return kOk;
}

inline int verify(const VerifyArgs& a, std::ostream& out) {
  auto design = load_design(a.in);
  if (a.collapse) design = collapse(design, *a.collapse);
  const auto report = check_strength(design, a.t);
  out << format_report(report, design.levels()) << '\n';
  return report.ok ? kOk : kVerifyFailed;
}

inline int sample(const SampleArgs& a, std::ostream& out) {
  const auto design = load_design(a.in);
  const auto placement = a.mode == "midpoint" ? Placement::Midpoint : Placement::Uniform;
  const auto points = to_points(design, placement, a.seed);
  write_file(a.out, [&](std::ostream& os) { write_points(os, points); });
  out << "wrote " << points.size() << " points in " << points.dim() << " dimensions\n";
  return kOk;
}

inline int bench(const BenchArgs& a, std::ostream& out) {
  std::vector<DesignKind> kinds;
  for (const auto& k : a.kinds) kinds.push_back(parse_design_kind(k));
  if (!a.rate.empty()) {
    RateConfig config{a.rate, a.d, DesignKind::Lhs, a.integrand, a.reps, a.seed};
    std::vector<RateResult> results;
    for (auto kind : kinds) {
      config.kind = kind;
      results.push_back(fit_rate(config));
    }
    out << rates_to_json(results, config).dump(2) << '\n';
    return kOk;
  }
  if (!a.n) throw Error(ErrorKind::InvalidArgument, "bench requires --n unless --rate is given");
  const auto report = run_bench({*a.n, a.d, kinds, a.integrand, a.reps, a.seed});
  if (!a.estimates.empty()) write_file(a.estimates, [&](std::ostream& os) { write_estimates(os, report); });
  out << report_to_json(report).dump(2) << '\n';
  return kOk;
}

}  // namespace detail

/// Runs the tool on argv-style arguments (argv[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Nested orthogonal array designs: generate, verify, sample and benchmark"};
  app.require_subcommand(1);

  detail::GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Construct a design, verify its ladder and write it as CSV");
  gen->add_option("--kind", gen_args.kind, "Design family")
      ->required()
      ->check(CLI::IsMember({"bush", "lhs", "tang", "noa3"}));
  gen->add_option("--n", gen_args.n, "Number of runs");
  gen->add_option("--d", gen_args.d, "Number of factors");
  gen->add_option("--s", gen_args.s, "Field order (bush)");
  gen->add_option("--t", gen_args.t, "Strength (bush)")->capture_default_str();
  gen->add_option("--seed", gen_args.seed, "Randomization seed")->capture_default_str();
  gen->add_option("--out", gen_args.out, "Output CSV path");

  detail::VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check the strength of a design file");
  verify->add_option("--in", verify_args.in, "Design CSV")->required();
  verify->add_option("--t", verify_args.t, "Strength to check")->required();
  verify->add_option("--collapse", verify_args.collapse, "View the design at this many levels first");

  detail::SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Turn a design into points in the unit cube");
  sample->add_option("--in", sample_args.in, "Design CSV")->required();
  sample->add_option("--mode", sample_args.mode, "Placement within cells")
      ->check(CLI::IsMember({"uniform", "midpoint"}))
      ->capture_default_str();
  sample->add_option("--seed", sample_args.seed, "Jitter seed")->capture_default_str();
  sample->add_option("--out", sample_args.out, "Output points CSV")->required();

  detail::BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Compare integration variance across design kinds");
  bench->add_option("--n", bench_args.n, "Number of runs");
  bench->add_option("--d", bench_args.d, "Number of factors")->capture_default_str();
  bench->add_option("--kinds", bench_args.kinds, "Comma-separated kinds: iid,lhs,oa2,tang,noa3")
      ->required()
      ->delimiter(',');
  bench->add_option("--integrand", bench_args.integrand, "Integrand name")
      ->required()
      ->check(CLI::IsMember(builtin_integrand_names()));
  bench->add_option("--reps", bench_args.reps, "Replications")->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "Master seed")->capture_default_str();
  bench->add_option("--rate", bench_args.rate, "Comma-separated run counts for a rate fit")->delimiter(',');
  bench->add_option("--estimates", bench_args.estimates, "Write per-replication estimates CSV here");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kIoError;
  }

  try {
    if (*gen) return detail::gen(gen_args, out, err);
    if (*verify) return detail::verify(verify_args, out);
    if (*sample) return detail::sample(sample_args, out);
    if (*bench) return detail::bench(bench_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Parse:
      case ErrorKind::InvalidDesign: return kIoError;
      default: return kPlanError;
    }
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kIoError;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace noa::cli
