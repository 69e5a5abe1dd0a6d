#pragma once

// Monte Carlo integration experiments comparing estimator variance across
// design families.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "noa/noa.hpp"
#include "noa/sampling.hpp"

namespace noa {

struct Integrand {
  std::string name;
  std::size_t d = 0;
  std::function<double(std::span<const double>)> eval;
  double true_integral = 0.0;
};

inline const std::vector<std::string>& builtin_integrand_names() {
  static const std::vector<std::string> names = {"ADD-LIN", "ADD-EXP", "BILIN", "TRILIN", "PROD-EXP", "CONST"};
  return names;
}

/// Built-in integrands over [0,1)^d with analytic integrals.
inline Integrand builtin_integrand(std::string_view name, std::size_t d) {
  constexpr double e = std::numbers::e;
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "integrand dimension must be at least 1");
  if (name == "ADD-LIN")
    return {"ADD-LIN", d, [](std::span<const double> x) {
              double sum = 0.0;
              for (double v : x) sum += v - 0.5;
              return sum;
            },
            0.0};
  if (name == "ADD-EXP")
    return {"ADD-EXP", d, [](std::span<const double> x) {
              double sum = 0.0;
              for (double v : x) sum += std::exp(v);
              return sum;
            },
            static_cast<double>(d) * (e - 1.0)};
  if (name == "BILIN") {
    if (d < 2) throw Error(ErrorKind::DimensionMismatch, "BILIN needs d >= 2");
    return {"BILIN", d, [](std::span<const double> x) { return (x[0] - 0.5) * (x[1] - 0.5); }, 0.0};
  }
  if (name == "TRILIN") {
    if (d < 3) throw Error(ErrorKind::DimensionMismatch, "TRILIN needs d >= 3");
    return {"TRILIN", d, [](std::span<const double> x) { return (x[0] - 0.5) * (x[1] - 0.5) * (x[2] - 0.5); }, 0.0};
  }
  if (name == "PROD-EXP")
    return {"PROD-EXP", d, [](std::span<const double> x) {
              double sum = 0.0;
              for (double v : x) sum += v;
              return std::exp(sum);
            },
            std::pow(e - 1.0, static_cast<double>(d))};
  if (name == "CONST") return {"CONST", d, [](std::span<const double>) { return 1.0; }, 1.0};
  throw Error(ErrorKind::InvalidArgument, "unknown integrand '" + std::string(name) + "'");
}

/// Sample mean of f over the points.
inline double estimate(const PointSet& points, const Integrand& f) {
  if (points.dim() != f.d)
    throw Error(ErrorKind::DimensionMismatch, "points have d=" + std::to_string(points.dim()) + ", integrand " +
                                                  f.name + " expects d=" + std::to_string(f.d));
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) sum += f.eval(points.point(i));
  return sum / static_cast<double>(points.size());
}

enum class DesignKind { Iid, Lhs, Oa2, Tang, Noa3 };

inline std::string_view to_string(DesignKind kind) noexcept {
  switch (kind) {
    case DesignKind::Iid: return "iid";
    case DesignKind::Lhs: return "lhs";
    case DesignKind::Oa2: return "oa2";
    case DesignKind::Tang: return "tang";
    case DesignKind::Noa3: return "noa3";
  }
  return "?";
}

inline DesignKind parse_design_kind(std::string_view name) {
  for (auto kind : {DesignKind::Iid, DesignKind::Lhs, DesignKind::Oa2, DesignKind::Tang, DesignKind::Noa3})
    if (to_string(kind) == name) return kind;
  throw Error(ErrorKind::InvalidArgument, "unknown design kind '" + std::string(name) + "'");
}

/// Randomized point set of the given kind, uniform placement within cells.
/// The oa2 kind is sampled at its own (coarse) s levels.
inline PointSet sample_kind(DesignKind kind, std::uint64_t n, std::size_t d, Seed seed) {
  const Seed jitter = Stream::derive(seed, {0x6a17});
  switch (kind) {
    case DesignKind::Iid: {
      std::vector<double> coords(n * d);
      Stream rng(seed, {0x11d});
      for (auto& x : coords) x = rng.uniform();
      return PointSet(n, d, std::move(coords));
    }
    case DesignKind::Lhs: return to_points(construct_lhs(n, d, seed), Placement::Uniform, jitter);
    case DesignKind::Oa2: return to_points(construct_oa2(n, d, seed), Placement::Uniform, jitter);
    case DesignKind::Tang: return to_points(construct_tang(n, d, seed).design, Placement::Uniform, jitter);
    case DesignKind::Noa3: return to_points(construct_noa(plan_noa(n, d), seed).design, Placement::Uniform, jitter);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown design kind");
}

struct BenchConfig {
  std::uint64_t n = 64;
  std::size_t d = 3;
  std::vector<DesignKind> kinds;
  std::string integrand = "ADD-LIN";
  std::size_t reps = 1000;
  Seed seed = 0;
};

struct KindStats {
  DesignKind kind = DesignKind::Iid;
  double mean = 0.0;
  double var = 0.0;  ///< unbiased, R-1 denominator; 0 when R = 1
  double mse = 0.0;  ///< var + (mean - true)^2
  std::vector<double> estimates;

  /// Standard error of the mean estimate.
  [[nodiscard]] double std_error() const noexcept {
    return estimates.empty() ? 0.0 : std::sqrt(var / static_cast<double>(estimates.size()));
  }
};

struct BenchReport {
  BenchConfig config;
  double true_integral = 0.0;
  bool degenerate_reps = false;  ///< R = 1, variances are not estimable
  std::vector<KindStats> kinds;

  [[nodiscard]] const KindStats& stats(DesignKind kind) const {
    for (const auto& k : kinds)
      if (k.kind == kind) return k;
    throw Error(ErrorKind::InvalidArgument, "kind " + std::string(to_string(kind)) + " not in report");
  }
};

/// Replication r of kind k uses a seed derived from (master seed, r, k), so
/// results do not depend on execution order.
inline BenchReport run_bench(const BenchConfig& config) {
  if (config.reps < 1) throw Error(ErrorKind::InvalidArgument, "need at least one replication");
  if (config.kinds.empty()) throw Error(ErrorKind::InvalidArgument, "no design kinds requested");
  const auto f = builtin_integrand(config.integrand, config.d);

  BenchReport report{config, f.true_integral, config.reps == 1, {}};
  for (const auto kind : config.kinds) {
    KindStats stats{kind, 0.0, 0.0, 0.0, {}};
    stats.estimates.reserve(config.reps);
    for (std::size_t r = 0; r < config.reps; ++r) {
      const Seed rep_seed = Stream::derive(config.seed, {r, static_cast<std::uint64_t>(kind)});
      try {
        stats.estimates.push_back(estimate(sample_kind(kind, config.n, config.d, rep_seed), f));
      } catch (const Error& e) {
        throw Error(e.kind(), "kind " + std::string(to_string(kind)) + ": " + e.message());
      }
    }
    double sum = 0.0;
    for (double v : stats.estimates) sum += v;
    stats.mean = sum / static_cast<double>(config.reps);
    if (config.reps > 1) {
      double ss = 0.0;
      for (double v : stats.estimates) ss += (v - stats.mean) * (v - stats.mean);
      stats.var = ss / static_cast<double>(config.reps - 1);
    }
    const double bias = stats.mean - f.true_integral;
    stats.mse = stats.var + bias * bias;
    report.kinds.push_back(std::move(stats));
  }
  return report;
}

struct RateConfig {
  std::vector<std::uint64_t> ns;
  std::size_t d = 3;
  DesignKind kind = DesignKind::Lhs;
  std::string integrand = "ADD-EXP";
  std::size_t reps = 1000;
  Seed seed = 0;
};

struct RateResult {
  DesignKind kind = DesignKind::Lhs;
  std::vector<std::uint64_t> ns;
  std::vector<double> variances;
  /// Least-squares slope of log variance against log n; empty when some
  /// variance is zero.
  std::optional<double> slope;
  [[nodiscard]] bool degenerate() const noexcept { return !slope.has_value(); }
};

inline RateResult fit_rate(const RateConfig& config) {
  if (config.ns.size() < 3) throw Error(ErrorKind::InvalidArgument, "rate fit needs at least three values of n");
  if (config.reps < 2) throw Error(ErrorKind::InvalidArgument, "rate fit needs at least two replications");
  RateResult result{config.kind, config.ns, {}, std::nullopt};
  for (const auto n : config.ns) {
    const auto report = run_bench({n, config.d, {config.kind}, config.integrand, config.reps, config.seed});
    result.variances.push_back(report.kinds.front().var);
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < config.ns.size(); ++i) {
    if (!(result.variances[i] > 0.0)) return result;
    xs.push_back(std::log(static_cast<double>(config.ns[i])));
    ys.push_back(std::log(result.variances[i]));
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / m;
    my += ys[i] / m;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) return result;
  result.slope = sxy / sxx;
  return result;
}

/// One row per replication, one column per kind.
inline void write_estimates(std::ostream& out, const BenchReport& report) {
  out << "replication";
  for (const auto& k : report.kinds) out << ',' << to_string(k.kind);
  out << '\n';
  char buf[32];
  for (std::size_t r = 0; r < report.config.reps; ++r) {
    out << r;
    for (const auto& k : report.kinds) {
      std::snprintf(buf, sizeof buf, "%.17g", k.estimates[r]);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace noa
