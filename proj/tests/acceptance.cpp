// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "noa/bench.hpp"
#include "noa/bush.hpp"
#include "noa/cli.hpp"
#include "noa/noa.hpp"
#include "noa/sampling.hpp"
#include "noa/table1.hpp"

using namespace noa;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

const std::vector<std::pair<std::uint64_t, std::size_t>> ladder_instances = {{64, 3}, {128, 3}, {81, 3}, {256, 4}};
constexpr Seed ladder_seeds = 100;

Design rows_of(const Design& d, std::size_t first, std::size_t count) {
  std::vector<Level> entries;
  for (std::size_t i = first; i < first + count; ++i) {
    const auto row = d.row(i);
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Design(count, d.factors(), d.levels(), entries);
}

double worst_centered_product(const PointSet& pts, std::size_t t) {
  double worst = 0.0;
  const std::size_t d = pts.dim();
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > t) continue;
    double sum = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double prod = 1.0;
      for (std::size_t j = 0; j < d; ++j)
        if (mask & (1u << j)) prod *= pts(i, j) - 0.5;
      sum += prod;
    }
    worst = std::max(worst, std::abs(sum / static_cast<double>(pts.size())));
  }
  return worst;
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Outcome bush_correctness() {
  for (std::uint32_t s : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    for (std::size_t t : {2u, 3u}) {
      if (t == 3 && s > 5) continue;
      const auto r = check_strength(bush_construct(FieldSpec::of_order(s), t), t);
      if (!r.ok || r.lambda != 1) return {false, fmt("s=%u t=%zu not index-1", s, t)};
    }
  }
  return {true, "all 11 (s,t) pairs strength t, lambda=1"};
}

Outcome table1_fixture() {
  const auto t1 = table1_design();
  const auto s8 = check_strength(t1, 2);
  const auto s4 = check_strength(collapse(t1, 4), 3);
  const auto s1 = check_strength(t1, 1);
  const bool pass = s8.ok && s8.lambda == 1 && s4.ok && s4.lambda == 1 && s1.ok && s1.lambda == 8;
  std::string detail = "t=2@8: ";
  if (s8.ok) {
    detail += "ok lambda=" + std::to_string(s8.lambda);
  } else {
    const auto& v = *s8.violation;
    detail += fmt("FAILS at columns (%zu,%zu) levels (%u,%u) observed %llu expected 1", v.columns[0], v.columns[1],
                  v.levels[0], v.levels[1], static_cast<unsigned long long>(v.observed));
  }
  detail += "; t=3@4: " + std::string(s4.ok ? "ok lambda=" + std::to_string(s4.lambda) : "FAILS");
  detail += "; per-column counts: " + std::string(s1.ok && s1.lambda == 8 ? "8 each" : "unbalanced");
  return {pass, detail};
}

Outcome ladder_soundness() {
  for (const auto& [n, d] : ladder_instances) {
    const auto plan = plan_noa(n, d);
    for (Seed seed = 0; seed < ladder_seeds; ++seed) {
      const auto x = construct_noa(plan, seed).design;
      const auto r1 = check_strength(x, 1);
      const auto r2 = check_strength(collapse(x, plan.s2), 2);
      const auto r3 = check_strength(collapse(x, plan.s3), 3);
      if (!(r1.ok && r1.lambda == 1 && r2.ok && r2.lambda == n / (std::uint64_t{plan.s2} * plan.s2) && r3.ok &&
            r3.lambda == n / (std::uint64_t{plan.s3} * plan.s3 * plan.s3)))
        return {false, fmt("n=%llu d=%zu seed=%llu", static_cast<unsigned long long>(n), d,
                           static_cast<unsigned long long>(seed))};
    }
  }
  return {true, "4 instances x 100 seeds, all three rungs exact"};
}

Outcome pair_coverage() {
  for (const auto& [n, d] : ladder_instances) {
    const auto plan = plan_noa(n, d);
    const std::size_t block = std::size_t{plan.s3} * plan.s3;
    for (Seed seed = 0; seed < ladder_seeds; ++seed) {
      const auto coarse = collapse(construct_noa(plan, seed).design, plan.s3);
      for (std::size_t first = 0; first < n; first += block) {
        const auto r = check_strength(rows_of(coarse, first, block), 2);
        if (!r.ok || r.lambda != 1)
          return {false, fmt("n=%llu seed=%llu block at row %zu", static_cast<unsigned long long>(n),
                             static_cast<unsigned long long>(seed), first)};
      }
    }
  }
  return {true, "every s3^2 block pairwise complete at s3 levels"};
}

Outcome midpoint_exactness() {
  double worst = 0.0;
  std::size_t checked = 0;
  auto check = [&](const Design& design, std::size_t t) {
    if (!check_strength(design, t).ok) throw Error(ErrorKind::InternalInvariant, "design lacks claimed strength");
    worst = std::max(worst, worst_centered_product(to_points(design, Placement::Midpoint), t));
    ++checked;
  };
  for (const auto& [n, d] : ladder_instances)
    for (Seed seed = 0; seed < 10; ++seed) {
      const auto nd = construct_noa(plan_noa(n, d), seed);
      for (const auto& rung : nd.ladder) check(collapse(nd.design, static_cast<Level>(rung.levels)), rung.strength);
    }
  for (std::uint32_t s : {2u, 3u, 4u, 5u, 7u})
    for (std::size_t t : {2u, 3u}) check(bush_construct(FieldSpec::of_order(s), t), t);
  for (Seed seed = 0; seed < 10; ++seed) {
    const auto tang = construct_tang(64, 4, seed);
    for (const auto& rung : tang.ladder) check(collapse(tang.design, static_cast<Level>(rung.levels)), rung.strength);
    check(construct_lhs(50, 5, seed), 1);
  }
  return {worst <= 1e-12, fmt("%zu designs, worst |mean| = %.3g (limit 1e-12)", checked, worst)};
}

Outcome unbiasedness() {
  const std::vector<DesignKind> kinds = {DesignKind::Iid, DesignKind::Lhs, DesignKind::Oa2, DesignKind::Tang,
                                         DesignKind::Noa3};
  const auto report = run_bench({64, 3, kinds, "ADD-EXP", 5000, 20240601});
  const double truth = 3.0 * (std::numbers::e - 1.0);
  bool pass = true;
  std::string detail;
  for (const auto& k : report.kinds) {
    const double z = (k.mean - truth) / k.std_error();
    pass = pass && std::abs(z) <= 4.0;
    detail += fmt("%s z=%+.2f ", std::string(to_string(k.kind)).c_str(), z);
  }
  return {pass, detail + "(limit |z| <= 4)"};
}

Outcome variance_ordering() {
  const Seed seed = 777;
  const auto lin = run_bench(
      {64, 3, {DesignKind::Iid, DesignKind::Lhs, DesignKind::Oa2, DesignKind::Noa3}, "ADD-LIN", 2000, seed});
  const auto bil = run_bench({64, 3, {DesignKind::Lhs, DesignKind::Noa3}, "BILIN", 2000, seed});
  const double lhs_iid = lin.stats(DesignKind::Lhs).var / lin.stats(DesignKind::Iid).var;
  const double noa_iid = lin.stats(DesignKind::Noa3).var / lin.stats(DesignKind::Iid).var;
  const double noa_oa2 = lin.stats(DesignKind::Noa3).var / lin.stats(DesignKind::Oa2).var;
  const double noa_lhs_bilin = bil.stats(DesignKind::Noa3).var / bil.stats(DesignKind::Lhs).var;
  const bool pass = lhs_iid < 0.1 && noa_iid < 0.1 && noa_lhs_bilin < 0.5 && noa_oa2 < 0.5;
  return {pass, fmt("ADD-LIN lhs/iid=%.2e noa3/iid=%.2e noa3/oa2=%.3g; BILIN noa3/lhs=%.3g", lhs_iid, noa_iid,
                    noa_oa2, noa_lhs_bilin)};
}

Outcome lhs_rate() {
  const std::vector<std::uint64_t> ns = {16, 64, 256, 1024};
  const auto lhs = fit_rate({ns, 3, DesignKind::Lhs, "ADD-EXP", 2000, 31});
  const auto iid = fit_rate({ns, 3, DesignKind::Iid, "ADD-EXP", 2000, 31});
  if (!lhs.slope || !iid.slope) return {false, "degenerate fit"};
  const bool pass = std::abs(*lhs.slope + 3.0) <= 0.5 && std::abs(*iid.slope + 1.0) <= 0.3;
  return {pass, fmt("lhs slope %.3f (-3 +/- 0.5), iid slope %.3f (-1 +/- 0.3)", *lhs.slope, *iid.slope)};
}

Outcome error_paths() {
  bool plan_fails = false, tang_fails = false;
  try {
    (void)plan_noa(24, 3);
  } catch (const Error& e) {
    plan_fails = e.kind() == ErrorKind::NoNontrivialPlan;
  }
  try {
    (void)construct_tang(6, 3, 0);
  } catch (const Error& e) {
    tang_fails = e.kind() == ErrorKind::NoNontrivialPlan;
  }
  std::ostringstream out, err;
  const int code = cli::run({"noa", "gen", "--kind", "noa3", "--n", "24", "--d", "3"}, out, err);
  const bool cli_fails = code == 2 && err.str().find("NoNontrivialPlan") != std::string::npos;
  return {plan_fails && tang_fails && cli_fails,
          fmt("plan_noa(24,3)=%s construct_tang(6,3)=%s gen exit=%d", plan_fails ? "NoNontrivialPlan" : "?",
              tang_fails ? "NoNontrivialPlan" : "?", code)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Bush correctness", 5, bush_correctness},
      {2, "Table 1 golden fixture", 1, table1_fixture},
      {3, "NOA ladder soundness", 60, ladder_soundness},
      {4, "Pair-coverage lemma", 60, pair_coverage},
      {5, "Midpoint exactness", 60, midpoint_exactness},
      {6, "Unbiasedness", 300, unbiasedness},
      {7, "Variance ordering", 120, variance_ordering},
      {8, "LHS rate check", 300, lhs_rate},
      {9, "Error paths", 5, error_paths},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      outcome.pass = false;
      outcome.detail += fmt(" [over runtime budget %.0f s]", c.budget_seconds);
    }
    std::printf("[%s] AC%d %s: %s (%.2f s)\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                outcome.detail.c_str(), secs);
    std::fflush(stdout);
    failed += outcome.pass ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
