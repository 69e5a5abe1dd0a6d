#pragma once

// Nested orthogonal arrays: a single n-run design that is simultaneously an
// LHS at n levels, a strength-2 OA at s2 levels and a strength-3 OA at s3
// levels, where the coarser level sets are contiguous strata of the finer ones.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "noa/bush.hpp"
#include "noa/design.hpp"
#include "noa/gf.hpp"
#include "noa/rng.hpp"

namespace noa {

/// Parameters of a strength-3 nested array with n = k3 * s3^3 = b * s2^2.
struct NoaPlan {
  std::uint64_t n = 0;
  std::size_t d = 0;
  std::uint32_t s3 = 0;  ///< largest prime power whose cube divides n
  std::uint64_t k3 = 0;  ///< n / s3^3
  std::uint32_t p = 0;
  std::uint32_t c = 0;
  std::uint64_t b = 0;   ///< k3 * s3 / p^(2c); also n / s2^2
  std::uint32_t s2 = 0;  ///< p^c * s3

  [[nodiscard]] std::uint32_t pc() const noexcept { return s2 / s3; }

  friend bool operator==(const NoaPlan&, const NoaPlan&) = default;
};

/// One level of a nested design: viewed at `levels` levels it is an OA of
/// the given strength with index lambda.
struct Rung {
  std::uint64_t levels = 0;
  std::size_t strength = 0;
  std::uint64_t lambda = 0;

  friend bool operator==(const Rung&, const Rung&) = default;
};

struct NestedDesign {
  Design design;
  std::vector<Rung> ladder;
  Seed seed = 0;
  std::optional<NoaPlan> plan;  ///< set for strength-3 designs
};

/// Header fields appended to the design CSV, e.g. `ladder=(64,1);(8,2);(4,3) seed=7`.
inline std::string ladder_header(const NestedDesign& nd) {
  std::ostringstream out;
  out << "ladder=";
  for (std::size_t i = 0; i < nd.ladder.size(); ++i) {
    if (i) out << ';';
    out << '(' << nd.ladder[i].levels << ',' << nd.ladder[i].strength << ')';
  }
  out << " seed=" << nd.seed;
  return out.str();
}

/// Empty optional when every rung holds; otherwise the failing rung and report.
inline std::optional<std::pair<Rung, StrengthReport>> verify_ladder(const Design& design,
                                                                    const std::vector<Rung>& ladder) {
  for (const auto& rung : ladder) {
    if (rung.levels > design.levels() || design.levels() % rung.levels != 0)
      return std::pair{rung, StrengthReport{rung.strength, false, 0, std::nullopt}};
    const auto view = rung.levels == design.levels() ? design : collapse(design, static_cast<Level>(rung.levels));
    auto report = check_strength(view, rung.strength);
    if (!report.ok || report.lambda != rung.lambda) return std::pair{rung, std::move(report)};
  }
  return std::nullopt;
}

namespace detail {

enum class Stage : std::uint64_t {
  StrengthThreeRelabel = 1,
  StrengthTwoRelabel = 2,
  RowShuffle = 3,
  Expand = 4,
  Lhs = 5,
};

constexpr std::uint64_t key(Stage stage) noexcept { return static_cast<std::uint64_t>(stage); }

constexpr std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) noexcept {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

/// Bush evaluation columns 1..s first; the leading-coefficient column 0 only
/// when all s+1 columns are needed.
inline std::vector<std::size_t> bush_columns(std::uint32_t s, std::size_t d) {
  std::vector<std::size_t> cols;
  for (std::size_t j = 1; j <= s && cols.size() < d; ++j) cols.push_back(j);
  if (cols.size() < d) cols.push_back(0);
  return cols;
}

/// Independently relabels the levels of every column within every block of
/// `block_rows` contiguous rows (one block per repetition).
inline Design relabel_repetitions(const Design& design, std::size_t block_rows, Seed seed, Stage stage) {
  std::vector<Level> entries = design.entries();
  const std::size_t d = design.factors();
  const std::size_t blocks = design.runs() / block_rows;
  for (std::size_t r = 0; r < blocks; ++r) {
    for (std::size_t j = 0; j < d; ++j) {
      Stream rng(seed, {key(stage), r, j});
      const auto perm = random_permutation(design.levels(), rng);
      for (std::size_t i = r * block_rows; i < (r + 1) * block_rows; ++i) entries[i * d + j] = perm[entries[i * d + j]];
    }
  }
  return Design(design.runs(), d, design.levels(), std::move(entries));
}

inline Design expand_levels(const Design& design, Seed seed, Stage stage) {
  const std::size_t n = design.runs(), d = design.factors();
  const Level s = design.levels();
  if (n % s != 0)
    throw Error(ErrorKind::UnbalancedColumn, "n=" + std::to_string(n) + " is not a multiple of s=" + std::to_string(s));
  const std::size_t width = n / s;
  if (width == 1) return design;

  std::vector<Level> entries(n * d);
  std::vector<std::vector<std::size_t>> rows_by_level(s);
  for (std::size_t j = 0; j < d; ++j) {
    for (auto& rows : rows_by_level) rows.clear();
    for (std::size_t i = 0; i < n; ++i) rows_by_level[design(i, j)].push_back(i);
    for (Level level = 0; level < s; ++level) {
      const auto& rows = rows_by_level[level];
      if (rows.size() != width)
        throw Error(ErrorKind::UnbalancedColumn, "column " + std::to_string(j) + " holds level " +
                                                     std::to_string(level) + " " + std::to_string(rows.size()) +
                                                     " times, expected " + std::to_string(width));
      Stream rng(seed, {key(stage), j, level});
      const auto offsets = random_permutation(static_cast<std::uint32_t>(width), rng);
      for (std::size_t k = 0; k < width; ++k)
        entries[rows[k] * d + j] = static_cast<Level>(level * width + offsets[k]);
    }
  }
  return Design(n, d, static_cast<Level>(n), std::move(entries));
}

inline std::optional<std::uint32_t> largest_prime_power_root(std::uint64_t n, std::uint32_t power,
                                                             std::uint64_t min_value = 2) {
  for (std::uint64_t q = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / power)) + 2; q >= min_value;
       --q) {
    const auto qp = ipow(q, power);
    if (qp <= n && n % qp == 0 && is_prime_power(q)) return static_cast<std::uint32_t>(q);
  }
  return std::nullopt;
}

inline void require_factors(std::uint64_t n, std::size_t d) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "d must be at least 1");
}

}  // namespace detail

/// Solves n = k3 s3^3, b p^(2c) = k3 s3 for the finest admissible ladder.
/// Among primes p admitting some c >= 1 with p^c + 1 >= d, the one with the
/// largest p^c wins (smaller p on ties).
inline NoaPlan plan_noa(std::uint64_t n, std::size_t d) {
  if (d < 3) throw Error(ErrorKind::InvalidArgument, "strength-3 nested arrays need d >= 3");
  const std::string fallback = "; only the trivial ladders s2 = s3 or s3 = 1 exist, use the strength-2 (tang) design";

  bool has_fourth_power = false;
  for (std::uint64_t p = 2; p * p * p * p <= n && !has_fourth_power; ++p)
    has_fourth_power = is_prime(p) && n % (p * p * p * p) == 0;
  if (!has_fourth_power)
    throw Error(ErrorKind::NoNontrivialPlan, "no prime p with p^4 dividing n=" + std::to_string(n) + fallback);

  NoaPlan plan;
  plan.n = n;
  plan.d = d;
  plan.s3 = *detail::largest_prime_power_root(n, 3);
  plan.k3 = n / detail::ipow(plan.s3, 3);
  if (d > plan.s3)
    throw Error(ErrorKind::NoNontrivialPlan,
                "d=" + std::to_string(d) + " exceeds s3=" + std::to_string(plan.s3) + " for n=" + std::to_string(n));

  const std::uint64_t blocks = plan.k3 * plan.s3;
  std::uint64_t best_pc = 0;
  for (std::uint64_t p = 2; p * p <= blocks; ++p) {
    if (!is_prime(p)) continue;
    std::uint64_t pc = 1;
    for (std::uint32_t c = 1; blocks % (pc * p * pc * p) == 0; ++c) {
      pc *= p;
      if (pc + 1 >= d && pc > best_pc) {
        best_pc = pc;
        plan.p = static_cast<std::uint32_t>(p);
        plan.c = c;
      }
    }
  }
  if (best_pc == 0)
    throw Error(ErrorKind::NoNontrivialPlan, "no prime power p^c with p^(2c) dividing k3*s3=" + std::to_string(blocks) +
                                                 " and p^c + 1 >= d=" + std::to_string(d) + fallback);
  plan.b = blocks / (best_pc * best_pc);
  plan.s2 = static_cast<std::uint32_t>(best_pc * plan.s3);
  return plan;
}

/// Each column an independent uniform permutation of 0..n-1.
inline Design construct_lhs(std::uint64_t n, std::size_t d, Seed seed) {
  detail::require_factors(n, d);
  std::vector<Level> entries(n * d);
  for (std::size_t j = 0; j < d; ++j) {
    Stream rng(seed, {detail::key(detail::Stage::Lhs), j});
    const auto perm = random_permutation(static_cast<std::uint32_t>(n), rng);
    for (std::size_t i = 0; i < n; ++i) entries[i * d + j] = perm[i];
  }
  return Design(n, d, static_cast<Level>(n), std::move(entries));
}

/// Refines a balanced s-level design to n levels: within each column the n/s
/// runs at level i receive the values i*n/s .. (i+1)*n/s - 1 in random order.
/// collapse(result, s) reproduces the input.
inline Design expand_to_lhs(const Design& design, Seed seed) {
  return detail::expand_levels(design, seed, detail::Stage::Expand);
}

/// Largest prime power s with s^2 | n and s + 1 >= d.
inline std::optional<std::uint32_t> strength_two_levels(std::uint64_t n, std::size_t d) {
  for (std::uint64_t q = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))) + 1; q >= 2; --q)
    if (q * q <= n && n % (q * q) == 0 && q + 1 >= d && is_prime_power(q)) return static_cast<std::uint32_t>(q);
  return std::nullopt;
}

/// Randomized strength-2 OA: Bush OA(s^2, d, s, 2) replicated n/s^2 times with
/// independent level permutations per repetition and column.
inline Design construct_oa2(std::uint64_t n, std::size_t d, Seed seed) {
  detail::require_factors(n, d);
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "strength-2 designs need d >= 2");
  const auto s = strength_two_levels(n, d);
  if (!s)
    throw Error(ErrorKind::NoNontrivialPlan, "no prime power s with s^2 dividing n=" + std::to_string(n) +
                                                 " and s + 1 >= d=" + std::to_string(d));
  const auto base = select_columns(bush_construct(FieldSpec::of_order(*s), 2), detail::bush_columns(*s, d));
  const auto reps = n / (std::uint64_t{*s} * *s);
  return detail::relabel_repetitions(replicate(base, reps), base.runs(), seed,
                                     detail::Stage::StrengthTwoRelabel);
}

/// OA-based Latin hypercube: strength 2 at s2 levels, strength 1 at n levels.
inline NestedDesign construct_tang(std::uint64_t n, std::size_t d, Seed seed) {
  const auto oa = construct_oa2(n, d, seed);
  NestedDesign out{expand_to_lhs(oa, seed), {}, seed, std::nullopt};
  out.ladder = {Rung{n, 1, 1}, Rung{oa.levels(), 2, n / (std::uint64_t{oa.levels()} * oa.levels())}};
  if (const auto failure = verify_ladder(out.design, out.ladder))
    throw Error(ErrorKind::InternalInvariant, "strength-2 nested design failed its rung at " +
                                                  std::to_string(failure->first.levels) + " levels");
  return out;
}

/// Strength-3 nested array.
///
/// A replicated Bush strength-3 array over GF(s3) (leading-coefficient column
/// dropped) is scaled by p^c and offset by a row-shuffled, replicated Bush
/// strength-2 array over GF(p^c), one strength-2 row per block of s3^2
/// contiguous strength-3 rows. The resulting s2-level design is then refined
/// to n levels within strata. Every rung is checked before returning.
inline NestedDesign construct_noa(const NoaPlan& plan, Seed seed) {
  if (plan != plan_noa(plan.n, plan.d)) throw Error(ErrorKind::InvalidArgument, "plan is inconsistent with plan_noa");
  const std::size_t d = plan.d;
  const std::uint32_t pc = plan.pc();
  const std::size_t block = std::size_t{plan.s3} * plan.s3;

  auto coarse = bush_construct(FieldSpec::of_order(plan.s3), 3);
  std::vector<std::size_t> eval_cols(d);
  for (std::size_t j = 0; j < d; ++j) eval_cols[j] = j + 1;
  coarse = select_columns(coarse, eval_cols);
  const std::size_t rep_rows = coarse.runs();
  coarse = detail::relabel_repetitions(replicate(coarse, plan.k3), rep_rows, seed,
                                       detail::Stage::StrengthThreeRelabel);

  auto fine = select_columns(bush_construct(FieldSpec::make(plan.p, plan.c), 2), detail::bush_columns(pc, d));
  const std::size_t fine_rep_rows = fine.runs();
  fine = detail::relabel_repetitions(replicate(fine, plan.b), fine_rep_rows, seed, detail::Stage::StrengthTwoRelabel);
  std::vector<std::size_t> order(fine.runs());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Stream shuffle_rng(seed, {detail::key(detail::Stage::RowShuffle)});
  shuffle(order, shuffle_rng);

  std::vector<Level> combined(plan.n * d);
  for (std::size_t i = 0; i < plan.n; ++i) {
    const std::size_t fine_row = order[i / block];
    for (std::size_t j = 0; j < d; ++j) combined[i * d + j] = coarse(i, j) * pc + fine(fine_row, j);
  }
  const Design mid(plan.n, d, plan.s2, std::move(combined));

  NestedDesign out{detail::expand_levels(mid, seed, detail::Stage::Expand), {}, seed, plan};
  out.ladder = {Rung{plan.n, 1, 1}, Rung{plan.s2, 2, plan.b}, Rung{plan.s3, 3, plan.k3}};
  if (const auto failure = verify_ladder(out.design, out.ladder))
    throw Error(ErrorKind::InternalInvariant, "nested design failed its rung at " +
                                                  std::to_string(failure->first.levels) + " levels, strength " +
                                                  std::to_string(failure->first.strength));
  return out;
}

}  // namespace noa
