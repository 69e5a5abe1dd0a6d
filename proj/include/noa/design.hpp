#pragma once

// Integer design matrices, exhaustive strength verification, and the level
// transforms (collapse, replicate, column selection) used to build nested arrays.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "noa/error.hpp"

namespace noa {

using Level = std::uint32_t;

/// An n x d matrix with every entry in [0, s). All columns share s.
class Design {
 public:
  Design(std::size_t n, std::size_t d, Level s, std::vector<Level> entries)
      : n_(n), d_(d), s_(s), entries_(std::move(entries)) {
    if (n_ < 1 || d_ < 1 || s_ < 1) throw Error(ErrorKind::InvalidDesign, "n, d and s must all be at least 1");
    if (entries_.size() != n_ * d_)
      throw Error(ErrorKind::InvalidDesign, "expected " + std::to_string(n_ * d_) + " entries, got " +
                                                std::to_string(entries_.size()));
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i] >= s_)
        throw Error(ErrorKind::InvalidDesign, "entry " + std::to_string(entries_[i]) + " at row " +
                                                  std::to_string(i / d_) + " is not below s=" + std::to_string(s_));
  }

  static Design from_rows(const std::vector<std::vector<Level>>& rows, Level s) {
    if (rows.empty()) throw Error(ErrorKind::InvalidDesign, "design has no rows");
    const std::size_t d = rows.front().size();
    std::vector<Level> entries;
    entries.reserve(rows.size() * d);
    for (const auto& row : rows) {
      if (row.size() != d) throw Error(ErrorKind::InvalidDesign, "ragged rows");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    return Design(rows.size(), d, s, std::move(entries));
  }

  [[nodiscard]] std::size_t runs() const noexcept { return n_; }
  [[nodiscard]] std::size_t factors() const noexcept { return d_; }
  [[nodiscard]] Level levels() const noexcept { return s_; }

  [[nodiscard]] Level operator()(std::size_t row, std::size_t col) const noexcept { return entries_[row * d_ + col]; }
  [[nodiscard]] std::span<const Level> row(std::size_t i) const noexcept { return {entries_.data() + i * d_, d_}; }
  [[nodiscard]] const std::vector<Level>& entries() const noexcept { return entries_; }

  friend bool operator==(const Design&, const Design&) = default;

 private:
  std::size_t n_;
  std::size_t d_;
  Level s_;
  std::vector<Level> entries_;
};

struct StrengthViolation {
  std::vector<std::size_t> columns;
  std::vector<Level> levels;
  std::uint64_t observed = 0;
  /// n / s^t; non-integral when s^t does not divide n.
  double expected = 0.0;
};

struct StrengthReport {
  std::size_t t = 0;
  bool ok = false;
  /// n / s^t, meaningful when ok.
  std::uint64_t lambda = 0;
  std::optional<StrengthViolation> violation;
};

namespace detail {

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t d) {
  const std::size_t t = idx.size();
  for (std::size_t k = t; k-- > 0;) {
    if (idx[k] < d - t + k) {
      ++idx[k];
      for (std::size_t j = k + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<Level> decode_tuple(std::uint64_t code, std::size_t t, Level s) {
  std::vector<Level> out(t);
  for (std::size_t k = t; k-- > 0;) {
    out[k] = static_cast<Level>(code % s);
    code /= s;
  }
  return out;
}

}  // namespace detail

/// Counts every level t-tuple in every t-subset of columns. On failure reports
/// the first under-represented cell (count below n / s^t) in lexicographic
/// (column tuple, level tuple) order. Any imbalance leaves at least one cell
/// short, so a failing subset always yields such a cell.
inline StrengthReport check_strength(const Design& design, std::size_t t) {
  const std::size_t n = design.runs(), d = design.factors();
  const Level s = design.levels();
  if (t < 1 || t > d)
    throw Error(ErrorKind::BadStrength, "strength " + std::to_string(t) + " outside [1, " + std::to_string(d) + "]");

  std::uint64_t cells = 1;
  for (std::size_t k = 0; k < t; ++k) {
    cells *= s;
    if (cells > (std::uint64_t{1} << 28)) throw Error(ErrorKind::Overflow, "s^t too large for exhaustive counting");
  }

  StrengthReport report;
  report.t = t;
  const bool divisible = n % cells == 0;
  const std::uint64_t lambda = n / cells;
  const double expected = static_cast<double>(n) / static_cast<double>(cells);

  std::vector<std::uint64_t> counts(cells);
  std::vector<std::size_t> cols(t);
  for (std::size_t k = 0; k < t; ++k) cols[k] = k;
  do {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t code = 0;
      for (std::size_t c : cols) code = code * s + design(i, c);
      ++counts[code];
    }
    bool balanced = divisible;
    for (std::uint64_t code = 0; code < cells && balanced; ++code) balanced = counts[code] == lambda;
    if (balanced) continue;
    for (std::uint64_t code = 0; code < cells; ++code) {
      if (counts[code] * cells < n) {
        report.violation = StrengthViolation{cols, detail::decode_tuple(code, t, s), counts[code], expected};
        return report;
      }
    }
  } while (detail::next_combination(cols, d));

  report.ok = true;
  report.lambda = lambda;
  return report;
}

/// Views the design at s_coarse levels: entry -> entry / (s / s_coarse).
inline Design collapse(const Design& design, Level s_coarse) {
  const Level s = design.levels();
  if (s_coarse < 1 || s % s_coarse != 0)
    throw Error(ErrorKind::NotDivisor, std::to_string(s_coarse) + " does not divide s=" + std::to_string(s));
  const Level width = s / s_coarse;
  std::vector<Level> entries(design.entries());
  for (auto& e : entries) e /= width;
  return Design(design.runs(), design.factors(), s_coarse, std::move(entries));
}

/// k vertically stacked copies.
inline Design replicate(const Design& design, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "replication count must be at least 1");
  std::vector<Level> entries;
  entries.reserve(design.entries().size() * k);
  for (std::size_t r = 0; r < k; ++r) entries.insert(entries.end(), design.entries().begin(), design.entries().end());
  return Design(design.runs() * k, design.factors(), design.levels(), std::move(entries));
}

inline Design select_columns(const Design& design, std::span<const std::size_t> indices) {
  if (indices.empty()) throw Error(ErrorKind::BadIndex, "no columns selected");
  std::vector<bool> seen(design.factors(), false);
  for (std::size_t c : indices) {
    if (c >= design.factors())
      throw Error(ErrorKind::BadIndex, "column " + std::to_string(c) + " outside design of " +
                                           std::to_string(design.factors()) + " columns");
    if (seen[c]) throw Error(ErrorKind::Duplicate, "column " + std::to_string(c) + " selected twice");
    seen[c] = true;
  }
  std::vector<Level> entries;
  entries.reserve(design.runs() * indices.size());
  for (std::size_t i = 0; i < design.runs(); ++i)
    for (std::size_t c : indices) entries.push_back(design(i, c));
  return Design(design.runs(), indices.size(), design.levels(), std::move(entries));
}

inline Design select_columns(const Design& design, std::initializer_list<std::size_t> indices) {
  return select_columns(design, std::span<const std::size_t>(indices.begin(), indices.size()));
}

// CSV format:
//   # noa-design v1 n=<n> d=<d> s=<s> [extra key=value fields]
//   n lines of d comma-separated integers

inline void write_design(std::ostream& out, const Design& design, const std::string& extra_header = {}) {
  out << "# noa-design v1 n=" << design.runs() << " d=" << design.factors() << " s=" << design.levels();
  if (!extra_header.empty()) out << ' ' << extra_header;
  out << '\n';
  for (std::size_t i = 0; i < design.runs(); ++i) {
    const auto row = design.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << row[j];
    }
    out << '\n';
  }
}

namespace detail {

inline std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || text.size() > 19)
    throw Error(ErrorKind::Parse, "invalid " + what + " '" + text + "'");
  return std::stoull(text);
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline Design read_design(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "empty design file");
  std::istringstream header(line);
  std::string hash, magic, version;
  header >> hash >> magic >> version;
  if (hash != "#" || magic != "noa-design" || version != "v1")
    throw Error(ErrorKind::Parse, "missing '# noa-design v1' header");
  std::optional<std::uint64_t> n, d, s;
  for (std::string field; header >> field;) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    const auto key = field.substr(0, eq), value = field.substr(eq + 1);
    if (key == "n") n = detail::parse_uint(value, "n");
    else if (key == "d") d = detail::parse_uint(value, "d");
    else if (key == "s") s = detail::parse_uint(value, "s");
  }
  if (!n || !d || !s) throw Error(ErrorKind::Parse, "header must define n, d and s");
  if (*n < 1 || *d < 1 || *s < 1 || *s > 0xffffffffULL) throw Error(ErrorKind::Parse, "header values out of range");

  std::vector<Level> entries;
  entries.reserve(*n * *d);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    line = detail::trim(line);
    if (line.empty()) continue;
    if (rows == *n) throw Error(ErrorKind::Parse, "more than n=" + std::to_string(*n) + " rows");
    std::istringstream cells(line);
    std::size_t count = 0;
    for (std::string cell; std::getline(cells, cell, ',');) {
      const auto v = detail::parse_uint(detail::trim(cell), "entry");
      if (v >= *s)
        throw Error(ErrorKind::Parse, "entry " + std::to_string(v) + " on row " + std::to_string(rows) +
                                          " is not below s=" + std::to_string(*s));
      entries.push_back(static_cast<Level>(v));
      ++count;
    }
    if (count != *d)
      throw Error(ErrorKind::Parse, "row " + std::to_string(rows) + " has " + std::to_string(count) +
                                        " entries, expected " + std::to_string(*d));
    ++rows;
  }
  if (rows != *n) throw Error(ErrorKind::Parse, "expected " + std::to_string(*n) + " rows, got " + std::to_string(rows));
  return Design(*n, *d, static_cast<Level>(*s), std::move(entries));
}

}  // namespace noa
