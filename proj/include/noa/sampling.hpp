#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "noa/design.hpp"
#include "noa/error.hpp"
#include "noa/rng.hpp"

namespace noa {

/// n points in [0,1)^d, row-major.
class PointSet {
 public:
  PointSet(std::size_t n, std::size_t d, std::vector<double> coords) : n_(n), d_(d), coords_(std::move(coords)) {
    if (coords_.size() != n_ * d_) throw Error(ErrorKind::InvalidArgument, "point buffer size mismatch");
  }

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t dim() const noexcept { return d_; }
  [[nodiscard]] std::span<const double> point(std::size_t i) const noexcept { return {coords_.data() + i * d_, d_}; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return coords_[i * d_ + j]; }
  [[nodiscard]] const std::vector<double>& coords() const noexcept { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> coords_;
};

enum class Placement { Uniform, Midpoint };

namespace detail {

/// (level + u) / s, nudged so that floor(x * s) == level survives rounding.
inline double place_in_stratum(Level level, double u, Level s) {
  const double scale = static_cast<double>(s);
  double x = (static_cast<double>(level) + u) / scale;
  while (x > 0.0 && std::floor(x * scale) > level) x = std::nextafter(x, 0.0);
  while (std::floor(x * scale) < level) x = std::nextafter(x, 1.0);
  return x;
}

}  // namespace detail

/// Places each run uniformly (seeded, one stream per entry) or at the centre
/// of its hypercube cell.
inline PointSet to_points(const Design& design, Placement placement, Seed seed = 0) {
  const std::size_t n = design.runs(), d = design.factors();
  std::vector<double> coords(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double u = 0.5;
      if (placement == Placement::Uniform) {
        Stream rng(seed, {i, j});
        u = rng.uniform();
      }
      coords[i * d + j] = detail::place_in_stratum(design(i, j), u, design.levels());
    }
  }
  return PointSet(n, d, std::move(coords));
}

inline void write_points(std::ostream& out, const PointSet& points) {
  out << "# noa-points v1 n=" << points.size() << " d=" << points.dim() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.dim(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", points(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

inline PointSet read_points(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# noa-points v1", 0) != 0)
    throw Error(ErrorKind::Parse, "missing '# noa-points v1' header");
  std::istringstream header(line.substr(15));
  std::size_t n = 0, d = 0;
  for (std::string field; header >> field;) {
    if (field.rfind("n=", 0) == 0) n = detail::parse_uint(field.substr(2), "n");
    if (field.rfind("d=", 0) == 0) d = detail::parse_uint(field.substr(2), "d");
  }
  if (n == 0 || d == 0) throw Error(ErrorKind::Parse, "header must define n and d");
  std::vector<double> coords;
  coords.reserve(n * d);
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "invalid coordinate '" + cell + "'");
      }
      if (!(v >= 0.0 && v < 1.0)) throw Error(ErrorKind::Parse, "coordinate outside [0,1): " + cell);
      coords.push_back(v);
    }
  }
  if (coords.size() != n * d) throw Error(ErrorKind::Parse, "point count does not match header");
  return PointSet(n, d, std::move(coords));
}

}  // namespace noa
