#pragma once

#include <cstdint>
#include <vector>

#include "noa/design.hpp"
#include "noa/gf.hpp"

namespace noa {

inline constexpr std::size_t bush_max_strength = 3;

/// Bush's OA(s^t, s+1, s, t) over GF(s).
///
/// Row i is the polynomial whose coefficients are the base-s digits of i, with
/// the coefficient of y^(t-1) as the most significant digit. Column 0 holds
/// that leading coefficient; column j >= 1 holds the polynomial evaluated at
/// field element j-1. Rows sharing a leading coefficient are therefore
/// contiguous blocks of s^(t-1) rows, which the nested combiner relies on.
inline Design bush_construct(const FieldSpec& field, std::size_t t) {
  const std::uint32_t s = field.order();
  if (s < 2) throw Error(ErrorKind::TrivialField, "field order must be at least 2");
  if (t < 1) throw Error(ErrorKind::BadStrength, "strength must be at least 1");
  if (t > bush_max_strength)
    throw Error(ErrorKind::StrengthTooHigh, "strength " + std::to_string(t) + " exceeds " +
                                                std::to_string(bush_max_strength));
  std::size_t n = 1;
  for (std::size_t k = 0; k < t; ++k) n *= s;
  const std::size_t d = std::size_t{s} + 1;

  std::vector<Level> entries;
  entries.reserve(n * d);
  std::vector<FieldElement> coeffs(t);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    for (auto& c : coeffs) {
      c = FieldElement{static_cast<std::uint32_t>(rest % s)};
      rest /= s;
    }
    entries.push_back(coeffs.back().index);
    for (std::uint32_t x = 0; x < s; ++x) entries.push_back(field.poly_eval(coeffs, FieldElement{x}).index);
  }
  return Design(n, d, s, std::move(entries));
}

}  // namespace noa
