#pragma once

// Arithmetic in GF(p^m), just enough to enumerate elements and evaluate
// polynomials. Elements are indices whose base-p digits d_0..d_{m-1} are the
// coefficients of 1, a, ..., a^{m-1}; GF(4) therefore enumerates as 0, 1, a, a+1.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "noa/error.hpp"

namespace noa {

struct FieldElement {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

/// If n = p^m for a prime p and m >= 1, returns {p, m}; otherwise {0, 0}.
struct PrimePower {
  std::uint32_t prime = 0;
  std::uint32_t exponent = 0;
  [[nodiscard]] constexpr bool valid() const noexcept { return prime != 0; }
};

constexpr PrimePower prime_power_decompose(std::uint64_t n) noexcept {
  if (n < 2) return {};
  std::uint64_t p = 2;
  while (p * p <= n && n % p != 0) ++p;
  if (n % p != 0) p = n;
  std::uint32_t m = 0;
  while (n % p == 0) {
    n /= p;
    ++m;
  }
  if (n != 1) return {};
  return {static_cast<std::uint32_t>(p), m};
}

constexpr bool is_prime_power(std::uint64_t n) noexcept { return prime_power_decompose(n).valid(); }

/// Immutable arithmetic context for GF(p^m).
class FieldSpec {
 public:
  static constexpr std::uint64_t max_order = std::uint64_t{1} << 20;

  /// Builds GF(p^m) using the smallest monic irreducible of degree m, where the
  /// lower coefficients are compared as a base-p integer (constant term least
  /// significant).
  static FieldSpec make(std::uint32_t p, std::uint32_t m) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "extension degree must be at least 1");
    std::uint64_t s = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      s *= p;
      if (s > max_order)
        throw Error(ErrorKind::Overflow, std::to_string(p) + "^" + std::to_string(m) + " exceeds supported field order");
    }
    FieldSpec f;
    f.p_ = p;
    f.m_ = m;
    f.s_ = static_cast<std::uint32_t>(s);
    f.irreducible_ = find_irreducible(p, m);
    return f;
  }

  /// Builds GF(s) for a prime power s.
  static FieldSpec of_order(std::uint64_t s) {
    const auto pp = prime_power_decompose(s);
    if (!pp.valid()) throw Error(ErrorKind::NotPrime, std::to_string(s) + " is not a prime power");
    return make(pp.prime, pp.exponent);
  }

  [[nodiscard]] std::uint32_t p() const noexcept { return p_; }
  [[nodiscard]] std::uint32_t m() const noexcept { return m_; }
  [[nodiscard]] std::uint32_t order() const noexcept { return s_; }
  /// Monic modulus, constant term first, m+1 coefficients.
  [[nodiscard]] const std::vector<std::uint32_t>& irreducible() const noexcept { return irreducible_; }

  [[nodiscard]] FieldElement element(std::uint64_t index) const {
    if (index >= s_)
      throw Error(ErrorKind::IndexOutOfRange,
                  "element index " + std::to_string(index) + " outside GF(" + std::to_string(s_) + ")");
    return FieldElement{static_cast<std::uint32_t>(index)};
  }

  [[nodiscard]] FieldElement zero() const noexcept { return {0}; }
  [[nodiscard]] FieldElement one() const noexcept { return {1}; }

  [[nodiscard]] FieldElement add(FieldElement a, FieldElement b) const {
    check(a);
    check(b);
    std::uint32_t x = a.index, y = b.index, out = 0, place = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
      out += ((x % p_ + y % p_) % p_) * place;
      x /= p_;
      y /= p_;
      place *= p_;
    }
    return {out};
  }

  [[nodiscard]] FieldElement neg(FieldElement a) const {
    check(a);
    std::uint32_t x = a.index, out = 0, place = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
      out += ((p_ - x % p_) % p_) * place;
      x /= p_;
      place *= p_;
    }
    return {out};
  }

  [[nodiscard]] FieldElement mul(FieldElement a, FieldElement b) const {
    check(a);
    check(b);
    const auto x = digits(a.index);
    const auto y = digits(b.index);
    std::vector<std::uint64_t> prod(2 * m_ - 1, 0);
    for (std::uint32_t i = 0; i < m_; ++i)
      for (std::uint32_t j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_;
    // Reduce with the monic modulus: a^m = -(r_0 + r_1 a + ... + r_{m-1} a^{m-1}).
    for (std::size_t k = prod.size(); k-- > m_;) {
      const std::uint64_t lead = prod[k];
      if (lead == 0) continue;
      prod[k] = 0;
      for (std::uint32_t i = 0; i < m_; ++i) {
        const std::uint64_t sub = lead * irreducible_[i] % p_;
        auto& slot = prod[k - m_ + i];
        slot = (slot + p_ - sub) % p_;
      }
    }
    std::uint32_t out = 0, place = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
      out += static_cast<std::uint32_t>(prod[i]) * place;
      place *= p_;
    }
    return {out};
  }

  /// Horner evaluation; coefficients are listed constant term first.
  [[nodiscard]] FieldElement poly_eval(std::span<const FieldElement> coeffs, FieldElement x) const {
    if (coeffs.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial has no coefficients");
    check(x);
    FieldElement acc = coeffs.back();
    check(acc);
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = add(mul(acc, x), coeffs[i]);
    return acc;
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec() = default;

  void check(FieldElement a) const {
    if (a.index >= s_)
      throw Error(ErrorKind::IndexOutOfRange,
                  "element index " + std::to_string(a.index) + " outside GF(" + std::to_string(s_) + ")");
  }

  [[nodiscard]] std::vector<std::uint32_t> digits(std::uint32_t index) const {
    std::vector<std::uint32_t> d(m_);
    for (auto& digit : d) {
      digit = index % p_;
      index /= p_;
    }
    return d;
  }

  // Polynomials over GF(p) below are coefficient vectors, constant term first.
  static std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> num, const std::vector<std::uint32_t>& den,
                                             std::uint32_t p) {
    // den is monic.
    const std::size_t dd = den.size() - 1;
    for (std::size_t k = num.size(); k-- > dd;) {
      const std::uint64_t lead = num[k];
      if (lead == 0) continue;
      for (std::size_t i = 0; i <= dd; ++i) {
        auto& slot = num[k - dd + i];
        slot = static_cast<std::uint32_t>((slot + p - lead * den[i] % p) % p);
      }
    }
    num.resize(dd);
    return num;
  }

  static std::vector<std::uint32_t> monic_from_index(std::uint64_t index, std::uint32_t degree, std::uint32_t p) {
    std::vector<std::uint32_t> poly(degree + 1);
    for (std::uint32_t i = 0; i < degree; ++i) {
      poly[i] = static_cast<std::uint32_t>(index % p);
      index /= p;
    }
    poly[degree] = 1;
    return poly;
  }

  /// Trial division by every monic polynomial of degree 1..m/2.
  static bool is_irreducible(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
    const auto m = static_cast<std::uint32_t>(poly.size() - 1);
    for (std::uint32_t deg = 1; 2 * deg <= m; ++deg) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < deg; ++i) count *= p;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        const auto rem = poly_mod(poly, monic_from_index(idx, deg, p), p);
        bool zero = true;
        for (auto c : rem) zero = zero && c == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  static std::vector<std::uint32_t> find_irreducible(std::uint32_t p, std::uint32_t m) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < m; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      auto poly = monic_from_index(idx, m, p);
      if (is_irreducible(poly, p)) return poly;
    }
    throw Error(ErrorKind::InternalInvariant, "no irreducible polynomial found");
  }

  std::uint32_t p_ = 2;
  std::uint32_t m_ = 1;
  std::uint32_t s_ = 2;
  std::vector<std::uint32_t> irreducible_;
};

}  // namespace noa
