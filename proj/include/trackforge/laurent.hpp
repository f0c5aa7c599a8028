#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trackforge {

// Integer Laurent polynomial in v and z. Terms are kept in lexicographic
// (vExp, zExp) order and zero coefficients are never stored.
class LaurentPoly2 {
 public:
  using Exponents = std::pair<int, int>;
  using Coefficient = std::int64_t;

  struct Term {
    int v_exp;
    int z_exp;
    Coefficient coef;
    bool operator==(const Term&) const = default;
  };

  LaurentPoly2() = default;
  LaurentPoly2(Coefficient constant);  // NOLINT: implicit integer constant

  static LaurentPoly2 monomial(Coefficient coef, int v_exp, int z_exp);
  static LaurentPoly2 v(int exp = 1) { return monomial(1, exp, 0); }
  static LaurentPoly2 z(int exp = 1) { return monomial(1, 0, exp); }

  // (v^-1 - v) z^-1, the value of a split unknotted component.
  static const LaurentPoly2& delta();

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  std::vector<Term> terms() const;
  Coefficient coefficient(int v_exp, int z_exp) const;

  LaurentPoly2& operator+=(const LaurentPoly2& other);
  LaurentPoly2& operator-=(const LaurentPoly2& other);
  LaurentPoly2& operator*=(const LaurentPoly2& other);
  friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
  friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
  friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);
  LaurentPoly2 operator-() const;

  // Adds coef * v^dv * z^dz * other in place.
  void add_scaled(const LaurentPoly2& other, Coefficient coef, int dv, int dz);

  LaurentPoly2 pow(unsigned n) const;

  // v -> v^-1, z -> -z: the polynomial of the mirror image.
  LaurentPoly2 mirror_transform() const;

  bool operator==(const LaurentPoly2&) const = default;
  bool operator<(const LaurentPoly2& other) const { return terms_ < other.terms_; }

  // Canonical text: `c*v^i*z^j` terms joined by ` + `; "0" for zero.
  std::string to_string() const;
  static LaurentPoly2 parse(std::string_view text);

  // Minimal and maximal v exponent with a nonzero coefficient. Throws
  // DomainError on the zero polynomial.
  std::pair<int, int> v_range() const;

  // The coefficient polynomial a_k(z) of v^k, as a map zExp -> coef.
  std::map<int, Coefficient> v_coefficient(int k) const;

 private:
  std::map<Exponents, Coefficient> terms_;
};

struct VRange {
  int e;
  int E;
  bool operator==(const VRange&) const = default;
};

// The range [e, E] of a nonzero polynomial in v.
VRange range(const LaurentPoly2& p);

}  // namespace trackforge
