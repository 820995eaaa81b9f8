#pragma once

// Exact sparse polynomials in the fixed variables x, s, q over arbitrary
// precision integers. Exponents of x and s are nonnegative; q may carry
// negative exponents (Laurent in q only).

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace fibdet {

using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};
class DivisionByZero : public Error {
 public:
  using Error::Error;
};
class NonInvertibleSubstitution : public Error {
 public:
  using Error::Error;
};
class ZeroDenominator : public Error {
 public:
  using Error::Error;
};
class ParameterOutOfRange : public Error {
 public:
  using Error::Error;
};

enum class Var { x, s, q };

/// Exponent triple of a monomial x^ex * s^es * q^eq.
struct Monomial {
  std::int32_t ex = 0;
  std::int32_t es = 0;
  std::int32_t eq = 0;

  constexpr auto operator<=>(const Monomial&) const = default;

  constexpr Monomial operator*(const Monomial& o) const {
    return {ex + o.ex, es + o.es, eq + o.eq};
  }
  constexpr bool is_one() const { return ex == 0 && es == 0 && eq == 0; }
  constexpr std::int32_t exponent(Var v) const {
    switch (v) {
      case Var::x: return ex;
      case Var::s: return es;
      case Var::q: return eq;
    }
    return 0;
  }
};

struct Term {
  Monomial mono;
  Integer coef;

  bool operator==(const Term& o) const { return mono == o.mono && coef == o.coef; }
};

/// Canonical polynomial: terms strictly ordered by monomial, largest first
/// (lexicographic on ex, es, eq), no zero coefficients. Structural equality
/// is mathematical equality.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c);  // NOLINT(google-explicit-constructor)
  Polynomial(const Integer& c);  // NOLINT(google-explicit-constructor)

  static Polynomial monomial(const Integer& c, Monomial m);
  static Polynomial variable(Var v, std::int32_t power = 1);
  static Polynomial x(std::int32_t power = 1) { return variable(Var::x, power); }
  static Polynomial s(std::int32_t power = 1) { return variable(Var::s, power); }
  static Polynomial q(std::int32_t power = 1) { return variable(Var::q, power); }

  /// Builds from arbitrary (unordered, possibly repeated or zero) terms.
  static Polynomial from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  std::size_t size() const { return terms_.size(); }
  std::span<const Term> terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }

  /// Single term with coefficient +1 or -1.
  bool is_unit_monomial() const;
  /// True if some q exponent is negative.
  bool has_negative_q() const;
  /// Minimum / maximum exponent of v over all terms (0 for the zero polynomial).
  std::int32_t min_exponent(Var v) const;
  std::int32_t max_exponent(Var v) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  /// Multiplies every exponent triple by the monomial m (cheap shift).
  Polynomial shifted(Monomial m) const;
  Polynomial scaled(const Integer& c) const;

 private:
  std::vector<Term> terms_;
};

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial mul(const Polynomial& a, const Polynomial& b);
Polynomial pow(const Polynomial& p, unsigned e);

/// Exact quotient a / b in Z[x, s, q, 1/q]; the result is confirmed by
/// re-multiplication. Throws DivisionByZero or NotDivisible.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

/// Replaces var by val. A negative q exponent requires val to be a unit
/// monomial, otherwise NonInvertibleSubstitution.
Polynomial substitute(const Polynomial& p, Var var, const Polynomial& val);

/// Exact value at integer points. Throws ZeroDenominator if q0 = 0 meets a
/// negative q exponent.
Rational eval_int(const Polynomial& p, const Integer& x0, const Integer& s0, const Integer& q0);

/// Deterministic text form, e.g. "x^4 + q^2*x^2 + 2*x*s - 1". The zero
/// polynomial renders as "0".
std::string to_canonical_string(const Polynomial& p);

std::string var_name(Var v);

}  // namespace fibdet
