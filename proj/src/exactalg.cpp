#include "fibdet/exactalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

namespace fibdet {

namespace {

// Monomials are packed into 64 bits for hashing during multiplication.
constexpr std::int64_t kQOffset = std::int64_t{1} << 20;
constexpr std::int64_t kField = std::int64_t{1} << 21;

std::uint64_t pack(Monomial m) {
  if (m.ex < 0 || m.ex >= kField || m.es < 0 || m.es >= kField || m.eq < -kQOffset ||
      m.eq >= kQOffset) {
    throw ParameterOutOfRange("monomial exponent out of supported range");
  }
  return (static_cast<std::uint64_t>(m.ex) << 42) | (static_cast<std::uint64_t>(m.es) << 21) |
         static_cast<std::uint64_t>(m.eq + kQOffset);
}

Monomial unpack(std::uint64_t key) {
  const auto mask = static_cast<std::uint64_t>(kField - 1);
  return {static_cast<std::int32_t>(key >> 42), static_cast<std::int32_t>((key >> 21) & mask),
          static_cast<std::int32_t>(static_cast<std::int64_t>(key & mask) - kQOffset)};
}

bool descending(const Term& a, const Term& b) { return a.mono > b.mono; }

// Merge two canonical term lists; sign = +1 for a + b, -1 for a - b.
std::vector<Term> merge(std::span<const Term> a, std::span<const Term> b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back({b[j].mono, sign > 0 ? Integer(b[j].coef) : Integer(-b[j].coef)});
      ++j;
    } else {
      Integer c = sign > 0 ? Integer(a[i].coef + b[j].coef) : Integer(a[i].coef - b[j].coef);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

std::string var_name(Var v) {
  switch (v) {
    case Var::x: return "x";
    case Var::s: return "s";
    case Var::q: return "q";
  }
  return "?";
}

Polynomial::Polynomial(long c) {
  if (c != 0) terms_.push_back({Monomial{}, Integer(c)});
}

Polynomial::Polynomial(const Integer& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::monomial(const Integer& c, Monomial m) {
  if (m.ex < 0 || m.es < 0) throw ParameterOutOfRange("negative exponent of x or s");
  Polynomial p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::variable(Var v, std::int32_t power) {
  Monomial m;
  switch (v) {
    case Var::x: m.ex = power; break;
    case Var::s: m.es = power; break;
    case Var::q: m.eq = power; break;
  }
  return monomial(Integer(1), m);
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.mono.ex < 0 || t.mono.es < 0) throw ParameterOutOfRange("negative exponent of x or s");
  }
  std::sort(terms.begin(), terms.end(), descending);
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef == 1;
}

bool Polynomial::is_unit_monomial() const {
  return terms_.size() == 1 && (terms_[0].coef == 1 || terms_[0].coef == -1);
}

bool Polynomial::has_negative_q() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono.eq < 0; });
}

std::int32_t Polynomial::min_exponent(Var v) const {
  if (terms_.empty()) return 0;
  std::int32_t m = terms_[0].mono.exponent(v);
  for (const auto& t : terms_) m = std::min(m, t.mono.exponent(v));
  return m;
}

std::int32_t Polynomial::max_exponent(Var v) const {
  if (terms_.empty()) return 0;
  std::int32_t m = terms_[0].mono.exponent(v);
  for (const auto& t : terms_) m = std::max(m, t.mono.exponent(v));
  return m;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  terms_ = merge(terms_, o.terms_, +1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.is_zero()) return *this;
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.size() == 1) return a.shifted(b.terms_[0].mono).scaled(b.terms_[0].coef);
  if (a.size() == 1) return b.shifted(a.terms_[0].mono).scaled(a.terms_[0].coef);

  std::unordered_map<std::uint64_t, Integer> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Integer& slot = acc[pack(ta.mono * tb.mono)];
      mpz_addmul(slot.get_mpz_t(), ta.coef.get_mpz_t(), tb.coef.get_mpz_t());
    }
  }
  Polynomial p;
  p.terms_.reserve(acc.size());
  for (auto& [key, coef] : acc) {
    if (coef != 0) p.terms_.push_back({unpack(key), std::move(coef)});
  }
  std::sort(p.terms_.begin(), p.terms_.end(), descending);
  return p;
}

Polynomial Polynomial::shifted(Monomial m) const {
  Polynomial p = *this;
  for (auto& t : p.terms_) {
    t.mono = t.mono * m;
    if (t.mono.ex < 0 || t.mono.es < 0) throw ParameterOutOfRange("negative exponent of x or s");
  }
  return p;
}

Polynomial Polynomial::scaled(const Integer& c) const {
  if (c == 0) return {};
  Polynomial p = *this;
  if (c == 1) return p;
  for (auto& t : p.terms_) t.coef *= c;
  return p;
}

Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }

Polynomial mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial pow(const Polynomial& p, unsigned e) {
  Polynomial result(1);
  Polynomial base = p;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero polynomial");
  if (a.is_zero()) return {};

  const Term& lead = b.leading();
  auto quotient_term = [&](const Term& t) -> Term {
    Monomial m{t.mono.ex - lead.mono.ex, t.mono.es - lead.mono.es, t.mono.eq - lead.mono.eq};
    if (m.ex < 0 || m.es < 0 || !mpz_divisible_p(t.coef.get_mpz_t(), lead.coef.get_mpz_t())) {
      throw NotDivisible("polynomial is not divisible by " + to_canonical_string(b));
    }
    Integer c;
    mpz_divexact(c.get_mpz_t(), t.coef.get_mpz_t(), lead.coef.get_mpz_t());
    return {m, c};
  };

  if (b.size() == 1) {
    std::vector<Term> out;
    out.reserve(a.size());
    for (const auto& t : a.terms()) out.push_back(quotient_term(t));
    return Polynomial::from_terms(std::move(out));
  }

  // Over an integral domain the extreme degrees add under multiplication,
  // so every quotient exponent lies in this box. Leaving it means no exact
  // quotient exists; staying in it bounds the loop.
  const Monomial lo{a.min_exponent(Var::x) - b.min_exponent(Var::x),
                    a.min_exponent(Var::s) - b.min_exponent(Var::s),
                    a.min_exponent(Var::q) - b.min_exponent(Var::q)};
  const Monomial hi{a.max_exponent(Var::x) - b.max_exponent(Var::x),
                    a.max_exponent(Var::s) - b.max_exponent(Var::s),
                    a.max_exponent(Var::q) - b.max_exponent(Var::q)};

  std::map<Monomial, Integer, std::greater<>> rem;
  for (const auto& t : a.terms()) rem.emplace(t.mono, t.coef);

  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto top = rem.begin();
    Term qt = quotient_term(Term{top->first, top->second});
    if (qt.mono.ex < lo.ex || qt.mono.ex > hi.ex || qt.mono.es < lo.es || qt.mono.es > hi.es ||
        qt.mono.eq < lo.eq || qt.mono.eq > hi.eq) {
      throw NotDivisible("polynomial is not divisible by " + to_canonical_string(b));
    }
    for (const auto& tb : b.terms()) {
      auto [it, inserted] = rem.try_emplace(qt.mono * tb.mono);
      mpz_submul(it->second.get_mpz_t(), qt.coef.get_mpz_t(), tb.coef.get_mpz_t());
      if (it->second == 0) rem.erase(it);
    }
    quotient.push_back(std::move(qt));
  }
  Polynomial c = Polynomial::from_terms(std::move(quotient));
  if (!(b * c == a)) throw NotDivisible("exact division failed verification");
  return c;
}

Polynomial substitute(const Polynomial& p, Var var, const Polynomial& val) {
  if (p.is_zero()) return {};
  if (val.size() == 1) {
    const Term& v = val.leading();
    const bool invertible =
        val.is_unit_monomial() && v.mono.ex == 0 && v.mono.es == 0;
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
      std::int32_t e = t.mono.exponent(var);
      if (e < 0 && !invertible) {
        throw NonInvertibleSubstitution("negative power of " + var_name(var) +
                                        " cannot take value " + to_canonical_string(val));
      }
      Monomial rest = t.mono;
      switch (var) {
        case Var::x: rest.ex = 0; break;
        case Var::s: rest.es = 0; break;
        case Var::q: rest.eq = 0; break;
      }
      Monomial powered{v.mono.ex * e, v.mono.es * e, v.mono.eq * e};
      Integer c;
      mpz_pow_ui(c.get_mpz_t(), v.coef.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
      out.push_back({rest * powered, t.coef * c});
    }
    return Polynomial::from_terms(std::move(out));
  }

  if (val.is_zero()) {
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
      std::int32_t e = t.mono.exponent(var);
      if (e < 0) throw NonInvertibleSubstitution("negative power of " + var_name(var) + " at 0");
      if (e == 0) out.push_back(t);
    }
    return Polynomial::from_terms(std::move(out));
  }

  std::map<std::int32_t, std::vector<Term>> by_power;
  for (const auto& t : p.terms()) {
    std::int32_t e = t.mono.exponent(var);
    if (e < 0) {
      throw NonInvertibleSubstitution("negative power of " + var_name(var) +
                                      " cannot take value " + to_canonical_string(val));
    }
    Term rest = t;
    switch (var) {
      case Var::x: rest.mono.ex = 0; break;
      case Var::s: rest.mono.es = 0; break;
      case Var::q: rest.mono.eq = 0; break;
    }
    by_power[e].push_back(std::move(rest));
  }
  Polynomial result;
  Polynomial power(1);
  std::int32_t have = 0;
  for (auto& [e, terms] : by_power) {
    for (; have < e; ++have) power *= val;
    result += Polynomial::from_terms(std::move(terms)) * power;
  }
  return result;
}

Rational eval_int(const Polynomial& p, const Integer& x0, const Integer& s0, const Integer& q0) {
  Rational total = 0;
  for (const auto& t : p.terms()) {
    if (t.mono.eq < 0 && q0 == 0) throw ZeroDenominator("q = 0 at a negative power of q");
    Integer num = t.coef;
    Integer f;
    mpz_pow_ui(f.get_mpz_t(), x0.get_mpz_t(), static_cast<unsigned long>(t.mono.ex));
    num *= f;
    mpz_pow_ui(f.get_mpz_t(), s0.get_mpz_t(), static_cast<unsigned long>(t.mono.es));
    num *= f;
    Integer den = 1;
    mpz_pow_ui(f.get_mpz_t(), q0.get_mpz_t(), static_cast<unsigned long>(std::abs(t.mono.eq)));
    if (t.mono.eq >= 0) {
      num *= f;
    } else {
      den = f;
    }
    Rational term(num, den);
    term.canonicalize();
    total += term;
  }
  return total;
}

std::string to_canonical_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    Integer mag = abs(t.coef);
    if (first) {
      if (t.coef < 0) os << '-';
    } else {
      os << (t.coef < 0 ? " - " : " + ");
    }
    first = false;

    std::vector<std::string> factors;
    auto factor = [&](const char* name, std::int32_t e) {
      if (e == 0) return;
      factors.push_back(e == 1 ? std::string(name) : std::string(name) + "^" + std::to_string(e));
    };
    factor("q", t.mono.eq);
    factor("x", t.mono.ex);
    factor("s", t.mono.es);

    if (factors.empty()) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << '*';
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i > 0) os << '*';
      os << factors[i];
    }
  }
  return os.str();
}

}  // namespace fibdet
