#include "fibdet/sequences.hpp"

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "fibdet/combinatorics.hpp"

namespace fibdet {

namespace {

enum class Kind { fib, lucas, qfib };

void require_k(int k) {
  if (k < 1) throw ParameterOutOfRange("k must be >= 1, got " + std::to_string(k));
}

Polynomial s_value(SValue s) { return s == SValue::one ? Polynomial(1) : Polynomial::s(); }

// Append-only table of sequence values, indexed from 0, per (kind, k, s).
class SequenceTable {
 public:
  Polynomial get(Kind kind, int k, SValue s, long n) {
    std::lock_guard lock(mu_);
    auto& values = tables_[{kind, k, s}];
    const Polynomial sv = s_value(s);
    while (static_cast<long>(values.size()) <= n) {
      const long m = static_cast<long>(values.size());
      values.push_back(next(kind, k, sv, m, values));
    }
    return values[static_cast<std::size_t>(n)];
  }

 private:
  static Polynomial next(Kind kind, int k, const Polynomial& sv, long m,
                         const std::vector<Polynomial>& values) {
    if (m < k) {
      if (kind == Kind::lucas && m == 0) return Polynomial(k);
      return Polynomial::x(static_cast<std::int32_t>(m));
    }
    // Index m - k >= 0 here; for the Fibonacci families values at -k < n < 0 are 0.
    const Polynomial& prev = values[static_cast<std::size_t>(m - 1)];
    const Polynomial& back = values[static_cast<std::size_t>(m - k)];
    Polynomial coef = sv;
    if (kind == Kind::qfib) coef = coef.shifted(Monomial{0, 0, static_cast<std::int32_t>(m - k)});
    return prev.shifted(Monomial{1, 0, 0}) + coef * back;
  }

  std::mutex mu_;
  std::map<std::tuple<Kind, int, SValue>, std::vector<Polynomial>> tables_;
};

SequenceTable& table() {
  static SequenceTable t;
  return t;
}

Polynomial fib_like(Kind kind, int k, long n, SValue s) {
  require_k(k);
  if (n < 0) {
    if (n > -k) return {};
    throw IndexOutOfRange("index " + std::to_string(n) + " below -(k-1) for k = " + std::to_string(k));
  }
  return table().get(kind, k, s, n);
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::F: return "F";
    case Family::L: return "L";
    case Family::qF: return "qF";
    case Family::Luc: return "Luc";
    case Family::lAdj: return "lAdj";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::F, Family::L, Family::qF, Family::Luc, Family::lAdj}) {
    if (family_name(f) == name) return f;
  }
  throw ParameterOutOfRange("unknown family '" + std::string(name) + "'");
}

Polynomial fib(int k, long n, SValue s) { return fib_like(Kind::fib, k, n, s); }

Polynomial qfib(int k, long n, SValue s) { return fib_like(Kind::qfib, k, n, s); }

Polynomial lucas(int k, long n, SValue s) {
  require_k(k);
  if (n < 0) throw IndexOutOfRange("Lucas index must be >= 0");
  return table().get(Kind::lucas, k, s, n);
}

Polynomial fib_closed(int k, long n) {
  require_k(k);
  if (n < 0) throw IndexOutOfRange("closed form needs n >= 0");
  std::vector<Term> terms;
  for (long j = 0; j <= n / k; ++j) {
    terms.push_back({Monomial{static_cast<std::int32_t>(n - k * j), static_cast<std::int32_t>(j), 0},
                     binomial(n - (k - 1) * j, j)});
  }
  return Polynomial::from_terms(std::move(terms));
}

Polynomial lucas_closed(int k, long n) {
  require_k(k);
  if (n < 0) throw IndexOutOfRange("closed form needs n >= 0");
  if (n == 0) return Polynomial(k);
  std::vector<Term> terms;
  for (long j = 0; j <= n / k; ++j) {
    const long top = n - (k - 1) * j;
    Integer num = binomial(top, j) * n;
    if (!mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(top))) {
      throw NonIntegerCoefficient("Lucas coefficient not integral at j = " + std::to_string(j));
    }
    mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(top));
    terms.push_back({Monomial{static_cast<std::int32_t>(n - k * j), static_cast<std::int32_t>(j), 0}, num});
  }
  return Polynomial::from_terms(std::move(terms));
}

Polynomial qfib_closed(int k, long n) {
  require_k(k);
  if (n < 0) throw IndexOutOfRange("closed form needs n >= 0");
  Polynomial sum;
  for (long j = 0; j <= n / k; ++j) {
    const Monomial m{static_cast<std::int32_t>(n - k * j), static_cast<std::int32_t>(j),
                     static_cast<std::int32_t>(k * choose2(j))};
    sum += q_binomial(n - (k - 1) * j, j).shifted(m);
  }
  return sum;
}

bool qfib_bivariate_check(int k, long n) {
  require_k(k);
  if (n < 0) throw IndexOutOfRange("n must be >= 0");
  const Polynomial qs = Polynomial::q() * Polynomial::s();
  const Polynomial qks = Polynomial::q(k) * Polynomial::s();
  const Polynomial lhs = qfib(k, n + k);
  const Polynomial rhs = Polynomial::x() * substitute(qfib(k, n + k - 1), Var::s, qs) +
                         Polynomial::s() * substitute(qfib(k, n), Var::s, qks);
  return lhs == rhs;
}

Polynomial qluc(long n) {
  if (n < 0) throw IndexOutOfRange("Luc index must be >= 0");
  if (n == 0) return Polynomial(2);
  Polynomial sum;
  const Polynomial qn = q_int(n);
  for (long j = 0; j <= n / 2; ++j) {
    // [n]/[n-j] is only a polynomial after multiplying into the q-binomial.
    Polynomial c = divide_exact(q_binomial(n - j, j) * qn, q_int(n - j));
    sum += c.shifted(Monomial{static_cast<std::int32_t>(n - 2 * j), 0, static_cast<std::int32_t>(choose2(j))});
  }
  return sum;
}

Polynomial qluc_adjusted(long n) { return n == 0 ? Polynomial(1) : qluc(n); }

Polynomial lucas_adjusted(int k, long n) {
  if (n == 0) {
    require_k(k);
    return Polynomial(1);
  }
  return lucas(k, n, SValue::one);
}

bool relation_fl_check(int k, long n) {
  require_k(k);
  if (n < 0) throw IndexOutOfRange("n must be >= 0");
  return lucas(k, n + k) == fib(k, n + k) + Polynomial::s().scaled(k - 1) * fib(k, n);
}

Polynomial evaluate(const SeqSpec& spec, SValue s) {
  switch (spec.family) {
    case Family::F: return fib(spec.k, spec.n, s);
    case Family::L: return lucas(spec.k, spec.n, s);
    case Family::qF: return qfib(spec.k, spec.n, s);
    case Family::Luc:
      if (spec.k != 2) throw ParameterOutOfRange("Luc is defined for k = 2 only");
      return qluc(spec.n);
    case Family::lAdj:
      if (spec.n < 0) throw IndexOutOfRange("index must be >= 0");
      return lucas_adjusted(spec.k, spec.n);
  }
  throw ParameterOutOfRange("unknown family");
}

}  // namespace fibdet
