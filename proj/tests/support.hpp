#pragma once

// Test-only helpers: a parser for the canonical text form, an independent
// dense-map polynomial used as oracle, and random generators.

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibdet/exactalg.hpp"
#include "fibdet/matrixlab.hpp"

namespace fibdet::testing {

// ---------------------------------------------------------------------------
// canonical grammar:  poly := "0" | ["-"] term ((" + " | " - ") term)*
//                     term := int | [int "*"] factor ("*" factor)*
//                     factor := var ["^" ["-"] digits]

inline Polynomial parse_poly(const std::string& text) {
  if (text == "0") return {};
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("parse error at " + std::to_string(pos) + ": " + why + " in '" + text + "'");
  };
  auto digits = [&] {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return text.substr(start, pos - start);
  };
  std::vector<Term> terms;
  bool negative = false;
  if (pos < text.size() && text[pos] == '-') {
    negative = true;
    ++pos;
  }
  while (true) {
    Integer coef(1);
    Monomial m;
    bool factors = true;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coef = Integer(digits());
      factors = pos < text.size() && text[pos] == '*';
      if (factors) {
        if (coef == 1) fail("unit coefficient written out");
        ++pos;
      }
    }
    while (factors) {
      if (pos >= text.size()) fail("expected factor");
      const char v = text[pos++];
      std::int32_t e = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        bool neg = false;
        if (pos < text.size() && text[pos] == '-') {
          neg = true;
          ++pos;
        }
        e = static_cast<std::int32_t>(std::stol(digits()));
        if (neg) e = -e;
        if (e == 1 || e == 0) fail("exponent 0 or 1 written out");
      }
      switch (v) {
        case 'x': m.ex = e; break;
        case 's': m.es = e; break;
        case 'q': m.eq = e; break;
        default: fail(std::string("unknown variable ") + v);
      }
      factors = pos < text.size() && text[pos] == '*';
      if (factors) ++pos;
    }
    terms.push_back({m, negative ? Integer(-coef) : coef});
    if (pos == text.size()) break;
    if (text.compare(pos, 3, " + ") == 0) {
      negative = false;
    } else if (text.compare(pos, 3, " - ") == 0) {
      negative = true;
    } else {
      fail("expected separator");
    }
    pos += 3;
  }
  return Polynomial::from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// Oracle ring: exponent triple (x, s, q) -> coefficient, naive operations.

using Key = std::array<int, 3>;

struct Dense {
  std::map<Key, Integer> c;

  Dense() = default;
  Dense(long v) {  // NOLINT: implicit on purpose
    if (v != 0) c[{0, 0, 0}] = v;
  }
  static Dense mono(int ex, int es, int eq, long coef = 1) {
    Dense d;
    if (coef != 0) d.c[{ex, es, eq}] = coef;
    return d;
  }
  void clean() {
    for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
  }
  friend Dense operator+(Dense a, const Dense& b) {
    for (const auto& [k, v] : b.c) a.c[k] += v;
    a.clean();
    return a;
  }
  friend Dense operator-(Dense a, const Dense& b) {
    for (const auto& [k, v] : b.c) a.c[k] -= v;
    a.clean();
    return a;
  }
  friend Dense operator*(const Dense& a, const Dense& b) {
    Dense out;
    for (const auto& [ka, va] : a.c)
      for (const auto& [kb, vb] : b.c) out.c[{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}] += va * vb;
    out.clean();
    return out;
  }
  bool operator==(const Dense&) const = default;
};

inline Polynomial to_poly(const Dense& d) {
  std::vector<Term> terms;
  for (const auto& [k, v] : d.c) terms.push_back({Monomial{k[0], k[1], k[2]}, v});
  return Polynomial::from_terms(std::move(terms));
}

inline Dense to_dense(const Polynomial& p) {
  Dense d;
  for (const auto& t : p.terms()) d.c[{t.mono.ex, t.mono.es, t.mono.eq}] = t.coef;
  return d;
}

inline Dense dx(int e = 1) { return Dense::mono(e, 0, 0); }
inline Dense ds(int e = 1) { return Dense::mono(0, e, 0); }
inline Dense dq(int e = 1) { return Dense::mono(0, 0, e); }

// Binomial over signed m by the falling factorial in rationals.
inline Integer oracle_binomial(long m, long j) {
  if (j < 0) return 0;
  mpq_class r(1);
  for (long t = 0; t < j; ++t) r *= mpq_class(m - t, t + 1);
  r.canonicalize();
  if (r.get_den() != 1) throw std::logic_error("non-integral binomial");
  return r.get_num();
}

// Gaussian binomial: q-Pascal table for m >= 0, reflection for m < 0:
// [-n | j] = (-1)^j q^{-nj - j(j-1)/2} [n+j-1 | j].
inline Dense oracle_qbinomial(long m, long j) {
  if (j < 0) return {};
  if (m < 0) {
    const long n = -m;
    Dense base = oracle_qbinomial(n + j - 1, j);
    return base * Dense::mono(0, 0, static_cast<int>(-n * j - j * (j - 1) / 2), j % 2 == 0 ? 1 : -1);
  }
  if (j > m) return {};
  static std::map<std::pair<long, long>, Dense> memo;
  if (auto it = memo.find({m, j}); it != memo.end()) return it->second;
  Dense v = (j == 0 || j == m) ? Dense(1)
                               : oracle_qbinomial(m - 1, j - 1) + dq(static_cast<int>(j)) * oracle_qbinomial(m - 1, j);
  memo[{m, j}] = v;
  return v;
}

// Sequences from their recursions, entirely in Dense arithmetic.
// kind: 0 = F, 1 = L, 2 = q-F. s_one specializes s = 1.
inline Dense oracle_seq(int kind, int k, long n, bool s_one = false) {
  std::vector<Dense> v;
  for (long m = 0; m <= n; ++m) {
    if (m < k) {
      v.push_back(kind == 1 && m == 0 ? Dense(k) : dx(static_cast<int>(m)));
      continue;
    }
    Dense coef = s_one ? Dense(1) : ds();
    if (kind == 2) coef = coef * dq(static_cast<int>(m - k));
    v.push_back(dx() * v[m - 1] + coef * v[m - k]);
  }
  return n < 0 ? Dense() : v[n];
}

inline Dense oracle_F(int k, long n, bool s_one = false) { return oracle_seq(0, k, n, s_one); }
inline Dense oracle_L(int k, long n, bool s_one = false) { return oracle_seq(1, k, n, s_one); }
inline Dense oracle_qF(int k, long n, bool s_one = false) { return oracle_seq(2, k, n, s_one); }

// Luc_n via [n]/[n-j] [n-j | j] = [n-j | j] + q^{n-j} [n-j-1 | j-1].
inline Dense oracle_luc(long n) {
  if (n == 0) return Dense(2);
  Dense sum;
  for (long j = 0; 2 * j <= n; ++j) {
    Dense c = oracle_qbinomial(n - j, j) + dq(static_cast<int>(n - j)) * oracle_qbinomial(n - j - 1, j - 1);
    sum = sum + c * Dense::mono(static_cast<int>(n - 2 * j), 0, static_cast<int>(j * (j - 1) / 2));
  }
  return sum;
}

// Leibniz expansion over all permutations.
inline Dense oracle_det(const PolyMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<Dense> cells;
  for (std::size_t i = 0; i < n * n; ++i) cells.push_back(to_dense(m(i / n, i % n)));
  Dense total;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) inversions += perm[a] > perm[b];
    Dense prod(inversions % 2 == 0 ? 1 : -1);
    for (std::size_t i = 0; i < n && !prod.c.empty(); ++i) prod = prod * cells[i * n + perm[i]];
    total = total + prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// ---------------------------------------------------------------------------
// random generators

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  /// Up to max_terms terms, exponents x, s in [0, deg], q in [-qneg, deg],
  /// coefficients in [-cmax, cmax].
  Polynomial poly(int max_terms = 4, int deg = 3, int qneg = 2, long cmax = 9) {
    std::vector<Term> terms;
    const long count = uniform(0, max_terms);
    for (long t = 0; t < count; ++t) {
      Monomial m{static_cast<std::int32_t>(uniform(0, deg)), static_cast<std::int32_t>(uniform(0, deg)),
                 static_cast<std::int32_t>(uniform(-qneg, deg))};
      terms.push_back({m, Integer(uniform(-cmax, cmax))});
    }
    return Polynomial::from_terms(std::move(terms));
  }

  Polynomial nonzero_poly(int max_terms = 4, int deg = 3, int qneg = 2, long cmax = 9) {
    for (;;) {
      Polynomial p = poly(max_terms, deg, qneg, cmax);
      if (!p.is_zero()) return p;
    }
  }

  /// Sparse n x n matrix: each entry zero with probability 1/2, otherwise a
  /// polynomial of degree <= deg with coefficients in [-cmax, cmax].
  PolyMatrix sparse_matrix(std::size_t n, int deg = 2, long cmax = 3) {
    PolyMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (uniform(0, 1) == 1) m(i, j) = poly(3, deg, 0, cmax);
    return m;
  }
};

}  // namespace fibdet::testing
