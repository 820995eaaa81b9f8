#include "fibdet/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "fibdet/combinatorics.hpp"
#include "fibdet/matrixlab.hpp"
#include "fibdet/sequences.hpp"

namespace fibdet {

namespace {

// ---------------------------------------------------------------------------
// small helpers

Polynomial B(long m, long j) { return Polynomial(binomial(m, j)); }
Polynomial QB(long m, long j) { return q_binomial(m, j); }
Polynomial X(long e) { return Polynomial::x(static_cast<std::int32_t>(e)); }
Polynomial Q(long e) { return Polynomial::q(static_cast<std::int32_t>(e)); }
long sgn(long e) { return e % 2 == 0 ? 1 : -1; }

// Classical and q sequences at s = 1.
Polynomial F1(long k, long n) { return fib(static_cast<int>(k), n, SValue::one); }
Polynomial qF1(long k, long n) { return qfib(static_cast<int>(k), n, SValue::one); }

long need(const std::optional<long>& v, const char* name) {
  if (!v) throw ParameterOutOfRange(std::string("missing parameter ") + name);
  return *v;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw ParameterOutOfRange(what);
}

struct Sides {
  Polynomial lhs;
  Polynomial rhs;
};

struct KR {
  long k;
  long r;
};

KR kr_of(const IdentityParams& p) {
  const long k = need(p.k, "k");
  const long r = need(p.r, "r");
  require(k >= 1, "k must be >= 1");
  require(0 <= r && r < k, "r must satisfy 0 <= r < k");
  return {k, r};
}

long k_of(const IdentityParams& p) {
  const long k = need(p.k, "k");
  require(k >= 1, "k must be >= 1");
  return k;
}

// ---------------------------------------------------------------------------
// determinants with engine cross-checks

constexpr std::size_t kCrossCheckDim = 5;

Polynomial det_checked(const PolyMatrix& m) {
  const bool hess = m.is_lower_hessenberg();
  if (m.dim() > kCrossCheckDim) return hess ? det_hessenberg(m) : det_bareiss(m);
  Polynomial d = det_cofactor(m);
  if (!(det_bareiss(m) == d)) throw EngineDisagreement("cofactor and Bareiss determinants differ");
  if (hess && !(det_hessenberg(m) == d)) {
    throw EngineDisagreement("cofactor and Hessenberg determinants differ");
  }
  return d;
}

Polynomial first_difference(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.dim() != b.dim()) return Polynomial(1);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Polynomial d = a(i, j) - b(i, j);
      if (!d.is_zero()) return d;
    }
  }
  return {};
}

PolyMatrix literal_matrix(long n, const std::function<Polynomial(long, long)>& entry) {
  PolyMatrix m(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = entry(i, j);
  }
  return m;
}

// ---------------------------------------------------------------------------
// identities

Sides rel8(const IdentityParams& p) {
  const long k = k_of(p);
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  const int ki = static_cast<int>(k);
  return {lucas(ki, n + k), fib(ki, n + k) + Polynomial::s().scaled(k - 1) * fib(ki, n)};
}

Sides lem10a(const IdentityParams& p) {
  const auto [k, r] = kr_of(p);
  const long n = need(p.n, "n");
  require(n >= 1, "n must be >= 1");
  Polynomial lhs;
  for (long j = 0; j <= n; ++j) lhs += B(r + 1, j).scaled(sgn(j)) * F1(k, k * (n - j) + r);
  return {lhs, X(r + 1) * F1(k, k * n - 1)};
}

Sides lem10b_sides(long k, long r, long n, long i) {
  Polynomial lhs;
  for (long j = 0; j < n; ++j) {
    lhs += B(i - k + r, n - 1 - j).scaled(sgn(n - 1 - j)) * X(k) * F1(k, k * j + r);
  }
  return {lhs, X(r + i) * F1(k, k * n - i)};
}

Sides lem10b(const IdentityParams& p) {
  const auto [k, r] = kr_of(p);
  const long n = need(p.n, "n");
  const long i = need(p.i, "i");
  require(n >= 1, "n must be >= 1");
  require(0 < i && i <= k + n, "i must satisfy 0 < i <= k + n");
  require(k >= 2 || i < k + n, "i = n + k needs k >= 2 (F_{-1} undefined for k = 1)");
  return lem10b_sides(k, r, n, i);
}

Sides lem10c(const IdentityParams& p) {
  const auto [k, r] = kr_of(p);
  const long n = need(p.n, "n");
  require(n >= 1, "n must be >= 1");
  Polynomial lhs;
  for (long j = 0; j < n; ++j) {
    lhs += B(1 - k + r, n - 1 - j).scaled(sgn(n - 1 - j)) * X(k) * F1(k, k * j + r);
  }
  return {lhs, X(r + 1) * F1(k, k * n - 1)};
}

Sides thm2a(const IdentityParams& p) {
  const auto [k, r] = kr_of(p);
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  Polynomial lhs;
  for (long j = 0; j <= n; ++j) lhs += B(n + r, n - j).scaled(sgn(n - j)) * F1(k, k * j + r);
  return {lhs, X(n + r) * F1(k, (k - 1) * n)};
}

Sides thm2b(const IdentityParams& p) {
  const auto [k, r] = kr_of(p);
  const long n = need(p.n, "n");
  require(n >= 1, "n must be >= 1");
  Polynomial lhs;
  for (long j = 0; j <= n; ++j) {
    lhs += B(n + r - k, n - j - 1).scaled(sgn(n - j)) * X(k) * F1(k, k * j + r);
  }
  return {lhs, -(X(n + r) * F1(k, (k - 1) * n))};
}

Sides lucas_power(const IdentityParams& p) {
  const long k = k_of(p);
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  Polynomial lhs;
  for (long j = 0; j <= n / k; ++j) {
    lhs += B(n, j).scaled(sgn(j)) * lucas_adjusted(static_cast<int>(k), n - k * j);
  }
  return {lhs, X(n)};
}

Sides thm4sum(const IdentityParams& p) {
  const long k = k_of(p);
  const long n = need(p.n, "n");
  require(n >= 1, "n must be >= 1");
  Polynomial first;
  for (long j = 0; j < n; ++j) first += B(n + k - 2, n - j - 1) * X(k + j) * F1(k, (k - 1) * j);
  Polynomial second;
  for (long j = 0; j <= n; ++j) second += B(n - 1, n - j) * X(j) * F1(k, (k - 1) * j);
  Polynomial rhs = X(1) * F1(k, k * n - 1);
  // Both sums must equal x F_{kn-1}; report the first one that does not.
  return {first == rhs ? second : first, rhs};
}

Sides lem11a(const IdentityParams& p) {
  const auto [k, r] = kr_of(p);
  const long n = need(p.n, "n");
  require(n >= 1, "n must be >= 1");
  Polynomial lhs;
  for (long j = 0; j <= n; ++j) {
    const long e = n * k * j + choose2(j) - k * choose2(j + 1);
    lhs += QB(r + 1, j).scaled(sgn(j)) * Q(e) * qF1(k, k * (n - j) + r);
  }
  return {lhs, X(r + 1) * qF1(k, k * n - 1)};
}

Sides lem11b(const IdentityParams& p) {
  const auto [k, r] = kr_of(p);
  const long n = need(p.n, "n");
  const long i = need(p.i, "i");
  require(n >= 1, "n must be >= 1");
  require(0 < i && i <= k + n, "i must satisfy 0 < i <= k + n");
  require(k >= 2 || i < k + n, "i = n + k needs k >= 2 (F_{-1} undefined for k = 1)");
  Polynomial lhs;
  for (long j = 0; j < n; ++j) {
    const long e = choose2(n - j - 1) - k * choose2(n - j) + (n - j - 1) * (k * n - i + 1);
    lhs += QB(i - k + r, n - 1 - j).scaled(sgn(n - 1 - j)) * X(k) * Q(e) * qF1(k, k * j + r);
  }
  return {lhs, X(r + i) * qF1(k, k * n - i)};
}

Sides thm6a(const IdentityParams& p) {
  const auto [k, r] = kr_of(p);
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  Polynomial lhs;
  for (long j = 0; j <= n; ++j) {
    const long e = (k - 1) * (choose2(n) - choose2(j));
    lhs += QB(n + r, n - j).scaled(sgn(n - j)) * Q(e) * qF1(k, k * j + r);
  }
  return {lhs, X(n + r) * qF1(k, (k - 1) * n)};
}

Sides thm6b(const IdentityParams& p) {
  const auto [k, r] = kr_of(p);
  const long n = need(p.n, "n");
  require(n >= 1, "n must be >= 1");
  Polynomial lhs;
  for (long j = 0; j <= n; ++j) {
    const long e = (k - 1) * (choose2(n) - choose2(j + 1));
    lhs += QB(n + r - k, n - j - 1).scaled(sgn(n - j)) * X(k) * Q(e) * qF1(k, k * j + r);
  }
  return {lhs, -(X(n + r) * qF1(k, (k - 1) * n))};
}

Sides thm6c(const IdentityParams& p) {
  const long k = k_of(p);
  const long n = need(p.n, "n");
  const long i = need(p.i, "i");
  require(n >= 0, "n must be >= 0");
  require(0 <= i && i <= n, "i must satisfy 0 <= i <= n");
  Polynomial lhs;
  for (long j = 0; j <= n; ++j) {
    const long e = (k - 1) * (choose2(n) - choose2(j)) + i * (n - j);
    lhs += QB(n - i, n - j).scaled(sgn(n - j)) * Q(e) * qF1(k, k * j);
  }
  return {lhs, X(n - i) * qF1(k, (k - 1) * n + i)};
}

Sides prop8coef(const IdentityParams& p) {
  const long n = need(p.n, "n");
  const long k = need(p.k, "k");
  require(0 <= k && k <= n, "prop8coef needs 0 <= k <= n");
  Polynomial lhs;
  Polynomial rhs;
  for (long j = 0; j <= k; ++j) {
    lhs += QB(n, k - j) * QB(n - k - 1, j) * Q(j * j);
    rhs += QB(n - 1, k - j) * QB(n - k, j) * Q(j * j);
  }
  return {lhs, rhs};
}

Sides luc_norm(const IdentityParams& p) {
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  Polynomial lhs;
  for (long j = 0; j <= n / 2; ++j) lhs += QB(n, j).scaled(sgn(j)) * qluc_adjusted(n - 2 * j);
  return {lhs, X(n)};
}

Sides vandermonde(const IdentityParams& p) {
  const long i = need(p.i, "i");
  const long r = need(p.r, "r");
  const long l = need(p.n, "n");
  require(i >= 0 && r >= 0 && l >= 0, "vandermonde needs i, r, n >= 0");
  Polynomial lhs;
  for (long j = 0; j <= i; ++j) lhs += B(i, j) * B(r + 1, l - j + 1);
  return {lhs, B(i + r + 1, l + 1)};
}

Sides q_vandermonde(const IdentityParams& p) {
  const long n = need(p.n, "n");
  const long m = need(p.m, "m");
  const long k = need(p.k, "k");
  require(n >= 0 && m >= 0 && k >= 0, "qVandermonde needs n, m, k >= 0");
  Polynomial rhs;
  for (long j = 0; j <= k; ++j) rhs += QB(n, j) * QB(m, k - j) * Q((n - j) * (k - j));
  return {QB(n + m, k), rhs};
}

Sides lem9(const IdentityParams& p, bool lucas_rule) {
  const long k = k_of(p);
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  const int ki = static_cast<int>(k);
  Polynomial w = lucas_rule
                     ? lemma9_witness(lemma9_lucas_rule(ki), [ki](long m) { return lucas_adjusted(ki, m); }, n)
                     : lemma9_witness(lemma9_qfib_rule(ki), [k](long m) { return qF1(k, m); }, n);
  return {w, {}};
}

Sides companion_trace(const IdentityParams& p) {
  const long k = k_of(p);
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  return {trace(mat_pow(companion(static_cast<int>(k)), static_cast<unsigned>(n))), lucas(static_cast<int>(k), n)};
}

Sides companion_power(const IdentityParams& p) {
  const long k = k_of(p);
  const PolyMatrix a = companion(static_cast<int>(k));
  const PolyMatrix lhs = mat_pow(a, static_cast<unsigned>(k));
  const PolyMatrix rhs = mat_add(mat_scale(mat_pow(a, static_cast<unsigned>(k - 1)), X(1)),
                                 mat_scale(PolyMatrix::identity(static_cast<std::size_t>(k)), Polynomial::s()));
  return {first_difference(lhs, rhs), {}};
}

Sides companion_columns(const IdentityParams& p) {
  const long k = need(p.k, "k");
  const long n = need(p.n, "n");
  require(k >= 1, "k must be >= 1");
  require(n > -k, "companionColumns needs n > -k");
  return {columns_witness(static_cast<int>(k), n), {}};
}

Sides sparse(const IdentityParams& p, bool lucas_rep) {
  const long k = k_of(p);
  const long n = need(p.n, "n");
  require(n >= (lucas_rep ? 1 : 0), lucas_rep ? "sparseL needs n >= 1" : "sparseF needs n >= 0");
  const int ki = static_cast<int>(k);
  const PolyMatrix m = build_theorem_matrix(lucas_rep ? MatrixKind::SparseL : MatrixKind::SparseF, ki, 0, n);
  return {det_checked(m), lucas_rep ? lucas(ki, n) : fib(ki, n)};
}

Sides seq_pair(const IdentityParams& p, int which) {
  const long k = k_of(p);
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  const int ki = static_cast<int>(k);
  switch (which) {
    case 0: return {fib(ki, n), fib_closed(ki, n)};
    case 1: return {lucas(ki, n), lucas_closed(ki, n)};
    case 2: return {qfib(ki, n), qfib_closed(ki, n)};
    case 3: return {substitute(qfib(ki, n), Var::q, Polynomial(1)), fib(ki, n)};
    default: {
      const Polynomial qs = Polynomial::q() * Polynomial::s();
      const Polynomial qks = Polynomial::q(ki) * Polynomial::s();
      return {qfib(ki, n + k), X(1) * substitute(qfib(ki, n + k - 1), Var::s, qs) +
                                   Polynomial::s() * substitute(qfib(ki, n), Var::s, qks)};
    }
  }
}

// ---------------------------------------------------------------------------
// determinant theorems

Sides theorem_kr(const IdentityParams& p, MatrixKind kind, bool lucas_target, bool q_target) {
  const auto [k, r] = kr_of(p);
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  const PolyMatrix m = build_theorem_matrix(kind, static_cast<int>(k), static_cast<int>(r), n);
  const Polynomial lhs = X(r) * det_checked(m);
  const long idx = k * n + r;
  if (lucas_target) return {lhs, lucas_adjusted(static_cast<int>(k), idx)};
  return {lhs, q_target ? qF1(k, idx) : F1(k, idx)};
}

Sides theorem4(const IdentityParams& p) {
  const long k = k_of(p);
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  const PolyMatrix m = build_theorem_matrix(MatrixKind::D, static_cast<int>(k), 0, n);
  return {det_checked(m), X(n) * F1(k, (k - 1) * n)};
}

Sides prop7(const IdentityParams& p) {
  const long r = need(p.r, "r");
  const long n = need(p.n, "n");
  require(r == 0 || r == 1, "P7 takes r = 0 (even) or r = 1 (odd)");
  require(n >= 0, "n must be >= 0");
  const PolyMatrix m = build_theorem_matrix(r == 0 ? MatrixKind::LucEven : MatrixKind::LucOdd, 2, 0, n);
  return {X(r) * det_checked(m), qluc_adjusted(2 * n + r)};
}

Sides prop8(const IdentityParams& p) {
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  const PolyMatrix m = build_theorem_matrix(MatrixKind::Prop8, 2, 0, n);
  // F_n(x, q; q): the bivariate q-Fibonacci polynomial with s := q.
  return {det_checked(m), X(n) * substitute(qfib(2, n), Var::s, Polynomial::q())};
}

// Intro determinants, built from their own entry formulas and then compared
// with the k = 2 theorem matrices.
Sides intro(const IdentityParams& p, int which) {
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  PolyMatrix literal;
  PolyMatrix instance;
  long shift = 0;
  Polynomial target;
  switch (which) {
    case 1:
      literal = literal_matrix(n, [](long i, long j) { return B(i - 1, j) * X(2) + B(i + 1, j + 1); });
      instance = build_theorem_matrix(MatrixKind::A, 2, 0, n);
      target = F1(2, 2 * n);
      break;
    case 2:
      literal = literal_matrix(n, [](long i, long j) { return B(i, j) * X(2) + B(i + 2, j + 1); });
      instance = build_theorem_matrix(MatrixKind::A, 2, 1, n);
      shift = 1;
      target = F1(2, 2 * n + 1);
      break;
    case 3:
      literal = literal_matrix(n, [](long i, long j) { return B(2 * i, i - j) * X(2) + B(2 * i + 2, i + 1 - j); });
      instance = build_theorem_matrix(MatrixKind::C, 2, 0, n);
      target = lucas_adjusted(2, 2 * n);
      break;
    case 4:
      literal = literal_matrix(n, [](long i, long j) { return B(2 * i + 1, i - j) * X(2) + B(2 * i + 3, i + 1 - j); });
      instance = build_theorem_matrix(MatrixKind::C, 2, 1, n);
      shift = 1;
      target = lucas_adjusted(2, 2 * n + 1);
      break;
    default:
      literal = literal_matrix(n, [](long i, long j) { return B(i + 1, j + 1) * X(2) - B(i, j - 1); });
      instance = build_theorem_matrix(MatrixKind::D, 2, 0, n);
      target = X(n) * F1(2, n);
      break;
  }
  Polynomial mismatch = first_difference(literal, instance);
  if (!mismatch.is_zero()) return {mismatch, {}};
  return {X(shift) * det_checked(literal), target};
}

Sides strict_probe(const IdentityParams& p) {
  const auto [k, r] = kr_of(p);
  const long n = need(p.n, "n");
  require(n >= 0, "n must be >= 0");
  const PolyMatrix m = literal_matrix(n, [k = k, r = r](long i, long j) {
    return Q((k - r - 1) * j) * q_binomial_strict(i - k + r + 1, j) * X(k) +
           Q((k - r) * j) * q_binomial_strict(i + r + 1, j + 1);
  });
  return {X(r) * det_checked(m), qF1(k, k * n + r)};
}

// ---------------------------------------------------------------------------
// grids

using Grid = std::vector<IdentityParams>;

IdentityParams P(std::optional<long> k, std::optional<long> r, std::optional<long> n,
                 std::optional<long> i = std::nullopt, std::optional<long> m = std::nullopt) {
  return {k, r, n, i, m};
}

Grid grid_kn(long kmin, long kmax, long nmin, long nmax) {
  Grid g;
  for (long k = kmin; k <= kmax; ++k)
    for (long n = nmin; n <= nmax; ++n) g.push_back(P(k, std::nullopt, n));
  return g;
}

Grid grid_krn(long kmax, long nmin, long nmax) {
  Grid g;
  for (long k = 1; k <= kmax; ++k)
    for (long r = 0; r < k; ++r)
      for (long n = nmin; n <= nmax; ++n) g.push_back(P(k, r, n));
  return g;
}

Grid grid_n(long nmin, long nmax) {
  Grid g;
  for (long n = nmin; n <= nmax; ++n) g.push_back(P(std::nullopt, std::nullopt, n));
  return g;
}

Grid grid_krni(long kmax, long nmax, bool boundary) {
  Grid g;
  for (long k = 1; k <= kmax; ++k)
    for (long r = 0; r < k; ++r)
      for (long n = 1; n <= nmax; ++n) {
        if (boundary) {
          if (k >= 2) g.push_back(P(k, r, n, n + k));
        } else {
          for (long i = 1; i < k + n; ++i) g.push_back(P(k, r, n, i));
        }
      }
  return g;
}

struct Entry {
  std::string id;
  bool theorem = false;
  std::function<Sides(const IdentityParams&)> eval;
  std::function<Grid(const SuiteRanges&)> grid;
  /// Grid of registered expected-failure probes (may be empty).
  std::function<Grid(const SuiteRanges&)> probes;
  std::function<bool(const IdentityParams&)> is_probe;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    auto none = [](const SuiteRanges&) { return Grid{}; };
    auto never = [](const IdentityParams&) { return false; };
    auto add = [&](std::string id, bool theorem, std::function<Sides(const IdentityParams&)> eval,
                   std::function<Grid(const SuiteRanges&)> grid) {
      e.push_back({std::move(id), theorem, std::move(eval), std::move(grid), none, never});
    };

    // Determinant theorems.
    add("T1", true, [](const IdentityParams& p) { return theorem_kr(p, MatrixKind::A, false, false); },
        [](const SuiteRanges& R) { return grid_krn(R.kmax, 0, R.nmax); });
    add("T2", true, [](const IdentityParams& p) { return theorem_kr(p, MatrixKind::B, false, false); },
        [](const SuiteRanges& R) { return grid_krn(R.kmax, 0, R.nmax); });
    add("T3", true, [](const IdentityParams& p) { return theorem_kr(p, MatrixKind::C, true, false); },
        [](const SuiteRanges& R) { return grid_krn(R.kmax, 0, R.nmax); });
    add("T4", true, theorem4, [](const SuiteRanges& R) { return grid_kn(1, R.kmax, 0, R.nmax); });
    add("T5", true, [](const IdentityParams& p) { return theorem_kr(p, MatrixKind::Aq, false, true); },
        [](const SuiteRanges& R) { return grid_krn(R.qkmax, 0, R.qnmax); });
    add("T6", true, [](const IdentityParams& p) { return theorem_kr(p, MatrixKind::Bq, false, true); },
        [](const SuiteRanges& R) { return grid_krn(R.qkmax, 0, R.qnmax); });
    add("P7", true, prop7, [](const SuiteRanges& R) {
      Grid g;
      for (long r = 0; r <= 1; ++r)
        for (long n = 0; n <= R.nmax; ++n) g.push_back(P(std::nullopt, r, n));
      return g;
    });
    add("P8", true, prop8, [](const SuiteRanges& R) { return grid_n(0, R.nmax); });
    for (int w = 1; w <= 5; ++w) {
      add("E" + std::to_string(w), true, [w](const IdentityParams& p) { return intro(p, w); },
          [](const SuiteRanges& R) { return grid_n(0, R.nmax); });
    }
    e.push_back({"qbinStrict", true, strict_probe, none,
                 [](const SuiteRanges& R) {
                   Grid g;
                   for (long k = 2; k <= R.qkmax; ++k)
                     for (long n = 1; n <= R.qnmax; ++n) g.push_back(P(k, 0, n));
                   return g;
                 },
                 [](const IdentityParams&) { return true; }});

    // Sequence relations and representations.
    add("rel8", false, rel8, [](const SuiteRanges& R) { return grid_kn(1, R.kmax, 0, R.seq_nmax); });
    add("fibClosed", false, [](const IdentityParams& p) { return seq_pair(p, 0); },
        [](const SuiteRanges& R) { return grid_kn(1, R.kmax, 0, R.seq_nmax); });
    add("lucasClosed", false, [](const IdentityParams& p) { return seq_pair(p, 1); },
        [](const SuiteRanges& R) { return grid_kn(1, R.kmax, 0, R.seq_nmax); });
    add("qfibClosed", false, [](const IdentityParams& p) { return seq_pair(p, 2); },
        [](const SuiteRanges& R) { return grid_kn(1, R.qkmax, 0, R.seq_nmax); });
    add("qfibAtOne", false, [](const IdentityParams& p) { return seq_pair(p, 3); },
        [](const SuiteRanges& R) { return grid_kn(1, R.qkmax, 0, R.seq_nmax); });
    add("qfibBivariate", false, [](const IdentityParams& p) { return seq_pair(p, 4); },
        [](const SuiteRanges& R) { return grid_kn(1, R.qkmax, 0, R.nmax); });
    add("companionTrace", false, companion_trace,
        [](const SuiteRanges& R) { return grid_kn(1, R.kmax, 0, R.seq_nmax); });
    add("companionPower", false, companion_power, [](const SuiteRanges& R) {
      Grid g;
      for (long k = 1; k <= R.kmax; ++k) g.push_back(P(k, std::nullopt, std::nullopt));
      return g;
    });
    add("companionColumns", false, companion_columns, [](const SuiteRanges& R) {
      Grid g;
      for (long k = 1; k <= R.kmax; ++k)
        for (long n = 1 - k; n <= R.seq_nmax; ++n) g.push_back(P(k, std::nullopt, n));
      return g;
    });
    add("sparseF", false, [](const IdentityParams& p) { return sparse(p, false); },
        [](const SuiteRanges& R) { return grid_kn(1, R.kmax, 0, R.nmax); });
    add("sparseL", false, [](const IdentityParams& p) { return sparse(p, true); },
        [](const SuiteRanges& R) { return grid_kn(1, R.kmax, 1, R.nmax); });
    add("lem9F", false, [](const IdentityParams& p) { return lem9(p, false); },
        [](const SuiteRanges& R) { return grid_kn(1, R.qkmax, 0, R.nmax); });
    add("lem9L", false, [](const IdentityParams& p) { return lem9(p, true); },
        [](const SuiteRanges& R) { return grid_kn(1, R.kmax, 0, R.nmax); });

    // Summation identities from the proofs.
    add("lem10a", false, lem10a, [](const SuiteRanges& R) { return grid_krn(R.kmax, 1, R.nmax); });
    e.push_back({"lem10b", false, lem10b,
                 [](const SuiteRanges& R) { return grid_krni(R.kmax, R.nmax, false); },
                 [](const SuiteRanges& R) { return grid_krni(R.kmax, R.nmax, true); },
                 [](const IdentityParams& p) { return *p.i == *p.n + *p.k; }});
    add("lem10c", false, lem10c, [](const SuiteRanges& R) { return grid_krn(R.kmax, 1, R.nmax); });
    add("thm2a", false, thm2a, [](const SuiteRanges& R) { return grid_krn(R.kmax, 0, R.nmax); });
    add("thm2b", false, thm2b, [](const SuiteRanges& R) { return grid_krn(R.kmax, 1, R.nmax); });
    add("lucasPower", false, lucas_power, [](const SuiteRanges& R) { return grid_kn(1, R.kmax, 0, R.nmax); });
    add("thm4sum", false, thm4sum, [](const SuiteRanges& R) { return grid_kn(1, R.kmax, 1, R.nmax); });
    add("vandermonde", false, vandermonde, [](const SuiteRanges& R) {
      Grid g;
      for (long i = 0; i <= R.nmax; ++i)
        for (long r = 0; r <= R.nmax; ++r)
          for (long l = 0; l <= R.nmax; ++l) g.push_back(P(std::nullopt, r, l, i));
      return g;
    });
    add("lem11a", false, lem11a, [](const SuiteRanges& R) { return grid_krn(R.qkmax, 1, R.qnmax); });
    e.push_back({"lem11b", false, lem11b,
                 [](const SuiteRanges& R) { return grid_krni(R.qkmax, R.qnmax, false); }, none,
                 [](const IdentityParams& p) { return *p.i == *p.n + *p.k; }});
    add("thm6a", false, thm6a, [](const SuiteRanges& R) { return grid_krn(R.qkmax, 0, R.qnmax); });
    add("thm6b", false, thm6b, [](const SuiteRanges& R) { return grid_krn(R.qkmax, 1, R.qnmax); });
    add("thm6c", false, thm6c, [](const SuiteRanges& R) {
      Grid g;
      for (long k = 1; k <= R.qkmax; ++k)
        for (long n = 0; n <= R.qnmax; ++n)
          for (long i = 0; i <= n; ++i) g.push_back(P(k, std::nullopt, n, i));
      return g;
    });
    add("qVandermonde", false, q_vandermonde, [](const SuiteRanges& R) {
      Grid g;
      for (long n = 0; n <= R.nmax; ++n)
        for (long m = 0; m <= R.nmax; ++m)
          for (long k = 0; k <= R.nmax; ++k) g.push_back(P(k, std::nullopt, n, std::nullopt, m));
      return g;
    });
    add("prop8coef", false, prop8coef, [](const SuiteRanges& R) {
      Grid g;
      for (long n = 0; n <= R.seq_nmax; ++n)
        for (long k = 0; k <= n; ++k) g.push_back(P(k, std::nullopt, n));
      return g;
    });
    add("lucNorm", false, luc_norm, [](const SuiteRanges& R) { return grid_n(0, R.nmax); });
    return e;
  }();
  return entries;
}

const Entry& lookup(std::string_view id) {
  for (const auto& e : registry()) {
    if (e.id == id) return e;
  }
  throw UnknownIdentity("unknown identity '" + std::string(id) + "'");
}

IdentityCheck run_entry(const Entry& e, const IdentityParams& params) {
  Sides sides = e.eval(params);
  IdentityCheck c;
  c.identity_id = e.id;
  c.params = params;
  c.witness = sides.lhs - sides.rhs;
  c.pass = c.witness.is_zero();
  c.expected_failure = e.is_probe(params);
  return c;
}

}  // namespace

std::string to_string(const IdentityParams& p) {
  std::ostringstream os;
  bool first = true;
  auto field = [&](const char* name, const std::optional<long>& v) {
    if (!v) return;
    if (!first) os << ' ';
    first = false;
    os << name << '=' << *v;
  };
  field("k", p.k);
  field("r", p.r);
  field("n", p.n);
  field("i", p.i);
  field("m", p.m);
  return os.str();
}

SuiteRanges SuiteRanges::from_bounds(int kmax, long nmax) {
  SuiteRanges r;
  r.kmax = kmax;
  r.nmax = nmax;
  r.qkmax = std::min(kmax, 4);
  r.qnmax = std::min(nmax, 6L);
  return r;
}

TriangularRule lemma9_qfib_rule(int k) {
  return [k](long i, long j) -> Polynomial {
    Polynomial t;
    if (j == i) t += Polynomial(1);
    if (j == i - 1) t += Polynomial::x();
    if (j == i - k) t += Polynomial::q(static_cast<std::int32_t>(i - k)).scaled(sgn(k - 1));
    return t;
  };
}

TriangularRule lemma9_lucas_rule(int k) {
  return [k](long i, long j) -> Polynomial {
    Polynomial t;
    if (j == i) t += Polynomial(1);
    if (j == i - 1) t += Polynomial::x();
    if (j == i - k) t += Polynomial(sgn(k - 1) * (i == k ? k : 1));
    return t;
  };
}

Polynomial lemma9_witness(const TriangularRule& t, const SequenceFn& seq, long n) {
  if (n < 0) throw ParameterOutOfRange("n must be >= 0");
  std::vector<Polynomial> values;
  for (long m = 0; m <= n; ++m) values.push_back(seq(m));
  for (long m = 0; m <= n; ++m) {
    Polynomial sum;
    for (long j = 0; j <= m; ++j) {
      sum += t(m, j).scaled(sgn(m - j)) * values[static_cast<std::size_t>(j)];
    }
    sum -= Polynomial(m == 0 ? 1 : 0);
    if (!sum.is_zero()) return sum;
  }
  const PolyMatrix shifted = literal_matrix(n, [&](long i, long j) { return t(i + 1, j); });
  return det_hessenberg(shifted) - values[static_cast<std::size_t>(n)];
}

bool check_lemma9(const TriangularRule& t, const SequenceFn& seq, long n) {
  return lemma9_witness(t, seq, n).is_zero();
}

IdentityCheck check_identity(std::string_view identity_id, const IdentityParams& params) {
  return run_entry(lookup(identity_id), params);
}

IdentityCheck check_theorem(std::string_view theorem_id, const IdentityParams& params) {
  const Entry& e = lookup(theorem_id);
  if (!e.theorem) throw UnknownIdentity("'" + std::string(theorem_id) + "' is not a determinant theorem");
  return run_entry(e, params);
}

std::vector<std::string> identity_ids() {
  std::vector<std::string> ids;
  for (const auto& e : registry()) ids.push_back(e.id);
  return ids;
}

bool is_theorem_id(std::string_view id) {
  for (const auto& e : registry()) {
    if (e.id == id) return e.theorem;
  }
  return false;
}

SuiteReport run_suite(const SuiteRanges& ranges, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();

  struct Task {
    const Entry* entry;
    IdentityParams params;
  };
  std::vector<Task> tasks;
  for (const auto& e : registry()) {
    if (ranges.subset && std::find(ranges.subset->begin(), ranges.subset->end(), e.id) == ranges.subset->end()) {
      continue;
    }
    for (auto& p : e.grid(ranges)) tasks.push_back({&e, std::move(p)});
    for (auto& p : e.probes(ranges)) tasks.push_back({&e, std::move(p)});
  }

  std::vector<IdentityCheck> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t idx = next++; idx < tasks.size(); idx = next++) {
      try {
        results[idx] = run_entry(*tasks[idx].entry, tasks[idx].params);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = tasks.size();
      }
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  SuiteReport report;
  report.ranges = ranges;
  for (auto& c : results) {
    if (c.expected_failure) {
      if (c.pass) ++report.failures;
      report.expected_failures.push_back(std::move(c));
    } else {
      if (!c.pass) ++report.failures;
      report.checks.push_back(std::move(c));
    }
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return report;
}

}  // namespace fibdet
