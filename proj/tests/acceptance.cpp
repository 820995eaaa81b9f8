// Acceptance run: one line per criterion, exact equality throughout.
// Library results are compared with the naive oracles in support.hpp.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "fibdet/combinatorics.hpp"
#include "fibdet/matrixlab.hpp"
#include "fibdet/sequences.hpp"
#include "fibdet/verifier.hpp"
#include "support.hpp"

using namespace fibdet;
using namespace fibdet::testing;

namespace {

struct Tally {
  long checks = 0;
  long bad = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (bad++ == 0) first_failure = what;
  }
};

std::string tag(const char* name, long k, long r, long n) {
  std::ostringstream os;
  os << name << " k=" << k << " r=" << r << " n=" << n;
  return os.str();
}

Polynomial X(long e) { return Polynomial::x(static_cast<std::int32_t>(e)); }

Polynomial det_any(const PolyMatrix& m) { return m.is_lower_hessenberg() ? det_hessenberg(m) : det_bareiss(m); }

// l_n at s = 1 with l_0 = 1.
Dense oracle_l_adj(int k, long n) { return n == 0 ? Dense(1) : oracle_L(k, n, true); }

PolyMatrix literal(long n, const std::function<Dense(long, long)>& f) {
  PolyMatrix m(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) m(i, j) = to_poly(f(i, j));
  return m;
}

Dense B(long m, long j) {
  Dense d;
  const Integer c = oracle_binomial(m, j);
  if (c != 0) d.c[{0, 0, 0}] = c;
  return d;
}

// ---------------------------------------------------------------------------

Tally criterion1() {
  Tally t;
  for (int k = 1; k <= 5; ++k) {
    for (int r = 0; r < k; ++r)
      for (long n = 0; n <= 8; ++n) {
        const Polynomial target = to_poly(oracle_F(k, k * n + r, true));
        t.expect(X(r) * det_any(build_theorem_matrix(MatrixKind::A, k, r, n)) == target, tag("T1", k, r, n));
        t.expect(X(r) * det_any(build_theorem_matrix(MatrixKind::B, k, r, n)) == target, tag("T2", k, r, n));
        t.expect(X(r) * det_any(build_theorem_matrix(MatrixKind::C, k, r, n)) == to_poly(oracle_l_adj(k, k * n + r)),
                 tag("T3", k, r, n));
      }
    for (long n = 0; n <= 8; ++n)
      t.expect(det_any(build_theorem_matrix(MatrixKind::D, k, 0, n)) == X(n) * to_poly(oracle_F(k, (k - 1) * n, true)),
               tag("T4", k, 0, n));
  }
  return t;
}

Tally criterion2() {
  Tally t;
  const Dense x2 = dx(2);
  for (long n = 0; n <= 8; ++n) {
    const PolyMatrix e1 = literal(n, [&](long i, long j) { return B(i - 1, j) * x2 + B(i + 1, j + 1); });
    const PolyMatrix e2 = literal(n, [&](long i, long j) { return B(i, j) * x2 + B(i + 2, j + 1); });
    const PolyMatrix e3 = literal(n, [&](long i, long j) { return B(2 * i, i - j) * x2 + B(2 * i + 2, i + 1 - j); });
    const PolyMatrix e4 =
        literal(n, [&](long i, long j) { return B(2 * i + 1, i - j) * x2 + B(2 * i + 3, i + 1 - j); });
    const PolyMatrix e5 = literal(n, [&](long i, long j) { return B(i + 1, j + 1) * x2 - B(i, j - 1); });
    t.expect(det_any(e1) == to_poly(oracle_F(2, 2 * n, true)), tag("E1", 2, 0, n));
    t.expect(X(1) * det_any(e2) == to_poly(oracle_F(2, 2 * n + 1, true)), tag("E2", 2, 1, n));
    t.expect(det_any(e3) == to_poly(oracle_l_adj(2, 2 * n)), tag("E3", 2, 0, n));
    t.expect(X(1) * det_any(e4) == to_poly(oracle_L(2, 2 * n + 1, true)), tag("E4", 2, 1, n));
    t.expect(det_any(e5) == X(n) * to_poly(oracle_F(2, n, true)), tag("E5", 2, 0, n));
    t.expect(e1 == build_theorem_matrix(MatrixKind::A, 2, 0, n), tag("E1=A", 2, 0, n));
    t.expect(e2 == build_theorem_matrix(MatrixKind::A, 2, 1, n), tag("E2=A", 2, 1, n));
    t.expect(e3 == build_theorem_matrix(MatrixKind::C, 2, 0, n), tag("E3=C", 2, 0, n));
    t.expect(e4 == build_theorem_matrix(MatrixKind::C, 2, 1, n), tag("E4=C", 2, 1, n));
    t.expect(e5 == build_theorem_matrix(MatrixKind::D, 2, 0, n), tag("E5=D", 2, 0, n));
    for (const char* id : {"E1", "E2", "E3", "E4", "E5"})
      t.expect(check_theorem(id, {std::nullopt, std::nullopt, n, std::nullopt, std::nullopt}).pass, tag(id, 2, 0, n));
  }
  return t;
}

Tally criterion3() {
  Tally t;
  for (int k = 1; k <= 4; ++k)
    for (int r = 0; r < k; ++r)
      for (long n = 0; n <= 6; ++n) {
        const Polynomial target = to_poly(oracle_qF(k, k * n + r, true));
        t.expect(X(r) * det_any(build_theorem_matrix(MatrixKind::Aq, k, r, n)) == target, tag("T5", k, r, n));
        t.expect(X(r) * det_any(build_theorem_matrix(MatrixKind::Bq, k, r, n)) == target, tag("T6", k, r, n));
      }
  t.expect(to_canonical_string(qfib(3, 5, SValue::one)) == "x^5 + q^2*x^2 + q*x^2 + x^2", "F_5^(3)(x;q) display");
  const Polynomial q = Polynomial::q();
  t.expect(qfib(3, 5, SValue::one) == X(5) + (1 + q + q * q) * X(2), "F_5^(3)(x;q) value");
  return t;
}

Tally criterion4() {
  Tally t;
  for (long n = 0; n <= 8; ++n) {
    const Dense even = n == 0 ? Dense(1) : oracle_luc(2 * n);
    t.expect(det_any(build_theorem_matrix(MatrixKind::LucEven, 2, 0, n)) == to_poly(even), tag("P7 even", 2, 0, n));
    t.expect(X(1) * det_any(build_theorem_matrix(MatrixKind::LucOdd, 2, 0, n)) == to_poly(oracle_luc(2 * n + 1)),
             tag("P7 odd", 2, 1, n));
    Dense f;
    for (long j = 0; 2 * j <= n; ++j)
      f = f + oracle_qbinomial(n - j, j) * Dense::mono(static_cast<int>(n - 2 * j), 0, static_cast<int>(j * j));
    t.expect(det_any(build_theorem_matrix(MatrixKind::Prop8, 2, 0, n)) == X(n) * to_poly(f), tag("P8", 2, 0, n));
  }
  for (long n = 0; n <= 16; ++n)
    t.expect(substitute(qluc(n), Var::q, Polynomial(1)) == to_poly(oracle_L(2, n, true)), tag("Luc at q=1", 2, 0, n));
  return t;
}

Tally criterion5() {
  Tally t;
  auto run = [&](const char* id, IdentityParams p) {
    const auto c = check_identity(id, p);
    t.expect(c.pass && !c.expected_failure, std::string(id) + " " + to_string(p));
  };
  const std::nullopt_t none = std::nullopt;
  for (long k = 1; k <= 5; ++k)
    for (long r = 0; r < k; ++r)
      for (long n = 0; n <= 8; ++n) {
        run("thm2a", {k, r, n, none, none});
        if (n == 0) continue;
        run("lem10a", {k, r, n, none, none});
        run("lem10c", {k, r, n, none, none});
        run("thm2b", {k, r, n, none, none});
        for (long i = 1; i < k + n; ++i) run("lem10b", {k, r, n, i, none});
        if (k >= 2) {
          const auto c = check_identity("lem10b", {k, r, n, n + k, none});
          t.expect(!c.pass && c.expected_failure && !c.witness.is_zero(), "lem10b boundary " + to_string(c.params));
        }
      }
  for (long k = 1; k <= 4; ++k) {
    for (long r = 0; r < k; ++r)
      for (long n = 0; n <= 6; ++n) {
        run("thm6a", {k, r, n, none, none});
        if (n == 0) continue;
        run("lem11a", {k, r, n, none, none});
        run("thm6b", {k, r, n, none, none});
        for (long i = 1; i < k + n; ++i) run("lem11b", {k, r, n, i, none});
      }
    for (long n = 0; n <= 6; ++n)
      for (long i = 0; i <= n; ++i) run("thm6c", {k, none, n, i, none});
  }
  // s(1, k+1) = x^{k+r} while f(1, k+1) = 0
  for (long k = 2; k <= 5; ++k)
    for (long r = 0; r < k; ++r)
      t.expect(check_identity("lem10b", {k, r, 1, k + 1, none}).witness == X(k + r), tag("s(1,k+1)", k, r, 1));
  return t;
}

Tally criterion6() {
  Tally t;
  for (long n = 0; n <= 12; ++n)
    for (long k = 0; k <= n; ++k) {
      Dense lhs, rhs;
      for (long j = 0; j <= k; ++j) {
        lhs = lhs + oracle_qbinomial(n, k - j) * oracle_qbinomial(n - k - 1, j) * dq(static_cast<int>(j * j));
        rhs = rhs + oracle_qbinomial(n - 1, k - j) * oracle_qbinomial(n - k, j) * dq(static_cast<int>(j * j));
      }
      t.expect(lhs == rhs, tag("(54)=(55) oracle", k, 0, n));
      t.expect(check_identity("prop8coef", {k, std::nullopt, n, std::nullopt, std::nullopt}).pass,
               tag("prop8coef", k, 0, n));
    }
  return t;
}

Tally criterion7() {
  Tally t;
  const Polynomial x = Polynomial::x(), s = Polynomial::s();
  for (int k = 1; k <= 4; ++k) {
    const PolyMatrix a = companion(k);
    for (unsigned n = 0; n <= 10; ++n)
      t.expect(trace(mat_pow(a, n)) == to_poly(oracle_L(k, n)), tag("trace", k, 0, n));
    t.expect(mat_pow(a, k) == mat_add(mat_scale(mat_pow(a, k - 1), x),
                                      mat_scale(PolyMatrix::identity(static_cast<std::size_t>(k)), s)),
             tag("A^k", k, 0, k));
    for (long n = 0; n <= 10; ++n) {
      // Column j of A^{n+k}: s F_{n-j..n-j+k-1} for j < k-1, F_{n+1..n+k} for j = k-1.
      const PolyMatrix p = mat_pow(a, static_cast<unsigned>(n + k));
      bool ok = true;
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) {
          const long idx = j < k - 1 ? n - j + i : n + 1 + i;
          Dense e = idx >= 0 ? oracle_F(k, idx) : Dense();
          if (j < k - 1) e = e * ds();
          ok = ok && p(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) == to_poly(e);
        }
      t.expect(ok, tag("columns", k, 0, n));
      t.expect(columns_check(k, n), tag("columns_check", k, 0, n));
    }
  }
  const std::vector<std::vector<std::vector<std::string>>> shown{
      {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}},
      {{"0", "1", "0"}, {"0", "0", "1"}, {"s", "0", "x"}},
      {{"0", "0", "1"}, {"s", "0", "x"}, {"x*s", "s", "x^2"}},
      {{"s", "0", "x"}, {"x*s", "s", "x^2"}, {"x^2*s", "x*s", "x^3 + s"}},
      {{"x*s", "s", "x^2"}, {"x^2*s", "x*s", "x^3 + s"}, {"x^3*s + s^2", "x^2*s", "x^4 + 2*x*s"}}};
  for (unsigned e = 0; e < shown.size(); ++e) {
    const PolyMatrix p = mat_pow(companion(3), e);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        t.expect(p(i, j) == parse_poly(shown[e][i][j]), "A_3^" + std::to_string(e) + " entry");
  }
  return t;
}

Tally criterion8() {
  Tally t;
  for (int k = 1; k <= 5; ++k)
    for (long n = 0; n <= 20; ++n) {
      t.expect(fib(k, n) == fib_closed(k, n), tag("fib_closed", k, 0, n));
      t.expect(lucas(k, n) == lucas_closed(k, n), tag("lucas_closed", k, 0, n));
      t.expect(fib(k, n) == to_poly(oracle_F(k, n)), tag("fib oracle", k, 0, n));
    }
  for (int k = 1; k <= 4; ++k)
    for (long n = 0; n <= 12; ++n) {
      t.expect(qfib(k, n) == qfib_closed(k, n), tag("qfib_closed", k, 0, n));
      t.expect(qfib(k, n) == to_poly(oracle_qF(k, n)), tag("qfib oracle", k, 0, n));
      t.expect(substitute(qfib(k, n), Var::q, Polynomial(1)) == fib(k, n), tag("qfib at q=1", k, 0, n));
    }
  return t;
}

Tally criterion9() {
  Tally t;
  const std::vector<long> f3{1, 1, 1, 2, 3, 4, 6, 9, 13, 19, 28};
  const std::vector<long> l3{3, 1, 1, 4, 5, 6, 10, 15, 21, 31};
  const std::vector<long> f2{1, 1, 2, 3, 5, 8, 13, 21};
  for (std::size_t n = 0; n < f3.size(); ++n)
    t.expect(eval_int(fib(3, n), 1, 1, 1) == Rational(f3[n]), "F^(3) anchor " + std::to_string(n));
  for (std::size_t n = 0; n < l3.size(); ++n)
    t.expect(eval_int(lucas(3, n), 1, 1, 1) == Rational(l3[n]), "L^(3) anchor " + std::to_string(n));
  for (std::size_t n = 0; n < f2.size(); ++n)
    t.expect(eval_int(fib(2, n), 1, 1, 1) == Rational(f2[n]), "F^(2) anchor " + std::to_string(n));
  return t;
}

Tally criterion10() {
  Tally t;
  const MatrixKind kinds[] = {MatrixKind::A,      MatrixKind::B,     MatrixKind::C,       MatrixKind::D,
                              MatrixKind::Aq,     MatrixKind::Bq,    MatrixKind::LucEven, MatrixKind::LucOdd,
                              MatrixKind::Prop8,  MatrixKind::SparseF, MatrixKind::SparseL};
  for (MatrixKind w : kinds) {
    const bool takes_r = w == MatrixKind::A || w == MatrixKind::B || w == MatrixKind::C || w == MatrixKind::Aq ||
                         w == MatrixKind::Bq;
    const int kmax = (w == MatrixKind::Aq || w == MatrixKind::Bq) ? 4 : 5;
    for (int k = 1; k <= kmax; ++k)
      for (int r = 0; r < (takes_r ? k : 1); ++r)
        for (long n = 0; n <= 5; ++n) {
          const PolyMatrix m = build_theorem_matrix(w, k, r, n);
          const Polynomial d = det_cofactor(m);
          bool ok = det_bareiss(m) == d;
          if (m.is_lower_hessenberg()) ok = ok && det_hessenberg(m) == d;
          t.expect(ok, tag(matrix_kind_name(w).c_str(), k, r, n));
        }
  }
  Gen g(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    const PolyMatrix m = g.sparse_matrix(static_cast<std::size_t>(g.uniform(1, 4)), 2, 3);
    const Polynomial d = det_cofactor(m);
    bool ok = det_bareiss(m) == d && d == to_poly(oracle_det(m));
    if (m.is_lower_hessenberg()) ok = ok && det_hessenberg(m) == d;
    t.expect(ok, "random matrix " + std::to_string(trial));
  }
  return t;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* what;
    std::function<Tally()> run;
    double budget_s;
  };
  const Criterion criteria[] = {
      {1, "determinant theorems A, B, C, D (k <= 5, n <= 8)", criterion1, 60.0},
      {2, "introductory k = 2 determinants (n <= 8)", criterion2, 0},
      {3, "q-determinants Aq, Bq (k <= 4, n <= 6) and F_5^(3)(x;q)", criterion3, 0},
      {4, "Luc and F(x,q;q) determinants (n <= 8), Luc at q = 1", criterion4, 0},
      {5, "summation lemmas and proof identities, boundary probe", criterion5, 0},
      {6, "coefficient identity, 0 <= k <= n <= 12", criterion6, 0},
      {7, "companion matrix trace, power relation, columns", criterion7, 0},
      {8, "closed forms against recursions", criterion8, 0},
      {9, "integer anchors at x = s = 1", criterion9, 0},
      {10, "determinant engine agreement", criterion10, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    std::string error;
    try {
      t = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool slow = c.budget_s > 0 && secs > c.budget_s;
    const bool ok = error.empty() && t.bad == 0 && !slow;
    failed += ok ? 0 : 1;
    std::printf("criterion %2d %s  %s  [%ld checks, %.2fs]\n", c.id, ok ? "PASS" : "FAIL", c.what, t.checks, secs);
    if (!error.empty()) std::printf("    exception: %s\n", error.c_str());
    if (t.bad > 0) std::printf("    %ld failing, first: %s\n", t.bad, t.first_failure.c_str());
    if (slow) std::printf("    over the %.0fs budget\n", c.budget_s);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
