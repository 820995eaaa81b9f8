#pragma once

// Generalized Fibonacci and Lucas polynomials, their q-analogues and the
// q-Lucas family. Recursions are authoritative; the closed-form sums exist
// to cross-check them.

#include <string>
#include <string_view>

#include "fibdet/exactalg.hpp"

namespace fibdet {

class IndexOutOfRange : public ParameterOutOfRange {
 public:
  using ParameterOutOfRange::ParameterOutOfRange;
};

class NonIntegerCoefficient : public Error {
 public:
  using Error::Error;
};

/// Whether s stays symbolic or is specialized to 1 (the F(x) shorthand).
enum class SValue { symbolic, one };

enum class Family { F, L, qF, Luc, lAdj };

std::string family_name(Family f);
Family parse_family(std::string_view name);  // throws ParameterOutOfRange

/// Names one sequence element, e.g. {Family::qF, 3, 5} for F_5^{(3)}(x,s;q).
struct SeqSpec {
  Family family = Family::F;
  int k = 1;
  long n = 0;
};

/// F_n^{(k)}(x,s): F_n = x F_{n-1} + s F_{n-k}, F_n = x^n for 0 <= n < k and
/// 0 for -k < n < 0.
Polynomial fib(int k, long n, SValue s = SValue::symbolic);
/// sum_j binom(n-(k-1)j, j) s^j x^{n-kj}
Polynomial fib_closed(int k, long n);

/// L_n^{(k)}(x,s): same recursion, L_0 = k, L_n = x^n for 0 < n < k.
Polynomial lucas(int k, long n, SValue s = SValue::symbolic);
/// sum_j n/(n-(k-1)j) binom(n-(k-1)j, j) s^j x^{n-kj}; L_0 = k.
Polynomial lucas_closed(int k, long n);

/// F_n^{(k)}(x,s;q): F_{n+k} = x F_{n+k-1} + q^n s F_n, same initial values as fib.
Polynomial qfib(int k, long n, SValue s = SValue::symbolic);
/// sum_j q^{k binom(j,2)} [n-(k-1)j over j] s^j x^{n-kj}
Polynomial qfib_closed(int k, long n);
/// F_{n+k}(x,s) = x F_{n+k-1}(x,qs) + s F_n(x,q^k s), all in qfib.
bool qfib_bivariate_check(int k, long n);

/// Luc_n(x) = sum_j q^{binom(j,2)} [n-j over j] [n]/[n-j] x^{n-2j}; Luc_0 = 2.
Polynomial qluc(long n);
/// Luc_n for n > 0 and 1 for n = 0, the value a determinant of size 0 takes.
Polynomial qluc_adjusted(long n);

/// l_n^{(k)}(x) = L_n^{(k)}(x, 1) for n > 0, l_0^{(k)} = 1.
Polynomial lucas_adjusted(int k, long n);

/// L_{n+k} = F_{n+k} + (k-1) s F_n.
bool relation_fl_check(int k, long n);

Polynomial evaluate(const SeqSpec& spec, SValue s = SValue::symbolic);

}  // namespace fibdet
