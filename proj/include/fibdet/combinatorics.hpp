#pragma once

// Binomial coefficients with signed upper argument and Gaussian
// q-binomials extended to negative upper argument.

#include "fibdet/exactalg.hpp"

namespace fibdet {

/// m(m-1)...(m-j+1)/j! for j >= 0, and 0 for j < 0. Any signed m.
Integer binomial(long m, long j);

/// Gaussian binomial via the product formula
///   prod_{t=1..j} (1 - q^{m+1-t}) / (1 - q^t),
/// which for m < 0 is a signed Laurent expression, e.g. [-1 over 1] = -q^-1.
/// Agrees with the usual convention (0 unless 0 <= j <= m) for m >= 0.
/// Results are memoized; the function is safe to call concurrently.
Polynomial q_binomial(long m, long j);

/// Strict convention: product formula for 0 <= j <= m, 0 otherwise. Only
/// used to show that the negative-top extension is required.
Polynomial q_binomial_strict(long m, long j);

/// [n] = 1 + q + ... + q^{n-1}; [0] = 0.
Polynomial q_int(long n);

/// n(n-1)/2, the exponent of q^{binom(n,2)}; valid for any signed n.
constexpr long choose2(long n) { return n * (n - 1) / 2; }

}  // namespace fibdet
