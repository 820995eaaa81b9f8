#include "fibdet/combinatorics.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace fibdet {

Integer binomial(long m, long j) {
  if (j < 0) return 0;
  // Running product stays integral: after t steps it equals binom(m, t).
  Integer acc = 1;
  for (long t = 0; t < j; ++t) {
    acc *= (m - t);
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(t + 1));
    if (acc == 0) break;
  }
  return acc;
}

namespace {

Polynomial one_minus_q_pow(long e) { return Polynomial(1) - Polynomial::q(static_cast<std::int32_t>(e)); }

Polynomial q_binomial_product(long m, long j) {
  // Each prefix product is itself binom(m, t)_q, so every division is exact.
  Polynomial acc(1);
  for (long t = 1; t <= j; ++t) {
    acc *= one_minus_q_pow(m + 1 - t);
    if (acc.is_zero()) return acc;
    acc = divide_exact(acc, one_minus_q_pow(t));
  }
  return acc;
}

}  // namespace

Polynomial q_binomial(long m, long j) {
  if (j < 0) return {};
  if (j == 0) return Polynomial(1);
  if (m >= 0 && j > m) return {};

  static std::mutex mu;
  static std::map<std::pair<long, long>, Polynomial> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({m, j}); it != cache.end()) return it->second;
  }
  Polynomial value = q_binomial_product(m, j);
  std::lock_guard lock(mu);
  return cache.try_emplace({m, j}, std::move(value)).first->second;
}

Polynomial q_binomial_strict(long m, long j) {
  if (j < 0 || j > m) return {};
  return q_binomial(m, j);
}

Polynomial q_int(long n) {
  if (n < 0) throw ParameterOutOfRange("q_int requires n >= 0");
  std::vector<Term> terms;
  terms.reserve(static_cast<std::size_t>(n));
  for (long e = 0; e < n; ++e) terms.push_back({Monomial{0, 0, static_cast<std::int32_t>(e)}, Integer(1)});
  return Polynomial::from_terms(std::move(terms));
}

}  // namespace fibdet
