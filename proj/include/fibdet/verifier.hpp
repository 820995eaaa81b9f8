#pragma once

// Registry of machine-checkable identities and determinant theorems, each
// verified as an exact polynomial identity. A check carries its witness
// lhs - rhs, which is zero exactly when it passes.

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibdet/exactalg.hpp"

namespace fibdet {

class UnknownIdentity : public Error {
 public:
  using Error::Error;
};

/// Determinant engines disagreed; never expected, reported as an internal error.
class EngineDisagreement : public Error {
 public:
  using Error::Error;
};

/// Parameters of one check. Which fields are used depends on the identity.
struct IdentityParams {
  std::optional<long> k;
  std::optional<long> r;
  std::optional<long> n;
  std::optional<long> i;
  std::optional<long> m;

  bool operator==(const IdentityParams&) const = default;
};

std::string to_string(const IdentityParams& p);

struct IdentityCheck {
  std::string identity_id;
  IdentityParams params;
  bool pass = false;
  Polynomial witness;
  /// Registered probe of a claimed NON-identity; a reproduced failure is the
  /// expected outcome.
  bool expected_failure = false;
};

struct SuiteRanges {
  int kmax = 5;
  long nmax = 8;
  int qkmax = 4;
  long qnmax = 6;
  long seq_nmax = 12;
  /// nullopt runs everything; an empty list runs nothing.
  std::optional<std::vector<std::string>> subset;

  /// Defaults used by the CLI: q bounds follow kmax/nmax capped at 4/6.
  static SuiteRanges from_bounds(int kmax, long nmax);
};

struct SuiteReport {
  SuiteRanges ranges;
  std::vector<IdentityCheck> checks;
  std::vector<IdentityCheck> expected_failures;
  /// Failed ordinary checks plus probes that unexpectedly passed.
  long failures = 0;
  std::chrono::milliseconds elapsed{0};
};

/// Lower-triangular rule t(i, j) with t(i, i) = 1.
using TriangularRule = std::function<Polynomial(long i, long j)>;
using SequenceFn = std::function<Polynomial(long n)>;

/// t_k(i,i) = 1, t_k(i,i-1) = x, t_k(i,i-k) = (-1)^{k-1} q^{i-k}.
TriangularRule lemma9_qfib_rule(int k);
/// The same rule at q = 1 with t(k, 0) replaced by (-1)^{k-1} k.
TriangularRule lemma9_lucas_rule(int k);

/// sum_{j<=m} (-1)^{m-j} t(m,j) M_j = [m = 0] for every m <= n, and
/// det (t(i+1, j))_{i,j<n} = M_n.
bool check_lemma9(const TriangularRule& t, const SequenceFn& seq, long n);
/// Witness form of check_lemma9: zero iff it holds.
Polynomial lemma9_witness(const TriangularRule& t, const SequenceFn& seq, long n);

/// Evaluates one registered identity (see identity_ids()). Throws
/// UnknownIdentity or ParameterOutOfRange.
IdentityCheck check_identity(std::string_view identity_id, const IdentityParams& params);

/// Determinant statements: T1..T6, P7 (r = 0 even, r = 1 odd), P8 and the
/// k = 2 instances E1..E5.
IdentityCheck check_theorem(std::string_view theorem_id, const IdentityParams& params);

/// All registered ids in suite order.
std::vector<std::string> identity_ids();
bool is_theorem_id(std::string_view id);

/// Runs every registered identity over its grid. The report order is the
/// registry order and grid order, independent of the thread count.
SuiteReport run_suite(const SuiteRanges& ranges, unsigned threads = 1);

}  // namespace fibdet
