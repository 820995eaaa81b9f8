#pragma once

// Dense square polynomial matrices: the companion matrix of the k-step
// recursion, every determinant family we verify, and three independent
// exact determinant engines.

#include <string>
#include <string_view>
#include <vector>

#include "fibdet/exactalg.hpp"

namespace fibdet {

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};
class TooLarge : public Error {
 public:
  using Error::Error;
};
class NotHessenberg : public Error {
 public:
  using Error::Error;
};
class InternalDivisionFailure : public Error {
 public:
  using Error::Error;
};

class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  static PolyMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  Polynomial& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  bool operator==(const PolyMatrix&) const = default;

  /// Zero entries for every j > i + 1.
  bool is_lower_hessenberg() const;
  /// Applies f to every entry.
  template <typename F>
  PolyMatrix map(F&& f) const {
    PolyMatrix out(n_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = f(entries_[i]);
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Polynomial> entries_;
};

PolyMatrix mat_add(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix mat_scale(const PolyMatrix& a, const Polynomial& c);
PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix mat_pow(const PolyMatrix& a, unsigned e);
Polynomial trace(const PolyMatrix& a);

/// A_k(x,s): ones on the superdiagonal, s at (k-1, 0), x at (k-1, k-1).
/// For k = 1 both cells coincide and the single entry is x + s.
PolyMatrix companion(int k);

/// Column j of A_k^{n+k} equals (s F_{n-j}, ..., s F_{n-j+k-1})^T for
/// j < k-1 and (F_{n+1}, ..., F_{n+k})^T for j = k-1. Requires n > -k; at
/// k = 1 only the last column exists.
bool columns_check(int k, long n);
/// First nonzero difference between A_k^{n+k} and the expected columns, or 0.
Polynomial columns_witness(int k, long n);

enum class MatrixKind { A, B, C, D, Aq, Bq, LucEven, LucOdd, Prop8, SparseF, SparseL };

std::string matrix_kind_name(MatrixKind kind);
MatrixKind parse_matrix_kind(std::string_view name);  // throws ParameterOutOfRange

/// Entry rules (i, j = 0..n-1), with binom/q-binom as in combinatorics.hpp:
///   A       binom(i-k+1+r, j) x^k + binom(i+1+r, j+1)
///   B       binom(i-k+1+r, i-j) x^k + binom(i+1+r, i-j+1)
///   C       binom(ki+r, i-j) x^k + binom(k(i+1)+r, i-j+1)
///   D       binom(i+k-1, j+k-1) x^k - binom(i, j-1)
///   Aq      q^{(k-r-1)j} [i-k+r+1 | j] x^k + q^{(k-r)j} [i+r+1 | j+1]
///   Bq      [i-k+r+1 | i-j] x^k + q^{(k-1)j} [i+r+1 | i-j+1]
///   LucEven [2i | i-j] x^2 + [2i+2 | i+1-j]
///   LucOdd  [2i+1 | i-j] x^2 + [2i+3 | i+1-j]
///   Prop8   [i+1 | j+1] x^2 - [i | j-1]
///   SparseF x on the diagonal, 1 above it, (-1)^{k-1} s at (i, i-k+1)
///   SparseL SparseF with the s-term at (k-1, 0) replaced by (-1)^{k-1} k s
/// A, B, C, Aq, Bq need 0 <= r < k; the others ignore r. LucEven, LucOdd and
/// Prop8 are fixed at k = 2 and ignore k.
PolyMatrix build_theorem_matrix(MatrixKind which, int k, int r, long n);

/// Laplace expansion (memoized over column subsets). Dimension <= 7.
Polynomial det_cofactor(const PolyMatrix& m);
/// Leading-principal-minor recurrence for lower Hessenberg matrices.
Polynomial det_hessenberg(const PolyMatrix& m);
/// Fraction-free (Bareiss) elimination with exact divisions.
Polynomial det_bareiss(const PolyMatrix& m);

constexpr std::size_t kCofactorMaxDim = 7;

}  // namespace fibdet
