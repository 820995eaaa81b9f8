#include "fibdet/matrixlab.hpp"

#include <bit>
#include <utility>

#include "fibdet/combinatorics.hpp"
#include "fibdet/sequences.hpp"

namespace fibdet {

PolyMatrix PolyMatrix::identity(std::size_t n) {
  PolyMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial(1);
  return m;
}

bool PolyMatrix::is_lower_hessenberg() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 2; j < n_; ++j) {
      if (!(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

PolyMatrix mat_add(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("mat_add: dimensions differ");
  PolyMatrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = a(i, j) + b(i, j);
  }
  return out;
}

PolyMatrix mat_scale(const PolyMatrix& a, const Polynomial& c) {
  return a.map([&](const Polynomial& p) { return p * c; });
}

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("mat_mul: dimensions differ");
  const std::size_t n = a.dim();
  PolyMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial sum;
      for (std::size_t t = 0; t < n; ++t) {
        if (a(i, t).is_zero() || b(t, j).is_zero()) continue;
        sum += a(i, t) * b(t, j);
      }
      out(i, j) = std::move(sum);
    }
  }
  return out;
}

PolyMatrix mat_pow(const PolyMatrix& a, unsigned e) {
  PolyMatrix result = PolyMatrix::identity(a.dim());
  PolyMatrix base = a;
  while (e > 0) {
    if (e & 1U) result = mat_mul(result, base);
    e >>= 1U;
    if (e > 0) base = mat_mul(base, base);
  }
  return result;
}

Polynomial trace(const PolyMatrix& a) {
  Polynomial sum;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += a(i, i);
  return sum;
}

PolyMatrix companion(int k) {
  if (k < 1) throw ParameterOutOfRange("companion matrix needs k >= 1");
  const auto n = static_cast<std::size_t>(k);
  PolyMatrix m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = Polynomial(1);
  m(n - 1, 0) += Polynomial::s();
  m(n - 1, n - 1) += Polynomial::x();
  return m;
}

namespace {

// s * F_m^{(k)}(x, s), continuing the recursion below -(k-1): s F_{-k} = 1
// and F_m = 0 for 2 - 2k <= m < -k. Enough for every column of A_k^{n+k}.
Polynomial s_times_fib(int k, long m) {
  if (m > -k) return Polynomial::s() * fib(k, m);
  if (m == -k) return Polynomial(1);
  if (m >= 2 - 2L * k) return {};
  throw IndexOutOfRange("s*F index below the supported range");
}

}  // namespace

bool columns_check(int k, long n) { return columns_witness(k, n).is_zero(); }

Polynomial columns_witness(int k, long n) {
  if (k < 1) throw ParameterOutOfRange("columns_check needs k >= 1");
  if (n <= -k) throw ParameterOutOfRange("columns_check needs n > -k");
  const PolyMatrix p = mat_pow(companion(k), static_cast<unsigned>(n + k));
  for (int j = 0; j < k; ++j) {
    for (int t = 0; t < k; ++t) {
      const Polynomial expected = j < k - 1 ? s_times_fib(k, n - j + t) : fib(k, n + 1 + t);
      Polynomial diff = p(static_cast<std::size_t>(t), static_cast<std::size_t>(j)) - expected;
      if (!diff.is_zero()) return diff;
    }
  }
  return {};
}

std::string matrix_kind_name(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::A: return "A";
    case MatrixKind::B: return "B";
    case MatrixKind::C: return "C";
    case MatrixKind::D: return "D";
    case MatrixKind::Aq: return "Aq";
    case MatrixKind::Bq: return "Bq";
    case MatrixKind::LucEven: return "LucEven";
    case MatrixKind::LucOdd: return "LucOdd";
    case MatrixKind::Prop8: return "Prop8";
    case MatrixKind::SparseF: return "SparseF";
    case MatrixKind::SparseL: return "SparseL";
  }
  return "?";
}

MatrixKind parse_matrix_kind(std::string_view name) {
  for (int v = 0; v <= static_cast<int>(MatrixKind::SparseL); ++v) {
    auto kind = static_cast<MatrixKind>(v);
    if (matrix_kind_name(kind) == name) return kind;
  }
  throw ParameterOutOfRange("unknown matrix family '" + std::string(name) + "'");
}

namespace {

bool needs_r(MatrixKind which) {
  switch (which) {
    case MatrixKind::A:
    case MatrixKind::B:
    case MatrixKind::C:
    case MatrixKind::Aq:
    case MatrixKind::Bq: return true;
    default: return false;
  }
}

Polynomial int_poly(const Integer& c) { return Polynomial(c); }

Polynomial xk(int k) { return Polynomial::x(k); }

Polynomial qpow(long e) { return Polynomial::q(static_cast<std::int32_t>(e)); }

}  // namespace

PolyMatrix build_theorem_matrix(MatrixKind which, int k, int r, long n) {
  if (n < 0) throw ParameterOutOfRange("matrix size must be >= 0");
  if (k < 1) throw ParameterOutOfRange("k must be >= 1");
  if (needs_r(which) && (r < 0 || r >= k)) {
    throw ParameterOutOfRange("r must satisfy 0 <= r < k (k = " + std::to_string(k) +
                              ", r = " + std::to_string(r) + ")");
  }
  PolyMatrix m(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      Polynomial e;
      switch (which) {
        case MatrixKind::A:
          e = int_poly(binomial(i - k + 1 + r, j)) * xk(k) + int_poly(binomial(i + 1 + r, j + 1));
          break;
        case MatrixKind::B:
          e = int_poly(binomial(i - k + 1 + r, i - j)) * xk(k) +
              int_poly(binomial(i + 1 + r, i - j + 1));
          break;
        case MatrixKind::C:
          e = int_poly(binomial(k * i + r, i - j)) * xk(k) +
              int_poly(binomial(k * (i + 1) + r, i - j + 1));
          break;
        case MatrixKind::D:
          e = int_poly(binomial(i + k - 1, j + k - 1)) * xk(k) - int_poly(binomial(i, j - 1));
          break;
        case MatrixKind::Aq:
          e = qpow((k - r - 1) * j) * q_binomial(i - k + r + 1, j) * xk(k) +
              qpow((k - r) * j) * q_binomial(i + r + 1, j + 1);
          break;
        case MatrixKind::Bq:
          e = q_binomial(i - k + r + 1, i - j) * xk(k) +
              qpow((k - 1) * j) * q_binomial(i + r + 1, i - j + 1);
          break;
        case MatrixKind::LucEven:
          e = q_binomial(2 * i, i - j) * xk(2) + q_binomial(2 * i + 2, i + 1 - j);
          break;
        case MatrixKind::LucOdd:
          e = q_binomial(2 * i + 1, i - j) * xk(2) + q_binomial(2 * i + 3, i + 1 - j);
          break;
        case MatrixKind::Prop8:
          e = q_binomial(i + 1, j + 1) * xk(2) - q_binomial(i, j - 1);
          break;
        case MatrixKind::SparseF:
        case MatrixKind::SparseL: {
          if (j == i) e += Polynomial::x();
          if (j == i + 1) e += Polynomial(1);
          if (j == i - k + 1) {
            const long mult = (which == MatrixKind::SparseL && i == k - 1 && j == 0) ? k : 1;
            e += Polynomial::s().scaled(Integer((k % 2 == 1 ? 1 : -1) * mult));
          }
          break;
        }
      }
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = std::move(e);
    }
  }
  return m;
}

Polynomial det_cofactor(const PolyMatrix& m) {
  const std::size_t n = m.dim();
  if (n > kCofactorMaxDim) {
    throw TooLarge("cofactor expansion limited to dimension " + std::to_string(kCofactorMaxDim));
  }
  // minor[S] = det of rows n-|S|..n-1 restricted to the column set S,
  // expanded along its first row.
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<Polynomial> minor(full + 1);
  minor[0] = Polynomial(1);
  for (std::size_t set = 1; set <= full; ++set) {
    const std::size_t row = n - static_cast<std::size_t>(std::popcount(set));
    Polynomial sum;
    int rank = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(set & (std::size_t{1} << c))) continue;
      const Polynomial& a = m(row, c);
      const Polynomial& rest = minor[set & ~(std::size_t{1} << c)];
      if (!a.is_zero() && !rest.is_zero()) {
        Polynomial prod = a * rest;
        if (rank % 2 == 0) {
          sum += prod;
        } else {
          sum -= prod;
        }
      }
      ++rank;
    }
    minor[set] = std::move(sum);
  }
  return minor[full];
}

Polynomial det_hessenberg(const PolyMatrix& m) {
  if (!m.is_lower_hessenberg()) throw NotHessenberg("matrix has nonzero entries above the superdiagonal");
  const std::size_t n = m.dim();
  // D[t] = leading principal minor of size t;
  // D[t+1] = sum_j (-1)^{t-j} h(t,j) h(j,j+1)...h(t-1,t) D[j].
  std::vector<Polynomial> lead(n + 1);
  lead[0] = Polynomial(1);
  for (std::size_t t = 0; t < n; ++t) {
    Polynomial sum;
    Polynomial chain(1);
    for (std::size_t jj = t + 1; jj-- > 0;) {
      if (jj < t) {
        chain *= m(jj, jj + 1);
        if (chain.is_zero()) break;
      }
      if (m(t, jj).is_zero() || lead[jj].is_zero()) continue;
      Polynomial term = m(t, jj) * chain * lead[jj];
      if ((t - jj) % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    lead[t + 1] = std::move(sum);
  }
  return lead[n];
}

Polynomial det_bareiss(const PolyMatrix& input) {
  const std::size_t n = input.dim();
  if (n == 0) return Polynomial(1);
  PolyMatrix m = input;
  bool negate = false;
  Polynomial prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && m(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return {};
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        try {
          m(i, j) = prev.is_one() ? std::move(num) : divide_exact(num, prev);
        } catch (const NotDivisible& e) {
          throw InternalDivisionFailure(std::string("Bareiss step not exact: ") + e.what());
        }
      }
      m(i, k) = Polynomial();
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

}  // namespace fibdet
