#include "reglab/exactla/normal_form.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>

#include "reglab/errors.hpp"

namespace reglab {

namespace {

// row_dst -= q * row_src over columns [from, cols).
void row_submul(IntMatrix& T, std::size_t dst, std::size_t src, const Int& q, std::size_t from) {
  auto d = T.row(dst);
  auto s = T.row(src);
  for (std::size_t c = from; c < T.cols(); ++c) {
    if (sgn(s[c]) == 0) continue;
    mpz_submul(d[c].get_mpz_t(), q.get_mpz_t(), s[c].get_mpz_t());
  }
}

void row_swap(IntMatrix& T, std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = T.row(a);
  auto rb = T.row(b);
  for (std::size_t c = 0; c < T.cols(); ++c) mpz_swap(ra[c].get_mpz_t(), rb[c].get_mpz_t());
}

void row_negate(IntMatrix& T, std::size_t a, std::size_t from) {
  auto r = T.row(a);
  for (std::size_t c = from; c < T.cols(); ++c) mpz_neg(r[c].get_mpz_t(), r[c].get_mpz_t());
}

// col_dst -= q * col_src.
void col_submul(IntMatrix& M, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t r = 0; r < M.rows(); ++r) {
    const Int& s = M(r, src);
    if (sgn(s) == 0) continue;
    mpz_submul(M(r, dst).get_mpz_t(), q.get_mpz_t(), s.get_mpz_t());
  }
}

void col_swap(IntMatrix& M, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < M.rows(); ++r) mpz_swap(M(r, a).get_mpz_t(), M(r, b).get_mpz_t());
}

void col_negate(IntMatrix& M, std::size_t a) {
  for (std::size_t r = 0; r < M.rows(); ++r) mpz_neg(M(r, a).get_mpz_t(), M(r, a).get_mpz_t());
}

// Row echelon form of columns [0, active) of T by unimodular row operations;
// columns [active, cols) are carried along. Returns the rank. With `reduce`,
// entries above each pivot are brought into [0, pivot).
std::size_t row_echelon(IntMatrix& T, std::size_t active, bool reduce) {
  std::size_t r = 0;
  const std::size_t nrows = T.rows();
  Int q;
  for (std::size_t j = 0; j < active && r < nrows; ++j) {
    while (true) {
      std::size_t piv = nrows;
      std::size_t nonzero = 0;
      for (std::size_t i = r; i < nrows; ++i) {
        if (sgn(T(i, j)) == 0) continue;
        ++nonzero;
        if (piv == nrows || mpz_cmpabs(T(i, j).get_mpz_t(), T(piv, j).get_mpz_t()) < 0) piv = i;
      }
      if (nonzero == 0) break;
      if (nonzero > 1) {
        for (std::size_t i = r; i < nrows; ++i) {
          if (i == piv || sgn(T(i, j)) == 0) continue;
          mpz_tdiv_q(q.get_mpz_t(), T(i, j).get_mpz_t(), T(piv, j).get_mpz_t());
          row_submul(T, i, piv, q, j);
        }
        continue;
      }
      row_swap(T, r, piv);
      if (sgn(T(r, j)) < 0) row_negate(T, r, j);
      if (reduce) {
        for (std::size_t i = 0; i < r; ++i) {
          if (sgn(T(i, j)) == 0) continue;
          mpz_fdiv_q(q.get_mpz_t(), T(i, j).get_mpz_t(), T(r, j).get_mpz_t());
          if (sgn(q) != 0) row_submul(T, i, r, q, j);
        }
      }
      ++r;
      break;
    }
  }
  return r;
}

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

// Indices of a maximal set of rows of A that are independent modulo a large
// prime (hence independent over Q).
std::vector<std::size_t> independent_rows_mod_p(const IntMatrix& A) {
  const std::size_t k = A.cols();
  std::vector<std::vector<std::uint64_t>> basis;  // reduced rows
  std::vector<std::size_t> pivot_col;
  std::vector<std::size_t> chosen;
  std::vector<std::uint64_t> row(k);
  for (std::size_t i = 0; i < A.rows() && basis.size() < k; ++i) {
    bool any = false;
    for (std::size_t c = 0; c < k; ++c) {
      row[c] = mpz_fdiv_ui(A(i, c).get_mpz_t(), kPrime);
      any = any || row[c] != 0;
    }
    if (!any) continue;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      std::uint64_t f = row[pivot_col[b]];
      if (f == 0) continue;
      const auto& br = basis[b];
      for (std::size_t c = 0; c < k; ++c) {
        if (br[c] == 0) continue;
        row[c] = (row[c] + kPrime - mulmod(f, br[c])) % kPrime;
      }
    }
    std::size_t pc = k;
    for (std::size_t c = 0; c < k; ++c)
      if (row[c] != 0) {
        pc = c;
        break;
      }
    if (pc == k) continue;
    std::uint64_t inv = powmod(row[pc], kPrime - 2);
    for (auto& x : row) x = mulmod(x, inv);
    basis.push_back(row);
    pivot_col.push_back(pc);
    chosen.push_back(i);
  }
  return chosen;
}

IntMatrix kernel_from_rows(const IntMatrix& A) {
  const std::size_t m = A.rows(), k = A.cols();
  IntMatrix T(k, m + k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < k; ++c) T(c, i) = A(i, c);
  for (std::size_t c = 0; c < k; ++c) T(c, m + c) = 1;
  std::size_t r = row_echelon(T, m, false);
  IntMatrix K(k, k - r);
  for (std::size_t i = r; i < k; ++i)
    for (std::size_t c = 0; c < k; ++c) K(c, i - r) = T(i, m + c);
  return K;
}

}  // namespace

std::size_t column_limit() {
  static const std::size_t limit = [] {
    const char* env = std::getenv("REGLAB_LIMIT_COLS");
    if (env == nullptr || *env == '\0') return std::size_t{4000};
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (...) {
      return std::size_t{4000};
    }
  }();
  return limit;
}

void check_column_limit(std::size_t cols, const char* what) {
  if (cols > column_limit())
    throw ResourceLimitError(std::string(what) + ": matrix width " + std::to_string(cols) +
                             " exceeds limit " + std::to_string(column_limit()));
}

SmithForm smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  check_column_limit(std::max(m, n), "smith_normal_form");
  SmithForm out;
  IntMatrix& S = out.S;
  S = A;
  out.U = IntMatrix::identity(m);
  out.U_inv = IntMatrix::identity(m);
  out.V = IntMatrix::identity(n);
  IntMatrix& U = out.U;
  IntMatrix& Ui = out.U_inv;
  IntMatrix& V = out.V;
  Int q;

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    row_swap(S, a, b);
    row_swap(U, a, b);
    col_swap(Ui, a, b);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    col_swap(S, a, b);
    col_swap(V, a, b);
  };
  // Smallest nonzero |entry| of S[t:, t:], ties by row then column.
  auto find_pivot = [&](std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (sgn(S(i, j)) == 0) continue;
        if (!found || mpz_cmpabs(S(i, j).get_mpz_t(), S(pr, pc).get_mpz_t()) < 0) {
          pr = i;
          pc = j;
          found = true;
        }
      }
    return found;
  };

  std::size_t t = 0;
  while (t < std::min(m, n)) {
    std::size_t pr = 0, pc = 0;
    if (!find_pivot(t, pr, pc)) break;
    swap_rows(t, pr);
    swap_cols(t, pc);
    while (true) {
      bool clear = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(S(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        if (sgn(q) != 0) {
          row_submul(S, i, t, q, 0);
          row_submul(U, i, t, q, 0);
          Int mq = -q;
          col_submul(Ui, t, i, mq);
        }
        if (sgn(S(i, t)) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(S(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        if (sgn(q) != 0) {
          col_submul(S, j, t, q);
          col_submul(V, j, t, q);
        }
        if (sgn(S(t, j)) != 0) clear = false;
      }
      if (!clear) {
        find_pivot(t, pr, pc);
        swap_rows(t, pr);
        swap_cols(t, pc);
        continue;
      }
      // Divisibility: fold an offending row into row t and keep reducing.
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (sgn(S(i, j)) == 0 || mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) continue;
          Int minus_one = -1;
          row_submul(S, t, i, minus_one, 0);
          row_submul(U, t, i, minus_one, 0);
          Int one = 1;
          col_submul(Ui, i, t, one);
          fixed = true;
          break;
        }
      if (!fixed) break;
    }
    if (sgn(S(t, t)) < 0) {
      row_negate(S, t, 0);
      row_negate(U, t, 0);
      col_negate(Ui, t);
    }
    out.divisors.push_back(S(t, t));
    ++t;
  }
  return out;
}

IntVector elementary_divisors(const IntMatrix& A) {
  if (A.empty()) return {};
  IntMatrix H = hermite_basis(A);
  // Work on the smaller orientation.
  if (H.rows() > H.cols()) {
    IntMatrix Ht = hermite_basis(H.transpose());
    return smith_normal_form(Ht).divisors;
  }
  return smith_normal_form(H).divisors;
}

IntMatrix hermite_basis(const IntMatrix& generators) {
  const std::size_t n = generators.rows();
  check_column_limit(generators.cols(), "hermite_basis");
  IntMatrix T = generators.transpose();
  std::size_t r = row_echelon(T, n, true);
  IntMatrix H(n, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < n; ++c) H(c, i) = T(i, c);
  return H;
}

IntMatrix kernel_basis(const IntMatrix& A) {
  const std::size_t k = A.cols();
  check_column_limit(k, "kernel_basis");
  if (k == 0) return IntMatrix(0, 0);
  IntMatrix K;
  if (A.rows() > 0) {
    std::vector<std::size_t> rows = independent_rows_mod_p(A);
    if (rows.size() < A.rows()) {
      K = kernel_from_rows(A.select_rows(rows));
      if (!(A * K).is_zero()) K = kernel_from_rows(A);
    } else {
      K = kernel_from_rows(A);
    }
  } else {
    K = IntMatrix::identity(k);
  }
  if (K.cols() == 0) return IntMatrix(k, 0);
  return hermite_basis(K);
}

std::vector<std::size_t> hermite_pivot_rows(const IntMatrix& H) {
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t j = 0; j < H.cols(); ++j) {
    while (row < H.rows() && sgn(H(row, j)) == 0) ++row;
    piv.push_back(row);
    ++row;
  }
  return piv;
}

std::optional<IntVector> solve_hermite(const IntMatrix& H, const IntVector& b) {
  const std::size_t r = H.cols();
  IntVector x(r);
  IntVector residual = b;
  std::size_t row = 0;
  Int q;
  for (std::size_t j = 0; j < r; ++j) {
    while (row < H.rows() && sgn(H(row, j)) == 0) {
      if (sgn(residual[row]) != 0) return std::nullopt;
      ++row;
    }
    if (!mpz_divisible_p(residual[row].get_mpz_t(), H(row, j).get_mpz_t())) return std::nullopt;
    mpz_divexact(q.get_mpz_t(), residual[row].get_mpz_t(), H(row, j).get_mpz_t());
    x[j] = q;
    if (sgn(q) != 0)
      for (std::size_t i = row; i < H.rows(); ++i)
        if (sgn(H(i, j)) != 0) mpz_submul(residual[i].get_mpz_t(), q.get_mpz_t(), H(i, j).get_mpz_t());
    ++row;
  }
  for (std::size_t i = row; i < H.rows(); ++i)
    if (sgn(residual[i]) != 0) return std::nullopt;
  return x;
}

Int determinant(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(M(k, k)) == 0) {
      std::size_t s = k + 1;
      while (s < n && sgn(M(s, k)) == 0) ++s;
      if (s == n) return 0;
      row_swap(M, k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(M(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      M(i, k) = 0;
    }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

std::size_t matrix_rank(const IntMatrix& A) {
  if (A.empty()) return 0;
  if (A.rows() < A.cols()) return hermite_basis(A.transpose()).cols();
  return hermite_basis(A).cols();
}

}  // namespace reglab
