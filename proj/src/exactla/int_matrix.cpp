#include "reglab/exactla/int_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace reglab {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  IntMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("ragged matrix literal");
    std::size_t j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

void IntMatrix::set_column(std::size_t c, const IntVector& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  IntMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Int* orow = out.data_.data() + i * rhs.cols_;
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      const Int* brow = rhs.data_.data() + k * rhs.cols_;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        if (sgn(brow[j]) == 0) continue;
        mpz_addmul(orow[j].get_mpz_t(), a.get_mpz_t(), brow[j].get_mpz_t());
      }
    }
  }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (sgn(a) == 0 || sgn(v[k]) == 0) continue;
      mpz_addmul(out[i].get_mpz_t(), a.get_mpz_t(), v[k].get_mpz_t());
    }
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix difference dimension mismatch");
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix out = *this;
  for (auto& x : out.data_) x = -x;
  return out;
}

IntMatrix IntMatrix::scaled(const Int& s) const {
  IntMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  IntMatrix m(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace reglab
