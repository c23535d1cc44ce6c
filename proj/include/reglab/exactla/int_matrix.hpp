#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace reglab {

using Int = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Int>;

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols);
  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);
  static IntMatrix diagonal(const IntVector& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Int> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Int> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  IntVector column(std::size_t c) const;
  void set_column(std::size_t c, const IntVector& v);

  IntMatrix transpose() const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix select_cols(const std::vector<std::size_t>& idx) const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b);

  bool is_zero() const;
  bool is_identity() const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix operator-() const;
  IntMatrix scaled(const Int& s) const;
  bool operator==(const IntMatrix& rhs) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix kron(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);

bool is_zero(const IntVector& v);

}  // namespace reglab
