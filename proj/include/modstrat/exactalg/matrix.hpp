#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "modstrat/exactalg/coeff_ring.hpp"

namespace modstrat {

/// Matrix over a CoeffRing stored as sorted sparse rows. Small dense matrices
/// pay a little for the indirection; the unrolled group-ring operators that
/// dominate the cohomology computations are mostly zero.
class Matrix {
 public:
  struct Entry {
    std::size_t col;
    Scalar value;
  };

  Matrix() : ring_(CoeffRing::integers()) {}
  Matrix(CoeffRing ring, std::size_t rows, std::size_t cols);

  static Matrix zero(CoeffRing ring, std::size_t rows, std::size_t cols) { return {ring, rows, cols}; }
  static Matrix identity(CoeffRing ring, std::size_t n);
  static Matrix from_rows(CoeffRing ring, const std::vector<std::vector<Scalar>>& rows);
  static Matrix from_ints(CoeffRing ring, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  static Matrix diagonal(CoeffRing ring, const std::vector<Scalar>& diag);
  static Matrix column(CoeffRing ring, std::span<const Scalar> values);

  const CoeffRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& value);
  void add_to(std::size_t i, std::size_t j, const Scalar& value);
  std::span<const Entry> row(std::size_t i) const { return rows_data_[i]; }
  /// Replaces row i; entries must be sorted by column and nonzero.
  void set_row(std::size_t i, std::vector<Entry> entries);

  std::size_t nnz() const;
  double density() const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix scaled(const Scalar& c) const;
  Matrix transpose() const;
  Matrix kron(const Matrix& other) const;
  Matrix hstack(const Matrix& other) const;
  Matrix vstack(const Matrix& other) const;
  Matrix block_diag(const Matrix& other) const;
  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix select_columns(const std::vector<std::size_t>& cols) const;
  Matrix over(const CoeffRing& ring) const;  // reinterpret/reduce entries into another ring

  std::vector<Scalar> apply(std::span<const Scalar> v) const;
  std::vector<Scalar> column_vector(std::size_t j) const;
  std::vector<std::vector<Scalar>> to_dense() const;

  bool operator==(const Matrix& other) const;
  std::string to_string() const;

 private:
  void check_same_shape(const Matrix& other, const char* op) const;

  CoeffRing ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> rows_data_;
};

std::vector<Scalar> vec_add(const CoeffRing& ring, std::span<const Scalar> a, std::span<const Scalar> b);
std::vector<Scalar> vec_sub(const CoeffRing& ring, std::span<const Scalar> a, std::span<const Scalar> b);
std::vector<Scalar> vec_scale(const CoeffRing& ring, const Scalar& c, std::span<const Scalar> a);
bool vec_is_zero(std::span<const Scalar> a);

}  // namespace modstrat
