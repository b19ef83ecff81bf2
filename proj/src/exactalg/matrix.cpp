#include "modstrat/exactalg/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "modstrat/common/error.hpp"

namespace modstrat {

Matrix::Matrix(CoeffRing ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), rows_data_(rows) {}

Matrix Matrix::identity(CoeffRing ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_data_[i].push_back({i, Scalar(1)});
  return m;
}

Matrix Matrix::from_rows(CoeffRing ring, const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? 0 : rows.front().size();
  Matrix m(ring, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (rows[i].size() != nc) fail(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < nc; ++j) {
      Scalar v = ring.reduce(rows[i][j]);
      if (v != 0) m.rows_data_[i].push_back({j, std::move(v)});
    }
  }
  return m;
}

Matrix Matrix::from_ints(CoeffRing ring, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::vector<Scalar>> data;
  for (const auto& r : rows) {
    std::vector<Scalar> row;
    for (auto v : r) row.emplace_back(v);
    data.push_back(std::move(row));
  }
  return from_rows(ring, data);
}

Matrix Matrix::diagonal(CoeffRing ring, const std::vector<Scalar>& diag) {
  Matrix m(ring, diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
  return m;
}

Matrix Matrix::column(CoeffRing ring, std::span<const Scalar> values) {
  Matrix m(ring, values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m.set(i, 0, values[i]);
  return m;
}

Scalar Matrix::at(std::size_t i, std::size_t j) const {
  const auto& r = rows_data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
  if (it != r.end() && it->col == j) return it->value;
  return Scalar(0);
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& value) {
  if (i >= rows_ || j >= cols_) fail(ErrorCode::DimensionMismatch, "matrix index out of range");
  Scalar v = ring_.reduce(value);
  auto& r = rows_data_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::size_t c) { return e.col < c; });
  if (it != r.end() && it->col == j) {
    if (v == 0)
      r.erase(it);
    else
      it->value = std::move(v);
  } else if (v != 0) {
    r.insert(it, Entry{j, std::move(v)});
  }
}

void Matrix::add_to(std::size_t i, std::size_t j, const Scalar& value) {
  if (value == 0) return;
  set(i, j, ring_.add(at(i, j), value));
}

void Matrix::set_row(std::size_t i, std::vector<Entry> entries) { rows_data_[i] = std::move(entries); }

std::size_t Matrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_data_) n += r.size();
  return n;
}

double Matrix::density() const {
  if (rows_ == 0 || cols_ == 0) return 0.0;
  return static_cast<double>(nnz()) / (static_cast<double>(rows_) * static_cast<double>(cols_));
}

bool Matrix::is_zero() const {
  return std::all_of(rows_data_.begin(), rows_data_.end(), [](const auto& r) { return r.empty(); });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto& r = rows_data_[i];
    if (r.size() != 1 || r[0].col != i || r[0].value != 1) return false;
  }
  return true;
}

void Matrix::check_same_shape(const Matrix& other, const char* op) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    fail(ErrorCode::DimensionMismatch, std::string("shape mismatch in ") + op);
  if (!(ring_ == other.ring_)) fail(ErrorCode::RingMismatch, std::string("ring mismatch in ") + op);
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) fail(ErrorCode::DimensionMismatch, "inner dimensions differ in product");
  if (!(ring_ == other.ring_)) fail(ErrorCode::RingMismatch, "ring mismatch in product");
  Matrix out(ring_, rows_, other.cols_);
  std::vector<Scalar> acc(other.cols_);
  std::vector<char> touched(other.cols_, 0);
  std::vector<std::size_t> touched_cols;
  for (std::size_t i = 0; i < rows_; ++i) {
    touched_cols.clear();
    for (const auto& [k, a] : rows_data_[i]) {
      for (const auto& [j, b] : other.rows_data_[k]) {
        if (!touched[j]) {
          touched[j] = 1;
          touched_cols.push_back(j);
          acc[j] = a * b;
        } else {
          acc[j] += a * b;
        }
      }
    }
    std::sort(touched_cols.begin(), touched_cols.end());
    auto& out_row = out.rows_data_[i];
    for (std::size_t j : touched_cols) {
      touched[j] = 0;
      Scalar v = ring_.reduce(acc[j]);
      if (v != 0) out_row.push_back({j, std::move(v)});
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  check_same_shape(other, "sum");
  Matrix out(ring_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto& a = rows_data_[i];
    const auto& b = other.rows_data_[i];
    auto& o = out.rows_data_[i];
    std::size_t x = 0, y = 0;
    while (x < a.size() || y < b.size()) {
      if (y == b.size() || (x < a.size() && a[x].col < b[y].col)) {
        o.push_back(a[x++]);
      } else if (x == a.size() || b[y].col < a[x].col) {
        o.push_back(b[y++]);
      } else {
        Scalar v = ring_.add(a[x].value, b[y].value);
        if (v != 0) o.push_back({a[x].col, std::move(v)});
        ++x;
        ++y;
      }
    }
  }
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const { return *this + other.scaled(Scalar(-1)); }

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix out(ring_, rows_, cols_);
  Scalar cc = ring_.reduce(c);
  if (cc == 0) return out;
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : rows_data_[i]) {
      Scalar w = ring_.mul(cc, v);
      if (w != 0) out.rows_data_[i].push_back({j, std::move(w)});
    }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : rows_data_[i]) out.rows_data_[j].push_back({i, v});
  return out;
}

Matrix Matrix::kron(const Matrix& other) const {
  if (!(ring_ == other.ring_)) fail(ErrorCode::RingMismatch, "ring mismatch in Kronecker product");
  Matrix out(ring_, rows_ * other.rows_, cols_ * other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < other.rows_; ++k) {
      auto& o = out.rows_data_[i * other.rows_ + k];
      for (const auto& [j, a] : rows_data_[i])
        for (const auto& [l, b] : other.rows_data_[k]) {
          Scalar v = ring_.mul(a, b);
          if (v != 0) o.push_back({j * other.cols_ + l, std::move(v)});
        }
    }
  return out;
}

Matrix Matrix::hstack(const Matrix& other) const {
  if (rows_ != other.rows_) fail(ErrorCode::DimensionMismatch, "hstack row counts differ");
  Matrix out(ring_, rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    out.rows_data_[i] = rows_data_[i];
    for (const auto& [j, v] : other.rows_data_[i]) out.rows_data_[i].push_back({j + cols_, v});
  }
  return out;
}

Matrix Matrix::vstack(const Matrix& other) const {
  if (cols_ != other.cols_) fail(ErrorCode::DimensionMismatch, "vstack column counts differ");
  Matrix out(ring_, rows_ + other.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) out.rows_data_[i] = rows_data_[i];
  for (std::size_t i = 0; i < other.rows_; ++i) out.rows_data_[rows_ + i] = other.rows_data_[i];
  return out;
}

Matrix Matrix::block_diag(const Matrix& other) const {
  Matrix out(ring_, rows_ + other.rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) out.rows_data_[i] = rows_data_[i];
  for (std::size_t i = 0; i < other.rows_; ++i)
    for (const auto& [j, v] : other.rows_data_[i]) out.rows_data_[rows_ + i].push_back({j + cols_, v});
  return out;
}

Matrix Matrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) fail(ErrorCode::DimensionMismatch, "submatrix out of range");
  Matrix out(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (const auto& [j, v] : rows_data_[r0 + i])
      if (j >= c0 && j < c0 + nc) out.rows_data_[i].push_back({j - c0, v});
  return out;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cols) const {
  Matrix out(ring_, rows_, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (std::size_t i = 0; i < rows_; ++i) {
      Scalar v = at(i, cols[k]);
      if (v != 0) out.rows_data_[i].push_back({k, std::move(v)});
    }
  return out;
}

Matrix Matrix::over(const CoeffRing& ring) const {
  Matrix out(ring, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : rows_data_[i]) {
      Scalar w = ring.reduce(v);
      if (w != 0) out.rows_data_[i].push_back({j, std::move(w)});
    }
  return out;
}

std::vector<Scalar> Matrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) fail(ErrorCode::DimensionMismatch, "vector length differs from column count");
  std::vector<Scalar> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Scalar acc = 0;
    for (const auto& [j, a] : rows_data_[i])
      if (v[j] != 0) acc += a * v[j];
    out[i] = ring_.reduce(acc);
  }
  return out;
}

std::vector<Scalar> Matrix::column_vector(std::size_t j) const {
  std::vector<Scalar> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
  return out;
}

std::vector<std::vector<Scalar>> Matrix::to_dense() const {
  std::vector<std::vector<Scalar>> out(rows_, std::vector<Scalar>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : rows_data_[i]) out[i][j] = v;
  return out;
}

bool Matrix::operator==(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto& a = rows_data_[i];
    const auto& b = other.rows_data_[i];
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k].col != b[k].col || a[k].value != b[k].value) return false;
  }
  return true;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
  }
  os << "]";
  return os.str();
}

std::vector<Scalar> vec_add(const CoeffRing& ring, std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector lengths differ");
  std::vector<Scalar> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.add(a[i], b[i]);
  return out;
}

std::vector<Scalar> vec_sub(const CoeffRing& ring, std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "vector lengths differ");
  std::vector<Scalar> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.sub(a[i], b[i]);
  return out;
}

std::vector<Scalar> vec_scale(const CoeffRing& ring, const Scalar& c, std::span<const Scalar> a) {
  std::vector<Scalar> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ring.mul(c, a[i]);
  return out;
}

bool vec_is_zero(std::span<const Scalar> a) {
  return std::all_of(a.begin(), a.end(), [](const Scalar& x) { return x == 0; });
}

}  // namespace modstrat
