#include "modstrat/homalg/group_ring.hpp"

#include <algorithm>

#include "modstrat/common/error.hpp"

namespace modstrat {

GroupRingMatrix::GroupRingMatrix(GroupPtr group, CoeffRing ring, std::size_t rows, std::size_t cols)
    : group_(std::move(group)), ring_(ring), rows_(rows), cols_(cols), cells_(rows * cols) {}

void GroupRingMatrix::add(std::size_t i, std::size_t j, int g, const Scalar& c) {
  auto& cell = cells_[i * cols_ + j];
  auto it = std::lower_bound(cell.begin(), cell.end(), g, [](const auto& e, int x) { return e.first < x; });
  if (it != cell.end() && it->first == g) {
    it->second = ring_.add(it->second, ring_.reduce(c));
    if (it->second == 0) cell.erase(it);
    return;
  }
  Scalar v = ring_.reduce(c);
  if (v != 0) cell.insert(it, {g, v});
}

void GroupRingMatrix::set_column(std::size_t j, std::span<const Scalar> unrolled) {
  const std::size_t n = group_->order();
  for (std::size_t i = 0; i < rows_; ++i) {
    auto& cell = cells_[i * cols_ + j];
    cell.clear();
    for (std::size_t g = 0; g < n; ++g) {
      Scalar v = ring_.reduce(unrolled[i * n + g]);
      if (v != 0) cell.emplace_back(static_cast<int>(g), v);
    }
  }
}

Matrix GroupRingMatrix::unroll() const {
  const std::size_t n = group_->order();
  Matrix out(ring_, rows_ * n, cols_ * n);
  std::vector<std::vector<Matrix::Entry>> rows(rows_ * n);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& [h, c] : cells_[i * cols_ + j])
          rows[i * n + group_->mul(static_cast<int>(g), h)].push_back({j * n + g, c});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto& row = rows[r];
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.col < b.col; });
    out.set_row(r, std::move(row));
  }
  return out;
}

std::vector<Scalar> GroupRingMatrix::apply(std::span<const Scalar> v) const {
  const std::size_t n = group_->order();
  if (v.size() != cols_ * n) fail(ErrorCode::DimensionMismatch, "group ring matrix applied to wrong length");
  std::vector<Scalar> out(rows_ * n);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t g = 0; g < n; ++g) {
      const Scalar& x = v[j * n + g];
      if (x == 0) continue;
      for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& [h, c] : cells_[i * cols_ + j]) {
          Scalar& t = out[i * n + group_->mul(static_cast<int>(g), h)];
          t = ring_.add(t, ring_.mul(x, c));
        }
    }
  return out;
}

Matrix act(const Lattice& m, const GroupRingElement& c) {
  Matrix out(m.ring(), m.rank(), m.rank());
  for (const auto& [g, v] : c) out = out + m.action(g).scaled(v);
  return out;
}

Matrix GroupRingMatrix::cochain_matrix(const Lattice& m) const {
  const std::size_t r = m.rank();
  Matrix out(m.ring(), cols_ * r, rows_ * r);
  std::vector<std::vector<Matrix::Entry>> rows(cols_ * r);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) {
      const auto& cell = cells_[i * cols_ + j];
      if (cell.empty()) continue;
      GroupRingElement c;
      for (const auto& [g, v] : cell) c.emplace_back(g, m.ring().reduce(v));
      Matrix b = act(m, c);
      for (std::size_t a = 0; a < r; ++a)
        for (const auto& e : b.row(a)) rows[j * r + a].push_back({i * r + e.col, e.value});
    }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto& row = rows[k];
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.col < b.col; });
    out.set_row(k, std::move(row));
  }
  return out;
}

GroupRingMatrix GroupRingMatrix::antipode_transpose() const {
  GroupRingMatrix out(group_, ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [g, c] : cells_[i * cols_ + j]) out.add(j, i, group_->inv(g), c);
  return out;
}

GroupRingMatrix GroupRingMatrix::over(const CoeffRing& ring) const {
  GroupRingMatrix out(group_, ring, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [g, c] : cells_[i * cols_ + j]) out.add(i, j, g, c);
  return out;
}

bool GroupRingMatrix::is_zero() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const auto& c) { return c.empty(); });
}

Scalar augmentation(const CoeffRing& ring, const GroupRingElement& c) {
  Scalar s = 0;
  for (const auto& [g, v] : c) s = ring.add(s, v);
  return s;
}

std::vector<Scalar> translate(const FiniteGroup& g, int x, std::span<const Scalar> v) {
  const std::size_t n = g.order();
  std::vector<Scalar> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[(k / n) * n + g.mul(x, static_cast<int>(k % n))] = v[k];
  return out;
}

Lattice free_lattice(const GroupPtr& g, const CoeffRing& ring, std::size_t r) {
  Lattice reg = regular_lattice(g, ring);
  std::vector<Matrix> act;
  for (int x = 0; x < g->order(); ++x) {
    const Matrix& b = reg.action(x);
    Matrix out(ring, r * g->order(), r * g->order());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t row = 0; row < b.rows(); ++row)
        for (const auto& e : b.row(row)) out.set(i * g->order() + row, i * g->order() + e.col, e.value);
    act.push_back(std::move(out));
  }
  return make_lattice_unchecked(g, ring, r * g->order(), std::move(act));
}

}  // namespace modstrat
