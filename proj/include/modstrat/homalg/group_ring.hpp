#pragma once

#include <utility>
#include <vector>

#include "modstrat/exactalg/matrix.hpp"
#include "modstrat/groups/group.hpp"
#include "modstrat/lattices/lattice.hpp"

namespace modstrat {

/// Element of R[G] as sorted (group element, coefficient) pairs.
using GroupRingElement = std::vector<std::pair<int, Scalar>>;

/// Homomorphism R[G]^cols -> R[G]^rows of free left modules, e_j |-> sum_i c_ij e_i.
///
/// Unrolled coordinates of R[G]^r put the coefficient of g e_i at i*|G| + g.
class GroupRingMatrix {
 public:
  GroupRingMatrix() = default;
  GroupRingMatrix(GroupPtr group, CoeffRing ring, std::size_t rows, std::size_t cols);

  const GroupPtr& group() const { return group_; }
  const CoeffRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const GroupRingElement& at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
  void add(std::size_t i, std::size_t j, int g, const Scalar& c);
  /// Column j from an unrolled vector of R[G]^rows.
  void set_column(std::size_t j, std::span<const Scalar> unrolled);

  /// The R-matrix of size rows*|G| x cols*|G|.
  Matrix unroll() const;
  std::vector<Scalar> apply(std::span<const Scalar> unrolled) const;
  /// Matrix of Hom(R[G]^rows, M) -> Hom(R[G]^cols, M), block (j, i) = rho_M(c_ij).
  Matrix cochain_matrix(const Lattice& m) const;
  /// R-dual map, entries c_ij -> antipode(c_ji).
  GroupRingMatrix antipode_transpose() const;
  GroupRingMatrix over(const CoeffRing& ring) const;
  bool is_zero() const;

 private:
  GroupPtr group_;
  CoeffRing ring_ = CoeffRing::integers();
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<GroupRingElement> cells_;
};

/// Sum of coefficients.
Scalar augmentation(const CoeffRing& ring, const GroupRingElement& c);
/// rho_M(c) = sum_g c_g rho_M(g).
Matrix act(const Lattice& m, const GroupRingElement& c);
/// Left translation by g on unrolled coordinates of R[G]^r.
std::vector<Scalar> translate(const FiniteGroup& g, int x, std::span<const Scalar> unrolled);
/// R[G]^r as a lattice (direct sum of regular lattices).
Lattice free_lattice(const GroupPtr& g, const CoeffRing& ring, std::size_t r);

}  // namespace modstrat
