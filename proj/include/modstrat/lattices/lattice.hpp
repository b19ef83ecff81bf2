#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "modstrat/exactalg/matrix.hpp"
#include "modstrat/groups/group.hpp"

namespace modstrat {

/// R[G]-module that is free of finite rank over R, given by one matrix per
/// group element (columns are images of basis vectors).
class Lattice {
 public:
  /// Validates rho(0) = I and rho(s x) = rho(s) rho(x) for generators s.
  Lattice(GroupPtr group, CoeffRing ring, std::size_t rank, std::vector<Matrix> action);
  /// Extends generator images multiplicatively over the whole group.
  static Lattice from_generators(GroupPtr group, CoeffRing ring, std::size_t rank,
                                 const std::map<int, Matrix>& generator_images);
  /// {"ring": "Z", "rank": r, "action": {"g": [[...]]}}; entries may list all
  /// elements or only a generating set.
  static Lattice from_json(GroupPtr group, const nlohmann::json& j);
  nlohmann::json to_json() const;

  const GroupPtr& group() const { return group_; }
  const CoeffRing& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const Matrix& action(int g) const { return action_[g]; }
  const std::vector<Matrix>& actions() const { return action_; }
  /// Same matrices read in another ring (localisation or reduction).
  Lattice over(const CoeffRing& ring) const;
  bool operator==(const Lattice& o) const;

 private:
  struct Unchecked {};
  Lattice(Unchecked, GroupPtr group, CoeffRing ring, std::size_t rank, std::vector<Matrix> action);
  void validate() const;

  GroupPtr group_;
  CoeffRing ring_;
  std::size_t rank_;
  std::vector<Matrix> action_;

  friend Lattice make_lattice_unchecked(GroupPtr, CoeffRing, std::size_t, std::vector<Matrix>);
};

/// Internal constructor for results that are equivariant by construction
/// (tensor, Hom of large lattices); skips the homomorphism validation.
Lattice make_lattice_unchecked(GroupPtr group, CoeffRing ring, std::size_t rank, std::vector<Matrix> action);

class EquivariantMap {
 public:
  /// Validates matrix * rho_source(g) = rho_target(g) * matrix.
  EquivariantMap(Lattice source, Lattice target, Matrix matrix);

  const Lattice& source() const { return source_; }
  const Lattice& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  Lattice source_;
  Lattice target_;
  Matrix matrix_;
};

bool is_equivariant(const Lattice& source, const Lattice& target, const Matrix& f);
void check_compatible(const Lattice& a, const Lattice& b);  // RingMismatch / GroupMismatch

Lattice trivial_lattice(GroupPtr g, CoeffRing ring, std::size_t rank = 1);
Lattice regular_lattice(GroupPtr g, CoeffRing ring);
/// R[G/H] on left cosets ordered by least-index representatives.
Lattice permutation_lattice(const Subgroup& h, CoeffRing ring);
/// Rank one, elements outside the index-2 subgroup H act by -1.
Lattice sign_lattice(const Subgroup& h, CoeffRing ring);

Lattice tensor(const Lattice& m, const Lattice& n);
/// Hom_R(M, N) with (g f) = rho_N(g) f rho_M(g)^-1, f vectorised row-major.
Lattice hom_lattice(const Lattice& m, const Lattice& n);
Lattice dual(const Lattice& m);
Lattice direct_sum(const Lattice& m, const Lattice& n);
/// Restriction along a subgroup inclusion or any homomorphism into G.
Lattice restrict(const Lattice& m, const Subgroup& h);
Lattice restrict_along(const Lattice& m, const GroupHom& phi);
/// Induction from H = h.group() to G = h.parent(); coset representatives are
/// least-index elements, basis t_i (x) e_j at position i*rank + j.
Lattice induce(const Lattice& m, const Subgroup& h);
std::vector<int> coset_representatives(const Subgroup& h);

/// ind(res(X) (x) Y) -> X (x) ind(Y), t_i (x) x (x) y |-> t_i x (x) (t_i (x) y).
EquivariantMap projection_formula_iso(const Lattice& x, const Lattice& y, const Subgroup& h);

/// Basis (over R) of Hom_{R[G]}(M, N), each as a rank(N) x rank(M) matrix.
std::vector<Matrix> equivariant_hom_basis(const Lattice& m, const Lattice& n);

/// Sub-lattice spanned by the columns of `basis` (must be G-stable and
/// R-saturated); its action is expressed in that basis.
Lattice sublattice(const Lattice& m, const Matrix& basis);
Lattice kernel_lattice(const EquivariantMap& f);
/// Cokernel of an equivariant map; throws InvalidLattice when it has torsion.
Lattice cokernel_lattice(const EquivariantMap& f);

/// Inverse of an invertible matrix over its ring (throws InvalidLattice).
Matrix invert(const Matrix& a);

}  // namespace modstrat
