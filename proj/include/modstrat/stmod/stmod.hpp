#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "modstrat/support/support.hpp"

namespace modstrat {

/// One verification record: {check, inputs, passed, certificate|counterexample}.
struct CheckReport {
  std::string check;
  nlohmann::json inputs;
  bool passed = false;
  nlohmann::json evidence;  // certificate when passed, counterexample otherwise
  nlohmann::json to_json() const;
};

/// Matrix of Tr : Hom_R(M, N) -> Hom_{R[G]}(M, N), f |-> sum_g rho_N(g) f rho_M(g)^-1,
/// on row-major vectorised maps.
Matrix transfer_matrix(const Lattice& m, const Lattice& n);
Matrix transfer(const Lattice& m, const Lattice& n, const Matrix& f);

struct WeakProjectivity {
  bool projective = false;
  std::optional<Matrix> certificate;  // f with Tr(f) = id_M
  std::vector<Scalar> obstruction;    // functional killing the transfer image but not vec(id)
  Scalar obstruction_modulus = 0;
  nlohmann::json to_json() const;
};

/// Higman's criterion: id_M in the image of the transfer.
WeakProjectivity is_weakly_projective(const Lattice& m);

/// 0 -> M' -f-> M -g-> M'' -> 0 exact and R-split; DimensionMismatch when the
/// maps do not compose.
bool check_split_exact(const EquivariantMap& f, const EquivariantMap& g);
/// The sequence through the cokernel of f; InvalidLattice when it has torsion.
bool check_split_exact(const EquivariantMap& f);

struct StableHomSpace {
  Lattice source, target;
  std::vector<Matrix> basis;   // Hom_{R[G]}(M, N)
  Matrix transfer_image;       // coordinates (columns) in the basis
  AbelianGroup quotient;
  nlohmann::json to_json() const;
};

StableHomSpace stable_hom(const Lattice& m, const Lattice& n);
/// f - g factors through a weakly projective (lies in the transfer image).
bool homotopic(const Lattice& m, const Lattice& n, const Matrix& f, const Matrix& g);
/// Searches the (finite) stable hom group M -> N for an f with a stable
/// inverse; for each f the inverse is one linear solve. Indeterminate when
/// the group has more than max_candidates elements or the ring is not
/// Z, Z_(p) or F_p.
Truth stably_isomorphic(const Lattice& m, const Lattice& n, std::size_t max_candidates = 4096);

/// Free cover R[G]^rank -> M, e_j |-> m_j.
EquivariantMap free_cover(const Lattice& m);
/// Omega^n M for n >= 1; n <= -1 gives the dual of Omega^-n of the dual; n = 0 is M.
Lattice syzygy(const Lattice& m, int n);
Lattice localize_lattice(const Lattice& m, std::int64_t p);

struct ChouinardReport {
  bool global = false;
  std::vector<std::pair<std::string, bool>> local;  // per elementary abelian subgroup
  bool detected() const;                             // every restriction weakly projective
  bool passed() const { return global == detected(); }
  nlohmann::json to_json() const;
};
ChouinardReport chouinard_check(const Lattice& m);

/// Support in the stmod model; empty exactly on weakly projectives.
SpecializationClosedSubset classify(const Lattice& m, const ModelPtr& model, int cap);

/// Checks for an elementary abelian p-group over Z_(p):
/// low-degree cohomology, Tate exponent, filtration layers and the
/// F-isomorphism H*(E; Z/p^2) -> H*(E; F_p).
/// nil_bound <= 0 means p^3.
std::vector<CheckReport> verify_elab_suite(const GroupPtr& e, int p, int cap, int tate_range = 4, int nil_bound = 0);
CheckReport f_isomorphism_check(const GroupPtr& e, int p, int cap, int nil_bound);

/// Deterministic generator for small lattices: sums of catalog lattices
/// (trivial, sign, permutation, regular, augmentation ideal) of total rank
/// <= max_rank, conjugated by a random invertible matrix and validated.
class LatticeGenerator {
 public:
  LatticeGenerator(GroupPtr g, CoeffRing ring, std::uint64_t seed, std::size_t max_rank = 4);
  Lattice next();
  /// Catalog used for the summands.
  const std::vector<Lattice>& catalog() const { return catalog_; }

 private:
  std::uint64_t draw(std::uint64_t bound);
  Matrix random_invertible(std::size_t n);

  GroupPtr g_;
  CoeffRing ring_;
  std::size_t max_rank_;
  std::mt19937_64 rng_;
  std::vector<Lattice> catalog_;
};

}  // namespace modstrat
