#pragma once

#include <vector>

#include "modstrat/exactalg/linear.hpp"
#include "modstrat/homalg/resolution.hpp"

namespace modstrat {

/// delta^n : Hom(P_{n-1}, M) -> Hom(P_n, M), n >= 1 (n = 0 gives the zero map from 0).
Matrix cochain_differential(const Resolution& res, const Lattice& m, int n);
/// H^n(G; M) = ker delta^{n+1} / im delta^n, n <= cap - 1.
Subquotient cohomology_subquotient(const Resolution& res, const Lattice& m, int n);
AbelianGroup cohomology(const Resolution& res, const Lattice& m, int n);

Matrix tate_cochain_differential(const CompleteResolution& cr, const Lattice& m, int k);
/// Tate cohomology for min_degree() <= n <= max_degree() - 1.
Subquotient tate_subquotient(const CompleteResolution& cr, const Lattice& m, int n);
AbelianGroup tate_cohomology(const CompleteResolution& cr, const Lattice& m, int n);

/// Class in H^n(G; R) with trivial coefficients, represented by its values on
/// the generators of P_n, plus a lazily extended chain-map lift
/// f_k : P_{n+k} -> P_k with augmentation o f_0 = cocycle.
class CohomologyClass {
 public:
  CohomologyClass(ResolutionPtr res, int degree, std::vector<Scalar> cocycle);
  static CohomologyClass identity(ResolutionPtr res);
  static CohomologyClass zero(ResolutionPtr res, int degree);

  const ResolutionPtr& resolution() const { return res_; }
  int degree() const { return degree_; }
  const std::vector<Scalar>& cocycle() const { return cocycle_; }
  /// Lifts computed so far (f_0 .. f_{lifted()-1}).
  const std::vector<GroupRingMatrix>& lift() const { return lift_; }
  /// Extends the lift through f_k; throws CapExceeded when degree + k > cap and
  /// LiftFailed when a lifting equation has no solution.
  void lift_to(int k);

  bool is_coboundary() const;
  CohomologyClass operator+(const CohomologyClass& o) const;
  CohomologyClass scaled(const Scalar& c) const;

 private:
  ResolutionPtr res_;
  int degree_;
  std::vector<Scalar> cocycle_;
  std::vector<GroupRingMatrix> lift_;
};

/// Returns a copy with f_0 .. f_upto populated (upto defaults to cap - degree).
CohomologyClass lift_to_chain_map(const CohomologyClass& c, int upto = -1);
/// Composition product b o f^a_{|b|}; ResolutionMismatch unless both live on
/// the same resolution.
CohomologyClass cup_product(const CohomologyClass& a, const CohomologyClass& b);

/// Chain map F : P^H -> res P^G over an injective hom H -> G lifting id_R.
class ComparisonMap {
 public:
  ComparisonMap(ResolutionPtr source, ResolutionPtr target, GroupHom iota, int upto);
  const ResolutionPtr& source() const { return source_; }
  const ResolutionPtr& target() const { return target_; }
  int upto() const { return static_cast<int>(images_.size()) - 1; }
  /// F_k(e_j) as an unrolled vector of P^G_k.
  const std::vector<Scalar>& image(int k, std::size_t j) const { return images_.at(k).at(j); }
  /// Pullback of a degree-n cocycle with trivial coefficients.
  std::vector<Scalar> pull_back(int n, std::span<const Scalar> cocycle) const;

 private:
  ResolutionPtr source_, target_;
  GroupHom iota_;
  std::vector<std::vector<std::vector<Scalar>>> images_;
};

CohomologyClass restriction_map(const CohomologyClass& c, const ResolutionPtr& sub_res, const GroupHom& iota);

/// Omega^n R = im d_n inside P_{n-1} (n >= 1), as a lattice; n = 0 gives R.
Lattice syzygy_of_trivial(const Resolution& res, int n);
/// L_zeta = ker(Omega^n k -> k) for a nonzero class zeta of degree n >= 1
/// over a prime field.
Lattice carlson_module(const CohomologyClass& zeta);

}  // namespace modstrat
