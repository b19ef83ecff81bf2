#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "modstrat/exactalg/polynomial.hpp"
#include "modstrat/homalg/cohomology.hpp"

namespace modstrat {

struct RingGenerator {
  std::string name;
  int degree;
  CohomologyClass cls;  // lifted through cap - degree
};

class GradedRingPresentation;
using PresentationPtr = std::shared_ptr<const GradedRingPresentation>;

/// H*(G; R) through a certified degree: generators, relations and the group
/// in each degree. Monomials are products of generators in increasing index
/// order, evaluated as x_i * (rest) with the composition product.
class GradedRingPresentation {
 public:
  static PresentationPtr build(GroupPtr group, CoeffRing ring, int cap,
                               ResolutionStrategy strategy = ResolutionStrategy::Auto);
  /// Uses an existing resolution, which needs cap >= cap + 1.
  static PresentationPtr build(ResolutionPtr res, int cap);

  const GroupPtr& group() const { return res_->group(); }
  const CoeffRing& ring() const { return res_->ring(); }
  const ResolutionPtr& resolution() const { return res_; }
  int cap() const { return cap_; }
  const std::vector<RingGenerator>& generators() const { return generators_; }
  const PolyRingPtr& poly_ring() const { return poly_; }
  const std::vector<Polynomial>& relations() const { return relations_; }
  std::vector<AbelianGroup> hilbert() const;
  const Subquotient& degree_group(int n) const { return degrees_.at(n).group; }

  /// Cocycle of a monomial (degree <= cap).
  std::vector<Scalar> monomial_cocycle(const Monomial& m) const;
  /// Cocycle of a homogeneous polynomial over the presentation's ring.
  std::vector<Scalar> cocycle_of(const Polynomial& f) const;
  /// Coordinates in degree_group(n).
  std::vector<Scalar> coordinates(const Polynomial& f) const;
  /// Polynomial representing a class given by coordinates in degree n.
  Polynomial express(int n, std::span<const Scalar> coords) const;
  /// Re-evaluates every relation at chain level (coboundary check).
  bool relations_vanish() const;

  nlohmann::json to_json() const;

  /// Sign of a*b -> sorted monomial in a graded-commutative ring.
  static int product_sign(const std::vector<int>& degrees, const Monomial& a, const Monomial& b);

 private:
  struct Degree {
    Subquotient group;
    std::vector<Monomial> monomials;
    Matrix eval;     // coordinates of each monomial (columns), over the work ring
    Matrix torsion;  // orders of the torsion coordinates, as columns
  };

  GradedRingPresentation(ResolutionPtr res, int cap);
  void compute();
  Matrix coordinate_matrix(int n, const std::vector<Monomial>& monos) const;

  ResolutionPtr res_;
  int cap_;
  CoeffRing work_;
  std::vector<RingGenerator> generators_;
  PolyRingPtr poly_;
  std::vector<Polynomial> relations_;
  std::vector<Degree> degrees_;
  mutable std::mutex cache_mutex_;
  mutable std::map<Monomial, std::vector<Scalar>> cache_;
};

/// H*(G; End_R(M)) as a graded module over a ring presentation.
struct GradedModulePresentation {
  PresentationPtr base;
  Lattice end;  // End_R(M)
  int cap;
  std::vector<Subquotient> degrees;                       // H^n(G; End M), n <= cap
  std::vector<std::pair<int, std::vector<Scalar>>> generators;  // (degree, cocycle)
  /// action[k][n]: coordinates in degree n -> degree n + |x_k| for ring generator x_k.
  std::vector<std::vector<Matrix>> action;
  nlohmann::json to_json() const;
};

/// r . mu = mu o f^r_{|mu|} for a cochain mu with coefficients in E.
std::vector<Scalar> act_on_cochain(const CohomologyClass& r, const Lattice& e, int mu_degree,
                                   std::span<const Scalar> mu);

GradedModulePresentation end_module_presentation(const Lattice& m, const PresentationPtr& base, int cap);

/// res^G_E on presentations along an injective hom E -> G.
struct RingMap {
  PresentationPtr source, target;  // H*(G) -> H*(E)
  std::shared_ptr<const ComparisonMap> comparison;
  std::vector<Polynomial> images;  // image of each source generator, in target variables

  /// Coordinates in target.degree_group(n) of the image of a degree-n cocycle.
  std::vector<Scalar> apply(int n, std::span<const Scalar> cocycle) const;
};

RingMap restriction_ring_map(const PresentationPtr& g, const PresentationPtr& e, const GroupHom& iota);

}  // namespace modstrat
