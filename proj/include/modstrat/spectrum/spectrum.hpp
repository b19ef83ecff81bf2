#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "modstrat/cohomring/presentation.hpp"
#include "modstrat/exactalg/galois_field.hpp"

namespace modstrat {

enum class Truth { False, True, Indeterminate };
std::string to_string(Truth t);

class ProjFiber;
using FiberPtr = std::shared_ptr<const ProjFiber>;

/// Proj of the reduced cohomology ring at one prime p: polynomial ring on the
/// fiber variables (all generators for p = 2, the even-degree ones for odd p)
/// modulo J = kernel of evaluation in H*(G; F_p), certified through cap.
class ProjFiber {
 public:
  /// Fiber variables taken from a presentation of H*(G; F_p).
  static FiberPtr from_presentation(const PresentationPtr& pres);
  /// Fiber variables are the reductions mod p of generators of H*(G; Z).
  static FiberPtr integral_image(const GroupPtr& g, int p, int cap);

  int prime() const { return p_; }
  int cap() const { return cap_; }
  const GroupPtr& group() const { return res_->group(); }
  const PolyRingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& relations() const { return relations_; }
  const GroebnerBasis& ideal() const { return *ideal_; }
  const ResolutionPtr& resolution() const { return res_; }
  /// Null for the integral-image model.
  const PresentationPtr& presentation() const { return pres_; }
  /// Presentation generator index of each fiber variable.
  const std::vector<std::size_t>& presentation_variables() const { return pres_vars_; }
  /// Drops terms involving non-fiber (nilpotent) generators.
  Polynomial from_presentation(const Polynomial& f) const;
  /// Cocycle in H^n(G; F_p) of a fiber monomial.
  std::vector<Scalar> monomial_cocycle(const Monomial& m) const;
  /// dim (F_p[y]/J)_n for n <= cap.
  std::vector<std::size_t> hilbert() const;
  /// lcm of the variable degrees; points are compared in its first four multiples.
  int point_degree() const;
  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  ProjFiber() = default;
  void finish(std::vector<std::string> names, std::vector<int> degrees);

  int p_ = 0;
  int cap_ = 0;
  ResolutionPtr res_;
  PresentationPtr pres_;
  std::vector<std::size_t> pres_vars_;
  std::vector<CohomologyClass> classes_;
  PolyRingPtr ring_;
  std::vector<Polynomial> relations_;
  std::optional<GroebnerBasis> ideal_;
  mutable std::mutex mutex_;
  mutable std::map<Monomial, std::vector<Scalar>> cache_;
};

/// A point of a fiber, identified by the homogeneous ideal over F_p of
/// polynomials vanishing at a representative tuple.
struct FiberPoint {
  std::vector<std::vector<std::int64_t>> key;  // canonical kernel basis per degree
  int field_degree = 1;                        // representative lives in F_{p^field_degree}
  std::vector<std::int64_t> coords;
  bool operator==(const FiberPoint& o) const { return key == o.key; }
  bool operator<(const FiberPoint& o) const { return key < o.key; }
};

std::int64_t evaluate(const GaloisField& f, const Polynomial& poly, std::span<const std::int64_t> x);
/// Point through a nonzero tuple over GF(p^n); the tuple must satisfy J.
FiberPoint point_of(const ProjFiber& fiber, const GaloisField& f, std::vector<std::int64_t> tuple);
/// All points with a representative over F_{p^n}, sorted and deduplicated.
std::vector<FiberPoint> rational_points(const ProjFiber& fiber, int n);

/// Spec^h(H*(G; R)) minus the Spec(R) locus, as per-prime fibers.
struct SpecHModel {
  CoeffRing base = CoeffRing::integers();
  GroupPtr group;
  int cap = 0;
  std::map<int, FiberPtr> fibers;
  bool specR_removed = true;
  nlohmann::json to_json() const;
};
using ModelPtr = std::shared_ptr<const SpecHModel>;

/// Primes carrying a fiber: p | |G|, restricted by the base ring.
std::vector<int> fiber_primes(const GroupPtr& g, const CoeffRing& base);
ModelPtr stmod_spectrum(const GroupPtr& g, const CoeffRing& base, int cap);
/// Uses given presentations over F_p; PresentationMissing if one is absent.
ModelPtr stmod_spectrum(const GroupPtr& g, const CoeffRing& base, int cap,
                        const std::map<int, PresentationPtr>& presentations);

/// V_+(I) contained in V_+(K) in Proj of a polynomial ring over F_p? Tests
/// (k x_i)^(p^s) in I for s <= 4, then searches small fields for a witness
/// point.
Truth projective_contained(const PolyRingPtr& ring, const std::vector<Polynomial>& i,
                           const std::vector<Polynomial>& k);
/// Substitutes images[v] for variable v.
Polynomial substitute(const Polynomial& f, const PolyRingPtr& target, const std::vector<Polynomial>& images);

/// V_+(I + J) contained in V_+(K)? Tests (k x_i)^(p^s) in I + J for s <= 4,
/// then searches small fields for a witness point.
Truth proj_contained(const ProjFiber& fiber, const std::vector<Polynomial>& i, const std::vector<Polynomial>& k);

class SpecializationClosedSubset {
 public:
  using Ideal = std::vector<Polynomial>;

  static SpecializationClosedSubset empty(ModelPtr model);
  static SpecializationClosedSubset full(ModelPtr model);
  /// V(I) in the fiber at p.
  static SpecializationClosedSubset closed(ModelPtr model, int p, Ideal ideal);

  const ModelPtr& model() const { return model_; }
  /// Canonical components per fiber (reduced Groebner bases of I + J).
  const std::map<int, std::vector<Ideal>>& components() const { return components_; }

  SpecializationClosedSubset unite(const SpecializationClosedSubset& o) const;
  SpecializationClosedSubset intersect(const SpecializationClosedSubset& o) const;
  /// o contained in *this?
  Truth includes(const SpecializationClosedSubset& o) const;
  Truth equals(const SpecializationClosedSubset& o) const;
  Truth is_empty() const;
  /// Points of the subset among rational_points(fiber p, n).
  std::vector<FiberPoint> points(int p, int n) const;
  nlohmann::json to_json() const;

 private:
  explicit SpecializationClosedSubset(ModelPtr model) : model_(std::move(model)) {}
  void canonicalize();
  void check_model(const SpecializationClosedSubset& o) const;

  ModelPtr model_;
  std::map<int, std::vector<Ideal>> components_;
};

struct QuillenReport {
  std::string group;
  int p = 0, cap = 0, nil_bound = 0;
  bool kernel_nilpotent = false;
  bool points_surjective = false;
  bool orbits_identified = false;
  nlohmann::json details;
  bool passed() const { return kernel_nilpotent && points_surjective && orbits_identified; }
  nlohmann::json to_json() const;
};

/// Desk-scale check of the colimit description over elementary abelian
/// p-subgroups, with nil exponents p^s <= nil_bound.
QuillenReport quillen_check(const GroupPtr& g, int p, int cap, int nil_bound);

}  // namespace modstrat
