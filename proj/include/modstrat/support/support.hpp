#pragma once

#include <json.hpp>

#include "modstrat/spectrum/spectrum.hpp"

namespace modstrat {

struct SupportResult {
  ModelPtr model;
  SpecializationClosedSubset subset;
  int certified_cap = 0;
  /// Annihilator ideal per fiber, before taking V(-).
  std::map<int, std::vector<Polynomial>> annihilators;
  nlohmann::json to_json() const;
};

/// V(Ann) of the fiber image of H*(G; End_R(M)), degreewise through cap.
/// Over Z or Z_(p) the fiber at p is computed from M (x) F_p.
SupportResult cohomological_support(const Lattice& m, const ModelPtr& model, int cap);
/// The same for lattices over Z or Z_(p); UnsupportedRing otherwise.
SupportResult support_for_integral_lattice(const Lattice& m, const ModelPtr& model, int cap);

/// Ideal in F_p[Y_1..Y_r] cutting out the alpha at which M is not free over
/// F_p[u_alpha], u_alpha = sum alpha_i (g_i - 1), with g_i the cyclic
/// decomposition of E. The zero ideal when p does not divide rank M.
std::vector<Polynomial> rank_variety(const Lattice& m, const PolyRingPtr& ring);
PolyRingPtr rank_variety_ring(const GroupPtr& e);

/// Matrix A with A(k, i) = x_k(g_i) for the degree-one fiber variables x_k
/// (p = 2): a rank point alpha corresponds to the cohomological point A alpha.
std::vector<std::vector<std::int64_t>> degree_one_pairing(const ProjFiber& fiber);

/// Compares cohomological_support with rank_variety up to radical (p = 2).
Truth avrunin_scott_agree(const Lattice& m, const ModelPtr& model, int cap);

}  // namespace modstrat
