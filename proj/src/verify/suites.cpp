#include "modstrat/verify/suites.hpp"

#include <filesystem>
#include <fstream>
#include <numeric>

#include "modstrat/cohomring/presentation.hpp"
#include "modstrat/common/error.hpp"
#include "modstrat/homalg/cohomology.hpp"
#include "modstrat/support/support.hpp"

namespace modstrat {

void RunConfig::validate() const {
  auto positive = [](const std::optional<int>& v, const char* name) {
    if (v && *v <= 0) fail(ErrorCode::InvalidInput, std::string(name) + " must be positive");
  };
  positive(cap, "cap");
  positive(tate_range, "tate-range");
  positive(nil_bound, "nil-bound");
  positive(count, "count");
}

GroupPtr resolve_group(const std::string& source) {
  const auto names = FiniteGroup::builtin_names();
  if (std::find(names.begin(), names.end(), source) != names.end()) return FiniteGroup::builtin(source);
  if (!std::filesystem::is_regular_file(source)) fail(ErrorCode::InvalidInput, "unknown group '" + source + "'");
  std::ifstream in(source);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, "cannot parse group file: " + std::string(e.what()));
  }
  return FiniteGroup::from_json(j);
}

namespace {

std::vector<int> parse_elements(const GroupPtr& g, std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item(text.substr(pos, comma - pos));
    std::size_t used = 0;
    int x = -1;
    try {
      x = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty() || x < 0 || x >= g->order())
      fail(ErrorCode::InvalidInput, "bad group element '" + item + "'");
    out.push_back(x);
    pos = comma + 1;
  }
  return out;
}

int parse_count(std::string_view text) {
  try {
    std::size_t used = 0;
    const int n = std::stoi(std::string(text), &used);
    if (used == text.size()) return n;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::InvalidInput, "bad integer '" + std::string(text) + "'");
}

}  // namespace

Lattice parse_module(const std::string& spec, const GroupPtr& g, const CoeffRing& ring, int cap) {
  const std::size_t colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  if (head == "trivial") return trivial_lattice(g, ring);
  if (head == "regular") return regular_lattice(g, ring);
  if (head == "free") return free_lattice(g, ring, static_cast<std::size_t>(std::max(0, parse_count(arg))));
  if (head == "perm") return permutation_lattice(Subgroup::generated_by(g, parse_elements(g, arg)), ring);
  if (head == "sign") return sign_lattice(Subgroup::generated_by(g, parse_elements(g, arg)), ring);
  if (head == "omega") return syzygy(trivial_lattice(g, ring), parse_count(arg));
  if (head == "dual") return dual(parse_module(arg, g, ring, cap));
  if (head == "Lzeta") {
    PresentationPtr pres = GradedRingPresentation::build(g, ring, cap);
    const Polynomial f = Polynomial::parse(pres->poly_ring(), arg);
    if (f.is_zero()) fail(ErrorCode::ZeroClass, "Lzeta needs a nonzero class");
    const int d = f.degree();
    if (d < 1 || d > cap) fail(ErrorCode::InvalidInput, "class degree outside 1..cap");
    return carlson_module(CohomologyClass(pres->resolution(), d, pres->cocycle_of(f)));
  }
  if (head == "file") {
    std::ifstream in(arg);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open lattice file '" + arg + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::InvalidInput, "cannot parse lattice file: " + std::string(e.what()));
    }
    Lattice m = Lattice::from_json(g, j);
    if (!(m.ring() == ring)) fail(ErrorCode::RingMismatch, "lattice file ring differs from --ring");
    return m;
  }
  fail(ErrorCode::InvalidInput, "unknown module spec '" + spec + "'");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"maschke", "chouinard", "tensor-formula", "quillen",
                                              "elab",    "fracture",  "frobenius",      "tate-unit"};
  return names;
}

namespace {

std::vector<GroupPtr> groups_or(const RunConfig& cfg, std::initializer_list<const char*> fallback) {
  std::vector<GroupPtr> out;
  if (cfg.groups.empty())
    for (const char* name : fallback) out.push_back(FiniteGroup::builtin(name));
  else
    for (const auto& s : cfg.groups) out.push_back(resolve_group(s));
  return out;
}

// Per-group rings: --ring when given, else Z and F_p for each p dividing |G|.
std::vector<CoeffRing> rings_for(const RunConfig& cfg, const GroupPtr& g) {
  if (cfg.ring) return {CoeffRing::parse(*cfg.ring)};
  std::vector<CoeffRing> out{CoeffRing::integers()};
  for (int p : g->prime_divisors()) out.push_back(CoeffRing::prime_field(p));
  return out;
}

nlohmann::json base_inputs(const GroupPtr& g, const CoeffRing& ring) {
  return {{"group", g->name()}, {"ring", ring.to_string()}};
}

class Runner {
 public:
  explicit Runner(const ReportSink& sink) : sink_(sink) {}
  void emit(CheckReport r) {
    ok_ = ok_ && r.passed;
    sink_(r);
  }
  bool ok() const { return ok_; }

 private:
  const ReportSink& sink_;
  bool ok_ = true;
};

void maschke(const RunConfig& cfg, Runner& run) {
  const int count = cfg.count.value_or(25);
  for (const GroupPtr& g : groups_or(cfg, {"C6", "S3"})) {
    const CoeffRing ring = CoeffRing::parse(cfg.ring.value_or("Q"));
    if (!ring.is_unit(Scalar(g->order())))
      fail(ErrorCode::InvalidInput, "maschke needs |G| invertible in " + ring.to_string());
    LatticeGenerator gen(g, ring, cfg.seed);
    for (int i = 0; i < count; ++i) {
      const Lattice m = gen.next();
      CheckReport r{"maschke", base_inputs(g, ring), false, {}};
      r.inputs["seed"] = cfg.seed;
      r.inputs["index"] = i;
      r.inputs["rank"] = m.rank();
      const WeakProjectivity w = is_weakly_projective(m);
      r.passed = w.projective && transfer(m, m, *w.certificate) == Matrix::identity(ring, m.rank());
      r.evidence = w.to_json();
      if (!r.passed) r.evidence["lattice"] = m.to_json();
      run.emit(std::move(r));
    }
  }
}

void chouinard(const RunConfig& cfg, Runner& run) {
  const int count = cfg.count.value_or(20);
  for (const GroupPtr& g : groups_or(cfg, {"S3", "Q8", "D4", "C6"})) {
    for (const CoeffRing& ring : rings_for(cfg, g)) {
      LatticeGenerator gen(g, ring, cfg.seed);
      for (int i = 0; i < count; ++i) {
        const Lattice m = gen.next();
        const ChouinardReport c = chouinard_check(m);
        CheckReport r{"chouinard", base_inputs(g, ring), c.passed(), c.to_json()};
        r.inputs["seed"] = cfg.seed;
        r.inputs["index"] = i;
        r.inputs["rank"] = m.rank();
        if (!r.passed) r.evidence["lattice"] = m.to_json();
        run.emit(std::move(r));
      }
    }
  }
}

void fracture(const RunConfig& cfg, Runner& run) {
  const int count = cfg.count.value_or(20);
  if (cfg.ring && CoeffRing::parse(*cfg.ring).kind() != CoeffRing::Kind::Integers)
    fail(ErrorCode::InvalidInput, "fracture runs over Z");
  const CoeffRing z = CoeffRing::integers();
  for (const GroupPtr& g : groups_or(cfg, {"C6"})) {
    const std::vector<int> primes = g->prime_divisors();
    int coprime = 2;
    while (g->order() % coprime == 0 || !is_prime(coprime)) ++coprime;
    LatticeGenerator gen(g, z, cfg.seed);
    for (int i = 0; i < count; ++i) {
      const Lattice m = gen.next();
      const bool global = is_weakly_projective(m).projective;
      bool all_local = true;
      nlohmann::json local = nlohmann::json::object();
      for (int p : primes) {
        const bool w = is_weakly_projective(localize_lattice(m, p)).projective;
        local[std::to_string(p)] = w;
        all_local = all_local && w;
      }
      const bool away = is_weakly_projective(localize_lattice(m, coprime)).projective;
      local[std::to_string(coprime)] = away;
      CheckReport r{"fracture", base_inputs(g, z), global == all_local && away, {}};
      r.inputs["seed"] = cfg.seed;
      r.inputs["index"] = i;
      r.inputs["rank"] = m.rank();
      r.evidence = {{"global", global}, {"local", local}};
      if (!r.passed) r.evidence["lattice"] = m.to_json();
      run.emit(std::move(r));
    }
  }
}

void tensor_case(const GroupPtr& g, const CoeffRing& ring, int cap, std::vector<std::pair<std::string, Lattice>> mods,
                 Runner& run) {
  ModelPtr model = stmod_spectrum(g, ring, cap);
  std::vector<SpecializationClosedSubset> supp;
  for (const auto& [name, m] : mods) supp.push_back(classify(m, model, cap));
  for (std::size_t i = 0; i < mods.size(); ++i)
    for (std::size_t j = i; j < mods.size(); ++j) {
      const SpecializationClosedSubset lhs = classify(tensor(mods[i].second, mods[j].second), model, cap);
      const SpecializationClosedSubset rhs = supp[i].intersect(supp[j]);
      const Truth t = lhs.equals(rhs);
      CheckReport r{"tensor-formula", base_inputs(g, ring), t == Truth::True, {}};
      r.inputs["cap"] = cap;
      r.inputs["modules"] = {mods[i].first, mods[j].first};
      r.evidence = {{"tensor", lhs.to_json()}, {"intersection", rhs.to_json()}, {"verdict", to_string(t)}};
      run.emit(std::move(r));
    }
}

std::vector<std::pair<std::string, Lattice>> tensor_modules(const GroupPtr& g, const CoeffRing& ring, int cap) {
  std::vector<std::string> specs{"trivial", "regular"};
  int p = 0, r = 0;
  if (ring.kind() == CoeffRing::Kind::PrimeField && is_elementary_abelian(*g, &p, &r) && p == 2) {
    PresentationPtr pres = GradedRingPresentation::build(g, ring, cap);
    std::vector<std::string> deg1;
    for (const auto& gen : pres->generators())
      if (gen.degree == 1) deg1.push_back(gen.name);
    for (const auto& x : deg1) specs.push_back("Lzeta:" + x);
    if (deg1.size() >= 2) specs.push_back("Lzeta:" + deg1[0] + "+" + deg1[1]);
  } else {
    // permutation lattices on the cosets of the Sylow-ish prime-order subgroups
    for (int q : g->prime_divisors())
      for (int x = 1; x < g->order(); ++x)
        if (g->element_order(x) == q) {
          specs.push_back("perm:" + std::to_string(x));
          break;
        }
  }
  if (ring.is_field()) specs.push_back("omega:1");
  std::vector<std::pair<std::string, Lattice>> out;
  for (const auto& s : specs) out.emplace_back(s, parse_module(s, g, ring, cap));
  return out;
}

void tensor_formula(const RunConfig& cfg, Runner& run) {
  const int cap = cfg.cap.value_or(4);
  if (cfg.groups.empty() && !cfg.ring) {
    tensor_case(FiniteGroup::builtin("V4"), CoeffRing::prime_field(2), cap,
                tensor_modules(FiniteGroup::builtin("V4"), CoeffRing::prime_field(2), cap), run);
    tensor_case(FiniteGroup::builtin("C6"), CoeffRing::integers(), cap,
                tensor_modules(FiniteGroup::builtin("C6"), CoeffRing::integers(), cap), run);
    return;
  }
  for (const GroupPtr& g : groups_or(cfg, {"V4"})) {
    const CoeffRing ring = CoeffRing::parse(cfg.ring.value_or("Z"));
    tensor_case(g, ring, cap, tensor_modules(g, ring, cap), run);
  }
}

void quillen(const RunConfig& cfg, Runner& run) {
  const int cap = cfg.cap.value_or(8);
  const int nil = cfg.nil_bound.value_or(8);
  std::vector<std::pair<GroupPtr, int>> cases;
  if (cfg.groups.empty()) {
    cases = {{FiniteGroup::builtin("S3"), 2}, {FiniteGroup::builtin("S3"), 3}, {FiniteGroup::builtin("D4"), 2}};
  } else {
    for (const auto& s : cfg.groups) {
      GroupPtr g = resolve_group(s);
      for (int p : g->prime_divisors()) cases.emplace_back(g, p);
    }
  }
  for (const auto& [g, p] : cases) {
    const QuillenReport q = quillen_check(g, p, cap, nil);
    CheckReport r{"quillen", {{"group", g->name()}, {"p", p}, {"cap", cap}, {"nil_bound", nil}}, q.passed(), q.to_json()};
    run.emit(std::move(r));
  }
}

void elab(const RunConfig& cfg, Runner& run) {
  const int cap = cfg.cap.value_or(8);
  const int range = cfg.tate_range.value_or(4);
  for (const GroupPtr& g : groups_or(cfg, {"C2", "C3", "V4", "E9"})) {
    int p = 0, r = 0;
    if (!is_elementary_abelian(*g, &p, &r)) fail(ErrorCode::NotElementaryAbelian, g->name() + " is not elementary abelian");
    if (cfg.ring) {
      const CoeffRing ring = CoeffRing::parse(*cfg.ring);
      if (!(ring == CoeffRing::localized(p))) fail(ErrorCode::InvalidInput, "elab runs over Zp:" + std::to_string(p));
    }
    for (auto& rep : verify_elab_suite(g, p, cap, range, cfg.nil_bound.value_or(0))) run.emit(std::move(rep));
  }
}

// Weak projectives are the projectives and the injectives of the split
// exact structure, and free covers give enough of both.
void frobenius(const RunConfig& cfg, Runner& run) {
  const int count = cfg.count.value_or(10);
  for (const GroupPtr& g : groups_or(cfg, {"C2", "S3", "V4", "C6"})) {
    for (const CoeffRing& ring : rings_for(cfg, g)) {
      LatticeGenerator gen(g, ring, cfg.seed);
      for (int i = 0; i < count; ++i) {
        const Lattice m = gen.next();
        const bool wp = is_weakly_projective(m).projective;
        const bool wp_dual = is_weakly_projective(dual(m)).projective;
        const EquivariantMap cover = free_cover(m);
        const Matrix k = LinearSolver(cover.matrix()).kernel();
        const EquivariantMap inc(sublattice(cover.source(), k), cover.source(), k);
        const bool split = check_split_exact(inc, cover);
        const bool free_wp = is_weakly_projective(cover.source()).projective;
        const bool stably_zero = !wp || stable_hom(m, m).quotient.is_zero();
        CheckReport r{"frobenius", base_inputs(g, ring), wp == wp_dual && split && free_wp && stably_zero, {}};
        r.inputs["seed"] = cfg.seed;
        r.inputs["index"] = i;
        r.inputs["rank"] = m.rank();
        r.evidence = {{"weakly_projective", wp},
                      {"dual_weakly_projective", wp_dual},
                      {"cover_split_exact", split},
                      {"cover_weakly_projective", free_wp},
                      {"stably_zero_if_projective", stably_zero}};
        if (!r.passed) r.evidence["lattice"] = m.to_json();
        run.emit(std::move(r));
      }
    }
  }
}

void tate_unit(const RunConfig& cfg, Runner& run) {
  const int range = cfg.tate_range.value_or(3);
  const CoeffRing ring = CoeffRing::parse(cfg.ring.value_or("Z"));
  for (const GroupPtr& g : groups_or(cfg, {"C2", "C3", "C4"})) {
    const Lattice t = trivial_lattice(g, ring);
    CompleteResolution cr(Resolution::build(g, ring, range + 1));
    for (int n = -range; n <= range; ++n) {
      const AbelianGroup tate = tate_cohomology(cr, t, n);
      const AbelianGroup st = stable_hom(syzygy(t, n), t).quotient;
      CheckReport r{"tate-unit", base_inputs(g, ring), st == tate, {}};
      r.inputs["degree"] = n;
      r.evidence = {{"stable_hom", st.to_string()}, {"tate", tate.to_string()}};
      run.emit(std::move(r));
    }
  }
}

}  // namespace

bool run_suite(const std::string& suite, const RunConfig& cfg, const ReportSink& sink) {
  cfg.validate();
  Runner run(sink);
  if (suite == "maschke") maschke(cfg, run);
  else if (suite == "chouinard") chouinard(cfg, run);
  else if (suite == "tensor-formula") tensor_formula(cfg, run);
  else if (suite == "quillen") quillen(cfg, run);
  else if (suite == "elab") elab(cfg, run);
  else if (suite == "fracture") fracture(cfg, run);
  else if (suite == "frobenius") frobenius(cfg, run);
  else if (suite == "tate-unit") tate_unit(cfg, run);
  else fail(ErrorCode::InvalidInput, "unknown suite '" + suite + "'");
  return run.ok();
}

nlohmann::json cohomology_report(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.groups.size() != 1) fail(ErrorCode::InvalidInput, "cohomology takes exactly one --group");
  const GroupPtr g = resolve_group(cfg.groups[0]);
  const CoeffRing ring = CoeffRing::parse(cfg.ring.value_or("Z"));
  PresentationPtr pres = GradedRingPresentation::build(g, ring, cfg.cap.value_or(6));
  nlohmann::json out = pres->to_json();
  nlohmann::json dims = nlohmann::json::array();
  for (const auto& h : pres->hilbert()) {
    if (h.is_finite()) dims.push_back({{"free_rank", h.free_rank}, {"order", h.order().str()}});
    else dims.push_back({{"free_rank", h.free_rank}, {"torsion", h.torsion.size()}});
  }
  out["hilbert_data"] = dims;
  return out;
}

nlohmann::json support_report(const RunConfig& cfg, const std::string& module) {
  cfg.validate();
  if (cfg.groups.size() != 1) fail(ErrorCode::InvalidInput, "support takes exactly one --group");
  const GroupPtr g = resolve_group(cfg.groups[0]);
  const CoeffRing ring = CoeffRing::parse(cfg.ring.value_or("Z"));
  const int cap = cfg.cap.value_or(4);
  const Lattice m = parse_module(module, g, ring, cap);
  ModelPtr model = stmod_spectrum(g, ring, cap);
  const auto k = ring.kind();
  SupportResult s = (k == CoeffRing::Kind::Integers || k == CoeffRing::Kind::LocalizedIntegers)
                        ? support_for_integral_lattice(m, model, cap)
                        : cohomological_support(m, model, cap);
  nlohmann::json out = s.to_json();
  out["module"] = module;
  return out;
}

}  // namespace modstrat
