// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Every criterion is exact; the only tolerance is the runtime budget.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "modstrat/common/error.hpp"
#include "modstrat/homalg/cohomology.hpp"
#include "modstrat/homalg/group_ring.hpp"
#include "modstrat/support/support.hpp"
#include "modstrat/verify/suites.hpp"

using namespace modstrat;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

GroupPtr grp(const char* name) { return FiniteGroup::builtin(name); }

Integer power(int p, int r) {
  Integer out = 1;
  for (int i = 0; i < r; ++i) out *= p;
  return out;
}

struct Elab {
  const char* name;
  int p, r;
};
const std::vector<Elab> kElab{{"C2", 2, 1}, {"C3", 3, 1}, {"V4", 2, 2}, {"E9", 3, 2}};

Outcome c1_low_degree() {
  Outcome o;
  for (const auto& e : kElab) {
    const CoeffRing a = CoeffRing::localized(e.p);
    GroupPtr g = grp(e.name);
    ResolutionPtr res = Resolution::build(g, a, 9);
    const Lattice t = trivial_lattice(g, a);
    const AbelianGroup h0 = cohomology(*res, t, 0);
    o.require(h0.free_rank == 1 && h0.torsion.empty(), std::string(e.name) + ": H^0 != A");
    o.require(cohomology(*res, t, 1).is_zero(), std::string(e.name) + ": H^1 != 0");
    for (int n = 1; n <= 8; ++n)
      o.require(cohomology(*res, t, n).annihilated_by(e.p), std::string(e.name) + ": p H^" + std::to_string(n) + " != 0");
  }
  return o;
}

Outcome c2_tate_exponent() {
  Outcome o;
  for (const auto& e : kElab) {
    const CoeffRing a = CoeffRing::localized(e.p);
    GroupPtr g = grp(e.name);
    const Lattice t = trivial_lattice(g, a);
    CompleteResolution cr(Resolution::build(g, a, 5));
    const Integer pr = power(e.p, e.r);
    for (int n = -4; n <= 4; ++n) {
      const AbelianGroup h = tate_cohomology(cr, t, n);
      o.require(h.annihilated_by(pr), std::string(e.name) + ": p^r does not kill Tate degree " + std::to_string(n));
      if (n == 0) o.require(h.is_finite() && h.order() == pr, std::string(e.name) + ": |H^0| != p^r");
    }
    GroupRingElement norm;
    for (int x = 0; x < g->order(); ++x) norm.emplace_back(x, Scalar(1));
    o.require(act(t, norm) == Matrix::identity(a, 1).scaled(Scalar(pr)), std::string(e.name) + ": norm != p^r");
  }
  return o;
}

Outcome c3_maschke() {
  Outcome o;
  const CoeffRing q = CoeffRing::rationals();
  for (const char* name : {"C6", "S3"}) {
    LatticeGenerator gen(grp(name), q, 1);
    for (int i = 0; i < 25; ++i) {
      const Lattice m = gen.next();
      o.require(m.rank() <= 4, "rank above 4");
      const WeakProjectivity w = is_weakly_projective(m);
      o.require(w.projective && transfer(m, m, *w.certificate) == Matrix::identity(q, m.rank()),
                std::string(name) + ": lattice " + std::to_string(i) + " lacks a Higman certificate");
    }
  }
  return o;
}

Outcome c4_stable_vs_tate() {
  Outcome o;
  const CoeffRing z = CoeffRing::integers();
  for (int m : {2, 3, 4}) {
    GroupPtr g = FiniteGroup::cyclic(m);
    const Lattice t = trivial_lattice(g, z);
    CompleteResolution cr(Resolution::build(g, z, 4));
    for (int n = -3; n <= 3; ++n) {
      const AbelianGroup st = stable_hom(syzygy(t, n), t).quotient;
      const AbelianGroup tate = tate_cohomology(cr, t, n);
      // closed form for cyclic groups: Z/m in even degrees, 0 in odd
      const AbelianGroup closed = n % 2 == 0 ? AbelianGroup{z, 0, {Integer(m)}} : AbelianGroup{z, 0, {}};
      o.require(st == tate && tate == closed, "C" + std::to_string(m) + " degree " + std::to_string(n) + ": " +
                                                  st.to_string() + " / " + tate.to_string());
    }
  }
  return o;
}

Outcome suite_outcome(const std::string& suite, RunConfig cfg) {
  Outcome o;
  std::size_t checks = 0;
  const bool ok = run_suite(suite, cfg, [&](const CheckReport& r) {
    ++checks;
    o.require(r.passed, r.check + " " + r.inputs.dump());
  });
  o.require(ok, suite + " reported a failure");
  o.require(checks > 0, suite + " produced no checks");
  if (o.ok) o.detail = std::to_string(checks) + " checks";
  return o;
}

Outcome c5_chouinard() {
  RunConfig cfg;
  cfg.groups = {"S3", "Q8", "D4", "C6"};
  cfg.count = 20;
  return suite_outcome("chouinard", cfg);
}

Outcome c6_fracture() {
  RunConfig cfg;
  cfg.groups = {"C6"};
  cfg.count = 20;
  return suite_outcome("fracture", cfg);
}

Outcome c7_spectrum_shapes() {
  Outcome o;
  const CoeffRing z = CoeffRing::integers();
  ModelPtr v4 = stmod_spectrum(grp("V4"), z, 6);
  o.require(v4->fibers.size() == 1 && v4->fibers.count(2), "V4: fiber set is not {2}");
  if (o.ok) {
    const ProjFiber& f = *v4->fibers.at(2);
    o.require(f.to_string() == "F2[x1,x2]", "V4: coordinate ring " + f.to_string());
    const auto h = f.hilbert();
    o.require(h.size() == 7, "V4: Hilbert data length");
    for (std::size_t n = 0; n < h.size(); ++n) o.require(h[n] == n + 1, "V4: Hilbert dim in degree " + std::to_string(n));
  }
  ModelPtr c6 = stmod_spectrum(grp("C6"), z, 6);
  o.require(c6->fibers.size() == 2 && c6->fibers.count(2) && c6->fibers.count(3), "C6: fiber set is not {2, 3}");
  for (const auto& [p, f] : c6->fibers) {
    o.require(f->ring()->nvars() == 1, "C6: fiber is not Proj of a one-variable ring");
    for (int n = 1; n <= 2; ++n) o.require(rational_points(*f, n).size() == 1, "C6: fiber is not a single point");
  }
  ModelPtr s3 = stmod_spectrum(grp("S3"), CoeffRing::rationals(), 6);
  o.require(s3->fibers.empty(), "S3 over Q: spectrum is not empty");
  return o;
}

Outcome c8_tensor_formula() {
  Outcome o;
  struct Case {
    const char* group;
    CoeffRing ring;
    std::vector<std::string> mods;
  };
  const std::vector<Case> cases{
      {"V4", CoeffRing::prime_field(2), {"trivial", "regular", "Lzeta:x1", "Lzeta:x2", "Lzeta:x1+x2", "omega:1"}},
      {"C6", CoeffRing::integers(), {"trivial", "regular", "perm:3", "perm:2"}}};
  const int cap = 4;
  std::size_t pairs = 0;
  for (const auto& c : cases) {
    GroupPtr g = grp(c.group);
    ModelPtr model = stmod_spectrum(g, c.ring, cap);
    std::vector<Lattice> ms;
    std::vector<SpecializationClosedSubset> supp;
    for (const auto& s : c.mods) {
      ms.push_back(parse_module(s, g, c.ring, cap));
      supp.push_back(classify(ms.back(), model, cap));
    }
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = 0; j < ms.size(); ++j) {
        ++pairs;
        const Truth t = classify(tensor(ms[i], ms[j]), model, cap).equals(supp[i].intersect(supp[j]));
        o.require(t == Truth::True, std::string(c.group) + ": " + c.mods[i] + " x " + c.mods[j] + " -> " + to_string(t));
      }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " ordered pairs";
  return o;
}

Outcome c9_avrunin_scott() {
  Outcome o;
  GroupPtr g = grp("V4");
  const CoeffRing f2 = CoeffRing::prime_field(2);
  ModelPtr model = stmod_spectrum(g, f2, 4);
  for (const char* s : {"trivial", "regular", "Lzeta:x1", "Lzeta:x2", "Lzeta:x1+x2", "omega:1"}) {
    const Truth t = avrunin_scott_agree(parse_module(s, g, f2, 4), model, 4);
    o.require(t == Truth::True, std::string(s) + ": " + to_string(t));
  }
  return o;
}

Outcome c10_quillen() {
  Outcome o;
  for (auto [name, p] : std::vector<std::pair<const char*, int>>{{"S3", 2}, {"S3", 3}, {"D4", 2}}) {
    const QuillenReport q = quillen_check(grp(name), p, 8, 8);
    o.require(q.kernel_nilpotent, std::string(name) + "/" + std::to_string(p) + ": kernel not nilpotent");
    o.require(q.points_surjective, std::string(name) + "/" + std::to_string(p) + ": points not surjective");
    o.require(q.orbits_identified, std::string(name) + "/" + std::to_string(p) + ": orbits not identified");
  }
  return o;
}

Outcome c11_f_isomorphism() {
  Outcome o;
  for (auto [name, p] : std::vector<std::pair<const char*, int>>{{"C2", 2}, {"V4", 2}, {"C3", 3}}) {
    const CheckReport r = f_isomorphism_check(grp(name), p, 6, p * p * p);
    o.require(r.passed, std::string(name) + ": " + r.to_json().dump());
  }
  return o;
}

Outcome c12_determinism() {
  Outcome o;
  for (const auto& suite : suite_names()) {
    RunConfig cfg;
    cfg.seed = 20261019;
    if (suite == "maschke" || suite == "chouinard" || suite == "fracture" || suite == "frobenius") cfg.count = 8;
    std::string first, second;
    run_suite(suite, cfg, [&](const CheckReport& r) { first += r.to_json().dump() + "\n"; });
    run_suite(suite, cfg, [&](const CheckReport& r) { second += r.to_json().dump() + "\n"; });
    o.require(!first.empty() && first == second, suite + ": reports differ between runs");
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "elementary abelian low-degree cohomology", 30, c1_low_degree},
      {2, "Tate exponent and norm", 60, c2_tate_exponent},
      {3, "Maschke over Q", 30, c3_maschke},
      {4, "stable endomorphisms of the unit match Tate", 60, c4_stable_vs_tate},
      {5, "Chouinard detection", 300, c5_chouinard},
      {6, "arithmetic fracture", 60, c6_fracture},
      {7, "spectrum shapes", 120, c7_spectrum_shapes},
      {8, "tensor-product formula", 180, c8_tensor_formula},
      {9, "Avrunin-Scott agreement", 120, c9_avrunin_scott},
      {10, "Quillen check", 300, c10_quillen},
      {11, "F-isomorphism", 120, c11_f_isomorphism},
      {12, "determinism", 600, c12_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.budget_s) {
      o.ok = false;
      o.detail = "over the runtime budget";
    }
    if (!o.ok) ++failed;
    std::ostringstream line;
    line << (o.ok ? "PASS" : "FAIL") << " criterion " << std::setw(2) << c.id << "  " << c.name << "  ["
         << std::fixed << std::setprecision(2) << secs << "s / " << c.budget_s << "s]";
    if (!o.detail.empty()) line << "  " << o.detail;
    std::cout << line.str() << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << std::endl;
  return failed ? 1 : 0;
}
