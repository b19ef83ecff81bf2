#include "modstrat/exactalg/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "modstrat/common/error.hpp"

namespace modstrat {

PolyRing::PolyRing(CoeffRing coeffs, std::vector<int> degrees, std::vector<std::string> names)
    : coeffs_(coeffs), degrees_(std::move(degrees)), names_(std::move(names)) {
  for (int d : degrees_)
    if (d <= 0) fail(ErrorCode::InvalidInput, "variable degrees must be positive");
  if (names_.empty())
    for (std::size_t i = 0; i < degrees_.size(); ++i) names_.push_back("x" + std::to_string(i + 1));
  if (names_.size() != degrees_.size()) fail(ErrorCode::DimensionMismatch, "one name per variable");
}

std::ptrdiff_t PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

int PolyRing::degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * degrees_[i];
  return d;
}

bool PolyRing::greater(const Monomial& a, const Monomial& b) const {
  int da = degree(a), db = degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

std::vector<Monomial> PolyRing::monomials_of_degree(int d) const {
  std::vector<Monomial> out;
  if (d < 0) return out;
  Monomial cur(nvars(), 0);
  auto rec = [&](auto&& self, std::size_t i, int rest) -> void {
    if (i == nvars()) {
      if (rest == 0) out.push_back(cur);
      return;
    }
    for (int e = 0; e * degrees_[i] <= rest; ++e) {
      cur[i] = e;
      self(self, i + 1, rest - e * degrees_[i]);
    }
    cur[i] = 0;
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), [this](const Monomial& a, const Monomial& b) { return greater(a, b); });
  return out;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
  return m;
}

Monomial monomial_quotient(const Monomial& b, const Monomial& a) {
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = b[i] - a[i];
  return m;
}

Polynomial Polynomial::constant(PolyRingPtr ring, const Scalar& c) {
  return monomial(ring, Monomial(ring->nvars(), 0), c);
}

Polynomial Polynomial::variable(PolyRingPtr ring, std::size_t i) {
  Monomial m(ring->nvars(), 0);
  m.at(i) = 1;
  return monomial(std::move(ring), m);
}

Polynomial Polynomial::monomial(PolyRingPtr ring, Monomial m, const Scalar& c) {
  Polynomial p(ring);
  Scalar v = ring->coeffs().reduce(c);
  if (v != 0) p.terms_.push_back({std::move(m), v});
  return p;
}

void Polynomial::normalize() {
  const PolyRing& R = *ring_;
  std::sort(terms_.begin(), terms_.end(), [&R](const Term& a, const Term& b) { return R.greater(a.mono, b.mono); });
  std::vector<Term> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coeff = R.coeffs().add(out.back().coeff, t.coeff);
    else
      out.push_back(std::move(t));
    if (out.back().coeff == 0) out.pop_back();
  }
  terms_ = std::move(out);
}

int Polynomial::degree() const { return terms_.empty() ? -1 : ring_->degree(terms_.front().mono); }

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_)
    if (ring_->degree(t.mono) != degree()) return false;
  return true;
}

Scalar Polynomial::coeff_of(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mono == m) return t.coeff;
  return Scalar(0);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r(ring_);
  r.terms_ = terms_;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o.scaled(Scalar(-1)); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(ring_);
  std::map<Monomial, Scalar> acc;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      Monomial m(a.mono.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = a.mono[i] + b.mono[i];
      acc[m] += a.coeff * b.coeff;
    }
  for (auto& [m, c] : acc) {
    Scalar v = ring_->coeffs().reduce(c);
    if (v != 0) r.terms_.push_back({m, v});
  }
  r.normalize();
  return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial r(ring_);
  for (const auto& t : terms_) {
    Scalar v = ring_->coeffs().mul(c, t.coeff);
    if (v != 0) r.terms_.push_back({t.mono, v});
  }
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Scalar& c) const {
  Polynomial r(ring_);
  for (const auto& t : terms_) {
    Monomial n(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) n[i] = t.mono[i] + m[i];
    Scalar v = ring_->coeffs().mul(c, t.coeff);
    if (v != 0) r.terms_.push_back({std::move(n), v});
  }
  return r;  // multiplying by a monomial preserves the order
}

Polynomial Polynomial::pow(int e) const {
  Polynomial result = constant(ring_, Scalar(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(ring_->coeffs().inverse(leading_coeff()));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

Scalar Polynomial::evaluate(std::span<const Scalar> values) const {
  if (values.size() != ring_->nvars()) fail(ErrorCode::DimensionMismatch, "evaluation point has wrong length");
  const CoeffRing& R = ring_->coeffs();
  Scalar total = 0;
  for (const auto& t : terms_) {
    Scalar v = t.coeff;
    for (std::size_t i = 0; i < values.size(); ++i)
      for (int e = 0; e < t.mono[i]; ++e) v = R.mul(v, values[i]);
    total = R.add(total, v);
  }
  return total;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Scalar c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    bool is_const = std::all_of(t.mono.begin(), t.mono.end(), [](int e) { return e == 0; });
    bool wrote = false;
    if (c != 1 || is_const) {
      os << c;
      wrote = true;
    }
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono[i] == 0) continue;
      os << (wrote ? "*" : "") << ring_->name(i);
      if (t.mono[i] > 1) os << "^" << t.mono[i];
      wrote = true;
    }
  }
  return os.str();
}

Polynomial Polynomial::parse(PolyRingPtr ring, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) fail(ErrorCode::InvalidInput, "empty polynomial");
  Polynomial result(ring);
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string_view term(s.data() + pos, end - pos);
    if (term.empty()) fail(ErrorCode::InvalidInput, "malformed polynomial '" + std::string(text) + "'");
    Scalar coeff = sign;
    Monomial mono(ring->nvars(), 0);
    std::size_t fpos = 0;
    while (fpos <= term.size()) {
      std::size_t fend = term.find('*', fpos);
      if (fend == std::string_view::npos) fend = term.size();
      std::string_view factor = term.substr(fpos, fend - fpos);
      if (factor.empty()) fail(ErrorCode::InvalidInput, "malformed polynomial '" + std::string(text) + "'");
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        coeff *= Scalar(Integer(std::string(factor)));
      } else {
        int e = 1;
        auto caret = factor.find('^');
        std::string_view name = factor.substr(0, caret);
        if (caret != std::string_view::npos) e = std::stoi(std::string(factor.substr(caret + 1)));
        std::ptrdiff_t idx = ring->index_of(name);
        if (idx < 0) fail(ErrorCode::InvalidInput, "unknown variable '" + std::string(name) + "'");
        mono[static_cast<std::size_t>(idx)] += e;
      }
      fpos = fend + 1;
    }
    result = result + monomial(ring, mono, coeff);
    pos = end;
  }
  return result;
}

Polynomial GroebnerBasis::normal_form(const Polynomial& f) const {
  const CoeffRing& R = ring_->coeffs();
  Polynomial rest = f;
  Polynomial out(ring_);
  std::vector<Polynomial::Term> done;
  while (!rest.is_zero()) {
    const auto& lt = rest.terms().front();
    const Polynomial* red = nullptr;
    for (const auto& g : basis_)
      if (divides(g.leading_monomial(), lt.mono)) {
        red = &g;
        break;
      }
    if (red) {
      Scalar c = R.mul(lt.coeff, R.inverse(red->leading_coeff()));
      rest = rest - red->times_monomial(monomial_quotient(lt.mono, red->leading_monomial()), c);
    } else {
      out = out + Polynomial::monomial(ring_, lt.mono, lt.coeff);
      rest = rest - Polynomial::monomial(ring_, lt.mono, lt.coeff);
    }
  }
  return out;
}

std::size_t GroebnerBasis::quotient_dimension(int d) const {
  std::size_t n = 0;
  for (const auto& m : ring_->monomials_of_degree(d)) {
    bool standard = true;
    for (const auto& g : basis_)
      if (divides(g.leading_monomial(), m)) {
        standard = false;
        break;
      }
    if (standard) ++n;
  }
  return n;
}

namespace {

Polynomial reduce_fully(const PolyRingPtr& ring, const Polynomial& f, const std::vector<Polynomial>& G) {
  return GroebnerBasis(ring, {}, G).normal_form(f);
}

}  // namespace

GroebnerBasis groebner(PolyRingPtr ring, const std::vector<Polynomial>& generators) {
  if (!ring->coeffs().is_field())
    fail(ErrorCode::UnsupportedRing, "Groebner bases need a field, got " + ring->coeffs().to_string());
  for (const auto& g : generators)
    if (!g.is_homogeneous()) fail(ErrorCode::NonHomogeneousInput, "generator " + g.to_string() + " is not homogeneous");

  std::vector<Polynomial> G;
  struct Pair {
    std::size_t i, j;
    int deg;
  };
  std::vector<Pair> pairs;
  auto add = [&](Polynomial f) {
    f = f.monic();
    const std::size_t k = G.size();
    G.push_back(f);
    for (std::size_t i = 0; i < k; ++i) {
      const Monomial& a = G[i].leading_monomial();
      const Monomial& b = f.leading_monomial();
      bool coprime = true;
      for (std::size_t v = 0; v < a.size(); ++v)
        if (a[v] > 0 && b[v] > 0) coprime = false;
      if (coprime) continue;  // Buchberger's product criterion
      pairs.push_back({i, k, ring->degree(monomial_lcm(a, b))});
    }
  };

  // Process generators in degree order so the computation is degree-by-degree.
  std::vector<Polynomial> gens;
  for (const auto& g : generators)
    if (!g.is_zero()) gens.push_back(g);
  std::stable_sort(gens.begin(), gens.end(), [](const Polynomial& a, const Polynomial& b) { return a.degree() < b.degree(); });
  std::size_t next_gen = 0;
  while (next_gen < gens.size() || !pairs.empty()) {
    int pair_deg = INT32_MAX;
    std::size_t best = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (pairs[k].deg < pair_deg) {
        pair_deg = pairs[k].deg;
        best = k;
      }
    if (next_gen < gens.size() && gens[next_gen].degree() <= pair_deg) {
      Polynomial r = reduce_fully(ring, gens[next_gen++], G);
      if (!r.is_zero()) add(r);
      continue;
    }
    Pair pr = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    const Polynomial& f = G[pr.i];
    const Polynomial& g = G[pr.j];
    Monomial l = monomial_lcm(f.leading_monomial(), g.leading_monomial());
    Polynomial s = f.times_monomial(monomial_quotient(l, f.leading_monomial()), Scalar(1)) -
                   g.times_monomial(monomial_quotient(l, g.leading_monomial()), Scalar(1));
    Polynomial r = reduce_fully(ring, s, G);
    if (!r.is_zero()) add(r);
  }

  // Interreduce to the unique reduced basis.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& a = G[j].leading_monomial();
      const Monomial& b = G[i].leading_monomial();
      if (divides(a, b) && (a != b || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const Polynomial& f = minimal[i];
    Polynomial head = Polynomial::monomial(ring, f.leading_monomial(), f.leading_coeff());
    Polynomial tail = reduce_fully(ring, f - head, others);
    reduced.push_back((head + tail).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ring->greater(a.leading_monomial(), b.leading_monomial());
  });
  return GroebnerBasis(ring, generators, reduced);
}

}  // namespace modstrat
