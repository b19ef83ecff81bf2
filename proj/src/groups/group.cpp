#include "modstrat/groups/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "modstrat/common/error.hpp"

namespace modstrat {

namespace {

std::vector<int> closure(const FiniteGroup& g, std::vector<int> seed) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> elems{0};
  in[0] = 1;
  for (int s : seed)
    if (!in[s]) {
      in[s] = 1;
      elems.push_back(s);
    }
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (int prod : {g.mul(elems[i], elems[j]), g.mul(elems[j], elems[i])})
        if (!in[prod]) {
          in[prod] = 1;
          elems.push_back(prod);
        }
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace

GroupPtr FiniteGroup::from_table(std::vector<std::vector<int>> table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) fail(ErrorCode::InvalidInput, "empty multiplication table");
  if (n > kMaxOrder) fail(ErrorCode::InvalidInput, "group order exceeds " + std::to_string(kMaxOrder));
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) fail(ErrorCode::InvalidInput, "multiplication table is not square");
    for (int v : row)
      if (v < 0 || v >= n) fail(ErrorCode::InvalidInput, "table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    if (table[0][a] != a || table[a][0] != a) fail(ErrorCode::NoIdentity, "element 0 is not a two-sided identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          fail(ErrorCode::NotAssociative, "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" + std::to_string(c) +
                                              " differs from " + std::to_string(a) + "*(" + std::to_string(b) + "*" +
                                              std::to_string(c) + ")");
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = n;
  g->table_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g->table_[a * n + b] = table[a][b];
  g->inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == 0 && table[b][a] == 0) {
        g->inverse_[a] = b;
        break;
      }
    if (g->inverse_[a] < 0) fail(ErrorCode::NoInverse, "element " + std::to_string(a) + " has no inverse");
  }
  g->name_ = std::move(name);
  g->finish({});
  return g;
}

void FiniteGroup::finish(std::vector<int> gens) {
  orders_.assign(n_, 1);
  for (int a = 0; a < n_; ++a) {
    int x = a, k = 1;
    while (x != 0) {
      x = mul(x, a);
      ++k;
    }
    orders_[a] = k;
  }
  if (gens.empty()) {
    std::vector<int> span{0};
    for (int a = 1; a < n_; ++a) {
      if (std::binary_search(span.begin(), span.end(), a)) continue;
      gens.push_back(a);
      span = closure(*this, gens);
      if (static_cast<int>(span.size()) == n_) break;
    }
  }
  generators_ = std::move(gens);
  if (name_.empty()) name_ = "G" + std::to_string(n_);
}

GroupPtr FiniteGroup::from_permutations(const std::vector<std::vector<int>>& gens, std::string name) {
  if (gens.empty()) fail(ErrorCode::InvalidInput, "no permutation generators");
  const std::size_t k = gens[0].size();
  for (const auto& p : gens) {
    if (p.size() != k) fail(ErrorCode::InvalidInput, "permutations act on different sets");
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < k; ++i)
      if (sorted[i] != static_cast<int>(i)) fail(ErrorCode::InvalidInput, "generator is not a permutation");
  }
  std::vector<int> id(k);
  std::iota(id.begin(), id.end(), 0);
  std::map<std::vector<int>, int> index{{id, 0}};
  std::vector<std::vector<int>> elems{id};
  auto compose = [k](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = a[b[i]];
    return c;
  };
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& s : gens) {
      auto c = compose(elems[i], s);
      if (!index.count(c)) {
        if (static_cast<int>(elems.size()) >= kMaxOrder)
          fail(ErrorCode::InvalidInput, "group order exceeds " + std::to_string(kMaxOrder));
        index[c] = static_cast<int>(elems.size());
        elems.push_back(c);
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
  auto g = from_table(table, std::move(name));
  std::vector<int> gi;
  for (const auto& s : gens) {
    int i = index.at(s);
    if (i != 0 && std::find(gi.begin(), gi.end(), i) == gi.end()) gi.push_back(i);
  }
  auto mg = std::const_pointer_cast<FiniteGroup>(g);
  mg->generators_ = gi;
  return g;
}

GroupPtr FiniteGroup::cyclic(int n) {
  if (n < 1) fail(ErrorCode::InvalidInput, "cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  auto g = from_table(t, "C" + std::to_string(n));
  if (n > 1) std::const_pointer_cast<FiniteGroup>(g)->generators_ = {1};
  return g;
}

GroupPtr FiniteGroup::direct_product(const GroupPtr& a, const GroupPtr& b) {
  const int na = a->order(), nb = b->order();
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y) t[x][y] = a->mul(x / nb, y / nb) * nb + b->mul(x % nb, y % nb);
  auto g = from_table(t, a->name() + "x" + b->name());
  std::vector<int> gens;
  for (int s : a->generators()) gens.push_back(s * nb);
  for (int s : b->generators()) gens.push_back(s);
  std::const_pointer_cast<FiniteGroup>(g)->generators_ = gens;
  return g;
}

std::vector<std::string> FiniteGroup::builtin_names() { return {"C2", "C3", "C4", "C6", "V4", "E9", "S3", "D4", "Q8"}; }

GroupPtr FiniteGroup::builtin(std::string_view name) {
  if (name == "C2") return cyclic(2);
  if (name == "C3") return cyclic(3);
  if (name == "C4") return cyclic(4);
  if (name == "C6") return cyclic(6);
  if (name == "V4") {
    auto g = direct_product(cyclic(2), cyclic(2));
    std::const_pointer_cast<FiniteGroup>(g)->name_ = "V4";
    return g;
  }
  if (name == "E9") {
    auto g = direct_product(cyclic(3), cyclic(3));
    std::const_pointer_cast<FiniteGroup>(g)->name_ = "E9";
    return g;
  }
  if (name == "S3") return from_permutations({{1, 0, 2}, {1, 2, 0}}, "S3");
  if (name == "D4") return from_permutations({{1, 2, 3, 0}, {0, 3, 2, 1}}, "D4");
  if (name == "Q8") {
    // Index 2u + s encodes (-1)^s * unit u with units 1, i, j, k.
    static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        int ua = a / 2, ub = b / 2;
        int s = (a % 2 + b % 2 + sign_mul[ua][ub]) % 2;
        t[a][b] = unit_mul[ua][ub] * 2 + s;
      }
    return from_table(t, "Q8");
  }
  fail(ErrorCode::InvalidInput, "unknown builtin group '" + std::string(name) + "'");
}

GroupPtr FiniteGroup::from_json(const nlohmann::json& j) {
  std::string name = j.value("name", std::string());
  if (j.contains("table")) {
    auto t = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(t.size()))
      fail(ErrorCode::InvalidInput, "declared order differs from table size");
    return from_table(t, name);
  }
  if (j.contains("permutation_generators"))
    return from_permutations(j.at("permutation_generators").get<std::vector<std::vector<int>>>(), name);
  fail(ErrorCode::InvalidInput, "group JSON needs \"table\" or \"permutation_generators\"");
}

nlohmann::json FiniteGroup::to_json() const {
  return nlohmann::json{{"name", name_}, {"order", n_}, {"table", table()}};
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
  return t;
}

int FiniteGroup::power(int a, int e) const {
  e %= orders_[a];
  if (e < 0) e += orders_[a];
  int x = 0;
  for (int i = 0; i < e; ++i) x = mul(x, a);
  return x;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::is_cyclic() const {
  return std::any_of(orders_.begin(), orders_.end(), [this](int o) { return o == n_; });
}

std::vector<int> FiniteGroup::prime_divisors() const {
  std::vector<int> ps;
  int n = n_;
  for (int d = 2; d <= n; ++d)
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  return ps;
}

std::optional<int> FiniteGroup::p_group_prime() const {
  auto ps = prime_divisors();
  if (ps.empty()) return 0;
  if (ps.size() == 1) return ps[0];
  return std::nullopt;
}

std::vector<int> FiniteGroup::cyclic_decomposition() const {
  if (!is_abelian()) fail(ErrorCode::InvalidInput, "cyclic decomposition needs an abelian group");
  // Backtracking: extend an internal direct product <g_1> x ... x <g_i> by an
  // element whose cyclic group meets it trivially, largest orders first.
  std::vector<int> best;
  std::function<bool(std::vector<int>&, std::vector<int>&)> rec = [&](std::vector<int>& chosen,
                                                                       std::vector<int>& span) -> bool {
    if (static_cast<int>(span.size()) == n_) {
      best = chosen;
      return true;
    }
    std::vector<int> cand;
    for (int a = 1; a < n_; ++a) cand.push_back(a);
    std::stable_sort(cand.begin(), cand.end(), [this](int x, int y) { return orders_[x] > orders_[y]; });
    int limit = chosen.empty() ? n_ : orders_[chosen.back()];
    for (int a : cand) {
      if (orders_[a] > limit) continue;
      // <a> must meet the span trivially and the product must have full size.
      bool meets = false;
      for (int k = 1, x = a; k < orders_[a]; ++k, x = mul(x, a))
        if (std::binary_search(span.begin(), span.end(), x)) {
          meets = true;
          break;
        }
      if (meets) continue;
      std::vector<int> ns = closure(*this, [&] {
        std::vector<int> s = chosen;
        s.push_back(a);
        return s;
      }());
      if (ns.size() != span.size() * static_cast<std::size_t>(orders_[a])) continue;
      chosen.push_back(a);
      if (rec(chosen, ns)) return true;
      chosen.pop_back();
      // Only maximal-order candidates matter at this depth; give up on
      // lower orders once one of the largest order has failed.
    }
    return false;
  };
  std::vector<int> chosen, span{0};
  if (n_ == 1) return {};
  rec(chosen, span);
  return best;
}

Subgroup Subgroup::make(GroupPtr parent, std::vector<int> subset) {
  const int n = parent->order();
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (subset.empty() || subset[0] != 0) fail(ErrorCode::InvalidSubgroup, "subset does not contain the identity");
  for (int x : subset)
    if (x < 0 || x >= n) fail(ErrorCode::InvalidSubgroup, "element out of range");
  for (int x : subset) {
    if (!std::binary_search(subset.begin(), subset.end(), parent->inv(x)))
      fail(ErrorCode::InvalidSubgroup, "subset not closed under inverses");
    for (int y : subset)
      if (!std::binary_search(subset.begin(), subset.end(), parent->mul(x, y)))
        fail(ErrorCode::InvalidSubgroup, "subset not closed under multiplication");
  }
  if (n % static_cast<int>(subset.size()) != 0) fail(ErrorCode::InvalidSubgroup, "subset order does not divide |G|");
  Subgroup h;
  h.parent_ = parent;
  h.elements_ = subset;
  h.sorted_ = subset;
  h.local_.assign(n, -1);
  for (std::size_t i = 0; i < subset.size(); ++i) h.local_[subset[i]] = static_cast<int>(i);
  if (static_cast<int>(subset.size()) == n) {
    h.group_ = parent;
  } else {
    const std::size_t m = subset.size();
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) t[a][b] = h.local_[parent->mul(subset[a], subset[b])];
    h.group_ = FiniteGroup::from_table(t, h.to_string());
  }
  return h;
}

Subgroup Subgroup::generated_by(GroupPtr parent, const std::vector<int>& gens) {
  auto elems = closure(*parent, gens);
  return make(std::move(parent), std::move(elems));
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<int> all(parent->order());
  std::iota(all.begin(), all.end(), 0);
  return make(std::move(parent), std::move(all));
}

Subgroup Subgroup::conjugate(int g) const {
  std::vector<int> c;
  for (int x : elements_) c.push_back(parent_->conj(g, x));
  return make(parent_, std::move(c));
}

std::string Subgroup::to_string() const {
  std::ostringstream os;
  os << parent_->name() << "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) os << (i ? "," : "") << elements_[i];
  os << "}";
  return os.str();
}

bool GroupHom::is_injective() const {
  std::set<int> image(map.begin(), map.end());
  return image.size() == map.size();
}

GroupHom GroupHom::inclusion(const Subgroup& h) { return GroupHom{h.group(), h.parent(), h.elements()}; }

bool is_elementary_abelian(const FiniteGroup& g, int* prime, int* rank) {
  if (g.order() == 1) return false;
  auto p = g.p_group_prime();
  if (!p || !g.is_abelian()) return false;
  for (int a = 1; a < g.order(); ++a)
    if (g.element_order(a) != *p) return false;
  if (prime) *prime = *p;
  if (rank) {
    int r = 0;
    for (int n = g.order(); n > 1; n /= *p) ++r;
    *rank = r;
  }
  return true;
}

std::vector<Subgroup> elementary_abelian_subgroups(const GroupPtr& g, std::optional<int> p, bool include_trivial) {
  std::vector<int> primes = p ? std::vector<int>{*p} : g->prime_divisors();
  std::vector<Subgroup> out;
  if (include_trivial) out.push_back(Subgroup::make(g, {0}));
  for (int q : primes) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> frontier;
    for (int a = 1; a < g->order(); ++a)
      if (g->element_order(a) == q) {
        auto e = closure(*g, {a});
        if (seen.insert(e).second) frontier.push_back(e);
      }
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const auto cur = frontier[i];
      for (int y = 1; y < g->order(); ++y) {
        if (g->element_order(y) != q || std::binary_search(cur.begin(), cur.end(), y)) continue;
        bool commutes = true;
        for (int x : cur)
          if (g->mul(x, y) != g->mul(y, x)) {
            commutes = false;
            break;
          }
        if (!commutes) continue;
        auto ext = cur;
        ext.push_back(y);
        auto e = closure(*g, ext);
        if (seen.insert(e).second) frontier.push_back(e);
      }
    }
    std::vector<std::vector<int>> all(seen.begin(), seen.end());
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    for (auto& e : all) out.push_back(Subgroup::make(g, e));
  }
  return out;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> list;
  auto add = [&](std::vector<int> e) {
    if (seen.insert(e).second) list.push_back(std::move(e));
  };
  for (int a = 0; a < g->order(); ++a) add(closure(*g, {a}));
  for (std::size_t i = 0; i < list.size(); ++i)
    for (int a = 0; a < g->order(); ++a) {
      if (std::binary_search(list[i].begin(), list[i].end(), a)) continue;
      auto ext = list[i];
      ext.push_back(a);
      add(closure(*g, ext));
    }
  std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Subgroup> out;
  for (auto& e : list) out.push_back(Subgroup::make(g, e));
  return out;
}

ElabOrbitCategory orbit_category(const GroupPtr& g) {
  ElabOrbitCategory cat;
  cat.objects = elementary_abelian_subgroups(g);
  for (const auto& e : cat.objects) {
    int p = 0;
    is_elementary_abelian(*e.group(), &p);
    cat.primes.push_back(p);
  }
  for (std::size_t s = 0; s < cat.objects.size(); ++s)
    for (std::size_t t = 0; t < cat.objects.size(); ++t) {
      const auto& src = cat.objects[s];
      const auto& tgt = cat.objects[t];
      if (cat.primes[s] != cat.primes[t] || tgt.order() % src.order() != 0) continue;
      std::set<std::vector<int>> maps;
      for (int x = 0; x < g->order(); ++x) {
        std::vector<int> m;
        bool ok = true;
        for (int e : src.elements()) {
          int c = g->conj(x, e);
          if (!tgt.contains(c)) {
            ok = false;
            break;
          }
          m.push_back(tgt.local(c));
        }
        if (!ok || !maps.insert(m).second) continue;
        cat.morphisms.push_back(OrbitMorphism{s, t, x, m});
      }
    }
  return cat;
}

}  // namespace modstrat
