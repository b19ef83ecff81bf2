#include "modstrat/homalg/resolution.hpp"

#include <algorithm>
#include <functional>

#include "modstrat/common/error.hpp"

namespace modstrat {

std::string to_string(ResolutionStrategy s) {
  switch (s) {
    case ResolutionStrategy::Auto: return "auto";
    case ResolutionStrategy::Bar: return "bar";
    case ResolutionStrategy::Periodic: return "periodic";
    case ResolutionStrategy::TensorProduct: return "tensor_product";
    case ResolutionStrategy::Minimal: return "minimal";
    case ResolutionStrategy::KernelCover: return "kernel_cover";
  }
  return "?";
}

ResolutionStrategy parse_strategy(std::string_view s) {
  for (auto k : {ResolutionStrategy::Auto, ResolutionStrategy::Bar, ResolutionStrategy::Periodic,
                 ResolutionStrategy::TensorProduct, ResolutionStrategy::Minimal, ResolutionStrategy::KernelCover})
    if (to_string(k) == s) return k;
  fail(ErrorCode::InvalidInput, "unknown resolution strategy '" + std::string(s) + "'");
}

namespace {

using Column = std::vector<Scalar>;

// Span over a field, kept in echelon form.
class FieldSpan {
 public:
  FieldSpan(CoeffRing ring, std::size_t dim) : ring_(ring), dim_(dim) {}

  bool contains(Column v) const { return reduce(v); }

  // Returns false when v was already in the span.
  bool insert(Column v) {
    if (reduce(v)) return false;
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    Scalar inv = ring_.inverse(v[lead]);
    for (auto& x : v) x = ring_.mul(x, inv);
    for (auto& [l, row] : rows_)
      if (row[lead] != 0) {
        Scalar c = row[lead];
        for (std::size_t k = 0; k < dim_; ++k)
          if (v[k] != 0) row[k] = ring_.sub(row[k], ring_.mul(c, v[k]));
      }
    rows_.emplace_back(lead, std::move(v));
    return true;
  }

  std::size_t dim() const { return rows_.size(); }

 private:
  // Reduces v against the basis; true when it becomes zero.
  bool reduce(Column& v) const {
    for (const auto& [lead, row] : rows_)
      if (v[lead] != 0) {
        Scalar c = v[lead];
        for (std::size_t k = 0; k < dim_; ++k)
          if (row[k] != 0) v[k] = ring_.sub(v[k], ring_.mul(c, row[k]));
      }
    return vec_is_zero(v);
  }

  CoeffRing ring_;
  std::size_t dim_;
  std::vector<std::pair<std::size_t, Column>> rows_;
};

// Span over a PID; membership by re-factoring the generator matrix.
class PidSpan {
 public:
  PidSpan(CoeffRing ring, std::size_t dim) : ring_(ring), dim_(dim) {}

  bool contains(const Column& v) const {
    if (cols_.empty()) return vec_is_zero(v);
    if (!solver_) solver_.emplace(matrix());
    return solver_->in_image(v);
  }
  void add(Column v) {
    cols_.push_back(std::move(v));
    solver_.reset();
  }

 private:
  Matrix matrix() const {
    Matrix m(ring_, dim_, cols_.size());
    for (std::size_t j = 0; j < cols_.size(); ++j)
      for (std::size_t i = 0; i < dim_; ++i)
        if (cols_[j][i] != 0) m.set(i, j, cols_[j][i]);
    return m;
  }

  CoeffRing ring_;
  std::size_t dim_;
  std::vector<Column> cols_;
  mutable std::optional<LinearSolver> solver_;
};

Matrix augmentation_row(const CoeffRing& ring, int n) {
  Matrix e(ring, 1, n);
  for (int g = 0; g < n; ++g) e.set(0, g, Scalar(1));
  return e;
}

std::vector<GroupRingMatrix> periodic(const GroupPtr& G, const CoeffRing& ring, int cap) {
  const int n = G->order();
  int gen = 0;
  for (int x = 0; x < n; ++x)
    if (G->element_order(x) == n) {
      gen = x;
      break;
    }
  std::vector<GroupRingMatrix> d;
  for (int k = 1; k <= cap; ++k) {
    GroupRingMatrix m(G, ring, 1, 1);
    if (k % 2 == 1) {
      m.add(0, 0, gen, Scalar(1));
      m.add(0, 0, 0, Scalar(-1));
    } else {
      for (int x = 0; x < n; ++x) m.add(0, 0, x, Scalar(1));
    }
    d.push_back(std::move(m));
  }
  return d;
}

// Compositions of n into k parts, in lexicographic order.
std::vector<std::vector<int>> compositions(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[i] = a;
      rec(i + 1, left - a);
    }
  };
  if (k == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  rec(0, n);
  return out;
}

std::vector<GroupRingMatrix> tensor_product(const GroupPtr& G, const CoeffRing& ring, int cap) {
  std::vector<int> gens = G->cyclic_decomposition();
  const int k = static_cast<int>(gens.size());
  std::vector<GroupRingMatrix> d;
  std::vector<std::vector<int>> prev = compositions(0, k);
  for (int deg = 1; deg <= cap; ++deg) {
    auto cur = compositions(deg, k);
    GroupRingMatrix m(G, ring, prev.size(), cur.size());
    for (std::size_t j = 0; j < cur.size(); ++j) {
      int sign_exp = 0;
      for (int i = 0; i < k; ++i) {
        const int a = cur[j][i];
        if (a >= 1) {
          auto face = cur[j];
          --face[i];
          std::size_t row = std::find(prev.begin(), prev.end(), face) - prev.begin();
          Scalar sign = sign_exp % 2 ? -1 : 1;
          if (a % 2 == 1) {
            m.add(row, j, gens[i], sign);
            m.add(row, j, 0, -sign);
          } else {
            int x = 0;
            for (int t = 0; t < G->element_order(gens[i]); ++t, x = G->mul(gens[i], x)) m.add(row, j, x, sign);
          }
        }
        sign_exp += a;
      }
    }
    d.push_back(std::move(m));
    prev = std::move(cur);
  }
  return d;
}

std::vector<GroupRingMatrix> bar(const GroupPtr& G, const CoeffRing& ring, int cap) {
  const int n = G->order();
  const std::size_t b = n - 1;  // nonidentity elements 1..n-1
  auto index_of = [&](const std::vector<int>& t) {
    std::size_t idx = 0;
    for (int x : t) idx = idx * b + (x - 1);
    return idx;
  };
  std::vector<GroupRingMatrix> d;
  std::size_t prev_rank = 1;
  for (int deg = 1; deg <= cap; ++deg) {
    std::size_t rank = prev_rank * b;
    GroupRingMatrix m(G, ring, prev_rank, rank);
    std::vector<int> t(deg, 1);
    for (std::size_t j = 0; j < rank; ++j) {
      // decode j into the tuple
      std::size_t r = j;
      for (int i = deg - 1; i >= 0; --i) {
        t[i] = static_cast<int>(r % b) + 1;
        r /= b;
      }
      m.add(index_of(std::vector<int>(t.begin() + 1, t.end())), j, t[0], Scalar(1));
      for (int i = 0; i + 1 < deg; ++i) {
        int prod = G->mul(t[i], t[i + 1]);
        if (prod == 0) continue;
        std::vector<int> face;
        for (int k = 0; k < deg; ++k) {
          if (k == i) {
            face.push_back(prod);
            ++k;
          } else {
            face.push_back(t[k]);
          }
        }
        m.add(index_of(face), j, 0, Scalar(i % 2 == 0 ? -1 : 1));
      }
      m.add(index_of(std::vector<int>(t.begin(), t.end() - 1)), j, 0, Scalar(deg % 2 ? -1 : 1));
    }
    d.push_back(std::move(m));
    prev_rank = rank;
  }
  return d;
}

// Covers the kernel of each stage by free modules. With `minimal` (p-groups
// over F_p) only generators independent modulo the radical are used.
std::vector<GroupRingMatrix> kernel_cover(const GroupPtr& G, const CoeffRing& ring, int cap, bool minimal) {
  const int n = G->order();
  std::vector<GroupRingMatrix> d;
  Matrix current = augmentation_row(ring, n);
  for (int deg = 1; deg <= cap; ++deg) {
    const std::size_t dim = current.cols();
    Matrix K = LinearSolver(current).kernel();
    std::vector<Column> chosen;
    if (ring.is_field()) {
      FieldSpan span(ring, dim);
      if (minimal)
        for (std::size_t c = 0; c < K.cols(); ++c) {
          Column k = K.column_vector(c);
          for (int s : G->generators()) span.insert(vec_sub(ring, translate(*G, s, k), k));
        }
      for (std::size_t c = 0; c < K.cols() && span.dim() < K.cols(); ++c) {
        Column k = K.column_vector(c);
        if (span.contains(k)) continue;
        chosen.push_back(k);
        if (minimal)
          span.insert(k);
        else
          for (int g = 0; g < n; ++g) span.insert(translate(*G, g, k));
      }
    } else {
      PidSpan span(ring, dim);
      for (std::size_t c = 0; c < K.cols(); ++c) {
        Column k = K.column_vector(c);
        if (span.contains(k)) continue;
        chosen.push_back(k);
        for (int g = 0; g < n; ++g) span.add(translate(*G, g, k));
      }
    }
    GroupRingMatrix m(G, ring, dim / n, chosen.size());
    for (std::size_t j = 0; j < chosen.size(); ++j) m.set_column(j, chosen[j]);
    current = m.unroll();
    d.push_back(std::move(m));
  }
  return d;
}

}  // namespace

ResolutionPtr Resolution::build(GroupPtr group, CoeffRing ring, int cap, ResolutionStrategy strategy) {
  if (cap < 1) fail(ErrorCode::InvalidInput, "resolution cap must be at least 1");
  const auto p = group->p_group_prime();
  const bool field = ring.is_field() && ring.kind() != CoeffRing::Kind::Rationals;
  if (strategy == ResolutionStrategy::Auto) {
    if (group->is_cyclic())
      strategy = ResolutionStrategy::Periodic;
    else if (group->is_abelian())
      strategy = ResolutionStrategy::TensorProduct;
    else if (field && p && *p == ring.characteristic())
      strategy = ResolutionStrategy::Minimal;
    else
      strategy = ResolutionStrategy::KernelCover;
  }
  switch (strategy) {
    case ResolutionStrategy::Periodic:
      if (!group->is_cyclic()) fail(ErrorCode::StrategyUnavailable, "periodic resolution needs a cyclic group");
      break;
    case ResolutionStrategy::TensorProduct:
      if (!group->is_abelian())
        fail(ErrorCode::StrategyUnavailable, "tensor product resolution needs a product of cyclic groups");
      break;
    case ResolutionStrategy::Minimal:
      if (!field || !p || *p != ring.characteristic())
        fail(ErrorCode::StrategyUnavailable, "minimal resolution needs a p-group over a field of characteristic p");
      break;
    default: break;
  }
  // Composite Z/m and F_q: build over Z or F_p and reduce; free resolutions
  // of R over Z stay exact after base change since they are Z-split.
  CoeffRing work = ring;
  if (ring.kind() == CoeffRing::Kind::IntegersMod && !ring.is_field()) work = CoeffRing::integers();
  if (ring.kind() == CoeffRing::Kind::FiniteField) work = CoeffRing::prime_field(ring.prime());

  std::vector<GroupRingMatrix> d;
  switch (strategy) {
    case ResolutionStrategy::Periodic: d = periodic(group, work, cap); break;
    case ResolutionStrategy::TensorProduct: d = tensor_product(group, work, cap); break;
    case ResolutionStrategy::Bar: d = bar(group, work, cap); break;
    case ResolutionStrategy::Minimal: d = kernel_cover(group, work, cap, true); break;
    default: d = kernel_cover(group, work, cap, false); break;
  }
  if (work == ring) return std::make_shared<Resolution>(group, ring, cap, strategy, std::move(d));
  Resolution base(group, work, cap, strategy, d);
  for (auto& m : d) m = m.over(ring);
  return std::make_shared<Resolution>(group, ring, cap, strategy, std::move(d), false);
}

Resolution::Resolution(GroupPtr group, CoeffRing ring, int cap, ResolutionStrategy flavor,
                       std::vector<GroupRingMatrix> d, bool check)
    : group_(std::move(group)), ring_(ring), cap_(cap), flavor_(flavor), d_(std::move(d)) {
  if (static_cast<int>(d_.size()) != cap_) fail(ErrorCode::DimensionMismatch, "need one differential per degree");
  ranks_.push_back(1);
  for (const auto& m : d_) {
    if (m.rows() != ranks_.back()) fail(ErrorCode::DimensionMismatch, "differentials are not composable");
    ranks_.push_back(m.cols());
    unrolled_.push_back(m.unroll());
  }
  solvers_.resize(cap_ + 1);
  if (check) validate();
}

const GroupRingMatrix& Resolution::d(int n) const {
  if (n < 1 || n > cap_) fail(ErrorCode::CapExceeded, "differential d_" + std::to_string(n) + " beyond cap");
  return d_[n - 1];
}

const Matrix& Resolution::unrolled(int n) const {
  if (n < 1 || n > cap_) fail(ErrorCode::CapExceeded, "differential d_" + std::to_string(n) + " beyond cap");
  return unrolled_[n - 1];
}

const LinearSolver& Resolution::solver(int n) const {
  const Matrix& m = unrolled(n);
  std::lock_guard lock(solver_mutex_);
  if (!solvers_[n]) solvers_[n] = std::make_unique<LinearSolver>(m);
  return *solvers_[n];
}

void Resolution::validate() const {
  const std::size_t n = group_->order();
  for (std::size_t j = 0; j < d_[0].cols(); ++j)
    if (augmentation(ring_, d_[0].at(0, j)) != 0)
      fail(ErrorCode::ResolutionMismatch, "augmentation o d_1 is nonzero");
  for (int k = 2; k <= cap_; ++k)
    if (!(unrolled_[k - 2] * unrolled_[k - 1]).is_zero())
      fail(ErrorCode::ResolutionMismatch, "d o d is nonzero in degree " + std::to_string(k));
  // over Z/m the lifted solver also reports divisors that vanish mod m
  auto rank = [&](const LinearSolver& s) {
    return static_cast<std::size_t>(std::count_if(s.divisors().begin(), s.divisors().end(),
                                                  [&](const Scalar& x) { return ring_.reduce(x) != 0; }));
  };
  auto units = [&](const LinearSolver& s) {
    return std::all_of(s.divisors().begin(), s.divisors().end(),
                       [&](const Scalar& x) { return ring_.reduce(x) == 0 || ring_.is_unit(x); });
  };
  // exact at P_0: im d_1 = augmentation ideal
  if (rank(solver(1)) != n - 1 || !units(solver(1)))
    fail(ErrorCode::ResolutionMismatch, "not exact at P_0");
  for (int k = 1; k < cap_; ++k)
    if (rank(solver(k)) + rank(solver(k + 1)) != ranks_[k] * n || !units(solver(k + 1)))
      fail(ErrorCode::ResolutionMismatch, "not exact at P_" + std::to_string(k));
}

CompleteResolution::CompleteResolution(ResolutionPtr res) : res_(std::move(res)) {
  const auto& G = res_->group();
  norm_ = GroupRingMatrix(G, res_->ring(), 1, 1);
  for (int g = 0; g < G->order(); ++g) norm_.add(0, 0, g, Scalar(1));
  for (int k = 1; k <= res_->cap(); ++k) duals_.push_back(res_->d(k).antipode_transpose());
}

std::size_t CompleteResolution::rank(int k) const {
  if (k < min_degree() || k > max_degree()) fail(ErrorCode::RangeExceeded, "degree outside the complete resolution");
  return k >= 0 ? res_->rank(k) : res_->rank(-k - 1);
}

const GroupRingMatrix& CompleteResolution::d(int k) const {
  if (k <= min_degree() || k > max_degree())
    fail(ErrorCode::RangeExceeded, "differential outside the complete resolution");
  if (k >= 1) return res_->d(k);
  if (k == 0) return norm_;
  return duals_[-k - 1];
}

}  // namespace modstrat

namespace modstrat {

ResolutionPtr base_change(const ResolutionPtr& res, const CoeffRing& ring) {
  if (res->ring() == ring) return res;
  std::vector<GroupRingMatrix> d;
  for (int k = 1; k <= res->cap(); ++k) d.push_back(res->d(k).over(ring));
  return std::make_shared<Resolution>(res->group(), ring, res->cap(), res->flavor(), std::move(d));
}

}  // namespace modstrat
