#pragma once

// Sparse elimination core shared by the Smith normal form, the linear solver
// and the subquotient computations. Rows carry "passive" columns (indices >=
// main_cols) that receive the same row operations but never host pivots; the
// column transform is tracked separately as the rows of V^T.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "modstrat/common/error.hpp"
#include "modstrat/exactalg/coeff_ring.hpp"

namespace modstrat::detail {

struct OverflowSignal {};

/// Machine integers with overflow detection; the engine is rerun over
/// cpp_int when a signal is raised.
struct CheckedZ {
  using T = std::int64_t;
  static bool is_zero(T a) { return a == 0; }
  static T add(T a, T b) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowSignal{};
    return r;
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowSignal{};
    return r;
  }
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowSignal{};
    return r;
  }
  static T neg(T a) {
    if (a == INT64_MIN) throw OverflowSignal{};
    return -a;
  }
  static T abs(T a) { return a < 0 ? neg(a) : a; }
  static bool divides(T a, T b, T& q) {
    if (a == -1) {
      q = neg(b);
      return true;
    }
    if (b % a != 0) return false;
    q = b / a;
    return true;
  }
  static bool smaller(T a, T b) { return abs(a) < abs(b); }
  static T gcdext(T a, T b, T& s, T& t) {
    T s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
      T q = a / b;
      T r = a - q * b;
      a = b;
      b = r;
      T ns = sub(s0, mul(q, s1));
      s0 = s1;
      s1 = ns;
      T nt = sub(t0, mul(q, t1));
      t0 = t1;
      t1 = nt;
    }
    if (a < 0) {
      a = neg(a);
      s0 = neg(s0);
      t0 = neg(t0);
    }
    s = s0;
    t = t0;
    return a;
  }
  // Unit u with u*a canonical (positive).
  static T normalizer(T a) { return a < 0 ? -1 : 1; }
  static Integer to_integer(T a) { return Integer(a); }
  static T from_integer(const Integer& a) {
    if (a > Integer(INT64_MAX) || a < Integer(-INT64_MAX)) throw OverflowSignal{};
    return static_cast<T>(a);
  }
};

struct BigZ {
  using T = Integer;
  static bool is_zero(const T& a) { return a.is_zero(); }
  static T add(const T& a, const T& b) { return a + b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T mul(const T& a, const T& b) { return a * b; }
  static T neg(const T& a) { return -a; }
  static T abs(const T& a) { return boost::multiprecision::abs(a); }
  static bool divides(const T& a, const T& b, T& q) {
    T r;
    boost::multiprecision::divide_qr(b, a, q, r);
    return r.is_zero();
  }
  static bool smaller(const T& a, const T& b) { return abs(a) < abs(b); }
  static T gcdext(T a, T b, T& s, T& t) {
    T s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (!b.is_zero()) {
      T q = a / b;
      T r = a - q * b;
      a = b;
      b = r;
      T ns = s0 - q * s1;
      s0 = s1;
      s1 = ns;
      T nt = t0 - q * t1;
      t0 = t1;
      t1 = nt;
    }
    if (a < 0) {
      a = -a;
      s0 = -s0;
      t0 = -t0;
    }
    s = s0;
    t = t0;
    return a;
  }
  static T normalizer(const T& a) { return a < 0 ? T(-1) : T(1); }
  static Integer to_integer(const T& a) { return a; }
  static T from_integer(const Integer& a) { return a; }
};

/// Prime field with residues in [0, p).
struct PrimeFieldOps {
  using T = std::uint64_t;
  std::uint64_t p;
  bool is_zero(T a) const { return a == 0; }
  T add(T a, T b) const { return (a + b) % p; }
  T sub(T a, T b) const { return (a + p - b) % p; }
  T mul(T a, T b) const { return static_cast<T>((static_cast<unsigned __int128>(a) * b) % p); }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T inv(T a) const {
    T result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  bool divides(T a, T b, T& q) const {
    q = mul(b, inv(a));
    return true;
  }
  bool smaller(T, T) const { return false; }
  T gcdext(T a, T, T& s, T& t) const {
    s = inv(a);
    t = 0;
    return 1;
  }
  T normalizer(T a) const { return inv(a); }
  Integer to_integer(T a) const { return Integer(a); }
  T from_integer(const Integer& a) const { return static_cast<T>(mod_floor(a, Integer(p))); }
};

template <class Ops>
class SmithEngine {
 public:
  using T = typename Ops::T;
  using Row = std::vector<std::pair<std::uint32_t, T>>;

  SmithEngine(Ops ops, std::size_t main_cols, std::vector<Row> rows, bool track_v)
      : ops_(ops), main_cols_(main_cols), rows_(std::move(rows)), track_v_(track_v) {
    if (track_v_) {
      vt_.resize(main_cols_);
      for (std::size_t j = 0; j < main_cols_; ++j) vt_[j].push_back({static_cast<std::uint32_t>(j), T(1)});
    }
  }

  /// Runs to Smith form: afterwards rows()[i] has main entry diag()[i] at
  /// column i for i < rank, no other main entries, and V^T rows in vt().
  void run() {
    for (int pass = 0;; ++pass) {
      if (pass > 10000) fail(ErrorCode::Overflow, "Smith elimination failed to converge");
      echelon(rows_, main_cols_);
      if (rows_are_monomial()) break;
      column_pass();
    }
    diagonalize();
  }

  const std::vector<Row>& rows() const { return rows_; }
  std::vector<Row>& rows() { return rows_; }
  const std::vector<Row>& vt() const { return vt_; }
  const std::vector<T>& diag() const { return diag_; }
  std::size_t rank() const { return diag_.size(); }

  // Row-only echelon pass; exposed for callers that need a row-reduced basis.
  void echelon_only() { echelon(rows_, main_cols_); }

 private:
  static bool lead_is_main(const Row& r, std::size_t main) { return !r.empty() && r.front().first < main; }

  std::size_t main_nnz(const Row& r) const {
    std::size_t n = 0;
    for (const auto& e : r) {
      if (e.first >= main_cols_) break;
      ++n;
    }
    return n;
  }

  // dst <- dst - q*src
  void axpy(Row& dst, const T& q, const Row& src) const {
    Row out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
      if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
        out.push_back(std::move(dst[i++]));
      } else if (i == dst.size() || src[j].first < dst[i].first) {
        T v = ops_.neg(ops_.mul(q, src[j].second));
        if (!ops_.is_zero(v)) out.push_back({src[j].first, std::move(v)});
        ++j;
      } else {
        T v = ops_.sub(dst[i].second, ops_.mul(q, src[j].second));
        if (!ops_.is_zero(v)) out.push_back({dst[i].first, std::move(v)});
        ++i;
        ++j;
      }
    }
    dst = std::move(out);
  }

  // (r1, r2) <- (a r1 + b r2, c r1 + d r2)
  void combine(Row& r1, Row& r2, const T& a, const T& b, const T& c, const T& d) const {
    Row o1, o2;
    std::size_t i = 0, j = 0;
    const T zero = T(0);
    while (i < r1.size() || j < r2.size()) {
      std::uint32_t col;
      const T* x = &zero;
      const T* y = &zero;
      if (j == r2.size() || (i < r1.size() && r1[i].first < r2[j].first)) {
        col = r1[i].first;
        x = &r1[i++].second;
      } else if (i == r1.size() || r2[j].first < r1[i].first) {
        col = r2[j].first;
        y = &r2[j++].second;
      } else {
        col = r1[i].first;
        x = &r1[i++].second;
        y = &r2[j++].second;
      }
      T v1 = ops_.add(ops_.mul(a, *x), ops_.mul(b, *y));
      T v2 = ops_.add(ops_.mul(c, *x), ops_.mul(d, *y));
      if (!ops_.is_zero(v1)) o1.push_back({col, std::move(v1)});
      if (!ops_.is_zero(v2)) o2.push_back({col, std::move(v2)});
    }
    r1 = std::move(o1);
    r2 = std::move(o2);
  }

  void scale(Row& r, const T& u) const {
    for (auto& e : r) e.second = ops_.mul(e.second, u);
  }

  // Bucketed sparse echelon: rows are grouped by leading main column and each
  // bucket is collapsed onto a single pivot row.
  void echelon(std::vector<Row>& rows, std::size_t main) const {
    std::vector<std::vector<std::size_t>> bucket(main);
    std::vector<std::size_t> zero_rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (lead_is_main(rows[i], main))
        bucket[rows[i].front().first].push_back(i);
      else
        zero_rows.push_back(i);
    }
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < main; ++c) {
      auto& b = bucket[c];
      if (b.empty()) continue;
      std::sort(b.begin(), b.end());
      auto better = [&](std::size_t x, std::size_t y) {
        const T& a = rows[x].front().second;
        const T& bb = rows[y].front().second;
        if (ops_.smaller(a, bb)) return true;
        if (ops_.smaller(bb, a)) return false;
        std::size_t nx = rows[x].size(), ny = rows[y].size();
        if (nx != ny) return nx < ny;
        return x < y;
      };
      std::size_t piv = b[0];
      for (std::size_t k = 1; k < b.size(); ++k)
        if (better(b[k], piv)) piv = b[k];
      for (std::size_t r : b) {
        if (r == piv) continue;
        T q;
        const T lead_p = rows[piv].front().second;
        const T lead_r = rows[r].front().second;
        if (ops_.divides(lead_p, lead_r, q)) {
          axpy(rows[r], q, rows[piv]);
        } else {
          T s, t;
          T g = ops_.gcdext(lead_p, lead_r, s, t);
          T qa{}, qb{};
          ops_.divides(g, lead_p, qa);
          ops_.divides(g, lead_r, qb);
          combine(rows[piv], rows[r], s, t, ops_.neg(qb), qa);
        }
        if (lead_is_main(rows[r], main))
          bucket[rows[r].front().first].push_back(r);
        else
          zero_rows.push_back(r);
      }
      pivots.push_back(piv);
      std::vector<std::size_t>().swap(b);
    }
    std::sort(zero_rows.begin(), zero_rows.end());
    std::vector<Row> out;
    out.reserve(rows.size());
    for (std::size_t i : pivots) out.push_back(std::move(rows[i]));
    for (std::size_t i : zero_rows) out.push_back(std::move(rows[i]));
    rows = std::move(out);
  }

  bool rows_are_monomial() const {
    for (const auto& r : rows_)
      if (main_nnz(r) > 1) return false;
    return true;
  }

  void column_pass() {
    // Split rows into main and passive parts, transpose the main block and
    // row-reduce it with V^T attached as passive columns.
    const std::size_t nr = rows_.size();
    std::vector<Row> passive(nr);
    std::vector<Row> cols(main_cols_);
    for (std::size_t i = 0; i < nr; ++i) {
      for (auto& e : rows_[i]) {
        if (e.first < main_cols_)
          cols[e.first].push_back({static_cast<std::uint32_t>(i), std::move(e.second)});
        else
          passive[i].push_back(std::move(e));
      }
    }
    if (track_v_)
      for (std::size_t j = 0; j < main_cols_; ++j)
        for (auto& e : vt_[j]) cols[j].push_back({static_cast<std::uint32_t>(nr + e.first), std::move(e.second)});
    echelon(cols, nr);
    std::vector<Row> main_rows(nr);
    if (track_v_)
      for (auto& r : vt_) r.clear();
    for (std::size_t j = 0; j < main_cols_; ++j) {
      for (auto& e : cols[j]) {
        if (e.first < nr)
          main_rows[e.first].push_back({static_cast<std::uint32_t>(j), std::move(e.second)});
        else
          vt_[j].push_back({static_cast<std::uint32_t>(e.first - nr), std::move(e.second)});
      }
    }
    for (std::size_t i = 0; i < nr; ++i) {
      auto& r = main_rows[i];
      r.insert(r.end(), std::make_move_iterator(passive[i].begin()), std::make_move_iterator(passive[i].end()));
      rows_[i] = std::move(r);
    }
  }

  void swap_v(std::size_t a, std::size_t b) {
    if (track_v_) std::swap(vt_[a], vt_[b]);
  }

  void diagonalize() {
    // Move the pivot of the k-th nonzero row to column k.
    std::vector<std::size_t> pivot_col;
    std::vector<std::size_t> nonzero;
    std::vector<std::size_t> zero;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (lead_is_main(rows_[i], main_cols_)) {
        nonzero.push_back(i);
        pivot_col.push_back(rows_[i].front().first);
      } else {
        zero.push_back(i);
      }
    }
    std::vector<Row> ordered;
    ordered.reserve(rows_.size());
    for (std::size_t i : nonzero) ordered.push_back(std::move(rows_[i]));
    for (std::size_t i : zero) ordered.push_back(std::move(rows_[i]));
    rows_ = std::move(ordered);
    // Column permutation sending pivot_col[k] -> k.
    std::vector<std::size_t> new_of_old(main_cols_, SIZE_MAX);
    std::size_t next = 0;
    for (std::size_t c : pivot_col) new_of_old[c] = next++;
    for (std::size_t c = 0; c < main_cols_; ++c)
      if (new_of_old[c] == SIZE_MAX) new_of_old[c] = next++;
    for (auto& r : rows_)
      for (auto& e : r)
        if (e.first < main_cols_) e.first = static_cast<std::uint32_t>(new_of_old[e.first]);
    if (track_v_) {
      std::vector<Row> nv(main_cols_);
      for (std::size_t c = 0; c < main_cols_; ++c) nv[new_of_old[c]] = std::move(vt_[c]);
      vt_ = std::move(nv);
    }
    const std::size_t r = nonzero.size();
    diag_.resize(r);
    for (std::size_t k = 0; k < r; ++k) diag_[k] = rows_[k].front().second;
    // Divisibility chain via the 2x2 gcd/lcm transform.
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        T q;
        if (ops_.divides(diag_[i], diag_[j], q)) continue;
        const T a = diag_[i], b = diag_[j];
        T s, t;
        T g = ops_.gcdext(a, b, s, t);
        T ag{}, bg{};
        ops_.divides(g, a, ag);
        ops_.divides(g, b, bg);
        // Rows: [s t; -b/g a/g]; columns: [1 -t b/g; 1 s a/g].
        combine(rows_[i], rows_[j], s, t, ops_.neg(bg), ag);
        if (track_v_) {
          // V <- V R, i.e. V^T <- R^T V^T with R^T = [1 1; -t b/g  s a/g].
          combine(vt_[i], vt_[j], T(1), T(1), ops_.neg(ops_.mul(t, bg)), ops_.mul(s, ag));
        }
        // Restore the main part of rows i, j to the diagonal values.
        T lcm = ops_.mul(ag, b);
        fix_main(rows_[i], i, g);
        fix_main(rows_[j], j, lcm);
        diag_[i] = g;
        diag_[j] = lcm;
      }
    }
    for (std::size_t k = 0; k < r; ++k) {
      T u = ops_.normalizer(diag_[k]);
      if (u != T(1)) {
        scale(rows_[k], u);
        diag_[k] = ops_.mul(diag_[k], u);
      }
    }
  }

  // After the paired row/column transform the main block of the two rows is
  // diag(g, lcm) mathematically; the row operation alone leaves the column
  // operation's effect unapplied, so rewrite the main entries explicitly.
  void fix_main(Row& row, std::size_t k, const T& value) const {
    Row out;
    out.push_back({static_cast<std::uint32_t>(k), value});
    for (auto& e : row)
      if (e.first >= main_cols_) out.push_back(std::move(e));
    row = std::move(out);
  }

  Ops ops_;
  std::size_t main_cols_;
  std::vector<Row> rows_;
  bool track_v_;
  std::vector<Row> vt_;
  std::vector<T> diag_;
};

}  // namespace modstrat::detail
