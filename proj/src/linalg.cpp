#include "koszul/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "koszul/errors.hpp"

namespace koszul {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return result;
}

// Integer rows; a pivot row is never rescaled to a unit pivot, so
// elimination is fraction-free and each row is divided by its content.
struct IntArith {
  using V = mpz_class;

  static bool is_zero(const V& v) { return v == 0; }

  // r <- a*r - b*p with (a, b) reduced by their gcd.
  void prepare(const V& pivot, const V& entry, V& a, V& b) const {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), pivot.get_mpz_t(), entry.get_mpz_t());
    a = pivot / g;
    b = entry / g;
  }
  V combine(const V& rv, const V& pv, const V& a, const V& b) const {
    return a * rv - b * pv;
  }
  V scale_only(const V& rv, const V& a) const { return a * rv; }
  V neg_times(const V& pv, const V& b) const { return -b * pv; }

  void normalize(std::vector<V>& vals) const {
    if (vals.empty()) return;
    mpz_class g = 0;
    for (const auto& v : vals) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) return;
    }
    for (auto& v : vals) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
  void make_pivot_unit(std::vector<V>&, std::size_t) const {}

  Scalar to_scalar(const V& v) const { return Scalar(v); }
};

struct ModArith {
  using V = std::uint64_t;
  std::uint64_t p;

  static bool is_zero(V v) { return v == 0; }

  // Pivot rows carry a unit pivot, so r <- r - b*p.
  void prepare(V, V entry, V& a, V& b) const {
    a = 1;
    b = entry;
  }
  V combine(V rv, V pv, V, V b) const {
    V t = mul_mod(b, pv, p);
    return rv >= t ? rv - t : rv + (p - t);
  }
  V scale_only(V rv, V) const { return rv; }
  V neg_times(V pv, V b) const {
    V t = mul_mod(b, pv, p);
    return t == 0 ? 0 : p - t;
  }
  void normalize(std::vector<V>&) const {}
  void make_pivot_unit(std::vector<V>& vals, std::size_t k) const {
    V inv = inv_mod(vals[k], p);
    for (auto& v : vals) v = mul_mod(v, inv, p);
  }

  Scalar to_scalar(V v) const { return Scalar(static_cast<unsigned long>(v)); }
};

template <class Arith>
struct Row {
  std::vector<std::uint32_t> idx;
  std::vector<typename Arith::V> val;

  const typename Arith::V* find(std::uint32_t c) const {
    auto it = std::lower_bound(idx.begin(), idx.end(), c);
    if (it == idx.end() || *it != c) return nullptr;
    return &val[static_cast<std::size_t>(it - idx.begin())];
  }
};

template <class Arith>
struct Elimination {
  std::vector<std::uint32_t> pivot_cols;  // in pivot order
  std::vector<std::uint32_t> pivot_rows;
  std::vector<Row<Arith>> rows;
};

// Gauss(-Jordan) elimination with Markowitz-style pivot choice: the sparsest
// active row, then its entry in the column with the fewest occurrences.
// With `jordan`, pivot columns are also cleared from earlier pivot rows.
template <class Arith>
Elimination<Arith> eliminate(std::vector<Row<Arith>> rows, std::size_t ncols,
                             const Arith& ar, bool jordan) {
  using V = typename Arith::V;
  Elimination<Arith> out;
  const std::size_t nrows = rows.size();
  std::vector<std::vector<std::uint32_t>> col_rows(ncols);
  std::set<std::pair<std::size_t, std::uint32_t>> active;
  std::vector<char> is_pivot_row(nrows, 0);
  for (std::uint32_t r = 0; r < nrows; ++r) {
    ar.normalize(rows[r].val);
    if (rows[r].idx.empty()) continue;
    active.emplace(rows[r].idx.size(), r);
    for (auto c : rows[r].idx) col_rows[c].push_back(r);
  }

  Row<Arith> scratch;
  while (!active.empty()) {
    const std::uint32_t pr = active.begin()->second;
    active.erase(active.begin());
    Row<Arith>& prow = rows[pr];
    std::size_t best = 0;
    for (std::size_t k = 1; k < prow.idx.size(); ++k) {
      if (col_rows[prow.idx[k]].size() < col_rows[prow.idx[best]].size()) best = k;
    }
    const std::uint32_t pc = prow.idx[best];
    ar.make_pivot_unit(prow.val, best);
    is_pivot_row[pr] = 1;
    out.pivot_cols.push_back(pc);
    out.pivot_rows.push_back(pr);
    const V pivot = prow.val[best];

    std::vector<std::uint32_t> targets;
    targets.swap(col_rows[pc]);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    std::vector<std::uint32_t> keep;
    for (auto r : targets) {
      if (r == pr) {
        keep.push_back(r);
        continue;
      }
      if (is_pivot_row[r] && !jordan) continue;
      Row<Arith>& row = rows[r];
      const V* entry = row.find(pc);
      if (!entry) continue;
      V a, b;
      ar.prepare(pivot, *entry, a, b);
      scratch.idx.clear();
      scratch.val.clear();
      std::size_t i = 0, j = 0;
      const auto& P = rows[pr];
      while (i < row.idx.size() || j < P.idx.size()) {
        std::uint32_t ci = i < row.idx.size() ? row.idx[i] : UINT32_MAX;
        std::uint32_t cj = j < P.idx.size() ? P.idx[j] : UINT32_MAX;
        if (ci < cj) {
          scratch.idx.push_back(ci);
          scratch.val.push_back(ar.scale_only(row.val[i], a));
          ++i;
        } else if (cj < ci) {
          V v = ar.neg_times(P.val[j], b);
          if (!Arith::is_zero(v)) {
            scratch.idx.push_back(cj);
            scratch.val.push_back(std::move(v));
            col_rows[cj].push_back(r);
          }
          ++j;
        } else {
          V v = ar.combine(row.val[i], P.val[j], a, b);
          if (!Arith::is_zero(v)) {
            scratch.idx.push_back(ci);
            scratch.val.push_back(std::move(v));
          }
          ++i;
          ++j;
        }
      }
      ar.normalize(scratch.val);
      if (!is_pivot_row[r]) active.erase({row.idx.size(), r});
      std::swap(row.idx, scratch.idx);
      std::swap(row.val, scratch.val);
      if (!is_pivot_row[r] && !row.idx.empty()) active.emplace(row.idx.size(), r);
    }
    col_rows[pc] = std::move(keep);
  }
  out.rows = std::move(rows);
  return out;
}

std::vector<Row<IntArith>> integer_rows(const SparseMatrix& m) {
  const SparseMatrix t = m.transpose();
  std::vector<Row<IntArith>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t k = t.col_begin(r); k < t.col_end(r); ++k) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.value(k).get_den_mpz_t());
    }
    auto& row = rows[r];
    for (std::size_t k = t.col_begin(r); k < t.col_end(r); ++k) {
      row.idx.push_back(t.row_index(k));
      mpz_class v = l / t.value(k).get_den();
      row.val.push_back(v * t.value(k).get_num());
    }
  }
  return rows;
}

std::vector<Row<ModArith>> residue_rows(const SparseMatrix& m, std::uint64_t p) {
  const SparseMatrix t = m.transpose();
  std::vector<Row<ModArith>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto& row = rows[r];
    for (std::size_t k = t.col_begin(r); k < t.col_end(r); ++k) {
      std::uint64_t v = residue(t.value(k), p);
      if (v == 0) continue;
      row.idx.push_back(t.row_index(k));
      row.val.push_back(v);
    }
  }
  return rows;
}

template <class Arith>
Subspace kernel_from(const Elimination<Arith>& e, std::size_t ncols,
                     const Arith& ar, const FieldSpec& field) {
  std::vector<int> pivot_of_col(ncols, -1);
  for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) {
    pivot_of_col[e.pivot_cols[k]] = static_cast<int>(k);
  }
  // For each free column, collect (pivot col, -b/a) contributions.
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> per_free(ncols);
  for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) {
    const auto& row = e.rows[e.pivot_rows[k]];
    const std::uint32_t pc = e.pivot_cols[k];
    const Scalar a = ar.to_scalar(*row.find(pc));
    for (std::size_t i = 0; i < row.idx.size(); ++i) {
      const std::uint32_t c = row.idx[i];
      if (c == pc) continue;
      Scalar x = -ar.to_scalar(row.val[i]) / a;
      if (field.is_prime()) x = reduce(x, field);
      per_free[c].emplace_back(pc, std::move(x));
    }
  }
  std::vector<SparseVector> cols;
  for (std::uint32_t f = 0; f < ncols; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    SparseVector v = std::move(per_free[f]);
    v.emplace_back(f, Scalar(1));
    std::sort(v.begin(), v.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    if (!field.is_prime()) {
      mpz_class l = 1;
      for (const auto& [i, x] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
      if (l != 1) {
        for (auto& [i, x] : v) x *= l;
      }
    }
    cols.push_back(std::move(v));
  }
  return Subspace{ncols, SparseMatrix::from_columns(ncols, cols)};
}

std::vector<std::uint32_t> pivot_columns(const SparseMatrix& m,
                                         const FieldSpec& field) {
  if (field.is_prime()) {
    ModArith ar{field.p};
    return eliminate(residue_rows(m, field.p), m.cols(), ar, false).pivot_cols;
  }
  IntArith ar;
  return eliminate(integer_rows(m), m.cols(), ar, false).pivot_cols;
}

}  // namespace

Subspace Subspace::full(std::size_t n) {
  return Subspace{n, SparseMatrix::identity(n)};
}

Subspace Subspace::zero(std::size_t n) { return Subspace{n, SparseMatrix(n, 0)}; }

std::size_t rank(const SparseMatrix& m, const FieldSpec& field) {
  if (m.is_zero()) return 0;
  // Fewer rows than columns keeps the row set of the elimination small.
  if (m.rows() > m.cols()) return pivot_columns(m.transpose(), field).size();
  return pivot_columns(m, field).size();
}

Subspace kernel_basis(const SparseMatrix& m, const FieldSpec& field) {
  if (field.is_prime()) {
    ModArith ar{field.p};
    auto e = eliminate(residue_rows(m, field.p), m.cols(), ar, true);
    return kernel_from(e, m.cols(), ar, field);
  }
  IntArith ar;
  auto e = eliminate(integer_rows(m), m.cols(), ar, true);
  return kernel_from(e, m.cols(), ar, field);
}

Subspace image_basis(const SparseMatrix& m, const FieldSpec& field) {
  std::vector<std::uint32_t> pc = pivot_columns(m, field);
  std::sort(pc.begin(), pc.end());
  std::vector<std::size_t> which(pc.begin(), pc.end());
  return Subspace{m.rows(), m.select_columns(which)};
}

Subspace intersect(std::span<const Subspace> subspaces, const FieldSpec& field) {
  if (subspaces.empty()) throw DimensionError("intersection of an empty family");
  Subspace acc = subspaces[0];
  for (std::size_t i = 1; i < subspaces.size(); ++i) {
    const Subspace& w = subspaces[i];
    if (w.ambient_dim != acc.ambient_dim) {
      throw DimensionError("intersecting subspaces of different ambient spaces");
    }
    if (acc.dim() == 0) break;
    if (w.dim() == 0) return Subspace::zero(acc.ambient_dim);
    if (w.dim() == w.ambient_dim) continue;
    const SparseMatrix stacked = SparseMatrix::hstack(acc.basis, w.basis.scaled(-1));
    const Subspace k = kernel_basis(stacked, field);
    // Keep the U-coordinates of each kernel vector.
    std::vector<SparseVector> xs;
    for (std::size_t c = 0; c < k.dim(); ++c) {
      SparseVector x;
      for (auto& [r, v] : k.basis.column(c)) {
        if (r < acc.dim()) x.emplace_back(r, v);
      }
      xs.push_back(std::move(x));
    }
    SparseMatrix coords = SparseMatrix::from_columns(acc.dim(), xs);
    SparseMatrix inter = acc.basis * coords;
    if (field.is_prime()) inter = inter.reduced(field);
    acc = Subspace{acc.ambient_dim, std::move(inter)};
  }
  return acc;
}

Subspace sum(const Subspace& u, const Subspace& w, const FieldSpec& field) {
  if (u.ambient_dim != w.ambient_dim) throw DimensionError("sum of subspaces of different ambient spaces");
  return image_basis(SparseMatrix::hstack(u.basis, w.basis), field);
}

bool contains(const Subspace& space, const SparseMatrix& vectors,
              const FieldSpec& field) {
  if (vectors.rows() != space.ambient_dim) throw DimensionError("containment test shape mismatch");
  if (vectors.is_zero()) return true;
  SpanSolver solver(space.ambient_dim, field);
  for (std::size_t c = 0; c < space.dim(); ++c) solver.insert(space.basis.column(c));
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    if (!solver.in_span(vectors.column(c))) return false;
  }
  return true;
}

std::size_t quotient_dim(const Subspace& ambient, const Subspace& sub,
                         const FieldSpec& field) {
  if (ambient.ambient_dim != sub.ambient_dim) throw DimensionError("quotient of subspaces of different ambient spaces");
  if (!contains(ambient, sub.basis, field)) {
    throw ContainmentError("subspace is not contained in the ambient subspace");
  }
  return ambient.dim() - sub.dim();
}

// ---------------------------------------------------------------------------

namespace {

struct QField {
  using V = Scalar;
  V from(const Scalar& x) const { return x; }
  Scalar to(const V& v) const { return v; }
  static bool is_zero(const V& v) { return v == 0; }
  V add(const V& a, const V& b) const { return a + b; }
  V mul(const V& a, const V& b) const { return a * b; }
  V neg(const V& a) const { return -a; }
  V inv(const V& a) const { return 1 / a; }
};

struct PField {
  using V = std::uint64_t;
  std::uint64_t p;
  V from(const Scalar& x) const { return residue(x, p); }
  Scalar to(V v) const { return Scalar(static_cast<unsigned long>(v)); }
  static bool is_zero(V v) { return v == 0; }
  V add(V a, V b) const {
    V s = a + b;
    return s >= p ? s - p : s;
  }
  V mul(V a, V b) const { return mul_mod(a, b, p); }
  V neg(V a) const { return a == 0 ? 0 : p - a; }
  V inv(V a) const { return inv_mod(a, p); }
};

}  // namespace

struct SpanSolver::Impl {
  virtual ~Impl() = default;
  virtual bool insert(const SparseVector& v) = 0;
  virtual std::size_t rank() const = 0;
  virtual SparseVector remainder(const SparseVector& v) const = 0;
  virtual std::optional<SparseVector> coordinates(const SparseVector& v) const = 0;
  virtual std::vector<std::uint32_t> pivots() const = 0;
  virtual std::vector<SparseVector> basis(bool reduced) const = 0;
};

namespace {

template <class F>
struct SolverImpl final : SpanSolver::Impl {
  using V = typename F::V;
  using Work = std::map<std::uint32_t, V>;

  struct Basis {
    std::vector<std::pair<std::uint32_t, V>> vec;  // unit at the pivot
    std::map<std::uint32_t, V> coord;              // in accepted-vector indices
  };

  F f;
  std::size_t ambient;
  bool highest;
  bool track;
  std::vector<Basis> basis_;
  std::vector<std::uint32_t> pivot_order;
  std::map<std::uint32_t, std::size_t> by_pivot;

  SolverImpl(F field, std::size_t n, bool hi, bool tr)
      : f(field), ambient(n), highest(hi), track(tr) {}

  Work load(const SparseVector& v) const {
    Work w;
    for (const auto& [i, x] : v) {
      if (i >= ambient) throw DimensionError("vector index out of range for span");
      V y = f.from(x);
      if (!F::is_zero(y)) w[i] = std::move(y);
    }
    return w;
  }

  // Clears every pivot position of w; returns the multiples of basis
  // vectors that were subtracted.
  std::vector<std::pair<std::size_t, V>> reduce(Work& w) const {
    std::vector<std::pair<std::size_t, V>> used;
    if (by_pivot.empty()) return used;
    auto step = [&](std::uint32_t piv) {
      auto it = w.find(piv);
      if (it == w.end()) return;
      const std::size_t bi = by_pivot.at(piv);
      V lambda = it->second;
      for (const auto& [i, x] : basis_[bi].vec) {
        V t = f.add(w[i], f.neg(f.mul(lambda, x)));
        if (F::is_zero(t)) w.erase(i);
        else w[i] = std::move(t);
      }
      used.emplace_back(bi, std::move(lambda));
    };
    if (!highest) {
      std::uint32_t cursor = 0;
      while (true) {
        auto it = w.lower_bound(cursor);
        if (it == w.end()) break;
        std::uint32_t i = it->first;
        if (by_pivot.count(i)) step(i);
        cursor = i + 1;
      }
    } else {
      std::int64_t cursor = static_cast<std::int64_t>(ambient) - 1;
      while (cursor >= 0 && !w.empty()) {
        auto it = w.upper_bound(static_cast<std::uint32_t>(cursor));
        if (it == w.begin()) break;
        --it;
        std::uint32_t i = it->first;
        if (by_pivot.count(i)) step(i);
        cursor = static_cast<std::int64_t>(i) - 1;
      }
    }
    return used;
  }

  bool insert(const SparseVector& v) override {
    Work w = load(v);
    auto used = reduce(w);
    if (w.empty()) return false;
    const std::uint32_t piv = highest ? w.rbegin()->first : w.begin()->first;
    const V inv = f.inv(w[piv]);
    Basis b;
    for (auto& [i, x] : w) b.vec.emplace_back(i, f.mul(x, inv));
    if (track) {
      const std::uint32_t self = static_cast<std::uint32_t>(basis_.size());
      std::map<std::uint32_t, V> c;
      c[self] = inv;
      for (const auto& [bi, lambda] : used) {
        for (const auto& [j, y] : basis_[bi].coord) {
          V t = f.add(c.count(j) ? c[j] : V(0), f.neg(f.mul(f.mul(lambda, y), inv)));
          if (F::is_zero(t)) c.erase(j);
          else c[j] = std::move(t);
        }
      }
      b.coord = std::move(c);
    }
    by_pivot[piv] = basis_.size();
    basis_.push_back(std::move(b));
    pivot_order.push_back(piv);
    return true;
  }

  std::size_t rank() const override { return basis_.size(); }

  SparseVector remainder(const SparseVector& v) const override {
    Work w = load(v);
    reduce(w);
    SparseVector out;
    for (auto& [i, x] : w) out.emplace_back(i, f.to(x));
    return out;
  }

  std::optional<SparseVector> coordinates(const SparseVector& v) const override {
    if (!track) throw PreconditionError("span solver built without coordinate tracking");
    Work w = load(v);
    auto used = reduce(w);
    if (!w.empty()) return std::nullopt;
    std::map<std::uint32_t, V> c;
    for (const auto& [bi, lambda] : used) {
      for (const auto& [j, y] : basis_[bi].coord) {
        V t = f.add(c.count(j) ? c[j] : V(0), f.mul(lambda, y));
        if (F::is_zero(t)) c.erase(j);
        else c[j] = std::move(t);
      }
    }
    SparseVector out;
    for (auto& [j, x] : c) out.emplace_back(j, f.to(x));
    return out;
  }

  std::vector<std::uint32_t> pivots() const override { return pivot_order; }

  std::vector<SparseVector> basis(bool reduced) const override {
    std::vector<SparseVector> out;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      Work w;
      for (const auto& [i, x] : basis_[k].vec) {
        if (!reduced || i != pivot_order[k]) w[i] = x;
      }
      if (reduced) {
        reduce(w);
        w[pivot_order[k]] = f.from(Scalar(1));
      }
      SparseVector v;
      for (auto& [i, x] : w) v.emplace_back(i, f.to(x));
      out.push_back(std::move(v));
    }
    return out;
  }
};

}  // namespace

SpanSolver::SpanSolver(std::size_t ambient_dim, FieldSpec field, Pivot pivot,
                       bool track_coordinates)
    : ambient_dim_(ambient_dim) {
  const bool hi = pivot == Pivot::highest;
  if (field.is_prime()) {
    impl_ = std::make_unique<SolverImpl<PField>>(PField{field.p}, ambient_dim, hi,
                                                 track_coordinates);
  } else {
    impl_ = std::make_unique<SolverImpl<QField>>(QField{}, ambient_dim, hi,
                                                 track_coordinates);
  }
}

SpanSolver::~SpanSolver() = default;
SpanSolver::SpanSolver(SpanSolver&&) noexcept = default;
SpanSolver& SpanSolver::operator=(SpanSolver&&) noexcept = default;

bool SpanSolver::insert(const SparseVector& v) { return impl_->insert(v); }
std::size_t SpanSolver::rank() const { return impl_->rank(); }
bool SpanSolver::in_span(const SparseVector& v) const {
  return impl_->remainder(v).empty();
}
SparseVector SpanSolver::remainder(const SparseVector& v) const {
  return impl_->remainder(v);
}
std::optional<SparseVector> SpanSolver::coordinates(const SparseVector& v) const {
  return impl_->coordinates(v);
}
std::vector<std::uint32_t> SpanSolver::pivots() const { return impl_->pivots(); }
std::vector<SparseVector> SpanSolver::basis(bool reduced) const {
  return impl_->basis(reduced);
}

}  // namespace koszul
