#include "koszul/homology.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <thread>

#include "koszul/errors.hpp"

namespace koszul {

std::vector<Parts> partitions(std::size_t n, std::size_t m) {
  std::vector<Parts> out;
  if (n == 0) {
    if (m == 0) out.push_back({});
    return out;
  }
  if (m < n) return out;
  Parts cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t rest) {
    if (left == 1) {
      cur.push_back(rest);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (std::size_t first = 1; first + (left - 1) <= rest; ++first) {
      cur.push_back(first);
      rec(left - 1, rest - first);
      cur.pop_back();
    }
  };
  rec(n, m);
  return out;
}

// ---------------------------------------------------------------------------

ComplexSlice::ComplexSlice(Base base, Direction direction, std::size_t weight, int low,
                           std::vector<Bimodule> spaces, std::vector<BimoduleMap> maps)
    : base_(std::move(base)),
      direction_(direction),
      weight_(weight),
      low_(low),
      spaces_(std::move(spaces)),
      maps_(std::move(maps)),
      zero_(Bimodule::zero(base_)) {
  if (spaces_.empty() ? !maps_.empty() : maps_.size() + 1 != spaces_.size()) {
    throw DimensionError("complex: need one differential between consecutive spaces");
  }
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    const Bimodule& from = direction_ == Direction::chain ? spaces_[k + 1] : spaces_[k];
    const Bimodule& to = direction_ == Direction::chain ? spaces_[k] : spaces_[k + 1];
    if (!(maps_[k].source() == from) || !(maps_[k].target() == to)) {
      throw DimensionError("complex: differential " + std::to_string(k) + " has the wrong shape");
    }
  }
  for (std::size_t k = 0; k + 1 < maps_.size(); ++k) {
    const BimoduleMap dd = direction_ == Direction::chain ? maps_[k] * maps_[k + 1]
                                                          : maps_[k + 1] * maps_[k];
    if (!dd.is_zero()) {
      throw InternalError("d∘d ≠ 0 in weight " + std::to_string(weight_) + " at degree " +
                          std::to_string(low_ + static_cast<int>(k) + 1));
    }
  }
}

const Bimodule& ComplexSlice::space(int n) const {
  if (n < low_ || n > high()) return zero_;
  return spaces_[n - low_];
}

BimoduleMap ComplexSlice::outgoing(int n) const {
  if (direction_ == Direction::chain) {
    if (n - 1 >= low_ && n <= high()) return maps_[n - 1 - low_];
    return BimoduleMap::zero(space(n), space(n - 1));
  }
  if (n >= low_ && n + 1 <= high()) return maps_[n - low_];
  return BimoduleMap::zero(space(n), space(n + 1));
}

BimoduleMap ComplexSlice::incoming(int n) const {
  if (direction_ == Direction::chain) {
    if (n >= low_ && n + 1 <= high()) return maps_[n - low_];
    return BimoduleMap::zero(space(n + 1), space(n));
  }
  if (n - 1 >= low_ && n <= high()) return maps_[n - 1 - low_];
  return BimoduleMap::zero(space(n - 1), space(n));
}

std::size_t ComplexSlice::homology_dim(int n) const {
  const std::size_t d = space(n).dim();
  if (d == 0) return 0;
  const std::size_t out = outgoing(n).rank(), in = incoming(n).rank();
  if (out + in > d) throw InternalError("complex: ranks exceed the dimension (d∘d ≠ 0)");
  return d - out - in;
}

std::vector<std::size_t> ComplexSlice::homology_dims() const {
  std::vector<std::size_t> out;
  for (int n = low_; n <= high(); ++n) out.push_back(homology_dim(n));
  return out;
}

long ComplexSlice::euler_characteristic() const {
  long e = 0;
  for (int n = low_; n <= high(); ++n) {
    e += (n % 2 == 0 ? 1 : -1) * static_cast<long>(space(n).dim());
  }
  return e;
}

long ComplexSlice::homology_euler_characteristic() const {
  long e = 0;
  for (int n = low_; n <= high(); ++n) {
    e += (n % 2 == 0 ? 1 : -1) * static_cast<long>(homology_dim(n));
  }
  return e;
}

HomologyClasses ComplexSlice::homology(int n) const {
  return homology_classes(kernel(outgoing(n)), image(incoming(n)));
}

// ---------------------------------------------------------------------------

namespace {

std::string tag_of(const Parts& parts) {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
  return s + "]";
}

// A^𝒎 or C_𝒎, memoized on the parts.
class Pieces {
 public:
  explicit Pieces(std::function<const Bimodule&(std::size_t)> component, Base base)
      : component_(std::move(component)), base_(std::move(base)) {}

  const Bimodule& get(const Parts& parts) {
    auto it = cache_.find(parts);
    if (it != cache_.end()) return it->second;
    Bimodule v = Bimodule::regular(base_);
    for (auto p : parts) {
      v = tensor(v, component_(p));
      if (v.dim() == 0) break;
    }
    return cache_.emplace(parts, v).first->second;
  }

 private:
  std::function<const Bimodule&(std::size_t)> component_;
  Base base_;
  std::map<Parts, Bimodule> cache_;
};

struct Level {
  std::vector<Summand> summands;
  DirectSum sum;
  std::map<Parts, std::size_t> where;
};

Level build_level(Pieces& pieces, const Base& base, std::size_t n, std::size_t m) {
  Level lv;
  std::vector<std::pair<std::string, Bimodule>> tagged;
  for (const auto& parts : partitions(n, m)) {
    const Bimodule& piece = pieces.get(parts);
    if (piece.dim() == 0) continue;
    lv.where[parts] = lv.summands.size();
    lv.summands.push_back({parts, piece});
    tagged.emplace_back(tag_of(parts), piece);
  }
  lv.sum = direct_sum(base, tagged);
  return lv;
}

// Adds sign·f (summand src of `from` → summand dst of `to`) to b.
void add_block(MapBuilder& b, const BimoduleMap& f, const Level& from, std::size_t src,
               const Level& to, std::size_t dst, int sign) {
  const auto& ein = from.sum.embed[src];
  const auto& eout = to.sum.embed[dst];
  for (const auto& e : f.matrix().entries()) {
    b.add(eout[e.row], ein[e.col], sign > 0 ? e.value : Scalar(-e.value));
  }
}

template <class Component>
std::vector<BimoduleMap> identities_around(const Parts& parts, std::size_t skip_from,
                                           std::size_t skip_len, Component component,
                                           const BimoduleMap& middle) {
  std::vector<BimoduleMap> fs;
  for (std::size_t j = 0; j < skip_from; ++j) fs.push_back(BimoduleMap::identity(component(parts[j])));
  fs.push_back(middle);
  for (std::size_t j = skip_from + skip_len; j < parts.size(); ++j)
    fs.push_back(BimoduleMap::identity(component(parts[j])));
  return fs;
}

ComplexSlice assemble_slice(const Base& base, Direction dir, std::size_t m,
                            std::vector<Level> levels, std::vector<BimoduleMap> maps) {
  std::vector<Bimodule> spaces;
  for (const auto& lv : levels) spaces.push_back(lv.sum.sum);
  ComplexSlice slice(base, dir, m, 0, std::move(spaces), std::move(maps));
  for (auto& lv : levels) {
    slice.summands.push_back(std::move(lv.summands));
    slice.embed.push_back(std::move(lv.sum.embed));
  }
  return slice;
}

}  // namespace

ComplexSlice bar_complex_ring(const GradedRing& a, std::size_t m) {
  const Base& base = a.base();
  auto comp = [&a](std::size_t p) -> const Bimodule& { return a.component(p); };
  Pieces pieces(comp, base);
  std::vector<Level> levels;
  for (std::size_t n = 0; n <= m; ++n) levels.push_back(build_level(pieces, base, n, m));
  std::vector<BimoduleMap> maps;
  for (std::size_t n = 1; n <= m; ++n) {
    const Level& from = levels[n];
    const Level& to = levels[n - 1];
    MapBuilder d(from.sum.sum, to.sum.sum);
    for (std::size_t s = 0; s < from.summands.size(); ++s) {
      const Parts& parts = from.summands[s].parts;
      for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        Parts merged(parts.begin(), parts.begin() + i);
        merged.push_back(parts[i] + parts[i + 1]);
        merged.insert(merged.end(), parts.begin() + i + 2, parts.end());
        const auto t = to.where.find(merged);
        if (t == to.where.end()) continue;
        const BimoduleMap f =
            tensor_maps(base, identities_around(parts, i, 2, comp, a.mu(parts[i], parts[i + 1])));
        add_block(d, f, from, s, to, t->second, i % 2 == 0 ? 1 : -1);
      }
    }
    maps.push_back(d.build());
  }
  return assemble_slice(base, Direction::chain, m, std::move(levels), std::move(maps));
}

ComplexSlice cobar_complex_coring(const GradedCoring& c, std::size_t m) {
  const Base& base = c.base();
  auto comp = [&c](std::size_t p) -> const Bimodule& { return c.component(p); };
  Pieces pieces(comp, base);
  std::vector<Level> levels;
  for (std::size_t n = 0; n <= m; ++n) levels.push_back(build_level(pieces, base, n, m));
  std::vector<BimoduleMap> maps;
  for (std::size_t n = 0; n < m; ++n) {
    const Level& from = levels[n];
    const Level& to = levels[n + 1];
    MapBuilder d(from.sum.sum, to.sum.sum);
    for (std::size_t s = 0; s < from.summands.size(); ++s) {
      const Parts& parts = from.summands[s].parts;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t x = 1; x < parts[i]; ++x) {
          Parts split(parts.begin(), parts.begin() + i);
          split.push_back(x);
          split.push_back(parts[i] - x);
          split.insert(split.end(), parts.begin() + i + 1, parts.end());
          const auto t = to.where.find(split);
          if (t == to.where.end()) continue;
          const BimoduleMap f =
              tensor_maps(base, identities_around(parts, i, 1, comp, c.delta(x, parts[i] - x)));
          add_block(d, f, from, s, to, t->second, i % 2 == 0 ? 1 : -1);
        }
      }
    }
    maps.push_back(d.build());
  }
  return assemble_slice(base, Direction::cochain, m, std::move(levels), std::move(maps));
}

// ---------------------------------------------------------------------------

std::size_t BettiTable::at(std::size_t n, std::size_t m) const {
  const auto it = entries.find({n, m});
  return it == entries.end() ? 0 : it->second;
}

std::string BettiTable::to_csv() const {
  std::ostringstream out;
  out << "n\\m";
  for (std::size_t m = 0; m <= m_max; ++m) out << "," << m;
  out << "\n";
  for (std::size_t n = 0; n <= n_max; ++n) {
    out << n;
    for (std::size_t m = 0; m <= m_max; ++m) out << "," << at(n, m);
    out << "\n";
  }
  return out.str();
}

std::size_t default_weight_bound(std::size_t top_degree) { return 2 * top_degree; }

namespace {

// Runs task(m) for m = 0..m_max on up to `jobs` threads; rethrows the first
// failure.
void for_each_weight(std::size_t m_max, unsigned jobs,
                     const std::function<void(std::size_t)>& task) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(m_max + 1)));
  if (jobs == 1) {
    for (std::size_t m = 0; m <= m_max; ++m) task(m);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&, j] {
      try {
        for (std::size_t m; (m = next++) <= m_max;) task(m);
      } catch (...) {
        errors[j] = std::current_exception();
        next = m_max + 1;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class Build>
BettiTable table(BettiTable::Kind kind, std::size_t n_max, std::size_t m_max, unsigned jobs,
                 Build build) {
  BettiTable t{kind, n_max, m_max, {}};
  std::vector<std::vector<std::size_t>> rows(m_max + 1);
  for_each_weight(m_max, jobs, [&](std::size_t m) {
    const ComplexSlice s = build(m);
    if (s.euler_characteristic() != s.homology_euler_characteristic()) {
      throw InternalError("Euler characteristic mismatch in weight " + std::to_string(m));
    }
    for (std::size_t n = 0; n <= std::min(n_max, m); ++n) {
      rows[m].push_back(s.homology_dim(static_cast<int>(n)));
    }
  });
  for (std::size_t m = 0; m <= m_max; ++m)
    for (std::size_t n = 0; n <= n_max; ++n) t.entries[{n, m}] = n < rows[m].size() ? rows[m][n] : 0;
  return t;
}

}  // namespace

BettiTable tor_table(const GradedRing& a, std::size_t n_max, std::size_t m_max, unsigned jobs) {
  return table(BettiTable::Kind::tor, n_max, m_max, jobs,
               [&](std::size_t m) { return bar_complex_ring(a, m); });
}

BettiTable ext_table(const GradedCoring& c, std::size_t n_max, std::size_t m_max, unsigned jobs) {
  return table(BettiTable::Kind::ext, n_max, m_max, jobs,
               [&](std::size_t m) { return cobar_complex_coring(c, m); });
}

// ---------------------------------------------------------------------------

namespace {

// Basis vectors of `piece` grouped by left idempotent.
std::map<std::uint32_t, std::vector<std::uint32_t>> by_left(const Bimodule& piece) {
  std::map<std::uint32_t, std::vector<std::uint32_t>> out;
  for (std::uint32_t j = 0; j < piece.dim(); ++j) out[piece.block_of(j).first].push_back(j);
  return out;
}

// Splitting Ω(m) → Ω(m_1)⊗Ω(m − m_1) at position p: summand 𝒎 goes to
// (m_1..m_p)⊗(m_{p+1}..m_n) when the first p parts sum to m_1.
BimoduleMap deconcatenation(const ComplexSlice& whole, std::size_t n, std::size_t p,
                            const ComplexSlice& left, const ComplexSlice& right) {
  const Bimodule& src = whole.space(static_cast<int>(n));
  const Bimodule& lsp = left.space(static_cast<int>(p));
  const Bimodule& rsp = right.space(static_cast<int>(n - p));
  const Bimodule tgt = tensor(lsp, rsp);
  MapBuilder b(src, tgt);
  if (src.dim() == 0) return b.build();
  const auto& lsum = left.summands[p];
  const auto& rsum = right.summands[n - p];
  for (std::size_t s = 0; s < whole.summands[n].size(); ++s) {
    const Summand& sm = whole.summands[n][s];
    const Parts lp(sm.parts.begin(), sm.parts.begin() + p);
    const Parts rp(sm.parts.begin() + p, sm.parts.end());
    std::size_t lsum_w = 0;
    for (auto x : lp) lsum_w += x;
    if (lsum_w != left.weight()) continue;
    const auto li = std::find_if(lsum.begin(), lsum.end(), [&](const Summand& t) { return t.parts == lp; });
    const auto ri = std::find_if(rsum.begin(), rsum.end(), [&](const Summand& t) { return t.parts == rp; });
    if (li == lsum.end() || ri == rsum.end()) {
      throw InternalError("deconcatenation: missing summand");
    }
    const Bimodule& x = li->piece;
    const Bimodule& y = ri->piece;
    const auto& lemb = left.embed[p][li - lsum.begin()];
    const auto& remb = right.embed[n - p][ri - rsum.begin()];
    const auto ys = by_left(y);
    for (std::uint32_t i = 0; i < x.dim(); ++i) {
      const auto it = ys.find(x.block_of(i).second);
      if (it == ys.end()) continue;
      for (auto j : it->second) {
        const auto k = tensor_index(x, y, sm.piece, i, j);
        const auto t = tensor_index(lsp, rsp, tgt, lemb[i], remb[j]);
        if (!k || !t) throw InternalError("deconcatenation: basis vectors do not chain");
        b.add(*t, whole.embed[n][s][*k], Scalar(1));
      }
    }
  }
  return b.build();
}

// Concatenation Ω^n(m)⊗Ω^{n2}(m2) → Ω^{n+n2}(m+m2).
BimoduleMap concatenation(const ComplexSlice& l, std::size_t n, const ComplexSlice& r,
                          std::size_t n2, const ComplexSlice& whole) {
  const Bimodule& lsp = l.space(static_cast<int>(n));
  const Bimodule& rsp = r.space(static_cast<int>(n2));
  const Bimodule src = tensor(lsp, rsp);
  const Bimodule& tgt = whole.space(static_cast<int>(n + n2));
  MapBuilder b(src, tgt);
  if (src.dim() == 0) return b.build();
  const auto& wsum = whole.summands[n + n2];
  for (std::size_t a = 0; a < l.summands[n].size(); ++a) {
    const Summand& x = l.summands[n][a];
    for (std::size_t c = 0; c < r.summands[n2].size(); ++c) {
      const Summand& y = r.summands[n2][c];
      Parts joined = x.parts;
      joined.insert(joined.end(), y.parts.begin(), y.parts.end());
      const auto wi = std::find_if(wsum.begin(), wsum.end(),
                                   [&](const Summand& t) { return t.parts == joined; });
      const auto ys = by_left(y.piece);
      for (std::uint32_t i = 0; i < x.piece.dim(); ++i) {
        const auto it = ys.find(x.piece.block_of(i).second);
        if (it == ys.end()) continue;
        for (auto j : it->second) {
          if (wi == wsum.end()) throw InternalError("concatenation: missing summand");
          const auto k = tensor_index(x.piece, y.piece, wi->piece, i, j);
          const auto s = tensor_index(lsp, rsp, src, l.embed[n][a][i], r.embed[n2][c][j]);
          if (!k || !s) throw InternalError("concatenation: basis vectors do not chain");
          b.add(whole.embed[n + n2][wi - wsum.begin()][*k], *s, Scalar(1));
        }
      }
    }
  }
  return b.build();
}

}  // namespace

BarHomology::BarHomology(GradedRing a) : a_(std::move(a)) {}

const ComplexSlice& BarHomology::slice(std::size_t m) {
  auto it = slices_.find(m);
  if (it == slices_.end()) it = slices_.emplace(m, bar_complex_ring(a_, m)).first;
  return it->second;
}

const HomologyClasses& BarHomology::classes(std::size_t n, std::size_t m) {
  auto it = classes_.find({n, m});
  if (it == classes_.end()) {
    it = classes_.emplace(std::pair{n, m}, slice(m).homology(static_cast<int>(n))).first;
  }
  return it->second;
}

BimoduleMap BarHomology::coring_component(std::size_t p, std::size_t q, std::size_t m) {
  const HomologyClasses& src = classes(p + q, m);
  std::vector<std::pair<std::string, BimoduleMap>> parts;
  for (std::size_t m1 = p; m1 + q <= m; ++m1) {
    const ComplexSlice& whole = slice(m);
    const ComplexSlice& left = slice(m1);
    const ComplexSlice& right = slice(m - m1);
    const BimoduleMap split = deconcatenation(whole, p + q, p, left, right);
    const BimoduleMap proj = tensor_map(classes(p, m1).projection, classes(q, m - m1).projection);
    parts.emplace_back(std::to_string(m1), proj * split * src.representatives);
  }
  if (parts.empty()) {
    return BimoduleMap::zero(src.space, Bimodule::zero(a_.base()));
  }
  return stack_maps(parts);
}

std::size_t BarHomology::primitive_dim(std::size_t n, std::size_t m) {
  const std::size_t d = dim(n, m);
  if (n <= 1 || d == 0) return d;
  std::vector<std::pair<std::string, BimoduleMap>> parts;
  for (std::size_t p = 1; p < n; ++p) parts.emplace_back(std::to_string(p), coring_component(p, n - p, m));
  return d - stack_maps(parts).rank();
}

CobarCohomology::CobarCohomology(GradedCoring c) : c_(std::move(c)) {}

const ComplexSlice& CobarCohomology::slice(std::size_t m) {
  auto it = slices_.find(m);
  if (it == slices_.end()) it = slices_.emplace(m, cobar_complex_coring(c_, m)).first;
  return it->second;
}

const HomologyClasses& CobarCohomology::classes(std::size_t n, std::size_t m) {
  auto it = classes_.find({n, m});
  if (it == classes_.end()) {
    it = classes_.emplace(std::pair{n, m}, slice(m).homology(static_cast<int>(n))).first;
  }
  return it->second;
}

BimoduleMap CobarCohomology::ring_component(std::size_t n, std::size_t m, std::size_t n2,
                                            std::size_t m2) {
  if (n > m || n2 > m2) {
    return BimoduleMap::zero(tensor(classes(n, m).space, classes(n2, m2).space),
                             classes(n + n2, m + m2).space);
  }
  const ComplexSlice& l = slice(m);
  const ComplexSlice& r = slice(m2);
  const ComplexSlice& w = slice(m + m2);
  const HomologyClasses& hl = classes(n, m);
  const HomologyClasses& hr = classes(n2, m2);
  const HomologyClasses& hw = classes(n + n2, m + m2);
  const BimoduleMap cat = concatenation(l, n, r, n2, w);
  const BimoduleMap prod = cat * tensor_map(hl.representatives, hr.representatives);
  if (!(w.outgoing(static_cast<int>(n + n2)) * prod).is_zero()) {
    throw InternalError("product of cocycles is not a cocycle");
  }
  // Coboundaries times cocycles must project to zero.
  const BimoduleMap bl = image(l.incoming(static_cast<int>(n))).inclusion;
  const BimoduleMap br = image(r.incoming(static_cast<int>(n2))).inclusion;
  if (!(hw.projection * cat * tensor_map(bl, hr.representatives)).is_zero() ||
      !(hw.projection * cat * tensor_map(hl.representatives, br)).is_zero()) {
    throw InternalError("cohomology product is not well defined");
  }
  return hw.projection * prod;
}

bool CobarCohomology::generated_in_degree_one(std::size_t n, std::size_t m) {
  const std::size_t d = dim(n + 1, m);
  if (d == 0) return true;
  std::vector<std::pair<std::string, BimoduleMap>> parts;
  for (std::size_t m1 = 1; m1 + n <= m; ++m1) {
    const BimoduleMap f = ring_component(1, m1, n, m - m1);
    if (f.source().dim()) parts.emplace_back(std::to_string(m1), f);
  }
  if (parts.empty()) return false;
  return join_maps(parts).rank() == d;
}

// ---------------------------------------------------------------------------

void require_strongly_graded(const GradedRing& a) {
  const StrongGrading s = is_strongly_graded_ring(a);
  if (!s.holds) {
    throw PreconditionError("ring is not strongly graded (degree " +
                            std::to_string(*s.failing_degree) + ")");
  }
}

void require_strongly_graded(const GradedCoring& c) {
  const StrongGrading s = is_strongly_graded_coring(c);
  if (!s.holds) {
    throw PreconditionError("coring is not strongly graded (degree " +
                            std::to_string(*s.failing_degree) + ")");
  }
}

DegreeCheck quadratic_via_tor(const GradedRing& a, std::optional<std::size_t> m_max) {
  require_strongly_graded(a);
  const std::size_t bound = m_max.value_or(default_weight_bound(a.top_degree()));
  for (std::size_t m = 3; m <= bound; ++m) {
    if (bar_complex_ring(a, m).homology_dim(2) != 0) return {false, m};
  }
  return {};
}

DegreeCheck quadratic_via_ext(const GradedCoring& c, std::optional<std::size_t> m_max) {
  require_strongly_graded(c);
  const std::size_t bound = m_max.value_or(default_weight_bound(c.top_degree()));
  for (std::size_t m = 3; m <= bound; ++m) {
    if (cobar_complex_coring(c, m).homology_dim(2) != 0) return {false, m};
  }
  return {};
}

DegreeCheck is_quadratic_direct(const GradedRing& a) {
  require_strongly_graded(a);
  const Bimodule& v = a.component(1);
  const QuadraticData data{v, kernel(a.mu(1, 1))};
  const std::size_t top = std::max(tensor_support(v, std::max(a.top_degree() + 1, kDefaultShriekCap)),
                                   a.top_degree());
  for (std::size_t n = 2; n <= top; ++n) {
    const SubBimodule ideal = ideal_component(data, n);
    // μ_n kills the ideal generated by the relations; φ_A is then onto.
    if (!(a.mu_n(n) * ideal.inclusion).is_zero()) {
      throw InternalError("μ_n does not vanish on the relations in degree " + std::to_string(n));
    }
    if (tensor_power(v, n).dim() - ideal.dim() != a.dim(n)) return {false, n};
  }
  return {};
}

DegreeCheck is_quadratic_coring_direct(const GradedCoring& c) {
  require_strongly_graded(c);
  const Bimodule& v = c.component(1);
  const QuadraticData data{v, image(c.delta(1, 1))};
  const std::size_t top = std::max(tensor_support(v, std::max(c.top_degree() + 1, kDefaultShriekCap)),
                                   c.top_degree());
  for (std::size_t n = 2; n <= top; ++n) {
    const SubBimodule co = coideal_component(data, n);
    const BimoduleMap dn = c.delta_n(n);
    // Δ^n lands in {C_1, Im Δ_{1,1}}_n; factor_through throws otherwise.
    if (c.dim(n)) factor_through(dn, co.inclusion);
    if (dn.rank() != co.dim()) return {false, n};
  }
  return {};
}

SequenceCheck verify_tor2_sequence(const GradedRing& a, std::size_t m) {
  if (m < 2) throw PreconditionError("the Tor₂ sequence needs m ≥ 2");
  require_strongly_graded(a);
  SequenceCheck s;
  s.left = bar_complex_ring(a, m).homology_dim(2);
  s.middle = bar_complex_ring(a.truncate(m - 1), m).homology_dim(2);
  s.right = a.dim(m);
  return s;
}

SequenceCheck verify_ext2_sequence(const GradedCoring& c, std::size_t m) {
  if (m < 2) throw PreconditionError("the Ext² sequence needs m ≥ 2");
  require_strongly_graded(c);
  SequenceCheck s;
  s.left = c.dim(m);
  s.middle = cobar_complex_coring(c.truncate(m - 1), m).homology_dim(2);
  s.right = cobar_complex_coring(c, m).homology_dim(2);
  return s;
}

BimoduleMap alpha_map(const GradedRing& a, const ComplexSlice& bar, std::size_t m) {
  if (bar.weight() != m || bar.direction() != Direction::chain) {
    throw DimensionError("alpha_map: slice of the wrong weight");
  }
  const Bimodule& v = a.component(1);
  const Bimodule vm = tensor_power(v, m);
  const Bimodule& target = bar.space(2);
  MapBuilder b(vm, target);
  if (m < 2) return b.build();
  for (std::size_t s = 0; s < bar.summands[2].size(); ++s) {
    const Parts& parts = bar.summands[2][s].parts;
    const BimoduleMap f = tensor_map(a.mu_n(parts[0]), a.mu_n(parts[1]));
    if (!(f.source() == vm)) throw InternalError("alpha_map: tensor powers do not match");
    for (const auto& e : f.matrix().entries()) b.add(bar.embed[2][s][e.row], e.col, e.value);
  }
  return b.build();
}

}  // namespace koszul
