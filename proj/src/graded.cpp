#include "koszul/graded.hpp"

#include <string>

#include "koszul/errors.hpp"

namespace koszul {

namespace {

std::size_t uniform_width(const Bimodule& v, std::size_t degree) {
  if (v.dim() == 0) return degree;
  const std::size_t w = v.label(0).size();
  for (std::size_t i = 1; i < v.dim(); ++i) {
    if (v.label(i).size() != w) {
      throw DimensionError("labels of degree " + std::to_string(degree) +
                           " have different widths");
    }
  }
  return w;
}

void check_components(const Base& base, const std::vector<Bimodule>& comps) {
  if (!base) throw DimensionError("graded structure without a base ring");
  if (comps.empty()) throw DimensionError("graded structure needs a degree-0 component");
  if (!(comps[0] == Bimodule::regular(base))) {
    throw InternalError("degree-0 component is not R (structure is not connected)");
  }
  for (std::size_t n = 0; n < comps.size(); ++n) {
    if (comps[n].dim() && !same_base(comps[n].base(), base)) {
      throw DimensionError("component " + std::to_string(n) + " over a different base");
    }
  }
}

std::string deg_str(std::size_t p, std::size_t q) {
  return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

std::size_t sum_of(const std::vector<std::size_t>& parts) {
  std::size_t s = 0;
  for (auto p : parts) s += p;
  return s;
}

std::vector<std::size_t> tail(const std::vector<std::size_t>& parts) {
  return {parts.begin() + 1, parts.end()};
}

}  // namespace

// ---------------------------------------------------------------------------

GradedRing::GradedRing(Base base, std::vector<Bimodule> components,
                       std::map<Degrees, BimoduleMap> mult, bool truncated)
    : base_(std::move(base)),
      components_(std::move(components)),
      truncated_(truncated) {
  check_components(base_, components_);
  zero_ = Bimodule::zero(base_);
  const std::size_t top = top_degree();
  for (auto& [pq, m] : mult) {
    const auto [p, q] = pq;
    if (p == 0 || q == 0 || p + q > top) continue;
    if (!(m.source() == tensor(component(p), component(q))) ||
        !(m.target() == component(p + q))) {
      throw DimensionError("μ" + deg_str(p, q) + " has the wrong source or target");
    }
    mult_.emplace(pq, m);
  }
  for (std::size_t p = 1; p < top; ++p) {
    for (std::size_t q = 1; p + q <= top; ++q) {
      if (!mult_.count({p, q})) {
        mult_.emplace(Degrees{p, q},
                      BimoduleMap::zero(tensor(component(p), component(q)), component(p + q)));
      }
    }
  }
  validate();
}

const Bimodule& GradedRing::component(std::size_t n) const {
  return n < components_.size() ? components_[n] : zero_;
}

std::size_t GradedRing::label_width(std::size_t n) const {
  return uniform_width(component(n), n);
}

BimoduleMap GradedRing::mu(std::size_t p, std::size_t q) const {
  if (p == 0) return BimoduleMap::identity(component(q));
  if (q == 0) return BimoduleMap::identity(component(p));
  if (p + q > top_degree()) {
    return BimoduleMap::zero(tensor(component(p), component(q)), zero_);
  }
  return mult_.at({p, q});
}

BimoduleMap GradedRing::mu_parts(const std::vector<std::size_t>& parts) const {
  if (parts.empty()) return BimoduleMap::identity(component(0));
  if (parts.size() == 1) return BimoduleMap::identity(component(parts[0]));
  const auto rest = tail(parts);
  const BimoduleMap inner =
      tensor_map(BimoduleMap::identity(component(parts[0])), mu_parts(rest));
  return mu(parts[0], sum_of(rest)) * inner;
}

BimoduleMap GradedRing::mu_n(std::size_t n) const {
  return mu_parts(std::vector<std::size_t>(n, 1));
}

void GradedRing::validate() const {
  const std::size_t top = top_degree();
  for (std::size_t p = 1; p <= top; ++p) {
    for (std::size_t q = 1; p + q <= top; ++q) {
      for (std::size_t r = 1; p + q + r <= top; ++r) {
        const BimoduleMap lhs =
            mu(p + q, r) * tensor_map(mu(p, q), BimoduleMap::identity(component(r)));
        const BimoduleMap rhs =
            mu(p, q + r) * tensor_map(BimoduleMap::identity(component(p)), mu(q, r));
        if (!equal_in(lhs, rhs)) {
          throw InternalError("multiplication is not associative in degrees (" +
                              std::to_string(p) + "," + std::to_string(q) + "," +
                              std::to_string(r) + ")");
        }
      }
    }
  }
}

GradedRing GradedRing::truncate(std::size_t top) const {
  if (top >= top_degree()) return *this;
  std::vector<Bimodule> comps(components_.begin(), components_.begin() + top + 1);
  std::map<Degrees, BimoduleMap> mult;
  for (const auto& [pq, m] : mult_) {
    if (pq.first + pq.second <= top) mult.emplace(pq, m);
  }
  bool dropped = truncated_;
  for (std::size_t n = top + 1; n <= top_degree(); ++n) dropped |= dim(n) > 0;
  return GradedRing(base_, std::move(comps), std::move(mult), dropped);
}

// ---------------------------------------------------------------------------

GradedCoring::GradedCoring(Base base, std::vector<Bimodule> components,
                           std::map<Degrees, BimoduleMap> comult, bool truncated)
    : base_(std::move(base)),
      components_(std::move(components)),
      truncated_(truncated) {
  check_components(base_, components_);
  zero_ = Bimodule::zero(base_);
  const std::size_t top = top_degree();
  for (auto& [pq, d] : comult) {
    const auto [p, q] = pq;
    if (p == 0 || q == 0 || p + q > top) continue;
    if (!(d.source() == component(p + q)) ||
        !(d.target() == tensor(component(p), component(q)))) {
      throw DimensionError("Δ" + deg_str(p, q) + " has the wrong source or target");
    }
    comult_.emplace(pq, d);
  }
  for (std::size_t p = 1; p < top; ++p) {
    for (std::size_t q = 1; p + q <= top; ++q) {
      if (!comult_.count({p, q})) {
        comult_.emplace(Degrees{p, q},
                        BimoduleMap::zero(component(p + q), tensor(component(p), component(q))));
      }
    }
  }
  validate();
}

const Bimodule& GradedCoring::component(std::size_t n) const {
  return n < components_.size() ? components_[n] : zero_;
}

std::size_t GradedCoring::label_width(std::size_t n) const {
  return uniform_width(component(n), n);
}

BimoduleMap GradedCoring::delta(std::size_t p, std::size_t q) const {
  if (p == 0) return BimoduleMap::identity(component(q));
  if (q == 0) return BimoduleMap::identity(component(p));
  if (p + q > top_degree()) {
    return BimoduleMap::zero(zero_, tensor(component(p), component(q)));
  }
  return comult_.at({p, q});
}

BimoduleMap GradedCoring::delta_parts(const std::vector<std::size_t>& parts) const {
  if (parts.empty()) return BimoduleMap::identity(component(0));
  if (parts.size() == 1) return BimoduleMap::identity(component(parts[0]));
  const auto rest = tail(parts);
  const BimoduleMap outer =
      tensor_map(BimoduleMap::identity(component(parts[0])), delta_parts(rest));
  return outer * delta(parts[0], sum_of(rest));
}

BimoduleMap GradedCoring::delta_n(std::size_t n) const {
  return delta_parts(std::vector<std::size_t>(n, 1));
}

void GradedCoring::validate() const {
  const std::size_t top = top_degree();
  for (std::size_t p = 1; p <= top; ++p) {
    for (std::size_t q = 1; p + q <= top; ++q) {
      for (std::size_t r = 1; p + q + r <= top; ++r) {
        const BimoduleMap lhs =
            tensor_map(delta(p, q), BimoduleMap::identity(component(r))) * delta(p + q, r);
        const BimoduleMap rhs =
            tensor_map(BimoduleMap::identity(component(p)), delta(q, r)) * delta(p, q + r);
        if (!equal_in(lhs, rhs)) {
          throw InternalError("comultiplication is not coassociative in degrees (" +
                              std::to_string(p) + "," + std::to_string(q) + "," +
                              std::to_string(r) + ")");
        }
      }
    }
  }
}

GradedCoring GradedCoring::truncate(std::size_t top) const {
  if (top >= top_degree()) return *this;
  std::vector<Bimodule> comps(components_.begin(), components_.begin() + top + 1);
  std::map<Degrees, BimoduleMap> comult;
  for (const auto& [pq, d] : comult_) {
    if (pq.first + pq.second <= top) comult.emplace(pq, d);
  }
  bool dropped = truncated_;
  for (std::size_t n = top + 1; n <= top_degree(); ++n) dropped |= dim(n) > 0;
  return GradedCoring(base_, std::move(comps), std::move(comult), dropped);
}

// ---------------------------------------------------------------------------

StrongGrading is_strongly_graded_ring(const GradedRing& a) {
  for (std::size_t n = 2; n <= a.top_degree(); ++n) {
    const BimoduleMap m = a.mu_n(n);
    if (m.rank() == a.dim(n)) continue;
    const Quotient q = quotient(image(m));
    return {false, n, q.section.matrix().column(0)};
  }
  return {};
}

StrongGrading is_strongly_graded_coring(const GradedCoring& c) {
  for (std::size_t n = 2; n <= c.top_degree(); ++n) {
    const BimoduleMap d = c.delta_n(n);
    if (d.rank() == c.dim(n)) continue;
    const SubBimodule k = kernel(d);
    return {false, n, k.inclusion.matrix().column(0)};
  }
  return {};
}

std::map<std::size_t, std::size_t> primitive_dims(const GradedCoring& c) {
  std::map<std::size_t, std::size_t> out;
  for (std::size_t n = 1; n <= c.top_degree(); ++n) {
    if (n == 1) {
      out[n] = c.dim(1);
      continue;
    }
    std::vector<std::pair<std::string, BimoduleMap>> parts;
    for (std::size_t p = 1; p < n; ++p) parts.emplace_back(deg_str(p, n - p), c.delta(p, n - p));
    out[n] = c.dim(n) - stack_maps(parts).rank();
  }
  return out;
}

std::map<std::size_t, std::size_t> indecomposable_dims(const GradedRing& a) {
  std::map<std::size_t, std::size_t> out;
  for (std::size_t n = 1; n <= a.top_degree(); ++n) {
    if (n == 1) {
      out[n] = a.dim(1);
      continue;
    }
    std::vector<std::pair<std::string, BimoduleMap>> parts;
    for (std::size_t p = 1; p < n; ++p) parts.emplace_back(deg_str(p, n - p), a.mu(p, n - p));
    out[n] = a.dim(n) - join_maps(parts).rank();
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_quadratic(const QuadraticData& d) {
  if (!(d.w.ambient() == tensor(d.v, d.v))) {
    throw DimensionError("W must be a sub-bimodule of V⊗V");
  }
}

// The inclusions V^{(i-1)}⊗W⊗V^{(n-i-1)} → V^{(n)}, i = 1..n-1.
std::vector<BimoduleMap> ideal_pieces(const QuadraticData& d, std::size_t n) {
  std::vector<BimoduleMap> out;
  const Base& base = d.v.base();
  for (std::size_t i = 1; i + 1 <= n; ++i) {
    out.push_back(tensor_maps(base, {BimoduleMap::identity(tensor_power(d.v, i - 1)),
                                     d.w.inclusion,
                                     BimoduleMap::identity(tensor_power(d.v, n - i - 1))}));
  }
  return out;
}

}  // namespace

SubBimodule ideal_component(const QuadraticData& data, std::size_t n) {
  check_quadratic(data);
  const Bimodule amb = tensor_power(data.v, n);
  std::vector<SparseVector> gens;
  for (const auto& piece : ideal_pieces(data, n)) {
    for (std::size_t c = 0; c < piece.matrix().cols(); ++c) {
      gens.push_back(piece.matrix().column(c));
    }
  }
  return span_in(amb, gens, PivotOrder::highest);
}

SubBimodule coideal_component(const QuadraticData& data, std::size_t n) {
  check_quadratic(data);
  const Bimodule amb = tensor_power(data.v, n);
  if (n < 2) return whole(amb);
  std::vector<SubBimodule> parts;
  for (const auto& piece : ideal_pieces(data, n)) parts.push_back(image(piece));
  return intersect(parts);
}

GradedRing quadratic_ring_of(const QuadraticData& data, std::size_t top) {
  check_quadratic(data);
  const Base& base = data.v.base();
  std::vector<Bimodule> comps;
  std::vector<BimoduleMap> proj, sec;
  for (std::size_t n = 0; n <= top; ++n) {
    if (n < 2) {
      const Bimodule v = n == 0 ? Bimodule::regular(base) : data.v;
      comps.push_back(v);
      proj.push_back(BimoduleMap::identity(v));
      sec.push_back(BimoduleMap::identity(v));
      continue;
    }
    Quotient q = quotient(ideal_component(data, n));
    comps.push_back(q.space);
    proj.push_back(q.projection);
    sec.push_back(q.section);
  }
  std::map<Degrees, BimoduleMap> mult;
  for (std::size_t p = 1; p < top; ++p) {
    for (std::size_t q = 1; p + q <= top; ++q) {
      mult.emplace(Degrees{p, q}, proj[p + q] * tensor_map(sec[p], sec[q]));
    }
  }
  return GradedRing(base, std::move(comps), std::move(mult));
}

GradedCoring quadratic_coring_of(const QuadraticData& data, std::size_t top) {
  check_quadratic(data);
  const Base& base = data.v.base();
  std::vector<SubBimodule> subs;
  std::vector<Bimodule> comps;
  for (std::size_t n = 0; n <= top; ++n) {
    subs.push_back(coideal_component(data, n));
    comps.push_back(subs.back().space);
  }
  std::map<Degrees, BimoduleMap> comult;
  for (std::size_t p = 1; p < top; ++p) {
    for (std::size_t q = 1; p + q <= top; ++q) {
      // Deconcatenation is the identity V^{(p+q)} = V^{(p)}⊗V^{(q)}; restrict it.
      const BimoduleMap inj = tensor_map(subs[p].inclusion, subs[q].inclusion);
      comult.emplace(Degrees{p, q}, factor_through(subs[p + q].inclusion, inj));
    }
  }
  return GradedCoring(base, std::move(comps), std::move(comult));
}

std::size_t tensor_support(const Bimodule& v, std::size_t cap, bool* reached_cap) {
  Bimodule power = Bimodule::regular(v.base());
  std::size_t last = 0;
  for (std::size_t n = 1; n <= cap + 1; ++n) {
    power = tensor(power, v);
    if (power.dim() == 0) break;
    if (n <= cap) last = n;
    else if (reached_cap) *reached_cap = true;
  }
  if (reached_cap && last < cap) *reached_cap = false;
  return last;
}

GradedCoring shriek_of_ring(const GradedRing& a, std::size_t cap) {
  bool capped = false;
  const std::size_t top = tensor_support(a.component(1), cap, &capped);
  QuadraticData d{a.component(1), kernel(a.mu(1, 1))};
  GradedCoring c = quadratic_coring_of(d, top);
  if (!capped) return c;
  std::vector<Bimodule> comps;
  std::map<Degrees, BimoduleMap> comult;
  for (std::size_t n = 0; n <= top; ++n) comps.push_back(c.component(n));
  for (std::size_t p = 1; p < top; ++p)
    for (std::size_t q = 1; p + q <= top; ++q) comult.emplace(Degrees{p, q}, c.delta(p, q));
  return GradedCoring(a.base(), std::move(comps), std::move(comult), true);
}

GradedRing shriek_of_coring(const GradedCoring& c, std::size_t cap) {
  bool capped = false;
  const std::size_t top = tensor_support(c.component(1), cap, &capped);
  QuadraticData d{c.component(1), image(c.delta(1, 1))};
  GradedRing a = quadratic_ring_of(d, top);
  if (!capped) return a;
  std::vector<Bimodule> comps;
  std::map<Degrees, BimoduleMap> mult;
  for (std::size_t n = 0; n <= top; ++n) comps.push_back(a.component(n));
  for (std::size_t p = 1; p < top; ++p)
    for (std::size_t q = 1; p + q <= top; ++q) mult.emplace(Degrees{p, q}, a.mu(p, q));
  return GradedRing(c.base(), std::move(comps), std::move(mult), true);
}

// ---------------------------------------------------------------------------

Bimodule rebase(const Bimodule& v, const Base& base, const std::vector<std::uint32_t>& index) {
  std::map<BlockKey, std::vector<Label>> blocks;
  for (auto [s, t] : v.nonzero_blocks()) blocks[{index.at(s), index.at(t)}] = v.block_labels(s, t);
  return Bimodule::from_blocks(base, std::move(blocks));
}

namespace {

// Position of basis vector i of v (over the old base) in w (over the new one).
std::uint32_t moved(const Bimodule& v, std::size_t i, const Bimodule& w,
                    const std::vector<std::uint32_t>& index) {
  const auto [s, t] = v.block_of(i);
  return w.index(index.at(s), index.at(t), v.label(i));
}

void copy_entries(MapBuilder& b, const BimoduleMap& f, const Bimodule& src,
                  const Bimodule& tgt, const std::vector<std::uint32_t>& index) {
  for (const auto& e : f.matrix().entries()) {
    b.add(moved(f.target(), e.row, tgt, index), moved(f.source(), e.col, src, index), e.value);
  }
}

struct ProductBase {
  Base base;
  std::vector<std::uint32_t> left, right;
};

ProductBase product_base(const Base& a, const Base& b) {
  if (!(a->field() == b->field())) throw DimensionError("product of structures over different fields");
  std::vector<std::string> names = a->names();
  ProductBase out;
  for (std::uint32_t i = 0; i < a->size(); ++i) out.left.push_back(i);
  for (const auto& n : b->names()) {
    if (a->index_of(n)) throw InputError("idempotent label collision in product: '" + n + "'");
    out.right.push_back(static_cast<std::uint32_t>(names.size()));
    names.push_back(n);
  }
  out.base = make_base(std::move(names), a->field());
  return out;
}

Bimodule union_of(const Base& base, const Bimodule& x, const std::vector<std::uint32_t>& ix,
                  const Bimodule& y, const std::vector<std::uint32_t>& iy) {
  std::map<BlockKey, std::vector<Label>> blocks;
  for (auto [s, t] : x.nonzero_blocks()) blocks[{ix[s], ix[t]}] = x.block_labels(s, t);
  for (auto [s, t] : y.nonzero_blocks()) blocks[{iy[s], iy[t]}] = y.block_labels(s, t);
  return Bimodule::from_blocks(base, std::move(blocks));
}

}  // namespace

BimoduleMap rebase(const BimoduleMap& f, const Base& base,
                   const std::vector<std::uint32_t>& index) {
  const Bimodule src = rebase(f.source(), base, index);
  const Bimodule tgt = rebase(f.target(), base, index);
  MapBuilder b(src, tgt);
  copy_entries(b, f, src, tgt, index);
  return b.build();
}

GradedRing direct_product(const GradedRing& a, const GradedRing& b) {
  const ProductBase pb = product_base(a.base(), b.base());
  const std::size_t top = std::max(a.top_degree(), b.top_degree());
  std::vector<Bimodule> comps;
  for (std::size_t n = 0; n <= top; ++n) {
    comps.push_back(union_of(pb.base, a.component(n), pb.left, b.component(n), pb.right));
  }
  std::map<Degrees, BimoduleMap> mult;
  for (std::size_t p = 1; p < top; ++p) {
    for (std::size_t q = 1; p + q <= top; ++q) {
      MapBuilder m(tensor(comps[p], comps[q]), comps[p + q]);
      if (p + q <= a.top_degree()) {
        copy_entries(m, a.mu(p, q), tensor(comps[p], comps[q]), comps[p + q], pb.left);
      }
      if (p + q <= b.top_degree()) {
        copy_entries(m, b.mu(p, q), tensor(comps[p], comps[q]), comps[p + q], pb.right);
      }
      mult.emplace(Degrees{p, q}, m.build());
    }
  }
  return GradedRing(pb.base, std::move(comps), std::move(mult),
                    a.truncated() || b.truncated());
}

GradedCoring direct_sum_corings(const GradedCoring& c, const GradedCoring& d) {
  const ProductBase pb = product_base(c.base(), d.base());
  const std::size_t top = std::max(c.top_degree(), d.top_degree());
  std::vector<Bimodule> comps;
  for (std::size_t n = 0; n <= top; ++n) {
    comps.push_back(union_of(pb.base, c.component(n), pb.left, d.component(n), pb.right));
  }
  std::map<Degrees, BimoduleMap> comult;
  for (std::size_t p = 1; p < top; ++p) {
    for (std::size_t q = 1; p + q <= top; ++q) {
      const Bimodule tgt = tensor(comps[p], comps[q]);
      MapBuilder m(comps[p + q], tgt);
      if (p + q <= c.top_degree()) copy_entries(m, c.delta(p, q), comps[p + q], tgt, pb.left);
      if (p + q <= d.top_degree()) copy_entries(m, d.delta(p, q), comps[p + q], tgt, pb.right);
      comult.emplace(Degrees{p, q}, m.build());
    }
  }
  return GradedCoring(pb.base, std::move(comps), std::move(comult),
                      c.truncated() || d.truncated());
}

bool same_structure(const GradedRing& a, const GradedRing& b) {
  if (!same_base(a.base(), b.base()) || a.top_degree() != b.top_degree()) return false;
  for (std::size_t n = 0; n <= a.top_degree(); ++n) {
    if (!(a.component(n) == b.component(n))) return false;
  }
  for (std::size_t p = 1; p < a.top_degree(); ++p)
    for (std::size_t q = 1; p + q <= a.top_degree(); ++q)
      if (!equal_in(a.mu(p, q), b.mu(p, q))) return false;
  return true;
}

bool same_structure(const GradedCoring& c, const GradedCoring& d) {
  if (!same_base(c.base(), d.base()) || c.top_degree() != d.top_degree()) return false;
  for (std::size_t n = 0; n <= c.top_degree(); ++n) {
    if (!(c.component(n) == d.component(n))) return false;
  }
  for (std::size_t p = 1; p < c.top_degree(); ++p)
    for (std::size_t q = 1; p + q <= c.top_degree(); ++q)
      if (!equal_in(c.delta(p, q), d.delta(p, q))) return false;
  return true;
}

}  // namespace koszul
