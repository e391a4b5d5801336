#include "koszul/bimodule.hpp"

#include <algorithm>
#include <unordered_map>

#include "koszul/errors.hpp"
#include "koszul/linalg.hpp"

namespace koszul {

std::string label_string(const Label& label) {
  if (label.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i) out += "⊗";
    out += label[i];
  }
  return out;
}

BaseRing::BaseRing(std::vector<std::string> idempotents, FieldSpec field)
    : names_(std::move(idempotents)), field_(field) {
  if (names_.empty()) throw InputError("base ring needs at least one idempotent");
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second) {
      throw InputError("duplicate idempotent label '" + names_[i] + "'");
    }
  }
}

std::optional<std::uint32_t> BaseRing::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Base make_base(std::vector<std::string> idempotents, FieldSpec field) {
  return std::make_shared<const BaseRing>(std::move(idempotents), field);
}

bool same_base(const Base& a, const Base& b) {
  return a == b || (a && b && *a == *b);
}

namespace {

struct LabelHash {
  std::size_t operator()(const Label& l) const {
    std::size_t h = l.size();
    std::hash<std::string> hs;
    for (const auto& a : l) h ^= hs(a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

void require_base(const Bimodule& a, const Bimodule& b, const char* what) {
  if (!same_base(a.base(), b.base())) {
    throw DimensionError(std::string(what) + ": bimodules over different base rings");
  }
}

}  // namespace

struct Bimodule::Impl {
  Base base;
  std::size_t n = 0;  // |S|
  std::vector<std::vector<Label>> blocks;  // s * n + t
  std::vector<std::size_t> offsets;        // size n*n + 1
  std::vector<std::uint32_t> block_index;  // per global basis vector
  std::vector<std::unordered_map<Label, std::uint32_t, LabelHash>> lookup;
};

Bimodule Bimodule::from_blocks(Base base, std::map<BlockKey, std::vector<Label>> blocks) {
  if (!base) throw DimensionError("bimodule without a base ring");
  auto impl = std::make_shared<Impl>();
  const std::size_t n = base->size();
  impl->base = std::move(base);
  impl->n = n;
  impl->blocks.resize(n * n);
  impl->lookup.resize(n * n);
  for (auto& [key, labels] : blocks) {
    if (key.first >= n || key.second >= n) throw DimensionError("block index out of range");
    std::sort(labels.begin(), labels.end());
    for (std::size_t i = 1; i < labels.size(); ++i) {
      if (labels[i] == labels[i - 1]) {
        throw DimensionError("duplicate basis label " + label_string(labels[i]) +
                             " in block (" + impl->base->name(key.first) + ", " +
                             impl->base->name(key.second) + ")");
      }
    }
    impl->blocks[key.first * n + key.second] = std::move(labels);
  }
  impl->offsets.assign(n * n + 1, 0);
  for (std::size_t b = 0; b < n * n; ++b) {
    impl->offsets[b + 1] = impl->offsets[b] + impl->blocks[b].size();
    for (std::uint32_t i = 0; i < impl->blocks[b].size(); ++i) {
      impl->lookup[b].emplace(impl->blocks[b][i], i);
      impl->block_index.push_back(static_cast<std::uint32_t>(b));
    }
  }
  return Bimodule(std::move(impl));
}

Bimodule Bimodule::zero(Base base) { return from_blocks(std::move(base), {}); }

Bimodule Bimodule::regular(Base base) {
  std::map<BlockKey, std::vector<Label>> blocks;
  for (std::uint32_t s = 0; s < base->size(); ++s) blocks[{s, s}] = {Label{}};
  return from_blocks(std::move(base), std::move(blocks));
}

const Base& Bimodule::base() const {
  static const Base none;
  return impl_ ? impl_->base : none;
}

std::size_t Bimodule::dim() const { return impl_ ? impl_->offsets.back() : 0; }

std::size_t Bimodule::block_dim(std::uint32_t s, std::uint32_t t) const {
  return impl_->blocks.at(s * impl_->n + t).size();
}

std::size_t Bimodule::block_offset(std::uint32_t s, std::uint32_t t) const {
  return impl_->offsets.at(s * impl_->n + t);
}

const std::vector<Label>& Bimodule::block_labels(std::uint32_t s, std::uint32_t t) const {
  return impl_->blocks.at(s * impl_->n + t);
}

const Label& Bimodule::label(std::size_t i) const {
  const std::uint32_t b = impl_->block_index.at(i);
  return impl_->blocks[b][i - impl_->offsets[b]];
}

BlockKey Bimodule::block_of(std::size_t i) const {
  const std::uint32_t b = impl_->block_index.at(i);
  return {static_cast<std::uint32_t>(b / impl_->n), static_cast<std::uint32_t>(b % impl_->n)};
}

std::optional<std::uint32_t> Bimodule::locate(std::uint32_t s, std::uint32_t t,
                                              const Label& label) const {
  if (!impl_ || s >= impl_->n || t >= impl_->n) return std::nullopt;
  const std::size_t b = s * impl_->n + t;
  auto it = impl_->lookup[b].find(label);
  if (it == impl_->lookup[b].end()) return std::nullopt;
  return static_cast<std::uint32_t>(impl_->offsets[b] + it->second);
}

std::uint32_t Bimodule::index(std::uint32_t s, std::uint32_t t, const Label& label) const {
  auto i = locate(s, t, label);
  if (!i) throw DimensionError("no basis vector " + label_string(label) + " in block");
  return *i;
}

std::vector<BlockKey> Bimodule::nonzero_blocks() const {
  std::vector<BlockKey> out;
  if (!impl_) return out;
  for (std::size_t b = 0; b < impl_->n * impl_->n; ++b) {
    if (!impl_->blocks[b].empty()) {
      out.emplace_back(static_cast<std::uint32_t>(b / impl_->n),
                       static_cast<std::uint32_t>(b % impl_->n));
    }
  }
  return out;
}

bool operator==(const Bimodule& a, const Bimodule& b) {
  if (a.impl_ == b.impl_) return true;
  if (!a.impl_ || !b.impl_) return a.dim() == 0 && b.dim() == 0;
  return same_base(a.impl_->base, b.impl_->base) && a.impl_->blocks == b.impl_->blocks;
}

// ---------------------------------------------------------------------------

BimoduleMap::BimoduleMap(Bimodule source, Bimodule target, SparseMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  require_base(source_, target_, "bimodule map");
  if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim()) {
    throw DimensionError("bimodule map matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + ", expected " +
                         std::to_string(target_.dim()) + "x" + std::to_string(source_.dim()));
  }
  for (std::size_t c = 0; c < matrix_.cols(); ++c) {
    const BlockKey bc = source_.block_of(c);
    for (std::size_t k = matrix_.col_begin(c); k < matrix_.col_end(c); ++k) {
      if (target_.block_of(matrix_.row_index(k)) != bc) {
        throw DimensionError("bimodule map entry connects different blocks (not R-bilinear)");
      }
    }
  }
}

BimoduleMap BimoduleMap::zero(Bimodule source, Bimodule target) {
  SparseMatrix m(target.dim(), source.dim());
  return BimoduleMap(std::move(source), std::move(target), std::move(m));
}

BimoduleMap BimoduleMap::identity(Bimodule v) {
  SparseMatrix m = SparseMatrix::identity(v.dim());
  return BimoduleMap(v, v, std::move(m));
}

SparseMatrix BimoduleMap::block(std::uint32_t s, std::uint32_t t) const {
  const std::size_t r0 = target_.block_offset(s, t), rn = target_.block_dim(s, t);
  const std::size_t c0 = source_.block_offset(s, t), cn = source_.block_dim(s, t);
  std::vector<SparseMatrix::Entry> es;
  for (std::size_t c = c0; c < c0 + cn; ++c) {
    for (std::size_t k = matrix_.col_begin(c); k < matrix_.col_end(c); ++k) {
      es.push_back({static_cast<std::uint32_t>(matrix_.row_index(k) - r0),
                    static_cast<std::uint32_t>(c - c0), matrix_.value(k)});
    }
  }
  return SparseMatrix::from_triplets(rn, cn, std::move(es));
}

std::size_t BimoduleMap::rank() const {
  if (matrix_.is_zero()) return 0;
  std::size_t r = 0;
  for (auto [s, t] : source_.nonzero_blocks()) {
    if (target_.block_dim(s, t) == 0) continue;
    r += koszul::rank(block(s, t), field());
  }
  return r;
}

bool BimoduleMap::is_zero() const {
  if (!field().is_prime()) return matrix_.is_zero();
  return matrix_.reduced(field()).is_zero();
}

BimoduleMap BimoduleMap::scaled(const Scalar& c) const {
  return BimoduleMap(source_, target_, matrix_.scaled(c));
}

BimoduleMap operator*(const BimoduleMap& g, const BimoduleMap& f) {
  if (!(f.target() == g.source())) throw DimensionError("composition of non-composable maps");
  return BimoduleMap(f.source(), g.target(), g.matrix() * f.matrix());
}

BimoduleMap operator+(const BimoduleMap& a, const BimoduleMap& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) {
    throw DimensionError("sum of maps with different source or target");
  }
  return BimoduleMap(a.source(), a.target(), a.matrix() + b.matrix());
}

BimoduleMap operator-(const BimoduleMap& a, const BimoduleMap& b) {
  return a + b.scaled(-1);
}

bool equal_in(const BimoduleMap& a, const BimoduleMap& b) {
  return a.source() == b.source() && a.target() == b.target() &&
         equal_in(a.matrix(), b.matrix(), a.field());
}

MapBuilder::MapBuilder(Bimodule source, Bimodule target)
    : source_(std::move(source)), target_(std::move(target)) {}

void MapBuilder::add(std::uint32_t target_index, std::uint32_t source_index,
                     const Scalar& value) {
  if (value == 0) return;
  entries_.push_back({target_index, source_index, value});
}

BimoduleMap MapBuilder::build() {
  SparseMatrix m =
      SparseMatrix::accumulate(target_.dim(), source_.dim(), std::move(entries_));
  entries_.clear();
  return BimoduleMap(source_, target_, std::move(m));
}

// ---------------------------------------------------------------------------

namespace {

Label concat(const Label& a, const Label& b) {
  Label out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

Bimodule tensor(const Bimodule& v, const Bimodule& w) {
  require_base(v, w, "tensor");
  const Base& base = v.base();
  const auto n = static_cast<std::uint32_t>(base->size());
  std::map<BlockKey, std::vector<Label>> blocks;
  for (std::uint32_t s = 0; s < n; ++s) {
    for (std::uint32_t t = 0; t < n; ++t) {
      const auto& vl = v.block_labels(s, t);
      if (vl.empty()) continue;
      for (std::uint32_t u = 0; u < n; ++u) {
        const auto& wl = w.block_labels(t, u);
        if (wl.empty()) continue;
        auto& out = blocks[{s, u}];
        for (const auto& a : vl)
          for (const auto& b : wl) out.push_back(concat(a, b));
      }
    }
  }
  return Bimodule::from_blocks(base, std::move(blocks));
}

Bimodule tensor_power(const Bimodule& v, std::size_t n) {
  Bimodule out = Bimodule::regular(v.base());
  for (std::size_t i = 0; i < n; ++i) out = tensor(out, v);
  return out;
}

std::optional<std::uint32_t> tensor_index(const Bimodule& v, const Bimodule& w,
                                          const Bimodule& vw, std::size_t i,
                                          std::size_t j) {
  const auto [s, t] = v.block_of(i);
  const auto [t2, u] = w.block_of(j);
  if (t != t2) return std::nullopt;
  return vw.locate(s, u, concat(v.label(i), w.label(j)));
}

BimoduleMap tensor_map(const BimoduleMap& f, const BimoduleMap& g) {
  require_base(f.source(), g.source(), "tensor_map");
  const Bimodule src = tensor(f.source(), g.source());
  const Bimodule tgt = tensor(f.target(), g.target());
  MapBuilder b(src, tgt);
  const SparseMatrix& F = f.matrix();
  const SparseMatrix& G = g.matrix();
  for (std::size_t i = 0; i < f.source().dim(); ++i) {
    if (F.col_begin(i) == F.col_end(i)) continue;
    for (std::size_t j = 0; j < g.source().dim(); ++j) {
      if (G.col_begin(j) == G.col_end(j)) continue;
      auto col = tensor_index(f.source(), g.source(), src, i, j);
      if (!col) continue;
      for (std::size_t a = F.col_begin(i); a < F.col_end(i); ++a) {
        for (std::size_t c = G.col_begin(j); c < G.col_end(j); ++c) {
          auto row = tensor_index(f.target(), g.target(), tgt, F.row_index(a), G.row_index(c));
          if (!row) throw InternalError("tensor_map: image pair does not chain");
          b.add(*row, *col, F.value(a) * G.value(c));
        }
      }
    }
  }
  return b.build();
}

BimoduleMap tensor_maps(const Base& base, const std::vector<BimoduleMap>& fs) {
  if (fs.empty()) return BimoduleMap::identity(Bimodule::regular(base));
  BimoduleMap out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = tensor_map(out, fs[i]);
  return out;
}

DirectSum direct_sum(const Base& base,
                     const std::vector<std::pair<std::string, Bimodule>>& summands) {
  std::map<BlockKey, std::vector<Label>> blocks;
  for (const auto& [tag, v] : summands) {
    if (v.dim() && !same_base(v.base(), base)) throw DimensionError("direct sum over different bases");
    for (std::size_t i = 0; i < v.dim(); ++i) {
      Label l{tag};
      l.insert(l.end(), v.label(i).begin(), v.label(i).end());
      blocks[v.block_of(i)].push_back(std::move(l));
    }
  }
  DirectSum out{Bimodule::from_blocks(base, std::move(blocks)), {}};
  for (const auto& [tag, v] : summands) {
    std::vector<std::uint32_t> e(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) {
      Label l{tag};
      l.insert(l.end(), v.label(i).begin(), v.label(i).end());
      const auto [s, t] = v.block_of(i);
      e[i] = out.sum.index(s, t, l);
    }
    out.embed.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string dual_atom(const std::string& atom) {
  if (atom.size() >= 2 && atom[1] == '_') {
    if (atom[0] == 'e') return "f" + atom.substr(1);
    if (atom[0] == 'f') return "e" + atom.substr(1);
  }
  if (!atom.empty() && atom[0] == '*') return atom.substr(1);
  return "*" + atom;
}

Label dual_label(const Label& label) {
  Label out;
  out.reserve(label.size());
  for (const auto& a : label) out.push_back(dual_atom(a));
  return out;
}

namespace {

Bimodule dual_blocks(const Bimodule& v) {
  std::map<BlockKey, std::vector<Label>> blocks;
  for (auto [s, t] : v.nonzero_blocks()) {
    auto& out = blocks[{s, t}];
    for (const auto& l : v.block_labels(s, t)) out.push_back(dual_label(l));
  }
  return Bimodule::from_blocks(v.base(), std::move(blocks));
}

// perm[i] = index in dv of the dual of basis vector i of v.
std::vector<std::uint32_t> dual_positions(const Bimodule& v, const Bimodule& dv) {
  std::vector<std::uint32_t> perm(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const auto [s, t] = v.block_of(i);
    perm[i] = dv.index(s, t, dual_label(v.label(i)));
  }
  return perm;
}

// Evaluation of the dual basis vector dv_a on the basis vector v_b.
int pairing(const std::vector<std::uint32_t>& perm, std::size_t a, std::size_t b) {
  return perm[b] == a ? 1 : 0;
}

enum class Side { left, right };

DualTensorIso dual_iso(const Bimodule& v, const Bimodule& w, Side side) {
  const Bimodule vw = tensor(v, w);
  const Bimodule dv = dual_blocks(v), dw = dual_blocks(w);
  const Bimodule dvdw = tensor(dv, dw);
  const Bimodule dvw = dual_blocks(vw);
  const auto pv = dual_positions(v, dv), pw = dual_positions(w, dw);
  const auto pvw = dual_positions(vw, dvw);

  // φ(α⊗β) is the functional v⊗w ↦ α(vβ(w)) (left) or β(α(v)w) (right).
  // Dual bases pair as permutations, so only α = v_x^*, β = w_y^* evaluate
  // nonzero on v_x⊗w_y, with value 1 in either formula.
  MapBuilder phi(dvdw, dvw);
  MapBuilder psi(dvw, dvdw);
  for (std::size_t x = 0; x < v.dim(); ++x) {
    for (std::size_t y = 0; y < w.dim(); ++y) {
      auto xy = tensor_index(v, w, vw, x, y);
      if (!xy) continue;
      auto ab = tensor_index(dv, dw, dvdw, pv[x], pw[y]);
      if (!ab) throw InternalError("dual basis vectors do not chain");
      const int alpha = pairing(pv, pv[x], x), beta = pairing(pw, pw[y], y);
      const int value = side == Side::left ? alpha * beta : beta * alpha;
      phi.add(pvw[*xy], *ab, Scalar(value));
      // ψ(γ) = Σ_i γ(−⊗w_i) ⊗ w_i^*: γ = (v_x⊗w_y)^* contributes at w_i = w_y.
      psi.add(*ab, pvw[*xy], Scalar(1));
    }
  }
  return {phi.build(), psi.build()};
}

}  // namespace

Bimodule left_dual(const Bimodule& v) { return dual_blocks(v); }
Bimodule right_dual(const Bimodule& v) { return dual_blocks(v); }

DualTensorIso dual_tensor_iso(const Bimodule& v, const Bimodule& w) {
  return dual_iso(v, w, Side::left);
}

DualTensorIso dual_tensor_iso_right(const Bimodule& v, const Bimodule& w) {
  return dual_iso(v, w, Side::right);
}

BimoduleMap dual_map(const BimoduleMap& f) {
  const Bimodule dv = left_dual(f.source()), dw = left_dual(f.target());
  const auto pv = dual_positions(f.source(), dv), pw = dual_positions(f.target(), dw);
  MapBuilder b(dw, dv);
  for (const auto& e : f.matrix().entries()) b.add(pv[e.col], pw[e.row], e.value);
  return b.build();
}

}  // namespace koszul
