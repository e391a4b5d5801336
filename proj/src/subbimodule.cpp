#include <algorithm>

#include "koszul/bimodule.hpp"
#include "koszul/errors.hpp"
#include "koszul/linalg.hpp"

namespace koszul {

namespace {

const FieldSpec& field_of(const Bimodule& v) { return v.base()->field(); }

// Splits ambient vectors by block, in local block coordinates.
std::map<BlockKey, std::vector<SparseVector>> by_block(const Bimodule& ambient,
                                                       const std::vector<SparseVector>& vs,
                                                       bool require_homogeneous) {
  std::map<BlockKey, std::vector<SparseVector>> out;
  for (const auto& v : vs) {
    std::map<BlockKey, SparseVector> parts;
    for (const auto& [i, x] : v) {
      if (i >= ambient.dim()) throw DimensionError("vector index out of range for bimodule");
      const BlockKey b = ambient.block_of(i);
      parts[b].emplace_back(
          static_cast<std::uint32_t>(i - ambient.block_offset(b.first, b.second)), x);
    }
    if (require_homogeneous && parts.size() > 1) {
      throw DimensionError("vector spans several blocks; not a sub-bimodule generator");
    }
    for (auto& [b, p] : parts) out[b].push_back(std::move(p));
  }
  return out;
}

SpanSolver::Pivot to_pivot(PivotOrder o) {
  return o == PivotOrder::highest ? SpanSolver::Pivot::highest : SpanSolver::Pivot::lowest;
}

// Builds the sub-bimodule from per-block local basis vectors with pivots.
SubBimodule assemble(const Bimodule& ambient,
                     const std::map<BlockKey, std::pair<std::vector<SparseVector>,
                                                        std::vector<std::uint32_t>>>& blocks) {
  std::map<BlockKey, std::vector<Label>> labels;
  for (const auto& [b, bp] : blocks) {
    const std::size_t off = ambient.block_offset(b.first, b.second);
    auto& out = labels[b];
    for (auto piv : bp.second) out.push_back(ambient.label(off + piv));
  }
  Bimodule space = Bimodule::from_blocks(ambient.base(), std::move(labels));
  MapBuilder inc(space, ambient);
  for (const auto& [b, bp] : blocks) {
    const std::size_t off = ambient.block_offset(b.first, b.second);
    for (std::size_t k = 0; k < bp.first.size(); ++k) {
      const std::uint32_t col = space.index(b.first, b.second, ambient.label(off + bp.second[k]));
      for (const auto& [i, x] : bp.first[k]) {
        inc.add(static_cast<std::uint32_t>(off + i), col, x);
      }
    }
  }
  return {space, inc.build()};
}

SubBimodule span_local(const Bimodule& ambient,
                       const std::map<BlockKey, std::vector<SparseVector>>& local,
                       PivotOrder order) {
  std::map<BlockKey, std::pair<std::vector<SparseVector>, std::vector<std::uint32_t>>> blocks;
  for (const auto& [b, vs] : local) {
    SpanSolver solver(ambient.block_dim(b.first, b.second), field_of(ambient), to_pivot(order));
    for (const auto& v : vs) solver.insert(v);
    if (solver.rank() == 0) continue;
    blocks[b] = {solver.basis(true), solver.pivots()};
  }
  return assemble(ambient, blocks);
}

std::vector<SparseVector> local_columns(const SparseMatrix& m) {
  std::vector<SparseVector> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
  return out;
}

// Basis vectors of sub inside block b, in local coordinates, with their
// indices in sub.space.
std::pair<std::vector<SparseVector>, std::vector<std::uint32_t>> block_basis(
    const SubBimodule& sub, BlockKey b) {
  std::vector<SparseVector> vs;
  std::vector<std::uint32_t> ids;
  const std::size_t n = sub.space.block_dim(b.first, b.second);
  const std::size_t so = sub.space.block_offset(b.first, b.second);
  const std::size_t ao = sub.ambient().block_offset(b.first, b.second);
  const SparseMatrix& m = sub.inclusion.matrix();
  for (std::size_t k = so; k < so + n; ++k) {
    SparseVector v;
    for (std::size_t e = m.col_begin(k); e < m.col_end(k); ++e) {
      v.emplace_back(static_cast<std::uint32_t>(m.row_index(e) - ao), m.value(e));
    }
    vs.push_back(std::move(v));
    ids.push_back(static_cast<std::uint32_t>(k));
  }
  return {vs, ids};
}

}  // namespace

BimoduleMap stack_maps(const std::vector<std::pair<std::string, BimoduleMap>>& maps) {
  if (maps.empty()) throw DimensionError("stack of no maps");
  const Bimodule& src = maps[0].second.source();
  std::vector<std::pair<std::string, Bimodule>> targets;
  for (const auto& [tag, f] : maps) {
    if (!(f.source() == src)) throw DimensionError("stacked maps need a common source");
    targets.emplace_back(tag, f.target());
  }
  DirectSum ds = direct_sum(src.base(), targets);
  MapBuilder b(src, ds.sum);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    for (const auto& e : maps[k].second.matrix().entries()) {
      b.add(ds.embed[k][e.row], e.col, e.value);
    }
  }
  return b.build();
}

BimoduleMap join_maps(const std::vector<std::pair<std::string, BimoduleMap>>& maps) {
  if (maps.empty()) throw DimensionError("join of no maps");
  const Bimodule& tgt = maps[0].second.target();
  std::vector<std::pair<std::string, Bimodule>> sources;
  for (const auto& [tag, f] : maps) {
    if (!(f.target() == tgt)) throw DimensionError("joined maps need a common target");
    sources.emplace_back(tag, f.source());
  }
  DirectSum ds = direct_sum(tgt.base(), sources);
  MapBuilder b(ds.sum, tgt);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    for (const auto& e : maps[k].second.matrix().entries()) {
      b.add(e.row, ds.embed[k][e.col], e.value);
    }
  }
  return b.build();
}

SubBimodule span_in(const Bimodule& ambient, const std::vector<SparseVector>& vectors,
                    PivotOrder order) {
  return span_local(ambient, by_block(ambient, vectors, true), order);
}

SubBimodule whole(const Bimodule& ambient) {
  return {ambient, BimoduleMap::identity(ambient)};
}

SubBimodule kernel(const BimoduleMap& f) {
  std::map<BlockKey, std::vector<SparseVector>> local;
  for (auto b : f.source().nonzero_blocks()) {
    Subspace k = kernel_basis(f.block(b.first, b.second), f.field());
    if (k.dim()) local[b] = local_columns(k.basis);
  }
  return span_local(f.source(), local, PivotOrder::lowest);
}

SubBimodule image(const BimoduleMap& f) {
  std::map<BlockKey, std::vector<SparseVector>> local;
  for (auto b : f.target().nonzero_blocks()) {
    if (f.source().block_dim(b.first, b.second) == 0) continue;
    Subspace im = image_basis(f.block(b.first, b.second), f.field());
    if (im.dim()) local[b] = local_columns(im.basis);
  }
  return span_local(f.target(), local, PivotOrder::lowest);
}

SubBimodule intersect(const std::vector<SubBimodule>& subs) {
  if (subs.empty()) throw DimensionError("intersection of no sub-bimodules");
  const Bimodule& amb = subs[0].ambient();
  for (const auto& s : subs) {
    if (!(s.ambient() == amb)) throw DimensionError("intersecting sub-bimodules of different ambients");
  }
  std::map<BlockKey, std::vector<SparseVector>> local;
  for (auto b : amb.nonzero_blocks()) {
    const std::size_t n = amb.block_dim(b.first, b.second);
    std::vector<Subspace> spaces;
    bool empty = false;
    for (const auto& s : subs) {
      auto [vs, ids] = block_basis(s, b);
      if (vs.empty()) {
        empty = true;
        break;
      }
      spaces.push_back(Subspace{n, SparseMatrix::from_columns(n, vs)});
    }
    if (empty) continue;
    Subspace i = koszul::intersect(spaces, field_of(amb));
    if (i.dim()) local[b] = local_columns(i.basis);
  }
  return span_local(amb, local, PivotOrder::lowest);
}

bool contains(const SubBimodule& sub, const SparseVector& v) {
  return coordinates_in(sub, v).has_value();
}

std::optional<SparseVector> coordinates_in(const SubBimodule& sub, const SparseVector& v) {
  const Bimodule& amb = sub.ambient();
  SparseVector out;
  for (auto& [b, parts] : by_block(amb, {v}, false)) {
    auto [vs, ids] = block_basis(sub, b);
    SpanSolver solver(amb.block_dim(b.first, b.second), field_of(amb),
                      SpanSolver::Pivot::lowest, true);
    for (const auto& x : vs) solver.insert(x);
    auto c = solver.coordinates(parts[0]);
    if (!c) return std::nullopt;
    for (auto& [k, x] : *c) out.emplace_back(ids[k], x);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Quotient quotient(const SubBimodule& sub) {
  const Bimodule& amb = sub.ambient();
  const FieldSpec& field = field_of(amb);
  std::map<BlockKey, SpanSolver> solvers;
  std::map<BlockKey, std::vector<Label>> labels;
  std::map<BlockKey, std::vector<char>> is_pivot;
  for (auto b : amb.nonzero_blocks()) {
    const std::size_t n = amb.block_dim(b.first, b.second);
    const std::size_t off = amb.block_offset(b.first, b.second);
    SpanSolver solver(n, field, SpanSolver::Pivot::highest);
    for (const auto& x : block_basis(sub, b).first) solver.insert(x);
    std::vector<char> piv(n, 0);
    for (auto p : solver.pivots()) piv[p] = 1;
    auto& ls = labels[b];
    for (std::size_t i = 0; i < n; ++i) {
      if (!piv[i]) ls.push_back(amb.label(off + i));
    }
    is_pivot.emplace(b, std::move(piv));
    solvers.emplace(b, std::move(solver));
  }
  Bimodule space = Bimodule::from_blocks(amb.base(), labels);
  MapBuilder proj(amb, space), sec(space, amb);
  for (auto& [b, solver] : solvers) {
    const std::size_t n = amb.block_dim(b.first, b.second);
    const std::size_t off = amb.block_offset(b.first, b.second);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto col = static_cast<std::uint32_t>(off + i);
      if (!is_pivot[b][i]) {
        const auto k = space.index(b.first, b.second, amb.label(col));
        proj.add(k, col, Scalar(1));
        sec.add(col, k, Scalar(1));
        continue;
      }
      for (const auto& [j, x] : solver.remainder({{i, Scalar(1)}})) {
        proj.add(space.index(b.first, b.second, amb.label(off + j)), col, x);
      }
    }
  }
  return {space, proj.build(), sec.build()};
}

}  // namespace koszul

namespace koszul {

BimoduleMap factor_through(const BimoduleMap& f, const BimoduleMap& inj) {
  if (!(f.target() == inj.target())) throw DimensionError("factor_through: targets differ");
  const Bimodule& amb = f.target();
  MapBuilder out(f.source(), inj.source());
  const SparseMatrix& J = inj.matrix();
  const SparseMatrix& F = f.matrix();
  for (auto b : f.source().nonzero_blocks()) {
    const std::size_t ao = amb.block_offset(b.first, b.second);
    const std::size_t io = inj.source().block_offset(b.first, b.second);
    const std::size_t in = inj.source().block_dim(b.first, b.second);
    SpanSolver solver(amb.block_dim(b.first, b.second), field_of(amb),
                      SpanSolver::Pivot::lowest, true);
    for (std::size_t k = io; k < io + in; ++k) {
      SparseVector v;
      for (std::size_t e = J.col_begin(k); e < J.col_end(k); ++e) {
        v.emplace_back(static_cast<std::uint32_t>(J.row_index(e) - ao), J.value(e));
      }
      if (!solver.insert(v)) throw InternalError("factor_through: map is not injective");
    }
    const std::size_t so = f.source().block_offset(b.first, b.second);
    for (std::size_t c = so; c < so + f.source().block_dim(b.first, b.second); ++c) {
      SparseVector v;
      for (std::size_t e = F.col_begin(c); e < F.col_end(c); ++e) {
        v.emplace_back(static_cast<std::uint32_t>(F.row_index(e) - ao), F.value(e));
      }
      auto x = solver.coordinates(v);
      if (!x) throw InternalError("factor_through: image leaves the subspace");
      for (auto& [k, val] : *x) {
        out.add(static_cast<std::uint32_t>(io + k), static_cast<std::uint32_t>(c), val);
      }
    }
  }
  return out.build();
}

}  // namespace koszul

namespace koszul {

HomologyClasses homology_classes(const SubBimodule& cycles, const SubBimodule& boundaries) {
  const Bimodule& amb = cycles.ambient();
  if (!(boundaries.ambient() == amb)) throw DimensionError("homology: ambient spaces differ");
  struct Block {
    SpanSolver solver;
    std::size_t nb = 0, nh = 0;
    std::vector<SparseVector> reps;
    std::vector<Label> names;
  };
  std::map<BlockKey, Block> blocks;
  std::map<BlockKey, std::vector<Label>> labels;
  for (auto b : amb.nonzero_blocks()) {
    const std::size_t n = amb.block_dim(b.first, b.second);
    const std::size_t off = amb.block_offset(b.first, b.second);
    Block blk{SpanSolver(n, field_of(amb), SpanSolver::Pivot::lowest, true), 0, 0, {}, {}};
    for (const auto& x : block_basis(boundaries, b).first) {
      if (!blk.solver.insert(x)) throw InternalError("homology: boundary basis is dependent");
      ++blk.nb;
    }
    for (const auto& z : block_basis(cycles, b).first) {
      if (blk.solver.insert(z)) {
        blk.reps.push_back(z);
        ++blk.nh;
      }
    }
    if (blk.solver.rank() != cycles.space.block_dim(b.first, b.second)) {
      throw InternalError("homology: boundaries are not cycles");
    }
    const auto piv = blk.solver.pivots();
    auto& ls = labels[b];
    for (std::size_t k = 0; k < blk.nh; ++k) {
      blk.names.push_back(amb.label(off + piv[blk.nb + k]));
      ls.push_back(blk.names.back());
    }
    for (std::uint32_t i = 0; i < n; ++i) blk.solver.insert({{i, Scalar(1)}});
    blocks.emplace(b, std::move(blk));
  }
  Bimodule space = Bimodule::from_blocks(amb.base(), std::move(labels));
  MapBuilder reps(space, amb), proj(amb, space);
  for (auto& [b, blk] : blocks) {
    if (blk.nh == 0) continue;
    const std::size_t off = amb.block_offset(b.first, b.second);
    // Labels are sorted inside a block, so class k sits at hidx[k].
    std::vector<std::uint32_t> hidx;
    for (const auto& l : blk.names) hidx.push_back(space.index(b.first, b.second, l));
    for (std::size_t k = 0; k < blk.nh; ++k) {
      for (const auto& [i, x] : blk.reps[k]) {
        reps.add(static_cast<std::uint32_t>(off + i), hidx[k], x);
      }
    }
    const std::size_t n = amb.block_dim(b.first, b.second);
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto coords = blk.solver.coordinates({{i, Scalar(1)}});
      for (const auto& [k, x] : *coords) {
        if (k < blk.nb || k >= blk.nb + blk.nh) continue;
        proj.add(hidx[k - blk.nb], static_cast<std::uint32_t>(off + i), x);
      }
    }
  }
  return {space, reps.build(), proj.build()};
}

}  // namespace koszul
