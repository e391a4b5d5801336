#pragma once

// The Koszul complex K^l_•(A, A^!, m) of an incidence ring, assembled from
// saturated chains with dense matrices. A^!_n is computed here as the common
// kernel of the "merge two adjacent covers" maps, independently of the
// library's shriek construction.

#include <map>
#include <vector>

#include "koszul/poset.hpp"
#include "poset_oracle.hpp"

namespace oracle {

using Column = std::vector<mpq_class>;

// Null space of a dense matrix with `cols` columns, as column vectors.
inline std::vector<Column> null_space(Dense a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const mpq_class inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<Column> out;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Column v(cols);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a[k][f];
    out.push_back(v);
  }
  return out;
}

// Saturated chains z_0 ⋖ z_1 ⋖ … ⋖ z_n.
inline std::vector<Chain> saturated_chains(const koszul::GradedPoset& p, std::size_t n) {
  std::vector<Chain> out;
  for (const auto& c : chains(p, n, n)) out.push_back(c);
  return out;
}

// Basis of A^!_n inside the span of saturated chains with n steps, one block
// (z_0, z_n) at a time.
inline std::vector<std::map<Chain, mpq_class>> shriek_basis(const koszul::GradedPoset& p,
                                                            std::size_t n) {
  const auto all = saturated_chains(p, n);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Chain>> blocks;
  for (const auto& c : all) blocks[{c.front(), c.back()}].push_back(c);
  std::vector<std::map<Chain, mpq_class>> out;
  for (const auto& [key, cs] : blocks) {
    std::map<Chain, std::size_t> row;
    for (const auto& c : cs) {
      for (std::size_t i = 1; i + 1 <= n; ++i) {
        Chain t = c;
        t.erase(t.begin() + i);
        t.push_back(static_cast<std::uint32_t>(i));  // which pair was merged
        row.emplace(t, row.size());
      }
    }
    Dense m(row.size(), std::vector<mpq_class>(cs.size()));
    for (std::size_t j = 0; j < cs.size(); ++j) {
      for (std::size_t i = 1; i + 1 <= n; ++i) {
        Chain t = cs[j];
        t.erase(t.begin() + i);
        t.push_back(static_cast<std::uint32_t>(i));
        m[row.at(t)][j] += 1;
      }
    }
    for (const auto& v : null_space(m, cs.size())) {
      std::map<Chain, mpq_class> vec;
      for (std::size_t j = 0; j < cs.size(); ++j)
        if (v[j] != 0) vec[cs[j]] = v[j];
      out.push_back(vec);
    }
  }
  return out;
}

// A K^l_n(m) cell: an interval [x, y] of length m − n followed by a saturated
// chain starting at y, stored as (x, chain).
using Cell = std::pair<std::uint32_t, Chain>;

// Columns spanning K^l_n(m) in cell coordinates, and d applied to them.
struct KoszulLevel {
  std::vector<std::map<Cell, mpq_class>> basis;
};

inline KoszulLevel koszul_level(const koszul::GradedPoset& p, std::size_t n, std::size_t m) {
  KoszulLevel lv;
  if (n > m) return lv;
  const auto shriek = shriek_basis(p, n);
  for (std::uint32_t x = 0; x < p.size(); ++x) {
    for (std::uint32_t y = 0; y < p.size(); ++y) {
      const auto l = p.length(x, y);
      if (!l || *l != m - n) continue;
      for (const auto& k : shriek) {
        if (k.begin()->first.front() != y) continue;
        std::map<Cell, mpq_class> v;
        for (const auto& [c, coef] : k) v[{x, c}] = coef;
        lv.basis.push_back(v);
      }
    }
  }
  return lv;
}

// e_{x,y}⊗(y ⋖ z_1 ⋖ …) ↦ e_{x,z_1}⊗(z_1 ⋖ …).
inline std::map<Cell, mpq_class> koszul_d(const std::map<Cell, mpq_class>& v) {
  std::map<Cell, mpq_class> out;
  for (const auto& [cell, coef] : v) {
    if (cell.second.size() < 2) continue;
    Chain rest(cell.second.begin() + 1, cell.second.end());
    out[{cell.first, rest}] += coef;
  }
  return out;
}

inline std::size_t rank_of_columns(const std::vector<std::map<Cell, mpq_class>>& cols) {
  std::map<Cell, std::size_t> row;
  for (const auto& c : cols)
    for (const auto& [cell, coef] : c)
      if (coef != 0) row.emplace(cell, row.size());
  if (row.empty()) return 0;
  Dense d(row.size(), std::vector<mpq_class>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [cell, coef] : cols[j])
      if (coef != 0) d[row.at(cell)][j] = coef;
  return dense_rank(d);
}

// dim H_n(K^l_•(A, A^!, m)) for m ≥ 1 (no augmentation term there).
inline std::size_t koszul_homology(const koszul::GradedPoset& p, std::size_t n, std::size_t m) {
  const auto here = koszul_level(p, n, m).basis;
  const auto above = koszul_level(p, n + 1, m).basis;
  std::vector<std::map<Cell, mpq_class>> dh, da;
  for (const auto& v : here) dh.push_back(koszul_d(v));
  for (const auto& v : above) da.push_back(koszul_d(v));
  return here.size() - rank_of_columns(dh) - rank_of_columns(da);
}

}  // namespace oracle
