#include "koszul/poset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "koszul/errors.hpp"

namespace koszul {

namespace {

using Covers = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct Analysis {
  std::vector<std::vector<int>> length;
  std::size_t max_length = 0;
  std::string error;  // empty when graded
};

// Longest and shortest cover paths between every comparable pair; the poset
// is graded iff they agree.
Analysis analyze(std::size_t n, const Covers& covers) {
  Analysis out;
  std::vector<std::vector<std::uint32_t>> up(n);
  std::vector<std::size_t> indeg(n, 0);
  for (auto [a, b] : covers) {
    up[a].push_back(b);
    ++indeg[b];
  }
  std::vector<std::uint32_t> order;
  for (std::uint32_t i = 0; i < n; ++i)
    if (indeg[i] == 0) order.push_back(i);
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (auto b : up[order[k]])
      if (--indeg[b] == 0) order.push_back(b);
  }
  if (order.size() != n) {
    out.error = "the covers contain a cycle";
    return out;
  }
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;

  out.length.assign(n, std::vector<int>(n, -1));
  for (std::uint32_t x = 0; x < n; ++x) {
    std::vector<int> lo(n, -1), hi(n, -1);
    lo[x] = hi[x] = 0;
    for (std::size_t k = pos[x]; k < n; ++k) {
      const auto a = order[k];
      if (lo[a] < 0) continue;
      for (auto b : up[a]) {
        lo[b] = lo[b] < 0 ? lo[a] + 1 : std::min(lo[b], lo[a] + 1);
        hi[b] = std::max(hi[b], hi[a] + 1);
      }
    }
    for (std::uint32_t y = 0; y < n; ++y) {
      if (lo[y] < 0) continue;
      if (lo[y] != hi[y]) {
        out.error = "[" + std::to_string(x) + "," + std::to_string(y) + "]: maximal chains of lengths " +
                    std::to_string(lo[y]) + " and " + std::to_string(hi[y]);
        return out;
      }
      out.length[x][y] = lo[y];
      out.max_length = std::max<std::size_t>(out.max_length, lo[y]);
    }
  }
  return out;
}

std::string name_interval(const std::vector<std::string>& names, const std::string& msg) {
  // Replace the numeric "[x,y]" prefix produced by analyze with labels.
  if (msg.empty() || msg[0] != '[') return msg;
  const auto comma = msg.find(',');
  const auto close = msg.find(']');
  const auto x = std::stoul(msg.substr(1, comma - 1));
  const auto y = std::stoul(msg.substr(comma + 1, close - comma - 1));
  return "non-graded interval [" + names[x] + "," + names[y] + "]" + msg.substr(close + 1);
}

}  // namespace

GradedPoset GradedPoset::from_covers(
    std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& covers) {
  GradedPoset p;
  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < elements.size(); ++i) {
    if (!index.emplace(elements[i], i).second) {
      throw InputError("duplicate element label '" + elements[i] + "'");
    }
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& [a, b] : covers) {
    const auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw InputError("cover uses unknown element '" + a + "'");
    if (ib == index.end()) throw InputError("cover uses unknown element '" + b + "'");
    if (ia->second == ib->second) throw InputError("the covers contain a cycle at '" + a + "'");
    if (!seen.emplace(ia->second, ib->second).second) {
      throw InputError("repeated cover " + a + " < " + b);
    }
  }
  p.covers_.assign(seen.begin(), seen.end());
  Analysis an = analyze(elements.size(), p.covers_);
  if (!an.error.empty()) throw InputError(name_interval(elements, an.error));
  p.elements_ = std::move(elements);
  p.length_ = std::move(an.length);
  p.max_length_ = an.max_length;
  return p;
}

std::optional<std::uint32_t> GradedPoset::index_of(const std::string& label) const {
  for (std::uint32_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == label) return i;
  return std::nullopt;
}

std::optional<std::size_t> GradedPoset::length(std::uint32_t x, std::uint32_t y) const {
  if (length_[x][y] < 0) return std::nullopt;
  return static_cast<std::size_t>(length_[x][y]);
}

std::vector<Interval> GradedPoset::intervals(std::size_t p) const {
  std::vector<Interval> out;
  for (std::uint32_t x = 0; x < size(); ++x)
    for (std::uint32_t y = 0; y < size(); ++y)
      if (length_[x][y] == static_cast<int>(p)) out.push_back({x, y, p});
  return out;
}

std::vector<std::uint32_t> GradedPoset::open_interval(std::uint32_t x, std::uint32_t y) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t z = 0; z < size(); ++z)
    if (z != x && z != y && leq(x, z) && leq(z, y)) out.push_back(z);
  return out;
}

GradedPoset parse_poset(const std::string& document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("poset document is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array()) {
    throw InputError("poset document needs an \"elements\" array");
  }
  std::vector<std::string> elements;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw InputError("element labels must be strings");
    elements.push_back(e.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    if (!j["covers"].is_array()) throw InputError("\"covers\" must be an array");
    for (const auto& c : j["covers"]) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string()) {
        throw InputError("each cover must be a pair of labels [lower, upper]");
      }
      covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
  }
  return GradedPoset::from_covers(std::move(elements), covers);
}

GradedPoset load_poset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read poset file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_poset(ss.str());
}

std::string poset_to_json(const GradedPoset& p) {
  nlohmann::json j;
  j["elements"] = p.elements();
  j["covers"] = nlohmann::json::array();
  for (auto [a, b] : p.covers()) j["covers"].push_back({p.element(a), p.element(b)});
  return j.dump();
}

// ---------------------------------------------------------------------------

std::string incidence_atom(const GradedPoset& p, std::uint32_t x, std::uint32_t y) {
  return "e_{" + p.element(x) + "," + p.element(y) + "}";
}

Base poset_base(const GradedPoset& p, const FieldSpec& field) {
  return make_base(p.elements(), field);
}

namespace {

std::vector<Bimodule> incidence_components(const GradedPoset& p, const Base& base) {
  std::vector<Bimodule> comps{Bimodule::regular(base)};
  for (std::size_t n = 1; n <= p.max_length(); ++n) {
    std::map<BlockKey, std::vector<Label>> blocks;
    for (const auto& iv : p.intervals(n)) {
      blocks[{iv.lower, iv.upper}] = {{incidence_atom(p, iv.lower, iv.upper)}};
    }
    comps.push_back(Bimodule::from_blocks(base, std::move(blocks)));
  }
  return comps;
}

}  // namespace

GradedRing incidence_ring(const GradedPoset& p, const FieldSpec& field) {
  const Base base = poset_base(p, field);
  auto comps = incidence_components(p, base);
  const std::size_t top = p.max_length();
  std::map<Degrees, BimoduleMap> mult;
  for (std::size_t a = 1; a < top; ++a) {
    for (std::size_t b = 1; a + b <= top; ++b) {
      const Bimodule src = tensor(comps[a], comps[b]);
      MapBuilder m(src, comps[a + b]);
      // Every composable pair e_{x,z}⊗e_{z,y} in block (x,y) goes to e_{x,y}.
      for (std::uint32_t k = 0; k < src.dim(); ++k) {
        const auto [x, y] = src.block_of(k);
        m.add(comps[a + b].index(x, y, {incidence_atom(p, x, y)}), k, 1);
      }
      mult.emplace(Degrees{a, b}, m.build());
    }
  }
  return GradedRing(base, std::move(comps), std::move(mult));
}

GradedCoring incidence_coring(const GradedPoset& p, const FieldSpec& field) {
  const Base base = poset_base(p, field);
  auto comps = incidence_components(p, base);
  const std::size_t top = p.max_length();
  std::map<Degrees, BimoduleMap> comult;
  for (std::size_t a = 1; a < top; ++a) {
    for (std::size_t b = 1; a + b <= top; ++b) {
      const Bimodule tgt = tensor(comps[a], comps[b]);
      MapBuilder d(comps[a + b], tgt);
      for (std::uint32_t k = 0; k < tgt.dim(); ++k) {
        const auto [x, y] = tgt.block_of(k);
        d.add(k, comps[a + b].index(x, y, {incidence_atom(p, x, y)}), 1);
      }
      comult.emplace(Degrees{a, b}, d.build());
    }
  }
  return GradedCoring(base, std::move(comps), std::move(comult));
}

GradedRing zeta_ring(const GradedPoset& p, const FieldSpec& field) {
  const Base base = poset_base(p, field);
  const auto comps = incidence_components(p, base);
  const Bimodule v = comps.size() > 1 ? comps[1] : Bimodule::zero(base);
  const Bimodule vv = tensor(v, v);
  std::vector<SparseVector> zetas;
  for (const auto& iv : p.intervals(2)) {
    SparseVector z;
    for (auto m : p.open_interval(iv.lower, iv.upper)) {
      z.emplace_back(vv.index(iv.lower, iv.upper,
                              {incidence_atom(p, iv.lower, m), incidence_atom(p, m, iv.upper)}),
                     1);
    }
    std::sort(z.begin(), z.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    zetas.push_back(std::move(z));
  }
  QuadraticData data{v, span_in(vv, zetas)};
  return quadratic_ring_of(data, tensor_support(v, p.size()));
}

// ---------------------------------------------------------------------------

GradedPoset disjoint_union(const GradedPoset& p, const GradedPoset& q) {
  bool clash = false;
  for (const auto& e : q.elements()) clash |= p.index_of(e).has_value();
  const std::string lp = clash ? "1:" : "", lq = clash ? "2:" : "";
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& e : p.elements()) elements.push_back(lp + e);
  for (const auto& e : q.elements()) elements.push_back(lq + e);
  for (auto [a, b] : p.covers()) covers.emplace_back(lp + p.element(a), lp + p.element(b));
  for (auto [a, b] : q.covers()) covers.emplace_back(lq + q.element(a), lq + q.element(b));
  return GradedPoset::from_covers(std::move(elements), covers);
}

namespace {

// Strict order as a bit matrix; lt[i] has bit j set iff i < j.
std::vector<std::uint32_t> strict_order(std::size_t n, const Covers& covers) {
  std::vector<std::uint32_t> lt(n, 0);
  for (auto [a, b] : covers) lt[a] |= 1u << b;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t r = lt[i];
      for (std::size_t j = 0; j < n; ++j)
        if (lt[i] >> j & 1) r |= lt[j];
      if (r != lt[i]) lt[i] = r, changed = true;
    }
  }
  return lt;
}

struct Canonical {
  std::string form;
  std::vector<std::uint32_t> order;  // order[k] = original index placed at k
};

// Colour refinement on (#below, #above, neighbour colours), then the
// lexicographically least order matrix over orderings within colour classes.
Canonical canonicalize(std::size_t n, const Covers& covers) {
  const auto lt = strict_order(n, covers);
  std::vector<std::uint32_t> gt(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lt[i] >> j & 1) gt[j] |= 1u << i;

  std::vector<std::size_t> colour(n, 0);
  for (std::size_t round = 0;; ++round) {
    std::vector<std::vector<std::size_t>> sig(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> below, above;
      for (std::size_t j = 0; j < n; ++j) {
        if (gt[i] >> j & 1) below.push_back(colour[j]);
        if (lt[i] >> j & 1) above.push_back(colour[j]);
      }
      std::sort(below.begin(), below.end());
      std::sort(above.begin(), above.end());
      sig[i] = {colour[i], below.size(), above.size()};
      sig[i].insert(sig[i].end(), below.begin(), below.end());
      sig[i].push_back(SIZE_MAX);
      sig[i].insert(sig[i].end(), above.begin(), above.end());
    }
    std::vector<std::vector<std::size_t>> distinct(sig.begin(), sig.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::size_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = std::lower_bound(distinct.begin(), distinct.end(), sig[i]) - distinct.begin();
    }
    const bool stable = std::set<std::size_t>(next.begin(), next.end()).size() ==
                        std::set<std::size_t>(colour.begin(), colour.end()).size();
    colour = std::move(next);
    if (stable && round > 0) break;
  }

  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return colour[a] < colour[b]; });
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  for (std::size_t k = 0; k < n;) {
    std::size_t e = k;
    while (e < n && colour[perm[e]] == colour[perm[k]]) ++e;
    classes.emplace_back(k, e);
    k = e;
  }

  auto encode = [&](const std::vector<std::uint32_t>& order) {
    std::string s(n * n, '0');
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (lt[order[a]] >> order[b] & 1) s[a * n + b] = '1';
    return s;
  };

  Canonical best{encode(perm), perm};
  // Odometer over the permutations of every class.
  for (;;) {
    std::size_t c = classes.size();
    while (c > 0) {
      auto [b, e] = classes[c - 1];
      if (std::next_permutation(perm.begin() + b, perm.begin() + e)) break;
      --c;
    }
    if (c == 0) break;
    const std::string s = encode(perm);
    if (s < best.form) best = {s, perm};
  }
  best.form = std::to_string(n) + ":" + best.form;
  return best;
}

}  // namespace

std::string canonical_form(const GradedPoset& p) {
  if (p.size() > 32) throw InputError("canonical form supports at most 32 elements");
  return canonicalize(p.size(), p.covers()).form;
}

std::vector<GradedPoset> enumerate_corpus(std::size_t min_elements, std::size_t max_elements,
                                          std::size_t max_length) {
  if (max_elements > 12) throw InputError("corpus enumeration supports at most 12 elements");
  std::vector<GradedPoset> out;
  // Every graded poset on n elements arises from one on n − 1 elements by
  // adjoining a maximal element above a down-set; removing a maximal element
  // keeps every remaining interval, so gradedness is inherited.
  std::map<std::string, Covers> level;
  if (max_elements >= 1) level.emplace(canonicalize(1, {}).form, Covers{});
  for (std::size_t n = 1; n <= max_elements; ++n) {
    if (n >= min_elements) {
      for (const auto& [form, covers] : level) {
        const Canonical c = canonicalize(n, covers);
        std::vector<std::uint32_t> where(n);
        for (std::uint32_t k = 0; k < n; ++k) where[c.order[k]] = k;
        std::vector<std::string> names;
        for (std::size_t k = 0; k < n; ++k) names.push_back(std::to_string(k));
        std::vector<std::pair<std::string, std::string>> named;
        for (auto [a, b] : covers) named.emplace_back(names[where[a]], names[where[b]]);
        std::sort(named.begin(), named.end());
        out.push_back(GradedPoset::from_covers(names, named));
      }
    }
    if (n == max_elements) break;
    std::map<std::string, Covers> next;
    for (const auto& [form, covers] : level) {
      const auto lt = strict_order(n, covers);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool down_closed = true;
        for (std::size_t j = 0; j < n && down_closed; ++j) {
          if (!(mask >> j & 1)) continue;
          for (std::size_t i = 0; i < n; ++i)
            if ((lt[i] >> j & 1) && !(mask >> i & 1)) down_closed = false;
        }
        if (!down_closed) continue;
        Covers ext = covers;
        for (std::uint32_t j = 0; j < n; ++j) {
          if (!(mask >> j & 1) || (lt[j] & mask)) continue;  // maximal in the down-set
          ext.emplace_back(j, static_cast<std::uint32_t>(n));
        }
        const Analysis an = analyze(n + 1, ext);
        if (!an.error.empty() || an.max_length > max_length) continue;
        std::string key = canonicalize(n + 1, ext).form;
        next.emplace(std::move(key), std::move(ext));
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace koszul
