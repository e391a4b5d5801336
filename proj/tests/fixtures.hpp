#pragma once

// Small posets used throughout the tests.

#include <string>
#include <vector>

#include "koszul/poset.hpp"

namespace fixtures {

inline koszul::GradedPoset diamond() {
  return koszul::GradedPoset::from_covers({"0", "a", "b", "1"},
                                          {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}});
}

// 0 < 1 < … < n, length n.
inline koszul::GradedPoset chain(std::size_t n) {
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> cov;
  for (std::size_t i = 0; i <= n; ++i) el.push_back(std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) cov.emplace_back(el[i], el[i + 1]);
  return koszul::GradedPoset::from_covers(el, cov);
}

inline koszul::GradedPoset antichain(std::size_t n) {
  std::vector<std::string> el;
  for (std::size_t i = 0; i < n; ++i) el.push_back("x" + std::to_string(i));
  return koszul::GradedPoset::from_covers(el, {});
}

// Two disjoint chains 0<a<c<1, 0<b<d<1: graded but not Koszul.
inline koszul::GradedPoset p_bad() {
  return koszul::GradedPoset::from_covers(
      {"0", "a", "b", "c", "d", "1"},
      {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"b", "d"}, {"c", "1"}, {"d", "1"}});
}

}  // namespace fixtures
