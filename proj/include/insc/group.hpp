#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "insc/linalg.hpp"

namespace insc {

inline std::string matrix_key(const MatQ& m) {
  std::string key;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      key += rat_to_string(m(i, j));
      key += ',';
    }
  return key;
}

// Closure of orthogonal generators under multiplication; none when the
// group would exceed max_order (infinite groups included).
inline std::optional<std::vector<MatQ>> group_closure(
    const std::vector<MatQ>& generators, long max_order) {
  if (max_order < 1) throw error("BadParams", "max_order must be >= 1");
  int d = 0;
  for (const MatQ& g : generators) {
    if (!is_orthogonal_matrix(g)) throw error("NotOrthogonal", "generator is not orthogonal");
    d = static_cast<int>(g.rows());
  }
  if (generators.empty()) return std::vector<MatQ>{};
  std::vector<MatQ> gens = generators;
  for (const MatQ& g : generators) gens.push_back(g.transpose());  // inverses

  std::map<std::string, int> seen;
  std::vector<MatQ> elems;
  MatQ id = MatQ::Identity(d, d);
  seen[matrix_key(id)] = 0;
  elems.push_back(id);
  for (std::size_t head = 0; head < elems.size(); ++head) {
    MatQ cur = elems[head];
    for (const MatQ& g : gens) {
      MatQ nxt = g * cur;
      std::string key = matrix_key(nxt);
      if (seen.emplace(key, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(nxt));
        if (static_cast<long>(elems.size()) > max_order) return std::nullopt;
      }
    }
  }
  return elems;
}

}  // namespace insc
