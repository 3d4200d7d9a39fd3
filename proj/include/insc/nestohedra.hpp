#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "insc/polytope.hpp"

namespace insc {

// Family of subsets of {1..ground} closed under union of intersecting
// members. Sets are bitmasks over 0-based elements.
struct BuildingSet {
  int ground = 0;
  std::vector<unsigned> sets;  // distinct, nonempty
};

inline BuildingSet make_building_set(int ground, const std::vector<std::vector<int>>& sets) {
  if (ground < 1 || ground > 20) throw error("BadParams", "ground size out of range");
  BuildingSet b;
  b.ground = ground;
  std::set<unsigned> seen;
  for (const auto& s : sets) {
    unsigned m = 0;
    for (int x : s) {
      if (x < 1 || x > ground) throw error("BadParams", "element outside the ground set");
      m |= 1u << (x - 1);
    }
    if (m == 0) throw error("BadParams", "empty set in building set");
    seen.insert(m);
  }
  b.sets.assign(seen.begin(), seen.end());
  return b;
}

inline bool is_building_set(const BuildingSet& b) {
  std::set<unsigned> have(b.sets.begin(), b.sets.end());
  for (unsigned i : b.sets)
    for (unsigned j : b.sets)
      if ((i & j) != 0 && !have.count(i | j)) return false;
  return true;
}

inline void check_building_set(const BuildingSet& b) {
  if (!is_building_set(b))
    throw error("NotABuildingSet", "union of intersecting members missing");
}

inline BuildingSet restriction(const BuildingSet& b, unsigned jmask) {
  BuildingSet out;
  out.ground = b.ground;
  for (unsigned s : b.sets)
    if ((s & ~jmask) == 0) out.sets.push_back(s);
  return out;
}

// |{I in B : i,j in I, k not in I}|, elements 1-based.
inline int counts(const BuildingSet& b, int i, int j, int k) {
  unsigned mi = 1u << (i - 1), mj = 1u << (j - 1), mk = 1u << (k - 1);
  int n = 0;
  for (unsigned s : b.sets)
    if ((s & mi) && (s & mj) && !(s & mk)) ++n;
  return n;
}

namespace detail {

inline bool triple_condition(const BuildingSet& bj, int i, int j, int k) {
  int a = counts(bj, i, j, k);
  int b = counts(bj, j, k, i);
  int c = counts(bj, i, k, j);
  int pos = (a > 0) + (b > 0) + (c > 0);
  if (pos < 2) return true;
  return a == b && b == c;
}

}  // namespace detail

// Combinatorial inscribability criterion, quantified over all restrictions.
// The default enumeration prunes J to unions of up to three members of B
// together with the triple; restricted counts only change when J gains or
// loses whole members, so these unions exhaust the reachable count
// patterns. The naive 2^d sweep is kept as an oracle switch.
inline bool is_inscribed_nestohedron(const BuildingSet& b, bool naive_oracle = false) {
  check_building_set(b);
  if (naive_oracle) {
    if (b.ground > 14) throw error("TooLarge", "naive sweep capped at ground size 14");
    for (unsigned jmask = 1; jmask < (1u << b.ground); ++jmask) {
      if (__builtin_popcount(jmask) < 3) continue;
      BuildingSet bj = restriction(b, jmask);
      for (int i = 1; i <= b.ground; ++i)
        for (int j = i + 1; j <= b.ground; ++j)
          for (int k = j + 1; k <= b.ground; ++k) {
            unsigned tri = (1u << (i - 1)) | (1u << (j - 1)) | (1u << (k - 1));
            if ((tri & ~jmask) != 0) continue;
            if (!detail::triple_condition(bj, i, j, k)) return false;
          }
    }
    return true;
  }
  for (int i = 1; i <= b.ground; ++i)
    for (int j = i + 1; j <= b.ground; ++j)
      for (int k = j + 1; k <= b.ground; ++k) {
        unsigned tri = (1u << (i - 1)) | (1u << (j - 1)) | (1u << (k - 1));
        std::set<unsigned> candidates = {tri};
        std::vector<unsigned> pool = b.sets;
        pool.push_back(0);
        for (unsigned s1 : pool)
          for (unsigned s2 : pool)
            for (unsigned s3 : pool) candidates.insert(tri | s1 | s2 | s3);
        for (unsigned jmask : candidates) {
          BuildingSet bj = restriction(b, jmask);
          if (!detail::triple_condition(bj, i, j, k)) return false;
        }
      }
  return true;
}

inline bool is_delta_closed(const BuildingSet& b) {
  check_building_set(b);
  std::set<unsigned> have(b.sets.begin(), b.sets.end());
  for (unsigned i : b.sets)
    for (unsigned j : b.sets) {
      if ((i & j) == 0) continue;
      if ((i & ~j) == 0 || (j & ~i) == 0) continue;  // comparable
      if (!have.count(i ^ j)) return false;
    }
  return true;
}

inline BuildingSet graphical_building_set(int d, const std::vector<std::pair<int, int>>& edges) {
  if (d < 1 || d > 20) throw error("BadParams", "graph size out of range");
  std::vector<unsigned> adj(d, 0);
  for (auto [a, bn] : edges) {
    if (a < 1 || a > d || bn < 1 || bn > d || a == bn)
      throw error("BadParams", "bad graph edge");
    adj[a - 1] |= 1u << (bn - 1);
    adj[bn - 1] |= 1u << (a - 1);
  }
  BuildingSet b;
  b.ground = d;
  for (unsigned m = 1; m < (1u << d); ++m) {
    // connectivity of the induced subgraph by bit-BFS
    unsigned start = m & (~m + 1);
    unsigned comp = start, frontier = start;
    while (frontier) {
      unsigned next = 0;
      for (int v = 0; v < d; ++v)
        if (frontier >> v & 1) next |= adj[v] & m & ~comp;
      comp |= next;
      frontier = next;
    }
    if (comp == m) b.sets.push_back(m);
  }
  return b;
}

// Minkowski sum of the coordinate simplices of the members.
inline Polytope<Rat> nestohedron_polytope(const BuildingSet& b) {
  check_building_set(b);
  if (b.ground > 7) throw error("TooLarge", "nestohedron realization capped at ground size 7");
  Polytope<Rat> acc;
  bool first = true;
  for (unsigned s : b.sets) {
    std::vector<VecQ> pts;
    for (int i = 0; i < b.ground; ++i)
      if (s >> i & 1) {
        VecQ e = VecQ::Zero(b.ground);
        e(i) = 1;
        pts.push_back(e);
      }
    Polytope<Rat> simplex = convex_hull(pts);
    acc = first ? simplex : minkowski_sum(acc, simplex);
    first = false;
  }
  return acc;
}

}  // namespace insc
