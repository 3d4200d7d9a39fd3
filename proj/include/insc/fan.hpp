#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "insc/lp.hpp"
#include "insc/polytope.hpp"

namespace insc {

// One undirected wall, stored once with from < to; the stored normal is the
// outer normal of `from` (alpha_{to,from} = -normal).
template <class S>
struct Wall {
  int from = 0, to = 0;
  Vec<S> normal;
};

template <class S>
struct Fan {
  int ambient_dim = 0;
  int num_regions = 0;
  std::vector<Wall<S>> walls;
  std::vector<std::vector<int>> link_cycles;  // region cycles around codim-2 cones
  std::vector<Mat<S>> region_generators;      // optional, rows per region
  std::vector<Vec<S>> region_reps;            // optional interior point per region
  Mat<S> lineality;                           // rows; may be 0 x ambient_dim

  bool has_reps() const { return static_cast<int>(region_reps.size()) == num_regions; }
};

struct FanReport {
  bool ok = true;
  std::vector<std::string> violations;
  void flag(const std::string& v) {
    ok = false;
    violations.push_back(v);
  }
};

// Raw directed wall list (possibly with antisymmetric twins) -> canonical fan.
template <class S>
Fan<S> fan_from_raw_walls(int dim, int num_regions,
                          const std::vector<std::tuple<int, int, Vec<S>>>& raw,
                          const S& tol = scalar_traits<S>::default_tol()) {
  Fan<S> f;
  f.ambient_dim = dim;
  f.num_regions = num_regions;
  f.lineality.resize(0, dim);
  std::map<std::pair<int, int>, Vec<S>> seen;
  for (const auto& [a, b, n] : raw) {
    if (a < 0 || b < 0 || a >= num_regions || b >= num_regions || a == b)
      throw error("InvalidFan", "wall endpoints out of range");
    seen.emplace(std::make_pair(a, b), n);
  }
  S scale(1);
  for (const auto& [k, n] : seen) {
    S m = max_abs(Mat<S>(n));
    if (m > scale) scale = m;
  }
  std::set<std::pair<int, int>> done;
  for (const auto& [key, n] : seen) {
    auto [a, b] = key;
    if (done.count({b, a})) continue;
    done.insert(key);
    auto twin = seen.find({b, a});
    if (twin != seen.end()) {
      Vec<S> sum = n + twin->second;
      for (int i = 0; i < dim; ++i)
        if (!near_zero(sum(i), tol, scale))
          throw error("InvalidFan", "antisymmetry violated on wall " + std::to_string(a) +
                                        "-" + std::to_string(b));
    }
    Wall<S> w;
    if (a < b) {
      w.from = a;
      w.to = b;
      w.normal = n;
    } else {
      w.from = b;
      w.to = a;
      w.normal = -n;
    }
    f.walls.push_back(std::move(w));
  }
  std::sort(f.walls.begin(), f.walls.end(), [](const Wall<S>& x, const Wall<S>& y) {
    return std::make_pair(x.from, x.to) < std::make_pair(y.from, y.to);
  });
  return f;
}

// region -> list of (wall index, sign); stored normal times sign is the
// outer normal of that region.
template <class S>
std::vector<std::vector<std::pair<int, int>>> region_wall_index(const Fan<S>& f) {
  std::vector<std::vector<std::pair<int, int>>> idx(f.num_regions);
  for (int w = 0; w < static_cast<int>(f.walls.size()); ++w) {
    idx[f.walls[w].from].push_back({w, +1});
    idx[f.walls[w].to].push_back({w, -1});
  }
  return idx;
}

template <class S>
int wall_between(const Fan<S>& f, int r, int s) {
  int a = std::min(r, s), b = std::max(r, s);
  for (int w = 0; w < static_cast<int>(f.walls.size()); ++w)
    if (f.walls[w].from == a && f.walls[w].to == b) return w;
  return -1;
}

// Outer normal of region r on the wall towards s.
template <class S>
Vec<S> normal_from(const Fan<S>& f, int r, int s) {
  int w = wall_between(f, r, s);
  if (w < 0) throw error("NotAWalk", "regions not adjacent");
  return f.walls[w].from == r ? f.walls[w].normal : Vec<S>(-f.walls[w].normal);
}

template <class S>
FanReport validate(const Fan<S>& f, const S& tol = scalar_traits<S>::default_tol()) {
  FanReport rep;
  if (f.num_regions <= 0) rep.flag("no regions");
  S scale(1);
  for (const auto& w : f.walls) {
    S m = max_abs(Mat<S>(w.normal));
    if (m > scale) scale = m;
  }
  for (const auto& w : f.walls) {
    if (w.normal.size() != f.ambient_dim) rep.flag("normal dimension mismatch");
    bool zero = true;
    for (int i = 0; i < w.normal.size() && zero; ++i)
      if (!near_zero(w.normal(i), tol, scale)) zero = false;
    if (zero)
      rep.flag("zero normal on wall " + std::to_string(w.from) + "-" + std::to_string(w.to));
  }
  // connectivity
  if (f.num_regions > 0) {
    std::vector<char> vis(f.num_regions, 0);
    std::deque<int> bfs = {0};
    vis[0] = 1;
    int count = 1;
    while (!bfs.empty()) {
      int r = bfs.front();
      bfs.pop_front();
      for (const auto& w : f.walls) {
        int other = w.from == r ? w.to : (w.to == r ? w.from : -1);
        if (other >= 0 && !vis[other]) {
          vis[other] = 1;
          ++count;
          bfs.push_back(other);
        }
      }
    }
    if (count != f.num_regions) rep.flag("dual graph disconnected");
  }
  if (!f.region_generators.empty()) {
    if (static_cast<int>(f.region_generators.size()) != f.num_regions) {
      rep.flag("generator list size mismatch");
    } else {
      auto idx = region_wall_index(f);
      for (int r = 0; r < f.num_regions; ++r)
        for (const auto& [w, sg] : idx[r]) {
          Vec<S> n = S(sg) * f.walls[w].normal;
          const Mat<S>& g = f.region_generators[r];
          for (int i = 0; i < g.rows(); ++i)
            if (sign_of(S(n.dot(Vec<S>(g.row(i).transpose()))), tol, scale) > 0)
              rep.flag("generator of region " + std::to_string(r) + " outside wall halfspace");
        }
    }
  }
  return rep;
}

template <class S>
void check_valid(const Fan<S>& f, const S& tol = scalar_traits<S>::default_tol()) {
  FanReport rep = validate(f, tol);
  if (!rep.ok) throw error("InvalidFan", rep.violations.front());
}

// Normal fan as a routing graph: regions are vertices of P, walls are edges
// with alpha = v_to - v_from (unnormalized keeps everything rational),
// link cycles are the 2-face vertex cycles.
template <class S>
Fan<S> normal_fan(const Polytope<S>& p, const S& tol = scalar_traits<S>::default_tol()) {
  if (p.dim < 1) throw error("BadParams", "normal fan needs dim >= 1");
  Fan<S> f;
  f.ambient_dim = p.ambient_dim;
  f.num_regions = static_cast<int>(p.vertices.size());
  FaceLattice<S> lat = face_lattice(p, tol);
  for (const auto& e : lat.faces_by_dim.at(1)) {
    if (e.size() != 2) throw error("InvalidFan", "non-segment edge in lattice");
    Wall<S> w;
    w.from = e[0];
    w.to = e[1];
    w.normal = p.vertices[e[1]] - p.vertices[e[0]];
    f.walls.push_back(std::move(w));
  }
  std::sort(f.walls.begin(), f.walls.end(), [](const Wall<S>& x, const Wall<S>& y) {
    return std::make_pair(x.from, x.to) < std::make_pair(y.from, y.to);
  });
  f.link_cycles = two_face_cycles(p, lat);
  f.region_generators.resize(f.num_regions);
  f.region_reps.resize(f.num_regions);
  for (int v = 0; v < f.num_regions; ++v) {
    std::vector<Vec<S>> rows;
    for (const auto& fc : p.facets)
      if (std::binary_search(fc.vertex_ids.begin(), fc.vertex_ids.end(), v))
        rows.push_back(fc.normal);
    f.region_generators[v] = mat_from_rows(rows, p.ambient_dim);
    Vec<S> rep = Vec<S>::Zero(p.ambient_dim);
    for (const auto& r : rows) rep += r;
    f.region_reps[v] = rep;
  }
  f.lineality = kernel(Mat<S>(p.aff_dirs), tol).basis;
  return f;
}

struct CycleBasis {
  std::vector<int> spanning_tree;                  // wall indices
  std::vector<std::vector<int>> fundamental_cycles;  // closed region walks
  std::vector<int> parent;                          // BFS parent region (-1 root)
  std::vector<int> parent_wall;                     // wall to parent
};

template <class S>
CycleBasis cycle_basis(const Fan<S>& f, int root = 0) {
  check_valid(f);
  CycleBasis cb;
  cb.parent.assign(f.num_regions, -1);
  cb.parent_wall.assign(f.num_regions, -1);
  std::vector<char> vis(f.num_regions, 0);
  std::deque<int> bfs = {root};
  vis[root] = 1;
  std::vector<std::vector<std::pair<int, int>>> adj(f.num_regions);
  for (int w = 0; w < static_cast<int>(f.walls.size()); ++w) {
    adj[f.walls[w].from].push_back({f.walls[w].to, w});
    adj[f.walls[w].to].push_back({f.walls[w].from, w});
  }
  for (auto& a : adj)
    std::sort(a.begin(), a.end());
  std::set<int> tree;
  while (!bfs.empty()) {
    int r = bfs.front();
    bfs.pop_front();
    for (auto [s, w] : adj[r]) {
      if (vis[s]) continue;
      vis[s] = 1;
      cb.parent[s] = r;
      cb.parent_wall[s] = w;
      tree.insert(w);
      bfs.push_back(s);
    }
  }
  cb.spanning_tree.assign(tree.begin(), tree.end());

  auto path_to_root = [&](int r) {
    std::vector<int> path = {r};
    while (cb.parent[path.back()] >= 0) path.push_back(cb.parent[path.back()]);
    return path;  // r ... root
  };
  for (int w = 0; w < static_cast<int>(f.walls.size()); ++w) {
    if (tree.count(w)) continue;
    int u = f.walls[w].from, v = f.walls[w].to;
    std::vector<int> pu = path_to_root(u), pv = path_to_root(v);
    // lowest common ancestor by trimming equal tails
    while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
      pu.pop_back();
      pv.pop_back();
    }
    // cycle: u -> ... -> lca -> ... -> v -> u
    std::vector<int> cyc(pu.begin(), pu.end());
    for (int i = static_cast<int>(pv.size()) - 2; i >= 0; --i) cyc.push_back(pv[i]);
    cyc.push_back(u);
    cb.fundamental_cycles.push_back(std::move(cyc));
  }
  return cb;
}

// Composite of wall reflections along the region walk (rightmost acts first).
template <class S>
Mat<S> walk_transform(const Fan<S>& f, const std::vector<int>& walk,
                      const S& tol = scalar_traits<S>::default_tol()) {
  Mat<S> t = Mat<S>::Identity(f.ambient_dim, f.ambient_dim);
  for (std::size_t i = 1; i < walk.size(); ++i) {
    int w = wall_between(f, walk[i - 1], walk[i]);
    if (w < 0) throw error("NotAWalk", "consecutive regions not adjacent");
    t = reflection_matrix(Vec<S>(f.walls[w].normal), tol) * t;
  }
  return t;
}

// Tree walk from root to r as a region sequence.
inline std::vector<int> tree_walk(const CycleBasis& cb, int r) {
  std::vector<int> rev = {r};
  while (cb.parent[rev.back()] >= 0) rev.push_back(cb.parent[rev.back()]);
  std::reverse(rev.begin(), rev.end());
  return rev;
}

// Localization at a face: the normal fan of the face polytope.
template <class S>
Fan<S> localize(const Polytope<S>& p, const std::vector<int>& face_vertex_ids,
                const S& tol = scalar_traits<S>::default_tol()) {
  FaceLattice<S> lat = face_lattice(p, tol);
  std::vector<int> face = face_vertex_ids;
  std::sort(face.begin(), face.end());
  bool found = false;
  for (const auto& [d, faces] : lat.faces_by_dim)
    for (const auto& g : faces)
      if (g == face) found = true;
  if (!found) throw error("NotAFace", "vertex set is not a face");
  std::vector<Vec<S>> pts;
  for (int i : face) pts.push_back(p.vertices[i]);
  if (pts.size() == 1) {
    Fan<S> f;
    f.ambient_dim = p.ambient_dim;
    f.num_regions = 1;
    f.lineality = Mat<S>::Identity(p.ambient_dim, p.ambient_dim);
    return f;
  }
  return normal_fan(convex_hull(pts, tol), tol);
}

template <class S>
bool positively_parallel(const Vec<S>& a, const Vec<S>& b,
                         const S& tol = scalar_traits<S>::default_tol()) {
  if (a.size() != b.size()) return false;
  S scale = max_abs(Mat<S>(a));
  S sb = max_abs(Mat<S>(b));
  if (sb > scale) scale = sb;
  S s2 = scale * scale;
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j)
      if (!near_zero(S(a(i) * b(j) - a(j) * b(i)), tol, s2)) return false;
  return sign_of(a.dot(b), tol, s2) > 0;
}

template <class S>
Vec<S> region_rep(const Fan<S>& f, int r) {
  if (f.has_reps()) return f.region_reps[r];
  auto idx = region_wall_index(f);
  std::vector<Vec<S>> rows;
  for (const auto& [w, sg] : idx[r]) rows.push_back(S(sg) * f.walls[w].normal);
  if constexpr (scalar_traits<S>::exact) {
    auto p = cone_interior_point(mat_from_rows(rows, f.ambient_dim));
    if (!p) throw error("InvalidFan", "region has empty interior");
    return *p;
  } else {
    throw error("InvalidFan", "float fan without region representatives");
  }
}

// Membership of x in the closed region r (regions of complete fans are cut
// out by their wall halfspaces).
template <class S>
bool in_region(const Fan<S>& f, int r, const Vec<S>& x, bool strict,
               const S& tol = scalar_traits<S>::default_tol()) {
  auto idx = region_wall_index(f);
  S scale = max_abs(Mat<S>(x));
  for (const auto& [w, sg] : idx[r]) {
    S v = S(sg) * f.walls[w].normal.dot(x);
    int sn = sign_of(v, tol, S(scale * max_abs(Mat<S>(f.walls[w].normal))));
    if (strict ? sn >= 0 : sn > 0) return false;
  }
  return true;
}

// Equality of fans as cone collections: match regions through interior
// representatives, then require the wall bijection to have positively
// proportional normals.
template <class S>
bool fans_equal(const Fan<S>& f1, const Fan<S>& f2,
                const S& tol = scalar_traits<S>::default_tol()) {
  if (f1.num_regions != f2.num_regions) return false;
  if (f1.walls.size() != f2.walls.size()) return false;
  if (f1.ambient_dim != f2.ambient_dim) return false;
  std::vector<int> match(f1.num_regions, -1);
  std::vector<char> used(f2.num_regions, 0);
  for (int r = 0; r < f1.num_regions; ++r) {
    Vec<S> c = region_rep(f1, r);
    for (int s = 0; s < f2.num_regions; ++s) {
      if (in_region(f2, s, c, /*strict=*/true, tol)) {
        match[r] = s;
        break;
      }
    }
    if (match[r] < 0 || used[match[r]]) return false;
    used[match[r]] = 1;
  }
  for (const auto& w : f1.walls) {
    int a = match[w.from], b = match[w.to];
    int w2 = wall_between(f2, a, b);
    if (w2 < 0) return false;
    Vec<S> n2 = f2.walls[w2].from == a ? f2.walls[w2].normal : Vec<S>(-f2.walls[w2].normal);
    if (!positively_parallel(w.normal, n2, tol)) return false;
  }
  return true;
}

}  // namespace insc
