#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "insc/linalg.hpp"

namespace insc {

template <class S>
struct Facet {
  Vec<S> normal;  // outer, ambient coordinates (within the affine hull)
  S offset;       // <normal, x> <= offset on P
  std::vector<int> vertex_ids;
};

template <class S>
struct Polytope {
  int ambient_dim = 0;
  std::vector<Vec<S>> vertices;
  int dim = 0;
  Vec<S> aff_point;  // affine hull: aff_point + rowspace(aff_dirs)
  Mat<S> aff_dirs;   // dim x ambient_dim
  std::vector<Facet<S>> facets;
};

namespace detail {

template <class S>
int affine_rank(const std::vector<Vec<S>>& pts, const std::vector<int>& idx,
                const S& tol) {
  if (idx.size() <= 1) return 0;
  Mat<S> m(static_cast<int>(idx.size()) - 1, pts[idx[0]].size());
  for (std::size_t i = 1; i < idx.size(); ++i)
    m.row(static_cast<int>(i) - 1) = (pts[idx[i]] - pts[idx[0]]).transpose();
  return rank_of(std::move(m), tol);
}

// Hyperplane through the given (affinely (k-1)-dimensional) point set in R^k.
template <class S>
std::pair<Vec<S>, S> hyperplane_through(const std::vector<Vec<S>>& pts,
                                        const std::vector<int>& idx, const S& tol) {
  Mat<S> m(static_cast<int>(idx.size()) - 1, pts[idx[0]].size());
  for (std::size_t i = 1; i < idx.size(); ++i)
    m.row(static_cast<int>(i) - 1) = (pts[idx[i]] - pts[idx[0]]).transpose();
  Subspace<S> k = kernel(m, tol);
  if (k.dim() != 1) throw error("HullInternal", "degenerate hyperplane request");
  Vec<S> n = k.basis.row(0).transpose();
  return {n, n.dot(pts[idx[0]])};
}

template <class S>
struct HullFacet {
  Vec<S> a;
  S b;
  std::vector<int> pts;  // sorted indices of points known on the hyperplane
};

template <class S>
bool same_hyperplane(const HullFacet<S>& f, const Vec<S>& a, const S& b,
                     const S& tol, const S& scale) {
  // Oriented equality up to positive scaling.
  int pf = -1, pg = -1;
  for (int i = 0; i < f.a.size(); ++i)
    if (!near_zero(f.a(i), tol, scale)) { pf = i; break; }
  for (int i = 0; i < a.size(); ++i)
    if (!near_zero(a(i), tol, scale)) { pg = i; break; }
  if (pf != pg || pf < 0) return false;
  if (sign_of(f.a(pf), tol, scale) != sign_of(a(pg), tol, scale)) return false;
  // cross-multiplied comparison avoids division
  S fa = f.a(pf);
  S ga = a(pg);
  for (int i = 0; i < a.size(); ++i)
    if (!near_zero(S(f.a(i) * ga - a(i) * fa), tol, S(scale * scale))) return false;
  return near_zero(S(f.b * ga - b * fa), tol, S(scale * scale));
}

// Full-dimensional incremental hull in R^k, k >= 2. Returns the facet list;
// point lists per facet may include interior-of-face points, pruned later.
template <class S>
std::vector<HullFacet<S>> hull_full_dim(const std::vector<Vec<S>>& pts,
                                        const std::vector<int>& simplex,
                                        const S& tol) {
  const int k = static_cast<int>(pts[0].size());
  S scale(1);
  for (const Vec<S>& p : pts)
    for (int i = 0; i < k; ++i) {
      S a = abs_val(p(i));
      if (a > scale) scale = a;
    }

  Vec<S> interior = Vec<S>::Zero(k);
  for (int i : simplex) interior += pts[i];
  interior /= S(static_cast<int>(simplex.size()));

  std::vector<HullFacet<S>> facets;
  for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != drop) idx.push_back(simplex[i]);
    auto [a, b] = hyperplane_through(pts, idx, tol);
    if (sign_of(S(a.dot(interior) - b), tol, scale) > 0) { a = -a; b = -b; }
    std::sort(idx.begin(), idx.end());
    facets.push_back({std::move(a), std::move(b), std::move(idx)});
  }

  std::vector<int> order;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i)
    if (std::find(simplex.begin(), simplex.end(), i) == simplex.end())
      order.push_back(i);
  std::mt19937 rng(0x5eed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<int> active(simplex.begin(), simplex.end());
  for (int p : order) {
    std::vector<int> visible, coincident, hidden;
    for (int f = 0; f < static_cast<int>(facets.size()); ++f) {
      int sg = sign_of(S(facets[f].a.dot(pts[p]) - facets[f].b), tol, scale);
      if (sg > 0)
        visible.push_back(f);
      else if (sg == 0)
        coincident.push_back(f);
      else
        hidden.push_back(f);
    }
    active.push_back(p);
    if (visible.empty()) {
      for (int f : coincident) {
        auto& v = facets[f].pts;
        v.insert(std::lower_bound(v.begin(), v.end(), p), p);
      }
      continue;
    }

    std::vector<HullFacet<S>> next;
    for (int f : hidden) next.push_back(facets[f]);
    for (int f : coincident) {
      auto& v = facets[f].pts;
      v.insert(std::lower_bound(v.begin(), v.end(), p), p);
      next.push_back(facets[f]);
    }

    std::vector<HullFacet<S>> created;
    for (int fv : visible) {
      for (int fh : hidden) {
        std::vector<int> common;
        std::set_intersection(facets[fv].pts.begin(), facets[fv].pts.end(),
                              facets[fh].pts.begin(), facets[fh].pts.end(),
                              std::back_inserter(common));
        if (static_cast<int>(common.size()) < k - 1) continue;
        if (affine_rank(pts, common, tol) != k - 2) continue;
        std::vector<int> base = common;
        base.push_back(p);
        auto [a, b] = hyperplane_through(pts, base, tol);
        if (sign_of(S(a.dot(interior) - b), tol, scale) > 0) { a = -a; b = -b; }
        bool dup = false;
        for (auto& g : created)
          if (same_hyperplane(g, a, b, tol, scale)) { dup = true; break; }
        if (!dup)
          for (auto& g : next)
            if (same_hyperplane(g, a, b, tol, scale)) { dup = true; break; }
        if (dup) continue;
        created.push_back({std::move(a), std::move(b), {}});
      }
    }
    // A freshly created hyperplane may pass through older hull points that
    // are not part of the generating ridge; sweep them in.
    for (auto& g : created) {
      for (int q : active)
        if (near_zero(S(g.a.dot(pts[q]) - g.b), tol, scale)) g.pts.push_back(q);
      std::sort(g.pts.begin(), g.pts.end());
      next.push_back(std::move(g));
    }
    facets = std::move(next);
  }
  return facets;
}

}  // namespace detail

// Exact incremental (beneath-beyond) hull. Lower-dimensional inputs are
// reduced to their affine hull first.
template <class S>
Polytope<S> convex_hull(const std::vector<Vec<S>>& points,
                        const S& tol = scalar_traits<S>::default_tol()) {
  if (points.empty()) throw error("BadParams", "hull of no points");
  const int d = static_cast<int>(points[0].size());
  for (const Vec<S>& p : points)
    if (p.size() != d) throw error("DimensionMismatch", "inconsistent point dims");

  S scale(1);
  for (const Vec<S>& p : points)
    for (int i = 0; i < d; ++i) {
      S a = abs_val(p(i));
      if (a > scale) scale = a;
    }

  std::vector<Vec<S>> pts;  // deduped, input order
  for (const Vec<S>& p : points) {
    bool dup = false;
    for (const Vec<S>& q : pts) {
      bool eq = true;
      for (int i = 0; i < d && eq; ++i)
        if (!near_zero(S(p(i) - q(i)), tol, scale)) eq = false;
      if (eq) { dup = true; break; }
    }
    if (!dup) pts.push_back(p);
  }

  Polytope<S> poly;
  poly.ambient_dim = d;
  poly.aff_point = pts[0];

  // Greedy affine basis; the chosen points seed the initial simplex.
  std::vector<int> simplex = {0};
  std::vector<Vec<S>> dir_rows;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    Mat<S> m(static_cast<int>(dir_rows.size()) + 1, d);
    for (std::size_t r = 0; r < dir_rows.size(); ++r) m.row(static_cast<int>(r)) = dir_rows[r].transpose();
    m.row(static_cast<int>(dir_rows.size())) = (pts[i] - pts[0]).transpose();
    if (rank_of(std::move(m), tol) == static_cast<int>(dir_rows.size()) + 1) {
      dir_rows.push_back(pts[i] - pts[0]);
      simplex.push_back(i);
    }
  }
  const int k = static_cast<int>(dir_rows.size());
  poly.dim = k;
  poly.aff_dirs = mat_from_rows(dir_rows, d);

  if (k == 0) {
    poly.vertices = {pts[0]};
    return poly;
  }

  // Reduced coordinates via least squares on the affine basis.
  Mat<S> dd = poly.aff_dirs * poly.aff_dirs.transpose();
  std::vector<Vec<S>> red(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Vec<S> rhs = poly.aff_dirs * (pts[i] - pts[0]);
    auto u = solve(dd, rhs, tol);
    red[i] = *u;
  }
  S red_scale(1);
  for (const Vec<S>& p : red)
    for (int i = 0; i < k; ++i) {
      S a = abs_val(p(i));
      if (a > red_scale) red_scale = a;
    }

  std::vector<int> vertex_ids;  // indices into pts
  std::vector<detail::HullFacet<S>> hfacets;
  if (k == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < static_cast<int>(red.size()); ++i) {
      if (red[i](0) < red[lo](0)) lo = i;
      if (red[i](0) > red[hi](0)) hi = i;
    }
    Vec<S> plus(1), minus(1);
    plus << S(1);
    minus << S(-1);
    hfacets.push_back({plus, red[hi](0), {hi}});
    hfacets.push_back({minus, S(-red[lo](0)), {lo}});
    vertex_ids = {std::min(lo, hi), std::max(lo, hi)};
  } else {
    hfacets = detail::hull_full_dim(red, simplex, tol);
    for (int i = 0; i < static_cast<int>(red.size()); ++i) {
      std::vector<Vec<S>> onrows;
      for (const auto& f : hfacets)
        if (near_zero(S(f.a.dot(red[i]) - f.b), tol, red_scale)) onrows.push_back(f.a);
      if (static_cast<int>(onrows.size()) < k) continue;
      if (rank_of(mat_from_rows(onrows, k), tol) == k) vertex_ids.push_back(i);
    }
  }

  std::map<int, int> new_id;
  for (int id : vertex_ids) {
    new_id[id] = static_cast<int>(poly.vertices.size());
    poly.vertices.push_back(pts[id]);
  }

  // Lift facet normals back into the ambient direction space.
  for (const auto& f : hfacets) {
    Facet<S> out;
    auto u = solve(dd, Vec<S>(f.a), tol);
    out.normal = poly.aff_dirs.transpose() * *u;
    out.offset = f.b + out.normal.dot(pts[0]);
    for (int id : vertex_ids)
      if (near_zero(S(f.a.dot(red[id]) - f.b), tol, red_scale))
        out.vertex_ids.push_back(new_id[id]);
    std::sort(out.vertex_ids.begin(), out.vertex_ids.end());
    poly.facets.push_back(std::move(out));
  }
  return poly;
}

template <class S>
Polytope<S> convex_hull_of(const Polytope<S>& p) {
  return convex_hull(p.vertices);
}

// Vertex-index set of the face maximizing <c, .>.
template <class S>
std::vector<int> support_face(const Polytope<S>& p, const Vec<S>& c,
                              const S& tol = scalar_traits<S>::default_tol()) {
  if (c.size() != p.ambient_dim) throw error("DimensionMismatch", "support direction dim");
  S best = c.dot(p.vertices[0]);
  for (const Vec<S>& v : p.vertices) {
    S val = c.dot(v);
    if (val > best) best = val;
  }
  S scale = abs_val(best) < S(1) ? S(1) : abs_val(best);
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(p.vertices.size()); ++i)
    if (near_zero(S(c.dot(p.vertices[i]) - best), tol, scale)) out.push_back(i);
  return out;
}

template <class S>
Polytope<S> minkowski_sum(const Polytope<S>& p, const Polytope<S>& q,
                          const S& tol = scalar_traits<S>::default_tol()) {
  if (p.ambient_dim != q.ambient_dim)
    throw error("DimensionMismatch", "minkowski summands in different spaces");
  std::vector<Vec<S>> sums;
  sums.reserve(p.vertices.size() * q.vertices.size());
  for (const Vec<S>& a : p.vertices)
    for (const Vec<S>& b : q.vertices) sums.push_back(a + b);
  return convex_hull(sums, tol);
}

template <class S>
Polytope<S> scale_polytope(const Polytope<S>& p, const S& factor) {
  std::vector<Vec<S>> vs;
  for (const Vec<S>& v : p.vertices) vs.push_back(factor * v);
  return convex_hull(vs);
}

template <class S>
Polytope<S> translate_polytope(const Polytope<S>& p, const Vec<S>& t) {
  std::vector<Vec<S>> vs;
  for (const Vec<S>& v : p.vertices) vs.push_back(v + t);
  return convex_hull(vs);
}

// Circumsphere relative to the affine hull: the canonical center and
// squared radius, or none.
template <class S>
std::optional<std::pair<Vec<S>, S>> is_inscribed(
    const Polytope<S>& p, const S& tol = scalar_traits<S>::default_tol()) {
  auto fit = circumcenter_space(p.vertices, tol);
  if (!fit) return std::nullopt;
  return std::make_pair(fit->center, fit->radius2);
}

// ---- face lattice ----

template <class S>
struct FaceLattice {
  // dim -> sorted vertex-index sets; includes the polytope itself at top.
  std::map<int, std::vector<std::vector<int>>> faces_by_dim;
};

template <class S>
FaceLattice<S> face_lattice(const Polytope<S>& p,
                            const S& tol = scalar_traits<S>::default_tol()) {
  std::set<std::vector<int>> faces;
  for (const auto& f : p.facets) faces.insert(f.vertex_ids);
  // close under pairwise intersection
  for (;;) {
    std::set<std::vector<int>> fresh;
    for (auto it = faces.begin(); it != faces.end(); ++it)
      for (auto jt = std::next(it); jt != faces.end(); ++jt) {
        std::vector<int> c;
        std::set_intersection(it->begin(), it->end(), jt->begin(), jt->end(),
                              std::back_inserter(c));
        if (!c.empty() && !faces.count(c)) fresh.insert(std::move(c));
      }
    if (fresh.empty()) break;
    faces.insert(fresh.begin(), fresh.end());
  }
  std::vector<int> all(p.vertices.size());
  for (int i = 0; i < static_cast<int>(all.size()); ++i) all[i] = i;
  faces.insert(all);

  FaceLattice<S> lat;
  for (const auto& f : faces)
    lat.faces_by_dim[detail::affine_rank(p.vertices, f, tol)].push_back(f);
  return lat;
}

// Cyclic vertex order of each 2-face, walked along lattice edges.
template <class S>
std::vector<std::vector<int>> two_face_cycles(const Polytope<S>& p,
                                              const FaceLattice<S>& lat) {
  (void)p;
  std::vector<std::vector<int>> cycles;
  auto it2 = lat.faces_by_dim.find(2);
  if (it2 == lat.faces_by_dim.end()) return cycles;
  auto it1 = lat.faces_by_dim.find(1);
  if (it1 == lat.faces_by_dim.end()) throw error("LatticeInternal", "2-face without edges");
  for (const auto& face : it2->second) {
    std::set<int> fv(face.begin(), face.end());
    std::map<int, std::vector<int>> adj;
    for (const auto& e : it1->second) {
      if (e.size() != 2) continue;
      if (fv.count(e[0]) && fv.count(e[1])) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
      }
    }
    std::vector<int> cyc;
    int start = face[0], prev = -1, cur = start;
    do {
      cyc.push_back(cur);
      const auto& nb = adj[cur];
      if (nb.size() != 2) throw error("LatticeInternal", "2-face walk broke");
      int nxt = (nb[0] == prev) ? nb[1] : nb[0];
      prev = cur;
      cur = nxt;
    } while (cur != start && cyc.size() <= face.size());
    if (cyc.size() != face.size()) throw error("LatticeInternal", "2-face cycle mismatch");
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

// ---- named families ----

inline Polytope<Rat> simplex_polytope(int d) {
  if (d < 1) throw error("BadParams", "simplex dimension");
  std::vector<VecQ> vs = {VecQ::Zero(d)};
  for (int i = 0; i < d; ++i) {
    VecQ e = VecQ::Zero(d);
    e(i) = 1;
    vs.push_back(e);
  }
  return convex_hull(vs);
}

inline Polytope<Rat> crosspolytope(int d) {
  if (d < 1) throw error("BadParams", "crosspolytope dimension");
  std::vector<VecQ> vs;
  for (int i = 0; i < d; ++i) {
    VecQ e = VecQ::Zero(d);
    e(i) = 1;
    vs.push_back(e);
    vs.push_back(VecQ(-e));
  }
  return convex_hull(vs);
}

inline Polytope<Rat> cube_polytope(int d) {
  if (d < 1 || d > 20) throw error("BadParams", "cube dimension");
  std::vector<VecQ> vs;
  for (long m = 0; m < (1L << d); ++m) {
    VecQ v(d);
    for (int i = 0; i < d; ++i) v(i) = (m >> i) & 1;
    vs.push_back(v);
  }
  return convex_hull(vs);
}

inline Polytope<Rat> hypersimplex(int n, int k) {
  if (!(0 < k && k < n)) throw error("BadParams", "hypersimplex needs 0 < k < n");
  std::vector<VecQ> vs;
  for (long m = 0; m < (1L << n); ++m) {
    if (__builtin_popcountl(m) != k) continue;
    VecQ v(n);
    for (int i = 0; i < n; ++i) v(i) = (m >> i) & 1;
    vs.push_back(v);
  }
  return convex_hull(vs);
}

inline Polytope<Rat> permutahedron(std::vector<Rat> z) {
  if (z.size() < 2) throw error("BadParams", "permutahedron needs >= 2 coordinates");
  for (std::size_t i = 1; i < z.size(); ++i)
    if (z[i] < z[i - 1]) throw error("BadParams", "permutahedron coordinates must be sorted");
  std::sort(z.begin(), z.end());
  std::vector<VecQ> vs;
  do {
    VecQ v(static_cast<int>(z.size()));
    for (int i = 0; i < v.size(); ++i) v(i) = z[i];
    vs.push_back(v);
  } while (std::next_permutation(z.begin(), z.end(),
                                 [](const Rat& a, const Rat& b) { return a < b; }));
  return convex_hull(vs);
}

inline Polytope<double> regular_ngon(int n) {
  if (n < 3) throw error("BadParams", "ngon needs n >= 3");
  std::vector<Vec<double>> vs;
  for (int j = 0; j < n; ++j) {
    Vec<double> v(2);
    v << std::cos(2 * M_PI * j / n), std::sin(2 * M_PI * j / n);
    vs.push_back(v);
  }
  return convex_hull(vs);
}

}  // namespace insc
