#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "insc/inscribe.hpp"

namespace insc {

// Stereographic lift to the unit sphere: rational in, rational out.
template <class S>
Vec<S> stereo_lift(const Vec<S>& u) {
  int d = static_cast<int>(u.size());
  S nn = u.dot(u);
  Vec<S> out(d + 1);
  for (int i = 0; i < d; ++i) out(i) = S(2) * u(i) / (nn + S(1));
  out(d) = (nn - S(1)) / (nn + S(1));
  return out;
}

template <class S>
Vec<S> stereo_project(const Vec<S>& x, const S& tol = scalar_traits<S>::default_tol()) {
  int d = static_cast<int>(x.size()) - 1;
  if (near_zero(S(x(d) - S(1)), tol)) throw error("NorthPole", "projection undefined at e_d");
  Vec<S> out(d);
  for (int i = 0; i < d; ++i) out(i) = x(i) / (S(1) - x(d));
  return out;
}

// An injectively labelled point configuration in Q^{d-1}.
template <class S>
struct LabelledConfig {
  std::vector<int> labels;
  std::vector<Vec<S>> points;
};

template <class S>
void check_config(const LabelledConfig<S>& u, const S& tol = scalar_traits<S>::default_tol()) {
  if (u.labels.size() != u.points.size() || u.points.empty())
    throw error("BadParams", "labels and points must match");
  std::set<int> seen(u.labels.begin(), u.labels.end());
  if (seen.size() != u.labels.size()) throw error("BadParams", "labels must be injective");
  S scale(1);
  for (const auto& p : u.points) {
    S m = max_abs(Mat<S>(p));
    if (m > scale) scale = m;
  }
  for (std::size_t i = 0; i < u.points.size(); ++i)
    for (std::size_t j = i + 1; j < u.points.size(); ++j) {
      bool eq = true;
      for (int t = 0; t < u.points[i].size() && eq; ++t)
        if (!near_zero(S(u.points[i](t) - u.points[j](t)), tol, scale)) eq = false;
      if (eq) throw error("BadParams", "points must be injective");
    }
}

struct DelaunaySubdivision {
  std::vector<std::vector<int>> cells;           // label sets
  std::vector<std::pair<int, int>> hidden_edges;  // label pairs
  std::vector<std::pair<int, int>> graph_edges;   // edge graph of the lifted hull
  bool boundary_degenerate = false;               // a facet hyperplane hits e_d
};

// Lift, take the hull, keep the facets not visible from the north pole.
template <class S>
DelaunaySubdivision delaunay_subdivision(const LabelledConfig<S>& u,
                                         const S& tol = scalar_traits<S>::default_tol()) {
  check_config(u, tol);
  int d = static_cast<int>(u.points[0].size());
  {
    std::vector<Vec<S>> pts = u.points;
    Polytope<S> flat = convex_hull(pts, tol);
    if (flat.dim != d) throw error("NotSpanning", "configuration must span affinely");
  }
  std::vector<Vec<S>> lifted;
  for (const auto& p : u.points) lifted.push_back(stereo_lift(p));
  Polytope<S> hull = convex_hull(lifted, tol);
  // points on a sphere are in convex position: every input is a vertex
  std::vector<int> label_of(hull.vertices.size(), -1);
  S scale(1);
  for (const auto& p : lifted) {
    S m = max_abs(Mat<S>(p));
    if (m > scale) scale = m;
  }
  for (int i = 0; i < static_cast<int>(hull.vertices.size()); ++i) {
    for (std::size_t j = 0; j < lifted.size(); ++j) {
      bool eq = true;
      for (int t = 0; t <= d && eq; ++t)
        if (!near_zero(S(hull.vertices[i](t) - lifted[j](t)), tol, scale)) eq = false;
      if (eq) {
        label_of[i] = u.labels[j];
        break;
      }
    }
    if (label_of[i] < 0) throw error("InternalCheck", "lifted point lost by the hull");
  }

  DelaunaySubdivision out;
  FaceLattice<S> lat = face_lattice(hull, tol);
  auto edges_it = lat.faces_by_dim.find(1);
  std::vector<std::vector<int>> hull_edges;
  if (edges_it != lat.faces_by_dim.end()) hull_edges = edges_it->second;
  auto label_pair = [&](const std::vector<int>& e) {
    int a = label_of[e[0]], b = label_of[e[1]];
    return std::make_pair(std::min(a, b), std::max(a, b));
  };
  for (const auto& e : hull_edges) out.graph_edges.push_back(label_pair(e));
  std::sort(out.graph_edges.begin(), out.graph_edges.end());

  if (hull.dim < d + 1) {
    // co-spherical configuration: the lift is flat and projects to one cell
    std::vector<int> cell;
    for (int i = 0; i < static_cast<int>(hull.vertices.size()); ++i) cell.push_back(label_of[i]);
    std::sort(cell.begin(), cell.end());
    out.cells.push_back(std::move(cell));
    return out;
  }

  Vec<S> north = Vec<S>::Zero(d + 1);
  north(d) = 1;
  std::set<std::pair<int, int>> cell_edges;
  for (const auto& f : hull.facets) {
    int sg = sign_of(S(f.normal.dot(north) - f.offset), tol, S(max_abs(Mat<S>(f.normal))));
    if (sg == 0) out.boundary_degenerate = true;
    if (sg >= 0) continue;  // visible from e_d (or degenerate): not a cell
    std::vector<int> cell;
    for (int v : f.vertex_ids) cell.push_back(label_of[v]);
    std::sort(cell.begin(), cell.end());
    out.cells.push_back(std::move(cell));
    std::set<int> fv(f.vertex_ids.begin(), f.vertex_ids.end());
    for (const auto& e : hull_edges)
      if (fv.count(e[0]) && fv.count(e[1])) cell_edges.insert(label_pair(e));
  }
  std::sort(out.cells.begin(), out.cells.end());
  for (const auto& e : out.graph_edges)
    if (!cell_edges.count(e)) out.hidden_edges.push_back(e);
  return out;
}

// Facets of a unit-inscribed polytope visible from a sphere point: vertex
// side tests against the oriented hyperplane through xi. Ties are "not
// visible" and flagged.
template <class S>
struct Visibility {
  std::vector<int> visible_facets;
  bool boundary_flag = false;
};

template <class S>
void check_unit_inscribed(const Polytope<S>& p, const S& tol) {
  auto fit = is_inscribed(p, tol);
  if (!fit) throw error("NotUnitInscribed", "polytope has no circumsphere");
  if (!near_zero(S(fit->second - S(1)), tol) || !near_zero(max_abs(Mat<S>(fit->first)), tol))
    throw error("NotUnitInscribed", "circumsphere is not the unit sphere at the origin");
}

template <class S>
Visibility<S> visibility_complex(const Polytope<S>& p, const Vec<S>& xi,
                                 const S& tol = scalar_traits<S>::default_tol()) {
  check_unit_inscribed(p, tol);
  if (!near_zero(S(xi.dot(xi) - S(1)), tol)) throw error("BadParams", "xi must be a sphere point");
  S scale(1);
  for (const auto& v : p.vertices) {
    bool eq = true;
    for (int i = 0; i < v.size() && eq; ++i)
      if (!near_zero(S(v(i) - xi(i)), tol, scale)) eq = false;
    if (eq) throw error("Degenerate", "xi coincides with a vertex");
  }
  Visibility<S> out;
  for (int fidx = 0; fidx < static_cast<int>(p.facets.size()); ++fidx) {
    const auto& f = p.facets[fidx];
    int sg = sign_of(S(f.normal.dot(xi) - f.offset), tol, S(max_abs(Mat<S>(f.normal))));
    if (sg > 0) out.visible_facets.push_back(fidx);
    if (sg == 0) out.boundary_flag = true;
  }
  return out;
}

// Oriented segments are positively co-circular iff their lifted chords are
// positive multiples of each other.
template <class S>
bool positively_co_circular(const Vec<S>& a0, const Vec<S>& a1, const Vec<S>& b0,
                            const Vec<S>& b1, const S& tol = scalar_traits<S>::default_tol()) {
  Vec<S> ca = stereo_lift(a1) - stereo_lift(a0);
  Vec<S> cb = stereo_lift(b1) - stereo_lift(b0);
  S sa = max_abs(Mat<S>(ca)), sb = max_abs(Mat<S>(cb));
  if (near_zero(sa, tol) || near_zero(sb, tol))
    throw error("DegenerateSegment", "segment endpoints coincide");
  return positively_parallel(ca, cb, tol);
}

// Labelled graphs equal and every shared edge positively co-circular.
template <class S>
bool delaunay_normally_equivalent(const LabelledConfig<S>& u, const LabelledConfig<S>& v,
                                  const S& tol = scalar_traits<S>::default_tol()) {
  DelaunaySubdivision du = delaunay_subdivision(u, tol);
  DelaunaySubdivision dv = delaunay_subdivision(v, tol);
  if (du.graph_edges != dv.graph_edges) return false;
  std::map<int, int> iu, iv;
  for (std::size_t i = 0; i < u.labels.size(); ++i) iu[u.labels[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < v.labels.size(); ++i) iv[v.labels[i]] = static_cast<int>(i);
  if (iu.size() != iv.size()) return false;
  for (const auto& [key, idx] : iu)
    if (!iv.count(key)) return false;
  for (const auto& [a, b] : du.graph_edges) {
    if (!positively_co_circular(u.points[iu[a]], u.points[iu[b]], v.points[iv[a]],
                                v.points[iv[b]], tol))
      return false;
  }
  return true;
}

// Pulled-back visibility hyperplanes, one per facet normal ray of the fan.
template <class S>
struct AffineHyperplane {
  Vec<S> normal;
  S offset;  // "below" means <normal, x> < offset
};

template <class S>
std::vector<AffineHyperplane<S>> equivalence_arrangement(
    const Polytope<S>& p, int r0, const Vec<S>& xi,
    const S& tol = scalar_traits<S>::default_tol()) {
  check_unit_inscribed(p, tol);
  Fan<S> f = normal_fan(p, tol);
  CycleBasis cb = cycle_basis(f, r0);
  std::vector<AffineHyperplane<S>> arr;
  for (const auto& facet : p.facets) {
    int region = facet.vertex_ids.front();  // a region containing the ray
    Mat<S> t = walk_transform(f, tree_walk(cb, region), tol);
    AffineHyperplane<S> h;
    h.normal = t.transpose() * facet.normal;
    h.offset = facet.normal.dot(xi);
    arr.push_back(std::move(h));
  }
  return arr;
}

// Vertex of q lying in the fan region r (q normally equivalent to the fan).
template <class S>
Vec<S> vertex_in_region(const Polytope<S>& q, const Fan<S>& f, int r, const S& tol) {
  auto face = support_face(q, region_rep(f, r), tol);
  if (face.size() != 1) throw error("NotNormallyEquivalent", "region support not a vertex");
  return q.vertices[face[0]];
}

// Same visibility complex iff the base vertices sit on the same side of
// every arrangement hyperplane.
template <class S>
bool same_visibility(const Polytope<S>& p, const Polytope<S>& q, int r0, const Vec<S>& xi,
                     const S& tol = scalar_traits<S>::default_tol()) {
  check_unit_inscribed(p, tol);
  check_unit_inscribed(q, tol);
  Fan<S> f = normal_fan(p, tol);
  if (!fans_equal(f, normal_fan(q, tol), tol))
    throw error("NotNormallyEquivalent", "normal fans differ");
  auto arr = equivalence_arrangement(p, r0, xi, tol);
  Vec<S> vp = p.vertices[r0];
  Vec<S> vq = vertex_in_region(q, f, r0, tol);
  for (const auto& h : arr) {
    bool below_p = sign_of(S(h.normal.dot(vp) - h.offset), tol, max_abs(Mat<S>(h.normal))) < 0;
    bool below_q = sign_of(S(h.normal.dot(vq) - h.offset), tol, max_abs(Mat<S>(h.normal))) < 0;
    if (below_p != below_q) return false;
  }
  return true;
}

}  // namespace insc
