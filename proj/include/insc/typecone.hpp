#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "insc/inscribe.hpp"

namespace insc {

// Wall weights of a PL function supported on the fan; closure on a cycle
// basis is checked at construction.
template <class S>
struct LambdaWeights {
  Vec<S> values;  // one per wall, lower-region orientation
};

template <class S>
LambdaWeights<S> make_lambda_weights(const Fan<S>& f, const Vec<S>& values,
                                     const S& tol = scalar_traits<S>::default_tol()) {
  if (values.size() != static_cast<int>(f.walls.size()))
    throw error("BadParams", "one weight per wall required");
  Subspace<S> cls = closure_space(f, tol);
  if (!subspace_contains(cls, values, tol))
    throw error("NotClosed", "weights violate the closed-walk conditions");
  return {values};
}

// Wall weights of a polytope against a reference fan (defaults to its own
// normal fan, where every weight is 1 by the stored-normal convention).
template <class S>
LambdaWeights<S> lambda_of_polytope(const Polytope<S>& p, const Fan<S>& f,
                                    const S& tol = scalar_traits<S>::default_tol()) {
  std::vector<int> vmap(f.num_regions);
  for (int r = 0; r < f.num_regions; ++r) {
    auto face = support_face(p, region_rep(f, r), tol);
    if (face.size() != 1) throw error("NotNormallyEquivalent", "region support not a vertex");
    vmap[r] = face[0];
  }
  Vec<S> lam(static_cast<int>(f.walls.size()));
  S scale = max_abs(mat_from_rows(std::vector<Vec<S>>(p.vertices), p.ambient_dim));
  for (int w = 0; w < static_cast<int>(f.walls.size()); ++w) {
    const Vec<S>& alpha = f.walls[w].normal;
    Vec<S> diff = p.vertices[vmap[f.walls[w].to]] - p.vertices[vmap[f.walls[w].from]];
    S aa = alpha.dot(alpha);
    S l = alpha.dot(diff) / aa;
    Vec<S> res = diff - Vec<S>(l * alpha);
    for (int i = 0; i < res.size(); ++i)
      if (!near_zero(res(i), tol, scale))
        throw error("NotNormallyEquivalent", "vertex difference not parallel to the wall normal");
    if (sign_of(l, tol, scale) <= 0)
      throw error("NotNormallyEquivalent", "nonpositive edge weight");
    lam(w) = l;
  }
  return make_lambda_weights(f, lam, tol);
}

template <class S>
LambdaWeights<S> lambda_of_polytope(const Polytope<S>& p,
                                    const S& tol = scalar_traits<S>::default_tol()) {
  return lambda_of_polytope(p, normal_fan(p, tol), tol);
}

// Vertex map of the weights: anchor vertex at the anchor
// region, every other region along the spanning tree.
template <class S>
std::vector<Vec<S>> vertex_map(const Fan<S>& f, const LambdaWeights<S>& lam, int anchor_region,
                               const Vec<S>& anchor_vertex,
                               const S& tol = scalar_traits<S>::default_tol()) {
  (void)tol;
  CycleBasis cb = cycle_basis(f, anchor_region);
  std::vector<Vec<S>> pos(f.num_regions);
  std::vector<char> have(f.num_regions, 0);
  pos[anchor_region] = anchor_vertex;
  have[anchor_region] = 1;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int r = 0; r < f.num_regions; ++r) {
      if (have[r] || cb.parent[r] < 0 || !have[cb.parent[r]]) continue;
      int w = cb.parent_wall[r];
      Vec<S> alpha = f.walls[w].from == cb.parent[r] ? f.walls[w].normal
                                                     : Vec<S>(-f.walls[w].normal);
      pos[r] = pos[cb.parent[r]] + lam.values(w) * alpha;
      have[r] = 1;
      progress = true;
    }
  }
  return pos;
}

template <class S>
bool is_strictly_convex(const LambdaWeights<S>& lam,
                        const S& tol = scalar_traits<S>::default_tol()) {
  for (int w = 0; w < lam.values.size(); ++w)
    if (sign_of(lam.values(w), tol, max_abs(Mat<S>(lam.values))) <= 0) return false;
  return true;
}

// Coarsening induced by a nonnegative weight vector: zero walls contract.
template <class S>
Coarsening<S> coarsening_of(const Fan<S>& f, const LambdaWeights<S>& lam,
                            const S& tol = scalar_traits<S>::default_tol()) {
  S scale = max_abs(Mat<S>(lam.values));
  std::vector<char> zero(f.walls.size(), 0);
  for (int w = 0; w < lam.values.size(); ++w) {
    int sg = sign_of(lam.values(w), tol, scale);
    if (sg < 0) throw error("NegativeWeight", "coarsening needs lambda >= 0");
    if (sg == 0) zero[w] = 1;
  }
  return contract_zero_walls(f, zero, tol);
}

template <class S>
int typecone_dim(const Fan<S>& f, const S& tol = scalar_traits<S>::default_tol()) {
  return closure_space(f, tol).dim();
}

template <class S>
bool typecone_contains(const Fan<S>& f, const Vec<S>& lam,
                       const S& tol = scalar_traits<S>::default_tol()) {
  if (lam.size() != static_cast<int>(f.walls.size())) return false;
  if (!subspace_contains(closure_space(f, tol), lam, tol)) return false;
  S scale = max_abs(Mat<S>(lam));
  for (int w = 0; w < lam.size(); ++w)
    if (sign_of(lam(w), tol, scale) < 0) return false;
  return true;
}

// Formal Minkowski difference (type-space element) anchored at a region.
template <class S>
struct VirtualPolytope {
  LambdaWeights<S> lambda;
  int anchor_region = 0;
  Vec<S> anchor_vertex;
};

template <class S>
VirtualPolytope<S> virtual_difference(const Polytope<S>& p, const Polytope<S>& q,
                                      const Fan<S>& f,
                                      const S& tol = scalar_traits<S>::default_tol()) {
  LambdaWeights<S> lp = lambda_of_polytope(p, f, tol);
  LambdaWeights<S> lq = lambda_of_polytope(q, f, tol);
  VirtualPolytope<S> out;
  out.lambda = {Vec<S>(lp.values - lq.values)};
  out.anchor_region = 0;
  auto fp = support_face(p, region_rep(f, 0), tol);
  auto fq = support_face(q, region_rep(f, 0), tol);
  out.anchor_vertex = p.vertices[fp[0]] - q.vertices[fq[0]];
  return out;
}

template <class S>
VirtualPolytope<S> vp_add(const Fan<S>& f, const VirtualPolytope<S>& a,
                          const VirtualPolytope<S>& b,
                          const S& tol = scalar_traits<S>::default_tol()) {
  VirtualPolytope<S> out;
  out.lambda = {Vec<S>(a.lambda.values + b.lambda.values)};
  out.anchor_region = a.anchor_region;
  Vec<S> bv = vertex_map(f, b.lambda, b.anchor_region, b.anchor_vertex, tol)[a.anchor_region];
  out.anchor_vertex = a.anchor_vertex + bv;
  return out;
}

template <class S>
VirtualPolytope<S> vp_negate(const VirtualPolytope<S>& a) {
  return {{Vec<S>(-a.lambda.values)}, a.anchor_region, Vec<S>(-a.anchor_vertex)};
}

template <class S>
bool vp_equal(const Fan<S>& f, const VirtualPolytope<S>& a, const VirtualPolytope<S>& b,
              const S& tol = scalar_traits<S>::default_tol()) {
  S scale = max_abs(Mat<S>(a.lambda.values)) + max_abs(Mat<S>(b.lambda.values)) + S(1);
  for (int w = 0; w < a.lambda.values.size(); ++w)
    if (!near_zero(S(a.lambda.values(w) - b.lambda.values(w)), tol, scale)) return false;
  Vec<S> va = a.anchor_vertex;
  Vec<S> vb = vertex_map(f, b.lambda, b.anchor_region, b.anchor_vertex, tol)[a.anchor_region];
  for (int i = 0; i < va.size(); ++i)
    if (!near_zero(S(va(i) - vb(i)), tol, scale)) return false;
  return true;
}

// Inscribed-relative-to-the-fan test on the vertex map: a common sphere
// plus every wall's midpoint in the wall hyperplane (through the center).
template <class S>
bool inscribed_virtual_check(const Fan<S>& f, const LambdaWeights<S>& lam, int anchor_region,
                             const Vec<S>& anchor_vertex,
                             const S& tol = scalar_traits<S>::default_tol()) {
  std::vector<Vec<S>> pos = vertex_map(f, lam, anchor_region, anchor_vertex, tol);
  S scale(1);
  for (const auto& p : pos) {
    S m = max_abs(Mat<S>(p));
    if (m > scale) scale = m;
  }
  std::vector<Vec<S>> distinct;
  for (const auto& p : pos) {
    bool dup = false;
    for (const auto& q : distinct) {
      bool eq = true;
      for (int i = 0; i < p.size() && eq; ++i)
        if (!near_zero(S(p(i) - q(i)), tol, scale)) eq = false;
      if (eq) { dup = true; break; }
    }
    if (!dup) distinct.push_back(p);
  }
  if (distinct.size() == 1) return true;  // all regions collapse: trivially inscribed
  auto fit = circumcenter_space(distinct, tol);
  if (!fit) return false;
  for (int w = 0; w < static_cast<int>(f.walls.size()); ++w) {
    Vec<S> mid = (pos[f.walls[w].from] + pos[f.walls[w].to]) / S(2) - fit->center;
    if (!near_zero(S(f.walls[w].normal.dot(mid)), tol,
                   S(scale * max_abs(Mat<S>(f.walls[w].normal)))))
      return false;
  }
  return true;
}

}  // namespace insc
