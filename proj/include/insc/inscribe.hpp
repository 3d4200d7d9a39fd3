#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "insc/fan.hpp"

namespace insc {

// Cycles for the linear closed-walk condition only: link cycles of codim-2
// cones when the fan carries them, fundamental cycles otherwise. Both span
// the cycle space, which suffices for conditions linear in the traversal.
// The reflection-game and Gale/skew-Gram systems are NOT linear in the
// cycle and always use fundamental cycles: those form a free basis of the
// walk group, and their shared tree edges glue the per-cycle certificates.
// (On simplicial fans a link-cycle Gale row is all-ones, which the skew
// Gram kills, admitting spurious solutions.)
template <class S>
std::vector<std::vector<int>> basis_cycles(const Fan<S>& f, const CycleBasis& cb) {
  if (f.link_cycles.empty()) return cb.fundamental_cycles;
  std::vector<std::vector<int>> out = f.link_cycles;
  for (auto& cyc : out)
    if (cyc.size() >= 2 && cyc.front() != cyc.back()) cyc.push_back(cyc.front());
  return out;
}

// Fixed space of all closed-walk reflection products based at r0. Lineality
// generators, when supplied, cut the space down to their orthogonal
// complement.
template <class S>
Subspace<S> based_inscribed_space(const Fan<S>& f, int r0,
                                  const Mat<S>* lineality_gens = nullptr,
                                  const S& tol = scalar_traits<S>::default_tol()) {
  check_valid(f, tol);
  const int d = f.ambient_dim;
  CycleBasis cb = cycle_basis(f, r0);
  const std::vector<std::vector<int>>& cycles = cb.fundamental_cycles;
  Mat<S> rows(static_cast<int>(cycles.size()) * d, d);
  int at = 0;
  for (const auto& cyc : cycles) {
    Mat<S> tw = walk_transform(f, tree_walk(cb, cyc.front()), tol);
    Mat<S> tc = walk_transform(f, cyc, tol);
    Mat<S> m = tw.transpose() * tc * tw - Mat<S>::Identity(d, d);
    rows.middleRows(at, d) = m;
    at += d;
  }
  Subspace<S> space = kernel(rows, tol);
  if (lineality_gens && lineality_gens->rows() > 0) {
    Subspace<S> perp = kernel(Mat<S>(*lineality_gens), tol);
    space = subspace_intersect(space, perp, tol);
  }
  return space;
}

namespace detail {

// Per-cycle data for the lambda description: directed normals in traversal
// order plus the wall index carrying each lambda coordinate.
template <class S>
struct CycleSystem {
  std::vector<int> wall_ids;
  Mat<S> a;  // d x n directed normals
};

template <class S>
CycleSystem<S> cycle_system(const Fan<S>& f, const std::vector<int>& cyc) {
  CycleSystem<S> cs;
  int n = static_cast<int>(cyc.size()) - 1;
  cs.a.resize(f.ambient_dim, n);
  for (int i = 0; i < n; ++i) {
    cs.wall_ids.push_back(wall_between(f, cyc[i], cyc[i + 1]));
    cs.a.col(i) = normal_from(f, cyc[i], cyc[i + 1]);
  }
  return cs;
}

template <class S>
Mat<S> skew_gram(const Mat<S>& a) {
  int n = static_cast<int>(a.cols());
  Mat<S> r = Mat<S>::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      r(i, j) = a.col(i).dot(a.col(j));
      r(j, i) = -r(i, j);
    }
  return r;
}

}  // namespace detail

// Solution space of the closed-walk conditions alone: the type space of the
// fan in wall coordinates.
template <class S>
Subspace<S> closure_space(const Fan<S>& f, const S& tol = scalar_traits<S>::default_tol()) {
  check_valid(f, tol);
  const int e = static_cast<int>(f.walls.size());
  CycleBasis cb = cycle_basis(f, 0);
  std::vector<std::vector<int>> cycles = basis_cycles(f, cb);
  std::vector<Vec<S>> rows;
  for (const auto& cyc : cycles) {
    auto cs = detail::cycle_system(f, cyc);
    for (int r = 0; r < f.ambient_dim; ++r) {
      Vec<S> row = Vec<S>::Zero(e);
      for (std::size_t i = 0; i < cs.wall_ids.size(); ++i)
        row(cs.wall_ids[i]) += cs.a(r, static_cast<int>(i));
      rows.push_back(std::move(row));
    }
  }
  return kernel(mat_from_rows(rows, e), tol);
}

// Propagate a based-space vector along the spanning tree; one point per
// region.
template <class S>
std::vector<Vec<S>> propagate_vertex(const Fan<S>& f, int r0, const Vec<S>& v0,
                                     const S& tol = scalar_traits<S>::default_tol()) {
  CycleBasis cb = cycle_basis(f, r0);
  std::vector<Vec<S>> pos(f.num_regions);
  std::vector<char> have(f.num_regions, 0);
  pos[r0] = v0;
  have[r0] = 1;
  // parents are BFS discovered, so repeated sweeps terminate quickly
  bool progress = true;
  while (progress) {
    progress = false;
    for (int r = 0; r < f.num_regions; ++r) {
      if (have[r] || cb.parent[r] < 0 || !have[cb.parent[r]]) continue;
      pos[r] = reflect(pos[cb.parent[r]], Vec<S>(f.walls[cb.parent_wall[r]].normal), tol);
      have[r] = 1;
      progress = true;
    }
  }
  for (int r = 0; r < f.num_regions; ++r)
    if (!have[r]) throw error("InvalidFan", "region unreachable from base");
  return pos;
}

// v -> lambda along Prop-style weights lambda = -2<alpha, v_R>/<alpha,alpha>.
template <class S>
Vec<S> lambda_of_vertex(const Fan<S>& f, int r0, const Vec<S>& v,
                        bool check_membership = true,
                        const S& tol = scalar_traits<S>::default_tol()) {
  if (check_membership) {
    Subspace<S> sp = based_inscribed_space<S>(f, r0, nullptr, tol);
    if (!subspace_contains(sp, v, tol))
      throw error("NotInSpace", "vertex not in the based inscribed space");
  }
  std::vector<Vec<S>> pos = propagate_vertex(f, r0, v, tol);
  Vec<S> lam(static_cast<int>(f.walls.size()));
  for (int w = 0; w < static_cast<int>(f.walls.size()); ++w) {
    const Vec<S>& alpha = f.walls[w].normal;
    lam(w) = S(-2) * alpha.dot(pos[f.walls[w].from]) / alpha.dot(alpha);
  }
  return lam;
}

// The intrinsic lambda representation, assembled from the routing encoding
// (G(Fan), alpha) alone. Joint variables (lambda, q0): every wall
// contributes the reflection-weight equation
//     <alpha_w, q_from(lambda, q0)> + lambda_w <alpha_w, alpha_w>/2 = 0
// with q_R propagated along the spanning tree, and every non-tree wall the
// consistency equations q_from + lambda_w alpha_w = q_to. The lambda space
// is the projection of the joint kernel.
//
// The per-cycle Gale/skew-Gram conditions are necessary but not sufficient:
// per-cycle certificates need not share a base point (on simplicial fans
// short fundamental cycles visit at most four vertices, which always lie on
// a sphere, so the all-ones weights pass every per-cycle test). They are
// kept below as a verified necessary condition, and the result is
// cross-validated against the reflection game.
template <class S>
Subspace<S> lambda_inscribed_space(const Fan<S>& f,
                                   const S& tol = scalar_traits<S>::default_tol()) {
  check_valid(f, tol);
  const int e = static_cast<int>(f.walls.size());
  const int d = f.ambient_dim;
  CycleBasis cb = cycle_basis(f, 0);

  // per region: tree-path steps from the root as (wall, +-1 traversal sign)
  std::vector<std::vector<std::pair<int, int>>> path(f.num_regions);
  for (int r = 0; r < f.num_regions; ++r) {
    std::vector<int> walk = tree_walk(cb, r);
    for (std::size_t i = 1; i < walk.size(); ++i) {
      int w = wall_between(f, walk[i - 1], walk[i]);
      path[r].push_back({w, f.walls[w].from == walk[i - 1] ? +1 : -1});
    }
  }
  auto q_coeffs = [&](int region, Vec<S>& row, const Vec<S>& against, const S& factor) {
    // contributes <against, q_region> * factor to the row (lambda part only;
    // the q0 part is handled by the caller)
    for (auto [w, sg] : path[region])
      row(w) += factor * S(sg) * against.dot(f.walls[w].normal);
  };

  std::vector<Vec<S>> rows;
  for (int w = 0; w < e; ++w) {
    const Vec<S>& alpha = f.walls[w].normal;
    Vec<S> row = Vec<S>::Zero(e + d);
    q_coeffs(f.walls[w].from, row, alpha, S(1));
    for (int i = 0; i < d; ++i) row(e + i) += alpha(i);
    row(w) += alpha.dot(alpha) / S(2);
    rows.push_back(std::move(row));
  }
  std::vector<char> in_tree(e, 0);
  for (int w : cb.spanning_tree) in_tree[w] = 1;
  for (int w = 0; w < e; ++w) {
    if (in_tree[w]) continue;
    for (int i = 0; i < d; ++i) {
      Vec<S> row = Vec<S>::Zero(e + d);
      Vec<S> ei = Vec<S>::Zero(d);
      ei(i) = 1;
      q_coeffs(f.walls[w].from, row, ei, S(1));
      q_coeffs(f.walls[w].to, row, ei, S(-1));
      row(w) += f.walls[w].normal(i);
      rows.push_back(std::move(row));
    }
  }
  Subspace<S> joint = kernel(mat_from_rows(rows, e + d), tol);
  Subspace<S> lam = make_subspace(e, Mat<S>(joint.basis.leftCols(e)), tol);

  // Cross-checks. Dimensions against the reflection game:
  Subspace<S> based = based_inscribed_space<S>(f, 0, nullptr, tol);
  std::vector<Vec<S>> nrows;
  for (const auto& w : f.walls) nrows.push_back(w.normal);
  Subspace<S> perp_all = kernel(mat_from_rows(nrows, f.ambient_dim), tol);
  int expected = based.dim() - subspace_intersect(based, perp_all, tol).dim();
  if (lam.dim() != expected)
    throw error("InternalCheck", "lambda space disagrees with the reflection game");
  for (int i = 0; i < based.dim(); ++i) {
    Vec<S> v = based.basis.row(i).transpose();
    Vec<S> image = lambda_of_vertex(f, 0, v, /*check_membership=*/false, tol);
    if (!subspace_contains(lam, image, tol))
      throw error("InternalCheck", "duality image escapes the lambda space");
  }
  // Per-cycle closure and Gale/skew-Gram conditions hold on the result:
  for (const auto& cyc : cb.fundamental_cycles) {
    auto cs = detail::cycle_system(f, cyc);
    int n = static_cast<int>(cs.wall_ids.size());
    Mat<S> g = gale_transform(Mat<S>(cs.a), tol);
    Mat<S> gr = g * detail::skew_gram(Mat<S>(cs.a));
    S scale = max_abs(Mat<S>(cs.a));
    for (int i = 0; i < lam.dim(); ++i) {
      Vec<S> lc(n);
      for (int j = 0; j < n; ++j) lc(j) = lam.basis(i, cs.wall_ids[j]);
      Vec<S> r1 = cs.a * lc;
      Vec<S> r2 = gr * lc;
      S ls = max_abs(Mat<S>(lc));
      for (int t = 0; t < r1.size(); ++t)
        if (!near_zero(r1(t), tol, S(scale * ls)))
          throw error("InternalCheck", "closure condition fails on a lambda basis vector");
      for (int t = 0; t < r2.size(); ++t)
        if (!near_zero(r2(t), tol, S(scale * scale * ls)))
          throw error("InternalCheck", "cycle realizability fails on a lambda basis vector");
    }
  }
  return lam;
}

// lambda -> v: recover the base vertex from the walls at r0, then verify the
// roundtrip.
template <class S>
Vec<S> vertex_of_lambda(const Fan<S>& f, int r0, const Vec<S>& lam,
                        const S& tol = scalar_traits<S>::default_tol()) {
  auto idx = region_wall_index(f);
  const auto& at0 = idx[r0];
  Mat<S> a(static_cast<int>(at0.size()), f.ambient_dim);
  Vec<S> rhs(static_cast<int>(at0.size()));
  for (std::size_t i = 0; i < at0.size(); ++i) {
    auto [w, sg] = at0[i];
    Vec<S> alpha = S(sg) * f.walls[w].normal;
    a.row(static_cast<int>(i)) = alpha.transpose();
    rhs(static_cast<int>(i)) = S(-1) * lam(w) * alpha.dot(alpha) / S(2);
  }
  Mat<S> gram = a * a.transpose();
  auto u = solve(gram, rhs, tol);
  if (!u) throw error("NotInSpace", "lambda inconsistent at the base region");
  Vec<S> v = a.transpose() * *u;
  Vec<S> back = lambda_of_vertex(f, r0, v, /*check_membership=*/true, tol);
  S scale = max_abs(Mat<S>(lam));
  for (int w = 0; w < lam.size(); ++w)
    if (!near_zero(S(back(w) - lam(w)), tol, scale))
      throw error("NotInSpace", "lambda is not in the lambda inscribed space");
  return v;
}

inline MatQ rationalize(const Mat<double>& m, double tol) {
  double scale = 1;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) scale = std::max(scale, std::abs(m(i, j)));
  MatQ out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out(i, j) = std::abs(m(i, j)) <= tol * scale ? Rat(0) : Rat(m(i, j));
  return out;
}

// Strictly positive certificate on the lambda space; exact decision.
inline std::optional<VecQ> inscribable(const Fan<Rat>& f) {
  return strict_positive_point(lambda_inscribed_space(f));
}

// Float lane: snap the lambda basis to exact values at the mode tolerance,
// then decide exactly.
inline std::optional<Vec<double>> inscribable(const Fan<double>& f,
                                              double tol = 1e-9) {
  Subspace<double> lam = lambda_inscribed_space(f, tol);
  Subspace<Rat> snapped = make_subspace(lam.ambient, rationalize(lam.basis, tol));
  auto cert = strict_positive_point(snapped);
  if (!cert) return std::nullopt;
  Vec<double> out(cert->size());
  for (int i = 0; i < out.size(); ++i) out(i) = (*cert)(i).get_d();
  return out;
}

// The reflection-game trajectory closed into a polytope. Degenerate when
// points collide or leave their open regions.
template <class S>
Polytope<S> reconstruct(const Fan<S>& f, int r0, const Vec<S>& v0,
                        const S& tol = scalar_traits<S>::default_tol()) {
  Subspace<S> sp = based_inscribed_space<S>(f, r0, nullptr, tol);
  if (!subspace_contains(sp, v0, tol))
    throw error("NotInSpace", "seed vertex not in the based inscribed space");
  std::vector<Vec<S>> pos = propagate_vertex(f, r0, v0, tol);
  S scale = S(1);
  for (const auto& p : pos) {
    S m = max_abs(Mat<S>(p));
    if (m > scale) scale = m;
  }
  for (int r = 0; r < f.num_regions; ++r)
    for (int s = r + 1; s < f.num_regions; ++s) {
      bool same = true;
      for (int i = 0; i < f.ambient_dim && same; ++i)
        if (!near_zero(S(pos[r](i) - pos[s](i)), tol, scale)) same = false;
      if (same)
        throw error("Degenerate", "regions " + std::to_string(r) + " and " + std::to_string(s) +
                                      " receive the same point");
    }
  auto idx = region_wall_index(f);
  for (int r = 0; r < f.num_regions; ++r)
    for (const auto& [w, sg] : idx[r]) {
      S v = S(sg) * f.walls[w].normal.dot(pos[r]);
      if (sign_of(v, tol, S(scale * max_abs(Mat<S>(f.walls[w].normal)))) >= 0)
        throw error("Degenerate", "vertex of region " + std::to_string(r) +
                                      " is not interior to its region");
    }
  Polytope<S> p = convex_hull(pos, tol);
  if (static_cast<int>(p.vertices.size()) != f.num_regions)
    throw error("Degenerate", "trajectory hull loses vertices");
  return p;
}

inline std::optional<Polytope<Rat>> is_normally_inscribable(const Polytope<Rat>& p) {
  Fan<Rat> f = normal_fan(p);
  auto cert = inscribable(f);
  if (!cert) return std::nullopt;
  VecQ v0 = vertex_of_lambda(f, 0, *cert);
  Polytope<Rat> out = reconstruct(f, 0, v0);
  if (!fans_equal(normal_fan(out), f))
    throw error("InternalCheck", "reconstructed polytope has the wrong fan");
  return out;
}

// ---- relative inscribability (closed inscribed cone membership) ----

namespace detail {

// Unique vertex of q supported by every region of f; throws when the
// support at a region representative is not a single vertex.
template <class S>
std::vector<int> coarsening_vertex_map(const Polytope<S>& q, const Fan<S>& f, const S& tol) {
  std::vector<int> vmap(f.num_regions, -1);
  for (int r = 0; r < f.num_regions; ++r) {
    auto face = support_face(q, region_rep(f, r), tol);
    if (face.size() != 1)
      throw error("NotACoarsening", "fan region does not select a vertex");
    vmap[r] = face[0];
  }
  if (!f.region_generators.empty()) {
    for (int r = 0; r < f.num_regions; ++r) {
      const Mat<S>& g = f.region_generators[r];
      for (int i = 0; i < g.rows(); ++i) {
        auto face = support_face(q, Vec<S>(g.row(i).transpose()), tol);
        if (std::find(face.begin(), face.end(), vmap[r]) == face.end())
          throw error("NotACoarsening", "region generator escapes the vertex cone");
      }
    }
  }
  return vmap;
}

}  // namespace detail

template <class S>
bool relatively_inscribed(const Polytope<S>& q, const Fan<S>& f,
                          const S& tol = scalar_traits<S>::default_tol()) {
  detail::coarsening_vertex_map(q, f, tol);
  auto fit = is_inscribed(q, tol);
  if (!fit) return false;
  for (int r = 0; r < f.num_regions; ++r) {
    bool hit = false;
    for (const auto& v : q.vertices)
      if (in_region(f, r, Vec<S>(v - fit->first), /*strict=*/false, tol)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

// Relative interior point of a wall cone; needs region generators (normal
// fans carry them), otherwise falls back to a verified projection.
template <class S>
Vec<S> wall_rep(const Fan<S>& f, int w, const S& tol = scalar_traits<S>::default_tol()) {
  int a = f.walls[w].from, b = f.walls[w].to;
  if (!f.region_generators.empty()) {
    const Mat<S>& ga = f.region_generators[a];
    const Mat<S>& gb = f.region_generators[b];
    Vec<S> sum = Vec<S>::Zero(f.ambient_dim);
    int hits = 0;
    for (int i = 0; i < ga.rows(); ++i)
      for (int j = 0; j < gb.rows(); ++j) {
        Vec<S> d = (ga.row(i) - gb.row(j)).transpose();
        bool eq = true;
        for (int t = 0; t < d.size() && eq; ++t)
          if (!near_zero(d(t), tol, max_abs(Mat<S>(ga)))) eq = false;
        if (eq) {
          sum += ga.row(i).transpose();
          ++hits;
        }
      }
    if (hits > 0) return sum;
  }
  const Vec<S>& alpha = f.walls[w].normal;
  Vec<S> rep = region_rep(f, a);
  Vec<S> proj = rep - Vec<S>(alpha.dot(rep) / alpha.dot(alpha) * alpha);
  if (!in_region(f, a, proj, false, tol) || !in_region(f, b, proj, false, tol))
    throw error("InvalidFan", "cannot find a relative interior point of a wall");
  return proj;
}

// Equivalent membership test: circumcenters of wall-supported faces must lie
// in the wall hyperplanes.
template <class S>
bool edges_orthogonal_check(const Polytope<S>& q, const Fan<S>& f,
                            const S& tol = scalar_traits<S>::default_tol()) {
  auto fit = is_inscribed(q, tol);
  if (!fit) throw error("NotInscribed", "polytope has no circumsphere");
  detail::coarsening_vertex_map(q, f, tol);
  const Vec<S> c = fit->first;
  S scale = max_abs(mat_from_rows(std::vector<Vec<S>>(q.vertices), q.ambient_dim));
  for (int w = 0; w < static_cast<int>(f.walls.size()); ++w) {
    auto face = support_face(q, wall_rep(f, w, tol), tol);
    if (face.size() > 2) throw error("NotACoarsening", "wall supports a face of dim > 1");
    Vec<S> mid;
    if (face.size() == 1)
      mid = q.vertices[face[0]] - c;
    else
      mid = Vec<S>((q.vertices[face[0]] + q.vertices[face[1]]) / S(2) - c);
    if (!near_zero(S(f.walls[w].normal.dot(mid)), tol,
                   S(scale * max_abs(Mat<S>(f.walls[w].normal)))))
      return false;
  }
  return true;
}

// ---- evenness ----

template <class S>
bool evenness(const Polytope<S>& p, const S& tol = scalar_traits<S>::default_tol()) {
  FaceLattice<S> lat = face_lattice(p, tol);
  auto it = lat.faces_by_dim.find(2);
  if (it == lat.faces_by_dim.end()) return true;
  for (const auto& f : it->second)
    if (f.size() % 2 != 0) return false;
  return true;
}

// Even <=> full based space <=> full inscribed cone (the last for
// inscribable polytopes).
inline bool even_theorem_check(const Polytope<Rat>& p) {
  if (p.dim != p.ambient_dim) throw error("BadParams", "polytope must be full-dimensional");
  Fan<Rat> f = normal_fan(p);
  bool even = evenness(p);
  Subspace<Rat> based = based_inscribed_space(f, 0);
  bool ok = (even == (based.dim() == p.ambient_dim));
  if (inscribable(f))
    ok = ok && (even == (lambda_inscribed_space(f).dim() == p.ambient_dim));
  return ok;
}

// ---- canonical inscribable coarsening ----

template <class S>
struct Coarsening {
  std::vector<int> support_walls;  // original wall indices kept
  std::vector<int> region_of;      // original region -> coarse region
  std::vector<int> wall_map;       // original wall -> coarse wall (-1 contracted)
  Fan<S> fan;
};

template <class S>
Coarsening<S> contract_zero_walls(const Fan<S>& f, const std::vector<char>& wall_is_zero,
                                  const S& tol = scalar_traits<S>::default_tol()) {
  Coarsening<S> out;
  std::vector<int> uf(f.num_regions);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  for (int w = 0; w < static_cast<int>(f.walls.size()); ++w)
    if (wall_is_zero[w]) uf[find(f.walls[w].from)] = find(f.walls[w].to);
  std::map<int, int> comp_id;
  out.region_of.resize(f.num_regions);
  for (int r = 0; r < f.num_regions; ++r) {
    int root = find(r);
    auto it = comp_id.find(root);
    if (it == comp_id.end()) it = comp_id.emplace(root, static_cast<int>(comp_id.size())).first;
    out.region_of[r] = it->second;
  }
  Fan<S>& cf = out.fan;
  cf.ambient_dim = f.ambient_dim;
  cf.num_regions = static_cast<int>(comp_id.size());
  cf.lineality = f.lineality;
  out.wall_map.assign(f.walls.size(), -1);
  for (int w = 0; w < static_cast<int>(f.walls.size()); ++w) {
    if (wall_is_zero[w]) continue;
    int a = out.region_of[f.walls[w].from], b = out.region_of[f.walls[w].to];
    if (a == b) throw error("InternalCheck", "nonzero wall inside a contracted component");
    Vec<S> n = a < b ? f.walls[w].normal : Vec<S>(-f.walls[w].normal);
    int existing = wall_between(cf, a, b);
    if (existing >= 0) {
      if (!positively_parallel(cf.walls[existing].normal, n, tol))
        throw error("InternalCheck", "merged walls with non-parallel normals");
      out.wall_map[w] = existing;
      continue;
    }
    Wall<S> cw;
    cw.from = std::min(a, b);
    cw.to = std::max(a, b);
    cw.normal = n;
    out.wall_map[w] = static_cast<int>(cf.walls.size());
    cf.walls.push_back(std::move(cw));
    out.support_walls.push_back(w);
  }
  if (f.has_reps()) {
    cf.region_reps.assign(cf.num_regions, Vec<S>());
    for (int r = 0; r < f.num_regions; ++r)
      if (cf.region_reps[out.region_of[r]].size() == 0)
        cf.region_reps[out.region_of[r]] = f.region_reps[r];
  }
  std::sort(cf.walls.begin(), cf.walls.end(), [](const Wall<S>& x, const Wall<S>& y) {
    return std::make_pair(x.from, x.to) < std::make_pair(y.from, y.to);
  });
  // wall_map and support_walls refer to pre-sort positions; rebuild
  out.wall_map.assign(f.walls.size(), -1);
  for (int w = 0; w < static_cast<int>(f.walls.size()); ++w) {
    if (wall_is_zero[w]) continue;
    int a = out.region_of[f.walls[w].from], b = out.region_of[f.walls[w].to];
    out.wall_map[w] = wall_between(cf, std::min(a, b), std::max(a, b));
  }
  return out;
}

// Largest face of the nonnegative orthant met by the lambda space; zero
// walls contract to the canonical inscribable coarsening.
inline Coarsening<Rat> canonical_inscribable_coarsening(const Fan<Rat>& f) {
  Subspace<Rat> lam = lambda_inscribed_space(f);
  auto [pt, support] = max_support_point(lam);
  std::vector<char> zero(f.walls.size(), 1);
  for (int w : support) zero[w] = 0;
  return contract_zero_walls(f, zero);
}

inline Coarsening<double> canonical_inscribable_coarsening(const Fan<double>& f,
                                                           double tol = 1e-9) {
  Subspace<double> lam = lambda_inscribed_space(f, tol);
  Subspace<Rat> snapped = make_subspace(lam.ambient, rationalize(lam.basis, tol));
  auto [pt, support] = max_support_point(snapped);
  std::vector<char> zero(f.walls.size(), 1);
  for (int w : support) zero[w] = 0;
  return contract_zero_walls(f, zero, tol);
}

// ---- symmetrization ----

template <class S>
Polytope<S> symmetrize(const Polytope<S>& p, const std::vector<Mat<S>>& group,
                       const S& tol = scalar_traits<S>::default_tol()) {
  if (group.empty()) throw error("BadParams", "empty group");
  Fan<S> f = normal_fan(p, tol);
  Vec<S> center = Vec<S>::Zero(p.ambient_dim);
  if (auto fit = is_inscribed(p, tol)) center = fit->first;
  std::vector<Vec<S>> base;
  for (const auto& v : p.vertices) base.push_back(v - center);

  std::vector<Vec<S>> avg(p.vertices.size(), Vec<S>::Zero(p.ambient_dim));
  for (const Mat<S>& g : group) {
    if (!is_orthogonal_matrix(g, tol)) throw error("NotOrthogonal", "group element not orthogonal");
    std::vector<Vec<S>> moved;
    for (const auto& v : base) moved.push_back(g * v);
    Polytope<S> gp = convex_hull(moved, tol);
    if (!fans_equal(f, normal_fan(gp, tol), tol))
      throw error("NotInvariantFan", "group element does not preserve the fan");
    // vertex of gP in the region of vertex r
    for (int r = 0; r < static_cast<int>(p.vertices.size()); ++r) {
      auto face = support_face(gp, region_rep(f, r), tol);
      if (face.size() != 1) throw error("NotInvariantFan", "region support not a vertex");
      avg[r] += gp.vertices[face[0]];
    }
  }
  for (auto& v : avg) v /= S(static_cast<int>(group.size()));
  return convex_hull(avg, tol);
}

// ---- ideal hyperbolic sums ----

// cos(theta) between matched vertices of two unit-inscribed, normally
// equivalent polytopes; exact and region-independent.
template <class S>
S ideal_angle_cos(const Polytope<S>& q, const Polytope<S>& qp,
                  const S& tol = scalar_traits<S>::default_tol()) {
  auto fit = is_inscribed(q, tol);
  auto fit2 = is_inscribed(qp, tol);
  if (!fit || !fit2) throw error("NotUnitInscribed", "missing circumsphere");
  if (!near_zero(S(fit->second - S(1)), tol) || !near_zero(S(fit2->second - S(1)), tol) ||
      !near_zero(S(max_abs(Mat<S>(fit->first))), tol) ||
      !near_zero(S(max_abs(Mat<S>(fit2->first))), tol))
    throw error("NotUnitInscribed", "polytope is not inscribed to the unit sphere at the origin");
  Fan<S> f = normal_fan(q, tol);
  if (!fans_equal(f, normal_fan(qp, tol), tol))
    throw error("NotNormallyEquivalent", "normal fans differ");
  std::optional<S> val;
  for (int r = 0; r < f.num_regions; ++r) {
    Vec<S> rep = region_rep(f, r);
    auto fa = support_face(q, rep, tol);
    auto fb = support_face(qp, rep, tol);
    if (fa.size() != 1 || fb.size() != 1)
      throw error("NotNormallyEquivalent", "region support not a vertex");
    S d = q.vertices[fa[0]].dot(qp.vertices[fb[0]]);
    if (!val)
      val = d;
    else if (!near_zero(S(*val - d), tol))
      throw error("InternalCheck", "vertex angle depends on the region");
  }
  return *val;
}

// (2 + 2cos theta)^(-1/2) (Q + Q'), inscribed to the unit sphere. The
// scaling is the only inexact step.
template <class S>
Polytope<double> ideal_sum(const Polytope<S>& q, const Polytope<S>& qp,
                           const S& tol = scalar_traits<S>::default_tol()) {
  S c = ideal_angle_cos(q, qp, tol);
  S denom = S(2) + S(2) * c;
  if (near_zero(denom, tol)) throw error("Degenerate", "antipodal seeds: theta = pi");
  double scale = 1.0 / std::sqrt(scalar_traits<S>::to_double(denom));
  Fan<S> f = normal_fan(q, tol);
  std::vector<Vec<double>> vs;
  for (int r = 0; r < f.num_regions; ++r) {
    Vec<S> rep = region_rep(f, r);
    auto fa = support_face(q, rep, tol);
    auto fb = support_face(qp, rep, tol);
    Vec<S> s = q.vertices[fa[0]] + qp.vertices[fb[0]];
    Vec<double> v(s.size());
    for (int i = 0; i < s.size(); ++i) v(i) = scale * scalar_traits<S>::to_double(s(i));
    vs.push_back(std::move(v));
  }
  return convex_hull(vs, 1e-9);
}

}  // namespace insc
