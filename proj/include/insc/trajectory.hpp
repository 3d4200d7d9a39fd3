#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "insc/group.hpp"
#include "insc/inscribe.hpp"

namespace insc {

// A routing scheme is graph-plus-lines data: exactly the wall layer of a
// fan, with no cone information. Directions are sign-arbitrary.
template <class S>
using RoutingScheme = Fan<S>;

template <class S>
RoutingScheme<S> make_routing_scheme(int dim, int num_nodes,
                                     const std::vector<std::tuple<int, int, Vec<S>>>& edges) {
  RoutingScheme<S> s = fan_from_raw_walls(dim, num_nodes, edges);
  check_valid(s);
  return s;
}

template <class S>
RoutingScheme<S> scheme_of_fan(const Fan<S>& f) {
  RoutingScheme<S> s;
  s.ambient_dim = f.ambient_dim;
  s.num_regions = f.num_regions;
  s.walls = f.walls;
  s.lineality.resize(0, f.ambient_dim);
  return s;
}

// Fixed space of the closed-walk reflection products: trajectories are its
// unit vectors.
template <class S>
Subspace<S> trajectory_space(const RoutingScheme<S>& s, int base = 0,
                             const S& tol = scalar_traits<S>::default_tol()) {
  return based_inscribed_space<S>(s, base, nullptr, tol);
}

// Gram matrix of unit direction representatives; exact when every pairwise
// quotient has a rational square root.
inline std::optional<MatQ> unit_gram(const RoutingScheme<Rat>& s) {
  int e = static_cast<int>(s.walls.size());
  MatQ g(e, e);
  for (int i = 0; i < e; ++i) {
    for (int j = i; j < e; ++j) {
      Rat ni = s.walls[i].normal.dot(s.walls[i].normal);
      Rat nj = s.walls[j].normal.dot(s.walls[j].normal);
      Rat root;
      if (!rational_sqrt(ni * nj, root)) return std::nullopt;
      g(i, j) = s.walls[i].normal.dot(s.walls[j].normal) / root;
      g(j, i) = g(i, j);
    }
  }
  return g;
}

inline Mat<double> unit_gram(const RoutingScheme<double>& s) {
  int e = static_cast<int>(s.walls.size());
  Mat<double> g(e, e);
  for (int i = 0; i < e; ++i)
    for (int j = i; j < e; ++j) {
      double ni = std::sqrt(s.walls[i].normal.dot(s.walls[i].normal));
      double nj = std::sqrt(s.walls[j].normal.dot(s.walls[j].normal));
      g(i, j) = s.walls[i].normal.dot(s.walls[j].normal) / (ni * nj);
      g(j, i) = g(i, j);
    }
  return g;
}

// The Gram-only description: per fundamental cycle, closure and psd-Gale
// skew-Gram conditions on the unit-normalized weights. The conditions are
// per-cycle, so this matches the trajectory space on single-cycle schemes
// (and in general contains the image of the trajectory space).
template <class S>
Subspace<S> trajectory_space_gram(const RoutingScheme<S>& s, const Mat<S>& gram,
                                  const S& tol = scalar_traits<S>::default_tol()) {
  check_valid(s, tol);
  const int e = static_cast<int>(s.walls.size());
  CycleBasis cb = cycle_basis(s, 0);
  std::vector<Vec<S>> rows;
  for (const auto& cyc : cb.fundamental_cycles) {
    int n = static_cast<int>(cyc.size()) - 1;
    std::vector<int> wall(n);
    std::vector<int> sign(n);
    for (int i = 0; i < n; ++i) {
      int w = wall_between(s, cyc[i], cyc[i + 1]);
      wall[i] = w;
      sign[i] = s.walls[w].from == cyc[i] ? +1 : -1;
    }
    Mat<S> ac(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ac(i, j) = S(sign[i] * sign[j]) * gram(wall[i], wall[j]);
    Mat<S> gale = psd_gale(ac, tol);
    Mat<S> skew = Mat<S>::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        skew(i, j) = ac(i, j);
        skew(j, i) = -ac(i, j);
      }
    Mat<S> gr = gale * skew;
    auto scatter = [&](const Mat<S>& block) {
      for (int r = 0; r < block.rows(); ++r) {
        Vec<S> row = Vec<S>::Zero(e);
        for (int i = 0; i < n; ++i) row(wall[i]) += block(r, i);
        rows.push_back(std::move(row));
      }
    };
    scatter(ac);
    scatter(gr);
  }
  return kernel(mat_from_rows(rows, e), tol);
}

inline Subspace<Rat> trajectory_space_gram(const RoutingScheme<Rat>& s) {
  auto g = unit_gram(s);
  if (!g)
    throw error("IrrationalGram",
                "pairwise unit inner products are not rational; use the float lane");
  return trajectory_space_gram(s, *g);
}

inline Subspace<double> trajectory_space_gram(const RoutingScheme<double>& s,
                                              double tol = 1e-9) {
  return trajectory_space_gram(s, unit_gram(s), tol);
}

// Endomorphism-group generators of the reflection groupoid at `base`:
// tree-conjugated fundamental-cycle transforms.
template <class S>
std::vector<Mat<S>> hom_group_generators(const RoutingScheme<S>& s, int base,
                                         const S& tol = scalar_traits<S>::default_tol()) {
  CycleBasis cb = cycle_basis(s, base);
  std::vector<Mat<S>> gens;
  for (const auto& cyc : cb.fundamental_cycles) {
    Mat<S> tw = walk_transform(s, tree_walk(cb, cyc.front()), tol);
    Mat<S> tc = walk_transform(s, cyc, tol);
    gens.push_back(Mat<S>(tw.transpose() * tc * tw));
  }
  return gens;
}

inline std::optional<std::vector<MatQ>> hom_group(const RoutingScheme<Rat>& s, int base,
                                                  long max_order = 20160) {
  return group_closure(hom_group_generators(s, base), max_order);
}

// ---- groups of projectivities ----

struct SimplicialComplex {
  int num_vertices = 0;                 // vertices 1..num_vertices
  std::vector<std::vector<int>> facets;  // vertex lists
};

inline RoutingScheme<Rat> projectivity_scheme(const SimplicialComplex& delta) {
  if (delta.facets.empty()) throw error("NotPure", "no facets");
  std::size_t d = delta.facets[0].size();
  std::vector<std::set<int>> fs;
  for (const auto& f : delta.facets) {
    if (f.size() != d) throw error("NotPure", "facets of unequal size");
    fs.emplace_back(f.begin(), f.end());
    if (fs.back().size() != d) throw error("NotPure", "repeated vertex in a facet");
  }
  std::vector<std::tuple<int, int, VecQ>> edges;
  for (int i = 0; i < static_cast<int>(fs.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(fs.size()); ++j) {
      std::vector<int> common;
      std::set_intersection(fs[i].begin(), fs[i].end(), fs[j].begin(), fs[j].end(),
                            std::back_inserter(common));
      if (common.size() != d - 1) continue;
      std::vector<int> vi, vj;
      std::set_difference(fs[i].begin(), fs[i].end(), fs[j].begin(), fs[j].end(),
                          std::back_inserter(vi));
      std::set_difference(fs[j].begin(), fs[j].end(), fs[i].begin(), fs[i].end(),
                          std::back_inserter(vj));
      VecQ dir = VecQ::Zero(delta.num_vertices);
      dir(vi[0] - 1) = 1;
      dir(vj[0] - 1) = -1;
      edges.emplace_back(i, j, std::move(dir));
    }
  RoutingScheme<Rat> s = fan_from_raw_walls(delta.num_vertices,
                                            static_cast<int>(fs.size()), edges);
  FanReport rep = validate(s);
  if (!rep.ok) throw error("NotStronglyConnected", rep.violations.front());
  return s;
}

inline std::optional<std::vector<MatQ>> projectivity_group(const SimplicialComplex& delta,
                                                           int base_facet,
                                                           long max_order = 20160) {
  return hom_group(projectivity_scheme(delta), base_facet, max_order);
}

}  // namespace insc
