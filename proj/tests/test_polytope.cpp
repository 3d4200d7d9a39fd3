#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "insc/lp.hpp"
#include "insc/polytope.hpp"

using namespace insc;

namespace {

VecQ vq(std::initializer_list<long> xs) {
  VecQ v(static_cast<int>(xs.size()));
  int i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

std::vector<VecQ> sphere61_points() {
  std::vector<VecQ> pts;
  for (int x = -8; x <= 8; ++x)
    for (int y = -8; y <= 8; ++y)
      for (int z = -8; z <= 8; ++z)
        if (x * x + y * y + z * z == 61) pts.push_back(vq({x, y, z}));
  return pts;
}

bool facets_certify(const Polytope<Rat>& p) {
  for (const auto& f : p.facets) {
    int on = 0;
    for (int i = 0; i < static_cast<int>(p.vertices.size()); ++i) {
      Rat s = f.normal.dot(p.vertices[i]) - f.offset;
      if (s > 0) return false;
      if (s == 0) ++on;
      bool listed = std::binary_search(f.vertex_ids.begin(), f.vertex_ids.end(), i);
      if (listed != (s == 0)) return false;
    }
    if (on != static_cast<int>(f.vertex_ids.size())) return false;
  }
  return true;
}

bool same_vertex_set(const Polytope<Rat>& p, std::vector<VecQ> expect) {
  if (p.vertices.size() != expect.size()) return false;
  for (const VecQ& v : p.vertices) {
    auto it = std::find(expect.begin(), expect.end(), v);
    if (it == expect.end()) return false;
    expect.erase(it);
  }
  return true;
}

}  // namespace

TEST_CASE("hull drops interior points") {
  auto p = convex_hull<Rat>({vq({0, 0}), vq({2, 0}), vq({2, 2}), vq({0, 2}), vq({1, 1})});
  CHECK(p.vertices.size() == 4);
  CHECK(p.dim == 2);
  CHECK(p.facets.size() == 4);
  CHECK(facets_certify(p));
}

TEST_CASE("hull of permutations of (0,1,2) is a planar hexagon") {
  auto p = permutahedron({Rat(0), Rat(1), Rat(2)});
  CHECK(p.ambient_dim == 3);
  CHECK(p.dim == 2);
  CHECK(p.vertices.size() == 6);
  CHECK(p.facets.size() == 6);
  CHECK(facets_certify(p));
}

TEST_CASE("hull handles collinear boundary points") {
  auto p = convex_hull<Rat>({vq({0, 0}), vq({1, 0}), vq({2, 0}), vq({0, 2}), vq({2, 2})});
  CHECK(p.vertices.size() == 4);
  CHECK(facets_certify(p));
}

TEST_CASE("72-vertex sphere polytope") {
  auto pts = sphere61_points();
  REQUIRE(pts.size() == 72);
  auto p = convex_hull(pts);
  CHECK(p.vertices.size() == 72);
  CHECK(p.dim == 3);
  CHECK(p.facets.size() == 38);
  CHECK(facets_certify(p));

  auto lat = face_lattice(p);
  for (const auto& f : lat.faces_by_dim.at(2)) CHECK(f.size() % 2 == 0);
  // simple: every vertex on exactly 3 facets
  std::vector<int> cnt(72, 0);
  for (const auto& f : p.facets)
    for (int v : f.vertex_ids) cnt[v]++;
  for (int c : cnt) CHECK(c == 3);

  // highlighted hexagonal face at c = (1,1,1) containing (3,4,6)
  auto face = support_face(p, vq({1, 1, 1}));
  CHECK(face.size() == 6);
  bool has346 = false;
  for (int i : face) has346 = has346 || (p.vertices[i] == vq({3, 4, 6}));
  CHECK(has346);
}

TEST_CASE("face lattice of the 3-cube") {
  auto c = cube_polytope(3);
  CHECK(c.vertices.size() == 8);
  auto lat = face_lattice(c);
  CHECK(lat.faces_by_dim.at(2).size() == 6);
  CHECK(lat.faces_by_dim.at(1).size() == 12);
  CHECK(lat.faces_by_dim.at(0).size() == 8);

  auto cycles = two_face_cycles(c, lat);
  CHECK(cycles.size() == 6);
  for (const auto& cyc : cycles) CHECK(cyc.size() == 4);
}

TEST_CASE("hexagon lattice has 6 edges") {
  auto p = permutahedron({Rat(0), Rat(1), Rat(2)});
  auto lat = face_lattice(p);
  CHECK(lat.faces_by_dim.at(1).size() == 6);
  auto cycles = two_face_cycles(p, lat);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].size() == 6);
}

TEST_CASE("support faces of the square") {
  auto p = convex_hull<Rat>({vq({0, 0}), vq({1, 0}), vq({1, 1}), vq({0, 1})});
  auto right = support_face(p, vq({1, 0}));
  CHECK(right.size() == 2);
  for (int i : right) CHECK(p.vertices[i](0) == 1);
  CHECK(support_face(p, vq({0, 0})).size() == 4);
}

TEST_CASE("minkowski sums") {
  auto seg1 = convex_hull<Rat>({vq({0, 0}), vq({1, 0})});
  auto seg2 = convex_hull<Rat>({vq({0, 0}), vq({0, 1})});
  auto sq = minkowski_sum(seg1, seg2);
  CHECK(same_vertex_set(sq, {vq({0, 0}), vq({1, 0}), vq({1, 1}), vq({0, 1})}));

  auto hexa = minkowski_sum(hypersimplex(3, 1), hypersimplex(3, 2));
  CHECK(hexa.vertices.size() == 6);
  CHECK(same_vertex_set(hexa, {vq({2, 1, 0}), vq({2, 0, 1}), vq({1, 2, 0}), vq({1, 0, 2}),
                               vq({0, 2, 1}), vq({0, 1, 2})}));

  auto pt = convex_hull<Rat>({vq({5, 7, -1})});
  auto moved = minkowski_sum(permutahedron({Rat(0), Rat(1), Rat(2)}), pt);
  CHECK(moved.vertices.size() == 6);
  bool found = false;
  for (const auto& v : moved.vertices) found = found || v == vq({5, 8, 1});
  CHECK(found);

  CHECK_THROWS_AS(minkowski_sum(seg1, simplex_polytope(3)), error);
}

TEST_CASE("minkowski vertex bound on random pairs") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (int iter = 0; iter < 10; ++iter) {
    std::vector<VecQ> a, b;
    for (int i = 0; i < 5; ++i) a.push_back(vq({dist(rng), dist(rng), dist(rng)}));
    for (int i = 0; i < 5; ++i) b.push_back(vq({dist(rng), dist(rng), dist(rng)}));
    auto pa = convex_hull(a), pb = convex_hull(b);
    auto s = minkowski_sum(pa, pb);
    CHECK(s.vertices.size() <= pa.vertices.size() * pb.vertices.size());
    CHECK(facets_certify(s));
  }
}

TEST_CASE("hull idempotence") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (int iter = 0; iter < 10; ++iter) {
    std::vector<VecQ> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(vq({dist(rng), dist(rng), dist(rng)}));
    auto p = convex_hull(pts);
    auto q = convex_hull_of(p);
    CHECK(same_vertex_set(q, p.vertices));
  }
}

TEST_CASE("hull vertices match the convex-combination oracle") {
  // p is a vertex iff p is not a convex combination of the other points,
  // decided by exact LP feasibility
  auto in_hull_of = [](const VecQ& p, const std::vector<VecQ>& others) {
    int m = static_cast<int>(others.size());
    int d = static_cast<int>(p.size());
    MatQ cons(2 * d + 2 + m, m);
    VecQ rhs(2 * d + 2 + m);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < m; ++j) {
        cons(i, j) = others[j](i);
        cons(d + i, j) = -others[j](i);
      }
      rhs(i) = p(i);
      rhs(d + i) = -p(i);
    }
    for (int j = 0; j < m; ++j) {
      cons(2 * d, j) = 1;
      cons(2 * d + 1, j) = -1;
    }
    rhs(2 * d) = 1;
    rhs(2 * d + 1) = -1;
    for (int j = 0; j < m; ++j) {
      cons(2 * d + 2 + j, j) = 1;
      rhs(2 * d + 2 + j) = 0;
    }
    return feasible_point(cons, rhs).has_value();
  };
  std::mt19937 rng(53);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int dim : {2, 3}) {
    for (int iter = 0; iter < 8; ++iter) {
      std::vector<VecQ> pts;
      for (int i = 0; i < 7; ++i) {
        VecQ v(dim);
        for (int t = 0; t < dim; ++t) v(t) = dist(rng);
        bool dup = false;
        for (const auto& q : pts) dup = dup || q == v;
        if (!dup) pts.push_back(v);
      }
      auto hull = convex_hull(pts);
      for (const auto& p : pts) {
        std::vector<VecQ> others;
        for (const auto& q : pts)
          if (q != p) others.push_back(q);
        bool is_vertex = false;
        for (const auto& hv : hull.vertices) is_vertex = is_vertex || hv == p;
        CHECK(is_vertex == !in_hull_of(p, others));
      }
    }
  }
}

TEST_CASE("inscribed tests") {
  auto cube = cube_polytope(3);
  auto fit = is_inscribed(cube);
  REQUIRE(fit.has_value());
  VecQ c(3);
  c << Rat(1, 2), Rat(1, 2), Rat(1, 2);
  CHECK(fit->first == c);
  CHECK(fit->second == Rat(3, 4));

  auto perm = permutahedron({Rat(0), Rat(1), Rat(2)});
  auto pfit = is_inscribed(perm);
  REQUIRE(pfit.has_value());
  CHECK(pfit->first == vq({1, 1, 1}));
  CHECK(pfit->second == Rat(2));
  for (const auto& v : perm.vertices) {
    VecQ d = v - pfit->first;
    CHECK(d.dot(d) == pfit->second);
  }

  auto bad = convex_hull<Rat>({vq({0, 0}), vq({3, 0}), vq({3, 1}), vq({0, 3})});
  CHECK_FALSE(is_inscribed(bad).has_value());

  auto single = convex_hull<Rat>({vq({2, 5})});
  auto sfit = is_inscribed(single);
  REQUIRE(sfit.has_value());
  CHECK(sfit->first == vq({2, 5}));
  CHECK(sfit->second == 0);
}

TEST_CASE("families") {
  auto h = hypersimplex(4, 2);
  CHECK(h.vertices.size() == 6);
  for (const auto& v : h.vertices) {
    Rat s(0);
    for (int i = 0; i < 4; ++i) {
      CHECK((v(i) == 0 || v(i) == 1));
      s += v(i);
    }
    CHECK(s == 2);
  }

  auto s3 = simplex_polytope(3);
  CHECK(same_vertex_set(s3, {vq({0, 0, 0}), vq({1, 0, 0}), vq({0, 1, 0}), vq({0, 0, 1})}));

  CHECK(crosspolytope(3).vertices.size() == 6);
  CHECK_THROWS_AS(hypersimplex(4, 4), error);
  CHECK_THROWS_AS(hypersimplex(4, 0), error);
  CHECK_THROWS_AS(permutahedron({Rat(2), Rat(1)}), error);

  auto gon = regular_ngon(6);
  CHECK(gon.vertices.size() == 6);
  auto gfit = is_inscribed(gon);
  REQUIRE(gfit.has_value());
  CHECK(std::abs(gfit->second - 1.0) < 1e-9);
}
