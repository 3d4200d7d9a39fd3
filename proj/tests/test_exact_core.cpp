#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "insc/group.hpp"
#include "insc/linalg.hpp"
#include "insc/lp.hpp"

using namespace insc;

namespace {

VecQ vq(std::initializer_list<long> xs) {
  VecQ v(static_cast<int>(xs.size()));
  int i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

MatQ mq(int r, int c, std::initializer_list<long> xs) {
  MatQ m(r, c);
  int i = 0;
  for (long x : xs) {
    m(i / c, i % c) = x;
    ++i;
  }
  return m;
}

// Brute-force emptiness oracle for {y : M y >= b} when the feasible set is
// pointed: enumerate basic solutions from row subsets.
bool brute_force_feasible(const MatQ& m, const VecQ& b) {
  int k = static_cast<int>(m.cols());
  int n = static_cast<int>(m.rows());
  std::vector<int> idx(k, 0);
  std::function<bool(int, int)> rec = [&](int pos, int start) -> bool {
    if (pos == k) {
      MatQ a(k, k);
      VecQ rhs(k);
      for (int i = 0; i < k; ++i) {
        a.row(i) = m.row(idx[i]);
        rhs(i) = b(idx[i]);
      }
      auto y = solve(a, rhs);
      if (!y) return false;
      if (rank_of(MatQ(a)) < k) return false;
      VecQ res = m * *y - b;
      for (int i = 0; i < n; ++i)
        if (res(i) < 0) return false;
      return true;
    }
    for (int i = start; i < n; ++i) {
      idx[pos] = i;
      if (rec(pos + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace

TEST_CASE("kernel basics") {
  MatQ m = mq(1, 2, {1, 1});
  Subspace<Rat> k = kernel(m);
  CHECK(k.dim() == 1);
  CHECK(subspace_contains(k, vq({1, -1})));

  CHECK(kernel(MatQ(MatQ::Identity(2, 2))).dim() == 0);
}

TEST_CASE("kernel of the hexagon closed-walk matrix is 4-dimensional") {
  // directed edge vectors around the braid hexagon (boundary order), which
  // telescope to zero; the closed-walk solution space is the type cone
  VecQ v[6] = {vq({1, 2, 3}), vq({2, 1, 3}), vq({3, 1, 2}),
               vq({3, 2, 1}), vq({2, 3, 1}), vq({1, 3, 2})};
  MatQ a(3, 6);
  for (int i = 0; i < 6; ++i) a.col(i) = v[(i + 1) % 6] - v[i];
  CHECK(rank_of(MatQ(a)) == 2);
  CHECK(kernel(a).dim() == 4);
}

TEST_CASE("kernel rank-nullity on random matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (int iter = 0; iter < 25; ++iter) {
    int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 5);
    MatQ m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = dist(rng);
    Subspace<Rat> k = kernel(m);
    CHECK(k.dim() + rank_of(MatQ(m)) == c);
    for (int i = 0; i < k.dim(); ++i)
      CHECK((m * VecQ(k.basis.row(i).transpose())).isZero(Rat(0)));
  }
}

TEST_CASE("gale transform") {
  MatQ a = mq(2, 3, {1, 0, 1, 0, 1, 1});  // columns e1, e2, e1+e2
  MatQ g = gale_transform(a);
  REQUIRE(g.rows() == 1);
  // row-equivalent to (1, 1, -1)
  CHECK(g(0, 0) * Rat(-1) == g(0, 2));
  CHECK(g(0, 1) * Rat(-1) == g(0, 2));
  CHECK((g * a.transpose()).isZero(Rat(0)));

  MatQ full = mq(2, 2, {1, 0, 0, 1});
  CHECK(gale_transform(full).rows() == 0);

  // Edge-direction matrix of a pentagon cycle: 5 columns, rank 2.
  MatQ pent(2, 5);
  VecQ verts[5] = {vq({0, 0}), vq({2, 0}), vq({3, 2}), vq({1, 4}), vq({-1, 2})};
  for (int i = 0; i < 5; ++i) pent.col(i) = verts[(i + 1) % 5] - verts[i];
  MatQ gp = gale_transform(pent);
  CHECK(gp.rows() == 3);
  CHECK((gp * pent.transpose()).isZero(Rat(0)));
  MatQ stacked(2 + 3, 5);
  stacked.topRows(2) = pent;
  stacked.bottomRows(3) = gp;
  CHECK(rank_of(std::move(stacked)) == 5);
}

TEST_CASE("psd gale") {
  MatQ id = MatQ::Identity(3, 3);
  CHECK(psd_gale(id).isZero(Rat(0)));

  MatQ ones = mq(2, 2, {1, 1, 1, 1});
  MatQ g = psd_gale(ones);
  // [[1,-1],[-1,1]] up to positive scaling
  REQUIRE(g(0, 0) > 0);
  Rat s = g(0, 0);
  CHECK(g(0, 1) == -s);
  CHECK(g(1, 0) == -s);
  CHECK(g(1, 1) == s);
  CHECK((ones * g).isZero(Rat(0)));
  CHECK(rank_of(MatQ(ones + g)) == 2);

  // Gram of three unit vectors at mutual angle 2*pi/3.
  MatQ tri(3, 3);
  tri << Rat(1), Rat(-1, 2), Rat(-1, 2),  //
      Rat(-1, 2), Rat(1), Rat(-1, 2),     //
      Rat(-1, 2), Rat(-1, 2), Rat(1);
  MatQ gt = psd_gale(tri);
  CHECK(rank_of(MatQ(gt)) == 1);
  CHECK((tri * gt).isZero(Rat(0)));
  CHECK(rank_of(MatQ(tri + gt)) == 3);

  MatQ neg = mq(2, 2, {1, 2, 2, 1});  // indefinite
  CHECK_THROWS_AS(psd_gale(neg), error);
}

TEST_CASE("reflect") {
  CHECK(reflect(vq({1, 0}), vq({1, 0})) == vq({-1, 0}));
  CHECK(reflect(vq({0, 3}), vq({1, 0})) == vq({0, 3}));
  CHECK(reflect(vq({3, 4, 6}), vq({1, -1, 0})) == vq({4, 3, 6}));
  CHECK_THROWS_AS(reflect(vq({1, 2}), vq({0, 0})), error);

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dist(-6, 6);
  for (int iter = 0; iter < 30; ++iter) {
    VecQ x(3), a(3);
    for (int i = 0; i < 3; ++i) {
      x(i) = Rat(dist(rng), 1 + (rng() % 5));
      x(i).canonicalize();
      a(i) = dist(rng);
    }
    if (a.isZero(Rat(0))) continue;
    VecQ y = reflect(x, a);
    CHECK(reflect(y, a) == x);           // involution
    CHECK(y.dot(y) == x.dot(x));         // norm preserved
  }
}

TEST_CASE("strict positive point") {
  Subspace<Rat> u = make_subspace(2, mq(1, 2, {1, 1}));
  auto p = strict_positive_point(u);
  REQUIRE(p.has_value());
  CHECK((*p)(0) >= 1);
  CHECK((*p)(1) >= 1);
  CHECK(subspace_contains(u, *p));

  Subspace<Rat> v = make_subspace(2, mq(1, 2, {1, -1}));
  CHECK_FALSE(strict_positive_point(v).has_value());
  CHECK_FALSE(brute_force_feasible(v.basis.transpose(), VecQ::Ones(2)));

  // a plane meeting the open positive orthant of R^6
  Subspace<Rat> hexa =
      make_subspace(6, mq(2, 6, {1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1}));
  auto cert = strict_positive_point(hexa);
  REQUIRE(cert.has_value());
  for (int i = 0; i < 6; ++i) CHECK((*cert)(i) >= 1);
  CHECK(subspace_contains(hexa, *cert));
}

TEST_CASE("strict positive point against brute force") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int iter = 0; iter < 40; ++iter) {
    int n = 2 + static_cast<int>(rng() % 3);
    int k = 1 + static_cast<int>(rng() % 2);
    MatQ rows(k, n);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j) rows(i, j) = dist(rng);
    Subspace<Rat> u = make_subspace(n, std::move(rows));
    if (u.dim() == 0) continue;
    auto p = strict_positive_point(u);
    bool oracle = brute_force_feasible(u.basis.transpose(), VecQ::Ones(n));
    CHECK(p.has_value() == oracle);
    if (p) {
      CHECK(subspace_contains(u, *p));
      for (int i = 0; i < n; ++i) CHECK((*p)(i) >= 1);
    }
  }
}

TEST_CASE("max support point") {
  Subspace<Rat> u = make_subspace(2, mq(1, 2, {1, -1}));
  auto [pt, sup] = max_support_point(u);
  CHECK(pt.isZero(Rat(0)));
  CHECK(sup.empty());

  Subspace<Rat> v = make_subspace(3, mq(1, 3, {1, 1, 0}));
  auto [pt2, sup2] = max_support_point(v);
  CHECK(sup2 == std::vector<int>{0, 1});
  CHECK(pt2(0) > 0);
  CHECK(pt2(1) > 0);
  CHECK(pt2(2) == 0);
  CHECK(subspace_contains(v, pt2));
}

TEST_CASE("circumcenter space") {
  std::vector<VecQ> sq = {vq({0, 0}), vq({1, 0}), vq({1, 1}), vq({0, 1})};
  auto fit = circumcenter_space(sq);
  REQUIRE(fit.has_value());
  VecQ half(2);
  half << Rat(1, 2), Rat(1, 2);
  CHECK(fit->center == half);
  CHECK(fit->radius2 == Rat(1, 2));
  CHECK(fit->directions.dim() == 0);

  std::vector<VecQ> perm;
  long zs[3] = {0, 1, 2};
  int order[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& o : order) {
    VecQ v(3);
    for (int i = 0; i < 3; ++i) v(i) = zs[o[i]];
    perm.push_back(v);
  }
  auto pfit = circumcenter_space(perm);
  REQUIRE(pfit.has_value());
  CHECK(pfit->directions.dim() == 1);
  CHECK(pfit->center == vq({1, 1, 1}));
  CHECK(pfit->radius2 == Rat(2));
  for (const VecQ& v : perm) {
    VecQ d = v - pfit->center;
    CHECK(d.dot(d) == Rat(2));
  }

  std::vector<VecQ> bad = {vq({0, 0}), vq({3, 0}), vq({3, 1}), vq({0, 3})};
  CHECK_FALSE(circumcenter_space(bad).has_value());
}

TEST_CASE("group closure") {
  MatQ neg = -MatQ::Identity(2, 2);
  auto g1 = group_closure({neg}, 10);
  REQUIRE(g1.has_value());
  CHECK(g1->size() == 2);

  // Two reflections whose mirrors meet at angle pi/3 (type A2 roots).
  MatQ r1 = reflection_matrix(vq({1, -1, 0}));
  MatQ r2 = reflection_matrix(vq({0, 1, -1}));
  auto g2 = group_closure({r1, r2}, 100);
  REQUIRE(g2.has_value());
  CHECK(g2->size() == 6);
  // closed under product and inverse
  std::map<std::string, int> keys;
  for (const MatQ& m : *g2) keys[matrix_key(m)] = 1;
  for (const MatQ& a : *g2)
    for (const MatQ& b : *g2) {
      CHECK(keys.count(matrix_key(MatQ(a * b))) == 1);
      CHECK(keys.count(matrix_key(MatQ(a.transpose()))) == 1);
    }

  // Rational rotation by an irrational angle: infinite cyclic.
  MatQ rot(2, 2);
  rot << Rat(3, 5), Rat(-4, 5), Rat(4, 5), Rat(3, 5);
  CHECK_FALSE(group_closure({rot}, 1000).has_value());

  MatQ notorth = mq(2, 2, {2, 0, 0, 1});
  CHECK_THROWS_AS(group_closure({notorth}, 10), error);
}

TEST_CASE("subspace intersection and complement") {
  Subspace<Rat> a = make_subspace(3, mq(2, 3, {1, 0, 0, 0, 1, 0}));
  Subspace<Rat> b = make_subspace(3, mq(2, 3, {0, 1, 0, 0, 0, 1}));
  Subspace<Rat> c = subspace_intersect(a, b);
  CHECK(c.dim() == 1);
  CHECK(subspace_contains(c, vq({0, 1, 0})));

  Subspace<Rat> oc = orthogonal_complement(a);
  CHECK(oc.dim() == 1);
  CHECK(subspace_contains(oc, vq({0, 0, 1})));
}
