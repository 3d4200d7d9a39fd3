#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "insc/inscribe.hpp"
#include "insc/nestohedra.hpp"
#include "util.hpp"

using namespace insc;
using namespace testutil;

namespace {

BuildingSet bs(int d, std::initializer_list<std::vector<int>> sets) {
  return make_building_set(d, std::vector<std::vector<int>>(sets));
}

BuildingSet path3() { return bs(3, {{1}, {2}, {3}, {1, 2}, {2, 3}, {1, 2, 3}}); }

BuildingSet b4() { return bs(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {1, 2, 3, 4}}); }

BuildingSet pitman_stanley(int d) {
  std::vector<std::vector<int>> sets;
  for (int k = 1; k <= d; ++k) {
    std::vector<int> s;
    for (int i = 1; i <= k; ++i) s.push_back(i);
    sets.push_back(s);
  }
  return make_building_set(d, sets);
}

BuildingSet complete_graph(int d) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) edges.push_back({i, j});
  return graphical_building_set(d, edges);
}

}  // namespace

TEST_CASE("validation") {
  CHECK_FALSE(is_building_set(bs(3, {{1, 2}, {2, 3}})));  // union 123 missing
  CHECK(is_building_set(path3()));
  CHECK(is_building_set(b4()));
  CHECK_THROWS_AS(is_inscribed_nestohedron(bs(3, {{1, 2}, {2, 3}})), error);
}

TEST_CASE("restriction") {
  auto r = restriction(complete_graph(3), (1u << 0) | (1u << 1));
  std::set<unsigned> got(r.sets.begin(), r.sets.end());
  CHECK(got == std::set<unsigned>{1u, 2u, 3u});
  CHECK(is_building_set(r));
}

TEST_CASE("counts") {
  auto p = path3();
  CHECK(counts(p, 1, 2, 3) == 1);
  CHECK(counts(p, 2, 3, 1) == 1);
  CHECK(counts(p, 1, 3, 2) == 0);

  auto k3 = complete_graph(3);
  CHECK(counts(k3, 1, 2, 3) == 1);
  CHECK(counts(k3, 2, 3, 1) == 1);
  CHECK(counts(k3, 1, 3, 2) == 1);

  CHECK(counts(bs(3, {{1}, {2}, {3}}), 1, 2, 3) == 0);
}

TEST_CASE("inscribed nestohedron verdicts") {
  CHECK(is_inscribed_nestohedron(b4()));
  CHECK_FALSE(is_inscribed_nestohedron(path3()));
  CHECK(is_inscribed_nestohedron(complete_graph(3)));
  CHECK(is_inscribed_nestohedron(complete_graph(4)));
  CHECK(is_inscribed_nestohedron(pitman_stanley(3)));
  CHECK(is_inscribed_nestohedron(pitman_stanley(5)));
}

TEST_CASE("pruned enumeration agrees with the naive sweep") {
  std::vector<BuildingSet> suite = {
      b4(),
      path3(),
      pitman_stanley(4),
      complete_graph(4),
      graphical_building_set(4, {{1, 2}, {3, 4}}),
      graphical_building_set(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}}),
      graphical_building_set(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}),  // cyclohedron
      bs(4, {{1, 2}, {3, 4}, {1, 2, 3, 4}}),
  };
  for (const auto& b : suite)
    CHECK(is_inscribed_nestohedron(b) == is_inscribed_nestohedron(b, /*naive_oracle=*/true));
}

TEST_CASE("delta closedness") {
  CHECK(is_delta_closed(pitman_stanley(4)));
  CHECK_FALSE(is_delta_closed(b4()));
  CHECK(is_delta_closed(complete_graph(3)));
  CHECK(is_delta_closed(complete_graph(5)));

  // delta-closed implies inscribed
  for (const auto& b : {pitman_stanley(3), pitman_stanley(5), complete_graph(4),
                        bs(4, {{1, 2}, {3, 4}, {1, 2, 3, 4}})})
    if (is_delta_closed(b)) CHECK(is_inscribed_nestohedron(b));
}

TEST_CASE("graphical building sets") {
  auto p = graphical_building_set(3, {{1, 2}, {2, 3}});
  std::set<unsigned> got(p.sets.begin(), p.sets.end());
  CHECK(got == std::set<unsigned>{1u, 2u, 4u, 3u, 6u, 7u});

  CHECK(complete_graph(3).sets.size() == 7);

  // disjoint union of complete graphs is inscribed
  CHECK(is_inscribed_nestohedron(graphical_building_set(4, {{1, 2}, {3, 4}})));

  // graphical verdict: inscribed iff every component is complete, all
  // graphs on <= 5 nodes (exhaustive over edge subsets)
  for (int d = 3; d <= 5; ++d) {
    std::vector<std::pair<int, int>> all_edges;
    for (int i = 1; i <= d; ++i)
      for (int j = i + 1; j <= d; ++j) all_edges.push_back({i, j});
    int m = static_cast<int>(all_edges.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<std::pair<int, int>> edges;
      for (int e = 0; e < m; ++e)
        if (mask >> e & 1) edges.push_back(all_edges[e]);
      auto b = graphical_building_set(d, edges);
      // components complete <=> no induced path i-j-k with ik missing
      std::vector<std::vector<char>> adj(d + 1, std::vector<char>(d + 1, 0));
      for (auto [a, bb] : edges) adj[a][bb] = adj[bb][a] = 1;
      bool cluster = true;
      for (int i = 1; i <= d && cluster; ++i)
        for (int j = 1; j <= d && cluster; ++j)
          for (int k = 1; k <= d && cluster; ++k) {
            if (i == j || j == k || i == k) continue;
            if (adj[i][j] && adj[j][k] && !adj[i][k]) cluster = false;
          }
      CHECK(is_inscribed_nestohedron(b) == cluster);
    }
  }
}

TEST_CASE("nestohedron polytopes") {
  auto hexa = nestohedron_polytope(complete_graph(3));
  CHECK(hexa.vertices.size() == 6);
  CHECK(hexa.dim == 2);

  auto ps3 = nestohedron_polytope(pitman_stanley(3));
  CHECK(ps3.dim == 2);
  CHECK(ps3.vertices.size() == 4);  // combinatorial square

  auto b4p = nestohedron_polytope(b4());
  CHECK(is_inscribed(b4p).has_value());

  CHECK_THROWS_AS(nestohedron_polytope(make_building_set(
                      8, {{1}, {2}, {3}, {4}, {5}, {6}, {7}, {8}})),
                  error);
}

TEST_CASE("path-graph nestohedron is not normally inscribable") {
  // the pentagon again: its fan admits only virtual inscriptions
  auto p = nestohedron_polytope(path3());
  CHECK(p.vertices.size() == 5);
  CHECK_FALSE(is_normally_inscribable(p).has_value());
  CHECK(is_normally_inscribable(nestohedron_polytope(complete_graph(3))).has_value());
}

TEST_CASE("criterion agrees with the circumsphere test") {
  std::vector<BuildingSet> suite = {
      b4(),
      path3(),
      complete_graph(3),
      complete_graph(4),
      pitman_stanley(3),
      pitman_stanley(4),
      pitman_stanley(5),
      graphical_building_set(4, {{1, 2}, {3, 4}}),
      graphical_building_set(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}}),
      graphical_building_set(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}),
      bs(4, {{1, 2}, {3, 4}, {1, 2, 3, 4}}),
      bs(5, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {1, 2, 3, 4}, {5}}),
  };
  for (const auto& b : suite) {
    bool combinatorial = is_inscribed_nestohedron(b);
    bool geometric = is_inscribed(nestohedron_polytope(b)).has_value();
    CHECK(combinatorial == geometric);
  }
}
