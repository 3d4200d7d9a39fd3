#pragma once

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "insc/delaunay.hpp"
#include "insc/fan.hpp"
#include "insc/nestohedra.hpp"
#include "insc/planar.hpp"
#include "insc/polytope.hpp"
#include "insc/trajectory.hpp"

namespace insc {

using json = nlohmann::json;

// ---- canonical writer: sorted keys, rationals as "p/q", floats with 17
// significant digits, byte-stable across runs ----

inline void canonical_dump_rec(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann objects iterate sorted
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        canonical_dump_rec(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        canonical_dump_rec(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float:
      out += double_to_string(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

inline std::string canonical_dump(const json& j) {
  std::string out;
  canonical_dump_rec(j, out);
  out += '\n';
  return out;
}

// ---- scalar parsing ----

template <class S>
S scalar_from_json(const json& j, const std::string& where);

template <>
inline Rat scalar_from_json<Rat>(const json& j, const std::string& where) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw error("InvalidRational", where + ": exact mode needs \"p/q\" strings or integers");
}

template <>
inline double scalar_from_json<double>(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return rat_from_string(j.get<std::string>()).get_d();
  throw error("InvalidNumber", where + ": expected a number");
}

template <class S>
json scalar_to_json(const S& x);

template <>
inline json scalar_to_json<Rat>(const Rat& x) {
  return rat_to_string(x);
}

template <>
inline json scalar_to_json<double>(const double& x) {
  return x;
}

template <class S>
Vec<S> vec_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw error("ParseError", where + ": expected an array");
  Vec<S> v(static_cast<int>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<int>(i)) = scalar_from_json<S>(j[i], where + "/" + std::to_string(i));
  return v;
}

template <class S>
json vec_to_json(const Vec<S>& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(scalar_to_json<S>(v(i)));
  return arr;
}

// ---- polytope documents: {"dim": n, "vertices": [[...], ...]} ----

template <class S>
Polytope<S> polytope_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("vertices"))
    throw error("ParseError", "/: polytope document needs dim and vertices");
  int d = j.at("dim").get<int>();
  std::vector<Vec<S>> pts;
  const json& vs = j.at("vertices");
  if (!vs.is_array() || vs.empty()) throw error("ParseError", "/vertices: nonempty array required");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    Vec<S> v = vec_from_json<S>(vs[i], "/vertices/" + std::to_string(i));
    if (v.size() != d) throw error("ParseError", "/vertices: dimension mismatch");
    pts.push_back(std::move(v));
  }
  return convex_hull(pts);
}

template <class S>
json polytope_to_json(const Polytope<S>& p) {
  json j;
  j["dim"] = p.ambient_dim;
  json vs = json::array();
  for (const auto& v : p.vertices) vs.push_back(vec_to_json<S>(v));
  j["vertices"] = vs;
  return j;
}

// ---- fan documents ----
// {"dim": n, "regions": [ids], "walls": [{"from": R, "to": S,
//  "normal": [...]}, ...], "link_cycles": [[ids...], ...]?}
// Antisymmetric twins may be omitted; canonical output emits both.

template <class S>
Fan<S> fan_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("regions") || !j.contains("walls"))
    throw error("ParseError", "/: fan document needs dim, regions, walls");
  int d = j.at("dim").get<int>();
  std::map<long, int> remap;
  for (const auto& r : j.at("regions")) {
    long id = r.get<long>();
    if (!remap.emplace(id, 0).second) throw error("ParseError", "/regions: duplicate id");
  }
  int next = 0;
  for (auto& [id, at] : remap) at = next++;
  std::vector<std::tuple<int, int, Vec<S>>> raw;
  const json& walls = j.at("walls");
  for (std::size_t i = 0; i < walls.size(); ++i) {
    const json& w = walls[i];
    std::string where = "/walls/" + std::to_string(i);
    if (!w.contains("from") || !w.contains("to") || !w.contains("normal"))
      throw error("ParseError", where + ": wall needs from, to, normal");
    auto fit = remap.find(w.at("from").get<long>());
    auto tit = remap.find(w.at("to").get<long>());
    if (fit == remap.end() || tit == remap.end())
      throw error("ParseError", where + ": unknown region id");
    raw.emplace_back(fit->second, tit->second, vec_from_json<S>(w.at("normal"), where + "/normal"));
  }
  Fan<S> f = fan_from_raw_walls(d, static_cast<int>(remap.size()), raw);
  if (j.contains("link_cycles")) {
    for (const auto& cyc : j.at("link_cycles")) {
      std::vector<int> c;
      for (const auto& r : cyc) {
        auto it = remap.find(r.get<long>());
        if (it == remap.end()) throw error("ParseError", "/link_cycles: unknown region id");
        c.push_back(it->second);
      }
      f.link_cycles.push_back(std::move(c));
    }
  }
  return f;
}

template <class S>
json fan_to_json(const Fan<S>& f) {
  json j;
  j["dim"] = f.ambient_dim;
  json regions = json::array();
  for (int r = 0; r < f.num_regions; ++r) regions.push_back(r);
  j["regions"] = regions;
  json walls = json::array();
  for (const auto& w : f.walls) {
    json a;
    a["from"] = w.from;
    a["to"] = w.to;
    a["normal"] = vec_to_json<S>(w.normal);
    walls.push_back(a);
    json b;
    b["from"] = w.to;
    b["to"] = w.from;
    b["normal"] = vec_to_json<S>(Vec<S>(-w.normal));
    walls.push_back(b);
  }
  std::sort(walls.begin(), walls.end(), [](const json& a, const json& b) {
    return std::make_pair(a.at("from").get<int>(), a.at("to").get<int>()) <
           std::make_pair(b.at("from").get<int>(), b.at("to").get<int>());
  });
  j["walls"] = walls;
  if (!f.link_cycles.empty()) {
    json cycles = json::array();
    for (const auto& c : f.link_cycles) cycles.push_back(c);
    j["link_cycles"] = cycles;
  }
  return j;
}

// ---- lambda documents: {"weights": {"R-S": "p/q", ...}, "anchor":
// {"region": R, "vertex": [...]}?} ----

template <class S>
std::pair<Vec<S>, std::pair<int, Vec<S>>> lambda_from_json(const Fan<S>& f, const json& j,
                                                           bool* has_anchor = nullptr) {
  if (!j.is_object() || !j.contains("weights"))
    throw error("ParseError", "/: lambda document needs weights");
  Vec<S> lam = Vec<S>::Zero(static_cast<int>(f.walls.size()));
  std::vector<char> seen(f.walls.size(), 0);
  for (auto it = j.at("weights").begin(); it != j.at("weights").end(); ++it) {
    const std::string& key = it.key();
    auto dash = key.find('-');
    if (dash == std::string::npos)
      throw error("ParseError", "/weights: keys look like \"R-S\"");
    int a = std::stoi(key.substr(0, dash));
    int b = std::stoi(key.substr(dash + 1));
    int w = wall_between(f, std::min(a, b), std::max(a, b));
    if (w < 0) throw error("ParseError", "/weights/" + key + ": not a wall of the fan");
    lam(w) = scalar_from_json<S>(it.value(), "/weights/" + key);
    seen[w] = 1;
  }
  for (std::size_t w = 0; w < seen.size(); ++w)
    if (!seen[w]) throw error("ParseError", "/weights: missing wall " +
                                  std::to_string(f.walls[w].from) + "-" +
                                  std::to_string(f.walls[w].to));
  std::pair<int, Vec<S>> anchor{0, Vec<S>::Zero(f.ambient_dim)};
  bool anchored = j.contains("anchor");
  if (anchored) {
    anchor.first = j.at("anchor").at("region").get<int>();
    anchor.second = vec_from_json<S>(j.at("anchor").at("vertex"), "/anchor/vertex");
  }
  if (has_anchor) *has_anchor = anchored;
  return {lam, anchor};
}

template <class S>
json lambda_to_json(const Fan<S>& f, const Vec<S>& lam) {
  json weights;
  for (int w = 0; w < static_cast<int>(f.walls.size()); ++w)
    weights[std::to_string(f.walls[w].from) + "-" + std::to_string(f.walls[w].to)] =
        scalar_to_json<S>(lam(w));
  json j;
  j["weights"] = weights;
  return j;
}

// ---- profiles: {"pi_multiples": ["p/q", ...]} or {"radians": [...]} ----

inline Profile<Rat> profile_from_json_exact(const json& j) {
  if (!j.is_object() || !j.contains("pi_multiples"))
    throw error("ParseError", "/: exact profiles need pi_multiples");
  Profile<Rat> b;
  for (const auto& x : j.at("pi_multiples")) b.pi_units.push_back(scalar_from_json<Rat>(x, "/pi_multiples"));
  return b;
}

inline Profile<double> profile_from_json_float(const json& j) {
  Profile<double> b;
  if (j.contains("pi_multiples")) {
    for (const auto& x : j.at("pi_multiples"))
      b.pi_units.push_back(scalar_from_json<double>(x, "/pi_multiples"));
  } else if (j.contains("radians")) {
    for (const auto& x : j.at("radians"))
      b.pi_units.push_back(scalar_from_json<double>(x, "/radians") / M_PI);
  } else {
    throw error("ParseError", "/: profiles need pi_multiples or radians");
  }
  return b;
}

template <class S>
json profile_to_json(const Profile<S>& b) {
  json j;
  if constexpr (scalar_traits<S>::exact) {
    json arr = json::array();
    for (const auto& x : b.pi_units) arr.push_back(rat_to_string(x));
    j["pi_multiples"] = arr;
  } else {
    json arr = json::array();
    for (double x : b.pi_units) arr.push_back(x * M_PI);
    j["radians"] = arr;
  }
  return j;
}

// ---- building sets: {"ground": d, "sets": [[1,2],[2,3],...]} ----

inline BuildingSet building_from_json(const json& j) {
  if (!j.is_object() || !j.contains("ground") || !j.contains("sets"))
    throw error("ParseError", "/: building set document needs ground and sets");
  std::vector<std::vector<int>> sets;
  for (const auto& s : j.at("sets")) sets.push_back(s.get<std::vector<int>>());
  return make_building_set(j.at("ground").get<int>(), sets);
}

inline json building_to_json(const BuildingSet& b) {
  json j;
  j["ground"] = b.ground;
  json sets = json::array();
  for (unsigned m : b.sets) {
    std::vector<int> s;
    for (int i = 0; i < b.ground; ++i)
      if (m >> i & 1) s.push_back(i + 1);
    sets.push_back(s);
  }
  j["sets"] = sets;
  return j;
}

// ---- routing schemes: the fan wall format without cone data ----

template <class S>
RoutingScheme<S> scheme_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("nodes") || !j.contains("edges"))
    throw error("ParseError", "/: scheme document needs dim, nodes, edges");
  std::vector<std::tuple<int, int, Vec<S>>> raw;
  const json& edges = j.at("edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& e = edges[i];
    std::string where = "/edges/" + std::to_string(i);
    raw.emplace_back(e.at("from").get<int>(), e.at("to").get<int>(),
                     vec_from_json<S>(e.at("direction"), where + "/direction"));
  }
  return make_routing_scheme(j.at("dim").get<int>(), j.at("nodes").get<int>(), raw);
}

// ---- labelled configurations: {"dim": d-1, "points": {"1": [...], ...}} ----

template <class S>
LabelledConfig<S> config_from_json(const json& j) {
  if (!j.is_object() || !j.contains("points"))
    throw error("ParseError", "/: configuration document needs points");
  LabelledConfig<S> u;
  for (auto it = j.at("points").begin(); it != j.at("points").end(); ++it) {
    u.labels.push_back(std::stoi(it.key()));
    u.points.push_back(vec_from_json<S>(it.value(), "/points/" + it.key()));
  }
  return u;
}

}  // namespace insc
