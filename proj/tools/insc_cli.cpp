// Batch front end: JSON in, canonical JSON (or CSV) out.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "insc/inscribe.hpp"
#include "insc/json_io.hpp"
#include "insc/typecone.hpp"

namespace {

using namespace insc;

struct Mode {
  bool exact = true;
  double eps = 1e-9;
  int base_region = 0;
  bool strict = false;
  bool oracle = false;
  bool csv = false;
};

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("IOError", "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw error("ParseError", path + ": " + e.what());
  }
  return j;
}

void emit(const json& j, const Mode& mode) {
  (void)mode;
  std::cout << canonical_dump(j);
}

void emit_csv_row(const json& arr) {
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) std::cout << ',';
    if (arr[i].is_string())
      std::cout << arr[i].get<std::string>();
    else
      std::cout << double_to_string(arr[i].get<double>());
  }
  std::cout << '\n';
}

template <class S>
int run_inscribe_lane(const Mode& mode, const std::string& fan_path,
                      const std::string& poly_path) {
  Fan<S> f;
  std::optional<Polytope<S>> poly;
  if (!poly_path.empty()) {
    poly = polytope_from_json<S>(load(poly_path));
    f = normal_fan(*poly, S(mode.exact ? 0 : mode.eps));
  } else {
    f = fan_from_json<S>(load(fan_path));
  }
  S tol = S(scalar_traits<S>::exact ? 0 : mode.eps);
  Subspace<S> based = based_inscribed_space<S>(f, mode.base_region, nullptr, tol);
  Subspace<S> lam = lambda_inscribed_space(f, tol);
  json out;
  out["virtually_inscribable"] = based.dim() > 0;
  out["dim_inspc"] = lam.dim();
  out["dim_based"] = based.dim();
  std::optional<Vec<S>> cert;
  if constexpr (scalar_traits<S>::exact)
    cert = inscribable(f);
  else
    cert = inscribable(f, mode.eps);
  out["inscribable"] = cert.has_value();
  if (cert) {
    json arr = json::array();
    for (int w = 0; w < static_cast<int>(f.walls.size()); ++w)
      arr.push_back(scalar_to_json<S>((*cert)(w)));
    out["lambda"] = arr;
    out["lambda_weights"] = lambda_to_json(f, *cert).at("weights");
  } else {
    out["lambda"] = json();
  }
  json witness;
  if (cert) {
    try {
      Vec<S> v0 = vertex_of_lambda(f, mode.base_region, *cert, tol);
      Polytope<S> w = reconstruct(f, mode.base_region, v0, tol);
      witness = polytope_to_json(w);
    } catch (const error&) {
      witness = json();
    }
  }
  out["witness_polytope"] = witness;
  if (mode.csv && cert) {
    json row = json::array();
    for (int w = 0; w < static_cast<int>(f.walls.size()); ++w)
      row.push_back(scalar_to_json<S>((*cert)(w)));
    emit_csv_row(row);
  } else {
    emit(out, mode);
  }
  return (mode.strict && !cert) ? 3 : 0;
}

template <class S>
int run_fan_lane(const Mode& mode, const std::string& fan_path, const std::string& poly_path) {
  S tol = S(scalar_traits<S>::exact ? 0 : mode.eps);
  Fan<S> f;
  if (!poly_path.empty())
    f = normal_fan(polytope_from_json<S>(load(poly_path)), tol);
  else
    f = fan_from_json<S>(load(fan_path));
  FanReport rep = validate(f, tol);
  json out;
  out["valid"] = rep.ok;
  out["violations"] = rep.violations;
  out["regions"] = f.num_regions;
  out["walls"] = static_cast<int>(f.walls.size());
  if (rep.ok) {
    CycleBasis cb = cycle_basis(f, 0);
    out["fundamental_cycles"] = static_cast<int>(cb.fundamental_cycles.size());
    out["fan"] = fan_to_json(f);
  }
  emit(out, mode);
  return (mode.strict && !rep.ok) ? 2 : 0;
}

template <class S>
int run_polytope_lane(const Mode& mode, const std::string& poly_path,
                      const std::string& sum_path, const std::string& ideal_path) {
  S tol = S(scalar_traits<S>::exact ? 0 : mode.eps);
  Polytope<S> p = polytope_from_json<S>(load(poly_path));
  json out;
  out["dim"] = p.ambient_dim;
  out["intrinsic_dim"] = p.dim;
  out["num_vertices"] = static_cast<int>(p.vertices.size());
  out["facets"] = static_cast<int>(p.facets.size());
  out["even"] = evenness(p, tol);
  auto fit = is_inscribed(p, tol);
  out["inscribed"] = fit.has_value();
  if (fit) {
    out["center"] = vec_to_json<S>(fit->first);
    out["radius2"] = scalar_to_json<S>(fit->second);
  }
  if (!sum_path.empty()) {
    Polytope<S> q = polytope_from_json<S>(load(sum_path));
    Polytope<S> s = minkowski_sum(p, q, tol);
    out["sum"] = polytope_to_json(s);
    out["sum_inscribed"] = is_inscribed(s, tol).has_value();
    out["sum_same_fan"] = fans_equal(normal_fan(s, tol), normal_fan(p, tol), tol);
  }
  if (!ideal_path.empty()) {
    Polytope<S> q = polytope_from_json<S>(load(ideal_path));
    S c = ideal_angle_cos(p, q, tol);
    out["cos_angle"] = scalar_to_json<S>(c);
    out["ideal_sum"] = polytope_to_json(ideal_sum(p, q, tol));
  }
  emit(out, mode);
  return 0;
}

template <class S>
int run_typecone_lane(const Mode& mode, const std::string& fan_path,
                      const std::string& lambda_path, bool cic) {
  S tol = S(scalar_traits<S>::exact ? 0 : mode.eps);
  Fan<S> f = fan_from_json<S>(load(fan_path));
  json out;
  out["typecone_dim"] = typecone_dim(f, tol);
  out["dim_inspc"] = lambda_inscribed_space(f, tol).dim();
  if (cic) {
    Coarsening<S> co = [&] {
      if constexpr (scalar_traits<S>::exact)
        return canonical_inscribable_coarsening(f);
      else
        return canonical_inscribable_coarsening(f, mode.eps);
    }();
    json cj;
    cj["fan"] = fan_to_json(co.fan);
    cj["support_walls"] = co.support_walls;
    cj["region_of"] = co.region_of;
    out["cic"] = cj;
  }
  if (!lambda_path.empty()) {
    bool has_anchor = false;
    auto [lam, anchor] = lambda_from_json<S>(f, load(lambda_path), &has_anchor);
    out["contains"] = typecone_contains(f, lam, tol);
    LambdaWeights<S> weights = make_lambda_weights(f, lam, tol);
    out["strictly_convex"] = is_strictly_convex(weights, tol);
    out["inscribed_virtual"] =
        inscribed_virtual_check(f, weights, anchor.first, anchor.second, tol);
    bool nonneg = true;
    for (int w = 0; w < lam.size(); ++w) nonneg = nonneg && sign_of(lam(w), tol) >= 0;
    if (nonneg) {
      auto co = coarsening_of(f, weights, tol);
      out["coarsening"] = fan_to_json(co.fan);
    }
  }
  emit(out, mode);
  return 0;
}

int run_planar(const Mode& mode, const std::string& profile_path, const std::string& fan_path,
               const std::string& lengths_path, bool construct, double radius, double rotation) {
  json out;
  if (!lengths_path.empty()) {
    json lj = load(lengths_path);
    std::vector<double> lens;
    for (const auto& x : lj) lens.push_back(scalar_from_json<double>(x, "/lengths"));
    Polytope<double> gon = polygon_from_lengths(lens);
    out["polygon"] = polytope_to_json(gon);
    emit(out, mode);
    return 0;
  }
  if (!fan_path.empty()) {
    json fj = load(fan_path);
    Profile<double> prof;
    if (mode.exact) {
      Fan<Rat> f = fan_from_json<Rat>(fj);
      prof = profile_of_fan(f).first;
    } else {
      Fan<double> f = fan_from_json<double>(fj);
      prof = profile_of_fan(f, mode.eps).first;
    }
    out["profile"] = profile_to_json(prof);
    if (mode.csv) {
      json row = json::array();
      for (double x : prof.pi_units) row.push_back(x);
      emit_csv_row(row);
    } else {
      emit(out, mode);
    }
    return 0;
  }
  json pj = load(profile_path);
  bool have_exact = mode.exact && pj.contains("pi_multiples");
  bool virt, insc;
  int dim;
  if (have_exact) {
    Profile<Rat> b = profile_from_json_exact(pj);
    auto [v, d] = virtually_inscribable_profile(b);
    virt = v;
    dim = d;
    insc = inscribable_profile(b);
    if (construct && insc) out["polygon"] = polytope_to_json(polygon_from_profile(b, radius, rotation));
  } else {
    Profile<double> b = profile_from_json_float(pj);
    auto [v, d] = virtually_inscribable_profile(b, mode.eps);
    virt = v;
    dim = d;
    insc = inscribable_profile(b, mode.eps);
    if (construct && insc)
      out["polygon"] = polytope_to_json(polygon_from_profile(b, radius, rotation, mode.eps));
  }
  out["virtually_inscribable"] = virt;
  out["dim_inspc"] = dim;
  out["inscribable"] = insc;
  emit(out, mode);
  return (mode.strict && !insc) ? 3 : 0;
}

int run_nestohedron(const Mode& mode, const std::string& building_path, bool realize) {
  BuildingSet b = building_from_json(load(building_path));
  json out;
  out["valid"] = is_building_set(b);
  if (!out["valid"].get<bool>()) {
    emit(out, mode);
    return mode.strict ? 2 : 0;
  }
  out["inscribed"] = is_inscribed_nestohedron(b, mode.oracle);
  out["delta_closed"] = is_delta_closed(b);
  if (realize) {
    Polytope<Rat> p = nestohedron_polytope(b);
    out["polytope"] = polytope_to_json(p);
    out["geometric_inscribed"] = is_inscribed(p).has_value();
  }
  emit(out, mode);
  return 0;
}

template <class S>
int run_trajectory_lane(const Mode& mode, const std::string& scheme_path,
                        const std::string& fan_path, long max_order) {
  S tol = S(scalar_traits<S>::exact ? 0 : mode.eps);
  RoutingScheme<S> s;
  if (!fan_path.empty())
    s = scheme_of_fan(fan_from_json<S>(load(fan_path)));
  else
    s = scheme_from_json<S>(load(scheme_path));
  json out;
  out["dim_trajectory_space"] = trajectory_space(s, mode.base_region, tol).dim();
  if constexpr (scalar_traits<S>::exact) {
    if (auto g = unit_gram(s)) out["dim_gram"] = trajectory_space_gram(s, *g, tol).dim();
    auto grp = hom_group(s, mode.base_region, max_order);
    out["hom_group_order"] = grp ? json(static_cast<long>(grp->size())) : json();
  } else {
    out["dim_gram"] = trajectory_space_gram(s, unit_gram(s), tol).dim();
  }
  out["generators"] = static_cast<int>(hom_group_generators(s, mode.base_region, tol).size());
  emit(out, mode);
  return 0;
}

int run_projectivity(const Mode& mode, const std::string& complex_path, long max_order) {
  json cj = load(complex_path);
  SimplicialComplex delta;
  delta.num_vertices = cj.at("vertices").get<int>();
  for (const auto& f : cj.at("facets")) delta.facets.push_back(f.get<std::vector<int>>());
  auto grp = projectivity_group(delta, mode.base_region, max_order);
  json out;
  out["projectivity_order"] = grp ? json(static_cast<long>(grp->size())) : json();
  emit(out, mode);
  return 0;
}

template <class S>
int run_delaunay_lane(const Mode& mode, const std::string& config_path,
                      const std::string& config2_path, const std::string& poly_path,
                      const std::string& poly2_path, const std::string& xi_text) {
  S tol = S(scalar_traits<S>::exact ? 0 : mode.eps);
  json out;
  if (!config_path.empty()) {
    LabelledConfig<S> u = config_from_json<S>(load(config_path));
    DelaunaySubdivision del = delaunay_subdivision(u, tol);
    out["cells"] = del.cells;
    json hidden = json::array();
    for (auto [a, b] : del.hidden_edges) hidden.push_back(json::array({a, b}));
    out["hidden_edges"] = hidden;
    json graph = json::array();
    for (auto [a, b] : del.graph_edges) graph.push_back(json::array({a, b}));
    out["graph_edges"] = graph;
    if (!config2_path.empty()) {
      LabelledConfig<S> u2 = config_from_json<S>(load(config2_path));
      out["normally_equivalent"] = delaunay_normally_equivalent(u, u2, tol);
    }
    emit(out, mode);
    return 0;
  }
  Polytope<S> p = polytope_from_json<S>(load(poly_path));
  Vec<S> xi = vec_from_json<S>(json::parse(xi_text), "/xi");
  auto vis = visibility_complex(p, xi, tol);
  json facets = json::array();
  for (int fidx : vis.visible_facets) facets.push_back(p.facets[fidx].vertex_ids);
  out["visible_facets"] = facets;
  out["boundary_flag"] = vis.boundary_flag;
  if (!poly2_path.empty()) {
    Polytope<S> q = polytope_from_json<S>(load(poly2_path));
    out["same_visibility"] = same_visibility(p, q, mode.base_region, xi, tol);
  }
  emit(out, mode);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inscribed cones, type cones, and reflection groupoids"};
  app.require_subcommand(1);
  app.fallthrough();

  Mode mode;
  double float_eps = -1;
  app.add_flag("--exact", "exact rational arithmetic (default)");
  app.add_option("--float", float_eps, "float mode with the given tolerance");
  app.add_option("--base-region", mode.base_region, "base region / node id");
  app.add_flag("--strict", mode.strict, "exit 3 on infeasible/none results");
  app.add_flag("--oracle", mode.oracle, "enable naive sweep / sampling oracles");
  app.add_flag("--csv", mode.csv, "emit tabular outputs as CSV");

  std::string fan_path, poly_path, poly2_path, lambda_path, profile_path, lengths_path;
  std::string building_path, scheme_path, complex_path, config_path, config2_path, xi_text;
  std::string sum_path, ideal_path;
  bool construct = false, realize = false, cic = false;
  double radius = 1.0, rotation = 0.0;
  long max_order = 20160;

  CLI::App* fan_cmd = app.add_subcommand("fan", "validate or build fans");
  fan_cmd->add_option("--fan", fan_path, "fan document");
  fan_cmd->add_option("--polytope", poly_path, "polytope document");

  CLI::App* inscribe_cmd = app.add_subcommand("inscribe", "inscribed spaces and witnesses");
  inscribe_cmd->add_option("--fan", fan_path, "fan document");
  inscribe_cmd->add_option("--polytope", poly_path, "polytope document");

  CLI::App* poly_cmd = app.add_subcommand("polytope", "hulls, sums, circumspheres");
  poly_cmd->add_option("--in", poly_path, "polytope document")->required();
  poly_cmd->add_option("--sum", sum_path, "Minkowski summand");
  poly_cmd->add_option("--ideal-sum", ideal_path, "unit-inscribed partner");

  CLI::App* typecone_cmd = app.add_subcommand("typecone", "type cones and PL weights");
  typecone_cmd->add_option("--fan", fan_path, "fan document")->required();
  typecone_cmd->add_option("--lambda", lambda_path, "lambda document");
  typecone_cmd->add_flag("--cic", cic, "emit the canonical inscribable coarsening");

  CLI::App* planar_cmd = app.add_subcommand("planar", "2D profiles and polygons");
  planar_cmd->add_option("--profile", profile_path, "profile document");
  planar_cmd->add_option("--fan", fan_path, "fan document (profile extraction)");
  planar_cmd->add_option("--lengths", lengths_path, "edge length array");
  planar_cmd->add_flag("--construct", construct, "emit an inscribed polygon");
  planar_cmd->add_option("--radius", radius, "construction radius");
  planar_cmd->add_option("--rotation", rotation, "placement / family parameter");

  CLI::App* nest_cmd = app.add_subcommand("nestohedron", "building sets and nestohedra");
  nest_cmd->add_option("--building", building_path, "building set document")->required();
  nest_cmd->add_flag("--realize", realize, "emit the nestohedron polytope");

  CLI::App* traj_cmd = app.add_subcommand("trajectory", "routing schemes and groupoids");
  traj_cmd->add_option("--scheme", scheme_path, "routing scheme document");
  traj_cmd->add_option("--fan", fan_path, "fan document");
  traj_cmd->add_option("--complex", complex_path, "simplicial complex document");
  traj_cmd->add_option("--max-order", max_order, "group closure cap");

  CLI::App* del_cmd = app.add_subcommand("delaunay", "subdivisions and visibility");
  del_cmd->add_option("--config", config_path, "labelled configuration");
  del_cmd->add_option("--config2", config2_path, "second configuration");
  del_cmd->add_option("--polytope", poly_path, "unit-inscribed polytope");
  del_cmd->add_option("--polytope2", poly2_path, "second polytope");
  del_cmd->add_option("--xi", xi_text, "sphere point as a JSON array");

  CLI11_PARSE(app, argc, argv);
  if (float_eps > 0) {
    mode.exact = false;
    mode.eps = float_eps;
  }

  try {
    if (fan_cmd->parsed()) {
      if (fan_path.empty() && poly_path.empty())
        throw insc::error("BadParams", "fan: need --fan or --polytope");
      return mode.exact ? run_fan_lane<insc::Rat>(mode, fan_path, poly_path)
                        : run_fan_lane<double>(mode, fan_path, poly_path);
    }
    if (inscribe_cmd->parsed()) {
      if (fan_path.empty() && poly_path.empty())
        throw insc::error("BadParams", "inscribe: need --fan or --polytope");
      return mode.exact ? run_inscribe_lane<insc::Rat>(mode, fan_path, poly_path)
                        : run_inscribe_lane<double>(mode, fan_path, poly_path);
    }
    if (poly_cmd->parsed())
      return mode.exact ? run_polytope_lane<insc::Rat>(mode, poly_path, sum_path, ideal_path)
                        : run_polytope_lane<double>(mode, poly_path, sum_path, ideal_path);
    if (typecone_cmd->parsed())
      return mode.exact ? run_typecone_lane<insc::Rat>(mode, fan_path, lambda_path, cic)
                        : run_typecone_lane<double>(mode, fan_path, lambda_path, cic);
    if (planar_cmd->parsed()) {
      if (profile_path.empty() && fan_path.empty() && lengths_path.empty())
        throw insc::error("BadParams", "planar: need --profile, --fan, or --lengths");
      return run_planar(mode, profile_path, fan_path, lengths_path, construct, radius, rotation);
    }
    if (nest_cmd->parsed()) return run_nestohedron(mode, building_path, realize);
    if (traj_cmd->parsed()) {
      if (!complex_path.empty()) return run_projectivity(mode, complex_path, max_order);
      if (scheme_path.empty() && fan_path.empty())
        throw insc::error("BadParams", "trajectory: need --scheme, --fan, or --complex");
      return mode.exact ? run_trajectory_lane<insc::Rat>(mode, scheme_path, fan_path, max_order)
                        : run_trajectory_lane<double>(mode, scheme_path, fan_path, max_order);
    }
    if (del_cmd->parsed()) {
      if (config_path.empty() && poly_path.empty())
        throw insc::error("BadParams", "delaunay: need --config or --polytope");
      return mode.exact
                 ? run_delaunay_lane<insc::Rat>(mode, config_path, config2_path, poly_path,
                                                poly2_path, xi_text)
                 : run_delaunay_lane<double>(mode, config_path, config2_path, poly_path,
                                             poly2_path, xi_text);
    }
  } catch (const insc::error& e) {
    nlohmann::json err;
    err["error"] = e.code;
    err["message"] = e.what();
    std::cout << insc::canonical_dump(err);
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = "Internal";
    err["message"] = e.what();
    std::cout << insc::canonical_dump(err);
    return 2;
  }
  return 2;
}
