#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "insc/json_io.hpp"
#include "util.hpp"

using namespace insc;
using namespace testutil;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string tmpfile_with(const std::string& name, const json& j) {
  std::string path = std::string("cli_") + name + ".json";
  std::ofstream f(path);
  f << j.dump();
  return path;
}

}  // namespace

TEST_CASE("inscribe on the cube") {
  auto cube = tmpfile_with("cube", polytope_to_json(cube_polytope(3)));
  auto r = run("inscribe --polytope " + cube);
  CHECK(r.code == 0);
  json out = json::parse(r.out);
  CHECK(out.at("inscribable").get<bool>());
  CHECK(out.at("dim_inspc").get<int>() == 3);
  CHECK_FALSE(out.at("witness_polytope").is_null());

  // determinism: byte-identical reruns
  auto r2 = run("inscribe --polytope " + cube);
  CHECK(r.out == r2.out);
}

TEST_CASE("planar pentagon verdict and strict exit") {
  json prof;
  prof["pi_multiples"] = {"2/3", "1/3", "1/3", "1/3", "1/3"};
  auto p = tmpfile_with("pent", prof);
  auto r = run("planar --profile " + p);
  CHECK(r.code == 0);
  json out = json::parse(r.out);
  CHECK(out.at("virtually_inscribable").get<bool>());
  CHECK_FALSE(out.at("inscribable").get<bool>());
  CHECK(run("planar --strict --profile " + p).code == 3);
}

TEST_CASE("nestohedron verdicts") {
  json b;
  b["ground"] = 4;
  b["sets"] = {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {1, 2, 3, 4}};
  auto path = tmpfile_with("b4", b);
  json out = json::parse(run("nestohedron --building " + path).out);
  CHECK(out.at("inscribed").get<bool>());
  CHECK_FALSE(out.at("delta_closed").get<bool>());
  json out2 = json::parse(run("nestohedron --oracle --realize --building " + path).out);
  CHECK(out2.at("inscribed").get<bool>());
  CHECK(out2.at("geometric_inscribed").get<bool>());
}

TEST_CASE("fan roundtrip is byte-stable and reconstructs twins") {
  // fan document with omitted antisymmetric twins
  json fdoc;
  fdoc["dim"] = 2;
  fdoc["regions"] = {0, 1, 2, 3};
  fdoc["walls"] = json::array();
  auto wall = [&](int a, int b, int x, int y) {
    json w;
    w["from"] = a;
    w["to"] = b;
    w["normal"] = {std::to_string(x), std::to_string(y)};
    fdoc["walls"].push_back(w);
  };
  wall(0, 1, 0, 1);
  wall(1, 2, -1, 0);
  wall(2, 3, 0, -1);
  wall(3, 0, 1, 0);
  auto path = tmpfile_with("fan", fdoc);
  auto r = run("fan --fan " + path);
  CHECK(r.code == 0);
  json out = json::parse(r.out);
  CHECK(out.at("valid").get<bool>());
  CHECK(out.at("fan").at("walls").size() == 8);  // canonical twins emitted

  // parse -> serialize -> parse is the identity on canonical documents
  auto canon = tmpfile_with("fan_canon", out.at("fan"));
  auto r2 = run("fan --fan " + canon);
  CHECK(json::parse(r2.out).at("fan") == out.at("fan"));
}

TEST_CASE("validation errors exit 2") {
  json bad;
  bad["dim"] = 2;
  bad["regions"] = {0, 1};
  bad["walls"] = json::array();
  json w1, w2;
  w1["from"] = 0;
  w1["to"] = 1;
  w1["normal"] = {"1", "0"};
  w2["from"] = 1;
  w2["to"] = 0;
  w2["normal"] = {"1", "0"};  // should be the negative
  bad["walls"].push_back(w1);
  bad["walls"].push_back(w2);
  auto path = tmpfile_with("badfan", bad);
  auto r = run("fan --fan " + path);
  CHECK(r.code == 2);
  json out = json::parse(r.out);
  CHECK(out.at("error").get<std::string>() == "InvalidFan");

  CHECK(run("inscribe --polytope does_not_exist.json").code == 2);
}

TEST_CASE("float documents print with 17 significant digits") {
  json prof;
  prof["radians"] = {2 * M_PI / 3, M_PI / 3, M_PI / 3, M_PI / 3, M_PI / 3};
  auto p = tmpfile_with("fprof", prof);
  auto r = run("planar --float 1e-9 --profile " + p);
  CHECK(r.code == 0);
  auto r2 = run("planar --float 1e-9 --profile " + p);
  CHECK(r.out == r2.out);

  // profile extraction from a fan emits full-precision radians
  auto sqfan = tmpfile_with(
      "sqfan", fan_to_json(normal_fan(convex_hull<Rat>(
                   {vq({0, 0}), vq({1, 0}), vq({1, 1}), vq({0, 1})}))));
  auto rp = run("planar --fan " + sqfan);
  json out = json::parse(rp.out);
  std::string text = rp.out;
  CHECK(text.find("1.5707963267948966") != std::string::npos);
}

TEST_CASE("typecone command") {
  auto braid = tmpfile_with("braidfan", fan_to_json(braid_fan()));
  json out = json::parse(run("typecone --fan " + braid).out);
  CHECK(out.at("typecone_dim").get<int>() == 4);
  CHECK(out.at("dim_inspc").get<int>() == 2);

  auto lam = tmpfile_with("lam", lambda_to_json(braid_fan(), VecQ(VecQ::Ones(6))));
  json out2 = json::parse(run("typecone --fan " + braid + " --lambda " + lam).out);
  CHECK(out2.at("contains").get<bool>());
  CHECK(out2.at("strictly_convex").get<bool>());
  CHECK(out2.at("inscribed_virtual").get<bool>());
  CHECK(out2.at("coarsening").at("regions").size() == 6);
}

TEST_CASE("polytope sums and cic through the CLI") {
  auto box = [](long x, long y, long z, long den) {
    std::vector<VecQ> vs;
    for (int sx : {-1, 1})
      for (int sy : {-1, 1})
        for (int sz : {-1, 1}) {
          VecQ v(3);
          v << Rat(sx * x, den), Rat(sy * y, den), Rat(sz * z, den);
          for (int i = 0; i < 3; ++i) v(i).canonicalize();
          vs.push_back(v);
        }
    return convex_hull(vs);
  };
  auto b1 = tmpfile_with("box1", polytope_to_json(box(3, 4, 12, 13)));
  auto b2 = tmpfile_with("box2", polytope_to_json(box(1, 2, 2, 3)));
  json out = json::parse(run("polytope --in " + b1 + " --sum " + b2 + " --ideal-sum " + b2).out);
  CHECK(out.at("inscribed").get<bool>());
  CHECK(out.at("even").get<bool>());
  CHECK(out.at("sum_inscribed").get<bool>());
  CHECK(out.at("sum_same_fan").get<bool>());
  CHECK(out.at("cos_angle").get<std::string>() == "35/39");

  auto braid = tmpfile_with("braidcic", fan_to_json(braid_fan()));
  json cic = json::parse(run("typecone --fan " + braid + " --cic").out);
  CHECK(cic.at("cic").at("fan").at("regions").size() == 6);
  CHECK(cic.at("cic").at("support_walls").size() == 6);
}

TEST_CASE("trajectory and delaunay commands") {
  auto s3 = tmpfile_with("s3", polytope_to_json(simplex_polytope(3)));
  auto braid = tmpfile_with("braidfan2", fan_to_json(braid_fan()));
  json out = json::parse(run("trajectory --fan " + braid).out);
  CHECK(out.at("dim_trajectory_space").get<int>() == 3);
  CHECK(out.at("hom_group_order").get<long>() == 1);

  json cfg;
  cfg["dim"] = 2;
  cfg["points"]["1"] = {"0", "0"};
  cfg["points"]["2"] = {"2", "0"};
  cfg["points"]["3"] = {"2", "2"};
  cfg["points"]["4"] = {"0", "2"};
  cfg["points"]["5"] = {"1", "1"};
  auto cpath = tmpfile_with("cfg", cfg);
  json del = json::parse(run("delaunay --config " + cpath).out);
  CHECK(del.at("cells").size() == 4);

  // CSV emission for lambda vectors
  auto r = run("inscribe --csv --fan " + braid);
  CHECK(r.code == 0);
  CHECK(r.out.find(',') != std::string::npos);
  CHECK(r.out.find('{') == std::string::npos);
}
