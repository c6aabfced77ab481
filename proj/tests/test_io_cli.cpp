#include <gtest/gtest.h>

#include <cstdlib>
#include <functional>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "trophom/cli.hpp"
#include "trophom/homology.hpp"
#include "trophom/io.hpp"
#include "trophom/matroids.hpp"

using namespace trophom;
using namespace fixtures;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "trophom");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / ("trophom_test_" + name);
  std::ofstream(p) << content;
  return p.string();
}

Json error_of(const CliRun& r) { return Json::parse(r.err)["error"]; }

std::map<std::pair<std::size_t, std::size_t>, AbelianGroupShape> shapes(const HomologyTable& t) {
  std::map<std::pair<std::size_t, std::size_t>, AbelianGroupShape> out;
  for (const auto& [k, r] : t) out[k] = r.shape;
  return out;
}

}  // namespace

TEST(Json, GalleryRoundTrip) {
  for (const char* name : {"line.json", "real_line.json", "bot_r.json", "plane.json", "max_plane.json",
                           "half_planes.json", "y_shape.json"}) {
    Json j = read_json_file(gallery(name));
    FaceComplex c = complex_from_json(j);
    Json out = complex_to_json(c);
    FaceComplex back = complex_from_json(out);
    EXPECT_EQ(complex_to_json(back), out) << name;
    std::size_t d = static_cast<std::size_t>(std::max(c.dim(), 0));
    EXPECT_EQ(shapes(bm_table(back, d)), shapes(bm_table(c, d))) << name;
    EXPECT_EQ(shapes(cohomology_table(back, d)), shapes(cohomology_table(c, d))) << name;
  }
}

TEST(Json, IncidenceOverridesRoundTrip) {
  FaceComplex l = standard_line();
  FaceComplex bad = l.with_incidence_sign(l.index("r0"), l.index("o"), -l.incidence(l.index("r0"), l.index("o")));
  Json j = complex_to_json(bad);
  ASSERT_TRUE(j.contains("incidence_signs"));
  FaceComplex back = complex_from_json(j);
  EXPECT_FALSE(validate_complex(back).valid());
}

TEST(Json, CyclesMatroidsAndFunctions) {
  TropicalCycle a = cycle_from_json(read_json_file(gallery("line_cycle.json")));
  EXPECT_EQ(a.k, 1u);
  TropicalCycle b = cycle_from_json(cycle_to_json(a));
  EXPECT_TRUE(cycles_equal(a, b));
  Matroid m = matroid_from_json(read_json_file(gallery("k4.json")));
  EXPECT_EQ(m.rank(), 3u);
  EXPECT_EQ(matroid_from_json(matroid_to_json(m)), m);
  PLFunction f = pl_from_json(read_json_file(gallery("max_xy0.json")), TROPHOM_GALLERY_DIR);
  EXPECT_TRUE(verify_pl(f).valid());
  PLFunction g = pl_from_json(pl_to_json(f));
  EXPECT_EQ(g.covectors, f.covectors);
  AffineMap h = affine_map_from_json(read_json_file(gallery("x_minus_y.json")));
  EXPECT_EQ(h.linear, IntMatrix::from_rows({iv({1, -1})}));
}

TEST(Json, SchemaErrors) {
  auto kind_of = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const InputError& e) {
      return e.kind();
    }
    return std::string("none");
  };
  EXPECT_EQ(kind_of([] { complex_from_json(Json::parse(R"({"cells": []})")); }), "schema");
  EXPECT_EQ(kind_of([] {
              complex_from_json(Json::parse(R"({"ambient_dim": 1, "cells": [{"id": "o", "vertices": [[0.5]]}]})"));
            }),
            "schema");
  EXPECT_EQ(kind_of([] {
              complex_from_json(Json::parse(R"({"ambient_dim": 1, "cells": [{"id": "o", "vertices": [["1/0"]]}]})"));
            }),
            "schema");
  EXPECT_EQ(kind_of([] {
              complex_from_json(
                  Json::parse(R"({"ambient_dim": 1, "cells": [{"id": "o", "vertices": [["0"]], "faces": ["x"]}]})"));
            }),
            "precondition");
  EXPECT_EQ(kind_of([] { read_json_file("/nonexistent/file.json"); }), "io");
  std::string bad = temp_file("bad.json", "{ not json");
  EXPECT_EQ(kind_of([&] { read_json_file(bad); }), "malformed_json");
  EXPECT_EQ(kind_of([] { matroid_from_json(Json::parse(R"({"elements": ["a","b"], "bases": [["a"],["c"]]})")); }),
            "schema");
}

TEST(Cli, ValidateAndBalance) {
  CliRun v = cli({"validate", gallery("line.json")});
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(Json::parse(v.out)["valid"].get<bool>());
  CliRun b = cli({"balance", gallery("line_unbalanced.json")});
  EXPECT_EQ(b.code, 1);
  Json j = Json::parse(b.out);
  EXPECT_EQ(j["failures"][0]["cell"], "o");
  EXPECT_EQ(cli({"balance", gallery("line_cycle.json")}).code, 0);
}

TEST(Cli, BergmanThenDuality) {
  CliRun b = cli({"bergman", gallery("u23.json")});
  ASSERT_EQ(b.code, 0);
  FaceComplex c = complex_from_json(Json::parse(b.out));
  EXPECT_TRUE(same_support(c, standard_line()));
  std::string path = temp_file("u23_fan.json", b.out);
  CliRun pd = cli({"pd", path, "--format", "table"});
  EXPECT_EQ(pd.code, 0);
  EXPECT_EQ(pd.out.find("✗"), std::string::npos);
  EXPECT_NE(pd.out.find("✓"), std::string::npos);
  EXPECT_EQ(cli({"pd", gallery("y_shape.json")}).code, 1);
}

TEST(Cli, HomologyTablesAndGenerators) {
  CliRun h = cli({"homology", gallery("line.json"), "--bm", "--emit-generators"});
  ASSERT_EQ(h.code, 0);
  Json j = Json::parse(h.out);
  EXPECT_EQ(j["kind"], "borel_moore");
  bool found = false;
  for (auto& e : j["entries"])
    if (e["p"] == 1 && e["q"] == 1) {
      EXPECT_EQ(e["rank"], 1);
      EXPECT_EQ(e["generators"].size(), 1u);
      found = true;
    }
  EXPECT_TRUE(found);
  CliRun c = cli({"homology", gallery("line.json"), "--cohomology", "--p-min", "1", "--p-max", "1", "--format", "table"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("Z^2"), std::string::npos);
  EXPECT_EQ(cli({"homology", gallery("line.json"), "--bm", "--cohomology"}).code, 2);
}

TEST(Cli, IntersectPushforwardKunnethCycleClassForms) {
  CliRun i = cli({"intersect", gallery("max_xy0.json"), gallery("max_plane_cycle.json")});
  ASSERT_EQ(i.code, 0) << i.err;
  TropicalCycle dl = cycle_from_json(Json::parse(i.out));
  EXPECT_TRUE(cycles_equal(dl, fundamental_cycle(ray_fan(2, {iv({1, 1}), iv({-1, 0}), iv({0, -1})}))));
  CliRun p = cli({"pushforward", gallery("x_minus_y.json"), gallery("line_cycle.json"), gallery("real_line.json")});
  ASSERT_EQ(p.code, 0);
  EXPECT_TRUE(cycles_equal(cycle_from_json(Json::parse(p.out)), fundamental_cycle(real_line())));
  CliRun strict = cli({"pushforward", gallery("x_minus_y.json"), gallery("line_cycle.json"), gallery("real_line.json"),
                    "--strict-proper"});
  EXPECT_EQ(strict.code, 2);
  EXPECT_EQ(cli({"kunneth", gallery("line.json"), gallery("line.json")}).code, 0);
  CliRun cc = cli({"cycle-class", gallery("line_unbalanced.json")});
  EXPECT_EQ(cc.code, 1);
  EXPECT_FALSE(Json::parse(cc.out)["closed"].get<bool>());
  CliRun f = cli({"forms", gallery("line.json"), "-p", "1"});
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(Json::parse(f.out)["cells"][0]["rank"], 2);
}

TEST(Cli, InputErrorsExitTwo) {
  CliRun missing = cli({"validate", "/nonexistent.json"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_EQ(error_of(missing)["kind"], "io");
  CliRun malformed = cli({"validate", temp_file("m.json", "[1,")});
  EXPECT_EQ(malformed.code, 2);
  EXPECT_EQ(error_of(malformed)["kind"], "malformed_json");
  CliRun schema = cli({"validate", temp_file("s.json", R"({"ambient_dim": 1})")});
  EXPECT_EQ(schema.code, 2);
  EXPECT_EQ(error_of(schema)["kind"], "schema");
  CliRun usage = cli({"frobnicate"});
  EXPECT_EQ(usage.code, 2);
  EXPECT_EQ(error_of(usage)["kind"], "usage");
  CliRun fmt = cli({"validate", gallery("line.json"), "--format", "xml"});
  EXPECT_EQ(fmt.code, 2);
  CliRun notpl = cli({"intersect", temp_file("d.json", R"({"complex_ref": "nope.json", "cells": {}})"),
                   gallery("line_cycle.json")});
  EXPECT_EQ(notpl.code, 2);
}

TEST(Cli, DeterministicAndThreadIndependent) {
  CliRun a = cli({"homology", gallery("plane.json")});
  CliRun b = cli({"homology", gallery("plane.json"), "--threads", "3"});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(a.out, b.out);
  setenv("TROPHOM_THREADS", "2", 1);
  CliRun c = cli({"homology", gallery("plane.json")});
  unsetenv("TROPHOM_THREADS");
  EXPECT_EQ(c.out, b.out);
  EXPECT_EQ(cli({"pd", gallery("plane.json"), "--format", "table"}).out,
            cli({"pd", gallery("plane.json"), "--format", "table"}).out);
}

TEST(Cli, OutputFile) {
  auto path = (std::filesystem::temp_directory_path() / "trophom_test_out.json").string();
  std::filesystem::remove(path);
  CliRun r = cli({"bergman", gallery("u24.json"), "-o", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  FaceComplex c = complex_from_json(read_json_file(path));
  EXPECT_EQ(c.cells_of_dim(1).size(), 4u);
}
