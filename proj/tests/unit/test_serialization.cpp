#include "support.hpp"

#include <filesystem>
#include <fstream>

#include "polyflow/errors.hpp"
#include "polyflow/serialization.hpp"

using namespace polyflow;

TEST_CASE("JSON and CSV round trips are bit exact") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Polygon p = testing::random_polygon(3 + static_cast<int>(seed), seed);
    CHECK(polygon_from_json(polygon_to_json(p)) == p);
    CHECK(polygon_from_csv(polygon_to_csv(p)) == p);
  }
  const Polygon awkward({{0.1, -1e-300}, {1.0 / 3.0, 5e300}, {-0.0, 2.5}});
  CHECK(polygon_from_json(polygon_to_json(awkward)) == awkward);
  CHECK(polygon_from_csv(polygon_to_csv(awkward)) == awkward);
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(polygon_from_json("{"), InvalidArgument);
  CHECK_THROWS_AS(polygon_from_json("{\"x\": 1}"), InvalidArgument);
  CHECK_THROWS_AS(polygon_from_json("[[0, 0], [1]]"), InvalidArgument);
  CHECK_THROWS_AS(polygon_from_json("[[0, 0], [1, 0]]"), InvalidArgument);
  CHECK_THROWS_AS(polygon_from_csv("x,y\n0,0\n"), InvalidArgument);
  CHECK_THROWS_AS(polygon_from_csv("j,x,y\n0,0,0\n2,1,0\n1,0,1\n"), InvalidArgument);
  CHECK_THROWS_AS(polygon_from_csv("j,x,y\n0,0\n"), InvalidArgument);
  CHECK_THROWS_AS(load_polygon("/nonexistent/poly.json"), InvalidArgument);
}

TEST_CASE("load_polygon picks the format by extension") {
  const auto dir = std::filesystem::temp_directory_path() / "polyflow_unit_io";
  std::filesystem::create_directories(dir);
  const Polygon p = testing::random_polygon(5, 9);
  {
    std::ofstream(dir / "p.json") << polygon_to_json(p);
    std::ofstream(dir / "p.csv") << polygon_to_csv(p);
  }
  CHECK(load_polygon((dir / "p.json").string()) == p);
  CHECK(load_polygon((dir / "p.csv").string()) == p);
  std::filesystem::remove_all(dir);
}
