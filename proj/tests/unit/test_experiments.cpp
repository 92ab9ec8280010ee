#include "support.hpp"

#include "polyflow/experiments.hpp"
#include "polyflow/output.hpp"

using namespace polyflow;

TEST_CASE("error metrics vanish on regular polygons") {
  for (int n : {3, 5, 7}) {
    CHECK(angle_error(regular_polygon(n)) < 1e-28);
    CHECK(edge_ratio_error(regular_polygon(n)) < 1e-28);
    CHECK(angle_error(perturbed_regular_polygon(n, 4, 0.0)) < 1e-28);
  }
  CHECK(angle_error(perturbed_regular_polygon(7, 4, 0.2)) > 1e-4);
  CHECK(perturbed_regular_polygon(7, 4, 0.2) == perturbed_regular_polygon(7, 4, 0.2));
  CHECK(!(perturbed_regular_polygon(7, 4, 0.2) == perturbed_regular_polygon(7, 5, 0.2)));
}

TEST_CASE("heptagon iterations") {
  HeptagonOptions opts;
  opts.iterations = 3;
  const HeptagonRun a = run_heptagon(opts);
  REQUIRE(a.result.records.size() == 3);
  CHECK(a.panels.size() == 3);
  for (std::size_t k = 0; k < a.result.records.size(); ++k)
    CHECK(a.result.records[k].c_k == doctest::Approx(std::pow(opts.scale, double(k))));
  CHECK(a.result.records.back().angle_error < a.result.records.front().angle_error);

  opts.iterations = 4;
  const HeptagonRun b = run_heptagon(opts);
  for (std::size_t k = 0; k < a.result.records.size(); ++k) {
    CHECK(b.result.records[k].angle_error == a.result.records[k].angle_error);
    CHECK(b.panels[k] == a.panels[k]);
  }
  CHECK(records_csv(run_heptagon(opts).result) == records_csv(b.result));
}

TEST_CASE("SVG output") {
  const std::vector<SvgPanel> panels{{regular_polygon(5), "a"}, {regular_polygon(7), "b"}};
  CHECK(render_svg(panels, true) == render_svg(panels, true));
  CHECK(render_svg(panels, true).find("<svg") != std::string::npos);
}

TEST_CASE("quadrilateral shapes") {
  CHECK(parse_quad_shape("rhombus") == QuadShape::Rhombus);
  CHECK(to_string(QuadShape::Generic) == "generic");
  CHECK_THROWS(parse_quad_shape("pentagon"));
  QuadOptions opts;
  opts.tau_end = 10.0;
  const QuadRun r = run_quad(opts);
  CHECK(r.angle_residual < 1e-20);
  CHECK(r.edge_residual < r.checkpoints.front().edge_residual);
}

TEST_CASE("parallel spectrum sweep matches the serial one") {
  const std::vector<int> ns{4, 5, 6, 7};
  const std::vector<double> betas{0.5, 2.0};
  const auto serial = run_spectrum_sweep(ns, betas, 1);
  const auto parallel = run_spectrum_sweep(ns, betas, 3);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].report.n == parallel[i].report.n);
    CHECK(serial[i].report.beta == parallel[i].report.beta);
    CHECK(serial[i].report.eigenvalues == parallel[i].report.eigenvalues);
    CHECK(serial[i].pass());
  }
}

TEST_CASE("triangle and entropy runs are deterministic") {
  SeededRng r1(5), r2(5);
  CHECK(random_triangle(r1) == random_triangle(r2));
  SeededRng r3(5);
  const Polygon t = random_triangle(r3);
  CHECK(triangle_csv(run_triangle(t)) == triangle_csv(run_triangle(t)));
  CHECK(entropy_csv(run_entropy(regular_polygon(5), 1.0, 0.5, std::nullopt, 5)) ==
        entropy_csv(run_entropy(regular_polygon(5), 1.0, 0.5, std::nullopt, 5)));
}
