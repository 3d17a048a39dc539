#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "qflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

using namespace qflow;
using io::json;

TEST_CASE("state JSON: every variant survives a round trip") {
  std::vector<double> r{0.0, 0.5, 1.0, 1.5, 2.0}, f{0.0, 0.4, 0.6, 0.5, 0.3};
  const std::vector<StateSpec> states{
      make_plane_wave(1.0, -2.0, 0.7, {2.0, 3.0}),
      make_oscillator(3, 1, 1.4),
      make_central(2, -1, GaussianRadial{0.8}),
      make_central(1, 1, TabulatedRadial(r, f), {1.0, 2.0}),
  };
  for (const auto& s : states) {
    const auto j = io::to_json(s);
    const auto back = io::state_from_json(json::parse(j.dump()));
    CHECK(io::to_json(back) == j);
    for (Point2D p : {Point2D{0.3, 0.4}, Point2D{-1.1, 0.2}}) {
      CHECK(amplitude(back, p) == amplitude(s, p));
    }
  }
}

TEST_CASE("state JSON: documented examples parse") {
  const auto pw = io::state_from_json(json::parse(
      R"({"variant":"plane_wave","params":{"px":1,"py":2,"amplitude_sq":0.7},"hbar":1,"mass":1})"));
  CHECK(std::get<PlaneWaveSpec>(pw.variant).py == 2.0);
  const auto osc = io::state_from_json(
      json::parse(R"({"variant":"oscillator","params":{"nx":2,"ny":1,"omega":1}})"));
  CHECK(std::get<OscillatorSpec>(osc.variant).nx == 2);
  const auto cen = io::state_from_json(json::parse(
      R"({"variant":"central","params":{"l":3,"ml":-2,"radial":{"kind":"gaussian","width":1.5}},"hbar":2,"mass":3})"));
  CHECK(cen.central()->ml == -2);
  CHECK(cen.constants.mass == 3.0);
}

TEST_CASE("state JSON: malformed input") {
  const char* bad[] = {
      R"([1,2])",
      R"({"params":{}})",
      R"({"variant":"soliton"})",
      R"({"variant":"plane_wave","params":{"px":"fast"}})",
      R"({"variant":"plane_wave","params":{"amplitude_sq":0}})",
      R"({"variant":"oscillator","params":{"nx":1.5,"ny":0}})",
      R"({"variant":"central","params":{"l":1,"ml":2}})",
      R"({"variant":"central","params":{"l":1,"ml":1,"radial":{"kind":"bessel"}}})",
      R"({"variant":"central","params":{"l":1,"ml":1,"radial":{"kind":"table","radii":[0,1],"values":[1,1]}}})",
      R"({"variant":"plane_wave","hbar":-1})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    try {
      io::state_from_json(json::parse(text));
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::invalid_argument);
    }
  }
  CHECK_THROWS_AS(io::state_from_json(json::parse(R"({"variant":"oscillator","params":{"nx":99,"ny":0}})")),
                  Error);
}

TEST_CASE("potential JSON") {
  const auto c = io::potential_from_json(
      json::parse(R"({"variant":"corner","params":{"A":[1,0.5],"n":2}})"));
  CHECK(std::get<CornerFlow>(c.variant).amplitude == cplx{1.0, 0.5});
  CHECK(io::potential_from_json(io::to_json(c)).variant.index() == c.variant.index());
  const auto v = io::potential_from_json(json::parse(R"({"variant":"vortex","params":{"ml":-2}})"));
  CHECK(std::get<VortexFlow>(v.variant).ml == -2);
  CHECK_THROWS_AS(io::potential_from_json(json::parse(R"({"variant":"corner","params":{"n":0}})")),
                  Error);
}

TEST_CASE("contour JSON") {
  const auto c = make_circle({0.5, 0.0}, 2.0, 32);
  const auto back = io::contour_from_json(json::parse(io::to_json(c).dump()));
  CHECK(back.points.size() == 32);
  CHECK(back.tangents.size() == 32);
  CHECK(back.points[3].x == c.points[3].x);
  CHECK_THROWS_AS(io::contour_from_json(json::parse(R"({"points":[[0,0],[1,0],[1,1]]})")), Error);
  CHECK_THROWS_AS(io::contour_from_json(json::parse(R"({"points":[[0,"a"]]})")), Error);
}

TEST_CASE("grid and disk specs") {
  const auto g = io::parse_grid("cart:-3,3,-2,2,10,5");
  const auto& cg = std::get<CartesianGrid>(g.kind);
  CHECK(cg.x0 == -3.0);
  CHECK(cg.ny == 5);
  const auto a = io::parse_grid("annulus:0.5,2,4,16");
  CHECK(a.is_polar());
  CHECK(grid_nodes(a).size() == 64);
  for (const char* bad : {"cart:1,2,3", "annulus:0,1,2,2", "box:1,2,3,4", "cart:0,1,0,1,2.5,2",
                          "cart:0,1,0,1,x,2", "nonsense"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(io::parse_grid(bad), Error);
  }
  const auto d = io::parse_disk("0.5,-1,0.25");
  CHECK(d.center.y == -1.0);
  CHECK(d.radius == 0.25);
  CHECK_THROWS_AS(io::parse_disk("1,2"), Error);
}

TEST_CASE("number formatting") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(std::nan("")) == "nan");
  for (double v : {-2.5e-300, 1.0 / 3.0, 6.02214076e23, -0.0}) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    CHECK(io::format_double(v) == buf);
  }
}

TEST_CASE("CSV re-emission is byte-identical (random tables)") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int trial = 0; trial < 50; ++trial) {
    io::Table t{{"x", "y", "value", "singular"}, {}};
    for (int i = 0; i < 40; ++i) {
      std::vector<double> row;
      for (int c = 0; c < 3; ++c) {
        double v;
        do {
          const std::uint64_t b = bits(rng);
          std::memcpy(&v, &b, sizeof v);
        } while (std::isinf(v));
        row.push_back(std::isnan(v) ? std::nan("") : v);
      }
      row.push_back(i % 3 == 0 ? 1.0 : 0.0);
      t.rows.push_back(row);
    }
    std::ostringstream first;
    io::write_csv(first, t);
    std::istringstream in(first.str());
    const auto parsed = io::read_csv(in);
    std::ostringstream second;
    io::write_csv(second, parsed);
    CHECK(first.str() == second.str());
  }
}

TEST_CASE("CSV reader rejects malformed tables") {
  std::istringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(io::read_csv(ragged), Error);
  std::istringstream text("a\nhello\n");
  CHECK_THROWS_AS(io::read_csv(text), Error);
  std::istringstream empty("");
  CHECK_THROWS_AS(io::read_csv(empty), Error);
}

TEST_CASE("table JSON uses null for missing values") {
  const io::Table t{{"x", "vx", "singular"}, {{1.0, std::nan(""), 1.0}, {2.0, 0.5, 0.0}}};
  const auto j = io::table_to_json(t);
  CHECK(j["rows"][0]["vx"].is_null());
  CHECK(j["rows"][0]["singular"] == true);
  CHECK(j["rows"][1]["vx"] == 0.5);
}

TEST_CASE("report JSON") {
  VerificationReport r;
  r.checks.push_back({"vorticity", 1e-9, 1e-6, CheckStatus::pass, 10, 2, 2.0, false, ""});
  r.checks.push_back({"stokes_spread", 1.0, 1e-8, CheckStatus::fail, 3, 0, {}, false, "x"});
  const auto j = io::to_json(r);
  CHECK(j["all_passed"] == false);
  CHECK(j["checks"][0]["fitted_order"] == 2.0);
  CHECK(j["checks"][1]["status"] == "fail");
  CHECK(j["checks"][1]["note"] == "x");
}
