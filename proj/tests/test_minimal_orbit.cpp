#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conecert/minimal_orbit.hpp"

using namespace conecert;

namespace {

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("mean curvature is radial at the isolated base points") {
  // B2 with (m1, m2) = (2, 2): at e1 the tangential part vanishes
  RootSystem rs = build_root_system("B2", {{"m1", LinExpr(2)}, {"m2", LinExpr(2)}});
  std::vector<double> chamber = {1.0, 0.0};
  auto tau = tangential_mean_curvature(rs, 0b01, chamber, {});
  double norm = 0;
  for (double v : tau) norm += v * v;
  CHECK(std::sqrt(norm) < 1e-12);

  // at an off-center interior point of the same face it does not vanish
  // (the face is one-dimensional, so only the ray matters; perturb the face)
  auto m = mean_curvature(rs, 0b01, chamber, {});
  CHECK(std::abs(m[1]) < 1e-14);  // radial: parallel to e1
  CHECK(m[0] < 0);
}

TEST_CASE("mean curvature blows up on walls") {
  RootSystem rs = build_root_system("B2", {{"m1", LinExpr(1)}, {"m2", LinExpr(1)}});
  std::vector<double> on_wall = {0.0, 1.0};  // a1 pairs to zero here
  CHECK_THROWS_AS((void)mean_curvature(rs, 0b11, on_wall, {}), Error);
}

TEST_CASE("A3 symmetric point is minimal for uniform multiplicities") {
  RootSystem rs = build_root_system("A3", {{"m", LinExpr(4)}});
  double inv = 1.0 / std::sqrt(2.0);
  std::vector<double> chamber = {inv, 0.0, inv};
  auto tau = tangential_mean_curvature(rs, 0b101, chamber, {});
  double norm = 0;
  for (double v : tau) norm += v * v;
  CHECK(std::sqrt(norm) < 1e-12);
  // exact, identically in the symbolic multiplicity
  RootSystem sym_rs = build_root_system("A3", {});
  CHECK(tangential_vanishes_exactly(sym_rs, 0b101, {Rat(1), Rat(0), Rat(1)}));
}

TEST_CASE("closed-form base points match the published coordinates") {
  {
    RootSystem rs = build_root_system("A2", {});
    BasePoint a1 = minimal_point(rs, 0b01);
    double s6 = 1.0 / std::sqrt(6.0);
    CHECK(dist(a1.ambient, {2 * s6, -s6, -s6}) < 1e-14);
    BasePoint a2 = minimal_point(rs, 0b10);
    CHECK(dist(a2.ambient, {s6, s6, -2 * s6}) < 1e-14);
  }
  {
    RootSystem rs = build_root_system("B2", {});
    BasePoint a1 = minimal_point(rs, 0b01);
    CHECK(dist(a1.ambient, {1.0, 0.0}) < 1e-14);
    BasePoint a2 = minimal_point(rs, 0b10);
    double s2 = 1.0 / std::sqrt(2.0);
    CHECK(dist(a2.ambient, {s2, s2}) < 1e-14);
  }
  {
    RootSystem rs = build_root_system("A3", {});
    BasePoint a = minimal_point(rs, 0b101);
    double s2 = 1.0 / std::sqrt(2.0);
    CHECK(dist(a.ambient, {s2, 0.0, 0.0, -s2}) < 1e-14);
    CHECK(a.exact.has_value());
  }
}

TEST_CASE("newton path agrees with the closed forms") {
  for (const auto& label : {"A2", "B2", "G2"}) {
    RootSystem rs = build_root_system(label, {});
    for (unsigned delta : {0b01u, 0b10u}) {
      BasePoint exact = minimal_point(rs, delta);
      MinimalPointOptions opts;
      opts.force_numeric = true;
      for (const auto& cls : rs.classes)
        for (const auto& [s, c] : cls.multiplicity.terms()) opts.binding.emplace_back(s, 2);
      BasePoint numeric = minimal_point(rs, delta, opts);
      CHECK(numeric.residual < 1e-12);
      CHECK(dist(exact.chamber, numeric.chamber) < 1e-12);
    }
  }
  // A3 with the two-root face
  RootSystem rs = build_root_system("A3", {{"m", LinExpr(4)}});
  BasePoint exact = minimal_point(rs, 0b101);
  MinimalPointOptions opts;
  opts.force_numeric = true;
  opts.binding = {{"m", 4}};
  BasePoint numeric = minimal_point(rs, 0b101, opts);
  CHECK(numeric.residual < 1e-12);
  CHECK(dist(exact.chamber, numeric.chamber) < 1e-12);
}

TEST_CASE("solver output is initialization-invariant") {
  RootSystem rs = build_root_system("B2", {{"m1", LinExpr(1)}, {"m2", LinExpr(3)}});
  MinimalPointOptions base_opts;
  base_opts.force_numeric = true;
  base_opts.binding = {};
  BasePoint ref = minimal_point(rs, 0b11, base_opts);
  CHECK(ref.residual < 1e-12);
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    MinimalPointOptions opts = base_opts;
    opts.initial_chamber = {u(rng), u(rng)};
    BasePoint bp = minimal_point(rs, 0b11, opts);
    CHECK(dist(bp.chamber, ref.chamber) < 1e-10);
  }
}

TEST_CASE("full-chamber orbit of A2 solves to the symmetric point") {
  RootSystem rs = build_root_system("A2", {});
  BasePoint bp = minimal_point(rs, 0b11);
  CHECK(bp.residual < 1e-12);
  // the symmetric candidate is exact here
  CHECK(bp.exact.has_value());
}
