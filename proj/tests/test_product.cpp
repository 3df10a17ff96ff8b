#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conecert/driver.hpp"
#include "conecert/product.hpp"

using namespace conecert;

namespace {

Report certified_case(const std::string& type, const std::string& delta, MultBinding binding) {
  CertifyRequest req;
  req.type_label = type;
  req.delta_text = delta;
  req.binding = std::move(binding);
  req.mode = "symbolic";
  return run_certify(req);
}

}  // namespace

TEST_CASE("profile maximum is one on the diagonal for admissible dimensions") {
  for (auto [k1, k2] : {std::pair<long, long>{3, 3}, {4, 5}, {8, 8}}) {
    ProfileResult res = profile_check(k1, k2);
    CHECK(std::abs(res.max_d - 1.0) <= 1e-9);
    CHECK(std::abs(res.arg_x1 - 1.0) <= 1e-3);  // the top is quartically flat
    CHECK(res.max_is_one_at_diagonal);
  }
}

TEST_CASE("profile exceeds one for the known inadmissible pair") {
  ProfileResult res = profile_check(1, 5);
  CHECK(res.max_d > 1.0 + 1e-9);
  CHECK(!res.max_is_one_at_diagonal);
}

TEST_CASE("derivative of the profile matches the closed-form factorization") {
  std::mt19937 rng(3);
  for (auto [k1, k2] : {std::pair<long, long>{3, 3}, {4, 5}, {7, 3}}) {
    const double k = static_cast<double>(k1 + k2);
    const double a1s = k1 / k, a2s = k2 / k;
    std::uniform_real_distribution<double> u(0.05, 1.0 / a1s - 0.05);
    for (int trial = 0; trial < 1000; ++trial) {
      double x1 = u(rng);
      const double h = 1e-6;
      double fd = (profile_d(k1, k2, x1 + h) - profile_d(k1, k2, x1 - h)) / (2 * h);
      double closed = profile_derivative(k1, k2, x1);
      double scale = std::max({std::abs(fd), std::abs(closed), 1e-12});
      CHECK(std::abs(fd - closed) / scale < 1e-4);
    }
    // and at well-separated points to tight tolerance via higher-order stencil
    for (double x1 : {0.3, 0.8, 1.2}) {
      const double h = 1e-4;
      double fd = (-profile_d(k1, k2, x1 + 2 * h) + 8 * profile_d(k1, k2, x1 + h) -
                   8 * profile_d(k1, k2, x1 - h) + profile_d(k1, k2, x1 - 2 * h)) /
                  (12 * h);
      double closed = profile_derivative(k1, k2, x1);
      double scale = std::max({std::abs(fd), std::abs(closed), 1e-9});
      CHECK(std::abs(fd - closed) / scale < 1e-9);
    }
    (void)a2s;
  }
}

TEST_CASE("the profile functions are scale-invariant off the segment") {
  // D-tilde = X1^k1 X2^k2 / (a1^2 X1 + a2^2 X2)^k  and
  // D = (a1^2 X1^4 + a2^2 X2^4) X1^{2k1} X2^{2k2} / (a1^2 X1 + a2^2 X2)^{2k+4}
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0.2, 2.5);
  for (auto [k1, k2] : {std::pair<long, long>{3, 3}, {4, 5}}) {
    const double k = static_cast<double>(k1 + k2);
    const double a1s = k1 / k, a2s = k2 / k;
    auto dtilde = [&](double x1, double x2) {
      return std::pow(x1, k1) * std::pow(x2, k2) / std::pow(a1s * x1 + a2s * x2, k);
    };
    auto dfull = [&](double x1, double x2) {
      return (a1s * std::pow(x1, 4) + a2s * std::pow(x2, 4)) * std::pow(x1, 2 * k1) *
             std::pow(x2, 2 * k2) / std::pow(a1s * x1 + a2s * x2, 2 * k + 4);
    };
    for (int trial = 0; trial < 50; ++trial) {
      double x1 = u(rng), x2 = u(rng), t = u(rng);
      CHECK(dtilde(t * x1, t * x2) == doctest::Approx(dtilde(x1, x2)).epsilon(1e-12));
      CHECK(dfull(t * x1, t * x2) == doctest::Approx(dfull(x1, x2)).epsilon(1e-12));
    }
    // D restricted to the segment agrees with the full formula there
    double x1 = u(rng);
    double x2 = (1.0 - a1s * x1) / a2s;
    if (x2 > 0) CHECK(profile_d(k1, k2, x1) == doctest::Approx(dfull(x1, x2)).epsilon(1e-12));
  }
}

TEST_CASE("profile end behavior: D vanishes toward both segment ends") {
  long k1 = 4, k2 = 5;
  const double hi = (k1 + k2) / static_cast<double>(k1);
  CHECK(profile_d(k1, k2, 1e-6) < 1e-20);
  CHECK(profile_d(k1, k2, hi - 1e-6) < 1e-20);
  CHECK(profile_d(k1, k2, 1e-3) < profile_d(k1, k2, 1e-2));
}

TEST_CASE("composition of two certified planes") {
  Report a2 = certified_case("A2", "a1", {{"m", 2}});
  REQUIRE(a2.verdict == Verdict::certified);
  REQUIRE(a2.j2_leq_1);
  Report prod = compose(a2, a2);
  CHECK(prod.verdict == Verdict::certified);
  CHECK(prod.kind == "product");
  CHECK(prod.k1 == 4);
  CHECK(prod.k2 == 4);
  CHECK(*prod.orbit_dim_value == 8);
  CHECK(prod.j2_leq_1);
  REQUIRE(prod.profile.has_value());
  CHECK(prod.profile->max_is_one_at_diagonal);

  // the combined dimensions follow the direct-sum bookkeeping
  CHECK(*prod.sphere_dim_value == 15);

  // f restricted to the diagonal ray is the identity: f(tA) = t
  auto node = build_retraction_node(prod);
  auto base = node->base_chamber();
  for (double t : {0.25, 1.0, 3.5}) {
    auto x = base;
    for (auto& v : x) v *= t;
    CHECK(node->f(x) == doctest::Approx(t).epsilon(1e-12));
  }
  // a1^2 + a2^2 = 1 with a_i = sqrt(k_i/k) is structural: check J(base) = 1
  CHECK(std::exp(node->log_j(base)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("composition refuses low-dimensional factors") {
  Report a1 = certified_case("A1", "a1", {{"m", 1}});  // orbit dimension 1
  REQUIRE(a1.verdict == Verdict::certified);
  Report a2 = certified_case("A2", "a1", {{"m", 2}});
  CHECK_THROWS_WITH_AS((void)compose(a1, a2), doctest::Contains("DIM_TOO_SMALL"), Error);
  CHECK_THROWS_WITH_AS((void)compose(a2, a1), doctest::Contains("DIM_TOO_SMALL"), Error);
}

TEST_CASE("composition requires the per-factor record") {
  Report a2 = certified_case("A2", "a1", {{"m", 2}});
  Report stripped = a2;
  stripped.j2_leq_1 = false;
  CHECK_THROWS_WITH_AS((void)compose(stripped, a2), doctest::Contains("HYPOTHESIS_MISSING"), Error);
  Report inconclusive = a2;
  inconclusive.verdict = Verdict::inconclusive;
  CHECK_THROWS_WITH_AS((void)compose(inconclusive, a2), doctest::Contains("HYPOTHESIS_MISSING"), Error);
}

TEST_CASE("iterated composition and the numeric check of the product") {
  Report a2 = certified_case("A2", "a1", {{"m", 2}});
  Report pair = compose(a2, a2);
  Report triple = compose(pair, a2);
  CHECK(triple.verdict == Verdict::certified);
  CHECK(triple.k1 == 8);
  CHECK(triple.k2 == 4);

  // numeric check of the rank-4 pair on a desk-scale grid
  auto node = build_retraction_node(pair);
  NodeJacobian eval(*node);
  NumericOptions opts;
  opts.grid_n = 40;
  NumericScan scan = certify_numeric(eval, opts);
  CHECK(!scan.failed);
  CHECK(scan.max_j <= 1.0 + 1e-9);
}

TEST_CASE("asymmetric factors compose and stay below one") {
  Report a2 = certified_case("A2", "a1", {{"m", 2}});   // orbit dim 4
  Report a3 = certified_case("A3", "a1,a3", {{"m", 4}});  // orbit dim 20
  Report prod = compose(a2, a3);
  CHECK(prod.verdict == Verdict::certified);
  CHECK(prod.k1 == 4);
  CHECK(prod.k2 == 20);
  REQUIRE(prod.profile.has_value());
  CHECK(prod.profile->max_is_one_at_diagonal);
  auto node = build_retraction_node(prod);
  NodeJacobian eval(*node);
  NumericOptions opts;
  opts.grid_n = 28;  // rank-5 simplex
  NumericScan scan = certify_numeric(eval, opts);
  CHECK(!scan.failed);
  CHECK(scan.max_j <= 1.0 + 1e-9);
}

TEST_CASE("profile rejects nonpositive dimensions") {
  CHECK_THROWS_AS((void)profile_check(0, 3), Error);
}
