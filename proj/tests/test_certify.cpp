#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conecert/catalog.hpp"
#include "conecert/driver.hpp"
#include "conecert/minimal_orbit.hpp"

using namespace conecert;

namespace {

const CatalogCertificate& cert_by_id(const std::string& id) {
  for (const auto& c : catalog_certificates())
    if (c.id == id) return c;
  REQUIRE(false);
  throw std::runtime_error("unreachable");
}

SymbolicResult run_symbolic(const std::string& id) {
  const auto& cert = cert_by_id(id);
  Ansatz a = certificate_ansatz(cert);
  return certify_symbolic(assemble_jacobian(a), cert.threshold);
}

const CertificateRecord* record_named_prefix(const SymbolicResult& res, const std::string& prefix) {
  for (const auto& rec : res.records)
    if (rec.name.rfind(prefix, 0) == 0) return &rec;
  return nullptr;
}

}  // namespace

TEST_CASE("A2 stage (i): the cubic difference is reproduced exactly") {
  SymbolicResult res = run_symbolic("A2/a1");
  const CertificateRecord* g = record_named_prefix(res, "G[m] <= 1");
  REQUIRE(g != nullptr);
  CHECK(g->power == 3);
  Poly expected(2);
  expected.add_term({1, 2}, rat(3, 4));
  expected.add_term({0, 3}, Rat(1));
  CHECK(g->difference == expected);
}

TEST_CASE("A2 stage (ii): the degree-12 difference matches coefficient by coefficient") {
  SymbolicResult res = run_symbolic("A2/a1");
  const CertificateRecord* d = record_named_prefix(res, "J1 * G[m] * G[m]");
  REQUIRE(d != nullptr);
  CHECK(d->power == 6);
  Poly scaled = d->difference.integerized();
  CHECK(scaled.term_count() == 11);
  const long expected[11][3] = {
      // {coeff, x1 exponent, x2 exponent}
      {216, 10, 2}, {2376, 9, 3},  {11925, 8, 4}, {35838, 7, 5}, {71120, 6, 6}, {96888, 5, 7},
      {91152, 4, 8}, {57888, 3, 9}, {23328, 2, 10}, {5184, 1, 11}, {432, 0, 12}};
  for (const auto& [coeff, e1, e2] : expected)
    CHECK(scaled.coeff({static_cast<unsigned>(e1), static_cast<unsigned>(e2)}) == coeff);
  CHECK(res.certified);
}

TEST_CASE("threshold certificates succeed for every built-in construction") {
  for (const auto& id : {"A1/a1", "A2/a1", "A2/a2", "B2/a1", "B2/a2", "BC2/a1", "BC2/a2", "C2/a1",
                         "C2/a2", "G2/a1", "G2/a2", "A3/a1a3"}) {
    SymbolicResult res = run_symbolic(id);
    CHECK_MESSAGE(res.certified, id);
    CHECK_MESSAGE(res.j2_leq_1, id);
  }
}

TEST_CASE("the A3 certificate needs (and gets) the chamber subdivision") {
  SymbolicResult res = run_symbolic("A3/a1a3");
  REQUIRE(res.certified);
  const CertificateRecord* stage2 = record_named_prefix(res, "J1");
  REQUIRE(stage2 != nullptr);
  CHECK(!stage2->direct);
  CHECK(!stage2->splits.empty());
  // the raw difference genuinely has mixed signs
  CHECK(nonneg_certificate(stage2->difference) == CertOutcome::inconclusive);
  // and the split pieces certify it over the orthant
  std::vector<std::string> splits;
  CHECK(certify_orthant_nonneg(stage2->difference, 2, &splits));
}

TEST_CASE("certify_orthant_nonneg handles signed squares") {
  // (x1 - x2)^2 needs one split; (x1-x2)^2 * (positive) stays provable
  Poly p = (Poly::variable(2, 0) - Poly::variable(2, 1)).pow(2);
  std::vector<std::string> splits;
  CHECK(certify_orthant_nonneg(p, 1, &splits));
  CHECK(!splits.empty());
  CHECK(!certify_orthant_nonneg(p, 0, nullptr));
  // something genuinely negative on the orthant must never certify
  Poly neg = Poly::variable(2, 0) * Poly::variable(2, 1) * rat(-1, 1);
  CHECK(!certify_orthant_nonneg(neg, 3, nullptr));
}

TEST_CASE("numeric scan: certified instances stay below one") {
  CertifyRequest req;
  req.type_label = "A2";
  req.delta_text = "a1";
  req.binding = MultBinding{{"m", 2}};
  req.mode = "both";
  Report rep = run_certify(req);
  CHECK(rep.verdict == Verdict::certified);
  REQUIRE(rep.numeric.has_value());
  CHECK(!rep.numeric->failed);
  CHECK(rep.numeric->max_j <= 1.0 + 1e-9);
  // max sits on the ray through the base point: x ~ (1, 0) on the simplex
  CHECK(rep.numeric->argmax[0] > 0.99);
  CHECK(rep.numeric->max_j > 1.0 - 1e-4);
}

TEST_CASE("numeric scan: scale invariance of the simplex maximum") {
  const auto& cert = cert_by_id("G2/a1");
  Ansatz a = certificate_ansatz(cert);
  JacobianExpr jac = assemble_jacobian(a);
  ConcreteJacobian eval(jac, bind_multiplicities(jac, {{"m", 2}}));
  NumericOptions o1, o2;
  o1.grid_n = o2.grid_n = 200;
  o2.simplex_sum = 2.0;
  NumericScan s1 = certify_numeric(eval, o1);
  NumericScan s2 = certify_numeric(eval, o2);
  CHECK(std::abs(s1.max_j - s2.max_j) < 1e-9);
}

TEST_CASE("numeric scan flags a broken ansatz with a witness") {
  // same factors as the A2 construction but exponents (3/4, 1/4)
  RootSystem rs = build_root_system("A2", {});
  DualBasis db = dual_basis(rs);
  ExactBasePoint base = exact_point_from_chamber(rs, db, 0b01, {Rat(1), Rat(0)});
  std::vector<std::pair<LinearForm, Rat>> forms = {
      {LinearForm{{Rat(1), Rat(0)}}, rat(3, 4)}, {LinearForm{{Rat(1), rat(3, 2)}}, rat(1, 4)}};
  Ansatz a = validate_ansatz(rs, 0b01, base, forms);
  JacobianExpr jac = assemble_jacobian(a);
  ConcreteJacobian eval(jac, bind_multiplicities(jac, {{"m", 2}}));
  NumericScan scan = certify_numeric(eval, {});
  CHECK(scan.failed);
  CHECK(scan.max_j > 1.0 + 1e-9);
  // the witness point really does exceed one
  CHECK(eval.log_j(scan.argmax) > std::log(1.0 + 1e-9));
}

TEST_CASE("B2 instance of the certified family is numerically supported") {
  CertifyRequest req;
  req.type_label = "B2";
  req.delta_text = "a1";
  req.binding = MultBinding{{"m1", 1}, {"m2", 2}};
  req.mode = "numeric";
  Report rep = run_certify(req);
  CHECK(rep.verdict == Verdict::numerically_supported);
  CHECK(rep.numeric->max_j <= 1.0 + 1e-9);
  CHECK(rep.j2_leq_1);  // stage (i) still runs in numeric mode
}

TEST_CASE("blank reference cells stay claim-free") {
  CertifyRequest req;
  req.type_label = "A2";
  req.delta_text = "a1";
  req.binding = MultBinding{{"m", 1}};
  req.mode = "symbolic";
  Report rep = run_certify(req);
  CHECK(rep.verdict == Verdict::inconclusive);
  CHECK(rep.symbolic->certified);          // the family certificate holds...
  CHECK(!rep.instance->holds);             // ...but m = 1 misses the threshold
}

TEST_CASE("soundness: no certified instance is ever failed by the numeric route") {
  // sweep the reference rows; run the numeric scan wherever the symbolic
  // threshold covers the instance
  for (const auto& row : catalog_rows()) {
    const CatalogCertificate* cert = find_certificate(row.type_label, row.delta_mask);
    if (!cert) continue;
    for (long n : {1L, 2L, 3L}) {
      MultBinding row_binding;
      bool parametric = false;
      for (const auto& [cls, expr] : row.mults) {
        if (!expr.is_constant()) parametric = true;
      }
      if (parametric && n > 1 && row.type_label == "BC2") continue;  // keep runtime modest
      // bind the certificate symbols from the row values
      MultBinding binding;
      bool consistent = true;
      for (const auto& [cls, cert_expr] : cert->symbolic_mults) {
        if (cert_expr.terms().size() != 1) continue;
        const std::string& symbol = cert_expr.terms()[0].first;
        long value = 0;
        for (const auto& [rn, re] : row.mults)
          if (rn == cls) value = re.evaluate({{"n", n}});
        bool found = false;
        for (auto& [bn, bv] : binding)
          if (bn == symbol) {
            found = true;
            if (bv != value) consistent = false;
          }
        if (!found) binding.emplace_back(symbol, value);
      }
      if (!consistent) continue;
      Ansatz a = certificate_ansatz(*cert);
      JacobianExpr jac = assemble_jacobian(a);
      SymbolicResult sym = certify_symbolic(jac, cert->threshold);
      auto sat = threshold_satisfied(cert->threshold, multiplicity_groups(jac), binding);
      if (!(sym.certified && sat.decidable && sat.holds)) continue;
      ConcreteJacobian eval(jac, bind_multiplicities(jac, binding));
      NumericOptions opts;
      opts.grid_n = 120;
      NumericScan scan = certify_numeric(eval, opts);
      std::string tag = row.type_label + " " + row.delta_text + " n=" + std::to_string(n);
      CHECK_MESSAGE(!scan.failed, tag);
      if (!parametric) break;  // constant rows need one pass only
    }
  }
}

TEST_CASE("A3 stage-(ii) difference is exactly nonnegative at sampled rationals") {
  const CatalogCertificate* cert = find_certificate("A3", 0b101);
  REQUIRE(cert != nullptr);
  Ansatz a = certificate_ansatz(*cert);
  SymbolicResult res = certify_symbolic(assemble_jacobian(a), cert->threshold);
  const CertificateRecord* stage2 = record_named_prefix(res, "J1");
  REQUIRE(stage2 != nullptr);
  REQUIRE(stage2->certified);
  std::mt19937 rng(77);
  std::uniform_int_distribution<long> num(0, 60), den(1, 9), tiny(0, 3);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Rat> x(3);
    if (trial % 3 == 0) {
      // crowd the equality ray (s, 0, s)
      Rat s = rat(num(rng) + 1, den(rng));
      x = {s, rat(tiny(rng), 97), s + rat(tiny(rng), 101)};
    } else {
      x = {rat(num(rng), den(rng)), rat(num(rng), den(rng)), rat(num(rng), den(rng))};
    }
    CHECK(stage2->difference.evaluate(x) >= 0);
  }
}

TEST_CASE("certified thresholds hold for random qualifying assignments") {
  std::mt19937 rng(83);
  std::uniform_int_distribution<long> m(1, 9);
  for (const auto& id : {"B2/a2", "G2/a1", "BC2/a1", "A3/a1a3"}) {
    const auto& cert = cert_by_id(id);
    Ansatz a = certificate_ansatz(cert);
    JacobianExpr jac = assemble_jacobian(a);
    SymbolicResult sym = certify_symbolic(jac, cert.threshold);
    REQUIRE(sym.certified);
    auto groups = multiplicity_groups(jac);
    for (int trial = 0; trial < 6; ++trial) {
      MultBinding binding;
      for (const auto& cls : a.rs.classes)
        for (const auto& [symname, coeff] : cls.multiplicity.terms()) {
          bool seen = false;
          for (auto& [bn, bv] : binding) seen |= bn == symname;
          if (!seen) binding.emplace_back(symname, m(rng));
        }
      auto sat = threshold_satisfied(cert.threshold, groups, binding);
      if (!(sat.decidable && sat.holds)) continue;
      ConcreteJacobian eval(jac, bind_multiplicities(jac, binding));
      NumericOptions opts;
      opts.grid_n = 150;
      NumericScan scan = certify_numeric(eval, opts);
      std::string tag = std::string(id) + " trial " + std::to_string(trial);
      CHECK_MESSAGE(scan.max_j <= 1.0 + 1e-9, tag);
    }
  }
}

TEST_CASE("heuristic search recovers a certifiable A2 ansatz") {
  RootSystem rs = build_root_system("A2", {});
  ThresholdSpec spec{{"m"}, 2};
  auto found = search_ansatz(rs, 0b01, spec);
  REQUIRE(found.has_value());
  CHECK(found->source == "search");
  SymbolicResult res = certify_symbolic(assemble_jacobian(*found), spec);
  CHECK(res.certified);
}

TEST_CASE("threshold satisfaction bookkeeping") {
  const auto& cert = cert_by_id("B2/a1");
  Ansatz a = certificate_ansatz(cert);
  auto groups = multiplicity_groups(assemble_jacobian(a));
  auto yes = threshold_satisfied(cert.threshold, groups, MultBinding{{"m1", 1}, {"m2", 2}});
  CHECK(yes.holds);
  auto no = threshold_satisfied(cert.threshold, groups, MultBinding{{"m1", 5}, {"m2", 1}});
  CHECK(no.decidable);
  CHECK(!no.holds);
  auto symbolic = threshold_satisfied(cert.threshold, groups, std::nullopt);
  CHECK(symbolic.decidable);
  CHECK(symbolic.holds);
  CHECK(symbolic.condition == "m2 >= 2");
}
