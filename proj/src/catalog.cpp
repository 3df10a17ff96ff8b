#include "conecert/catalog.hpp"

#include <map>
#include <sstream>

#include "conecert/errors.hpp"
#include "conecert/minimal_orbit.hpp"

namespace conecert {

namespace {

LinExpr sym(const std::string& s) { return LinExpr::symbol(s); }
LinExpr nsym(long coeff, long cst = 0) { return LinExpr::symbol("n", coeff) + LinExpr(cst); }

RatVec rv(std::initializer_list<Rat> xs) { return RatVec(xs); }

std::vector<CatalogCertificate> make_certificates() {
  std::vector<CatalogCertificate> cs;

  // rank-one cone: f is linear, J = 1 identically
  cs.push_back({"A1/a1", "A1", 0b1, {{"m", sym("m")}},
                {{rv({1}), Rat(1)}},
                rv({1}),
                {{"m"}, 1}});

  cs.push_back({"A2/a1", "A2", 0b01, {{"m", sym("m")}},
                {{rv({1, 0}), rat(2, 3)}, {rv({1, rat(3, 2)}), rat(1, 3)}},
                rv({1, 0}),
                {{"m"}, 2}});
  cs.push_back({"A2/a2", "A2", 0b10, {{"m", sym("m")}},
                {{rv({0, 1}), rat(2, 3)}, {rv({rat(3, 2), 1}), rat(1, 3)}},
                rv({0, 1}),
                {{"m"}, 2}});

  cs.push_back({"B2/a1", "B2", 0b01, {{"m1", sym("m1")}, {"m2", sym("m2")}},
                {{rv({1, 0}), rat(1, 2)}, {rv({1, 2}), rat(1, 2)}},
                rv({1, 0}),
                {{"m2"}, 2}});
  cs.push_back({"B2/a2", "B2", 0b10, {{"m1", sym("m1")}, {"m2", sym("m2")}},
                {{rv({0, 1}), rat(2, 3)}, {rv({rat(3, 2), 1}), rat(1, 3)}},
                rv({0, 1}),
                {{"m2"}, 2}});

  cs.push_back({"BC2/a1", "BC2", 0b01, {{"m1", sym("m1")}, {"m2", sym("m2")}, {"m3", sym("m3")}},
                {{rv({1, 0}), rat(1, 2)}, {rv({1, 2}), rat(1, 2)}},
                rv({1, 0}),
                {{"m2", "m3"}, 2}});
  cs.push_back({"BC2/a2", "BC2", 0b10, {{"m1", sym("m1")}, {"m2", sym("m2")}, {"m3", sym("m3")}},
                {{rv({0, 1}), rat(2, 3)}, {rv({rat(3, 2), 1}), rat(1, 3)}},
                rv({0, 1}),
                {{"m2", "m3"}, 2}});

  // C2 carries the B2 constructions across the index-swapping isomorphism;
  // the e_i +- e_j class (m1) plays the threshold role.
  cs.push_back({"C2/a1", "C2", 0b01, {{"m1", sym("m1")}, {"m2", sym("m2")}},
                {{rv({1, 0}), rat(2, 3)}, {rv({1, rat(3, 2)}), rat(1, 3)}},
                rv({1, 0}),
                {{"m1"}, 2}});
  cs.push_back({"C2/a2", "C2", 0b10, {{"m1", sym("m1")}, {"m2", sym("m2")}},
                {{rv({0, 1}), rat(1, 2)}, {rv({2, 1}), rat(1, 2)}},
                rv({0, 1}),
                {{"m1"}, 2}});

  // G2: the two length classes share one multiplicity symbol
  cs.push_back({"G2/a1", "G2", 0b01, {{"m1", sym("m")}, {"m2", sym("m")}},
                {{rv({1, 0}), rat(1, 2)}, {rv({1, 1}), rat(1, 2)}},
                rv({1, 0}),
                {{"m"}, 2}});
  cs.push_back({"G2/a2", "G2", 0b10, {{"m1", sym("m")}, {"m2", sym("m")}},
                {{rv({0, 1}), rat(1, 2)}, {rv({3, 1}), rat(1, 2)}},
                rv({0, 1}),
                {{"m"}, 2}});

  // A3, base face {a1,a3}: the non-isolated minimal orbit case
  cs.push_back({"A3/a1a3", "A3", 0b101, {{"m", sym("m")}},
                {{rv({1, 0, 0}), rat(1, 4)},
                 {rv({0, 0, 1}), rat(1, 4)},
                 {rv({1, 1, 0}), rat(1, 4)},
                 {rv({0, 1, 1}), rat(1, 4)}},
                rv({1, 0, 1}),
                {{"m"}, 4}});

  return cs;
}

CatalogRow row(const std::string& type, const std::string& pair, const std::string& mult_text,
               MultAssignment mults, const std::string& delta, LinExpr orbit, LinExpr sphere,
               bool mark, long mark_min_n = 0) {
  CatalogRow r;
  r.type_label = type;
  r.pair_name = pair;
  r.mult_text = mult_text;
  r.mults = std::move(mults);
  r.delta_text = delta;
  r.delta_mask = delta == "A1" ? 0b01u : 0b10u;
  r.ref_orbit_dim = std::move(orbit);
  r.ref_sphere_dim = std::move(sphere);
  r.ref_mark = mark;
  r.ref_mark_min_n = mark_min_n <= 1 ? 0 : mark_min_n;  // n >= 1 is the whole domain
  return r;
}

std::vector<CatalogRow> make_rows() {
  std::vector<CatalogRow> rows;

  rows.push_back(row("A2", "(SU(3), SO(3))", "(1,1)", {{"m", 1}}, "A1", 2, 4, false));
  rows.push_back(row("A2", "(SU(3)xSU(3), SU(3))", "(2,2)", {{"m", 2}}, "A1", 4, 7, true));
  rows.push_back(row("A2", "(SU(6), Sp(3))", "(4,4)", {{"m", 4}}, "A1", 8, 13, true));
  rows.push_back(row("A2", "(E6, F4)", "(8,8)", {{"m", 8}}, "A1", 16, 25, true));

  rows.push_back(row("B2", "(SO(5)xSO(5), SO(5))", "(2,2)", {{"m1", 2}, {"m2", 2}}, "A1", 6, 9, true));
  rows.push_back(row("B2", "(SO(5)xSO(5), SO(5))", "(2,2)", {{"m1", 2}, {"m2", 2}}, "A2", 6, 9, true));
  rows.push_back(row("B2", "(SO(5), SO(2)xSO(3))", "(1,1)", {{"m1", 1}, {"m2", 1}}, "A1", 3, 5, false));
  rows.push_back(row("B2", "(SO(5), SO(2)xSO(3))", "(1,1)", {{"m1", 1}, {"m2", 1}}, "A2", 3, 5, false));
  rows.push_back(row("B2", "(SO(4+n), SO(2)xSO(2+n))", "(1,n)", {{"m1", 1}, {"m2", nsym(1)}}, "A1",
                     nsym(1, 2), nsym(2, 3), true, 2));
  rows.push_back(row("B2", "(SO(4+n), SO(2)xSO(2+n))", "(1,n)", {{"m1", 1}, {"m2", nsym(1)}}, "A2",
                     nsym(2, 1), nsym(2, 3), true, 2));

  rows.push_back(row("C2", "(Sp(2), U(2))", "(1,1)", {{"m1", 1}, {"m2", 1}}, "A1", 3, 5, false));
  rows.push_back(row("C2", "(Sp(2), U(2))", "(1,1)", {{"m1", 1}, {"m2", 1}}, "A2", 3, 5, false));
  rows.push_back(row("C2", "(Sp(2)xSp(2), Sp(2))", "(2,2)", {{"m1", 2}, {"m2", 2}}, "A1", 6, 9, true));
  rows.push_back(row("C2", "(Sp(2)xSp(2), Sp(2))", "(2,2)", {{"m1", 2}, {"m2", 2}}, "A2", 6, 9, true));
  rows.push_back(row("C2", "(Sp(4), Sp(2)xSp(2))", "(4,3)", {{"m1", 4}, {"m2", 3}}, "A1", 11, 15, true));
  rows.push_back(row("C2", "(Sp(4), Sp(2)xSp(2))", "(4,3)", {{"m1", 4}, {"m2", 3}}, "A2", 10, 15, true));
  rows.push_back(row("C2", "(SU(4), S(U(2)xU(2)))", "(2,1)", {{"m1", 2}, {"m2", 1}}, "A1", 5, 7, true));
  rows.push_back(row("C2", "(SU(4), S(U(2)xU(2)))", "(2,1)", {{"m1", 2}, {"m2", 1}}, "A2", 4, 7, true));
  rows.push_back(row("C2", "(SO(8), U(4))", "(4,1)", {{"m1", 4}, {"m2", 1}}, "A1", 9, 11, true));
  rows.push_back(row("C2", "(SO(8), U(4))", "(4,1)", {{"m1", 4}, {"m2", 1}}, "A2", 6, 11, true));

  rows.push_back(row("BC2", "(SU(4+n), S(U(2)xU(2+n)))", "(2,(2n,1))",
                     {{"m1", 2}, {"m2", nsym(2)}, {"m3", 1}}, "A1", nsym(2, 3), nsym(4, 7), true, 1));
  rows.push_back(row("BC2", "(SU(4+n), S(U(2)xU(2+n)))", "(2,(2n,1))",
                     {{"m1", 2}, {"m2", nsym(2)}, {"m3", 1}}, "A2", nsym(4, 4), nsym(4, 7), true, 1));
  rows.push_back(row("BC2", "(SO(10), U(5))", "(4,(4,1))", {{"m1", 4}, {"m2", 4}, {"m3", 1}}, "A1",
                     13, 19, true));
  rows.push_back(row("BC2", "(SO(10), U(5))", "(4,(4,1))", {{"m1", 4}, {"m2", 4}, {"m3", 1}}, "A2",
                     14, 19, true));
  rows.push_back(row("BC2", "(Sp(4+n), Sp(2)xSp(2+n))", "(4,(4n,3))",
                     {{"m1", 4}, {"m2", nsym(4)}, {"m3", 3}}, "A1", nsym(4, 11), nsym(8, 15), true, 1));
  rows.push_back(row("BC2", "(Sp(4+n), Sp(2)xSp(2+n))", "(4,(4n,3))",
                     {{"m1", 4}, {"m2", nsym(4)}, {"m3", 3}}, "A2", nsym(8, 10), nsym(8, 15), true, 1));
  rows.push_back(row("BC2", "(E6, T1.Spin(10))", "(6,(8,1))", {{"m1", 6}, {"m2", 8}, {"m3", 1}}, "A1",
                     21, 31, true));
  rows.push_back(row("BC2", "(E6, T1.Spin(10))", "(6,(8,1))", {{"m1", 6}, {"m2", 8}, {"m3", 1}}, "A2",
                     24, 31, true));

  rows.push_back(row("G2", "(G2, SO(4))", "(1,1)", {{"m1", 1}, {"m2", 1}}, "A1", 5, 7, false));
  rows.push_back(row("G2", "(G2, SO(4))", "(1,1)", {{"m1", 1}, {"m2", 1}}, "A2", 5, 7, false));
  rows.push_back(row("G2", "(G2xG2, G2)", "(2,2)", {{"m1", 2}, {"m2", 2}}, "A1", 10, 13, true));
  rows.push_back(row("G2", "(G2xG2, G2)", "(2,2)", {{"m1", 2}, {"m2", 2}}, "A2", 10, 13, true));

  return rows;
}

}  // namespace

const std::vector<CatalogCertificate>& catalog_certificates() {
  static const std::vector<CatalogCertificate> cs = make_certificates();
  return cs;
}

const std::vector<CatalogRow>& catalog_rows() {
  static const std::vector<CatalogRow> rows = make_rows();
  return rows;
}

const CatalogCertificate* find_certificate(const std::string& type_label, unsigned delta_mask) {
  for (const auto& c : catalog_certificates())
    if (c.type_label == type_label && c.delta_mask == delta_mask) return &c;
  return nullptr;
}

RootSystem certificate_system(const CatalogCertificate& cert) {
  return build_root_system(cert.type_label, cert.symbolic_mults);
}

Ansatz certificate_ansatz(const CatalogCertificate& cert) {
  RootSystem rs = certificate_system(cert);
  DualBasis db = dual_basis(rs);
  ExactBasePoint base = exact_point_from_chamber(rs, db, cert.delta_mask, cert.base_chamber);
  std::vector<std::pair<LinearForm, Rat>> forms;
  for (const auto& [coeffs, e] : cert.factors) forms.emplace_back(LinearForm{coeffs}, e);
  Ansatz a = validate_ansatz(rs, cert.delta_mask, base, forms);
  a.source = cert.id;
  return a;
}

std::vector<TableCell> reproduce_table() {
  // run each construction's certificate once
  std::map<std::string, SymbolicResult> cert_cache;
  auto certified = [&](const CatalogCertificate& cert) -> const SymbolicResult& {
    auto it = cert_cache.find(cert.id);
    if (it == cert_cache.end()) {
      Ansatz a = certificate_ansatz(cert);
      JacobianExpr j = assemble_jacobian(a);
      it = cert_cache.emplace(cert.id, certify_symbolic(j, cert.threshold)).first;
    }
    return it->second;
  };

  std::vector<TableCell> cells;
  for (const auto& r : catalog_rows()) {
    TableCell cell;
    cell.row = &r;
    RootSystem rs = build_root_system(r.type_label, r.mults);
    auto [orbit, sphere] = orbit_dimension(rs, r.delta_mask);
    cell.computed_orbit_dim = orbit;
    cell.computed_sphere_dim = sphere;
    cell.dims_match = orbit == r.ref_orbit_dim && sphere == r.ref_sphere_dim;

    const CatalogCertificate* cert = find_certificate(r.type_label, r.delta_mask);
    if (cert) {
      cell.certificate_id = cert->id;
      const SymbolicResult& sym_res = certified(*cert);
      if (sym_res.certified) {
        // bind the certificate's symbols from the row's class values
        std::map<std::string, LinExpr> bound;
        bool consistent = true;
        for (const auto& [cls_name, cert_expr] : cert->symbolic_mults) {
          if (cert_expr.terms().size() != 1 || cert_expr.constant_part() != 0) continue;
          const std::string& symbol = cert_expr.terms()[0].first;
          LinExpr row_value;
          for (const auto& [rn, rv_] : r.mults)
            if (rn == cls_name) row_value = rv_;
          auto it = bound.find(symbol);
          if (it == bound.end()) bound.emplace(symbol, row_value);
          else if (!(it->second == row_value)) consistent = false;
        }
        if (consistent) {
          LinExpr sum;
          for (const auto& gname : cert->threshold.variable_groups) {
            auto it = bound.find(gname);
            if (it != bound.end()) sum += it->second;
          }
          // decide sum >= t, possibly conditionally in n
          if (sum.is_constant()) {
            cell.computed_mark = sum.constant_part() >= cert->threshold.t;
          } else if (sum.terms().size() == 1 && sum.terms()[0].second > 0) {
            long coeff = sum.terms()[0].second;
            long need = cert->threshold.t - sum.constant_part();
            long n0 = need <= 0 ? 1 : (need + coeff - 1) / coeff;
            cell.computed_mark = true;
            cell.computed_mark_min_n = n0 > 1 ? n0 : 0;
          }
        }
      }
    }
    cell.mark_matches =
        cell.computed_mark == r.ref_mark &&
        (!cell.computed_mark || cell.computed_mark_min_n == r.ref_mark_min_n);
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::string table_markdown(const std::vector<TableCell>& cells) {
  std::ostringstream os;
  os << "| type | symmetric pair | mult | face | dims (computed) | dims (reference) | dims check | "
        "area-min (computed) | area-min (reference) | verdict check |\n";
  os << "|---|---|---|---|---|---|---|---|---|---|\n";
  auto mark_text = [](bool mark, long min_n) {
    if (!mark) return std::string("");
    if (min_n > 1) return "O (n >= " + std::to_string(min_n) + ")";
    return std::string("O");
  };
  for (const auto& c : cells) {
    const auto& r = *c.row;
    os << "| " << r.type_label << " | " << r.pair_name << " | " << r.mult_text << " | " << r.delta_text
       << " | (" << c.computed_orbit_dim.to_string() << ", " << c.computed_sphere_dim.to_string()
       << ") | (" << r.ref_orbit_dim.to_string() << ", " << r.ref_sphere_dim.to_string() << ") | "
       << (c.dims_match ? "ok" : "DISCREPANCY") << " | " << mark_text(c.computed_mark, c.computed_mark_min_n)
       << " | " << mark_text(r.ref_mark, r.ref_mark_min_n) << " | " << (c.mark_matches ? "ok" : "MISMATCH")
       << " |\n";
  }
  return os.str();
}

std::string table_json(const std::vector<TableCell>& cells) {
  std::ostringstream os;
  os << "{\n  \"schema\": 1,\n  \"rows\": [\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    const auto& r = *c.row;
    os << "    {\"type\": \"" << r.type_label << "\", \"pair\": \"" << r.pair_name << "\", "
       << "\"multiplicities\": \"" << r.mult_text << "\", \"delta\": \"" << r.delta_text << "\", "
       << "\"computed_dims\": [\"" << c.computed_orbit_dim.to_string() << "\", \""
       << c.computed_sphere_dim.to_string() << "\"], "
       << "\"reference_dims\": [\"" << r.ref_orbit_dim.to_string() << "\", \""
       << r.ref_sphere_dim.to_string() << "\"], "
       << "\"dims\": \"" << (c.dims_match ? "ok" : "DISCREPANCY") << "\", "
       << "\"computed_mark\": " << (c.computed_mark ? "true" : "false") << ", "
       << "\"computed_mark_min_n\": " << c.computed_mark_min_n << ", "
       << "\"reference_mark\": " << (r.ref_mark ? "true" : "false") << ", "
       << "\"reference_mark_min_n\": " << r.ref_mark_min_n << ", "
       << "\"certificate\": \"" << c.certificate_id << "\", "
       << "\"verdict\": \"" << (c.mark_matches ? "ok" : "MISMATCH") << "\"}";
    os << (i + 1 < cells.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

std::optional<Ansatz> search_ansatz(const RootSystem& rs, unsigned delta_mask,
                                    const ThresholdSpec& threshold) {
  // candidate forms: contributing roots, plus a + q*b for a in the face
  std::vector<LinearForm> candidates;
  for (const auto* root : contributing_roots(rs, delta_mask)) candidates.push_back(root->form());
  const std::vector<Rat> qs = {rat(1, 2), Rat(1), rat(3, 2), Rat(2), Rat(3)};
  for (int a = 0; a < rs.rank; ++a) {
    if (!((delta_mask >> a) & 1u)) continue;
    for (int b = 0; b < rs.rank; ++b) {
      if (a == b) continue;
      for (const auto& q : qs) {
        LinearForm f;
        f.coeffs.assign(static_cast<std::size_t>(rs.rank), Rat(0));
        f.coeffs[static_cast<std::size_t>(a)] = 1;
        f.coeffs[static_cast<std::size_t>(b)] = q;
        candidates.push_back(std::move(f));
      }
    }
  }
  // dedupe
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const std::vector<std::vector<Rat>> exponent_grids_2 = {
      {rat(1, 2), rat(1, 2)}, {rat(2, 3), rat(1, 3)}, {rat(1, 3), rat(2, 3)},
      {rat(3, 4), rat(1, 4)}, {rat(1, 4), rat(3, 4)}};
  const std::vector<std::vector<Rat>> exponent_grids_3 = {
      {rat(1, 3), rat(1, 3), rat(1, 3)}, {rat(1, 2), rat(1, 4), rat(1, 4)}};
  const std::vector<std::vector<Rat>> exponent_grids_4 = {
      {rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)}};

  DualBasis db = dual_basis(rs);
  RatVec base_chamber(static_cast<std::size_t>(rs.rank), Rat(0));
  for (int i = 0; i < rs.rank; ++i)
    if ((delta_mask >> i) & 1u) base_chamber[static_cast<std::size_t>(i)] = 1;
  if (!tangential_vanishes_exactly(rs, delta_mask, base_chamber)) return std::nullopt;
  ExactBasePoint base = exact_point_from_chamber(rs, db, delta_mask, base_chamber);

  auto try_set = [&](const std::vector<std::size_t>& idx,
                     const std::vector<std::vector<Rat>>& grids) -> std::optional<Ansatz> {
    for (const auto& exps : grids) {
      std::vector<std::pair<LinearForm, Rat>> forms;
      for (std::size_t i = 0; i < idx.size(); ++i) forms.emplace_back(candidates[idx[i]], exps[i]);
      try {
        Ansatz a = validate_ansatz(rs, delta_mask, base, forms);
        a.source = "search";
        JacobianExpr j = assemble_jacobian(a);
        if (certify_symbolic(j, threshold).certified) return a;
      } catch (const Error&) {
      }
    }
    return std::nullopt;
  };

  const std::size_t n = candidates.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (auto a = try_set({i, j}, exponent_grids_2)) return a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k)
        if (auto a = try_set({i, j, k}, exponent_grids_3)) return a;
  if (n <= 12) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        for (std::size_t k = j; k < n; ++k)
          for (std::size_t l = k; l < n; ++l)
            if (auto a = try_set({i, j, k, l}, exponent_grids_4)) return a;
  }
  return std::nullopt;
}

}  // namespace conecert
