#include "conecert/driver.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "conecert/errors.hpp"
#include "conecert/minimal_orbit.hpp"

namespace conecert {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> distinct_symbols(const RootSystem& rs) {
  std::vector<std::string> out;
  for (const auto& cls : rs.classes)
    for (const auto& [name, coeff] : cls.multiplicity.terms())
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  return out;
}

ThresholdSpec default_threshold(const JacobianExpr& jac) {
  ThresholdSpec spec;
  for (const auto& g : multiplicity_groups(jac)) spec.variable_groups.push_back(g.key);
  spec.t = 1;
  return spec;
}

}  // namespace

MultBinding parse_mult_binding(const std::string& text, const RootSystem& rs) {
  MultBinding binding;
  std::vector<std::string> pieces;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      pieces.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) pieces.push_back(cur);
  if (pieces.empty()) throw Error(Errc::bad_input, "empty --mult");

  const bool named = text.find('=') != std::string::npos;
  if (named) {
    for (const auto& p : pieces) {
      std::size_t eq = p.find('=');
      if (eq == std::string::npos) throw Error(Errc::bad_input, "mixed named/positional --mult");
      binding.emplace_back(p.substr(0, eq), std::stol(p.substr(eq + 1)));
    }
    return binding;
  }
  std::vector<std::string> symbols = distinct_symbols(rs);
  if (pieces.size() != symbols.size())
    throw Error(Errc::bad_input, "--mult needs " + std::to_string(symbols.size()) +
                                     " values for symbols of " + rs.label);
  for (std::size_t i = 0; i < pieces.size(); ++i) binding.emplace_back(symbols[i], std::stol(pieces[i]));
  return binding;
}

Report run_certify(const CertifyRequest& request) {
  auto t0 = std::chrono::steady_clock::now();
  Report report;
  report.kind = "atomic";

  // resolve the system, ansatz and threshold
  std::optional<Ansatz> ansatz;
  std::optional<ThresholdSpec> threshold;

  if (!request.ansatz_path.empty() && request.ansatz_path != "search") {
    AnsatzFile file = parse_ansatz_file(request.ansatz_path);
    RootSystem rs = build_root_system(file.type_label, file.mults);
    DualBasis db = dual_basis(rs);
    ExactBasePoint base = [&] {
      if (file.base_chamber) return exact_point_from_chamber(rs, db, file.delta_mask, *file.base_chamber);
      MinimalPointOptions mp_opts;
      mp_opts.binding = request.binding.value_or(MultBinding{});
      BasePoint bp = minimal_point(rs, file.delta_mask, mp_opts);
      if (!bp.exact)
        throw Error(Errc::bad_input,
                    "no exact base point available for this face; add a 'base = [...]' line");
      return *bp.exact;
    }();
    std::vector<std::pair<LinearForm, Rat>> forms;
    for (const auto& [coeffs, e] : file.factors) forms.emplace_back(LinearForm{coeffs}, e);
    Ansatz a = validate_ansatz(rs, file.delta_mask, base, forms);
    a.source = "file:" + request.ansatz_path;
    ansatz = std::move(a);
    threshold = file.threshold;
  } else {
    if (request.type_label.empty()) throw Error(Errc::bad_input, "need --type or --ansatz");
    auto [fam, rank] = parse_type_label(request.type_label);
    (void)fam;
    unsigned delta = parse_delta(request.delta_text, rank);
    const CatalogCertificate* cert = find_certificate(request.type_label, delta);
    if (request.ansatz_path == "search") {
      MultAssignment mults = cert ? cert->symbolic_mults : MultAssignment{};
      RootSystem rs = build_root_system(request.type_label, mults);
      ThresholdSpec spec;
      if (cert) {
        spec = cert->threshold;
      } else {
        spec.variable_groups = distinct_symbols(rs);
        spec.t = request.threshold_t.value_or(1);
      }
      if (request.threshold_t) spec.t = *request.threshold_t;
      auto found = search_ansatz(rs, delta, spec);
      if (!found)
        throw Error(Errc::bad_input, "ansatz search found no certifiable candidate for " +
                                         request.type_label + " " + delta_label(delta, rank));
      ansatz = std::move(found);
      threshold = spec;
    } else {
      if (!cert)
        throw Error(Errc::bad_input, "no built-in construction for " + request.type_label + " " +
                                         delta_label(delta, rank) + "; provide --ansatz");
      ansatz = certificate_ansatz(*cert);
      threshold = cert->threshold;
    }
  }

  JacobianExpr jac = assemble_jacobian(*ansatz);
  if (!threshold) threshold = default_threshold(jac);
  if (request.threshold_t) threshold->t = *request.threshold_t;

  report.ansatz = ansatz;
  report.binding = request.binding;
  auto [orbit, sphere] = orbit_dimension(ansatz->rs, ansatz->delta0);
  report.orbit_dim = orbit;
  report.sphere_dim = sphere;
  if (request.binding) {
    report.orbit_dim_value = orbit.evaluate(*request.binding);
    report.sphere_dim_value = sphere.evaluate(*request.binding);
  } else {
    if (orbit.is_constant()) report.orbit_dim_value = orbit.constant_part();
    if (sphere.is_constant()) report.sphere_dim_value = sphere.constant_part();
  }

  const bool want_symbolic = request.mode == "symbolic" || request.mode == "both";
  const bool want_numeric = request.mode == "numeric" || request.mode == "both";
  if (!want_symbolic && !want_numeric)
    throw Error(Errc::bad_input, "mode must be symbolic, numeric or both");

  bool instance_covered = false;
  {
    // stage (i) always runs (it is cheap and carries the J2 <= 1 record);
    // stage (ii) only in symbolic/both mode
    auto ts = std::chrono::steady_clock::now();
    SymbolicResult sym_res = certify_symbolic(jac, *threshold, want_symbolic);
    report.timings["symbolic_s"] = seconds_since(ts);
    report.j2_leq_1 = sym_res.j2_leq_1;
    report.instance = threshold_satisfied(*threshold, multiplicity_groups(jac), request.binding);
    if (sym_res.certified && report.instance->decidable && report.instance->holds) {
      report.verdict = Verdict::certified;
      instance_covered = true;
      if (!report.instance->condition.empty())
        report.notes.push_back("certified under the condition " + report.instance->condition);
    } else if (want_symbolic) {
      report.verdict = Verdict::inconclusive;
      if (sym_res.certified)
        report.notes.push_back("threshold " + threshold->to_string() +
                               " is certified but not met by the given multiplicities; no "
                               "minimizing claim for this instance");
      else
        report.notes.push_back("symbolic certificate incomplete: " + sym_res.failure);
    }
    report.symbolic = std::move(sym_res);
  }

  bool all_constant = true;
  for (const auto& m : jac.class_mults) all_constant &= m.is_constant();
  if (want_numeric && !request.binding && !all_constant) {
    if (request.mode == "numeric")
      throw Error(Errc::bad_input, "numeric mode needs concrete multiplicities (--mult)");
    report.notes.push_back("numeric scan skipped: no concrete multiplicities given");
  } else if (want_numeric) {
    auto tn = std::chrono::steady_clock::now();
    ConcreteJacobian eval(jac, bind_multiplicities(jac, request.binding.value_or(MultBinding{})));
    NumericScan scan;
    try {
      scan = certify_numeric(eval, request.numeric);
    } catch (const Error& e) {
      if (e.code() != Errc::eval_domain) throw;
      NumericOptions retry = request.numeric;
      retry.barrier = request.numeric.barrier * 0.01;
      scan = certify_numeric(eval, retry);
    }
    report.timings["numeric_s"] = seconds_since(tn);
    report.numeric = scan;
    if (scan.failed) {
      report.verdict = Verdict::failed;
      report.notes.push_back("numeric maximum exceeds 1 beyond tolerance; witness recorded");
    } else if (!instance_covered) {
      report.verdict = Verdict::numerically_supported;
    }
  }

  report.timings["total_s"] = seconds_since(t0);
  return report;
}

std::string catalog_file_json() {
  std::ostringstream os;
  os << "{\n  \"schema\": 1,\n  \"rows\": [\n";
  const auto& rows = catalog_rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    auto [fam, rank] = parse_type_label(r.type_label);
    os << "    {\"family\": \"" << family_name(fam) << "\", \"rank\": " << rank << ", \"type\": \""
       << r.type_label << "\", \"pair\": \"" << r.pair_name << "\", \"multiplicities\": {";
    for (std::size_t k = 0; k < r.mults.size(); ++k) {
      if (k) os << ", ";
      os << "\"" << r.mults[k].first << "\": \"" << r.mults[k].second.to_string() << "\"";
    }
    os << "}, \"delta\": \"" << r.delta_text << "\", \"orbit_dim\": \"" << r.ref_orbit_dim.to_string()
       << "\", \"sphere_dim\": \"" << r.ref_sphere_dim.to_string() << "\", \"area_minimizing\": "
       << (r.ref_mark ? "true" : "false") << ", \"mark_min_n\": " << r.ref_mark_min_n << "}";
    os << (i + 1 < rows.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

}  // namespace conecert
