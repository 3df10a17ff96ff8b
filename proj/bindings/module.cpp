#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conecert/driver.hpp"
#include "conecert/minimal_orbit.hpp"
#include "conecert/product.hpp"

namespace py = pybind11;
using namespace conecert;

namespace {

MultBinding binding_from_dict(const py::dict& d) {
  MultBinding out;
  for (const auto& item : d)
    out.emplace_back(py::cast<std::string>(item.first), py::cast<long>(item.second));
  return out;
}

py::dict scan_to_dict(const NumericScan& s) {
  py::dict out;
  out["max_j"] = s.max_j;
  out["argmax"] = s.argmax;
  out["failed"] = s.failed;
  out["points_evaluated"] = s.points_evaluated;
  return out;
}

}  // namespace

PYBIND11_MODULE(conecert, m) {
  m.doc() = "exact certification of area-minimizing cones over minimal R-space embeddings";

  m.def(
      "positive_roots",
      [](const std::string& type) {
        RootSystem rs = build_root_system(type, {});
        py::list out;
        for (const auto& r : rs.positive) {
          py::dict d;
          d["coeffs"] = r.simple_coeffs;
          d["label"] = r.label();
          d["cls"] = rs.cls(r.class_id).name;
          out.append(d);
        }
        return out;
      },
      py::arg("type"), "positive roots of a system as simple-root coefficient vectors");

  m.def(
      "dual_basis",
      [](const std::string& type) {
        RootSystem rs = build_root_system(type, {});
        DualBasis db = dual_basis(rs);
        py::list out;
        for (const auto& h : db.vectors) {
          py::list v;
          for (const auto& x : h) v.append(x.get_str());
          out.append(v);
        }
        return out;
      },
      py::arg("type"), "dual basis vectors as exact rational strings");

  m.def(
      "orbit_dimension",
      [](const std::string& type, const std::string& delta, const py::object& mult) {
        MultAssignment mults;
        if (!mult.is_none())
          for (const auto& item : py::cast<py::dict>(mult))
            mults.emplace_back(py::cast<std::string>(item.first),
                               parse_lin_expr(py::cast<std::string>(py::str(item.second))));
        RootSystem rs = build_root_system(type, mults);
        auto [orbit, sphere] = orbit_dimension(rs, parse_delta(delta, rs.rank));
        return py::make_tuple(orbit.to_string(), sphere.to_string());
      },
      py::arg("type"), py::arg("delta"), py::arg("mult") = py::none(),
      "orbit and sphere dimensions, symbolic in the multiplicities");

  m.def(
      "certify",
      [](const std::string& type, const std::string& delta, const py::object& mult,
         const py::object& threshold, const std::string& mode, int grid, const std::string& ansatz) {
        CertifyRequest req;
        req.type_label = type;
        req.delta_text = delta;
        req.mode = mode;
        req.ansatz_path = ansatz;
        req.numeric.grid_n = grid;
        if (!mult.is_none()) req.binding = binding_from_dict(py::cast<py::dict>(mult));
        if (!threshold.is_none()) req.threshold_t = py::cast<int>(threshold);
        Report r = run_certify(req);
        r.timings.clear();
        py::dict out;
        out["verdict"] = std::string(verdict_name(r.verdict));
        out["exit_code"] = r.exit_code();
        out["j2_leq_1"] = r.j2_leq_1;
        out["report_json"] = report_to_json(r);
        return out;
      },
      py::arg("type"), py::arg("delta"), py::arg("mult") = py::none(),
      py::arg("threshold") = py::none(), py::arg("mode") = "both", py::arg("grid") = 400,
      py::arg("ansatz") = "", "run the certification pipeline; returns verdict plus the full report");

  m.def(
      "minimal_orbit",
      [](const std::string& type, const std::string& delta, const py::object& mult, bool numeric) {
        RootSystem rs = build_root_system(type, {});
        MinimalPointOptions opts;
        opts.force_numeric = numeric;
        if (!mult.is_none()) opts.binding = binding_from_dict(py::cast<py::dict>(mult));
        else
          for (const auto& cls : rs.classes)
            for (const auto& [sym, c] : cls.multiplicity.terms()) opts.binding.emplace_back(sym, 1);
        BasePoint bp = minimal_point(rs, parse_delta(delta, rs.rank), opts);
        py::dict out;
        out["chamber"] = bp.chamber;
        out["ambient"] = bp.ambient;
        out["residual"] = bp.residual;
        out["exact"] = bp.exact.has_value();
        return out;
      },
      py::arg("type"), py::arg("delta"), py::arg("mult") = py::none(), py::arg("numeric") = false,
      "base point of the minimal orbit of the face's type");

  m.def(
      "profile_check",
      [](long k1, long k2) {
        ProfileResult r = profile_check(k1, k2);
        py::dict out;
        out["max_d"] = r.max_d;
        out["arg_x1"] = r.arg_x1;
        out["arg_x2"] = r.arg_x2;
        out["max_is_one_at_diagonal"] = r.max_is_one_at_diagonal;
        return out;
      },
      py::arg("k1"), py::arg("k2"), "maximum of the product profile D on its segment");

  m.def(
      "compose",
      [](const std::string& left_json, const std::string& right_json, int grid) {
        Report left = report_from_json(left_json);
        Report right = report_from_json(right_json);
        Report prod = compose(left, right);
        if (grid > 0 && prod.verdict != Verdict::inconclusive) {
          auto node = build_retraction_node(prod);
          NodeJacobian eval(*node);
          NumericOptions opts;
          opts.grid_n = grid;
          NumericScan scan = certify_numeric(eval, opts);
          prod.numeric = scan;
          if (scan.failed) prod.verdict = Verdict::failed;
        }
        py::dict out;
        out["verdict"] = std::string(verdict_name(prod.verdict));
        out["k1"] = prod.k1;
        out["k2"] = prod.k2;
        if (prod.numeric) out["numeric"] = scan_to_dict(*prod.numeric);
        out["report_json"] = report_to_json(prod);
        return out;
      },
      py::arg("left_json"), py::arg("right_json"), py::arg("grid") = 0,
      "compose two certified reports; grid > 0 adds the numeric check");

  m.def("table_json", [] { return table_json(reproduce_table()); },
        "recompute the reference table as JSON");
  m.def("table_markdown", [] { return table_markdown(reproduce_table()); },
        "recompute the reference table as markdown");
  m.def("catalog_json", [] { return catalog_file_json(); }, "the bundled reference catalog rows");

  py::register_exception<Error>(m, "ConecertError");
}
