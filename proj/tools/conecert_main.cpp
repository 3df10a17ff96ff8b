#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "conecert/driver.hpp"
#include "conecert/errors.hpp"
#include "conecert/minimal_orbit.hpp"
#include "conecert/product.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitPipeline = 70;

using namespace conecert;

void print_report_summary(const Report& r) {
  std::cout << "verdict: " << verdict_name(r.verdict) << "\n";
  if (r.ansatz) {
    std::cout << "system:  " << r.ansatz->rs.label << "  delta0 "
              << delta_label(r.ansatz->delta0, r.ansatz->rs.rank) << "  ansatz " << r.ansatz->source
              << "\n";
  }
  std::cout << "orbit dim: " << r.orbit_dim.to_string();
  if (r.orbit_dim_value) std::cout << " = " << *r.orbit_dim_value;
  std::cout << "   sphere dim: " << r.sphere_dim.to_string();
  if (r.sphere_dim_value) std::cout << " = " << *r.sphere_dim_value;
  std::cout << "\n";
  if (r.symbolic) {
    std::cout << "threshold: " << r.symbolic->threshold.to_string()
              << (r.symbolic->certified ? "  [certified]" : "  [not certified]") << "\n";
    for (const auto& rec : r.symbolic->records)
      std::cout << "  " << (rec.certified ? "ok   " : "open ") << rec.name << "  (N=" << rec.power.get_str()
                << ", terms=" << rec.diff_terms << (rec.direct ? "" : ", split") << ")\n";
  }
  if (r.numeric) {
    std::cout << "numeric max J = " << r.numeric->max_j << " over " << r.numeric->points_evaluated
              << " grid points";
    if (r.numeric->failed) std::cout << "  [exceeds 1]";
    std::cout << "\n";
  }
  if (r.profile) {
    std::cout << "profile max D = " << r.profile->max_d << " at (" << r.profile->arg_x1 << ", "
              << r.profile->arg_x2 << ")\n";
  }
  for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
}

int cmd_certify(const std::string& type, const std::string& rank, const std::string& delta,
                const std::string& mult, const std::string& ansatz, const std::string& mode,
                int threshold, int grid, int refine, const std::string& out_path,
                bool with_timings, const std::string& dump_path) {
  CertifyRequest req;
  req.type_label = type;
  if (!rank.empty()) req.type_label += rank;
  req.delta_text = delta;
  req.ansatz_path = ansatz;
  req.mode = mode;
  if (threshold > 0) req.threshold_t = threshold;
  req.numeric.grid_n = grid;
  req.numeric.refine_iters = refine;
  if (!mult.empty()) {
    // binding needs the system's symbols; build it the same way run_certify will
    if (!ansatz.empty() && ansatz != "search") {
      AnsatzFile file = parse_ansatz_file(ansatz);
      RootSystem rs = build_root_system(file.type_label, file.mults);
      req.binding = parse_mult_binding(mult, rs);
    } else {
      auto [fam, rk] = parse_type_label(req.type_label);
      (void)fam;
      unsigned dm = parse_delta(delta, rk);
      const CatalogCertificate* cert = find_certificate(req.type_label, dm);
      RootSystem rs = cert ? certificate_system(*cert) : build_root_system(req.type_label, {});
      req.binding = parse_mult_binding(mult, rs);
    }
  }
  Report report = run_certify(req);
  print_report_summary(report);
  if (!dump_path.empty() && report.symbolic) {
    std::ofstream dump(dump_path, std::ios::binary);
    for (const auto& rec : report.symbolic->records) {
      Int scale;
      Poly scaled = rec.difference.integerized(&scale);
      dump << "# " << rec.name << "   N = " << rec.power.get_str() << "   scale = " << scale.get_str()
           << (rec.certified ? "   certified" : "   open") << "\n";
      dump << scaled.to_string() << "\n\n";
    }
  }
  if (!with_timings) report.timings.clear();  // keep report files byte-reproducible
  if (!out_path.empty()) write_report_file(report, out_path);
  return report.exit_code();
}

int cmd_table(bool as_json, const std::string& out_path, const std::string& catalog_out) {
  auto cells = reproduce_table();
  std::string text = as_json ? table_json(cells) : table_markdown(cells);
  if (out_path.empty()) std::cout << text;
  else std::ofstream(out_path, std::ios::binary) << text;
  if (!catalog_out.empty()) std::ofstream(catalog_out, std::ios::binary) << catalog_file_json();
  return 0;
}

int cmd_product(const std::string& left_path, const std::string& right_path, int grid,
                const std::string& out_path, bool skip_numeric, bool with_timings) {
  Report left = read_report_file(left_path);
  Report right = read_report_file(right_path);
  Report prod = compose(left, right);
  if (!skip_numeric && prod.verdict != Verdict::inconclusive) {
    auto node = build_retraction_node(prod);
    NumericOptions opts;
    opts.grid_n = grid;
    NodeJacobian eval(*node);
    NumericScan scan = certify_numeric(eval, opts);
    prod.numeric = scan;
    if (scan.failed) {
      prod.verdict = Verdict::failed;
      prod.notes.push_back("numeric check of the composed retraction exceeded 1");
    }
  }
  print_report_summary(prod);
  if (!with_timings) prod.timings.clear();
  if (!out_path.empty()) write_report_file(prod, out_path);
  return prod.exit_code();
}

int cmd_minimal_orbit(const std::string& type, const std::string& rank, const std::string& delta,
                      const std::string& mult, bool numeric) {
  std::string label = type + rank;
  RootSystem rs = build_root_system(label, {});
  MinimalPointOptions opts;
  opts.force_numeric = numeric;
  if (!mult.empty()) opts.binding = parse_mult_binding(mult, rs);
  else {
    // uniform multiplicities keep the numeric residual well-defined
    for (const auto& cls : rs.classes)
      for (const auto& [sym, c] : cls.multiplicity.terms()) opts.binding.emplace_back(sym, 1);
  }
  BasePoint bp = minimal_point(rs, parse_delta(delta, rs.rank), opts);
  std::cout.precision(15);
  std::cout << "system " << rs.label << "  face " << delta_label(bp.delta_mask, rs.rank) << "\n";
  std::cout << "chamber coords:";
  for (double v : bp.chamber) std::cout << " " << v;
  std::cout << "\nambient coords:";
  for (double v : bp.ambient) std::cout << " " << v;
  std::cout << "\nresidual " << bp.residual << "  iterations " << bp.iterations
            << (bp.exact ? "  (exact)" : "  (numeric)") << "\n";
  if (bp.exact) {
    std::cout << "exact: ( ";
    for (const auto& v : bp.exact->w_chamber) std::cout << v.get_str() << " ";
    std::cout << ") / sqrt(" << bp.exact->s.get_str() << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certification of area-minimizing cones over minimal R-space embeddings"};
  app.require_subcommand(1);

  std::string type, rank, delta = "a1", mult, ansatz, mode = "both", out_path;
  int threshold = 0, grid = 400, refine = 200;
  bool with_timings = false;

  auto* certify = app.add_subcommand("certify", "run the certification pipeline for one cone");
  certify->add_option("--type", type, "system type label, e.g. A2, B2, BC2, C2, G2, A3");
  certify->add_option("--rank", rank, "rank, when not part of --type");
  certify->add_option("--delta", delta, "base face, e.g. a1 or a1,a3");
  certify->add_option("--mult", mult, "concrete multiplicities: positional (4,3) or named (m1=4,m2=3)");
  certify->add_option("--threshold", threshold, "multiplicity threshold t for the symbolic certificate");
  certify->add_option("--ansatz", ansatz, "ansatz file, or 'search' for the heuristic search");
  certify->add_option("--mode", mode, "symbolic | numeric | both")
      ->check(CLI::IsMember({"symbolic", "numeric", "both"}));
  certify->add_option("--grid", grid, "simplex grid resolution for the numeric scan");
  certify->add_option("--refine", refine, "gradient-ascent iterations per start");
  certify->add_option("--out", out_path, "write the JSON report here");
  certify->add_flag("--timings", with_timings, "include wall-clock timings in the JSON report");
  std::string dump_path;
  certify->add_option("--dump-certificates", dump_path,
                      "write the certificate difference polynomials as sorted term lists");

  bool table_as_json = false;
  std::string catalog_out;
  auto* table = app.add_subcommand("table", "recompute the reference catalog rows");
  table->add_flag("--json", table_as_json, "emit JSON instead of markdown");
  table->add_option("--out", out_path, "write the table here");
  table->add_option("--catalog-out", catalog_out, "also write the reference catalog data file");

  std::string left_path, right_path;
  bool skip_numeric = false;
  auto* product = app.add_subcommand("product", "compose two certified reports");
  product->add_option("left", left_path, "left factor report (JSON)")->required();
  product->add_option("right", right_path, "right factor report (JSON)")->required();
  product->add_option("--grid", grid, "grid for the product numeric check");
  product->add_flag("--skip-numeric", skip_numeric, "trust the composition theorem, skip the scan");
  product->add_option("--out", out_path, "write the product report here");
  product->add_flag("--timings", with_timings, "include wall-clock timings in the JSON report");

  bool mo_numeric = false;
  auto* morbit = app.add_subcommand("minimal-orbit", "solve for the minimal-orbit base point");
  morbit->add_option("--type", type, "system type label")->required();
  morbit->add_option("--rank", rank, "rank, when not part of --type");
  morbit->add_option("--delta", delta, "face, e.g. a1,a3")->required();
  morbit->add_option("--mult", mult, "concrete multiplicities for the residual");
  morbit->add_flag("--numeric", mo_numeric, "force the Newton path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (certify->parsed())
      return cmd_certify(type, rank, delta, mult, ansatz, mode, threshold, grid, refine, out_path,
                         with_timings, dump_path);
    if (table->parsed()) return cmd_table(table_as_json, out_path, catalog_out);
    if (product->parsed()) {
      try {
        return cmd_product(left_path, right_path, grid == 400 ? 60 : grid, out_path, skip_numeric,
                           with_timings);
      } catch (const conecert::Error& e) {
        if (e.code() == Errc::dim_too_small || e.code() == Errc::hypothesis_missing) {
          std::cerr << "error: " << e.what() << "\n";
          return 3;
        }
        throw;
      }
    }
    if (morbit->parsed()) return cmd_minimal_orbit(type, rank, delta, mult, mo_numeric);
  } catch (const conecert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return kExitUsage;
}
