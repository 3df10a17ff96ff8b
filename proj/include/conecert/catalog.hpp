#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conecert/certify.hpp"
#include "conecert/root_system.hpp"

namespace conecert {

/// A certified retraction construction for one (type, base face) choice:
/// the symbolic multiplicity assignment, the ansatz factors, the exact base
/// point and the multiplicity threshold the certificate is run at.
struct CatalogCertificate {
  std::string id;  // "B2/a1"
  std::string type_label;
  unsigned delta_mask = 0;
  MultAssignment symbolic_mults;
  std::vector<std::pair<RatVec, Rat>> factors;  // (form coeffs, exponent)
  RatVec base_chamber;                          // exact w
  ThresholdSpec threshold;
};

/// One row of the reference table of rank-two isolated-orbit cones:
/// symmetric pair, multiplicities (possibly parametric in n), base face,
/// the reference dimensions and the reference area-minimizing mark.
struct CatalogRow {
  std::string type_label;
  std::string pair_name;
  std::string mult_text;  // as printed, e.g. "(2,(2n,1))"
  MultAssignment mults;
  std::string delta_text;  // "A1" / "A2"
  unsigned delta_mask = 0;
  LinExpr ref_orbit_dim;
  LinExpr ref_sphere_dim;
  bool ref_mark = false;
  long ref_mark_min_n = 0;  // 0 = unconditional; k = marked for n >= k
};

const std::vector<CatalogCertificate>& catalog_certificates();
const std::vector<CatalogRow>& catalog_rows();

const CatalogCertificate* find_certificate(const std::string& type_label, unsigned delta_mask);

/// Root system built from a certificate's symbolic assignment.
RootSystem certificate_system(const CatalogCertificate& cert);

/// Ansatz of a certificate (validated, with the exact base point).
Ansatz certificate_ansatz(const CatalogCertificate& cert);

struct TableCell {
  const CatalogRow* row = nullptr;
  LinExpr computed_orbit_dim;
  LinExpr computed_sphere_dim;
  bool dims_match = false;       // DISCREPANCY when false
  bool computed_mark = false;
  long computed_mark_min_n = 0;
  bool mark_matches = false;
  std::string certificate_id;    // empty when no construction applies
};

/// Recompute dimensions and verdict marks for every table row.
/// Certificates are run once per (type, face) and cached for the sweep.
std::vector<TableCell> reproduce_table();

std::string table_markdown(const std::vector<TableCell>& cells);
std::string table_json(const std::vector<TableCell>& cells);

/// Heuristic ansatz search: factor sets drawn from the contributing roots
/// and forms a + q*b (q in {1/2,1,3/2,2,3}) for a in the base face, with
/// exponents from a small rational grid; returns the first candidate whose
/// validation and threshold certificate both succeed.
std::optional<Ansatz> search_ansatz(const RootSystem& rs, unsigned delta_mask,
                                    const ThresholdSpec& threshold);

}  // namespace conecert
