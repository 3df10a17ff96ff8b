#pragma once

#include <optional>
#include <string>

#include "conecert/ansatz_file.hpp"
#include "conecert/catalog.hpp"
#include "conecert/report.hpp"
#include "conecert/report_json.hpp"

namespace conecert {

struct CertifyRequest {
  std::string type_label;                // catalog path: system type
  std::string delta_text;                // e.g. "a1" or "a1,a3"
  std::string ansatz_path;               // file path, or "search", or empty for catalog
  std::optional<MultBinding> binding;    // concrete multiplicity symbol values
  std::optional<int> threshold_t;        // override for the certificate threshold
  std::string mode = "both";             // symbolic | numeric | both
  NumericOptions numeric;
};

/// Full pipeline: root data -> base point -> ansatz validation -> Jacobian ->
/// exact threshold certificate and/or numeric scan, folded into a report.
Report run_certify(const CertifyRequest& request);

/// Parse "--mult" text: either "name=value,..." pairs or positional values
/// assigned to the system's multiplicity symbols in first-appearance order.
MultBinding parse_mult_binding(const std::string& text, const RootSystem& rs);

/// Reference rows of the bundled catalog as a JSON document (the data file
/// shipped under data/catalog.json).
std::string catalog_file_json();

}  // namespace conecert
