#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "conecert/ansatz.hpp"
#include "conecert/certify.hpp"
#include "conecert/product.hpp"

namespace conecert {

/// Self-contained certification record: everything needed to audit the
/// verdict or to feed the case into a composition is embedded.
struct Report {
  int schema = 1;
  std::string kind = "atomic";  // "atomic" | "product"
  Verdict verdict = Verdict::inconclusive;
  bool j2_leq_1 = false;

  // atomic payload
  std::optional<Ansatz> ansatz;
  std::optional<MultBinding> binding;     // concrete symbol values, if given
  std::optional<SymbolicResult> symbolic;
  std::optional<ThresholdSatisfaction> instance;

  LinExpr orbit_dim;
  LinExpr sphere_dim;
  std::optional<long> orbit_dim_value;
  std::optional<long> sphere_dim_value;

  std::optional<NumericScan> numeric;

  // product payload
  std::shared_ptr<Report> left, right;
  std::optional<ProfileResult> profile;
  long k1 = 0, k2 = 0;

  std::vector<std::string> notes;
  std::map<std::string, double> timings;

  int exit_code() const;
};

}  // namespace conecert
