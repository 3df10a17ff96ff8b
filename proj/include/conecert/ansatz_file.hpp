#pragma once

#include <optional>
#include <string>

#include "conecert/catalog.hpp"

namespace conecert {

/// Declarative ansatz file:
///   # comment
///   system = B2
///   delta = a1
///   mult = m1 = 1, m2 = n          (optional; default: one symbol per class)
///   threshold = m2 + m3 >= 2       (optional)
///   base = [1, 0]                  (optional exact chamber coordinates)
///   coeffs = [1, 0], exponent = 1/2
///   coeffs = [1, 2], exponent = 1/2
struct AnsatzFile {
  std::string type_label;
  MultAssignment mults;
  unsigned delta_mask = 0;
  std::vector<std::pair<RatVec, Rat>> factors;
  std::optional<ThresholdSpec> threshold;
  std::optional<RatVec> base_chamber;
};

AnsatzFile parse_ansatz_file(const std::string& path);

}  // namespace conecert
