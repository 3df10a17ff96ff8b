#pragma once

#include <stdexcept>
#include <string>

namespace conecert {

enum class Errc {
  unsupported_family,
  bad_multiplicity,
  outside_span,
  singular_gram,
  empty_delta,
  exponent_sum,
  face_leak,
  negative_form,
  zero_at_base,
  degree_mismatch,
  divide_by_zero,
  no_convergence,
  wall_collision,
  eval_domain,
  dim_too_small,
  hypothesis_missing,
  term_limit,
  bad_input,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace conecert
