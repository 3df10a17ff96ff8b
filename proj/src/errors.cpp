#include "conecert/errors.hpp"

namespace conecert {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::unsupported_family: return "UNSUPPORTED_FAMILY";
    case Errc::bad_multiplicity: return "BAD_MULTIPLICITY";
    case Errc::outside_span: return "OUTSIDE_SPAN";
    case Errc::singular_gram: return "SINGULAR_GRAM";
    case Errc::empty_delta: return "EMPTY_DELTA";
    case Errc::exponent_sum: return "EXPONENT_SUM";
    case Errc::face_leak: return "FACE_LEAK";
    case Errc::negative_form: return "NEGATIVE_FORM";
    case Errc::zero_at_base: return "ZERO_AT_BASE";
    case Errc::degree_mismatch: return "DEGREE_MISMATCH";
    case Errc::divide_by_zero: return "DIVIDE_BY_ZERO";
    case Errc::no_convergence: return "NO_CONVERGENCE";
    case Errc::wall_collision: return "WALL_COLLISION";
    case Errc::eval_domain: return "EVAL_DOMAIN";
    case Errc::dim_too_small: return "DIM_TOO_SMALL";
    case Errc::hypothesis_missing: return "HYPOTHESIS_MISSING";
    case Errc::term_limit: return "TERM_LIMIT";
    case Errc::bad_input: return "BAD_INPUT";
  }
  return "UNKNOWN";
}

}  // namespace conecert
