#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conecert/monomial_expr.hpp"
#include "conecert/root_system.hpp"

namespace conecert {

using MultBinding = std::vector<std::pair<std::string, long>>;

/// Base point A = w / sqrt(s) kept exactly: w has rational chamber
/// coordinates supported on the face, s = <w,w>.  Everything the exact
/// certificates need (pairings <l,A>, normalization constants) stays inside
/// Q adjoined with sqrt(s).
struct ExactBasePoint {
  unsigned delta_mask = 0;
  RatVec w_chamber;  // length rank, zero off the face
  RatVec w_ambient;
  Rat s;             // <w, w>

  std::vector<double> chamber_unit() const;  // w_chamber / sqrt(s)
  std::vector<double> ambient_unit() const;
};

ExactBasePoint exact_point_from_chamber(const RootSystem& rs, const DualBasis& db, unsigned delta_mask,
                                        const RatVec& chamber);

/// Retraction ansatz f(x) = c * prod_i <l_i, x>^{e_i}, normalized so that
/// f(tA) = t, with the vanishing pattern required on faces not containing
/// the base face.
struct Ansatz {
  RootSystem rs;
  DualBasis db;
  unsigned delta0 = 0;
  ExactBasePoint base;
  std::vector<std::pair<LinearForm, Rat>> forms;  // (l_i, e_i), e_i > 0
  PowProduct c;
  std::string source = "builtin";  // catalog id, "file:<path>", "search"

  MonomialExpr f_expr() const;
  double f(const std::vector<double>& x) const { return f_expr().evaluate(x); }
};

/// Checks the two retraction conditions and the positivity preconditions,
/// computes the normalization constant.  Throws EXPONENT_SUM, NEGATIVE_FORM,
/// FACE_LEAK or ZERO_AT_BASE.
Ansatz validate_ansatz(const RootSystem& rs, unsigned delta0, const ExactBasePoint& base,
                       const std::vector<std::pair<LinearForm, Rat>>& forms);

/// ||grad f||^2 as an exact expression: f^2 * Q(x) / prod_i <l_i,x>^2 with
/// Q = sum_{ij} e_i e_j <l_i,l_j> prod_{k != i} l_k prod_{k != j} l_k.
/// Reduces to a ratio of polynomials whenever all 2 e_i are integers.
MonomialExpr gradient_norm_squared(const Ansatz& a);

/// The polynomial Q above.
Poly gradient_quadratic_poly(const Ansatz& a);

struct RootFactor {
  std::vector<long> root_coeffs;
  std::string root_label;
  int class_id = 0;
  MonomialExpr g;  // <l,A> f / <l,x>
};

/// Jacobian of the induced retraction in factored form:
/// J = sqrt(j1_squared) * prod_classes G_c^{m_c}.
struct JacobianExpr {
  std::size_t nvars = 0;
  MonomialExpr j1_squared;
  std::vector<RootFactor> root_factors;       // one per contributing root
  std::vector<MonomialExpr> class_factors;    // per class id; empty product = 1
  std::vector<std::string> class_names;
  std::vector<LinExpr> class_mults;

  /// sqrt(j1_squared) as a monomial expression (exponents halved).
  MonomialExpr j1() const { return j1_squared.pow(rat(1, 2)); }
  double eval_j(const std::vector<double>& x, const std::vector<long>& concrete_mults) const;
};

JacobianExpr assemble_jacobian(const Ansatz& a);

/// Bind class multiplicities to integers using symbol values.
std::vector<long> bind_multiplicities(const JacobianExpr& j,
                                      const std::vector<std::pair<std::string, long>>& binding);

}  // namespace conecert
