#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conecert/poly.hpp"
#include "conecert/rational.hpp"
#include "conecert/root_system.hpp"

namespace conecert {

/// constant * prod_i <form_i, x>^{q_i} * prod_j P_j(x)^{r_j} with rational
/// exponents.  Positive on the open chamber whenever every linear factor has
/// nonnegative coefficients and every polynomial factor is positive there.
/// This is the shape of f, the per-root factors <l,A>f/<l,x>, and of the
/// Jacobian pieces; raising to the lcm of the exponent denominators turns
/// comparisons with 1 into polynomial inequalities.
class MonomialExpr {
 public:
  MonomialExpr() = default;
  explicit MonomialExpr(std::size_t nvars) : nvars_(nvars) {}

  static MonomialExpr one(std::size_t nvars) { return MonomialExpr(nvars); }

  std::size_t nvars() const { return nvars_; }
  const PowProduct& constant() const { return constant_; }
  const std::vector<std::pair<LinearForm, Rat>>& linear_factors() const { return linear_factors_; }
  const std::vector<std::pair<Poly, Rat>>& poly_factors() const { return poly_factors_; }

  void mul_constant(const Rat& base, const Rat& expo);
  void mul_constant(const PowProduct& c);
  void mul_form(const LinearForm& form, const Rat& expo);
  void mul_poly(const Poly& p, const Rat& expo);
  void mul(const MonomialExpr& other);

  MonomialExpr pow(const Rat& e) const;
  MonomialExpr operator*(const MonomialExpr& o) const;

  /// Total homogeneity degree (rational; poly factors must be homogeneous).
  Rat total_degree() const;

  double evaluate(const std::vector<double>& x) const;
  double log_evaluate(const std::vector<double>& x) const;
  /// d/dx log(this) at x.
  std::vector<double> log_gradient(const std::vector<double>& x) const;

  bool is_one() const { return constant_.is_one() && linear_factors_.empty() && poly_factors_.empty(); }

  /// Key identifying the expression up to exact algebraic identity of the
  /// stored factorization; used to deduplicate certificate obligations.
  std::string canonical_key() const;
  std::string to_string() const;

 private:
  std::size_t nvars_ = 0;
  PowProduct constant_;
  std::vector<std::pair<LinearForm, Rat>> linear_factors_;  // sorted by form
  std::vector<std::pair<Poly, Rat>> poly_factors_;
  void normalize();
};

struct ClearedInequality {
  Poly lhs;
  Poly rhs;
  Int power;  // the N both sides were raised to
  Poly difference() const { return rhs - lhs; }
};

/// Clear rational exponents from `lhs <= rhs`:  raises both sides to
/// N = lcm of all exponent denominators and cross-multiplies negative
/// powers, so that on the open chamber lhs <= rhs iff P_lhs <= P_rhs.
/// Throws DEGREE_MISMATCH when the two sides are not of equal homogeneity
/// degree (the comparison would not be scale-invariant).
ClearedInequality clear_powers(const MonomialExpr& lhs, const MonomialExpr& rhs);

enum class CertOutcome { certified, inconclusive };

/// Coefficient-nonnegativity check: CERTIFIED implies p >= 0 on the closed
/// positive orthant.  One-sided: a nonnegative p with mixed signs stays
/// INCONCLUSIVE.
CertOutcome nonneg_certificate(const Poly& p);

}  // namespace conecert
