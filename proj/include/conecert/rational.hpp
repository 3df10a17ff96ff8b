#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace conecert {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_from_string(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

inline double to_double(const Rat& r) { return r.get_d(); }

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// r^k for integer k (k may be negative; r must be nonzero then).
Rat pow_rat(const Rat& r, long k);

/// lcm of positive integers.
Int lcm_int(const Int& a, const Int& b);

/// Least common multiple of the denominators of a set of rationals.
Int common_denominator(const std::vector<Rat>& xs);

/// A positive constant kept as a product of rational powers of positive
/// rationals, e.g. sqrt(2/3) = (2/3)^(1/2).  Raising to a multiple of every
/// exponent denominator lands back in Q, which is how certificates stay exact.
class PowProduct {
 public:
  PowProduct() = default;
  explicit PowProduct(const Rat& base) { mul(base, Rat(1)); }

  static PowProduct one() { return PowProduct(); }

  /// Multiply by base^expo (base > 0 required).
  void mul(const Rat& base, const Rat& expo);
  void mul(const PowProduct& other);

  PowProduct pow(const Rat& e) const;
  PowProduct inverse() const;

  bool is_one() const { return parts_.empty(); }

  /// lcm of the exponent denominators (1 if already rational).
  Int exponent_denominator_lcm() const;

  /// Evaluate (this)^n exactly; n must clear every exponent denominator.
  Rat pow_to_rational(const Int& n) const;

  /// Exact value when every exponent is integral.
  bool is_rational() const;
  Rat rational_value() const;

  double value() const;
  std::string to_string() const;

  const std::vector<std::pair<Rat, Rat>>& parts() const { return parts_; }

 private:
  // canonical: bases sorted, no exponent-0 entries, bases not 1
  std::vector<std::pair<Rat, Rat>> parts_;
  void normalize();
};

/// Linear expression with integer coefficients over named symbols,
/// e.g. orbit dimensions like 2n+5 or symbolic multiplicities.
class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(long c) : constant_(c) {}  // NOLINT implicit
  static LinExpr symbol(const std::string& name, long coeff = 1);

  LinExpr& operator+=(const LinExpr& o);
  LinExpr operator+(const LinExpr& o) const;
  LinExpr operator*(long k) const;
  bool operator==(const LinExpr& o) const;

  bool is_constant() const { return terms_.empty(); }
  long constant_part() const { return constant_; }
  const std::vector<std::pair<std::string, long>>& terms() const { return terms_; }

  /// Substitute symbol values; every symbol must be bound.
  long evaluate(const std::vector<std::pair<std::string, long>>& binding) const;
  bool depends_on(const std::string& name) const;

  std::string to_string() const;

 private:
  long constant_ = 0;
  std::vector<std::pair<std::string, long>> terms_;  // sorted by name
  void normalize();
};

/// Parse expressions like "m", "2n", "2n + 3", "4".
LinExpr parse_lin_expr(const std::string& text);

}  // namespace conecert
