#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "conecert/errors.hpp"
#include "conecert/rational.hpp"

namespace conecert {

/// Sparse multivariate polynomial over Q with a fixed variable count.
/// Terms are kept in a map keyed by exponent vector, so iteration order
/// (and everything derived from it: printing, digests) is deterministic.
class Poly {
 public:
  using Expvec = std::vector<unsigned>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rat& c);
  static Poly variable(std::size_t nvars, std::size_t i);
  /// sum_i coeffs[i] * x_i
  static Poly linear(const std::vector<Rat>& coeffs);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Expvec, Rat>& terms() const { return terms_; }

  void add_term(const Expvec& e, const Rat& c);
  Rat coeff(const Expvec& e) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& s) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Poly pow(unsigned k) const;

  long total_degree() const;  // -1 for the zero polynomial
  /// Degree if homogeneous, otherwise -1 (zero poly counts as homogeneous).
  long homogeneous_degree() const;

  Rat evaluate(const std::vector<Rat>& x) const;
  double evaluate(const std::vector<double>& x) const;
  /// Gradient evaluated at x.
  std::vector<double> gradient(const std::vector<double>& x) const;

  /// Substitute x_i -> replacement (a polynomial in the same variables).
  Poly substitute(std::size_t var, const Poly& replacement) const;

  bool all_coefficients_nonnegative() const;
  Rat min_coefficient() const;
  Rat max_coefficient() const;

  /// Smallest positive integer d with d*this integer-coefficient.
  Int coefficient_denominator_lcm() const;
  /// this * (lcm of coefficient denominators): primitive integer scaling.
  Poly integerized(Int* scale_out = nullptr) const;

  std::string to_string(const std::vector<std::string>& var_names = {}) const;
  /// FNV-1a over the canonical term string, for certificate audit records.
  std::string digest() const;

  /// Upper bound on stored terms before ops abort with TERM_LIMIT.
  static std::size_t term_limit;

 private:
  std::size_t nvars_ = 0;
  std::map<Expvec, Rat> terms_;
  void check_limit() const;
  void check_compatible(const Poly& o) const;
};

}  // namespace conecert
