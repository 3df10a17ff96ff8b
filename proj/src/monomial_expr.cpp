#include "conecert/monomial_expr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "conecert/errors.hpp"

namespace conecert {

void MonomialExpr::mul_constant(const Rat& base, const Rat& expo) { constant_.mul(base, expo); }

void MonomialExpr::mul_constant(const PowProduct& c) { constant_.mul(c); }

void MonomialExpr::mul_form(const LinearForm& form, const Rat& expo) {
  if (expo == 0) return;
  if (form.coeffs.size() != nvars_) throw Error(Errc::bad_input, "form arity mismatch");
  linear_factors_.emplace_back(form, expo);
  normalize();
}

void MonomialExpr::mul_poly(const Poly& p, const Rat& expo) {
  if (expo == 0) return;
  if (p.nvars() != nvars_) throw Error(Errc::bad_input, "poly arity mismatch");
  if (p.homogeneous_degree() < 0)
    throw Error(Errc::bad_input, "poly factors must be homogeneous");
  poly_factors_.emplace_back(p, expo);
  normalize();
}

void MonomialExpr::mul(const MonomialExpr& other) {
  if (other.nvars_ != nvars_) throw Error(Errc::bad_input, "arity mismatch in product");
  constant_.mul(other.constant_);
  for (const auto& [f, e] : other.linear_factors_) linear_factors_.emplace_back(f, e);
  for (const auto& [p, e] : other.poly_factors_) poly_factors_.emplace_back(p, e);
  normalize();
}

MonomialExpr MonomialExpr::pow(const Rat& e) const {
  MonomialExpr out(nvars_);
  if (e == 0) return out;
  out.constant_ = constant_.pow(e);
  for (const auto& [f, x] : linear_factors_) out.linear_factors_.emplace_back(f, x * e);
  for (const auto& [p, x] : poly_factors_) out.poly_factors_.emplace_back(p, x * e);
  out.normalize();
  return out;
}

MonomialExpr MonomialExpr::operator*(const MonomialExpr& o) const {
  MonomialExpr out = *this;
  out.mul(o);
  return out;
}

void MonomialExpr::normalize() {
  std::map<RatVec, Rat> forms;
  for (const auto& [f, e] : linear_factors_) forms[f.coeffs] += e;
  linear_factors_.clear();
  for (const auto& [c, e] : forms)
    if (e != 0) linear_factors_.emplace_back(LinearForm{c}, e);

  std::vector<std::pair<Poly, Rat>> polys;
  for (const auto& [p, e] : poly_factors_) {
    bool merged = false;
    for (auto& [q, x] : polys)
      if (q == p) {
        x += e;
        merged = true;
        break;
      }
    if (!merged) polys.emplace_back(p, e);
  }
  poly_factors_.clear();
  for (auto& [p, e] : polys)
    if (e != 0) poly_factors_.emplace_back(std::move(p), e);
}

Rat MonomialExpr::total_degree() const {
  Rat d(0);
  for (const auto& [f, e] : linear_factors_) d += e;
  for (const auto& [p, e] : poly_factors_) d += e * Rat(p.homogeneous_degree());
  return d;
}

double MonomialExpr::evaluate(const std::vector<double>& x) const {
  return std::exp(log_evaluate(x));
}

double MonomialExpr::log_evaluate(const std::vector<double>& x) const {
  double s = std::log(constant_.value());
  for (const auto& [f, e] : linear_factors_) s += to_double(e) * std::log(f.evaluate(x));
  for (const auto& [p, e] : poly_factors_) s += to_double(e) * std::log(p.evaluate(x));
  return s;
}

std::vector<double> MonomialExpr::log_gradient(const std::vector<double>& x) const {
  std::vector<double> g(nvars_, 0.0);
  for (const auto& [f, e] : linear_factors_) {
    double v = f.evaluate(x);
    double w = to_double(e) / v;
    for (std::size_t i = 0; i < nvars_; ++i) g[i] += w * to_double(f.coeffs[i]);
  }
  for (const auto& [p, e] : poly_factors_) {
    double v = p.evaluate(x);
    auto pg = p.gradient(x);
    double w = to_double(e) / v;
    for (std::size_t i = 0; i < nvars_; ++i) g[i] += w * pg[i];
  }
  return g;
}

std::string MonomialExpr::canonical_key() const {
  std::ostringstream os;
  os << constant_.to_string() << "|";
  for (const auto& [f, e] : linear_factors_) {
    os << "[";
    for (const auto& c : f.coeffs) os << c.get_str() << ",";
    os << "]^" << e.get_str();
  }
  os << "|";
  for (const auto& [p, e] : poly_factors_) os << "(" << p.digest() << ")^" << e.get_str();
  return os.str();
}

std::string MonomialExpr::to_string() const {
  std::ostringstream os;
  if (!constant_.is_one()) os << constant_.to_string() << " ";
  for (const auto& [f, e] : linear_factors_) {
    os << "<" << f.to_string() << ">";
    if (e != 1) os << "^(" << e.get_str() << ")";
    os << " ";
  }
  for (const auto& [p, e] : poly_factors_) {
    os << "(" << p.to_string() << ")";
    if (e != 1) os << "^(" << e.get_str() << ")";
    os << " ";
  }
  std::string s = os.str();
  if (s.empty()) return "1";
  if (s.back() == ' ') s.pop_back();
  return s;
}

namespace {

// multiply side^N into numerator/denominator polynomials
void accumulate_side(const MonomialExpr& side, const Int& n, std::size_t nvars, Poly& num, Poly& den) {
  num = Poly::constant(nvars, Rat(1));
  den = Poly::constant(nvars, Rat(1));
  Rat c = side.constant().pow_to_rational(n);
  if (c <= 0) throw Error(Errc::bad_input, "nonpositive constant in cleared inequality");
  num = num * c;
  for (const auto& [f, e] : side.linear_factors()) {
    Rat ne = e * Rat(n);
    if (!is_integer(ne)) throw Error(Errc::bad_input, "uncleared linear exponent");
    long k = ne.get_num().get_si();
    Poly fp = Poly::linear(f.coeffs);
    if (k > 0) num = num * fp.pow(static_cast<unsigned>(k));
    else if (k < 0) den = den * fp.pow(static_cast<unsigned>(-k));
  }
  for (const auto& [p, e] : side.poly_factors()) {
    Rat ne = e * Rat(n);
    if (!is_integer(ne)) throw Error(Errc::bad_input, "uncleared poly exponent");
    long k = ne.get_num().get_si();
    if (k > 0) num = num * p.pow(static_cast<unsigned>(k));
    else if (k < 0) den = den * p.pow(static_cast<unsigned>(-k));
  }
}

}  // namespace

ClearedInequality clear_powers(const MonomialExpr& lhs, const MonomialExpr& rhs) {
  if (lhs.nvars() != rhs.nvars())
    throw Error(Errc::bad_input, "clear_powers: variable counts differ");
  if (lhs.total_degree() != rhs.total_degree())
    throw Error(Errc::degree_mismatch,
                "inequality is not scale-invariant: degrees " + lhs.total_degree().get_str() +
                    " vs " + rhs.total_degree().get_str());

  Int n(1);
  auto absorb = [&n](const MonomialExpr& side) {
    n = lcm_int(n, side.constant().exponent_denominator_lcm());
    for (const auto& [f, e] : side.linear_factors()) n = lcm_int(n, Int(e.get_den()));
    for (const auto& [p, e] : side.poly_factors()) n = lcm_int(n, Int(e.get_den()));
  };
  absorb(lhs);
  absorb(rhs);

  const std::size_t nv = lhs.nvars();
  Poly lnum(nv), lden(nv), rnum(nv), rden(nv);
  accumulate_side(lhs, n, nv, lnum, lden);
  accumulate_side(rhs, n, nv, rnum, rden);

  ClearedInequality out;
  out.lhs = lnum * rden;
  out.rhs = rnum * lden;
  out.power = n;
  return out;
}

CertOutcome nonneg_certificate(const Poly& p) {
  return p.all_coefficients_nonnegative() ? CertOutcome::certified : CertOutcome::inconclusive;
}

}  // namespace conecert
