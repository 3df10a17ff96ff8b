#include "conecert/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace conecert {

Rat pow_rat(const Rat& r, long k) {
  if (k == 0) return Rat(1);
  if (r == 0 && k < 0) throw std::domain_error("0 raised to negative power");
  Rat base = k > 0 ? r : Rat(1) / r;
  unsigned long e = static_cast<unsigned long>(k > 0 ? k : -k);
  Rat out(1);
  while (e) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

Int lcm_int(const Int& a, const Int& b) {
  Int g, l;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  l = a / g * b;
  return l;
}

Int common_denominator(const std::vector<Rat>& xs) {
  Int l(1);
  for (const auto& x : xs) l = lcm_int(l, Int(x.get_den()));
  return l;
}

void PowProduct::mul(const Rat& base, const Rat& expo) {
  if (base <= 0) throw std::domain_error("PowProduct base must be positive");
  if (base == 1 || expo == 0) return;
  parts_.emplace_back(base, expo);
  normalize();
}

void PowProduct::mul(const PowProduct& other) {
  for (const auto& [b, e] : other.parts_) parts_.emplace_back(b, e);
  normalize();
}

PowProduct PowProduct::pow(const Rat& e) const {
  PowProduct out;
  if (e == 0) return out;
  for (const auto& [b, x] : parts_) out.parts_.emplace_back(b, x * e);
  out.normalize();
  return out;
}

PowProduct PowProduct::inverse() const { return pow(Rat(-1)); }

void PowProduct::normalize() {
  std::map<Rat, Rat> acc;
  for (const auto& [b, e] : parts_) acc[b] += e;
  parts_.clear();
  Rat rational_part(1);
  for (const auto& [b, e] : acc) {
    if (e == 0) continue;
    if (is_integer(e)) {
      // fold integral powers into one rational coefficient
      long k = static_cast<long>(e.get_num().get_si());
      rational_part *= pow_rat(b, k);
    } else {
      parts_.emplace_back(b, e);
    }
  }
  if (rational_part != 1) parts_.emplace_back(rational_part, Rat(1));
  std::sort(parts_.begin(), parts_.end());
}

Int PowProduct::exponent_denominator_lcm() const {
  Int l(1);
  for (const auto& [b, e] : parts_) l = lcm_int(l, Int(e.get_den()));
  return l;
}

Rat PowProduct::pow_to_rational(const Int& n) const {
  Rat out(1);
  for (const auto& [b, e] : parts_) {
    Rat ne = e * Rat(n);
    if (!is_integer(ne))
      throw std::domain_error("PowProduct::pow_to_rational: exponent not cleared by " + n.get_str());
    out *= pow_rat(b, static_cast<long>(ne.get_num().get_si()));
  }
  return out;
}

bool PowProduct::is_rational() const {
  for (const auto& [b, e] : parts_)
    if (!is_integer(e)) return false;
  return true;
}

Rat PowProduct::rational_value() const { return pow_to_rational(Int(1)); }

double PowProduct::value() const {
  double v = 1.0;
  for (const auto& [b, e] : parts_) v *= std::pow(to_double(b), to_double(e));
  return v;
}

std::string PowProduct::to_string() const {
  if (parts_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, e] : parts_) {
    if (!first) os << "*";
    first = false;
    if (e == 1)
      os << "(" << b.get_str() << ")";
    else
      os << "(" << b.get_str() << ")^(" << e.get_str() << ")";
  }
  return os.str();
}

LinExpr LinExpr::symbol(const std::string& name, long coeff) {
  LinExpr e;
  e.terms_.emplace_back(name, coeff);
  e.normalize();
  return e;
}

void LinExpr::normalize() {
  std::map<std::string, long> acc;
  for (const auto& [n, c] : terms_) acc[n] += c;
  terms_.clear();
  for (const auto& [n, c] : acc)
    if (c != 0) terms_.emplace_back(n, c);
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  constant_ += o.constant_;
  for (const auto& t : o.terms_) terms_.push_back(t);
  normalize();
  return *this;
}

LinExpr LinExpr::operator+(const LinExpr& o) const {
  LinExpr out = *this;
  out += o;
  return out;
}

LinExpr LinExpr::operator*(long k) const {
  LinExpr out;
  out.constant_ = constant_ * k;
  for (const auto& [n, c] : terms_) out.terms_.emplace_back(n, c * k);
  out.normalize();
  return out;
}

bool LinExpr::operator==(const LinExpr& o) const {
  return constant_ == o.constant_ && terms_ == o.terms_;
}

long LinExpr::evaluate(const std::vector<std::pair<std::string, long>>& binding) const {
  long v = constant_;
  for (const auto& [n, c] : terms_) {
    bool found = false;
    for (const auto& [bn, bv] : binding)
      if (bn == n) {
        v += c * bv;
        found = true;
        break;
      }
    if (!found) throw std::domain_error("unbound multiplicity symbol: " + n);
  }
  return v;
}

bool LinExpr::depends_on(const std::string& name) const {
  for (const auto& [n, c] : terms_)
    if (n == name) return true;
  return false;
}

LinExpr parse_lin_expr(const std::string& text) {
  LinExpr out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  bool first = true;
  while (i < n) {
    long sign = 1;
    skip_ws();
    if (!first || text[i] == '+' || text[i] == '-') {
      if (i >= n || (text[i] != '+' && text[i] != '-'))
        throw std::domain_error("expected +/- in expression: " + text);
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    }
    first = false;
    long coeff = 1;
    bool have_digits = false;
    long digits = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits = digits * 10 + (text[i] - '0');
      have_digits = true;
      ++i;
    }
    if (have_digits) coeff = digits;
    skip_ws();
    std::string name;
    while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
      name += text[i];
      ++i;
    }
    if (name.empty()) {
      if (!have_digits) throw std::domain_error("cannot parse expression: " + text);
      out += LinExpr(sign * coeff);
    } else {
      out += LinExpr::symbol(name, sign * coeff);
    }
    skip_ws();
  }
  return out;
}

std::string LinExpr::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : terms_) {
    if (c < 0) {
      os << (first ? "-" : " - ");
      if (c != -1) os << -c;
    } else if (!first) {
      os << " + ";
      if (c != 1) os << c;
    } else if (c != 1) {
      os << c;
    }
    os << n;
    first = false;
  }
  if (constant_ != 0 || first) {
    if (!first) os << (constant_ < 0 ? " - " : " + ") << std::abs(constant_);
    else os << constant_;
  }
  return os.str();
}

}  // namespace conecert
