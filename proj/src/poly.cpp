#include "conecert/poly.hpp"

#include <algorithm>
#include <sstream>

namespace conecert {

std::size_t Poly::term_limit = 10000000;

Poly Poly::constant(std::size_t nvars, const Rat& c) {
  Poly p(nvars);
  p.add_term(Expvec(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  Poly p(nvars);
  Expvec e(nvars, 0);
  e[i] = 1;
  p.add_term(e, Rat(1));
  return p;
}

Poly Poly::linear(const std::vector<Rat>& coeffs) {
  Poly p(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Expvec e(coeffs.size(), 0);
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

void Poly::check_limit() const {
  if (terms_.size() > term_limit)
    throw Error(Errc::term_limit,
                "polynomial exceeded the term limit of " + std::to_string(term_limit));
}

void Poly::check_compatible(const Poly& o) const {
  if (nvars_ != o.nvars_)
    throw Error(Errc::bad_input, "polynomial variable counts differ");
}

void Poly::add_term(const Expvec& e, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    check_limit();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat Poly::coeff(const Expvec& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

Poly Poly::operator+(const Poly& o) const {
  check_compatible(o);
  Poly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  check_compatible(o);
  Poly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

Poly Poly::operator-() const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  check_compatible(o);
  Poly out(nvars_);
  Expvec e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly Poly::operator*(const Rat& s) const {
  Poly out(nvars_);
  if (s == 0) return out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
  return out;
}

Poly Poly::pow(unsigned k) const {
  Poly out = Poly::constant(nvars_, Rat(1));
  Poly base = *this;
  while (k) {
    if (k & 1u) out = out * base;
    if (k >>= 1) base = base * base;
  }
  return out;
}

long Poly::total_degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) {
    long s = 0;
    for (unsigned x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

long Poly::homogeneous_degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) {
    long s = 0;
    for (unsigned x : e) s += x;
    if (d == -1) d = s;
    else if (d != s) return -1;
  }
  return d;
}

Rat Poly::evaluate(const std::vector<Rat>& x) const {
  Rat out(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) t *= pow_rat(x[i], static_cast<long>(e[i]));
    out += t;
  }
  return out;
}

double Poly::evaluate(const std::vector<double>& x) const {
  double out = 0;
  for (const auto& [e, c] : terms_) {
    double t = to_double(c);
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    out += t;
  }
  return out;
}

std::vector<double> Poly::gradient(const std::vector<double>& x) const {
  std::vector<double> g(nvars_, 0.0);
  for (const auto& [e, c] : terms_) {
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (!e[v]) continue;
      double t = to_double(c) * e[v];
      for (std::size_t i = 0; i < nvars_; ++i) {
        unsigned k = e[i] - (i == v ? 1u : 0u);
        for (unsigned j = 0; j < k; ++j) t *= x[i];
      }
      g[v] += t;
    }
  }
  return g;
}

Poly Poly::substitute(std::size_t var, const Poly& replacement) const {
  check_compatible(replacement);
  // cache powers of the replacement
  std::vector<Poly> powers = {Poly::constant(nvars_, Rat(1))};
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    while (powers.size() <= e[var]) powers.push_back(powers.back() * replacement);
    Expvec rest = e;
    rest[var] = 0;
    Poly term(nvars_);
    term.add_term(rest, c);
    out = out + term * powers[e[var]];
  }
  return out;
}

bool Poly::all_coefficients_nonnegative() const {
  for (const auto& [e, c] : terms_)
    if (c < 0) return false;
  return true;
}

Rat Poly::min_coefficient() const {
  Rat m(0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || c < m) m = c;
    first = false;
  }
  return m;
}

Rat Poly::max_coefficient() const {
  Rat m(0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first || c > m) m = c;
    first = false;
  }
  return m;
}

Int Poly::coefficient_denominator_lcm() const {
  Int l(1);
  for (const auto& [e, c] : terms_) l = lcm_int(l, Int(c.get_den()));
  return l;
}

Poly Poly::integerized(Int* scale_out) const {
  Int l = coefficient_denominator_lcm();
  if (scale_out) *scale_out = l;
  return *this * Rat(l);
}

std::string Poly::to_string(const std::vector<std::string>& var_names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest-degree-first reading order
  std::vector<const std::pair<const Expvec, Rat>*> items;
  for (const auto& t : terms_) items.push_back(&t);
  std::reverse(items.begin(), items.end());
  for (const auto* t : items) {
    const auto& [e, c] = *t;
    Rat a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool printed = false;
    if (a != 1) {
      os << a.get_str();
      printed = true;
    }
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (printed) os << "*";
      if (var_names.size() == nvars_) os << var_names[i];
      else os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      printed = true;
    }
    if (!printed) os << a.get_str();
    first = false;
  }
  return os.str();
}

std::string Poly::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [e, c] : terms_) {
    for (unsigned x : e) mix(std::to_string(x) + ",");
    mix(c.get_str() + ";");
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace conecert
