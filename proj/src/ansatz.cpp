#include "conecert/ansatz.hpp"

#include <cmath>
#include <sstream>

#include "conecert/errors.hpp"

namespace conecert {

std::vector<double> ExactBasePoint::chamber_unit() const {
  double inv = 1.0 / std::sqrt(to_double(s));
  std::vector<double> out;
  out.reserve(w_chamber.size());
  for (const auto& v : w_chamber) out.push_back(to_double(v) * inv);
  return out;
}

std::vector<double> ExactBasePoint::ambient_unit() const {
  double inv = 1.0 / std::sqrt(to_double(s));
  std::vector<double> out;
  out.reserve(w_ambient.size());
  for (const auto& v : w_ambient) out.push_back(to_double(v) * inv);
  return out;
}

ExactBasePoint exact_point_from_chamber(const RootSystem& rs, const DualBasis& db, unsigned delta_mask,
                                        const RatVec& chamber) {
  if (chamber.size() != static_cast<std::size_t>(rs.rank))
    throw Error(Errc::bad_input, "chamber coordinate count mismatch");
  ExactBasePoint p;
  p.delta_mask = delta_mask;
  p.w_chamber = chamber;
  p.w_ambient.assign(rs.simple_roots[0].size(), Rat(0));
  for (int i = 0; i < rs.rank; ++i) {
    const Rat& xi = chamber[static_cast<std::size_t>(i)];
    const bool on_face = (delta_mask >> i) & 1u;
    if (on_face && xi <= 0)
      throw Error(Errc::bad_input, "base point coordinate x_a" + std::to_string(i + 1) + " must be positive");
    if (!on_face && xi != 0)
      throw Error(Errc::bad_input, "base point has support off its face");
    if (xi != 0)
      p.w_ambient = vec_add(p.w_ambient, vec_scale(xi, db.vectors[static_cast<std::size_t>(i)]));
  }
  p.s = rs.inner_ambient(p.w_ambient, p.w_ambient);
  return p;
}

MonomialExpr Ansatz::f_expr() const {
  MonomialExpr f(static_cast<std::size_t>(rs.rank));
  f.mul_constant(c);
  for (const auto& [form, e] : forms) f.mul_form(form, e);
  return f;
}

Ansatz validate_ansatz(const RootSystem& rs, unsigned delta0, const ExactBasePoint& base,
                       const std::vector<std::pair<LinearForm, Rat>>& forms) {
  if (forms.empty()) throw Error(Errc::bad_input, "ansatz needs at least one factor");
  if (delta0 == 0) throw Error(Errc::empty_delta, "ansatz needs a nonempty base face");
  if (base.delta_mask != delta0) throw Error(Errc::bad_input, "base point face differs from delta0");

  Rat esum(0);
  for (const auto& [form, e] : forms) {
    if (e <= 0) throw Error(Errc::bad_input, "ansatz exponents must be positive");
    esum += e;
  }
  if (esum != 1)
    throw Error(Errc::exponent_sum, "exponents sum to " + esum.get_str() + ", expected 1");

  for (const auto& [form, e] : forms)
    for (const auto& coeff : form.coeffs)
      if (coeff < 0)
        throw Error(Errc::negative_form, "factor " + form.to_string() + " has a negative chamber coefficient");

  // f must vanish identically on every face whose closure misses the base
  // face: some factor's support has to be disjoint from the face.
  const unsigned nfaces = 1u << rs.rank;
  for (unsigned delta = 0; delta < nfaces; ++delta) {
    if ((delta & delta0) == delta0) continue;  // delta0 subset of delta
    bool vanishes = false;
    for (const auto& [form, e] : forms)
      if (form.vanishes_on_face(delta)) {
        vanishes = true;
        break;
      }
    if (!vanishes)
      throw Error(Errc::face_leak,
                  "no factor vanishes on the face " + delta_label(delta, rs.rank));
  }

  Ansatz a;
  a.rs = rs;
  a.db = dual_basis(rs);
  a.delta0 = delta0;
  a.base = base;
  a.forms = forms;

  // c = prod <l_i, A>^{-e_i}; with A = w/sqrt(s) this is
  // s^{1/2} * prod <l_i, w>^{-e_i} (using sum e_i = 1).
  PowProduct c;
  c.mul(base.s, rat(1, 2));
  for (const auto& [form, e] : forms) {
    Rat pairing = form.evaluate(base.w_chamber);
    if (pairing <= 0)
      throw Error(Errc::zero_at_base,
                  "factor " + form.to_string() + " vanishes at the base point; f(A) would be 0");
    c.mul(pairing, -e);
  }
  a.c = c;
  return a;
}

Poly gradient_quadratic_poly(const Ansatz& a) {
  const std::size_t nv = static_cast<std::size_t>(a.rs.rank);
  const std::size_t m = a.forms.size();
  // pairwise inner products through the simple-root Gram matrix
  std::vector<std::vector<Rat>> k(m, std::vector<Rat>(m, Rat(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      k[i][j] = inner(a.forms[i].first.coeffs, a.forms[j].first.coeffs, a.rs.gram);

  std::vector<Poly> lin;
  lin.reserve(m);
  for (const auto& [form, e] : a.forms) lin.push_back(Poly::linear(form.coeffs));

  Poly q(nv);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Poly term = Poly::constant(nv, a.forms[i].second * a.forms[j].second * k[i][j]);
      for (std::size_t t = 0; t < m; ++t) {
        unsigned p = (t == i ? 0u : 1u) + (t == j ? 0u : 1u);
        if (p) term = term * lin[t].pow(p);
      }
      q = q + term;
    }
  }
  return q;
}

MonomialExpr gradient_norm_squared(const Ansatz& a) {
  MonomialExpr out(static_cast<std::size_t>(a.rs.rank));
  out.mul_constant(a.c.pow(Rat(2)));
  for (const auto& [form, e] : a.forms) out.mul_form(form, Rat(2) * e - 2);
  out.mul_poly(gradient_quadratic_poly(a), Rat(1));
  return out;
}

JacobianExpr assemble_jacobian(const Ansatz& a) {
  JacobianExpr j;
  j.nvars = static_cast<std::size_t>(a.rs.rank);
  j.j1_squared = gradient_norm_squared(a);

  MonomialExpr f = a.f_expr();
  j.class_factors.assign(a.rs.classes.size(), MonomialExpr(j.nvars));
  for (const auto& cls : a.rs.classes) {
    j.class_names.push_back(cls.name);
    j.class_mults.push_back(cls.multiplicity);
  }

  for (const auto* root : contributing_roots(a.rs, a.delta0)) {
    // g = <l, A> f / <l, x>
    Rat pairing_w = root->form().evaluate(a.base.w_chamber);
    MonomialExpr g = f;
    g.mul_constant(pairing_w, Rat(1));
    g.mul_constant(a.base.s, rat(-1, 2));
    g.mul_form(root->form(), Rat(-1));
    j.class_factors[static_cast<std::size_t>(root->class_id)].mul(g);
    j.root_factors.push_back({root->simple_coeffs, root->label(), root->class_id, std::move(g)});
  }
  return j;
}

double JacobianExpr::eval_j(const std::vector<double>& x, const std::vector<long>& concrete_mults) const {
  double lj = 0.5 * j1_squared.log_evaluate(x);
  for (std::size_t c = 0; c < class_factors.size(); ++c)
    if (!class_factors[c].is_one())
      lj += static_cast<double>(concrete_mults[c]) * class_factors[c].log_evaluate(x);
  return std::exp(lj);
}

std::vector<long> bind_multiplicities(const JacobianExpr& j,
                                      const std::vector<std::pair<std::string, long>>& binding) {
  std::vector<long> out;
  out.reserve(j.class_mults.size());
  for (const auto& m : j.class_mults) {
    long v = m.evaluate(binding);
    if (v < 0) throw Error(Errc::bad_multiplicity, "negative multiplicity after binding");
    out.push_back(v);
  }
  return out;
}

}  // namespace conecert
