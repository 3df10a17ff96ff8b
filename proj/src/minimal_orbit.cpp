#include "conecert/minimal_orbit.hpp"

#include <cmath>
#include <map>

#include "conecert/errors.hpp"

namespace conecert {

namespace {

std::vector<double> ambient_gram_apply(const RootSystem& rs, const std::vector<double>& v) {
  if (rs.ambient_gram.empty()) return v;
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      out[i] += to_double(rs.ambient_gram[i][j]) * v[j];
  return out;
}

double inner_d(const RootSystem& rs, const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> gb = ambient_gram_apply(rs, b);
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * gb[i];
  return s;
}

std::vector<double> ambient_of_chamber(const RootSystem& rs, const DualBasis& db,
                                       const std::vector<double>& chamber) {
  std::vector<double> out(rs.simple_roots[0].size(), 0.0);
  for (int i = 0; i < rs.rank; ++i) {
    if (chamber[static_cast<std::size_t>(i)] == 0) continue;
    for (std::size_t d = 0; d < out.size(); ++d)
      out[d] += chamber[static_cast<std::size_t>(i)] * to_double(db.vectors[static_cast<std::size_t>(i)][d]);
  }
  return out;
}

}  // namespace

std::vector<double> mean_curvature(const RootSystem& rs, unsigned delta_mask,
                                   const std::vector<double>& chamber, const MultBinding& binding) {
  std::vector<double> m(rs.simple_roots[0].size(), 0.0);
  for (const auto* root : contributing_roots(rs, delta_mask)) {
    double pairing = root->form().evaluate(chamber);
    if (pairing == 0.0)
      throw Error(Errc::divide_by_zero, "point lies on the wall of " + root->label());
    double mult = static_cast<double>(rs.cls(root->class_id).multiplicity.evaluate(binding));
    for (std::size_t d = 0; d < m.size(); ++d)
      m[d] -= mult * to_double(root->ambient[d]) / pairing;
  }
  return m;
}

std::vector<double> tangential_mean_curvature(const RootSystem& rs, unsigned delta_mask,
                                              const std::vector<double>& chamber,
                                              const MultBinding& binding) {
  DualBasis db = dual_basis(rs);
  std::vector<double> h = ambient_of_chamber(rs, db, chamber);
  std::vector<double> m = mean_curvature(rs, delta_mask, chamber, binding);
  double hh = inner_d(rs, h, h);
  double mh = inner_d(rs, m, h);
  for (std::size_t d = 0; d < m.size(); ++d) m[d] -= mh / hh * h[d];
  return m;
}

bool tangential_vanishes_exactly(const RootSystem& rs, unsigned delta_mask, const RatVec& w_chamber) {
  DualBasis db = dual_basis(rs);
  RatVec w(rs.simple_roots[0].size(), Rat(0));
  for (int i = 0; i < rs.rank; ++i)
    if (w_chamber[static_cast<std::size_t>(i)] != 0)
      w = vec_add(w, vec_scale(w_chamber[static_cast<std::size_t>(i)], db.vectors[static_cast<std::size_t>(i)]));
  Rat s = rs.inner_ambient(w, w);

  // Per multiplicity symbol (and per constant part), the rational vector
  // sum l/<l,w> over that symbol's contributing roots must be tangentially
  // zero on its own.
  std::map<std::string, RatVec> parts;
  auto part_of = [&](const std::string& key) -> RatVec& {
    auto it = parts.find(key);
    if (it == parts.end()) it = parts.emplace(key, RatVec(w.size(), Rat(0))).first;
    return it->second;
  };
  for (const auto* root : contributing_roots(rs, delta_mask)) {
    Rat pairing = root->form().evaluate(w_chamber);
    if (pairing == 0) throw Error(Errc::divide_by_zero, "point lies on the wall of " + root->label());
    const LinExpr& mult = rs.cls(root->class_id).multiplicity;
    if (mult.constant_part() != 0) {
      RatVec& v = part_of("");
      v = vec_add(v, vec_scale(Rat(mult.constant_part()) / pairing, root->ambient));
    }
    for (const auto& [sym, coeff] : mult.terms()) {
      RatVec& v = part_of(sym);
      v = vec_add(v, vec_scale(Rat(coeff) / pairing, root->ambient));
    }
  }
  for (const auto& [sym, v] : parts) {
    Rat vw = rs.inner_ambient(v, w);
    RatVec tang = vec_sub(v, vec_scale(vw / s, w));
    if (!vec_is_zero(tang)) return false;
  }
  return true;
}

namespace {

BasePoint finish_exact(const RootSystem& rs, ExactBasePoint&& exact, const MultBinding& binding) {
  BasePoint bp;
  bp.delta_mask = exact.delta_mask;
  bp.chamber = exact.chamber_unit();
  bp.ambient = exact.ambient_unit();
  bp.exact = std::move(exact);
  // residual reported numerically even for exact points
  MultBinding b = binding;
  bool have_binding = true;
  try {
    for (const auto& cls : rs.classes) cls.multiplicity.evaluate(b);
  } catch (const std::domain_error&) {
    have_binding = false;
  }
  if (have_binding) {
    auto tau = tangential_mean_curvature(rs, bp.delta_mask, bp.chamber, b);
    bp.residual = std::sqrt(std::abs(inner_d(rs, tau, tau)));
  }
  return bp;
}

}  // namespace

BasePoint minimal_point(const RootSystem& rs, unsigned delta_mask, const MinimalPointOptions& opts) {
  if (delta_mask == 0) throw Error(Errc::empty_delta, "minimal orbit needs a nonempty face");
  DualBasis db = dual_basis(rs);
  std::vector<int> members;
  for (int i = 0; i < rs.rank; ++i)
    if ((delta_mask >> i) & 1u) members.push_back(i);

  if (!opts.force_numeric) {
    if (members.size() == 1) {
      // the ray meets the sphere in one point; no solve needed
      RatVec chamber(static_cast<std::size_t>(rs.rank), Rat(0));
      chamber[static_cast<std::size_t>(members[0])] = 1;
      return finish_exact(rs, exact_point_from_chamber(rs, db, delta_mask, chamber), opts.binding);
    }
    // symmetric candidate sum of the face's dual vectors, checked exactly
    RatVec chamber(static_cast<std::size_t>(rs.rank), Rat(0));
    for (int i : members) chamber[static_cast<std::size_t>(i)] = 1;
    if (tangential_vanishes_exactly(rs, delta_mask, chamber))
      return finish_exact(rs, exact_point_from_chamber(rs, db, delta_mask, chamber), opts.binding);
  }

  // damped Gauss-Newton over log coordinates of the face
  const std::size_t k = members.size();
  std::vector<double> u(k, 0.0);
  if (!opts.initial_chamber.empty()) {
    for (std::size_t i = 0; i < k; ++i) {
      double x = opts.initial_chamber[static_cast<std::size_t>(members[i])];
      if (x <= 0) throw Error(Errc::wall_collision, "initial point must be interior to the face");
      u[i] = std::log(x);
    }
  }

  auto chamber_of = [&](const std::vector<double>& uu) {
    std::vector<double> x(static_cast<std::size_t>(rs.rank), 0.0);
    for (std::size_t i = 0; i < k; ++i) x[static_cast<std::size_t>(members[i])] = std::exp(uu[i]);
    // normalize to the unit sphere
    auto amb = ambient_of_chamber(rs, db, x);
    double n = std::sqrt(inner_d(rs, amb, amb));
    for (auto& v : x) v /= n;
    return x;
  };
  auto residual_of = [&](const std::vector<double>& uu) {
    return tangential_mean_curvature(rs, delta_mask, chamber_of(uu), opts.binding);
  };
  auto norm_of = [&](const std::vector<double>& r) { return std::sqrt(std::abs(inner_d(rs, r, r))); };

  std::vector<double> r = residual_of(u);
  double rn = norm_of(r);
  int iter = 0;
  for (; iter < opts.max_iterations && rn > opts.tolerance; ++iter) {
    // finite-difference Jacobian of the residual wrt u
    const double h = 1e-7;
    std::size_t dim = r.size();
    std::vector<std::vector<double>> jac(dim, std::vector<double>(k, 0.0));
    for (std::size_t c = 0; c < k; ++c) {
      auto up = u;
      up[c] += h;
      auto un = u;
      un[c] -= h;
      auto rp = residual_of(up);
      auto rm = residual_of(un);
      for (std::size_t d = 0; d < dim; ++d) jac[d][c] = (rp[d] - rm[d]) / (2 * h);
    }
    // normal equations with a touch of Levenberg damping
    std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
    std::vector<double> atr(k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t d = 0; d < dim; ++d) ata[a][b] += jac[d][a] * jac[d][b];
      for (std::size_t d = 0; d < dim; ++d) atr[a] += jac[d][a] * r[d];
      ata[a][a] += 1e-12;
    }
    // solve ata * delta = -atr (tiny dense system)
    std::vector<double> delta(k, 0.0);
    {
      auto m = ata;
      auto b = atr;
      for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t rr = col + 1; rr < k; ++rr)
          if (std::abs(m[rr][col]) > std::abs(m[piv][col])) piv = rr;
        std::swap(m[piv], m[col]);
        std::swap(b[piv], b[col]);
        if (m[col][col] == 0) throw Error(Errc::no_convergence, "degenerate Newton system");
        for (std::size_t rr = 0; rr < k; ++rr) {
          if (rr == col) continue;
          double f = m[rr][col] / m[col][col];
          for (std::size_t cc = col; cc < k; ++cc) m[rr][cc] -= f * m[col][cc];
          b[rr] -= f * b[col];
        }
      }
      for (std::size_t i = 0; i < k; ++i) delta[i] = -b[i] / m[i][i];
    }
    // damped step: halve on residual increase or wall collision
    double t = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      auto cand = u;
      for (std::size_t i = 0; i < k; ++i) cand[i] += t * delta[i];
      // recentre: the residual is scale-invariant in x, so u is defined
      // up to a common shift; keeping it centered avoids exp over/underflow
      double mean = 0;
      for (double v : cand) mean += v;
      mean /= static_cast<double>(k);
      for (auto& v : cand) v -= mean;
      bool in_face = true;
      for (double v : cand)
        if (!std::isfinite(v) || v < -300 || v > 300) in_face = false;
      if (in_face) {
        bool wall = false;
        std::vector<double> rc;
        try {
          rc = residual_of(cand);
        } catch (const Error& e) {
          if (e.code() != Errc::divide_by_zero) throw;
          wall = true;  // left the open face; damp further
        }
        if (!wall) {
          double rcn = norm_of(rc);
          if (rcn < rn) {
            u = cand;
            r = rc;
            rn = rcn;
            accepted = true;
            break;
          }
        }
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  if (rn > opts.tolerance)
    throw Error(Errc::no_convergence,
                "residual stagnated at " + std::to_string(rn) + " after " + std::to_string(iter) +
                    " iterations");

  BasePoint bp;
  bp.delta_mask = delta_mask;
  bp.chamber = chamber_of(u);
  bp.ambient = ambient_of_chamber(rs, db, bp.chamber);
  bp.residual = rn;
  bp.iterations = iter;
  return bp;
}

}  // namespace conecert
