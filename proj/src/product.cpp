#include "conecert/product.hpp"

#include <algorithm>
#include <cmath>

#include "conecert/errors.hpp"
#include "conecert/report.hpp"

namespace conecert {

double profile_d(long k1, long k2, double x1) {
  const double k = static_cast<double>(k1 + k2);
  const double a1s = k1 / k, a2s = k2 / k;
  const double x2 = (1.0 - a1s * x1) / a2s;
  if (x1 <= 0 || x2 <= 0) return 0.0;
  double logd = std::log(a1s * std::pow(x1, 4) + a2s * std::pow(x2, 4)) +
                2.0 * k1 * std::log(x1) + 2.0 * k2 * std::log(x2);
  return std::exp(logd);
}

double profile_derivative_factor(long k1, long k2, double x1, double x2) {
  const double d = x1 - x2;
  return (k1 - 3.0) * std::pow(x1, 4) + (k2 - 3.0) * std::pow(x2, 4) + 3.0 * std::pow(d, 4) +
         10.0 * x1 * x2 * d * d;
}

double profile_derivative(long k1, long k2, double x1) {
  const double k = static_cast<double>(k1 + k2);
  const double a1s = k1 / k, a2s = k2 / k;
  const double x2 = (1.0 - a1s * x1) / a2s;
  double prefix = -2.0 * a1s * std::pow(x1, 2 * k1 - 1) * std::pow(x2, 2 * k2 - 1);
  return prefix * (x1 - x2) * profile_derivative_factor(k1, k2, x1, x2);
}

ProfileResult profile_check(long k1, long k2, long samples) {
  if (k1 < 1 || k2 < 1) throw Error(Errc::bad_input, "profile_check needs k1, k2 >= 1");
  ProfileResult res;
  res.k1 = k1;
  res.k2 = k2;
  res.samples = samples;
  const double k = static_cast<double>(k1 + k2);
  const double a1s = k1 / k, a2s = k2 / k;
  const double hi = 1.0 / a1s;

  // the sign of dD/dX1 is carried by -(X1-X2) * derivative factor
  auto deriv_sign_carrier = [&](double x1) {
    double x2 = (1.0 - a1s * x1) / a2s;
    return -(x1 - x2) * profile_derivative_factor(k1, k2, x1, x2);
  };

  double best = 0.0, best_x1 = 0.0;
  auto consider = [&](double x1) {
    if (x1 <= 0 || x1 >= hi) return;
    double d = profile_d(k1, k2, x1);
    if (d > best) {
      best = d;
      best_x1 = x1;
    }
  };

  double prev_x = hi / (samples + 1.0);
  double prev_sign = deriv_sign_carrier(prev_x);
  consider(prev_x);
  for (long i = 2; i <= samples; ++i) {
    double x = hi * static_cast<double>(i) / (samples + 1.0);
    double s = deriv_sign_carrier(x);
    consider(x);
    if ((prev_sign > 0 && s < 0) || (prev_sign < 0 && s > 0) || s == 0.0) {
      // bracketed critical point: bisect the derivative carrier
      double lo = prev_x, up = x, slo = prev_sign;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + up);
        double sm = deriv_sign_carrier(mid);
        if (sm == 0.0) {
          lo = up = mid;
          break;
        }
        if ((slo > 0) == (sm > 0)) {
          lo = mid;
          slo = sm;
        } else {
          up = mid;
        }
      }
      consider(0.5 * (lo + up));
    }
    prev_x = x;
    prev_sign = s;
  }
  consider(1.0);  // the diagonal point X1 = X2 = 1 is always a candidate

  res.max_d = best;
  res.arg_x1 = best_x1;
  res.arg_x2 = (1.0 - a1s * best_x1) / a2s;
  // the top is quartically flat at the diagonal, so its double-precision
  // location is only determined to ~(eps)^(1/4)
  res.max_is_one_at_diagonal =
      std::abs(best - 1.0) <= 1e-9 && std::abs(best_x1 - 1.0) <= 1e-3;
  return res;
}

double RetractionNode::log_j(const std::vector<double>& x) const {
  return 0.5 * std::log(grad_norm_squared(x)) + log_j2(x);
}

AtomicNode::AtomicNode(Ansatz ansatz, std::vector<long> mults)
    : ansatz_(std::move(ansatz)), jac_(assemble_jacobian(ansatz_)), mults_(std::move(mults)),
      f_(ansatz_.f_expr()) {
  if (mults_.size() != jac_.class_mults.size())
    throw Error(Errc::bad_input, "multiplicity count mismatch");
  // orbit dimension under the concrete multiplicities
  k_ = 0;
  for (const auto& rf : jac_.root_factors) k_ += mults_[static_cast<std::size_t>(rf.class_id)];
}

double AtomicNode::f(const std::vector<double>& x) const { return f_.evaluate(x); }

double AtomicNode::grad_norm_squared(const std::vector<double>& x) const {
  return std::exp(jac_.j1_squared.log_evaluate(x));
}

double AtomicNode::log_j2(const std::vector<double>& x) const {
  double s = 0;
  for (std::size_t c = 0; c < jac_.class_factors.size(); ++c)
    if (!jac_.class_factors[c].is_one() && mults_[c] != 0)
      s += static_cast<double>(mults_[c]) * jac_.class_factors[c].log_evaluate(x);
  return s;
}

std::vector<double> AtomicNode::base_chamber() const { return ansatz_.base.chamber_unit(); }

ProductNode::ProductNode(std::shared_ptr<RetractionNode> left, std::shared_ptr<RetractionNode> right)
    : left_(std::move(left)), right_(std::move(right)) {
  k1_ = left_->orbit_dim();
  k2_ = right_->orbit_dim();
  nvars_ = left_->nvars() + right_->nvars();
  double k = static_cast<double>(k1_ + k2_);
  a1_ = std::sqrt(k1_ / k);
  a2_ = std::sqrt(k2_ / k);
}

std::pair<std::vector<double>, std::vector<double>> ProductNode::split(const std::vector<double>& x) const {
  std::vector<double> x1(x.begin(), x.begin() + static_cast<long>(left_->nvars()));
  std::vector<double> x2(x.begin() + static_cast<long>(left_->nvars()), x.end());
  return {std::move(x1), std::move(x2)};
}

double ProductNode::f(const std::vector<double>& x) const {
  auto [xl, xr] = split(x);
  double f1 = left_->f(xl), f2 = right_->f(xr);
  double s = a2_ * a2_ * a2_ * f1 + a1_ * a1_ * a1_ * f2;
  if (s == 0) return 0;
  return f1 * f2 / s;
}

double ProductNode::grad_norm_squared(const std::vector<double>& x) const {
  auto [xl, xr] = split(x);
  double f1 = left_->f(xl), f2 = right_->f(xr);
  double g1 = left_->grad_norm_squared(xl), g2 = right_->grad_norm_squared(xr);
  double s = a2_ * a2_ * a2_ * f1 + a1_ * a1_ * a1_ * f2;
  double num = std::pow(a1_, 6) * std::pow(f2, 4) * g1 + std::pow(a2_, 6) * std::pow(f1, 4) * g2;
  return num / std::pow(s, 4);
}

double ProductNode::log_j2(const std::vector<double>& x) const {
  auto [xl, xr] = split(x);
  double f1 = left_->f(xl), f2 = right_->f(xr);
  double fv = f(x);
  return left_->log_j2(xl) + right_->log_j2(xr) + k1_ * std::log(a1_ * fv / f1) +
         k2_ * std::log(a2_ * fv / f2);
}

std::vector<double> ProductNode::base_chamber() const {
  std::vector<double> out = left_->base_chamber();
  for (auto& v : out) v *= a1_;
  std::vector<double> r = right_->base_chamber();
  for (double v : r) out.push_back(v * a2_);
  return out;
}

std::shared_ptr<RetractionNode> build_retraction_node(const Report& report) {
  if (report.kind == "product") {
    if (!report.left || !report.right)
      throw Error(Errc::bad_input, "product report misses factor reports");
    return std::make_shared<ProductNode>(build_retraction_node(*report.left),
                                         build_retraction_node(*report.right));
  }
  if (!report.ansatz) throw Error(Errc::bad_input, "atomic report misses its ansatz");
  if (!report.binding && !report.orbit_dim.is_constant())
    throw Error(Errc::bad_input, "report has symbolic multiplicities; bind them before composing");
  JacobianExpr jac = assemble_jacobian(*report.ansatz);
  MultBinding binding = report.binding ? *report.binding : MultBinding{};
  return std::make_shared<AtomicNode>(*report.ansatz, bind_multiplicities(jac, binding));
}

Report compose(const Report& left, const Report& right) {
  for (const Report* r : {&left, &right}) {
    if (r->verdict != Verdict::certified && r->verdict != Verdict::numerically_supported)
      throw Error(Errc::hypothesis_missing, "factor report is not certified");
    if (!r->j2_leq_1)
      throw Error(Errc::hypothesis_missing,
                  "factor report lacks the per-factor J2 <= 1 record required for composition");
  }
  auto ln = build_retraction_node(left);
  auto rn = build_retraction_node(right);
  long k1 = ln->orbit_dim(), k2 = rn->orbit_dim();
  if (k1 < 3 || k2 < 3)
    throw Error(Errc::dim_too_small, "composition needs both orbit dimensions >= 3, got " +
                                         std::to_string(k1) + " and " + std::to_string(k2));

  Report out;
  out.kind = "product";
  out.left = std::make_shared<Report>(left);
  out.right = std::make_shared<Report>(right);
  out.k1 = k1;
  out.k2 = k2;
  out.orbit_dim = LinExpr(k1 + k2);
  out.orbit_dim_value = k1 + k2;
  if (left.sphere_dim_value && right.sphere_dim_value) {
    long sphere = (*left.sphere_dim_value + 1) + (*right.sphere_dim_value + 1) - 1;
    out.sphere_dim = LinExpr(sphere);
    out.sphere_dim_value = sphere;
  }
  out.profile = profile_check(k1, k2);
  out.j2_leq_1 = true;  // carried by the composition theorem
  if (!out.profile->max_is_one_at_diagonal) {
    out.verdict = Verdict::inconclusive;
    out.notes.push_back("profile check did not confirm max D = 1 at the diagonal");
    return out;
  }
  out.verdict = (left.verdict == Verdict::certified && right.verdict == Verdict::certified)
                    ? Verdict::certified
                    : Verdict::numerically_supported;
  return out;
}

}  // namespace conecert
