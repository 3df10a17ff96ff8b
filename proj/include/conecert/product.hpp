#pragma once

#include <memory>
#include <vector>

#include "conecert/certify.hpp"

namespace conecert {

struct Report;

/// Outcome of maximizing D(X1,X2) = (a1^2 X1^4 + a2^2 X2^4) X1^{2k1} X2^{2k2}
/// / (a1^2 X1 + a2^2 X2)^{2k+4} on the segment a1^2 X1 + a2^2 X2 = 1, the
/// bound that controls the Jacobian of a composed retraction.
struct ProfileResult {
  long k1 = 0, k2 = 0;
  double max_d = 0.0;
  double arg_x1 = 0.0, arg_x2 = 0.0;
  long samples = 0;
  bool max_is_one_at_diagonal = false;  // max = 1 at X1 = X2 = 1 (to 1e-9)
};

/// 1-D scan of D on the segment plus bisection on the sign of the exact
/// derivative factor; for k1,k2 >= 3 the maximum is 1 at X1 = X2 = 1.
ProfileResult profile_check(long k1, long k2, long samples = 1000000);

/// D restricted to the segment, as a function of X1 in (0, k/k1).
double profile_d(long k1, long k2, double x1);

/// The bracket factor of dD/dX1 on the segment:
/// (k1-3) X1^4 + (k2-3) X2^4 + 3 (X1-X2)^4 + 10 X1 X2 (X1-X2)^2.
double profile_derivative_factor(long k1, long k2, double x1, double x2);

/// dD/dX1 on the segment in closed form:
/// -2 a1^2 X1^{2k1-1} X2^{2k2-1} (X1-X2) * profile_derivative_factor.
double profile_derivative(long k1, long k2, double x1);

/// Evaluation tree for a (possibly iterated) composed retraction.  Each node
/// provides f, ||grad f||^2 and the product factor of the Jacobian; a parent
/// combines children through f = f1 f2 / (a2^3 f1 + a1^3 f2).
class RetractionNode {
 public:
  virtual ~RetractionNode() = default;
  virtual std::size_t nvars() const = 0;
  virtual long orbit_dim() const = 0;
  virtual double f(const std::vector<double>& x) const = 0;
  virtual double grad_norm_squared(const std::vector<double>& x) const = 0;
  virtual double log_j2(const std::vector<double>& x) const = 0;
  double log_j(const std::vector<double>& x) const;
  /// Chamber coordinates of the node's unit base point.
  virtual std::vector<double> base_chamber() const = 0;
};

class AtomicNode : public RetractionNode {
 public:
  AtomicNode(Ansatz ansatz, std::vector<long> mults);
  std::size_t nvars() const override { return jac_.nvars; }
  long orbit_dim() const override { return k_; }
  double f(const std::vector<double>& x) const override;
  double grad_norm_squared(const std::vector<double>& x) const override;
  double log_j2(const std::vector<double>& x) const override;
  std::vector<double> base_chamber() const override;
  const Ansatz& ansatz() const { return ansatz_; }
  const JacobianExpr& jacobian() const { return jac_; }
  const std::vector<long>& mults() const { return mults_; }

 private:
  Ansatz ansatz_;
  JacobianExpr jac_;
  std::vector<long> mults_;
  MonomialExpr f_;
  long k_ = 0;
};

class ProductNode : public RetractionNode {
 public:
  ProductNode(std::shared_ptr<RetractionNode> left, std::shared_ptr<RetractionNode> right);
  std::size_t nvars() const override { return nvars_; }
  long orbit_dim() const override { return k1_ + k2_; }
  double f(const std::vector<double>& x) const override;
  double grad_norm_squared(const std::vector<double>& x) const override;
  double log_j2(const std::vector<double>& x) const override;
  std::vector<double> base_chamber() const override;
  long k1() const { return k1_; }
  long k2() const { return k2_; }

 private:
  std::shared_ptr<RetractionNode> left_, right_;
  std::size_t nvars_ = 0;
  long k1_ = 0, k2_ = 0;
  double a1_, a2_;  // sqrt(k_i / k)
  std::pair<std::vector<double>, std::vector<double>> split(const std::vector<double>& x) const;
};

/// Adapter so composed retractions run through certify_numeric.
class NodeJacobian : public JacobianEvaluator {
 public:
  explicit NodeJacobian(const RetractionNode& node) : node_(node) {}
  std::size_t nvars() const override { return node_.nvars(); }
  double log_j(const std::vector<double>& x) const override { return node_.log_j(x); }

 private:
  const RetractionNode& node_;
};

/// Compose two certified reports into a product report.  Preconditions per
/// the composition theorem: both inputs carry the per-factor J2 <= 1 record
/// (HYPOTHESIS_MISSING otherwise) and orbit dimensions >= 3 (DIM_TOO_SMALL).
Report compose(const Report& left, const Report& right);

/// Rebuild the evaluation tree embedded in a report (atomic or product).
std::shared_ptr<RetractionNode> build_retraction_node(const Report& report);

}  // namespace conecert
