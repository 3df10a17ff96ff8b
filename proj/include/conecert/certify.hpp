#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conecert/ansatz.hpp"
#include "conecert/monomial_expr.hpp"

namespace conecert {

enum class Verdict { certified, numerically_supported, inconclusive, failed };
const char* verdict_name(Verdict v);

/// Threshold condition: sum of the multiplicities of the listed groups >= t.
struct ThresholdSpec {
  std::vector<std::string> variable_groups;  // multiplicity symbols (group keys)
  int t = 1;
  std::string to_string() const;
};

/// One polynomial inequality that was (or failed to be) certified.
struct CertificateRecord {
  std::string name;
  Int power{1};                      // exponent the inequality was raised to
  bool certified = false;
  bool direct = false;               // no subdivision needed
  std::vector<std::string> splits;   // subdivision substitutions used
  std::size_t diff_terms = 0;
  std::string diff_digest;           // integerized difference digest
  std::string min_coeff;
  std::string max_coeff;
  Poly difference;                   // raw difference rhs - lhs
};

/// Multiplicity groups: classes sharing one multiplicity expression are
/// bounded together (their per-root factors multiply into one G).
struct GroupFactor {
  std::string key;              // canonical expression string, e.g. "m2"
  LinExpr multiplicity;
  std::vector<int> class_ids;
  MonomialExpr g;
};

std::vector<GroupFactor> multiplicity_groups(const JacobianExpr& j);

struct SymbolicResult {
  bool certified = false;
  bool j2_leq_1 = false;      // every group factor certified <= 1
  bool stage_two_ran = false;
  ThresholdSpec threshold;
  std::vector<CertificateRecord> records;
  std::string failure;        // first uncertified inequality, if any
};

/// Exact two-stage threshold certificate:
///   (i)  G_g <= 1 for every multiplicity group,
///   (ii) J1 * (one factor of each group outside V) * prod_{g in M} G_g <= 1
///        for every size-t multiset M from the variable groups V.
/// Success proves J <= 1 for every multiplicity assignment with all class
/// multiplicities >= 1 and sum over the variable groups >= t.  Stage (i)
/// alone gives the J2 <= 1 record the composition theorem consumes; pass
/// stage_two = false to stop there.
SymbolicResult certify_symbolic(const JacobianExpr& j, const ThresholdSpec& spec,
                                bool stage_two = true);

/// Certify p >= 0 on the closed positive orthant: coefficient check first,
/// then exact subdivisions along x_i >= x_j hyperplanes up to `depth`.
/// Returns the splits used via `splits` when successful.
bool certify_orthant_nonneg(const Poly& p, int depth, std::vector<std::string>* splits);

/// Anything that can evaluate log J on chamber coordinates.
class JacobianEvaluator {
 public:
  virtual ~JacobianEvaluator() = default;
  virtual std::size_t nvars() const = 0;
  virtual double log_j(const std::vector<double>& x) const = 0;
  virtual std::vector<double> log_j_gradient(const std::vector<double>& x) const;
  virtual long double log_j_precise(const std::vector<double>& x) const;
};

class ConcreteJacobian : public JacobianEvaluator {
 public:
  ConcreteJacobian(const JacobianExpr& j, std::vector<long> mults)
      : j_(j), mults_(std::move(mults)) {}
  std::size_t nvars() const override { return j_.nvars; }
  double log_j(const std::vector<double>& x) const override;
  std::vector<double> log_j_gradient(const std::vector<double>& x) const override;
  long double log_j_precise(const std::vector<double>& x) const override;

 private:
  const JacobianExpr& j_;
  std::vector<long> mults_;
};

struct NumericOptions {
  int grid_n = 400;
  int refine_iters = 200;
  int multistarts = 32;
  double barrier = 1e-6;
  double tolerance = 1e-9;
  double simplex_sum = 1.0;
};

struct NumericScan {
  double max_j = 0.0;
  std::vector<double> argmax;
  bool failed = false;            // max_j > 1 + tolerance
  std::size_t points_evaluated = 0;
  int grid_n = 0;
  double barrier = 0.0;
};

/// Scan J over the simplex slice (sum x = simplex_sum, x >= barrier), then
/// refine from the best grid cells by projected gradient ascent on log J.
/// Parallelized over grid chunks; CONE_CERT_THREADS caps the thread count.
NumericScan certify_numeric(const JacobianEvaluator& eval, const NumericOptions& opts = {});

/// Satisfaction of a threshold by a concrete or one-parameter family of
/// multiplicities: holds / fails / holds for symbol >= bound.
struct ThresholdSatisfaction {
  bool decidable = false;
  bool holds = false;
  std::string condition;  // e.g. "n >= 2" when conditional
};

ThresholdSatisfaction threshold_satisfied(const ThresholdSpec& spec,
                                          const std::vector<GroupFactor>& groups,
                                          const std::optional<MultBinding>& binding);

}  // namespace conecert
