#include "conecert/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "conecert/errors.hpp"

namespace conecert {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified: return "CERTIFIED";
    case Verdict::numerically_supported: return "NUMERICALLY_SUPPORTED";
    case Verdict::inconclusive: return "INCONCLUSIVE";
    case Verdict::failed: return "FAILED";
  }
  return "?";
}

std::string ThresholdSpec::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < variable_groups.size(); ++i) {
    if (i) os << "+";
    os << variable_groups[i];
  }
  os << " >= " << t;
  return os.str();
}

std::vector<GroupFactor> multiplicity_groups(const JacobianExpr& j) {
  std::vector<bool> contributes(j.class_factors.size(), false);
  for (const auto& rf : j.root_factors) contributes[static_cast<std::size_t>(rf.class_id)] = true;
  std::vector<GroupFactor> groups;
  for (std::size_t c = 0; c < j.class_factors.size(); ++c) {
    if (!contributes[c]) continue;
    // classes tied to one multiplicity symbol certify as one factor;
    // anything else (concrete or composite) stays per class
    const LinExpr& mult = j.class_mults[c];
    const bool pure_symbol = mult.constant_part() == 0 && mult.terms().size() == 1 &&
                             mult.terms()[0].second == 1;
    std::string key = pure_symbol ? mult.terms()[0].first : j.class_names[c];
    GroupFactor* g = nullptr;
    for (auto& existing : groups)
      if (existing.key == key) {
        g = &existing;
        break;
      }
    if (!g) {
      groups.push_back({key, j.class_mults[c], {}, MonomialExpr(j.nvars)});
      g = &groups.back();
    }
    g->class_ids.push_back(static_cast<int>(c));
    g->g.mul(j.class_factors[c]);
  }
  return groups;
}

bool certify_orthant_nonneg(const Poly& p, int depth, std::vector<std::string>* splits) {
  if (p.all_coefficients_nonnegative()) return true;
  if (depth <= 0) return false;
  const std::size_t n = p.nvars();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t jv = i + 1; jv < n; ++jv) {
      Poly sum = Poly::variable(n, i) + Poly::variable(n, jv);
      // half x_i >= x_j: slot i becomes the difference; and symmetrically
      Poly upper = p.substitute(i, sum);
      Poly lower = p.substitute(jv, sum);
      std::vector<std::string> sub_splits;
      if (certify_orthant_nonneg(upper, depth - 1, &sub_splits) &&
          certify_orthant_nonneg(lower, depth - 1, &sub_splits)) {
        if (splits) {
          splits->push_back("x" + std::to_string(i + 1) + "<>x" + std::to_string(jv + 1));
          for (auto& s : sub_splits) splits->push_back(std::move(s));
        }
        return true;
      }
    }
  }
  return false;
}

namespace {

CertificateRecord certify_leq_one(const std::string& name, const MonomialExpr& expr) {
  CertificateRecord rec;
  rec.name = name;
  ClearedInequality cleared = clear_powers(expr, MonomialExpr::one(expr.nvars()));
  rec.power = cleared.power;
  rec.difference = cleared.difference();
  Poly scaled = rec.difference.integerized();
  rec.diff_terms = scaled.term_count();
  rec.diff_digest = scaled.digest();
  rec.min_coeff = scaled.min_coefficient().get_str();
  rec.max_coeff = scaled.max_coefficient().get_str();
  if (nonneg_certificate(rec.difference) == CertOutcome::certified) {
    rec.certified = true;
    rec.direct = true;
    return rec;
  }
  std::vector<std::string> splits;
  if (certify_orthant_nonneg(rec.difference, 2, &splits)) {
    rec.certified = true;
    rec.direct = false;
    rec.splits = std::move(splits);
  }
  return rec;
}

// all multisets of size t over group indices (nondecreasing index vectors)
void enumerate_multisets(std::size_t ngroups, int t, std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out, std::size_t from = 0) {
  if (static_cast<int>(cur.size()) == t) {
    out.push_back(cur);
    return;
  }
  for (std::size_t g = from; g < ngroups; ++g) {
    cur.push_back(g);
    enumerate_multisets(ngroups, t, cur, out, g);
    cur.pop_back();
  }
}

}  // namespace

SymbolicResult certify_symbolic(const JacobianExpr& j, const ThresholdSpec& spec, bool stage_two) {
  SymbolicResult res;
  res.threshold = spec;
  if (spec.t < 1) throw Error(Errc::bad_input, "threshold must be >= 1");

  std::vector<GroupFactor> groups = multiplicity_groups(j);

  std::vector<std::size_t> vidx;
  for (const auto& name : spec.variable_groups) {
    bool found = false;
    for (std::size_t g = 0; g < groups.size(); ++g)
      if (groups[g].key == name) {
        vidx.push_back(g);
        found = true;
        break;
      }
    if (!found)
      throw Error(Errc::bad_input, "threshold group '" + name + "' is not a contributing multiplicity group");
  }
  if (vidx.empty()) throw Error(Errc::bad_input, "threshold needs at least one variable group");

  // stage (i): every group factor <= 1
  res.j2_leq_1 = true;
  for (const auto& g : groups) {
    CertificateRecord rec = certify_leq_one("G[" + g.key + "] <= 1", g.g);
    if (!rec.certified) {
      res.j2_leq_1 = false;
      if (res.failure.empty()) res.failure = rec.name;
    }
    res.records.push_back(std::move(rec));
  }

  if (!stage_two) {
    res.certified = false;
    return res;
  }
  res.stage_two_ran = true;

  // stage (ii): J1 * baseline * prod_{g in M} G_g <= 1 for every size-t
  // multiset M.  Groups outside V enter once: every root class present in
  // the system carries multiplicity >= 1, and that baseline factor is
  // needed (J1 * G_V^t alone can exceed 1).
  MonomialExpr baseline(j.nvars);
  std::string baseline_name;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (std::find(vidx.begin(), vidx.end(), g) != vidx.end()) continue;
    baseline.mul(groups[g].g);
    baseline_name += " * G[" + groups[g].key + "]";
  }
  std::vector<std::vector<std::size_t>> multisets;
  std::vector<std::size_t> cur;
  enumerate_multisets(vidx.size(), spec.t, cur, multisets);
  std::map<std::string, bool> seen;
  bool stage2_ok = true;
  for (const auto& m : multisets) {
    MonomialExpr obj = j.j1();
    obj.mul(baseline);
    std::ostringstream name;
    name << "J1" << baseline_name;
    for (std::size_t mi : m) {
      obj.mul(groups[vidx[mi]].g);
      name << " * G[" << groups[vidx[mi]].key << "]";
    }
    name << " <= 1";
    std::string key = obj.canonical_key();
    auto it = seen.find(key);
    if (it != seen.end()) {
      if (!it->second) stage2_ok = false;
      continue;
    }
    CertificateRecord rec = certify_leq_one(name.str(), obj);
    seen[key] = rec.certified;
    if (!rec.certified) {
      stage2_ok = false;
      if (res.failure.empty()) res.failure = rec.name;
    }
    res.records.push_back(std::move(rec));
  }

  res.certified = res.j2_leq_1 && stage2_ok;
  return res;
}

std::vector<double> JacobianEvaluator::log_j_gradient(const std::vector<double>& x) const {
  // central differences; analytic overrides where cheap
  std::vector<double> g(x.size(), 0.0);
  const double h = 1e-7;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto xp = x;
    xp[i] += h;
    auto xm = x;
    xm[i] -= h;
    g[i] = (log_j(xp) - log_j(xm)) / (2 * h);
  }
  return g;
}

long double JacobianEvaluator::log_j_precise(const std::vector<double>& x) const {
  return static_cast<long double>(log_j(x));
}

double ConcreteJacobian::log_j(const std::vector<double>& x) const {
  double lj = 0.5 * j_.j1_squared.log_evaluate(x);
  for (std::size_t c = 0; c < j_.class_factors.size(); ++c)
    if (!j_.class_factors[c].is_one() && mults_[c] != 0)
      lj += static_cast<double>(mults_[c]) * j_.class_factors[c].log_evaluate(x);
  return lj;
}

std::vector<double> ConcreteJacobian::log_j_gradient(const std::vector<double>& x) const {
  std::vector<double> g = j_.j1_squared.log_gradient(x);
  for (auto& v : g) v *= 0.5;
  for (std::size_t c = 0; c < j_.class_factors.size(); ++c) {
    if (j_.class_factors[c].is_one() || mults_[c] == 0) continue;
    auto gc = j_.class_factors[c].log_gradient(x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += static_cast<double>(mults_[c]) * gc[i];
  }
  return g;
}

long double ConcreteJacobian::log_j_precise(const std::vector<double>& x) const {
  // re-evaluate with long double accumulation
  auto eval_ld = [&x](const MonomialExpr& e) {
    long double s = std::log(static_cast<long double>(e.constant().value()));
    for (const auto& [f, ex] : e.linear_factors()) {
      long double v = 0;
      for (std::size_t i = 0; i < x.size(); ++i)
        v += static_cast<long double>(to_double(f.coeffs[i])) * static_cast<long double>(x[i]);
      s += static_cast<long double>(to_double(ex)) * std::log(v);
    }
    for (const auto& [p, ex] : e.poly_factors()) {
      long double v = 0;
      for (const auto& [mono, coeff] : p.terms()) {
        long double t = static_cast<long double>(to_double(coeff));
        for (std::size_t i = 0; i < x.size(); ++i)
          for (unsigned kk = 0; kk < mono[i]; ++kk) t *= static_cast<long double>(x[i]);
        v += t;
      }
      s += static_cast<long double>(to_double(ex)) * std::log(v);
    }
    return s;
  };
  long double lj = 0.5L * eval_ld(j_.j1_squared);
  for (std::size_t c = 0; c < j_.class_factors.size(); ++c)
    if (!j_.class_factors[c].is_one() && mults_[c] != 0)
      lj += static_cast<long double>(mults_[c]) * eval_ld(j_.class_factors[c]);
  return lj;
}

namespace {

int thread_count() {
  if (const char* env = std::getenv("CONE_CERT_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// number of compositions of n into k positive parts = C(n-1, k-1)
double composition_count(int n, int k) {
  double c = 1;
  for (int i = 1; i < k; ++i) c = c * (n - i) / i;
  return c;
}

struct ScanCell {
  double log_j;
  std::vector<double> x;
};

// Enumerate compositions of grid_n into r positive parts via their cut
// positions (stars and bars); thread `tid` evaluates every nthreads-th one.
void scan_chunk(const JacobianEvaluator& eval, int grid_n, double sum, int tid, int nthreads,
                std::vector<ScanCell>& top, int keep) {
  const std::size_t r = eval.nvars();
  std::vector<double> x(r);
  auto consider = [&](const std::vector<int>& parts) {
    for (std::size_t i = 0; i < r; ++i) x[i] = sum * parts[i] / grid_n;
    double lj = eval.log_j(x);
    if (static_cast<int>(top.size()) < keep || lj > top.back().log_j) {
      top.push_back({lj, x});
      std::sort(top.begin(), top.end(), [](const ScanCell& a, const ScanCell& b) {
        if (a.log_j != b.log_j) return a.log_j > b.log_j;
        return a.x < b.x;
      });
      if (static_cast<int>(top.size()) > keep) top.pop_back();
    }
  };

  std::vector<int> parts(r);
  if (r == 1) {
    if (tid == 0) {
      parts[0] = grid_n;
      consider(parts);
    }
    return;
  }
  const std::size_t m = r - 1;  // number of cuts in [1, grid_n-1]
  std::vector<int> cuts(m);
  for (std::size_t i = 0; i < m; ++i) cuts[i] = static_cast<int>(i) + 1;
  long idx = 0;
  while (true) {
    if (idx % nthreads == tid) {
      parts[0] = cuts[0];
      for (std::size_t i = 1; i < m; ++i) parts[i] = cuts[i] - cuts[i - 1];
      parts[m] = grid_n - cuts[m - 1];
      consider(parts);
    }
    ++idx;
    // lexicographic successor of the cut subset
    long j = static_cast<long>(m) - 1;
    while (j >= 0 && cuts[static_cast<std::size_t>(j)] == grid_n - 1 - (static_cast<int>(m) - 1 - static_cast<int>(j)))
      --j;
    if (j < 0) break;
    ++cuts[static_cast<std::size_t>(j)];
    for (std::size_t i = static_cast<std::size_t>(j) + 1; i < m; ++i) cuts[i] = cuts[i - 1] + 1;
  }
}

}  // namespace

NumericScan certify_numeric(const JacobianEvaluator& eval, const NumericOptions& opts) {
  const std::size_t r = eval.nvars();
  if (opts.grid_n < static_cast<int>(r))
    throw Error(Errc::bad_input, "grid too coarse for the simplex dimension");
  double count = composition_count(opts.grid_n, static_cast<int>(r));
  if (count > 2.5e7)
    throw Error(Errc::bad_input, "grid would enumerate " + std::to_string(count) + " points; lower --grid");
  const long total = static_cast<long>(count + 0.5);

  const int keep = std::max(opts.multistarts, 1);
  int nthreads = static_cast<int>(std::min<long>(thread_count(), std::max<long>(total / 1024, 1)));
  std::vector<std::vector<ScanCell>> tops(static_cast<std::size_t>(nthreads));
  {
    std::vector<std::thread> pool;
    for (int tdx = 0; tdx < nthreads; ++tdx) {
      pool.emplace_back([&, tdx] {
        scan_chunk(eval, opts.grid_n, opts.simplex_sum, tdx, nthreads, tops[static_cast<std::size_t>(tdx)],
                   keep);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<ScanCell> top;
  for (auto& t : tops)
    for (auto& cell : t) top.push_back(std::move(cell));
  std::sort(top.begin(), top.end(), [](const ScanCell& a, const ScanCell& b) {
    if (a.log_j != b.log_j) return a.log_j > b.log_j;
    return a.x < b.x;
  });
  if (static_cast<int>(top.size()) > keep) top.resize(static_cast<std::size_t>(keep));
  if (top.empty()) throw Error(Errc::eval_domain, "empty grid");

  const double floor_x = opts.barrier * opts.simplex_sum;
  auto project = [&](std::vector<double>& x) {
    // clamp to the barrier and restore the coordinate sum
    double s = 0;
    for (auto& v : x) {
      if (v < floor_x) v = floor_x;
      s += v;
    }
    double scale = opts.simplex_sum / s;
    for (auto& v : x) v *= scale;
  };

  // multi-start projected gradient ascent on log J
  ScanCell best = top.front();
  for (auto& start : top) {
    std::vector<double> x = start.x;
    double fx = start.log_j;
    for (int it = 0; it < opts.refine_iters; ++it) {
      auto g = eval.log_j_gradient(x);
      double mean = 0;
      for (double v : g) mean += v;
      mean /= static_cast<double>(r);
      double gnorm2 = 0;
      for (auto& v : g) {
        v -= mean;
        gnorm2 += v * v;
      }
      if (gnorm2 < 1e-26) break;
      double step = 0.25 * opts.simplex_sum / std::sqrt(gnorm2);
      bool improved = false;
      for (int back = 0; back < 40; ++back) {
        std::vector<double> cand = x;
        for (std::size_t i = 0; i < r; ++i) cand[i] += step * g[i];
        project(cand);
        double fc = eval.log_j(cand);
        if (fc > fx + 1e-18) {
          x = std::move(cand);
          fx = fc;
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
    }
    if (fx > best.log_j || (fx == best.log_j && x < best.x)) best = {fx, x};
  }

  NumericScan out;
  out.grid_n = opts.grid_n;
  out.barrier = opts.barrier;
  out.points_evaluated = static_cast<std::size_t>(total);
  double max_j = std::exp(best.log_j);
  // near-threshold results get one confirmation pass in extended precision
  if (std::abs(max_j - 1.0) < 1e-6)
    max_j = static_cast<double>(std::exp(eval.log_j_precise(best.x)));
  out.max_j = max_j;
  out.argmax = best.x;
  out.failed = max_j > 1.0 + opts.tolerance;
  return out;
}

ThresholdSatisfaction threshold_satisfied(const ThresholdSpec& spec,
                                          const std::vector<GroupFactor>& groups,
                                          const std::optional<MultBinding>& binding) {
  LinExpr sum;
  for (const auto& name : spec.variable_groups)
    for (const auto& g : groups)
      if (g.key == name) sum += g.multiplicity;

  ThresholdSatisfaction out;
  if (binding) {
    out.decidable = true;
    out.holds = sum.evaluate(*binding) >= spec.t;
    return out;
  }
  if (sum.is_constant()) {
    out.decidable = true;
    out.holds = sum.constant_part() >= spec.t;
    return out;
  }
  if (sum.terms().size() == 1) {
    const auto& [name, coeff] = sum.terms()[0];
    if (coeff > 0) {
      long need = spec.t - sum.constant_part();
      long n0 = need <= 0 ? 1 : (need + coeff - 1) / coeff;
      if (n0 < 1) n0 = 1;
      out.decidable = true;
      out.holds = true;
      if (n0 > 1) out.condition = name + " >= " + std::to_string(n0);
      return out;
    }
  }
  return out;  // undecidable symbolically
}

}  // namespace conecert
