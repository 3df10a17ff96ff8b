#include "conecert/report_json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "conecert/errors.hpp"

namespace conecert {

int Report::exit_code() const {
  switch (verdict) {
    case Verdict::certified:
    case Verdict::numerically_supported: return 0;
    case Verdict::inconclusive: return 2;
    case Verdict::failed: return 3;
  }
  return 2;
}

namespace {

std::string esc(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class Writer {
 public:
  std::ostringstream os;
  int depth = 0;
  bool need_comma = false;

  void open(const char* brace) {
    os << brace;
    ++depth;
    need_comma = false;
  }
  void close(const char* brace) {
    --depth;
    os << "\n";
    pad();
    os << brace;
    need_comma = true;
  }
  void pad() {
    for (int i = 0; i < depth; ++i) os << "  ";
  }
  void sep() {
    if (need_comma) os << ",";
    os << "\n";
    pad();
    need_comma = true;
  }
  void key(const std::string& k) {
    sep();
    os << "\"" << esc(k) << "\": ";
  }
  void kv(const std::string& k, const std::string& v) {
    key(k);
    os << "\"" << esc(v) << "\"";
  }
  void kv_raw(const std::string& k, const std::string& v) {
    key(k);
    os << v;
  }
  void kv(const std::string& k, bool v) { kv_raw(k, v ? "true" : "false"); }
  void kv(const std::string& k, long v) { kv_raw(k, std::to_string(v)); }
  void kv(const std::string& k, int v) { kv_raw(k, std::to_string(v)); }
  void kv(const std::string& k, double v) { kv_raw(k, num17(v)); }
  void string_array(const std::string& k, const std::vector<std::string>& xs, bool quoted = true) {
    key(k);
    os << "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) os << ", ";
      if (quoted) os << "\"" << esc(xs[i]) << "\"";
      else os << xs[i];
    }
    os << "]";
    need_comma = true;
  }
  void double_array(const std::string& k, const std::vector<double>& xs) {
    std::vector<std::string> out;
    out.reserve(xs.size());
    for (double v : xs) out.push_back(num17(v));
    string_array(k, out, false);
  }
};

std::vector<std::string> rat_strings(const RatVec& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(r.get_str());
  return out;
}

void write_numeric(Writer& w, const NumericScan& scan) {
  w.key("numeric");
  w.open("{");
  w.kv("max_j", scan.max_j);
  w.double_array("argmax", scan.argmax);
  w.kv("failed", scan.failed);
  w.kv("points_evaluated", static_cast<long>(scan.points_evaluated));
  w.kv("grid", scan.grid_n);
  w.kv("barrier", scan.barrier);
  w.close("}");
}

void write_report_body(Writer& w, const Report& r) {
  w.open("{");
  w.kv("schema", r.schema);
  w.kv("kind", r.kind);
  w.kv("verdict", std::string(verdict_name(r.verdict)));
  w.kv("j2_leq_1", r.j2_leq_1);
  w.kv("orbit_dim", r.orbit_dim.to_string());
  if (r.orbit_dim_value) w.kv("orbit_dim_value", *r.orbit_dim_value);
  w.kv("sphere_dim", r.sphere_dim.to_string());
  if (r.sphere_dim_value) w.kv("sphere_dim_value", *r.sphere_dim_value);

  if (r.kind == "atomic" && r.ansatz) {
    const Ansatz& a = *r.ansatz;
    w.key("system");
    w.open("{");
    w.kv("type", a.rs.label);
    w.kv("rank", a.rs.rank);
    w.key("multiplicities");
    w.open("{");
    for (const auto& cls : a.rs.classes) w.kv(cls.name, cls.multiplicity.to_string());
    w.close("}");
    if (r.binding) {
      w.key("binding");
      w.open("{");
      for (const auto& [name, value] : *r.binding) w.kv(name, value);
      w.close("}");
    }
    w.close("}");
    w.kv("delta0", delta_label(a.delta0, a.rs.rank));

    w.key("ansatz");
    w.open("{");
    w.kv("source", a.source);
    w.key("factors");
    w.open("[");
    for (const auto& [form, e] : a.forms) {
      w.sep();
      w.os << "{\"coeffs\": [";
      for (std::size_t i = 0; i < form.coeffs.size(); ++i) {
        if (i) w.os << ", ";
        w.os << "\"" << form.coeffs[i].get_str() << "\"";
      }
      w.os << "], \"exponent\": \"" << e.get_str() << "\"}";
    }
    w.close("]");
    w.kv("normalization", a.c.to_string());
    w.close("}");

    w.key("base_point");
    w.open("{");
    w.string_array("chamber", rat_strings(a.base.w_chamber));
    w.kv("norm_squared", a.base.s.get_str());
    w.double_array("unit_chamber", a.base.chamber_unit());
    w.double_array("unit_ambient", a.base.ambient_unit());
    w.close("}");
  }

  if (r.symbolic) {
    const SymbolicResult& s = *r.symbolic;
    w.key("threshold");
    w.open("{");
    w.string_array("groups", s.threshold.variable_groups);
    w.kv("t", s.threshold.t);
    w.close("}");
    if (r.instance) {
      w.key("instance");
      w.open("{");
      w.kv("decidable", r.instance->decidable);
      w.kv("holds", r.instance->holds);
      w.kv("condition", r.instance->condition);
      w.close("}");
    }
    w.key("certificates");
    w.open("[");
    for (const auto& rec : s.records) {
      w.sep();
      w.os << "{\"name\": \"" << esc(rec.name) << "\", \"power\": \"" << rec.power.get_str()
           << "\", \"certified\": " << (rec.certified ? "true" : "false")
           << ", \"direct\": " << (rec.direct ? "true" : "false") << ", \"splits\": [";
      for (std::size_t i = 0; i < rec.splits.size(); ++i) {
        if (i) w.os << ", ";
        w.os << "\"" << esc(rec.splits[i]) << "\"";
      }
      w.os << "], \"terms\": " << rec.diff_terms << ", \"digest\": \"" << rec.diff_digest
           << "\", \"min_coeff\": \"" << rec.min_coeff << "\", \"max_coeff\": \"" << rec.max_coeff
           << "\"}";
    }
    w.close("]");
    if (!s.failure.empty()) w.kv("symbolic_failure", s.failure);
  }

  if (r.numeric) write_numeric(w, *r.numeric);

  if (r.kind == "product") {
    w.kv("k1", r.k1);
    w.kv("k2", r.k2);
    long k = r.k1 + r.k2;
    w.kv("a1_squared", std::to_string(r.k1) + "/" + std::to_string(k));
    w.kv("a2_squared", std::to_string(r.k2) + "/" + std::to_string(k));
    if (r.profile) {
      w.key("profile");
      w.open("{");
      w.kv("k1", r.profile->k1);
      w.kv("k2", r.profile->k2);
      w.kv("max_d", r.profile->max_d);
      w.kv("arg_x1", r.profile->arg_x1);
      w.kv("arg_x2", r.profile->arg_x2);
      w.kv("samples", r.profile->samples);
      w.kv("max_is_one_at_diagonal", r.profile->max_is_one_at_diagonal);
      w.close("}");
    }
    if (r.left) {
      w.key("left");
      write_report_body(w, *r.left);
    }
    if (r.right) {
      w.key("right");
      write_report_body(w, *r.right);
    }
  }

  if (!r.notes.empty()) w.string_array("notes", r.notes);
  if (!r.timings.empty()) {
    w.key("timings");
    w.open("{");
    for (const auto& [name, seconds] : r.timings) w.kv(name, seconds);
    w.close("}");
  }
  w.close("}");
}

}  // namespace

std::string report_to_json(const Report& report) {
  Writer w;
  write_report_body(w, report);
  w.os << "\n";
  return w.os.str();
}

void write_report_file(const Report& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::bad_input, "cannot open for writing: " + path);
  out << report_to_json(report);
}

namespace {

using nlohmann::json;

Verdict verdict_from(const std::string& s) {
  if (s == "CERTIFIED") return Verdict::certified;
  if (s == "NUMERICALLY_SUPPORTED") return Verdict::numerically_supported;
  if (s == "INCONCLUSIVE") return Verdict::inconclusive;
  if (s == "FAILED") return Verdict::failed;
  throw Error(Errc::bad_input, "unknown verdict '" + s + "'");
}

Report parse_report(const json& j) {
  Report r;
  if (!j.contains("schema") || j["schema"].get<int>() != 1)
    throw Error(Errc::bad_input, "unsupported report schema");
  r.kind = j.value("kind", "atomic");
  r.verdict = verdict_from(j.at("verdict").get<std::string>());
  r.j2_leq_1 = j.value("j2_leq_1", false);
  if (j.contains("orbit_dim")) r.orbit_dim = parse_lin_expr(j["orbit_dim"].get<std::string>());
  if (j.contains("sphere_dim")) r.sphere_dim = parse_lin_expr(j["sphere_dim"].get<std::string>());
  if (j.contains("orbit_dim_value")) r.orbit_dim_value = j["orbit_dim_value"].get<long>();
  if (j.contains("sphere_dim_value")) r.sphere_dim_value = j["sphere_dim_value"].get<long>();

  if (r.kind == "atomic") {
    if (!j.contains("system") || !j.contains("ansatz") || !j.contains("base_point"))
      throw Error(Errc::bad_input, "atomic report must embed system, ansatz and base_point");
    const json& sys = j["system"];
    MultAssignment mults;
    for (const auto& [name, value] : sys.at("multiplicities").items())
      mults.emplace_back(name, parse_lin_expr(value.get<std::string>()));
    RootSystem rs = build_root_system(sys.at("type").get<std::string>(), mults);
    unsigned delta = parse_delta(j.at("delta0").get<std::string>(), rs.rank);

    if (sys.contains("binding")) {
      MultBinding binding;
      for (const auto& [name, value] : sys["binding"].items())
        binding.emplace_back(name, value.get<long>());
      r.binding = binding;
    }

    const json& bp = j["base_point"];
    RatVec chamber;
    for (const auto& c : bp.at("chamber")) chamber.push_back(rat_from_string(c.get<std::string>()));
    DualBasis db = dual_basis(rs);
    ExactBasePoint base = exact_point_from_chamber(rs, db, delta, chamber);
    if (bp.contains("norm_squared") &&
        base.s != rat_from_string(bp["norm_squared"].get<std::string>()))
      throw Error(Errc::bad_input, "base point norm does not match its chamber coordinates");

    std::vector<std::pair<LinearForm, Rat>> forms;
    for (const auto& f : j["ansatz"].at("factors")) {
      RatVec coeffs;
      for (const auto& c : f.at("coeffs")) coeffs.push_back(rat_from_string(c.get<std::string>()));
      forms.emplace_back(LinearForm{coeffs}, rat_from_string(f.at("exponent").get<std::string>()));
    }
    Ansatz a = validate_ansatz(rs, delta, base, forms);
    a.source = j["ansatz"].value("source", "file");
    r.ansatz = std::move(a);
  } else if (r.kind == "product") {
    r.k1 = j.value("k1", 0L);
    r.k2 = j.value("k2", 0L);
    if (j.contains("left")) r.left = std::make_shared<Report>(parse_report(j["left"]));
    if (j.contains("right")) r.right = std::make_shared<Report>(parse_report(j["right"]));
  } else {
    throw Error(Errc::bad_input, "unknown report kind '" + r.kind + "'");
  }
  return r;
}

}  // namespace

Report report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::bad_input, std::string("report is not valid JSON: ") + e.what());
  }
  return parse_report(j);
}

Report read_report_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::bad_input, "cannot open report file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return report_from_json(ss.str());
}

}  // namespace conecert
