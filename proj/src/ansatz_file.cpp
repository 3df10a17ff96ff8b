#include "conecert/ansatz_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "conecert/errors.hpp"

namespace conecert {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int bracket = 0;
  for (char c : s) {
    if (c == '[') ++bracket;
    if (c == ']') --bracket;
    if (c == sep && bracket == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

RatVec parse_bracket_list(const std::string& text) {
  std::size_t a = text.find('[');
  std::size_t b = text.rfind(']');
  if (a == std::string::npos || b == std::string::npos || b < a)
    throw Error(Errc::bad_input, "expected a [ ... ] list in '" + text + "'");
  RatVec out;
  for (const auto& piece : split(text.substr(a + 1, b - a - 1), ','))
    out.push_back(rat_from_string(piece));
  return out;
}

}  // namespace

AnsatzFile parse_ansatz_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::bad_input, "cannot open ansatz file: " + path);
  AnsatzFile out;
  std::string line;
  int lineno = 0;
  std::string delta_text;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto fail = [&](const std::string& msg) {
      throw Error(Errc::bad_input, path + ":" + std::to_string(lineno) + ": " + msg);
    };
    if (s.rfind("coeffs", 0) == 0) {
      // coeffs = [ ... ], exponent = p/q
      std::string coeff_part, exp_part;
      std::size_t expo_at = s.find("exponent");
      if (expo_at == std::string::npos) fail("factor line misses 'exponent ='");
      coeff_part = s.substr(0, s.rfind(',', expo_at));
      exp_part = s.substr(expo_at);
      std::size_t eq = exp_part.find('=');
      if (eq == std::string::npos) fail("exponent needs '='");
      out.factors.emplace_back(parse_bracket_list(coeff_part),
                               rat_from_string(trim(exp_part.substr(eq + 1))));
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key == "system") {
      out.type_label = value;
    } else if (key == "delta") {
      delta_text = value;
    } else if (key == "base") {
      out.base_chamber = parse_bracket_list(value);
    } else if (key == "mult") {
      for (const auto& piece : split(value, ',')) {
        std::size_t peq = piece.find('=');
        if (peq == std::string::npos) fail("mult entries look like m1 = 2");
        out.mults.emplace_back(trim(piece.substr(0, peq)), parse_lin_expr(trim(piece.substr(peq + 1))));
      }
    } else if (key == "threshold") {
      // e.g.  m2 + m3 >= 2
      std::size_t ge = value.find(">=");
      if (ge == std::string::npos) fail("threshold looks like: m2 + m3 >= 2");
      ThresholdSpec spec;
      for (const auto& g : split(value.substr(0, ge), '+')) spec.variable_groups.push_back(g);
      spec.t = std::stoi(trim(value.substr(ge + 2)));
      out.threshold = spec;
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (out.type_label.empty()) throw Error(Errc::bad_input, path + ": missing 'system ='");
  if (delta_text.empty()) throw Error(Errc::bad_input, path + ": missing 'delta ='");
  if (out.factors.empty()) throw Error(Errc::bad_input, path + ": no factor lines");
  auto [fam, rank] = parse_type_label(out.type_label);
  (void)fam;
  out.delta_mask = parse_delta(delta_text, rank);
  return out;
}

}  // namespace conecert
