#include "conecert/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace conecert {

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::BC: return "BC";
    case Family::G2: return "G2";
  }
  return "?";
}

std::pair<Family, int> parse_type_label(const std::string& label) {
  std::string fam;
  std::string num;
  for (char ch : label) {
    if (std::isalpha(static_cast<unsigned char>(ch))) fam += static_cast<char>(std::toupper(ch));
    else if (std::isdigit(static_cast<unsigned char>(ch))) num += ch;
  }
  if (fam == "G" && num == "2") return {Family::G2, 2};
  if (num.empty()) throw Error(Errc::unsupported_family, "missing rank in type label '" + label + "'");
  int rank = std::stoi(num);
  if (fam == "A") return {Family::A, rank};
  if (fam == "B") return {Family::B, rank};
  if (fam == "C") return {Family::C, rank};
  if (fam == "BC") return {Family::BC, rank};
  throw Error(Errc::unsupported_family, "unknown type label '" + label + "'");
}

Rat LinearForm::evaluate(const RatVec& x) const {
  Rat s(0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * x[i];
  return s;
}

double LinearForm::evaluate(const std::vector<double>& x) const {
  double s = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) s += to_double(coeffs[i]) * x[i];
  return s;
}

bool LinearForm::vanishes_on_face(unsigned delta_mask) const {
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0 && (delta_mask >> i) & 1u) return false;
  return true;
}

std::string LinearForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (!first) os << (coeffs[i] > 0 ? " + " : " - ");
    else if (coeffs[i] < 0) os << "-";
    Rat a = abs(coeffs[i]);
    if (a != 1) os << a.get_str() << " ";
    os << "a" << (i + 1);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

LinearForm PositiveRoot::form() const {
  LinearForm f;
  f.coeffs.reserve(simple_coeffs.size());
  for (long c : simple_coeffs) f.coeffs.emplace_back(c);
  return f;
}

std::string PositiveRoot::label() const { return form().to_string(); }

int RootSystem::class_by_name(const std::string& name) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].name == name) return static_cast<int>(i);
  throw Error(Errc::bad_multiplicity, "no root class named '" + name + "' in " + label);
}

LinExpr RootSystem::total_multiplicity() const {
  LinExpr total;
  for (const auto& r : positive) total += classes[static_cast<std::size_t>(r.class_id)].multiplicity;
  return total;
}

std::vector<int> ChamberFace::members() const {
  std::vector<int> out;
  for (int i = 0; i < rank; ++i)
    if ((delta_mask >> i) & 1u) out.push_back(i);
  return out;
}

std::string ChamberFace::label() const { return delta_label(delta_mask, rank); }

unsigned parse_delta(const std::string& text, int rank) {
  unsigned mask = 0;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::string t = token;
    token.clear();
    if (t[0] == 'a' || t[0] == 'A') t = t.substr(1);
    int idx = 0;
    try {
      idx = std::stoi(t);
    } catch (...) {
      throw Error(Errc::bad_input, "cannot parse face element '" + t + "'");
    }
    if (idx < 1 || idx > rank)
      throw Error(Errc::bad_input, "face element a" + std::to_string(idx) + " out of range for rank " +
                                       std::to_string(rank));
    mask |= 1u << (idx - 1);
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '+') flush();
    else if (ch != '{' && ch != '}') token += ch;
  }
  flush();
  return mask;
}

std::string delta_label(unsigned mask, int rank) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int i = 0; i < rank; ++i) {
    if (!((mask >> i) & 1u)) continue;
    if (!first) os << ",";
    os << "a" << (i + 1);
    first = false;
  }
  os << "}";
  return os.str();
}

namespace {

RatVec unit(int dim, int i, long v = 1) {
  RatVec e(static_cast<std::size_t>(dim), Rat(0));
  e[static_cast<std::size_t>(i)] = v;
  return e;
}

void add_root(RootSystem& rs, std::vector<long> coeffs, int class_id) {
  PositiveRoot r;
  r.simple_coeffs = std::move(coeffs);
  r.class_id = class_id;
  r.ambient.assign(rs.simple_roots[0].size(), Rat(0));
  for (std::size_t i = 0; i < r.simple_coeffs.size(); ++i)
    if (r.simple_coeffs[i] != 0)
      r.ambient = vec_add(r.ambient, vec_scale(Rat(r.simple_coeffs[i]), rs.simple_roots[i]));
  rs.positive.push_back(std::move(r));
}

// coefficient vector for e_i - e_j (i<j) over alpha_k = e_k - e_{k+1}
std::vector<long> range_coeffs(int rank, int i, int j) {
  std::vector<long> c(static_cast<std::size_t>(rank), 0);
  for (int k = i; k < j; ++k) c[static_cast<std::size_t>(k)] = 1;
  return c;
}

void build_family_A(RootSystem& rs) {
  const int l = rs.rank;
  for (int i = 0; i < l; ++i) rs.simple_roots.push_back(vec_sub(unit(l + 1, i), unit(l + 1, i + 1)));
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j <= l; ++j) add_root(rs, range_coeffs(l, i, j), 0);
  rs.classes.push_back({"m", LinExpr()});
}

void build_family_BC(RootSystem& rs, Family fam) {
  const int l = rs.rank;
  const bool c_type = fam == Family::C;
  for (int i = 0; i < l - 1; ++i) rs.simple_roots.push_back(vec_sub(unit(l, i), unit(l, i + 1)));
  rs.simple_roots.push_back(unit(l, l - 1, c_type ? 2 : 1));

  const int cls_pair = 0;  // e_i +- e_j
  rs.classes.push_back({"m1", LinExpr()});
  const int cls_single = 1;  // e_i (B/BC) or 2 e_i (C)
  rs.classes.push_back({"m2", LinExpr()});
  const int cls_doubled = 2;  // 2 e_i (BC only)
  if (fam == Family::BC) rs.classes.push_back({"m3", LinExpr()});

  // e_i - e_j and e_i + e_j (i<j)
  for (int i = 0; i < l; ++i) {
    for (int j = i + 1; j < l; ++j) {
      add_root(rs, range_coeffs(l, i, j), cls_pair);
      std::vector<long> c = range_coeffs(l, i, j);
      if (c_type) {
        for (int k = j; k < l - 1; ++k) c[static_cast<std::size_t>(k)] += 2;
        c[static_cast<std::size_t>(l - 1)] += 1;
      } else {
        for (int k = j; k < l; ++k) c[static_cast<std::size_t>(k)] += 2;
      }
      add_root(rs, c, cls_pair);
    }
  }
  for (int i = 0; i < l; ++i) {
    std::vector<long> ei(static_cast<std::size_t>(l), 0);
    if (c_type) {
      for (int k = i; k < l - 1; ++k) ei[static_cast<std::size_t>(k)] = 2;
      ei[static_cast<std::size_t>(l - 1)] = 1;  // 2 e_i
      add_root(rs, ei, cls_single);
    } else {
      for (int k = i; k < l; ++k) ei[static_cast<std::size_t>(k)] = 1;
      add_root(rs, ei, cls_single);
      if (fam == Family::BC) {
        std::vector<long> twice = ei;
        for (auto& v : twice) v *= 2;
        add_root(rs, twice, cls_doubled);
      }
    }
  }
}

void build_family_G2(RootSystem& rs) {
  rs.ambient_gram = {{Rat(1), rat(-3, 2)}, {rat(-3, 2), Rat(3)}};
  rs.simple_roots = {unit(2, 0), unit(2, 1)};
  rs.classes.push_back({"m1", LinExpr()});
  rs.classes.push_back({"m2", LinExpr()});
  add_root(rs, {1, 0}, 0);
  add_root(rs, {0, 1}, 1);
  add_root(rs, {1, 1}, 0);
  add_root(rs, {2, 1}, 0);
  add_root(rs, {3, 1}, 1);
  add_root(rs, {3, 2}, 1);
}

void validate(RootSystem& rs) {
  // Gram of the simple system
  rs.gram.assign(static_cast<std::size_t>(rs.rank), RatVec(static_cast<std::size_t>(rs.rank), Rat(0)));
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j)
      rs.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          rs.inner_ambient(rs.simple_roots[static_cast<std::size_t>(i)],
                           rs.simple_roots[static_cast<std::size_t>(j)]);
  if (!is_positive_definite(rs.gram))
    throw Error(Errc::singular_gram, "simple-root Gram matrix is not positive definite");

  std::set<std::vector<long>> seen;
  for (const auto& r : rs.positive) {
    for (long c : r.simple_coeffs)
      if (c < 0) throw Error(Errc::bad_input, "positive root with negative simple coefficient");
    if (!seen.insert(r.simple_coeffs).second)
      throw Error(Errc::bad_input, "duplicate positive root");
    // Cartan integers 2<r,a>/<a,a> must be integral
    for (int i = 0; i < rs.rank; ++i) {
      Rat num = Rat(2) * rs.inner_ambient(r.ambient, rs.simple_roots[static_cast<std::size_t>(i)]);
      Rat cart = num / rs.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
      if (!is_integer(cart))
        throw Error(Errc::bad_input, "non-integral Cartan pairing for root " + r.label());
    }
  }
  // roots sharing a class share a norm
  for (std::size_t c = 0; c < rs.classes.size(); ++c) {
    Rat norm(0);
    bool have = false;
    for (const auto& r : rs.positive) {
      if (r.class_id != static_cast<int>(c)) continue;
      Rat n = rs.inner_ambient(r.ambient, r.ambient);
      if (!have) {
        norm = n;
        have = true;
      } else if (n != norm) {
        throw Error(Errc::bad_input, "class " + rs.classes[c].name + " mixes root lengths");
      }
    }
  }
}

}  // namespace

RootSystem build_root_system(Family family, int rank, const MultAssignment& multiplicities) {
  if (rank < 1) throw Error(Errc::unsupported_family, "rank must be >= 1");
  if (rank > 8) throw Error(Errc::unsupported_family, "rank > 8 not in the supported catalog");
  RootSystem rs;
  rs.family = family;
  rs.rank = rank;
  switch (family) {
    case Family::A:
      rs.label = "A" + std::to_string(rank);
      build_family_A(rs);
      break;
    case Family::B:
      if (rank < 2) throw Error(Errc::unsupported_family, "B requires rank >= 2");
      rs.label = "B" + std::to_string(rank);
      build_family_BC(rs, Family::B);
      break;
    case Family::C:
      if (rank < 2) throw Error(Errc::unsupported_family, "C requires rank >= 2");
      rs.label = "C" + std::to_string(rank);
      build_family_BC(rs, Family::C);
      break;
    case Family::BC:
      if (rank < 2) throw Error(Errc::unsupported_family, "BC requires rank >= 2");
      rs.label = "BC" + std::to_string(rank);
      build_family_BC(rs, Family::BC);
      break;
    case Family::G2:
      if (rank != 2) throw Error(Errc::unsupported_family, "G2 has rank 2");
      rs.label = "G2";
      build_family_G2(rs);
      break;
  }

  std::set<std::string> expected;
  for (const auto& c : rs.classes) expected.insert(c.name);
  std::set<std::string> given;
  for (const auto& [name, value] : multiplicities) {
    if (!expected.count(name))
      throw Error(Errc::bad_multiplicity,
                  "multiplicity key '" + name + "' does not name a root class of " + rs.label);
    if (!given.insert(name).second)
      throw Error(Errc::bad_multiplicity, "multiplicity key '" + name + "' given twice");
    if (value.is_constant() && value.constant_part() <= 0)
      throw Error(Errc::bad_multiplicity, "nonpositive multiplicity for class " + name);
    rs.classes[static_cast<std::size_t>(rs.class_by_name(name))].multiplicity = value;
  }
  // classes without an assignment stay symbolic, named after the class
  for (auto& c : rs.classes)
    if (!given.count(c.name)) c.multiplicity = LinExpr::symbol(c.name);

  validate(rs);
  return rs;
}

RootSystem build_root_system(const std::string& type_label, const MultAssignment& multiplicities) {
  auto [fam, rank] = parse_type_label(type_label);
  return build_root_system(fam, rank, multiplicities);
}

DualBasis dual_basis(const RootSystem& rs) {
  DualBasis db;
  RatMat inv;
  try {
    inv = invert(rs.gram);
  } catch (const std::domain_error&) {
    throw Error(Errc::singular_gram, "Gram matrix is singular");
  }
  for (int a = 0; a < rs.rank; ++a) {
    RatVec h(rs.simple_roots[0].size(), Rat(0));
    for (int b = 0; b < rs.rank; ++b)
      h = vec_add(h, vec_scale(inv[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)],
                               rs.simple_roots[static_cast<std::size_t>(b)]));
    db.norm_squared.push_back(rs.inner_ambient(h, h));
    db.vectors.push_back(std::move(h));
  }
  return db;
}

LinearForm to_chamber_coords(const RootSystem& rs, const RatVec& ambient) {
  RatVec rhs(static_cast<std::size_t>(rs.rank));
  for (int i = 0; i < rs.rank; ++i)
    rhs[static_cast<std::size_t>(i)] = rs.inner_ambient(ambient, rs.simple_roots[static_cast<std::size_t>(i)]);
  RatVec c = solve_linear(rs.gram, rhs);
  RatVec recon(ambient.size(), Rat(0));
  for (int i = 0; i < rs.rank; ++i)
    recon = vec_add(recon, vec_scale(c[static_cast<std::size_t>(i)], rs.simple_roots[static_cast<std::size_t>(i)]));
  if (!vec_is_zero(vec_sub(recon, ambient)))
    throw Error(Errc::outside_span, "vector does not lie in the span of the simple roots");
  LinearForm f;
  f.coeffs = std::move(c);
  return f;
}

std::vector<ChamberFace> face_lattice(const RootSystem& rs) {
  std::vector<ChamberFace> faces;
  const unsigned n = 1u << rs.rank;
  faces.reserve(n);
  for (unsigned mask = 0; mask < n; ++mask) faces.push_back({mask, rs.rank});
  return faces;
}

std::vector<const PositiveRoot*> contributing_roots(const RootSystem& rs, unsigned delta_mask) {
  std::vector<const PositiveRoot*> out;
  for (const auto& r : rs.positive)
    if (!r.form().vanishes_on_face(delta_mask)) out.push_back(&r);
  return out;
}

std::pair<LinExpr, LinExpr> orbit_dimension(const RootSystem& rs, unsigned delta_mask) {
  if (delta_mask == 0) throw Error(Errc::empty_delta, "orbit type needs a nonempty face");
  LinExpr orbit;
  for (const auto* r : contributing_roots(rs, delta_mask))
    orbit += rs.cls(r->class_id).multiplicity;
  LinExpr sphere = rs.total_multiplicity() + LinExpr(rs.rank - 1);
  return {orbit, sphere};
}

}  // namespace conecert
