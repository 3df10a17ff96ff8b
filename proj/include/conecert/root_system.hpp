#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conecert/errors.hpp"
#include "conecert/linalg.hpp"
#include "conecert/rational.hpp"

namespace conecert {

enum class Family { A, B, C, BC, G2 };

std::string family_name(Family f);

/// Parse a type label like "A2", "BC2", "G2" into (family, rank).
std::pair<Family, int> parse_type_label(const std::string& label);

/// A rational combination of the simple roots, evaluated on chamber
/// coordinates by pairing against the dual basis: <lambda, sum x_a H_a>
/// = sum coeff_a * x_a.
struct LinearForm {
  RatVec coeffs;  // indexed by simple root

  Rat evaluate(const RatVec& x) const;
  double evaluate(const std::vector<double>& x) const;
  /// True iff the form vanishes identically on the face with the given
  /// support mask, i.e. no coefficient lives on a root of the face.
  bool vanishes_on_face(unsigned delta_mask) const;
  bool operator==(const LinearForm& o) const { return coeffs == o.coeffs; }
  bool operator<(const LinearForm& o) const { return coeffs < o.coeffs; }
  std::string to_string() const;  // e.g. "a1 + 3/2 a2"
};

struct PositiveRoot {
  std::vector<long> simple_coeffs;  // nonnegative integers over F
  RatVec ambient;
  int class_id;

  LinearForm form() const;
  std::string label() const;
};

struct RootClass {
  std::string name;     // "m", "m1", "m2", "m3"
  LinExpr multiplicity;
};

/// Restricted root system with multiplicities, in the coordinates the
/// computations are carried out in (e-basis for A/B/C/BC, simple-root
/// basis with an explicit Gram matrix for G2).
struct RootSystem {
  Family family;
  int rank = 0;
  std::string label;                 // "A2", "BC2", ...
  RatMat ambient_gram;               // empty => standard inner product
  std::vector<RatVec> simple_roots;  // ambient coordinates
  std::vector<PositiveRoot> positive;
  std::vector<RootClass> classes;
  RatMat gram;  // <alpha_i, alpha_j>, rank x rank

  Rat inner_ambient(const RatVec& a, const RatVec& b) const { return inner(a, b, ambient_gram); }
  const RootClass& cls(int id) const { return classes.at(static_cast<std::size_t>(id)); }
  int class_by_name(const std::string& name) const;
  /// Sum of multiplicities over all positive roots.
  LinExpr total_multiplicity() const;
};

struct DualBasis {
  std::vector<RatVec> vectors;     // ambient coordinates of H_alpha
  std::vector<Rat> norm_squared;   // <H_a, H_a>
};

struct ChamberFace {
  unsigned delta_mask = 0;
  int rank = 0;

  bool contains_in_closure(const ChamberFace& other) const {
    return (other.delta_mask & delta_mask) == other.delta_mask;
  }
  std::vector<int> members() const;
  std::string label() const;  // "{a1,a3}"
};

/// Parse "a1,a3" (or "a1 a3") into a face mask.
unsigned parse_delta(const std::string& text, int rank);
std::string delta_label(unsigned mask, int rank);

using MultAssignment = std::vector<std::pair<std::string, LinExpr>>;

RootSystem build_root_system(Family family, int rank, const MultAssignment& multiplicities);
RootSystem build_root_system(const std::string& type_label, const MultAssignment& multiplicities);

DualBasis dual_basis(const RootSystem& rs);

/// Expand an ambient vector over the simple roots; error if outside span F.
LinearForm to_chamber_coords(const RootSystem& rs, const RatVec& ambient);

std::vector<ChamberFace> face_lattice(const RootSystem& rs);

/// Roots not vanishing on the face (the ones whose joint eigenspaces span
/// the orbit tangent space).
std::vector<const PositiveRoot*> contributing_roots(const RootSystem& rs, unsigned delta_mask);

/// (orbit dimension, sphere dimension) for the orbit type of the face.
std::pair<LinExpr, LinExpr> orbit_dimension(const RootSystem& rs, unsigned delta_mask);

}  // namespace conecert
