#pragma once

#include <optional>
#include <vector>

#include "conecert/ansatz.hpp"
#include "conecert/root_system.hpp"

namespace conecert {

/// Mean curvature of the orbit through the chamber point H (not normalized):
/// m_H = - sum over roots not vanishing on the face of m(l) * l / <l,H>.
/// Multiplicities must evaluate to integers under `binding`.
/// Throws DIVIDE_BY_ZERO when H sits on the wall of a contributing root.
std::vector<double> mean_curvature(const RootSystem& rs, unsigned delta_mask,
                                   const std::vector<double>& chamber, const MultBinding& binding);

/// Tangential part m_H - <m_H,H>/<H,H> H at the chamber point.
std::vector<double> tangential_mean_curvature(const RootSystem& rs, unsigned delta_mask,
                                              const std::vector<double>& chamber,
                                              const MultBinding& binding);

/// Exact check that the tangential mean curvature vanishes at w (rational
/// chamber coordinates), identically in the symbolic multiplicities.
bool tangential_vanishes_exactly(const RootSystem& rs, unsigned delta_mask, const RatVec& w_chamber);

struct BasePoint {
  unsigned delta_mask = 0;
  std::vector<double> chamber;  // unit-sphere representative, zeros off face
  std::vector<double> ambient;
  double residual = 0.0;        // tangential mean-curvature norm at the point
  int iterations = 0;
  std::optional<ExactBasePoint> exact;
};

struct MinimalPointOptions {
  bool force_numeric = false;   // skip the closed-form / exact-candidate paths
  double tolerance = 1e-12;
  int max_iterations = 200;
  MultBinding binding;          // needed for the numeric path
  std::vector<double> initial_chamber;  // optional custom start (face coords)
};

/// The base point of the unique minimal orbit of the face's type.
/// Isolated faces use the closed form H_a/|H_a|; otherwise an exact
/// symmetric candidate is tried, then damped Newton in log coordinates.
/// Throws NO_CONVERGENCE / WALL_COLLISION.
BasePoint minimal_point(const RootSystem& rs, unsigned delta_mask, const MinimalPointOptions& opts = {});

}  // namespace conecert
