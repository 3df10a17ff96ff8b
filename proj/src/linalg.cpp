#include "conecert/linalg.hpp"

#include <cstddef>
#include <stdexcept>

namespace conecert {

RatVec vec_add(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec vec_scale(const Rat& s, const RatVec& a) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

bool vec_is_zero(const RatVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

Rat inner(const RatVec& a, const RatVec& b, const RatMat& gram) {
  Rat s(0);
  if (gram.empty()) {
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Rat row(0);
    for (std::size_t j = 0; j < b.size(); ++j) row += gram[i][j] * b[j];
    s += a[i] * row;
  }
  return s;
}

RatVec solve_linear(RatMat a, RatVec b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("singular linear system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    Rat inv = Rat(1) / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

RatMat invert(const RatMat& a) {
  const std::size_t n = a.size();
  RatMat out(n, RatVec(n, Rat(0)));
  for (std::size_t k = 0; k < n; ++k) {
    RatVec e(n, Rat(0));
    e[k] = 1;
    RatVec col = solve_linear(a, e);
    for (std::size_t i = 0; i < n; ++i) out[i][k] = col[i];
  }
  return out;
}

bool is_positive_definite(const RatMat& a) {
  const std::size_t n = a.size();
  RatMat m = a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j] != m[j][i]) return false;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      Rat f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return true;
}

}  // namespace conecert
