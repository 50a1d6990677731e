#include "gee/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace gee {

bool invert(const double* a, double* inv, int n) {
  std::vector<double> m(a, a + n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i * n + j] = (i == j) ? 1.0 : 0.0;

  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::fabs(m[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = std::fabs(m[r * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-300) return false;
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(m[piv * n + j], m[col * n + j]);
        std::swap(inv[piv * n + j], inv[col * n + j]);
      }
    }
    const double d = 1.0 / m[col * n + col];
    for (int j = 0; j < n; ++j) {
      m[col * n + j] *= d;
      inv[col * n + j] *= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r * n + col];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        m[r * n + j] -= f * m[col * n + j];
        inv[r * n + j] -= f * inv[col * n + j];
      }
    }
  }
  return true;
}

void sym_eigenvalues(const double* a, double* eig, int n) {
  std::vector<double> m(a, a + n * n);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += m[p * n + q] * m[p * n + q];
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (std::fabs(apq) < 1e-300) continue;
        const double app = m[p * n + p], aqq = m[q * n + q];
        const double theta = 0.5 * (aqq - app) / apq;
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = m[k * n + p], mkq = m[k * n + q];
          m[k * n + p] = c * mkp - s * mkq;
          m[k * n + q] = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = m[p * n + k], mqk = m[q * n + k];
          m[p * n + k] = c * mpk - s * mqk;
          m[q * n + k] = s * mpk + c * mqk;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) eig[i] = m[i * n + i];
  std::sort(eig, eig + n);
}

bool positive_definite(const double* a, int n, double eps) {
  std::vector<double> m(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[i * n + j] = a[i * n + j] - (i == j ? eps : 0.0);
  // in-place Cholesky
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m[i * n + j];
      for (int k = 0; k < j; ++k) s -= m[i * n + k] * m[j * n + k];
      if (i == j) {
        if (s <= 0.0) return false;
        m[i * n + i] = std::sqrt(s);
      } else {
        m[i * n + j] = s / m[j * n + j];
      }
    }
  }
  return true;
}

}  // namespace gee
