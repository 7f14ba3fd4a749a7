#pragma once

// Cyclic Jacobi diagonalization of 3x3 Hermitian matrices.

#include <algorithm>
#include <array>
#include <cmath>

#include "chlab/linalg.hpp"

namespace chlab {

struct HermitianEigen {
  std::array<double, 3> values{};  // descending
  CMat3 vectors;                   // unitary, columns are eigenvectors
};

inline HermitianEigen hermitian_eigen(const CMat3& h) {
  CMat3 a = h;
  CMat3 v = CMat3::identity();
  const double scale = std::max(h.norm(), 1e-300);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2));
    if (off <= 1e-32 * scale * scale) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const cplx apq = a(p, q);
        const double t = std::abs(apq);
        if (t <= 1e-300) continue;
        const cplx phase = apq / t;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * t, app - aqq);
        const double c = std::cos(theta), s = std::sin(theta);
        // U = diag(1, conj(phase)) * [[c, -s], [s, c]] embedded at (p, q)
        CMat3 u = CMat3::identity();
        u(p, p) = c;
        u(p, q) = -s;
        u(q, p) = std::conj(phase) * s;
        u(q, q) = std::conj(phase) * c;
        a = u.adjoint() * a * u;
        v = v * u;
      }
    }
  }

  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });
  HermitianEigen out;
  for (int k = 0; k < 3; ++k) {
    out.values[k] = a(idx[k], idx[k]).real();
    for (int i = 0; i < 3; ++i) out.vectors(i, k) = v(i, idx[k]);
  }
  return out;
}

}  // namespace chlab
