#pragma once

// Closed-form eigensystems of 3x3 complex matrices, typed against a
// signature-(2,1) form.

#include <algorithm>
#include <array>
#include <cmath>

#include "chlab/error.hpp"
#include "chlab/hermitian_core.hpp"
#include "chlab/linalg.hpp"

namespace chlab {

/// Roots of x^3 + a2 x^2 + a1 x + a0 by Cardano, each refined by Newton steps.
inline std::array<cplx, 3> cubic_roots(cplx a2, cplx a1, cplx a0) {
  const cplx shift = a2 / 3.0;
  const cplx p = a1 - a2 * a2 / 3.0;
  const cplx q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  cplx s1 = -q / 2.0 + disc, s2 = -q / 2.0 - disc;
  cplx big = std::abs(s1) >= std::abs(s2) ? s1 : s2;

  std::array<cplx, 3> t{};
  if (std::abs(big) == 0.0) {
    t = {0.0, 0.0, 0.0};
  } else {
    cplx u = principal_cbrt(big);
    cplx w = 1.0;
    for (int k = 0; k < 3; ++k) {
      cplx uk = u * w;
      t[k] = uk - p / (3.0 * uk);
      w *= omega();
    }
  }

  auto f = [&](cplx x) { return ((x + a2) * x + a1) * x + a0; };
  auto df = [&](cplx x) { return (3.0 * x + 2.0 * a2) * x + a1; };
  std::array<cplx, 3> roots{};
  for (int k = 0; k < 3; ++k) {
    cplx x = t[k] - shift;
    for (int it = 0; it < 3; ++it) {
      cplx d = df(x);
      if (std::abs(d) == 0.0) break;
      cplx nx = x - f(x) / d;
      if (!(std::abs(f(nx)) < std::abs(f(x)))) break;
      x = nx;
    }
    roots[k] = x;
  }
  return roots;
}

struct EigenPair {
  cplx value;
  CVec3 vector;
  PointType type = PointType::Null;
};

struct EigenSystem {
  std::array<EigenPair, 3> pairs;
  int distinct = 3;  // number of distinct eigenvalues after clustering

  const EigenPair& operator[](std::size_t i) const { return pairs[i]; }

  int count(PointType t) const {
    return static_cast<int>(std::count_if(pairs.begin(), pairs.end(),
                                          [t](const EigenPair& e) { return e.type == t; }));
  }
};

struct EigenOptions {
  double cluster_tol = 1e-6;
  /// Treat the two closest eigenvalues as equal regardless of their separation.
  bool merge_closest_pair = false;
};

namespace detail {

inline CVec3 best_wedge(const CMat3& n, double* size = nullptr) {
  CVec3 best;
  double bn = -1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      CVec3 w = wedge(n.row(i), n.row(j));
      double wn = w.norm();
      if (wn > bn) {
        bn = wn;
        best = w;
      }
    }
  if (size) *size = bn;
  return best;
}

/// Form-orthogonal basis of a two-dimensional subspace spanned by w1, w2.
inline std::array<CVec3, 2> form_orthogonalize(const CVec3& w1, const CVec3& w2, const HermitianForm& form) {
  const cplx a = form(w1, w1), b = form(w2, w1), d = form(w2, w2);
  // Gram matrix [[a, b], [conj b, d]] in coefficients of (w1, w2)
  const double ar = a.real(), dr = d.real();
  const double mid = 0.5 * (ar + dr);
  const double rad = std::hypot(0.5 * (ar - dr), std::abs(b));
  std::array<CVec3, 2> out;
  if (std::abs(b) <= 1e-15 * std::max({std::abs(ar), std::abs(dr), 1e-300})) {
    out = {w1, w2};
  } else {
    for (int k = 0; k < 2; ++k) {
      const double lam = k == 0 ? mid + rad : mid - rad;
      cplx x1 = b, x2 = lam - ar;
      cplx y1 = lam - dr, y2 = std::conj(b);
      if (std::norm(y1) + std::norm(y2) > std::norm(x1) + std::norm(x2)) {
        x1 = y1;
        x2 = y2;
      }
      out[k] = x1 * w1 + x2 * w2;
    }
  }
  return {normalize_euclid(out[0]), normalize_euclid(out[1])};
}

}  // namespace detail

/// Eigenvalues, eigenvectors and their point types. Eigenvalues are sorted by
/// argument in [0, 2pi), then by modulus. Throws DefectiveMatrix when M has
/// no eigenbasis.
inline EigenSystem eigen_system(const CMat3& m, const HermitianForm& form = {}, EigenOptions opt = {}) {
  if (!m.is_finite()) throw Error(ErrorCode::NonFinite, "eigen_system input has non-finite entries");
  const cplx det = m.det();
  const double scale = std::max(m.norm(), 1e-300);
  if (std::abs(det) <= 1e-14 * scale * scale * scale)
    throw Error(ErrorCode::DegenerateConfiguration, "eigen_system needs an invertible matrix");

  auto lam = cubic_roots(-m.trace(), m.minor_sum(), -det);

  // cluster[i] = representative index
  std::array<int, 3> rep{0, 1, 2};
  const double ref = std::max({std::abs(lam[0]), std::abs(lam[1]), std::abs(lam[2])});
  int ci = 0, cj = 1;
  double closest = std::abs(lam[0] - lam[1]);
  for (auto [i, j] : {std::pair{0, 2}, std::pair{1, 2}}) {
    double d = std::abs(lam[i] - lam[j]);
    if (d < closest) {
      closest = d;
      ci = i;
      cj = j;
    }
  }
  double spread = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      bool merge = std::abs(lam[i] - lam[j]) <= opt.cluster_tol * ref ||
                   (opt.merge_closest_pair && i == ci && j == cj);
      if (merge) {
        spread = std::max(spread, std::abs(lam[i] - lam[j]));
        int r = std::min(rep[i], rep[j]);
        int old = std::max(rep[i], rep[j]);
        for (auto& x : rep)
          if (x == old) x = r;
      }
    }
  for (int r = 0; r < 3; ++r) {
    cplx sum = 0.0;
    int n = 0;
    for (int i = 0; i < 3; ++i)
      if (rep[i] == r) {
        sum += lam[i];
        ++n;
      }
    if (n > 0)
      for (int i = 0; i < 3; ++i)
        if (rep[i] == r) lam[i] = sum / static_cast<double>(n);
  }
  // double root from the trace and the simple root
  for (int i = 0; i < 3; ++i)
    if (std::count(rep.begin(), rep.end(), rep[i]) == 1) {
      const cplx twice = m.trace() - lam[i];
      if (std::count(rep.begin(), rep.end(), rep[(i + 1) % 3]) == 2)
        for (int j = 0; j < 3; ++j)
          if (j != i) lam[j] = twice / 2.0;
      break;
    }

  EigenSystem es;
  const double rank_tol = std::max(1e-8, 100.0 * spread / ref) * scale;
  std::array<bool, 3> done{false, false, false};
  std::array<int, 3> mult{};
  for (int i = 0; i < 3; ++i) mult[i] = static_cast<int>(std::count(rep.begin(), rep.end(), rep[i]));
  es.distinct = 0;
  for (int r = 0; r < 3; ++r)
    if (std::count(rep.begin(), rep.end(), r) > 0) ++es.distinct;

  for (int i = 0; i < 3; ++i) {
    if (done[i]) continue;
    const CMat3 n = m - lam[i] * CMat3::identity();
    const double nn = n.norm();
    if (mult[i] == 1) {
      CVec3 v = detail::best_wedge(n);
      es.pairs[i] = {lam[i], normalize_euclid(v), PointType::Null};
      done[i] = true;
    } else if (mult[i] == 2) {
      double wn = 0.0;
      detail::best_wedge(n, &wn);
      if (wn > rank_tol * std::max(nn, 1e-300))
        throw Error(ErrorCode::DefectiveMatrix, "repeated eigenvalue without a full eigenspace");
      int k = 0;
      for (int r = 1; r < 3; ++r)
        if (n.row(r).norm() > n.row(k).norm()) k = r;
      const CVec3 rho = n.row(k);
      int kk = 0;
      for (int r = 1; r < 3; ++r)
        if (std::abs(rho[r]) > std::abs(rho[kk])) kk = r;
      std::array<CVec3, 2> basis;
      int bi = 0;
      for (int a = 0; a < 3; ++a) {
        if (a == kk) continue;
        CVec3 e;
        e[a] = 1.0;
        basis[bi++] = wedge(rho, e);
      }
      auto ob = detail::form_orthogonalize(basis[0], basis[1], form);
      int slot = 0;
      for (int j = 0; j < 3; ++j)
        if (rep[j] == rep[i]) {
          es.pairs[j] = {lam[j], ob[slot++], PointType::Null};
          done[j] = true;
        }
    } else {
      if (nn > rank_tol)
        throw Error(ErrorCode::DefectiveMatrix, "triple eigenvalue on a non-scalar matrix");
      auto he = hermitian_eigen(form.matrix());
      for (int j = 0; j < 3; ++j) {
        es.pairs[j] = {lam[j], he.vectors.col(j), PointType::Null};
        done[j] = true;
      }
    }
  }
  for (auto& p : es.pairs) p.type = point_type(p.vector, form);

  std::stable_sort(es.pairs.begin(), es.pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    double aa = wrap_2pi(std::arg(a.value)), ab = wrap_2pi(std::arg(b.value));
    if (std::abs(aa - ab) > 1e-12) return aa < ab;
    if (std::abs(std::abs(a.value) - std::abs(b.value)) > 1e-12) return std::abs(a.value) < std::abs(b.value);
    return static_cast<int>(a.type) < static_cast<int>(b.type);
  });
  return es;
}

}  // namespace chlab
