#pragma once

#include <array>
#include <cmath>

#include "chlab/error.hpp"
#include "chlab/hermitian_core.hpp"
#include "chlab/linalg.hpp"

namespace chlab {

/// Determinant-one matrix preserving a signature-(2,1) form.
class SU21Element {
 public:
  SU21Element() : m_(CMat3::identity()), trace_(3.0) {}

  explicit SU21Element(const CMat3& m, const HermitianForm& form = {}) : m_(m), form_(form) {
    if (!m.is_finite()) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
    const double scale = std::max(1.0, m.norm() * m.norm());
    if (std::abs(m.det() - 1.0) > 1e-10 * scale)
      throw Error(ErrorCode::NotFormPreserving, "determinant is not one");
    const CMat3 k = m.adjoint() * form.matrix() * m - form.matrix();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (std::abs(k(i, j)) > 1e-10 * scale)
          throw Error(ErrorCode::NotFormPreserving, "matrix does not preserve the form");
    trace_ = m.trace();
  }

  /// Wraps a matrix already known to lie in SU(2,1) up to rounding.
  static SU21Element trusted(const CMat3& m, const HermitianForm& form = {}) {
    SU21Element e;
    e.m_ = m;
    e.form_ = form;
    e.trace_ = m.trace();
    return e;
  }

  const CMat3& matrix() const { return m_; }
  const HermitianForm& form() const { return form_; }
  cplx trace() const { return trace_; }

  /// G^{-1} M^* G.
  SU21Element inverse() const {
    return trusted(form_.inverse_matrix() * m_.adjoint() * form_.matrix(), form_);
  }

  SU21Element operator*(const SU21Element& o) const { return trusted(m_ * o.m_, form_); }
  SU21Element scaled(cplx cube_root_of_unity) const { return trusted(cube_root_of_unity * m_, form_); }

  /// Same element moved to another frame: returns P M P^{-1} with form P^{-*} G P^{-1}.
  SU21Element conjugated(const CMat3& p, const HermitianForm& target) const {
    return trusted(p * m_ * p.inverse(), target);
  }

 private:
  CMat3 m_;
  HermitianForm form_;
  cplx trace_;
};

inline SU21Element power(const SU21Element& a, int n) { return SU21Element::trusted(power(a.matrix(), n), a.form()); }

/// Distance between the projective classes of two invertible matrices: both are scaled to
/// determinant one and compared up to a cube root of unity, relative to their size.
inline double projective_matrix_distance(const CMat3& a, const CMat3& b) {
  const CMat3 an = a / principal_cbrt(a.det()), bn = b / principal_cbrt(b.det());
  return distance_mod_omega(an, bn) / std::max(1.0, std::max(an.norm(), bn.norm()));
}

/// Distance from M to the nearest scalar multiple of the identity, relative to |M|.
inline double scalar_distance(const CMat3& m) {
  const cplx s = m.trace() / 3.0;
  return (m - s * CMat3::identity()).norm() / std::max(1.0, m.norm());
}

/// The three unit-determinant rescalings of a projectively form-preserving matrix,
/// starting from the principal cube root of det M.
inline std::array<SU21Element, 3> su21_lift(const CMat3& m, const HermitianForm& form = {}) {
  if (!m.is_finite()) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
  const cplx det = m.det();
  if (std::abs(det) == 0.0) throw Error(ErrorCode::NotFormPreserving, "singular matrix");
  const CMat3& g = form.matrix();
  const CMat3 k = m.adjoint() * g * m;
  const double mu = (k * form.inverse_matrix()).trace().real() / 3.0;
  if (!(mu > 0.0) || (k - mu * g).norm() > 1e-10 * mu * g.norm())
    throw Error(ErrorCode::NotFormPreserving, "matrix does not preserve the form up to a positive scalar");
  const CMat3 base = m / principal_cbrt(det);
  return {SU21Element::trusted(base, form), SU21Element::trusted(omega() * base, form),
          SU21Element::trusted(omega() * omega() * base, form)};
}

}  // namespace chlab
