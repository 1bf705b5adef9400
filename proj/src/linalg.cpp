#include "gwish/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gwish/errors.hpp"

namespace gwish {

FieldTag field_of(const AnyMatrix& m) {
  return std::holds_alternative<RealMatrix>(m) ? FieldTag::Real : FieldTag::Complex;
}

const char* to_string(FieldTag f) { return f == FieldTag::Real ? "real" : "complex"; }

FieldTag parse_field(const std::string& s) {
  if (s == "real") return FieldTag::Real;
  if (s == "complex") return FieldTag::Complex;
  throw ParameterError("unknown field '" + s + "' (expected real|complex)");
}

template <>
double gaussian<double>(RngStream& rng) {
  return rng.normal();
}

template <>
cplx gaussian<cplx>(RngStream& rng) {
  constexpr double kHalfSd = 0.70710678118654752440;
  const double re = rng.normal();
  const double im = rng.normal();
  return {kHalfSd * re, kHalfSd * im};
}

cplx gaussian(RngStream& rng, FieldTag field) {
  return field == FieldTag::Real ? cplx(gaussian<double>(rng), 0.0) : gaussian<cplx>(rng);
}

double gamma_draw(RngStream& rng, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw ParameterError("gamma_draw: shape and rate must be positive");
  }
  const bool boost = shape < 1.0;
  const double a = boost ? shape + 1.0 : shape;
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  double g = 0.0;
  for (;;) {
    const double z = rng.normal();
    double v = 1.0 + c * z;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform_open();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2 || std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) {
      g = d * v;
      break;
    }
  }
  if (boost) {
    g = std::exp(std::log(g) + std::log(rng.uniform_open()) / shape);
  }
  return g / rate;
}

template <class Scalar>
Matrix<Scalar> haar_matrix(RngStream& rng, int n) {
  if (n < 1) throw ShapeError("haar_matrix: n must be >= 1");
  Matrix<Scalar> z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) = gaussian<Scalar>(rng);
  Eigen::HouseholderQR<Matrix<Scalar>> qr(z);
  Matrix<Scalar> q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Scalar rjj = r(j, j);
    const double mag = std::abs(rjj);
    const Scalar phase = mag > 0.0 ? rjj / mag : Scalar(1.0);
    q.col(j) *= phase;
  }
  return q;
}

template <class Scalar>
Matrix<Scalar> symmetrized(const Matrix<Scalar>& m) {
  Matrix<Scalar> s = (m + m.adjoint()) * 0.5;
  return s;
}

template <class Scalar>
Spectrum eigvals_self_adjoint(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) throw ShapeError("eigvals_self_adjoint: matrix is not square");
  Spectrum out;
  if (m.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(symmetrized(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigvals_self_adjoint: iteration did not converge");
  const auto& ev = solver.eigenvalues();
  out.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

template <class Scalar>
Spectrum gram_spectrum(const Matrix<Scalar>& w) {
  Spectrum ev = eigvals_self_adjoint(w);
  double big = 0.0;
  for (double v : ev) big = std::max(big, std::abs(v));
  for (double& v : ev)
    if (v < 0.0 && v >= -1e-10 * big) v = 0.0;
  return ev;
}

namespace {

template <class Scalar>
Scalar det_small(const Matrix<Scalar>& m, int k) {
  switch (k) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    default:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }
}

}  // namespace

template <class Scalar>
std::vector<Scalar> leading_minor_dets(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) throw ShapeError("leading_minor_dets: matrix is not square");
  const int n = static_cast<int>(m.rows());
  std::vector<Scalar> dets(n);
  Matrix<Scalar> a = m;
  Scalar running(1.0);
  for (int k = 0; k < n; ++k) {
    const Scalar pivot = a(k, k);
    if (pivot == Scalar(0.0)) {
      for (int i = k; i < n; ++i) {
        dets[i] = i < 3 ? det_small<Scalar>(m, i + 1)
                        : Matrix<Scalar>(m.topLeftCorner(i + 1, i + 1)).partialPivLu().determinant();
      }
      return dets;
    }
    running *= pivot;
    dets[k] = running;
    for (int i = k + 1; i < n; ++i) {
      const Scalar f = a(i, k) / pivot;
      if (f == Scalar(0.0)) continue;
      a.row(i).tail(n - k - 1) -= f * a.row(k).tail(n - k - 1);
    }
  }
  return dets;
}

template <class Scalar>
double hermitian_defect(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

#define GWISH_INSTANTIATE(S)                                           \
  template Matrix<S> haar_matrix<S>(RngStream&, int);                  \
  template Matrix<S> symmetrized<S>(const Matrix<S>&);                 \
  template Spectrum eigvals_self_adjoint<S>(const Matrix<S>&);         \
  template Spectrum gram_spectrum<S>(const Matrix<S>&);                \
  template std::vector<S> leading_minor_dets<S>(const Matrix<S>&);     \
  template double hermitian_defect<S>(const Matrix<S>&);

GWISH_INSTANTIATE(double)
GWISH_INSTANTIATE(cplx)
#undef GWISH_INSTANTIATE

}  // namespace gwish
