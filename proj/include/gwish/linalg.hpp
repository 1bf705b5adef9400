#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "gwish/rng.hpp"

namespace gwish {

enum class FieldTag { Real, Complex };

using cplx = std::complex<double>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<cplx>;

template <class Scalar>
inline constexpr FieldTag field_of_v = FieldTag::Real;
template <>
inline constexpr FieldTag field_of_v<cplx> = FieldTag::Complex;

/// A matrix whose field is only known at run time (CLI, sample files).
/// Binary operations on two of these throw ModeError on mixed fields.
using AnyMatrix = std::variant<RealMatrix, ComplexMatrix>;

FieldTag field_of(const AnyMatrix& m);
const char* to_string(FieldTag f);
FieldTag parse_field(const std::string& s);

/// Eigenvalues of a self-adjoint matrix, ascending.
using Spectrum = std::vector<double>;

// --- sampling --------------------------------------------------------------

/// Standard Gaussian of the field: N(0,1) real, or real/imag parts N(0,1/2).
template <class Scalar>
Scalar gaussian(RngStream& rng);

cplx gaussian(RngStream& rng, FieldTag field);

/// Gamma(shape, rate) draw. Marsaglia–Tsang squeeze for shape >= 1, boosted
/// with U^{1/shape} below 1.
double gamma_draw(RngStream& rng, double shape, double rate);

/// Haar-distributed orthogonal (Real) or unitary (Complex) n x n matrix: QR of
/// a Ginibre matrix with the R-factor diagonal rotated onto the positive reals.
template <class Scalar>
Matrix<Scalar> haar_matrix(RngStream& rng, int n);

// --- spectral --------------------------------------------------------------

/// (M + M^dagger) / 2.
template <class Scalar>
Matrix<Scalar> symmetrized(const Matrix<Scalar>& m);

/// Ascending eigenvalues of the symmetrized input. Throws ShapeError if M is
/// not square.
template <class Scalar>
Spectrum eigvals_self_adjoint(const Matrix<Scalar>& m);

/// Same, then clamps entries in [-1e-10 max|lambda|, 0) to zero. For Gram
/// matrices.
template <class Scalar>
Spectrum gram_spectrum(const Matrix<Scalar>& w);

/// (det M_1, ..., det M_N) for the leading i x i blocks, one elimination pass
/// without pivoting. A zero pivot falls back to cofactor expansion (N <= 3) or
/// per-block LU.
template <class Scalar>
std::vector<Scalar> leading_minor_dets(const Matrix<Scalar>& m);

/// Largest |M_ij - conj(M_ji)|.
template <class Scalar>
double hermitian_defect(const Matrix<Scalar>& m);

}  // namespace gwish
