#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "gwish/ensembles.hpp"
#include "gwish/linalg.hpp"
#include "gwish/special.hpp"

namespace gwish {

/// A density value kept in log scale. Outside the support the log is -inf
/// and `in_support` is false; the two always agree.
struct DensityValue {
  double log_density = -std::numeric_limits<double>::infinity();
  bool in_support = false;

  static DensityValue outside() { return {}; }
  static DensityValue at(double log_value) {
    return std::isinf(log_value) && log_value < 0 ? outside() : DensityValue{log_value, true};
  }
  double value() const { return in_support ? std::exp(log_density) : 0.0; }
};

/// Which normalising constant a density uses: the closed form exactly as
/// published, or the corrected one that the constant audit validates.
enum class ConstantMode { AsPrinted, Audited };

/// log of 2^{sum (a_j+1)/2} (2 pi)^{N(N-1)/4} prod Gamma((a_j+1)/2).
double norm_const_real(const AlphaSpec& alpha);
/// log of pi^{N(N-1)/2} prod Gamma(a_j+1).
double norm_const_complex(const AlphaSpec& alpha);
double norm_const(const AlphaSpec& alpha, FieldTag field);

/// Exponents of the leading minors in q: real (a_i - a_{i+1} - 1)/2 and
/// (a_N - 1)/2; complex a_i - a_{i+1} - 1 and a_N.
std::vector<double> q_exponents(const AlphaSpec& alpha, FieldTag field);

/// log prod_i det(W_i)^{e_i} over leading i x i blocks; outside the support
/// if any leading minor is not positive.
template <class Scalar>
DensityValue power_function(const Matrix<Scalar>& w, const std::vector<double>& exponents);

template <class Scalar>
DensityValue q_factor(const Matrix<Scalar>& w, const AlphaSpec& alpha);

/// Joint element density of W = Y^dagger Y: q(W) e^{-tr W / r} / norm, with
/// r = 2 (real) or 1 (complex).
template <class Scalar>
DensityValue element_pdf(const Matrix<Scalar>& w, const AlphaSpec& alpha);

/// Density of the off-diagonal entries of C = A^{-1/2} W A^{-1/2}. AsPrinted
/// uses prod Gamma((a_l+l)/2)/norm (real) or prod Gamma(a_l+l)/norm
/// (complex); Audited multiplies the real constant by 2^{sum (a_l+l)/2}.
/// DomainError if the diagonal is not 1 to 1e-12.
template <class Scalar>
DensityValue correlation_pdf(const Matrix<Scalar>& c, const AlphaSpec& alpha, ConstantMode mode);

/// log of the correlation constant alone.
double correlation_log_constant(const AlphaSpec& alpha, FieldTag field, ConstantMode mode);

/// Density of X = L W L^dagger. The L-dependent factor is
/// prod_{i<N} det(_{N-i}M)^{e'_i} det(M)^{-(a_1+1)/r'} with bottom-right
/// minors _k M; AsPrinted takes M = L L^dagger, Audited M = L^dagger L (the
/// two agree for diagonal L). The trace term is tr(X (L L^dagger)^{-1}).
template <class Scalar>
DensityValue transformed_pdf(const Matrix<Scalar>& x, const AlphaSpec& alpha, const Matrix<Scalar>& l,
                             ConstantMode mode = ConstantMode::Audited);

/// Unordered eigenvalue density of the complex ensemble with distinct alphas:
/// det[x_j^{a_k}] Delta(x) prod e^{-x} / (N! prod Gamma(a_l+1) prod (a_j-a_k)).
/// DegeneracyError on repeated alphas.
DensityValue eig_pdf_complex(const std::vector<double>& x, const AlphaSpec& alpha);

/// Muttalib–Borodin eigenvalue density prod x^c e^{-x} Delta(x) Delta(x^theta)
/// / Z. AsPrinted Z = prod l! Gamma(theta(l-1)+c+1); Audited also carries the
/// theta^{N(N-1)/2} that makes it integrate to one. DegeneracyError for
/// theta = 0 with N >= 2 (the density vanishes identically).
DensityValue mb_eig_pdf(const std::vector<double>& x, const MBParams& p, ConstantMode mode = ConstantMode::Audited);

/// Unordered eigenvalue density of the real ensemble with alphas from gamma,
/// written through the zonal ratio of kappa = (gamma - 1 + s)/2.
DensityValue eig_pdf_real_zonal(const std::vector<double>& x, const GammaSpec& g);

/// log det[x_j^{a_k}] with x and a both sorted descending, which makes the
/// alternant positive for distinct entries; -inf if it vanishes.
double log_alternant(std::vector<double> x, std::vector<double> a);

/// 2^{-N(N+1)/2} prod_j Gamma(3/2)/Gamma(1+j/2).
double c_N_constant(int n);

/// Real polynomial, ascending powers c_0..c_deg.
struct Polynomial {
  std::vector<double> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator()(double x) const;
};

/// E det(x - W) = sum_nu x^nu sum_{k<=nu} (-1)^{N-k}/((nu-k)! k!) prod_l (a_l+k+1).
Polynomial avg_charpoly(const AlphaSpec& alpha);

/// Gamma(theta k + k + 1) / (Gamma(theta k + 2) Gamma(k + 1)).
double fuss_catalan_moment(double theta, int k);

struct Residual {
  double abs = 0.0;
  double rel = 0.0;
};

/// det(x I - [[0, Y], [Y^dagger, 0]]) versus x^{n-N} prod (x^2 - s_l^2) with
/// singular values s_l of the n x N matrix Y (n >= N). `rel` divides by
/// |x|^{n-N} prod (x^2 + s_l^2), which bounds both sides.
template <class Scalar>
Residual bordered_charpoly_identity(const Matrix<Scalar>& y, double x);

}  // namespace gwish
