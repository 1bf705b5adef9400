#pragma once

#include <cstddef>
#include <vector>

#include "gwish/ensembles.hpp"
#include "gwish/linalg.hpp"
#include "gwish/parallel.hpp"
#include "gwish/partition.hpp"
#include "gwish/report.hpp"
#include "gwish/rng.hpp"
#include "gwish/special.hpp"
#include "gwish/stats.hpp"

namespace gwish {

struct HaarIntegral {
  MCEstimate estimate;
  /// Draws where a leading minor of G Lambda G^dagger was not positive; they
  /// contribute 0 to the mean.
  std::size_t out_of_support = 0;
};

/// Monte Carlo mean of prod_i det((G Lambda G^dagger)_i)^{e_i} over Haar G in
/// O(N) (double) or U(N) (cplx). Draw i uses stream.substream(i).
template <class Scalar>
HaarIntegral haar_power_integral(const std::vector<double>& exponents, const std::vector<double>& x,
                                 std::size_t reps, const RngStream& stream, Exec exec = Exec::Parallel);

/// Same with the q exponents of alpha for the field.
HaarIntegral haar_q_integral(const AlphaSpec& alpha, const std::vector<double>& x, FieldTag field, std::size_t reps,
                             const RngStream& stream, Exec exec = Exec::Parallel);

enum class GnMode { AsPrinted, GammaCorrected };

/// Closed form of the unitary group integral of q:
///   prod_l Gamma(l) det[x_j^{a_k}] / prod_{j<k} (a_j - a_k)(x_j - x_k),
/// divided further by prod Gamma(a_l + 1) in AsPrinted mode. Alphas and x
/// are sorted descending first. DegeneracyError if two alphas or two x agree
/// to 1e-10 (relative).
double gn_prediction(const AlphaSpec& alpha, const std::vector<double>& x, GnMode mode);

/// Orthogonal group integral of q for the alphas of g:
/// prod x^{-s/2} Y_kappa(x) / Y_kappa(1^N), kappa = (gamma - 1 + s)/2.
double real_spherical_prediction(const std::vector<double>& x, const GammaSpec& g);

/// Exponents of the integer-power function of kappa,
/// det(W_i)^{kappa_i - kappa_{i+1}}, padded to N.
std::vector<double> power_exponents(const Partition& kappa, int n);

/// Normalised spherical function on eigenvalues: zonal ratio (Real) or Schur
/// ratio s_kappa(x)/s_kappa(1^N) (Complex).
double spherical_ratio(const Partition& kappa, const std::vector<double>& x, FieldTag field);

/// Haar MC of phi_kappa(eig(Sigma^{1/2} G Lambda G^dagger Sigma^{1/2})) against
/// phi_kappa(Lambda) phi_kappa(Sigma). Passes iff |z| <= tol_sigma; an exact
/// estimate (zero error) must match to 1e-10 relative.
CheckReport splitting_identity_check(const Partition& kappa, const std::vector<double>& lambda,
                                     const std::vector<double>& sigma, FieldTag field, std::size_t reps,
                                     const RngStream& stream, double tol_sigma = 4.0, Exec exec = Exec::Parallel);

}  // namespace gwish
