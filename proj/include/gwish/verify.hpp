#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gwish/ensembles.hpp"
#include "gwish/formulas.hpp"
#include "gwish/linalg.hpp"
#include "gwish/parallel.hpp"
#include "gwish/report.hpp"
#include "gwish/rng.hpp"
#include "gwish/special.hpp"
#include "gwish/spherical.hpp"
#include "gwish/stats.hpp"

namespace gwish {

enum class Shape { Triangular, Patterned };
const char* to_string(Shape s);
Shape parse_shape(const std::string& s);

struct SamplerSpec {
  AlphaSpec alpha;
  FieldTag field = FieldTag::Real;
  Shape shape = Shape::Triangular;
};

/// W = Y^dagger Y for one draw.
AnyMatrix sample_gram(const SamplerSpec& spec, RngStream& rng);

/// Ascending spectra of `reps` Gram draws; draw i uses stream.substream(i).
std::vector<Spectrum> sample_spectra(const SamplerSpec& spec, std::size_t reps, const RngStream& stream,
                                     Exec exec = Exec::Parallel);

/// Estimates of E tr W^k, k = 1..k_max, from stored spectra.
std::vector<MCEstimate> moments_from_spectra(const std::vector<Spectrum>& spectra, int k_max);

std::vector<MCEstimate> spectral_moments(const SamplerSpec& spec, int k_max, std::size_t reps,
                                         const RngStream& stream, Exec exec = Exec::Parallel);

/// Coefficients c_0..c_{N-1} of det(x - D) from power sums of the
/// eigenvalues (Newton's identities); the monic leading term is implied.
std::vector<double> charpoly_from_spectrum(const Spectrum& x);

/// Shared knobs of every statistical check.
struct CheckOptions {
  std::uint64_t seed = 1;
  std::size_t reps = 100000;
  double tol_sigma = 4.0;
  Exec exec = Exec::Parallel;
};

/// Max relative residual of the bordered determinant identity over random
/// (n, N <= max_dim, x) triples, alternating fields; threshold 1e-8.
CheckReport check_bordered_identity(int trials, int max_dim, const CheckOptions& opt);

/// Spectral moments k <= 4 and entrywise E|W_jk|^2 of the triangular and
/// patterned samplers; statistic max |z|. `triangular_alpha` replaces the
/// triangular side's alphas (negative control). ModeError for GeneralReal.
CheckReport check_triangular_vs_patterned(const AlphaSpec& alpha, FieldTag field, const CheckOptions& opt,
                                          const std::optional<AlphaSpec>& triangular_alpha = std::nullopt);

/// Spectral moments k <= 4 under alpha and under a permutation of it (random
/// unless `perm` is given; new[k] = old[perm[k]]).
CheckReport check_alpha_symmetry(const AlphaSpec& alpha, FieldTag field, const CheckOptions& opt,
                                 const std::optional<std::vector<int>>& perm = std::nullopt);

/// MC coefficients of E det(x - W) against avg_charpoly(reference alpha).
CheckReport check_avg_charpoly(const SamplerSpec& spec, const CheckOptions& opt,
                               const std::optional<AlphaSpec>& reference_alpha = std::nullopt);

/// Readings of the rescaling applied to eigenvalues before comparing with
/// Fuss–Catalan moments.
enum class FcScaling {
  PowerOfScaled,  // (lambda / (N theta))^theta
  Literal,        // (lambda / (N theta)^theta)^theta
  Linear,         // lambda / (N theta)^theta
};
const char* to_string(FcScaling s);
FcScaling parse_fc_scaling(const std::string& s);
double fc_rescale(double lambda, double theta, int n, FcScaling s);

/// Averages rescaled lambda^k over eigenvalues and reps for k <= k_max and
/// compares with C_theta(k); statistic max_k |dev| / (stderr + 5 C_theta(k)/N),
/// threshold 1.
CheckReport check_fuss_catalan(const MBParams& p, FieldTag field, Shape shape, int k_max, FcScaling scaling,
                               const CheckOptions& opt);

/// Runs k = 1, 2 at every N in `dims` for each reading; a reading is
/// N-consistent if the criterion holds at every N. Passes iff exactly one
/// reading is consistent, recorded in details["chosen"].
CheckReport check_fc_scaling_selection(double theta, FieldTag field, const std::vector<int>& dims,
                                       const CheckOptions& opt);

/// N = 2 ensemble for the binned eigenvalue test: the sampler and the
/// unordered joint eigenvalue density it is tested against.
struct SmallNEnsemble {
  std::string label;
  SamplerSpec sampler;
  std::function<double(double, double)> density;
};
SmallNEnsemble complex_small_n(const AlphaSpec& alpha);
SmallNEnsemble real_small_n(const GammaSpec& gamma);

/// 2-D histogram of ordered eigenvalue pairs on [0, 3 E tr W]^2 against
/// cell integrals of the density. Statistic max |O - E| / sqrt(E) over cells
/// with E >= 50; threshold the two-sided Bonferroni normal bound at family
/// level 1e-3.
CheckReport check_eig_pdf_small_n(const SmallNEnsemble& ens, int bins, const CheckOptions& opt);

/// Unit diagonal on every draw and, at N = 2, a histogram of the off-diagonal
/// entry against correlation_pdf in the given mode.
CheckReport check_correlation(const AlphaSpec& alpha, FieldTag field, const CheckOptions& opt,
                              ConstantMode mode = ConstantMode::Audited);

enum class AuditTarget { RealCorr, ComplexCorr, RealEig, ComplexEig, Gn, Mb };
const char* to_string(AuditTarget t);
AuditTarget parse_audit_target(const std::string& s);
std::vector<AuditTarget> all_audit_targets();

/// Measures oracle / closed-form for the printed constant at each size and
/// asks which candidate correction explains every size. Quadrature oracles
/// must agree to 1e-6 relative, Haar MC oracles to tol_sigma standard errors.
/// Statistic: best candidate's worst normalised deviation; threshold 1.
CheckReport check_constant_audit(AuditTarget target, const std::vector<int>& sizes, const CheckOptions& opt);

/// Haar MC against both GN modes on a grid of random alphas and spectra per
/// N. Passes iff exactly one mode agrees on >= 95% of cells; details record
/// the winner and the N = 1 ratio MC/AsPrinted = Gamma(a+1).
CheckReport check_gn_adjudication(const std::vector<int>& dims, int n_alpha, int n_x, const CheckOptions& opt);

/// All weakly decreasing length-n gammas of one parity with |gamma| <= max_size.
std::vector<GammaSpec> same_parity_gammas(int n, int max_size);

/// Haar MC of q over O(N) against real_spherical_prediction for each gamma.
CheckReport check_real_spherical(const std::vector<GammaSpec>& gammas, const CheckOptions& opt);

/// Direct Haar MC of q_alpha against the integer-exponent power function of
/// kappa (times prod x^{-s/2}), independent draws.
CheckReport check_tilde_q(const std::vector<GammaSpec>& gammas, const CheckOptions& opt);

/// Optional overrides collected by the CLI; each check falls back to its own
/// defaults for anything unset.
struct VerifyRequest {
  CheckOptions opt;
  bool reps_set = false;
  std::optional<std::vector<double>> alpha;
  std::optional<int> rows;
  std::optional<int> dim;
  std::optional<double> theta;
  std::optional<double> c;
  std::optional<std::vector<int>> gamma;
  std::optional<FieldTag> field;
  std::optional<Shape> shape;
};

const std::vector<std::string>& check_names();

/// Runs one registered check ("all" runs each of them). ParameterError for
/// unknown names.
std::vector<CheckReport> run_check(const std::string& name, const VerifyRequest& req);

}  // namespace gwish
