#include "gwish/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gwish/errors.hpp"
#include "gwish/formulas.hpp"
#include "gwish/zonal.hpp"

namespace gwish {

namespace {

template <class Scalar>
Matrix<Scalar> conjugate_diag(const Matrix<Scalar>& g, const std::vector<double>& x) {
  Matrix<Scalar> gl = g;
  for (Eigen::Index k = 0; k < g.cols(); ++k) gl.col(k) *= x[static_cast<std::size_t>(k)];
  return symmetrized(Matrix<Scalar>(gl * g.adjoint()));
}

void require_positive_spectrum(const std::vector<double>& x, const char* who) {
  if (x.empty()) throw ParameterError(std::string(who) + ": empty spectrum");
  for (double v : x)
    if (!(v > 0.0)) throw DomainError(std::string(who) + ": spectrum must be positive");
}

}  // namespace

template <class Scalar>
HaarIntegral haar_power_integral(const std::vector<double>& exponents, const std::vector<double>& x,
                                 std::size_t reps, const RngStream& stream, Exec exec) {
  require_positive_spectrum(x, "haar_power_integral");
  if (exponents.size() != x.size()) throw ParameterError("haar_power_integral: exponent count differs from N");
  if (reps < 2) throw ParameterError("haar_power_integral: need at least 2 draws");
  const int n = static_cast<int>(x.size());
  struct Draw {
    double value = 0.0;
    bool ok = true;
  };
  const auto draws = map_indexed(
      reps,
      [&](std::size_t i) {
        RngStream rng = stream.substream(i);
        const Matrix<Scalar> w = conjugate_diag(haar_matrix<Scalar>(rng, n), x);
        const DensityValue v = power_function(w, exponents);
        return Draw{v.value(), v.in_support};
      },
      exec);
  std::vector<double> values(reps);
  HaarIntegral out;
  for (std::size_t i = 0; i < reps; ++i) {
    values[i] = draws[i].value;
    if (!draws[i].ok) ++out.out_of_support;
  }
  out.estimate = estimate(values);
  return out;
}

HaarIntegral haar_q_integral(const AlphaSpec& alpha, const std::vector<double>& x, FieldTag field, std::size_t reps,
                             const RngStream& stream, Exec exec) {
  if (static_cast<int>(x.size()) != alpha.size()) throw ParameterError("haar_q_integral: need N eigenvalues");
  const auto e = q_exponents(alpha, field);
  return field == FieldTag::Real ? haar_power_integral<double>(e, x, reps, stream, exec)
                                 : haar_power_integral<cplx>(e, x, reps, stream, exec);
}

double gn_prediction(const AlphaSpec& alpha, const std::vector<double>& x, GnMode mode) {
  const int n = alpha.size();
  if (static_cast<int>(x.size()) != n) throw ParameterError("gn_prediction: need N eigenvalues");
  require_positive_spectrum(x, "gn_prediction");
  std::vector<double> a = alpha.values(), xs = x;
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(xs.begin(), xs.end(), std::greater<>());
  auto close = [](double p, double q) { return std::abs(p - q) <= 1e-10 * std::max({1.0, std::abs(p), std::abs(q)}); };
  for (int k = 1; k < n; ++k) {
    if (close(a[k - 1], a[k])) throw DegeneracyError("gn_prediction: coincident alphas");
    if (close(xs[k - 1], xs[k])) throw DegeneracyError("gn_prediction: coincident eigenvalues");
  }
  double s = log_alternant(xs, a);
  for (int l = 1; l <= n; ++l) {
    s += std::lgamma(static_cast<double>(l));
    if (mode == GnMode::AsPrinted) s -= std::lgamma(a[l - 1] + 1.0);
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) s -= std::log(a[j] - a[k]) + std::log(xs[j] - xs[k]);
  return std::exp(s);
}

double real_spherical_prediction(const std::vector<double>& x, const GammaSpec& g) {
  if (static_cast<int>(x.size()) != g.size()) throw ParameterError("real_spherical_prediction: need N eigenvalues");
  require_positive_spectrum(x, "real_spherical_prediction");
  double pre = 1.0;
  if (g.s() == 1)
    for (double v : x) pre /= std::sqrt(v);
  return pre * zonal_ratio(g.kappa(), x);
}

std::vector<double> power_exponents(const Partition& kappa, int n) {
  if (kappa.length() > n) throw ParameterError("power_exponents: partition longer than N");
  std::vector<double> e(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e[i] = kappa[i] - kappa[i + 1];
  return e;
}

double spherical_ratio(const Partition& kappa, const std::vector<double>& x, FieldTag field) {
  if (field == FieldTag::Real) return zonal_ratio(kappa, x);
  return schur_eval(kappa, x) / static_cast<double>(schur_at_ones(kappa, static_cast<int>(x.size())));
}

namespace {

template <class Scalar>
std::vector<double> splitting_draws(const Partition& kappa, const std::vector<double>& lambda,
                                    const std::vector<double>& sigma, std::size_t reps, const RngStream& stream,
                                    Exec exec) {
  const int n = static_cast<int>(lambda.size());
  std::vector<double> root(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) root[i] = std::sqrt(sigma[i]);
  return map_indexed(
      reps,
      [&](std::size_t i) {
        RngStream rng = stream.substream(i);
        Matrix<Scalar> m = conjugate_diag(haar_matrix<Scalar>(rng, n), lambda);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) m(r, c) *= root[r] * root[c];
        return spherical_ratio(kappa, eigvals_self_adjoint(m), field_of_v<Scalar>);
      },
      exec);
}

}  // namespace

CheckReport splitting_identity_check(const Partition& kappa, const std::vector<double>& lambda,
                                     const std::vector<double>& sigma, FieldTag field, std::size_t reps,
                                     const RngStream& stream, double tol_sigma, Exec exec) {
  require_positive_spectrum(lambda, "splitting_identity_check");
  require_positive_spectrum(sigma, "splitting_identity_check");
  if (lambda.size() != sigma.size()) throw ParameterError("splitting_identity_check: spectra differ in size");
  if (reps < 2) throw ParameterError("splitting_identity_check: need at least 2 draws");
  const auto values = field == FieldTag::Real ? splitting_draws<double>(kappa, lambda, sigma, reps, stream, exec)
                                              : splitting_draws<cplx>(kappa, lambda, sigma, reps, stream, exec);
  const MCEstimate lhs = estimate(values);
  const double rhs = spherical_ratio(kappa, lambda, field) * spherical_ratio(kappa, sigma, field);

  CheckReport r;
  r.name = "splitting";
  r.reps = reps;
  r.seed = stream.master_seed();
  r.threshold = tol_sigma;
  r.params = {{"kappa", kappa.parts()}, {"lambda", lambda}, {"sigma", sigma}, {"field", to_string(field)}};
  // Round-off makes a constant integrand's error bar tiny but non-zero.
  const double exact_tol = 1e-10 * std::max(1.0, std::abs(rhs));
  if (lhs.std_err <= exact_tol) {
    r.statistic = std::abs(lhs.mean - rhs) <= exact_tol ? 0.0 : INFINITY;
  } else {
    r.statistic = std::abs(z_score(lhs, rhs));
  }
  r.details = {{"mc_mean", lhs.mean}, {"mc_stderr", lhs.std_err}, {"prediction", rhs}};
  r.decide();
  return r;
}

template HaarIntegral haar_power_integral<double>(const std::vector<double>&, const std::vector<double>&,
                                                  std::size_t, const RngStream&, Exec);
template HaarIntegral haar_power_integral<cplx>(const std::vector<double>&, const std::vector<double>&, std::size_t,
                                                const RngStream&, Exec);

}  // namespace gwish
