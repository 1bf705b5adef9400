#pragma once

#include <map>
#include <memory>
#include <vector>

#include "gwish/partition.hpp"
#include "gwish/sympoly.hpp"

namespace gwish {

struct ZonalOptions {
  /// Largest |kappa| the engine will build (CLI flag --max-degree).
  int max_degree = 12;
};

/// All zonal polynomials of one degree in N variables, plus the eigenvalues of
/// D* read off the diagonal of its (dominance-triangular) monomial matrix.
struct ZonalTable {
  int degree = 0;
  int nvars = 0;
  std::vector<Partition> basis;  // descending lexicographic
  std::map<Partition, Rational> eigenvalue;
  std::map<Partition, RationalSymPoly> zonal;
};

/// Builds (or fetches from the process-wide cache) the degree-d table.
///
/// Each eigenvector of D* is back-substituted with unit leading coefficient,
/// then scales are fixed by solving the triangular system
/// sum_kappa a_kappa Yhat_kappa = p_1^d. Throws DegeneracyError if the
/// eigenvalue of kappa collides with that of a dominance-smaller partition,
/// ParameterError beyond the degree cap. Safe for concurrent callers.
std::shared_ptr<const ZonalTable> zonal_table(int degree, int nvars, const ZonalOptions& opts = {});

const RationalSymPoly& zonal(const Partition& kappa, int nvars, const ZonalOptions& opts = {});
Rational zonal_eigenvalue(const Partition& kappa, int nvars, const ZonalOptions& opts = {});
double zonal_eval(const Partition& kappa, const std::vector<double>& x, const ZonalOptions& opts = {});
Rational zonal_at_ones(const Partition& kappa, int nvars, const ZonalOptions& opts = {});

/// Y_kappa(x) / Y_kappa(1^N).
double zonal_ratio(const Partition& kappa, const std::vector<double>& x, const ZonalOptions& opts = {});

/// Deviation between prod_l (1 - t x_l)^{-1/2} and its truncated zonal series
/// sum_{k<=kmax} ((1/2)_k / k!) Y_(k)(x) t^k. ParameterError if |t| max|x| >= 1.
double rank_one_genfun_check(int nvars, int kmax, double t, const std::vector<double>& x);

}  // namespace gwish
