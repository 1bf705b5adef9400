#include "gwish/zonal.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "gwish/errors.hpp"

namespace gwish {

namespace {

ZonalTable build_table(int degree, int nvars) {
  ZonalTable t;
  t.degree = degree;
  t.nvars = nvars;
  t.basis = partitions_of(degree, nvars);
  const std::size_t m = t.basis.size();

  // op[col] = D* m_{basis[col]}
  std::vector<RationalSymPoly> op;
  op.reserve(m);
  for (const auto& lambda : t.basis) {
    op.push_back(operator_apply(RationalSymPoly::monomial(lambda, nvars)));
    for (const auto& [mu, c] : op.back().coeffs()) {
      if (!dominance_leq(mu, lambda)) {
        throw Error("D* m_" + lambda.to_string() + " has a term m_" + mu.to_string() + " above it in dominance");
      }
    }
  }
  std::vector<Rational> diag(m);
  for (std::size_t i = 0; i < m; ++i) {
    diag[i] = op[i].coeff(t.basis[i]);
    const Partition& k = t.basis[i];
    Rational expect = Rational(degree) * (nvars - 1);
    for (int r = 0; r < k.length(); ++r) expect += Rational(k[r]) * (k[r] - (r + 1));
    if (diag[i] != expect) throw Error("zonal: unexpected D* eigenvalue for " + k.to_string());
    t.eigenvalue[t.basis[i]] = diag[i];
  }

  // Unit-leading eigenvectors. Basis is descending lex, a linear extension of
  // dominance, so entries below position k only depend on earlier ones.
  std::vector<std::vector<Rational>> vec(m, std::vector<Rational>(m));
  for (std::size_t k = 0; k < m; ++k) {
    const Rational& e = diag[k];
    vec[k][k] = 1;
    for (std::size_t i = k + 1; i < m; ++i) {
      const Partition& mu = t.basis[i];
      if (!dominance_leq(mu, t.basis[k])) continue;
      Rational rhs = 0;
      for (std::size_t j = k; j < i; ++j) {
        if (vec[k][j] != 0) rhs -= op[j].coeff(mu) * vec[k][j];
      }
      if (diag[i] == e) {
        throw DegeneracyError("zonal: eigenvalue of " + t.basis[k].to_string() + " coincides with that of " +
                              mu.to_string());
      }
      vec[k][i] = rhs / (diag[i] - e);
    }
  }

  // Scales: sum_k a_k vec_k = p_1^degree, solved top-down.
  const RationalSymPoly target = power_sum_power(degree, nvars);
  std::vector<Rational> scale(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational r = target.coeff(t.basis[i]);
    for (std::size_t k = 0; k < i; ++k) r -= scale[k] * vec[k][i];
    scale[i] = r;
    if (r == 0) throw DegeneracyError("zonal: vanishing normalisation for " + t.basis[i].to_string());
  }
  for (std::size_t k = 0; k < m; ++k) {
    RationalSymPoly y(degree, nvars);
    for (std::size_t i = k; i < m; ++i)
      if (vec[k][i] != 0) y.add(t.basis[i], scale[k] * vec[k][i]);
    t.zonal.emplace(t.basis[k], std::move(y));
  }
  return t;
}

struct Cache {
  std::shared_mutex mutex;
  std::map<std::pair<int, int>, std::shared_ptr<const ZonalTable>> tables;
};

Cache& cache() {
  static Cache c;
  return c;
}

}  // namespace

std::shared_ptr<const ZonalTable> zonal_table(int degree, int nvars, const ZonalOptions& opts) {
  if (degree < 0 || nvars < 1) throw ParameterError("zonal_table: need degree >= 0 and N >= 1");
  if (degree > opts.max_degree) {
    throw ParameterError("zonal degree " + std::to_string(degree) + " exceeds the cap " +
                         std::to_string(opts.max_degree) + " (raise it with --max-degree)");
  }
  auto& c = cache();
  const auto key = std::make_pair(degree, nvars);
  {
    std::shared_lock lock(c.mutex);
    if (auto it = c.tables.find(key); it != c.tables.end()) return it->second;
  }
  auto built = std::make_shared<const ZonalTable>(build_table(degree, nvars));
  std::unique_lock lock(c.mutex);
  auto [it, inserted] = c.tables.emplace(key, std::move(built));
  return it->second;
}

namespace {

const ZonalTable& table_for(const Partition& kappa, int nvars, const ZonalOptions& opts,
                            std::shared_ptr<const ZonalTable>& keep) {
  if (kappa.length() > nvars) {
    throw ParameterError("zonal: partition " + kappa.to_string() + " has more than N = " + std::to_string(nvars) +
                         " parts");
  }
  keep = zonal_table(kappa.size(), nvars, opts);
  return *keep;
}

}  // namespace

const RationalSymPoly& zonal(const Partition& kappa, int nvars, const ZonalOptions& opts) {
  std::shared_ptr<const ZonalTable> keep;
  // Tables are never evicted, so the reference outlives `keep`.
  return table_for(kappa, nvars, opts, keep).zonal.at(kappa);
}

Rational zonal_eigenvalue(const Partition& kappa, int nvars, const ZonalOptions& opts) {
  std::shared_ptr<const ZonalTable> keep;
  return table_for(kappa, nvars, opts, keep).eigenvalue.at(kappa);
}

double zonal_eval(const Partition& kappa, const std::vector<double>& x, const ZonalOptions& opts) {
  return zonal(kappa, static_cast<int>(x.size()), opts).eval(x);
}

Rational zonal_at_ones(const Partition& kappa, int nvars, const ZonalOptions& opts) {
  return zonal(kappa, nvars, opts).at_ones();
}

double zonal_ratio(const Partition& kappa, const std::vector<double>& x, const ZonalOptions& opts) {
  const auto& y = zonal(kappa, static_cast<int>(x.size()), opts);
  return y.eval(x) / static_cast<double>(y.at_ones());
}

double rank_one_genfun_check(int nvars, int kmax, double t, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != nvars) throw ParameterError("rank_one_genfun_check: x must have N entries");
  double xmax = 0.0;
  for (double v : x) xmax = std::max(xmax, std::abs(v));
  if (!(std::abs(t) * xmax < 1.0)) throw ParameterError("rank_one_genfun_check: series diverges (|t| max|x| >= 1)");
  double closed = 1.0;
  for (double v : x) closed /= std::sqrt(1.0 - t * v);
  ZonalOptions opts;
  opts.max_degree = std::max(opts.max_degree, kmax);
  double series = 0.0;
  double coef = 1.0;  // (1/2)_k / k!
  double tk = 1.0;
  for (int k = 0; k <= kmax; ++k) {
    const Partition single = k == 0 ? Partition{} : Partition{k};
    series += coef * zonal_eval(single, x, opts) * tk;
    coef *= (0.5 + k) / (k + 1.0);
    tk *= t;
  }
  return std::abs(closed - series);
}

}  // namespace gwish
