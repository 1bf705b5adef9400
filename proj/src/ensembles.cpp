#include "gwish/ensembles.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "gwish/errors.hpp"

namespace gwish {

AlphaSpec AlphaSpec::general(std::vector<double> alphas) {
  if (alphas.empty()) throw ParameterError("alpha must have at least one entry");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > -1.0) || !std::isfinite(alphas[i])) {
      std::ostringstream os;
      os << "alpha_" << i + 1 << " = " << alphas[i] << " must exceed -1";
      throw ParameterError(os.str());
    }
  }
  return AlphaSpec(std::move(alphas), Mode::GeneralReal, std::nullopt);
}

AlphaSpec AlphaSpec::ordered_integer(std::vector<int> alphas, int n) {
  if (alphas.empty()) throw ParameterError("alpha must have at least one entry");
  const int big_n = static_cast<int>(alphas.size());
  if (n < big_n) throw ParameterError("row count n must be >= N");
  for (int k = 0; k < big_n; ++k) {
    if (alphas[k] < 0) {
      throw ConstraintError("alpha_" + std::to_string(k + 1) + " must be a non-negative integer", k);
    }
    if (k > 0 && (k + alphas[k - 1]) > (k + 1 + alphas[k])) {
      throw ConstraintError("ordering violated at index " + std::to_string(k + 1) + ": " +
                                std::to_string(k) + "+alpha_" + std::to_string(k) + " = " +
                                std::to_string(k + alphas[k - 1]) + " > " + std::to_string(k + 1) +
                                "+alpha_" + std::to_string(k + 1) + " = " +
                                std::to_string(k + 1 + alphas[k]),
                            k);
    }
  }
  if (big_n + alphas.back() > n) {
    throw ConstraintError("ordering violated at index " + std::to_string(big_n) + ": N+alpha_N = " +
                              std::to_string(big_n + alphas.back()) + " > n = " + std::to_string(n),
                          big_n - 1);
  }
  std::vector<double> a(alphas.begin(), alphas.end());
  return AlphaSpec(std::move(a), Mode::OrderedInteger, n);
}

AlphaSpec AlphaSpec::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != size()) throw ParameterError("permutation length mismatch");
  std::vector<double> out(perm.size());
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    const int p = perm[k];
    if (p < 0 || p >= size() || seen[p]) throw ParameterError("not a permutation");
    seen[p] = true;
    out[k] = alphas_[p];
  }
  if (mode_ == Mode::OrderedInteger) {
    std::vector<int> ints(out.begin(), out.end());
    try {
      return ordered_integer(std::move(ints), *rows_);
    } catch (const ConstraintError&) {
    }
  }
  return general(std::move(out));
}

ZeroPattern::ZeroPattern(const AlphaSpec& alpha) {
  if (alpha.mode() != AlphaSpec::Mode::OrderedInteger) {
    throw ModeError("zero pattern requires OrderedInteger alphas with a row count");
  }
  rows_ = *alpha.rows();
  cols_ = alpha.size();
  mask_.assign(static_cast<std::size_t>(rows_ * cols_), false);
  for (int k = 0; k < cols_; ++k)
    for (int j = 0; j < rows_; ++j)
      mask_[static_cast<std::size_t>(k * rows_ + j)] = (j + 1) > (k + 1) + static_cast<int>(alpha[k]);
}

int ZeroPattern::free_count() const noexcept {
  int c = 0;
  for (bool b : mask_) c += b ? 0 : 1;
  return c;
}

AlphaSpec mb_alpha(const MBParams& p) {
  if (!(p.theta >= 0.0) || !(p.c > -1.0) || p.N < 1) {
    throw ParameterError("MB parameters need theta >= 0, c > -1, N >= 1");
  }
  std::vector<double> a(static_cast<std::size_t>(p.N));
  for (int k = 0; k < p.N; ++k) a[k] = p.theta * k + p.c;
  const bool integral = p.theta == std::floor(p.theta) && p.c == std::floor(p.c) && p.c >= 0.0;
  if (integral) {
    std::vector<int> ints(a.begin(), a.end());
    const int n = p.N + ints.back();
    return AlphaSpec::ordered_integer(std::move(ints), n);
  }
  return AlphaSpec::general(std::move(a));
}

namespace {

template <class Scalar>
constexpr double diag_shape(double alpha) {
  return field_of_v<Scalar> == FieldTag::Real ? 0.5 * (alpha + 1.0) : alpha + 1.0;
}

template <class Scalar>
constexpr double diag_rate() {
  return field_of_v<Scalar> == FieldTag::Real ? 0.5 : 1.0;
}

}  // namespace

template <class Scalar>
Matrix<Scalar> sample_triangular(RngStream& rng, const AlphaSpec& alpha) {
  const int n = alpha.size();
  Matrix<Scalar> y = Matrix<Scalar>::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    y(k, k) = Scalar(std::sqrt(gamma_draw(rng, diag_shape<Scalar>(alpha[k]), diag_rate<Scalar>())));
  }
  for (int k = 1; k < n; ++k)
    for (int j = 0; j < k; ++j) y(j, k) = gaussian<Scalar>(rng);
  return y;
}

template <class Scalar>
Matrix<Scalar> sample_patterned(RngStream& rng, const AlphaSpec& alpha) {
  const ZeroPattern pattern(alpha);
  Matrix<Scalar> y = Matrix<Scalar>::Zero(pattern.rows(), pattern.cols());
  for (int k = 0; k < pattern.cols(); ++k)
    for (int j = 0; j < pattern.rows(); ++j)
      if (!pattern.forced_zero(j, k)) y(j, k) = gaussian<Scalar>(rng);
  return y;
}

AnyMatrix sample_triangular(RngStream& rng, const AlphaSpec& alpha, FieldTag field) {
  if (field == FieldTag::Real) return sample_triangular<double>(rng, alpha);
  return sample_triangular<cplx>(rng, alpha);
}

AnyMatrix sample_patterned(RngStream& rng, const AlphaSpec& alpha, FieldTag field) {
  if (field == FieldTag::Real) return sample_patterned<double>(rng, alpha);
  return sample_patterned<cplx>(rng, alpha);
}

template <class Scalar>
Matrix<Scalar> gram(const Matrix<Scalar>& y) {
  const auto n = y.cols();
  Matrix<Scalar> w(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    w(j, j) = Scalar(y.col(j).squaredNorm());
    for (Eigen::Index i = 0; i < j; ++i) {
      const Scalar v = y.col(i).dot(y.col(j));  // conj(y_i) . y_j
      w(i, j) = v;
      if constexpr (field_of_v<Scalar> == FieldTag::Real) {
        w(j, i) = v;
      } else {
        w(j, i) = std::conj(v);
      }
    }
  }
  return w;
}

AnyMatrix gram(const AnyMatrix& y) {
  return std::visit([](const auto& m) -> AnyMatrix { return gram(m); }, y);
}

template <class Scalar>
Matrix<Scalar> correlation(const Matrix<Scalar>& w) {
  if (w.rows() != w.cols()) throw ShapeError("correlation: matrix is not square");
  const auto n = w.rows();
  std::vector<double> inv_sqrt(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = std::real(w(i, i));
    if (!(d > 0.0)) throw DomainError("correlation: diagonal entry " + std::to_string(i + 1) + " is not positive");
    inv_sqrt[i] = 1.0 / std::sqrt(d);
  }
  Matrix<Scalar> c(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    c(j, j) = Scalar(1.0);
    for (Eigen::Index i = 0; i < j; ++i) {
      const Scalar v = w(i, j) * (inv_sqrt[i] * inv_sqrt[j]);
      c(i, j) = v;
      if constexpr (field_of_v<Scalar> == FieldTag::Real) {
        c(j, i) = v;
      } else {
        c(j, i) = std::conj(v);
      }
    }
  }
  return c;
}

template <class Scalar>
void require_lower_triangular_invertible(const Matrix<Scalar>& l) {
  if (l.rows() != l.cols()) throw ParameterError("L must be square");
  for (Eigen::Index j = 0; j < l.cols(); ++j) {
    if (l(j, j) == Scalar(0.0)) throw ParameterError("L is singular (zero diagonal entry)");
    for (Eigen::Index i = 0; i < j; ++i)
      if (l(i, j) != Scalar(0.0)) throw ParameterError("L must be lower triangular");
  }
}

template <class Scalar>
Matrix<Scalar> l_transform(const Matrix<Scalar>& w, const Matrix<Scalar>& l) {
  require_lower_triangular_invertible(l);
  if (w.rows() != l.rows() || w.cols() != l.cols()) throw ShapeError("l_transform: size mismatch");
  Matrix<Scalar> x = l * w * l.adjoint();
  return symmetrized(x);
}

AnyMatrix l_transform(const AnyMatrix& w, const AnyMatrix& l) {
  if (field_of(w) != field_of(l)) throw ModeError("l_transform: mixed real and complex operands");
  if (field_of(w) == FieldTag::Real) return l_transform(std::get<RealMatrix>(w), std::get<RealMatrix>(l));
  return l_transform(std::get<ComplexMatrix>(w), std::get<ComplexMatrix>(l));
}

#define GWISH_INSTANTIATE(S)                                                   \
  template Matrix<S> sample_triangular<S>(RngStream&, const AlphaSpec&);       \
  template Matrix<S> sample_patterned<S>(RngStream&, const AlphaSpec&);        \
  template Matrix<S> gram<S>(const Matrix<S>&);                                \
  template Matrix<S> correlation<S>(const Matrix<S>&);                         \
  template Matrix<S> l_transform<S>(const Matrix<S>&, const Matrix<S>&);       \
  template void require_lower_triangular_invertible<S>(const Matrix<S>&);

GWISH_INSTANTIATE(double)
GWISH_INSTANTIATE(cplx)
#undef GWISH_INSTANTIATE

}  // namespace gwish
