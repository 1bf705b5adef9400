#pragma once

#include <optional>
#include <vector>

#include "gwish/linalg.hpp"

namespace gwish {

/// Parameter vector (alpha_1, ..., alpha_N) of the generalised Wishart
/// ensembles.
///
/// `GeneralReal` only requires alpha_i > -1. `OrderedInteger` additionally
/// carries the row count n and requires non-negative integers with
/// 1 + alpha_1 <= 2 + alpha_2 <= ... <= N + alpha_N <= n; this is the mode in
/// which the zero-patterned rectangular sampler exists. Both are checked here,
/// at construction.
class AlphaSpec {
 public:
  enum class Mode { GeneralReal, OrderedInteger };

  static AlphaSpec general(std::vector<double> alphas);
  static AlphaSpec ordered_integer(std::vector<int> alphas, int n);

  Mode mode() const noexcept { return mode_; }
  int size() const noexcept { return static_cast<int>(alphas_.size()); }
  const std::vector<double>& values() const noexcept { return alphas_; }
  double operator[](int k) const { return alphas_[static_cast<std::size_t>(k)]; }
  /// Row count n; only present in OrderedInteger mode.
  std::optional<int> rows() const noexcept { return rows_; }

  /// Same mode, alphas permuted by 'perm' (new[k] = old[perm[k]]). An
  /// OrderedInteger permutation that breaks the ordering downgrades to
  /// GeneralReal.
  AlphaSpec permuted(const std::vector<int>& perm) const;

 private:
  AlphaSpec(std::vector<double> a, Mode m, std::optional<int> n)
      : alphas_(std::move(a)), mode_(m), rows_(n) {}
  std::vector<double> alphas_;
  Mode mode_;
  std::optional<int> rows_;
};

/// Forced-zero mask of the n x N patterned matrix: (j,k) is zero iff j > k + alpha_k
/// (1-based).
class ZeroPattern {
 public:
  explicit ZeroPattern(const AlphaSpec& alpha);
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  /// 0-based (row, col).
  bool forced_zero(int row, int col) const { return mask_[static_cast<std::size_t>(col * rows_ + row)]; }
  int free_count() const noexcept;

 private:
  int rows_;
  int cols_;
  std::vector<bool> mask_;
};

/// Muttalib–Borodin parameterisation alpha_k = theta (k - 1) + c.
struct MBParams {
  double theta = 1.0;
  double c = 0.0;
  int N = 1;
};

/// alphas of the MB model; OrderedInteger (with the minimal n = N + alpha_N)
/// when theta and c are non-negative integers.
AlphaSpec mb_alpha(const MBParams& p);

/// Upper-triangular Y: |y_kk|^2 ~ Gamma((alpha_k+1)/2, 1/2) (real) or
/// Gamma(alpha_k+1, 1) (complex) with positive real diagonal, i.i.d. field
/// Gaussians strictly above.
template <class Scalar>
Matrix<Scalar> sample_triangular(RngStream& rng, const AlphaSpec& alpha);

/// n x N matrix, zero on the ZeroPattern, i.i.d. field Gaussians elsewhere.
/// Throws ModeError for GeneralReal alphas.
template <class Scalar>
Matrix<Scalar> sample_patterned(RngStream& rng, const AlphaSpec& alpha);

AnyMatrix sample_triangular(RngStream& rng, const AlphaSpec& alpha, FieldTag field);
AnyMatrix sample_patterned(RngStream& rng, const AlphaSpec& alpha, FieldTag field);

/// W = Y^dagger Y with exact conjugate symmetry and real diagonal.
template <class Scalar>
Matrix<Scalar> gram(const Matrix<Scalar>& y);
AnyMatrix gram(const AnyMatrix& y);

/// C = A^{-1/2} W A^{-1/2}, A = diag(W). Unit diagonal exactly. DomainError
/// on a non-positive diagonal entry.
template <class Scalar>
Matrix<Scalar> correlation(const Matrix<Scalar>& w);

/// X = L W L^dagger for invertible lower-triangular L.
template <class Scalar>
Matrix<Scalar> l_transform(const Matrix<Scalar>& w, const Matrix<Scalar>& l);
AnyMatrix l_transform(const AnyMatrix& w, const AnyMatrix& l);

/// Throws ParameterError unless L is square, lower triangular and has a
/// non-zero diagonal.
template <class Scalar>
void require_lower_triangular_invertible(const Matrix<Scalar>& l);

}  // namespace gwish
