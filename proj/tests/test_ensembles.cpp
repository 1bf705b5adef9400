#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gwish/ensembles.hpp"
#include "gwish/errors.hpp"
#include "gwish/stats.hpp"

using namespace gwish;

namespace {

template <class F>
MCEstimate mc(std::size_t reps, F&& f, std::uint64_t seed = 3) {
  const RngStream base(seed, 0);
  std::vector<double> v(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    RngStream r = base.substream(i);
    v[i] = f(r);
  }
  return estimate(v);
}

}  // namespace

TEST_CASE("alpha validation") {
  CHECK_NOTHROW(AlphaSpec::general({-0.5, 2.3}));
  CHECK_THROWS_AS(AlphaSpec::general({-1.0}), ParameterError);
  CHECK_THROWS_AS(AlphaSpec::general({}), ParameterError);
  CHECK_NOTHROW(AlphaSpec::ordered_integer({0, 2}, 4));
  try {
    AlphaSpec::ordered_integer({2, 0}, 4);
    FAIL("expected ConstraintError");
  } catch (const ConstraintError& e) {
    CHECK(e.index() == 1);
  }
  try {
    AlphaSpec::ordered_integer({0, 1, 4}, 6);  // 3 + 4 = 7 > 6
    FAIL("expected ConstraintError");
  } catch (const ConstraintError& e) {
    CHECK(e.index() == 2);
  }
  CHECK_THROWS_AS(AlphaSpec::ordered_integer({-1, 2}, 4), ConstraintError);
}

TEST_CASE("Muttalib-Borodin alphas") {
  CHECK(mb_alpha({1, 0, 3}).values() == std::vector<double>{0, 1, 2});
  CHECK(mb_alpha({0, 0, 2}).values() == std::vector<double>{0, 0});
  const AlphaSpec a = mb_alpha({2, 1, 3});
  CHECK(a.values() == std::vector<double>{1, 3, 5});
  CHECK(a.mode() == AlphaSpec::Mode::OrderedInteger);
  CHECK(*a.rows() == 8);
  CHECK(mb_alpha({0.5, 0.2, 3}).mode() == AlphaSpec::Mode::GeneralReal);
}

TEST_CASE("permuting alphas") {
  const AlphaSpec a = AlphaSpec::ordered_integer({0, 2, 5}, 8);
  const AlphaSpec p = a.permuted({2, 0, 1});
  CHECK(p.values() == std::vector<double>{5, 0, 2});
  CHECK(p.mode() == AlphaSpec::Mode::GeneralReal);
  CHECK_THROWS_AS(a.permuted({0, 0, 1}), ParameterError);
}

TEST_CASE("triangular sampler structure and diagonal laws") {
  const auto real0 = mc(100000, [](RngStream& r) {
    const RealMatrix y = sample_triangular<double>(r, AlphaSpec::general({0.0}));
    return y(0, 0) * y(0, 0);
  });
  CHECK(std::abs(z_score(real0, 1.0)) < 4.0);
  const auto cplx2 = mc(100000, [](RngStream& r) {
    const ComplexMatrix y = sample_triangular<cplx>(r, AlphaSpec::general({2.0}));
    return std::norm(y(0, 0));
  });
  CHECK(std::abs(z_score(cplx2, 3.0)) < 4.0);

  RngStream r(1, 0);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix y = sample_triangular<cplx>(r, AlphaSpec::general({0.5, -0.5, 3.0, 1.0}));
    for (int i = 0; i < 4; ++i) {
      CHECK(y(i, i).imag() == 0.0);
      CHECK(y(i, i).real() > 0.0);
      for (int j = 0; j < i; ++j) CHECK(y(i, j) == cplx(0.0));
    }
  }
  CHECK(field_of(sample_triangular(r, AlphaSpec::general({1.0}), FieldTag::Complex)) == FieldTag::Complex);
}

TEST_CASE("zero pattern and patterned sampler") {
  const AlphaSpec a = AlphaSpec::ordered_integer({0, 2}, 4);
  const ZeroPattern z(a);
  CHECK(z.rows() == 4);
  CHECK(z.cols() == 2);
  CHECK_FALSE(z.forced_zero(0, 0));
  for (int j = 1; j < 4; ++j) CHECK(z.forced_zero(j, 0));
  for (int j = 0; j < 4; ++j) CHECK_FALSE(z.forced_zero(j, 1));
  CHECK(z.free_count() == 5);

  // Full Wishart: alpha_k = n - k, nothing forced.
  const ZeroPattern full(AlphaSpec::ordered_integer({4, 3, 2}, 5));
  CHECK(full.free_count() == 15);

  RngStream r(2, 0);
  const AlphaSpec b = AlphaSpec::ordered_integer({1, 2, 4}, 7);
  const ZeroPattern zb(b);
  for (int t = 0; t < 50; ++t) {
    const RealMatrix y = sample_patterned<double>(r, b);
    REQUIRE(y.rows() == 7);
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 7; ++j) {
        if (zb.forced_zero(j, k)) CHECK(y(j, k) == 0.0);
        else CHECK(y(j, k) != 0.0);
      }
  }
  CHECK_THROWS_AS(sample_patterned<double>(r, AlphaSpec::general({0.0, 2.0})), ModeError);
}

TEST_CASE("gram matrices") {
  CHECK(gram(RealMatrix(RealMatrix::Identity(2, 2))) == RealMatrix::Identity(2, 2));
  RngStream r(4, 0);
  for (int t = 0; t < 30; ++t) {
    const ComplexMatrix y = sample_triangular<cplx>(r, AlphaSpec::general({1.0, 0.3, 2.0}));
    const ComplexMatrix w = gram(y);
    CHECK(hermitian_defect(w) == 0.0);
    const auto m = leading_minor_dets(w);
    double p = 1.0;
    for (int i = 0; i < 3; ++i) {
      p *= std::norm(y(i, i));
      CHECK(std::abs(m[i] - p) < 1e-10 * p);
    }
    RealMatrix yr(4, 2);
    for (int i = 0; i < yr.size(); ++i) yr(i) = r.normal();
    for (double v : gram_spectrum(gram(yr))) CHECK(v >= 0.0);
  }
}

TEST_CASE("correlation matrices") {
  RealMatrix w(2, 2);
  w << 4, 0, 0, 9;
  CHECK(correlation(w) == RealMatrix::Identity(2, 2));
  w << 4, 2, 2, 9;
  const RealMatrix c = correlation(w);
  CHECK(c(0, 0) == 1.0);
  CHECK(c(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  w << 0, 0, 0, 1;
  CHECK_THROWS_AS(correlation(w), DomainError);

  RngStream r(5, 0);
  for (int t = 0; t < 50; ++t) {
    const RealMatrix cw = correlation(gram(sample_triangular<double>(r, AlphaSpec::general({1.0, 2.0, 0.5}))));
    for (int i = 0; i < 3; ++i) CHECK(cw(i, i) == 1.0);
    for (double v : eigvals_self_adjoint(cw)) CHECK(v > 0.0);
  }
}

TEST_CASE("L transform") {
  RealMatrix w(2, 2);
  w << 2, 0.5, 0.5, 1;
  CHECK(l_transform(w, RealMatrix(RealMatrix::Identity(2, 2))) == w);
  RealMatrix l = RealMatrix::Zero(2, 2);
  l.diagonal() << 2, 3;
  RealMatrix id = RealMatrix::Identity(2, 2);
  RealMatrix expect = RealMatrix::Zero(2, 2);
  expect.diagonal() << 4, 9;
  CHECK(l_transform(id, l) == expect);
  RealMatrix upper(2, 2);
  upper << 1, 1, 0, 1;
  CHECK_THROWS_AS(l_transform(id, upper), ParameterError);
  RealMatrix singular = RealMatrix::Zero(2, 2);
  singular(0, 0) = 1;
  CHECK_THROWS_AS(l_transform(id, singular), ParameterError);

  RngStream r(6, 0);
  const ComplexMatrix wc = gram(sample_triangular<cplx>(r, AlphaSpec::general({1.0, 2.0, 3.0})));
  ComplexMatrix lc = ComplexMatrix::Zero(3, 3);
  lc << cplx(1.2, 0.1), 0, 0, cplx(0.3, -1), cplx(0.7, 0), 0, cplx(2, 1), cplx(-1, 0.5), cplx(0.9, 0.2);
  const ComplexMatrix x = l_transform(wc, lc);
  CHECK(hermitian_defect(x) == 0.0);
  const double lhs = x.determinant().real();
  const double rhs = std::norm(lc.determinant()) * wc.determinant().real();
  CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
}

TEST_CASE("classical complex Wishart moments") {
  // alpha_k = n - k, n = 5, N = 3.
  const AlphaSpec a = AlphaSpec::ordered_integer({4, 3, 2}, 5);
  const int n = 5, big_n = 3;
  for (bool patterned : {false, true}) {
    std::vector<double> t1, t2;
    const RngStream base(8, patterned);
    for (std::size_t i = 0; i < 100000; ++i) {
      RngStream r = base.substream(i);
      const ComplexMatrix y = patterned ? sample_patterned<cplx>(r, a) : sample_triangular<cplx>(r, a);
      const ComplexMatrix w = gram(y);
      t1.push_back(w.trace().real());
      t2.push_back((w * w).trace().real());
    }
    CHECK(std::abs(z_score(estimate(t1), n * big_n)) < 4.0);
    CHECK(std::abs(z_score(estimate(t2), n * big_n * (n + big_n))) < 4.0);
  }
}
