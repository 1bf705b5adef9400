#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "gwish/errors.hpp"
#include "gwish/linalg.hpp"
#include "gwish/parallel.hpp"
#include "gwish/rng.hpp"
#include "gwish/stats.hpp"

using namespace gwish;

namespace {

MCEstimate mc(std::size_t reps, const std::function<double(RngStream&)>& f, std::uint64_t seed = 11) {
  RngStream rng(seed, 0);
  std::vector<double> v(reps);
  for (auto& x : v) x = f(rng);
  return estimate(v);
}

}  // namespace

TEST_CASE("rng streams are deterministic and distinct") {
  RngStream a(5, 3), b(5, 3), c(5, 4), d(6, 3);
  const auto x = a(), y = b(), z = c(), w = d();
  CHECK(x == y);
  CHECK(x != z);
  CHECK(x != w);
  RngStream s1 = RngStream(5, 0).substream(7), s2 = RngStream(5, 0).substream(7);
  CHECK(s1.normal() == s2.normal());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform_open();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("gaussian conventions") {
  SUBCASE("real mean") {
    const auto e = mc(1000000, [](RngStream& r) { return gaussian<double>(r); });
    CHECK(std::abs(e.mean) < 4e-3);
  }
  SUBCASE("real variance") {
    const auto e = mc(200000, [](RngStream& r) { return std::pow(gaussian<double>(r), 2); });
    CHECK(std::abs(z_score(e, 1.0)) < 4.0);
  }
  SUBCASE("complex unit modulus variance, equal halves") {
    const auto e = mc(200000, [](RngStream& r) { return std::norm(gaussian<cplx>(r)); });
    CHECK(std::abs(z_score(e, 1.0)) < 4.0);
    const auto re = mc(200000, [](RngStream& r) { return std::pow(gaussian<cplx>(r).real(), 2); });
    CHECK(std::abs(z_score(re, 0.5)) < 4.0);
  }
  SUBCASE("field-tagged overload") {
    RngStream r(1, 0);
    CHECK(gaussian(r, FieldTag::Real).imag() == 0.0);
  }
}

TEST_CASE("gamma draws") {
  struct Case {
    double shape, rate;
  };
  for (Case c : {Case{1.0, 1.0}, Case{0.25, 0.5}, Case{1.5, 0.5}, Case{0.02, 1.0}}) {
    CAPTURE(c.shape);
    const auto e = mc(100000, [&](RngStream& r) { return gamma_draw(r, c.shape, c.rate); });
    CHECK(std::abs(z_score(e, c.shape / c.rate)) < 4.0);
    // second moment shape(shape+1)/rate^2
    const auto e2 = mc(100000, [&](RngStream& r) { return std::pow(gamma_draw(r, c.shape, c.rate), 2); }, 12);
    CHECK(std::abs(z_score(e2, c.shape * (c.shape + 1) / (c.rate * c.rate))) < 4.0);
  }
  RngStream r(1, 0);
  CHECK_THROWS_AS(gamma_draw(r, 0.0, 1.0), ParameterError);
  CHECK_THROWS_AS(gamma_draw(r, 1.0, -1.0), ParameterError);
}

TEST_CASE("haar matrices") {
  SUBCASE("O(1) is +-1 with equal probability") {
    const auto e = mc(10000, [](RngStream& r) {
      const double v = haar_matrix<double>(r, 1)(0, 0);
      REQUIRE(std::abs(std::abs(v) - 1.0) < 1e-15);
      return v > 0 ? 1.0 : 0.0;
    });
    CHECK(std::abs(z_score(e, 0.5)) < 4.0);
  }
  SUBCASE("orthogonality and unitarity") {
    RngStream r(3, 0);
    for (int i = 0; i < 200; ++i) {
      const RealMatrix q = haar_matrix<double>(r, 3);
      CHECK((q * q.transpose() - RealMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
      const ComplexMatrix u = haar_matrix<cplx>(r, 3);
      CHECK((u * u.adjoint() - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("complex N=2 first entry") {
    const auto e = mc(100000, [](RngStream& r) { return std::norm(haar_matrix<cplx>(r, 2)(0, 0)); });
    CHECK(std::abs(z_score(e, 0.5)) < 4.0);
  }
  SUBCASE("left invariance in the first two moments") {
    RealMatrix v(3, 3);
    v << 0, 1, 0, 0, 0, 1, 1, 0, 0;  // permutation
    const double ang = 0.7;
    RealMatrix rot = RealMatrix::Identity(3, 3);
    rot(0, 0) = rot(1, 1) = std::cos(ang);
    rot(0, 1) = -std::sin(ang);
    rot(1, 0) = std::sin(ang);
    v = rot * v;
    constexpr std::size_t reps = 40000;
    std::vector<double> a, b;
    RngStream ra(4, 0), rb(4, 1);
    for (std::size_t i = 0; i < reps; ++i) {
      const RealMatrix r1 = haar_matrix<double>(ra, 3);
      const RealMatrix r2 = v * haar_matrix<double>(rb, 3);
      for (int k = 0; k < 9; ++k) {
        a.push_back(r1(k % 3, k / 3));
        a.push_back(r1(k % 3, k / 3) * r1(k % 3, k / 3));
        b.push_back(r2(k % 3, k / 3));
        b.push_back(r2(k % 3, k / 3) * r2(k % 3, k / 3));
      }
    }
    const auto ea = estimate_columns(a, 18), eb = estimate_columns(b, 18);
    for (std::size_t k = 0; k < 18; ++k) CHECK(std::abs(z_score(ea[k], eb[k])) < 4.5);
  }
}

TEST_CASE("self-adjoint eigenvalues") {
  RealMatrix d = RealMatrix::Zero(3, 3);
  d.diagonal() << 3, 1, 2;
  CHECK(eigvals_self_adjoint(d) == Spectrum{1, 2, 3});
  RealMatrix m(2, 2);
  m << 2, 1, 1, 2;
  const auto e = eigvals_self_adjoint(m);
  CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(eigvals_self_adjoint(RealMatrix(2, 3)), ShapeError);

  RngStream r(9, 0);
  for (int t = 0; t < 50; ++t) {
    ComplexMatrix y(7, 5);
    for (int i = 0; i < y.size(); ++i) y(i) = gaussian<cplx>(r);
    const ComplexMatrix w = y.adjoint() * y;
    const auto s = gram_spectrum(w);
    REQUIRE(std::is_sorted(s.begin(), s.end()));
    CHECK(s.front() >= 0.0);
    const double tr = w.trace().real(), tr2 = (w * w).trace().real();
    double s1 = 0, s2 = 0;
    for (double v : s) {
      s1 += v;
      s2 += v * v;
    }
    CHECK(std::abs(s1 - tr) <= 1e-9 * (1 + std::abs(tr)));
    CHECK(std::abs(s2 - tr2) <= 1e-9 * (1 + std::abs(tr2)));
    // Similarity by a permutation leaves the spectrum unchanged.
    Eigen::PermutationMatrix<Eigen::Dynamic> p(5);
    p.indices() << 4, 2, 0, 1, 3;
    const ComplexMatrix wp = p * w * p.transpose();
    const auto sp = gram_spectrum(wp);
    for (int k = 0; k < 5; ++k) CHECK(sp[k] == doctest::Approx(s[k]).epsilon(1e-10));
  }
}

TEST_CASE("rank-deficient gram spectra are clamped at zero") {
  RealMatrix y(1, 3);
  y << 1, 2, 3;
  const auto s = gram_spectrum(RealMatrix(y.transpose() * y));
  CHECK(s[0] >= 0.0);
  CHECK(s[0] < 1e-12);
  CHECK(s[1] >= 0.0);
  CHECK(s[1] < 1e-12);
  CHECK(s[2] == doctest::Approx(14.0));
}

TEST_CASE("leading minors") {
  RealMatrix d = RealMatrix::Zero(3, 3);
  d.diagonal() << 2, 3, 4;
  const auto m = leading_minor_dets(d);
  CHECK(m == std::vector<double>{2, 6, 24});
  CHECK(leading_minor_dets(RealMatrix(RealMatrix::Constant(1, 1, -2.5))) == std::vector<double>{-2.5});

  // Upper-triangular Y: det W_i = prod_{j<=i} y_jj^2.
  RealMatrix y(3, 3);
  y << 1.5, 0.3, -0.7, 0, 0.8, 2.0, 0, 0, 1.1;
  const auto wm = leading_minor_dets(RealMatrix(y.transpose() * y));
  CHECK(wm[0] == doctest::Approx(1.5 * 1.5).epsilon(1e-14));
  CHECK(wm[1] == doctest::Approx(1.5 * 1.5 * 0.64).epsilon(1e-14));
  CHECK(wm[2] == doctest::Approx(1.5 * 1.5 * 0.64 * 1.21).epsilon(1e-14));

  // Zero leading pivot still gives the right minors.
  RealMatrix z(3, 3);
  z << 0, 1, 0, 1, 0, 0, 0, 0, 5;
  const auto zm = leading_minor_dets(z);
  CHECK(zm[0] == 0.0);
  CHECK(zm[1] == doctest::Approx(-1.0));
  CHECK(zm[2] == doctest::Approx(-5.0));

  // Against a cofactor oracle on random complex matrices.
  RngStream r(2, 0);
  for (int t = 0; t < 20; ++t) {
    ComplexMatrix a(4, 4);
    for (int i = 0; i < a.size(); ++i) a(i) = gaussian<cplx>(r);
    const auto lm = leading_minor_dets(a);
    for (int k = 1; k <= 4; ++k) CHECK(std::abs(lm[k - 1] - a.topLeftCorner(k, k).determinant()) < 1e-10);
  }
}

TEST_CASE("symmetrization and hermitian defect") {
  ComplexMatrix m(2, 2);
  m << cplx(1, 0), cplx(2, 1), cplx(2, -1.2), cplx(3, 0.1);
  const ComplexMatrix s = symmetrized(m);
  CHECK(hermitian_defect(s) == 0.0);
  CHECK(hermitian_defect(m) > 0.0);
}

TEST_CASE("map_indexed is identical serial and parallel") {
  RngStream base(21, 0);
  auto f = [&](std::size_t i) {
    RngStream r = base.substream(i);
    double s = 0;
    for (int k = 0; k < 10; ++k) s += r.normal();
    return s;
  };
  const auto a = map_indexed(5000, f, Exec::Serial);
  set_threads(3);
  const auto b = map_indexed(5000, f, Exec::Parallel);
  set_threads(1);
  const auto c = map_indexed(5000, f, Exec::Parallel);
  set_threads(0);
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("map_indexed rethrows worker exceptions") {
  CHECK_THROWS_AS(map_indexed(
                      100,
                      [](std::size_t i) {
                        if (i == 57) throw ParameterError("boom");
                        return 1.0;
                      },
                      Exec::Parallel),
                  ParameterError);
}

TEST_CASE("estimates and z-scores") {
  const std::vector<double> v{1, 2, 3, 4};
  const auto e = estimate(v);
  CHECK(e.mean == 2.5);
  CHECK(e.reps == 4);
  // sample sd sqrt(5/3), stderr sd/2
  CHECK(e.std_err == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK_THROWS(estimate(std::vector<double>{1.0}));
  CHECK(z_score(e, 2.5) == 0.0);
  const MCEstimate exact{3.0, 0.0, 10};
  CHECK(z_score(exact, 3.0) == 0.0);
  CHECK(std::isinf(z_score(exact, 3.5)));
  const std::vector<double> t{1, 10, 2, 20, 3, 30};
  const auto cols = estimate_columns(t, 2);
  CHECK(cols[0].mean == 2.0);
  CHECK(cols[1].mean == 20.0);
}
