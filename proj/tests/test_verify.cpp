#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>

#include "gwish/errors.hpp"
#include "gwish/sample_io.hpp"
#include "gwish/verify.hpp"

using namespace gwish;
using doctest::Approx;

namespace {

AlphaSpec A(std::vector<double> a) { return AlphaSpec::general(std::move(a)); }

CheckOptions opts(std::size_t reps, std::uint64_t seed = 7) {
  CheckOptions o;
  o.reps = reps;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("spectral moments") {
  SUBCASE("first moment has a closed form") {
    for (auto f : {FieldTag::Real, FieldTag::Complex}) {
      const SamplerSpec s{A({0.5, 2.0, 1.0}), f, Shape::Triangular};
      const auto m = spectral_moments(s, 2, 20000, RngStream(3, 0));
      REQUIRE(m.size() == 2);
      // sum (alpha_k + 1) plus one per strictly upper entry.
      CHECK(std::abs(z_score(m[0], 6.5 + 3.0)) < 4.0);
    }
  }
  SUBCASE("patterned classical Wishart") {
    // n x N full Gaussian: E tr W = nN, E tr W^2 = nN(n+N) complex.
    const SamplerSpec s{AlphaSpec::ordered_integer({4, 3}, 5), FieldTag::Complex, Shape::Patterned};
    const auto m = spectral_moments(s, 2, 20000, RngStream(3, 0));
    CHECK(std::abs(z_score(m[0], 10.0)) < 4.0);
    CHECK(std::abs(z_score(m[1], 70.0)) < 4.0);
  }
  SUBCASE("stored spectra reproduce the moments") {
    const SamplerSpec s{A({1.0, 0.0}), FieldTag::Real, Shape::Triangular};
    const auto sp = sample_spectra(s, 500, RngStream(9, 0));
    const auto a = moments_from_spectra(sp, 3);
    const auto b = spectral_moments(s, 3, 500, RngStream(9, 0));
    for (int k = 0; k < 3; ++k) CHECK(a[k].mean == b[k].mean);
    for (const auto& x : sp) CHECK(std::is_sorted(x.begin(), x.end()));
  }
  SUBCASE("serial and parallel sampling agree") {
    const SamplerSpec s{A({1.0, 0.0, 2.5}), FieldTag::Complex, Shape::Triangular};
    CHECK(sample_spectra(s, 300, RngStream(9, 0), Exec::Serial) == sample_spectra(s, 300, RngStream(9, 0)));
  }
}

TEST_CASE("characteristic polynomial from a spectrum") {
  const auto c = charpoly_from_spectrum({1.0, 2.0, 3.0});
  REQUIRE(c.size() == 3);
  CHECK(c[0] == Approx(-6.0));
  CHECK(c[1] == Approx(11.0));
  CHECK(c[2] == Approx(-6.0));
  const auto d = charpoly_from_spectrum({0.5});
  CHECK(d[0] == Approx(-0.5));
}

TEST_CASE("Fuss-Catalan rescalings") {
  CHECK(fc_rescale(8.0, 2.0, 2, FcScaling::PowerOfScaled) == Approx(4.0));
  CHECK(fc_rescale(32.0, 2.0, 2, FcScaling::Literal) == Approx(4.0));
  CHECK(fc_rescale(32.0, 2.0, 2, FcScaling::Linear) == Approx(2.0));
  for (auto s : {FcScaling::PowerOfScaled, FcScaling::Literal, FcScaling::Linear}) {
    CHECK(fc_rescale(7.0, 1.0, 7, s) == Approx(1.0));
    CHECK(parse_fc_scaling(to_string(s)) == s);
  }
}

TEST_CASE("check reports") {
  const auto r = check_bordered_identity(20, 4, opts(0));
  CHECK(r.passed());
  const Json j = r.to_json();
  for (const char* key : {"name", "status", "statistic", "threshold", "reps", "seed", "params", "details"})
    CHECK(j.contains(key));
  CHECK(j["status"] == "pass");
  CHECK(r.to_ndjson().find('\n') == std::string::npos);

  CheckReport bad;
  bad.statistic = NAN;
  bad.threshold = 1.0;
  bad.decide();
  CHECK_FALSE(bad.passed());
  CheckReport warned;
  warned.statistic = 0.5;
  warned.threshold = 1.0;
  warned.warn("caveat");
  warned.decide();
  CHECK(warned.status == Status::Warn);
  CHECK(warned.passed());
}

TEST_CASE("positive and negative controls") {
  const auto opt = opts(40000);
  SUBCASE("triangular vs patterned") {
    const auto a = AlphaSpec::ordered_integer({0, 2}, 4);
    CHECK(check_triangular_vs_patterned(a, FieldTag::Real, opt).passed());
    CHECK_FALSE(check_triangular_vs_patterned(a, FieldTag::Real, opt, A({1, 2})).passed());
    CHECK_THROWS_AS(check_triangular_vs_patterned(A({0, 2}), FieldTag::Real, opt), ModeError);
  }
  SUBCASE("alpha symmetry") {
    const auto same = check_alpha_symmetry(A({0, 3}), FieldTag::Complex, opt, std::vector<int>{0, 1});
    CHECK(same.statistic == 0.0);
    CHECK(same.passed());
    CHECK(check_alpha_symmetry(A({0.5, 3, 1}), FieldTag::Real, opt).passed());
  }
  SUBCASE("averaged characteristic polynomial") {
    const SamplerSpec s{A({1, 0}), FieldTag::Complex, Shape::Triangular};
    CHECK(check_avg_charpoly(s, opt).passed());
    CHECK_FALSE(check_avg_charpoly(s, opt, A({2, 0})).passed());
  }
  SUBCASE("small-N eigenvalue density") {
    auto ens = complex_small_n(A({1, 0}));
    CHECK(check_eig_pdf_small_n(ens, 12, opts(200000)).passed());
    ens.sampler.alpha = A({2, 0});
    CHECK_FALSE(check_eig_pdf_small_n(ens, 12, opts(200000)).passed());
    CHECK(check_eig_pdf_small_n(real_small_n(GammaSpec({3, 1})), 12, opts(200000)).passed());
  }
  SUBCASE("correlation constants") {
    CHECK(check_correlation(A({1, 3}), FieldTag::Real, opt).passed());
    CHECK_FALSE(check_correlation(A({1, 3}), FieldTag::Real, opt, ConstantMode::AsPrinted).passed());
    CHECK(check_correlation(A({1, 0}), FieldTag::Complex, opt).passed());
  }
  SUBCASE("Fuss-Catalan") {
    const auto o = opts(100);
    CHECK(check_fuss_catalan({1, 0, 40}, FieldTag::Complex, Shape::Triangular, 3, FcScaling::PowerOfScaled, o).passed());
    CHECK(check_fuss_catalan({2, 0, 40}, FieldTag::Complex, Shape::Triangular, 3, FcScaling::PowerOfScaled, o).passed());
    CHECK_FALSE(check_fuss_catalan({2, 0, 40}, FieldTag::Complex, Shape::Triangular, 3, FcScaling::Linear, o).passed());
    CHECK_FALSE(check_fuss_catalan({2, 0, 40}, FieldTag::Complex, Shape::Triangular, 3, FcScaling::Literal, o).passed());
  }
  SUBCASE("spherical integrals") {
    CHECK(check_real_spherical({GammaSpec({3, 1}), GammaSpec({2, 0})}, opts(20000)).passed());
    CHECK(check_tilde_q({GammaSpec({3, 1}), GammaSpec({2, 2})}, opts(20000)).passed());
  }
}

TEST_CASE("parameter enumeration") {
  const auto g = same_parity_gammas(2, 2);
  CHECK(g.size() == 3);
  for (const auto& x : g) {
    CHECK(x.size() == 2);
    CHECK(x.gamma()[0] + x.gamma()[1] <= 2);
  }
  const auto g3 = same_parity_gammas(3, 6);
  std::set<std::vector<int>> seen;
  for (const auto& x : g3) CHECK(seen.insert(x.gamma()).second);
}

TEST_CASE("check registry") {
  const auto& names = check_names();
  for (const char* n : {"bordered", "triangular_vs_patterned", "alpha_symmetry", "avg_charpoly", "fuss_catalan",
                        "eig_pdf_small_n", "correlation", "constant_audit", "gn_adjudication", "real_spherical",
                        "tilde_q", "splitting"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK_THROWS_AS(run_check("no_such_check", VerifyRequest{}), ParameterError);

  VerifyRequest req;
  req.opt.reps = 2000;
  req.reps_set = true;
  const auto a = run_check("triangular_vs_patterned", req);
  const auto b = run_check("triangular_vs_patterned", req);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].to_ndjson() == b[i].to_ndjson());
  req.opt.exec = Exec::Serial;
  const auto c = run_check("triangular_vs_patterned", req);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].statistic == c[i].statistic);
}

TEST_CASE("spectra CSV round trip") {
  const SamplerSpec s{A({1.0, 0.0, 2.0}), FieldTag::Real, Shape::Triangular};
  const auto sp = sample_spectra(s, 7, RngStream(2, 0));
  std::stringstream ss;
  const Json cfg = {{"seed", 2}};
  write_spectra_csv(ss, cfg, sp);
  const auto back = read_spectra_csv(ss);
  CHECK(back.config == cfg);
  CHECK(back.spectra == sp);
  std::stringstream broken("rep,index,value\n0,0,1\n");
  CHECK_THROWS_AS(read_spectra_csv(broken), ParameterError);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-INFINITY) == "-inf");
}
