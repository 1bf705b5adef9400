#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "gwish/errors.hpp"
#include "gwish/formulas.hpp"
#include "gwish/sample_io.hpp"
#include "gwish/verify.hpp"
#include "gwish/zonal.hpp"

namespace gwish {
namespace {

struct Config {
  std::uint64_t seed = 1;
  std::size_t reps = 0;
  int dim = 0;
  int rows = 0;
  std::vector<double> alpha;
  double mb_theta = 1.0;
  double mb_c = 0.0;
  std::vector<int> gamma;
  std::string field = "real";
  double tol_sigma = 4.0;
  std::string out;
  std::string format = "csv";
  int threads = 0;
  std::string check = "all";
  std::string shape = "triangular";
  std::vector<int> partition;
  int max_degree = 12;
  std::string svg;
  int bins = 40;
  bool entries = false;

  // Set-flags, filled after parsing.
  bool has_reps = false, has_dim = false, has_rows = false, has_alpha = false, has_theta = false, has_c = false,
       has_gamma = false, has_field = false, has_shape = false;
};

struct Opts {
  CLI::Option *reps, *dim, *rows, *alpha, *theta, *c, *gamma, *field, *shape;
};

Opts add_common(CLI::App& sub, Config& cfg) {
  Opts o{};
  sub.add_option("--seed", cfg.seed, "Master seed (u64)")->capture_default_str();
  o.reps = sub.add_option("--reps", cfg.reps, "Monte Carlo repetitions");
  o.dim = sub.add_option("--dim", cfg.dim, "Matrix size N");
  o.rows = sub.add_option("--rows", cfg.rows, "Row count n of the patterned sampler");
  o.alpha = sub.add_option("--alpha", cfg.alpha, "alpha_1,...,alpha_N")->delimiter(',');
  o.theta = sub.add_option("--mb-theta,--theta", cfg.mb_theta, "Muttalib-Borodin theta");
  o.c = sub.add_option("--mb-c,--c", cfg.mb_c, "Muttalib-Borodin c");
  o.gamma = sub.add_option("--gamma", cfg.gamma, "gamma_1,...,gamma_N (real ensembles)")->delimiter(',');
  o.field = sub.add_option("--field", cfg.field, "real|complex")->check(CLI::IsMember({"real", "complex"}));
  sub.add_option("--tol-sigma", cfg.tol_sigma, "z-score tolerance")->capture_default_str();
  sub.add_option("--out", cfg.out, "Output file (default stdout)");
  sub.add_option("--format", cfg.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--threads", cfg.threads, "Worker threads (results do not depend on it)");
  o.shape = sub.add_option("--shape", cfg.shape, "triangular|patterned")
                ->check(CLI::IsMember({"triangular", "patterned"}));
  return o;
}

void mark(Config& cfg, const Opts& o) {
  cfg.has_reps = o.reps->count() > 0;
  cfg.has_dim = o.dim->count() > 0;
  cfg.has_rows = o.rows->count() > 0;
  cfg.has_alpha = o.alpha->count() > 0;
  cfg.has_theta = o.theta->count() > 0;
  cfg.has_c = o.c->count() > 0;
  cfg.has_gamma = o.gamma->count() > 0;
  cfg.has_field = o.field->count() > 0;
  cfg.has_shape = o.shape->count() > 0;
}

std::vector<int> as_ints(const std::vector<double>& v) {
  std::vector<int> out;
  for (double a : v) {
    if (a != std::floor(a)) throw ParameterError("integer alphas are required here");
    out.push_back(static_cast<int>(a));
  }
  return out;
}

// Resolves --alpha / --mb-* / --gamma into a sampler, validating orderings.
SamplerSpec resolve_sampler(const Config& cfg) {
  const Shape shape = parse_shape(cfg.shape);
  FieldTag field = parse_field(cfg.field);
  const bool ordered = shape == Shape::Patterned || cfg.has_rows;
  auto build = [&](const std::vector<double>& a) {
    if (!ordered) return AlphaSpec::general(a);
    const auto ints = as_ints(a);
    const int n = cfg.has_rows ? cfg.rows : static_cast<int>(ints.size()) + ints.back();
    return AlphaSpec::ordered_integer(ints, n);
  };
  const int sources = int(cfg.has_alpha) + int(cfg.has_gamma) + int(cfg.has_theta || cfg.has_c);
  if (sources > 1) throw CLI::ValidationError("give only one of --alpha, --gamma, --mb-theta/--mb-c");
  if (cfg.has_gamma) {
    if (cfg.has_field && field != FieldTag::Real) throw CLI::ValidationError("--gamma describes a real ensemble");
    return {build(GammaSpec(cfg.gamma).alpha().values()), FieldTag::Real, shape};
  }
  if (cfg.has_alpha) return {build(cfg.alpha), field, shape};
  if (!cfg.has_dim) throw CLI::ValidationError("need --alpha, --gamma, or --dim with --mb-theta/--mb-c");
  const AlphaSpec mb = mb_alpha({cfg.mb_theta, cfg.mb_c, cfg.dim});
  if (ordered && cfg.has_rows) return {build(mb.values()), field, shape};
  if (ordered && mb.mode() != AlphaSpec::Mode::OrderedInteger)
    throw ModeError("patterned sampling needs integer theta and c");
  return {mb, field, shape};
}

Json sampler_json(const SamplerSpec& s) {
  Json j{{"alpha", s.alpha.values()}, {"field", to_string(s.field)}, {"shape", to_string(s.shape)}};
  if (s.alpha.rows()) j["rows"] = *s.alpha.rows();
  return j;
}

// Writes to --out or `out`.
template <class F>
void emit(const Config& cfg, std::ostream& out, F&& write) {
  if (cfg.out.empty()) {
    write(out);
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw ParameterError("cannot open '" + cfg.out + "' for writing");
  write(f);
}

int cmd_sample(const Config& cfg, std::ostream& out) {
  const SamplerSpec spec = resolve_sampler(cfg);
  const std::size_t reps = cfg.has_reps ? cfg.reps : 10;
  Json config{{"command", "sample"}, {"seed", cfg.seed}, {"reps", reps}};
  config["sampler"] = sampler_json(spec);
  if (cfg.has_theta || cfg.has_c) config["mb"] = {{"theta", cfg.mb_theta}, {"c", cfg.mb_c}, {"N", cfg.dim}};
  config["kind"] = cfg.entries ? "entries" : "eigenvalues";
  const RngStream stream(cfg.seed, 0);
  if (cfg.entries) {
    const auto mats = map_indexed(reps, [&](std::size_t i) {
      RngStream rng = stream.substream(i);
      return sample_gram(spec, rng);
    });
    emit(cfg, out, [&](std::ostream& os) {
      if (cfg.format == "csv") return write_entries_csv(os, config, mats);
      Json data = Json::array();
      for (const auto& m : mats)
        data.push_back(std::visit(
            [](const auto& w) {
              Json rows = Json::array();
              for (Eigen::Index i = 0; i < w.rows(); ++i) {
                Json row = Json::array();
                for (Eigen::Index j = 0; j < w.cols(); ++j) {
                  const cplx z(w(i, j));
                  row.push_back({z.real(), z.imag()});
                }
                rows.push_back(row);
              }
              return rows;
            },
            m));
      os << Json{{"config", config}, {"entries", data}}.dump() << '\n';
    });
  } else {
    const auto spectra = sample_spectra(spec, reps, stream);
    emit(cfg, out, [&](std::ostream& os) {
      if (cfg.format == "csv") return write_spectra_csv(os, config, spectra);
      os << Json{{"config", config}, {"eigenvalues", spectra}}.dump() << '\n';
    });
  }
  return 0;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
  VerifyRequest q;
  q.opt.seed = cfg.seed;
  q.opt.tol_sigma = cfg.tol_sigma;
  q.reps_set = cfg.has_reps;
  if (cfg.has_reps) q.opt.reps = cfg.reps;
  if (cfg.has_alpha) q.alpha = cfg.alpha;
  if (cfg.has_rows) q.rows = cfg.rows;
  if (cfg.has_dim) q.dim = cfg.dim;
  if (cfg.has_theta) q.theta = cfg.mb_theta;
  if (cfg.has_c) q.c = cfg.mb_c;
  if (cfg.has_gamma) q.gamma = cfg.gamma;
  if (cfg.has_field) q.field = parse_field(cfg.field);
  if (cfg.has_shape) q.shape = parse_shape(cfg.shape);
  const auto& names = check_names();
  if (cfg.check != "all" && std::find(names.begin(), names.end(), cfg.check) == names.end()) {
    std::string list;
    for (const auto& n : names) list += "  " + n + "\n";
    throw CLI::ValidationError("unknown check '" + cfg.check + "'; available checks:\n" + list + "  all");
  }
  const auto reports = run_check(cfg.check, q);
  bool ok = true;
  emit(cfg, out, [&](std::ostream& os) {
    for (const auto& r : reports) os << r.to_ndjson() << '\n';
  });
  for (const auto& r : reports) {
    ok = ok && r.passed();
    err << to_string(r.status) << ' ' << r.name << " statistic=" << format_double(r.statistic)
        << " threshold=" << format_double(r.threshold) << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_zonal(const Config& cfg, std::ostream& out) {
  if (cfg.partition.empty()) throw CLI::ValidationError("--partition is required");
  if (!cfg.has_dim) throw CLI::ValidationError("--dim is required");
  const Partition kappa(cfg.partition);
  if (kappa.size() > cfg.max_degree)
    throw ParameterError("degree " + std::to_string(kappa.size()) + " exceeds the cap; raise --max-degree (currently " +
                         std::to_string(cfg.max_degree) + ")");
  const auto& poly = zonal(kappa, cfg.dim, ZonalOptions{cfg.max_degree});
  Json coeffs = Json::object();
  // Dominance-descending: reverse lexicographic order.
  for (auto it = poly.coeffs().rbegin(); it != poly.coeffs().rend(); ++it)
    coeffs[it->first.to_string()] = it->second.str();
  emit(cfg, out, [&](std::ostream& os) { os << coeffs.dump() << '\n'; });
  return 0;
}

int cmd_charpoly(const Config& cfg, std::ostream& out) {
  AlphaSpec alpha = cfg.has_alpha ? AlphaSpec::general(cfg.alpha)
                    : cfg.has_gamma ? GammaSpec(cfg.gamma).alpha()
                    : cfg.has_dim   ? mb_alpha({cfg.mb_theta, cfg.mb_c, cfg.dim})
                                    : throw CLI::ValidationError("need --alpha, --gamma, or --dim with --mb-theta");
  const Polynomial p = avg_charpoly(alpha);
  emit(cfg, out, [&](std::ostream& os) {
    os << '[';
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) os << (i ? "," : "") << format_double(p.coeffs[i]);
    os << "]\n";
  });
  return 0;
}

struct Curve {
  std::vector<double> x, y;
};

void write_svg(const std::string& path, const std::vector<double>& centers, const std::vector<double>& dens,
               double width, const Curve& curve, const std::string& title) {
  std::ofstream f(path);
  if (!f) throw ParameterError("cannot open '" + path + "' for writing");
  const double w = 640, h = 400, m = 40;
  double xmax = centers.empty() ? 1.0 : centers.back() + width / 2, ymax = 0.0;
  for (double v : dens) ymax = std::max(ymax, v);
  for (double v : curve.y)
    if (std::isfinite(v)) ymax = std::max(ymax, v);
  if (!(ymax > 0)) ymax = 1.0;
  ymax *= 1.1;
  auto px = [&](double x) { return m + (w - 2 * m) * x / xmax; };
  auto py = [&](double y) { return h - m - (h - 2 * m) * std::min(y, ymax) / ymax; };
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  f << "<text x=\"" << m << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"12\">" << title << "</text>\n";
  f << "<line x1=\"" << m << "\" y1=\"" << h - m << "\" x2=\"" << w - m << "\" y2=\"" << h - m
    << "\" stroke=\"black\"/>\n";
  f << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << h - m << "\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double x0 = px(centers[i] - width / 2), x1 = px(centers[i] + width / 2);
    f << "<rect x=\"" << x0 << "\" y=\"" << py(dens[i]) << "\" width=\"" << x1 - x0 << "\" height=\""
      << py(0) - py(dens[i]) << "\" fill=\"#9cc3e6\" stroke=\"#4a7fb0\"/>\n";
  }
  if (!curve.x.empty()) {
    f << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < curve.x.size(); ++i)
      if (std::isfinite(curve.y[i])) f << px(curve.x[i]) << ',' << py(curve.y[i]) << ' ';
    f << "\"/>\n";
  }
  f << "<text x=\"" << w - m << "\" y=\"" << h - 10 << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
    << "font-size=\"12\">x = " << format_double(xmax) << "</text>\n";
  f << "</svg>\n";
}

// Histogram of eigenvalues (MB ensembles: rescaled to the Fuss-Catalan
// scale) as CSV x,log_density, plus an optional SVG with a closed-form curve
// where one is available.
int cmd_density(const Config& cfg, std::ostream& out) {
  if (cfg.bins < 1) throw CLI::ValidationError("--bins must be >= 1");
  const SamplerSpec spec = resolve_sampler(cfg);
  const bool mb = !cfg.has_alpha && !cfg.has_gamma;
  const std::size_t reps = cfg.has_reps ? cfg.reps : 200;
  const int n = spec.alpha.size();
  auto spectra = sample_spectra(spec, reps, RngStream(cfg.seed, 0));
  std::vector<double> xs;
  for (const auto& s : spectra)
    for (double v : s) xs.push_back(mb ? fc_rescale(std::max(v, 0.0), cfg.mb_theta, n, FcScaling::PowerOfScaled) : v);
  const double xmax = xs.empty() ? 1.0 : *std::max_element(xs.begin(), xs.end()) * (1.0 + 1e-12);
  const double width = xmax / cfg.bins;
  std::vector<double> counts(static_cast<std::size_t>(cfg.bins), 0.0);
  for (double v : xs) counts[std::min<std::size_t>(static_cast<std::size_t>(v / width), counts.size() - 1)] += 1.0;
  std::vector<double> centers, dens;
  for (int b = 0; b < cfg.bins; ++b) {
    centers.push_back((b + 0.5) * width);
    dens.push_back(counts[b] / (static_cast<double>(xs.size()) * width));
  }
  Json config{{"command", "density"}, {"seed", cfg.seed}, {"reps", reps}, {"bins", cfg.bins}};
  config["sampler"] = sampler_json(spec);
  if (mb) config["mb"] = {{"theta", cfg.mb_theta}, {"c", cfg.mb_c}, {"N", n}, {"rescaling", to_string(FcScaling::PowerOfScaled)}};
  emit(cfg, out, [&](std::ostream& os) {
    os << "# config: " << config.dump() << '\n' << "x,log_density\n";
    for (int b = 0; b < cfg.bins; ++b) os << format_double(centers[b]) << ',' << format_double(std::log(dens[b])) << '\n';
  });
  if (!cfg.svg.empty()) {
    Curve curve;
    std::string title = mb ? "rescaled eigenvalue histogram" : "eigenvalue histogram";
    for (int i = 1; i <= 400; ++i) {
      const double x = xmax * i / 400.0;
      double y = NAN;
      if (mb && cfg.mb_theta == 1.0) {
        y = x < 4.0 ? std::sqrt(x * (4.0 - x)) / (2.0 * std::numbers::pi * x) : 0.0;  // Marchenko-Pastur, ratio 1
      } else if (!mb && n == 1) {
        y = spec.field == FieldTag::Complex ? eig_pdf_complex({x}, spec.alpha).value()
                                            : element_pdf(RealMatrix(RealMatrix::Constant(1, 1, x)), spec.alpha).value();
      }
      if (std::isfinite(y)) {
        curve.x.push_back(x);
        curve.y.push_back(y);
      }
    }
    if (!curve.x.empty()) title += " with closed-form density";
    write_svg(cfg.svg, centers, dens, width, curve, title);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalised Wishart ensembles: sampling, exact densities and numerical verification", "gwish"};
  app.require_subcommand(1);
  Config cfg;
  auto* sample = app.add_subcommand("sample", "Draw Gram matrices; write eigenvalues or entries");
  auto* verify = app.add_subcommand("verify", "Run verification checks; NDJSON reports");
  auto* zonal_cmd = app.add_subcommand("zonal", "Exact zonal polynomial coefficients");
  auto* charpoly = app.add_subcommand("charpoly", "Averaged characteristic polynomial, ascending powers");
  auto* density = app.add_subcommand("density", "Eigenvalue histogram as x,log_density (optional SVG)");
  std::vector<std::pair<CLI::App*, Opts>> subs;
  for (auto* s : {sample, verify, zonal_cmd, charpoly, density}) subs.emplace_back(s, add_common(*s, cfg));
  sample->add_flag("--entries", cfg.entries, "Write matrix entries instead of eigenvalues");
  verify->add_option("--check", cfg.check, "Check name or 'all'")->capture_default_str();
  zonal_cmd->add_option("--partition", cfg.partition, "Partition parts k1,k2,...")->delimiter(',');
  zonal_cmd->add_option("--max-degree", cfg.max_degree, "Degree cap")->capture_default_str();
  density->add_option("--svg", cfg.svg, "Also write an SVG plot here");
  density->add_option("--bins", cfg.bins, "Histogram bins")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  try {
    for (auto& [s, o] : subs)
      if (s->parsed()) mark(cfg, o);
    if (cfg.threads > 0) set_threads(cfg.threads);
    if (sample->parsed()) return cmd_sample(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (zonal_cmd->parsed()) return cmd_zonal(cfg, out);
    if (charpoly->parsed()) return cmd_charpoly(cfg, out);
    if (density->parsed()) return cmd_density(cfg, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace gwish
