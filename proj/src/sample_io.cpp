#include "gwish/sample_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "gwish/errors.hpp"

namespace gwish {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

void write_header(std::ostream& os, const Json& config) { os << "# config: " << config.dump() << '\n'; }

template <class Scalar>
void write_entries(std::ostream& os, std::size_t rep, const Matrix<Scalar>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const cplx z(m(i, j));
      os << rep << ',' << i << ',' << j << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
    }
}

double parse_double(const std::string& s) {
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParameterError("bad number '" + s + "'");
  return v;
}

}  // namespace

void write_spectra_csv(std::ostream& os, const Json& config, const std::vector<Spectrum>& spectra) {
  write_header(os, config);
  os << "rep,index,value\n";
  for (std::size_t r = 0; r < spectra.size(); ++r)
    for (std::size_t k = 0; k < spectra[r].size(); ++k) os << r << ',' << k << ',' << format_double(spectra[r][k]) << '\n';
}

void write_entries_csv(std::ostream& os, const Json& config, const std::vector<AnyMatrix>& mats) {
  write_header(os, config);
  os << "rep,i,j,re,im\n";
  for (std::size_t r = 0; r < mats.size(); ++r) std::visit([&](const auto& m) { write_entries(os, r, m); }, mats[r]);
}

SpectraFile read_spectra_csv(std::istream& is) {
  SpectraFile f;
  std::string line;
  const std::string prefix = "# config: ";
  if (!std::getline(is, line) || line.rfind(prefix, 0) != 0) throw ParameterError("missing '# config:' header");
  f.config = Json::parse(line.substr(prefix.size()));
  if (!std::getline(is, line) || line != "rep,index,value") throw ParameterError("expected 'rep,index,value' columns");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
      throw ParameterError("malformed row '" + line + "'");
    const auto rep = static_cast<std::size_t>(std::stoull(a));
    const auto idx = static_cast<std::size_t>(std::stoull(b));
    if (rep > f.spectra.size() || (rep < f.spectra.size() && rep + 1 != f.spectra.size()))
      throw ParameterError("rows out of order at '" + line + "'");
    if (rep == f.spectra.size()) f.spectra.emplace_back();
    if (idx != f.spectra.back().size()) throw ParameterError("index out of order at '" + line + "'");
    f.spectra.back().push_back(parse_double(c));
  }
  return f;
}

}  // namespace gwish
