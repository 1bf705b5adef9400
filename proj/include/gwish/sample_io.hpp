#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gwish/linalg.hpp"
#include "gwish/report.hpp"

namespace gwish {

/// Shortest decimal string that parses back to exactly `v` ("inf", "-inf",
/// "nan" for non-finite values).
std::string format_double(double v);

/// "# config: <json>" then "rep,index,value", one row per eigenvalue.
void write_spectra_csv(std::ostream& os, const Json& config, const std::vector<Spectrum>& spectra);

/// "# config: <json>" then "rep,i,j,re,im", one row per matrix entry
/// (column-major, 0-based).
void write_entries_csv(std::ostream& os, const Json& config, const std::vector<AnyMatrix>& mats);

struct SpectraFile {
  Json config;
  std::vector<Spectrum> spectra;
};

/// Inverse of write_spectra_csv. Throws ParameterError on malformed input.
SpectraFile read_spectra_csv(std::istream& is);

}  // namespace gwish
