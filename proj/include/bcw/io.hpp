#pragma once

// JSON and CSV encodings shared by the CLI and tests. Numbers are written in
// shortest round-trip decimal form, so encode(decode(x)) is byte-stable.
// Decoders throw IoError on schema violations.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcw/realization.hpp"
#include "bcw/series.hpp"
#include "bcw/spectral.hpp"

namespace bcw::io {

using Json = nlohmann::json;

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

Json to_json(Complex z);
Complex complex_from_json(const Json& j);

Json to_json(const Bicomplex& z);
Bicomplex bicomplex_from_json(const Json& j);

/// {"rows": r, "cols": c, "data": [[[re, im], ...], ...]}. Decoding also
/// accepts a bare nested row array.
Json to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const Json& j);

/// {"rows", "cols", "M1", "M2"}; decoding also accepts {"P1", "P2"} channel
/// form and a bicomplex scalar {"z1", "z2"} as a 1x1 matrix.
Json to_json(const BCMatrix& m);
BCMatrix bcmatrix_from_json(const Json& j);

/// {"p", "q", "terms": [{"n": int, "coeff": <BCMatrix>}, ...]}.
Json to_json(const BCLaurentSeries& f);
BCLaurentSeries bcseries_from_json(const Json& j);

/// {"rows", "cols", "terms": [{"n": int, "coeff": <CMatrix>}, ...]}.
Json complex_series_to_json(const ComplexSeries& f);
ComplexSeries complex_series_from_json(const Json& j);

/// {"A", "B", "C", "D"}.
Json to_json(const Realization& r);
Realization realization_from_json(const Json& j);

/// {"D": <CMatrix>, "poles": [{"p": [re, im], "H": [<CMatrix>, ...]}, ...]}.
Json to_json(const PartialFractions& pf);
PartialFractions partial_fractions_from_json(const Json& j);

/// {"K", "N", "newton_tol", "max_iter", "normalization": "pd0" | "at_one"};
/// unset K/N are written as null.
Json to_json(const FactorOptions& opts);
FactorOptions factor_options_from_json(const Json& j);

/// Rows t,s,entry_row,entry_col,re_z1,im_z1,re_z2,im_z2 for every grid point
/// and matrix entry.
std::string samples_csv(const BCLaurentSeries& f, const std::vector<BoundaryPoint>& grid);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace bcw::io
