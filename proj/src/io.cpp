#include "bcw/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace bcw::io {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw IoError("schema: " + msg); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema(std::string("expected object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing key '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) schema(std::string(what) + " must be a number");
  double x = j.get<double>();
  if (!std::isfinite(x)) schema(std::string(what) + " must be finite");
  return x;
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) schema(std::string(what) + " must be an integer");
  return j.get<int>();
}

Json rows_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix rows_from_json(const Json& j, std::optional<Eigen::Index> rows,
                       std::optional<Eigen::Index> cols) {
  if (!j.is_array()) schema("matrix data must be an array of rows");
  const auto r = static_cast<Eigen::Index>(j.size());
  Eigen::Index c = r == 0 ? cols.value_or(0) : 0;
  if (r > 0) {
    if (!j[0].is_array()) schema("matrix row must be an array");
    c = static_cast<Eigen::Index>(j[0].size());
  }
  if (rows && *rows != r) schema("matrix 'rows' does not match data");
  if (cols && r > 0 && *cols != c) schema("matrix 'cols' does not match data");
  CMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) {
      schema("ragged matrix data");
    }
    for (Eigen::Index k = 0; k < c; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

std::optional<Eigen::Index> opt_dim(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) return std::nullopt;
  int v = integer(j.at(key), key);
  if (v < 0) schema(std::string(key) + " must be nonnegative");
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {number(j, "complex"), 0.0};
  if (!j.is_array() || j.size() != 2) schema("complex number must be [re, im]");
  return {number(j[0], "re"), number(j[1], "im")};
}

Json to_json(const Bicomplex& z) { return {{"z1", to_json(z.z1())}, {"z2", to_json(z.z2())}}; }

Bicomplex bicomplex_from_json(const Json& j) {
  Complex z1 = complex_from_json(field(j, "z1"));
  Complex z2 = j.contains("z2") ? complex_from_json(j.at("z2")) : Complex{};
  return {z1, z2};
}

Json to_json(const CMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows_json(m)}};
}

CMatrix cmatrix_from_json(const Json& j) {
  if (j.is_array()) return rows_from_json(j, std::nullopt, std::nullopt);
  return rows_from_json(field(j, "data"), opt_dim(j, "rows"), opt_dim(j, "cols"));
}

Json to_json(const BCMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"M1", rows_json(m.m1())},
          {"M2", rows_json(m.m2())}};
}

BCMatrix bcmatrix_from_json(const Json& j) {
  if (j.is_object() && j.contains("z1")) return BCMatrix::scalar(bicomplex_from_json(j));
  auto rows = opt_dim(j, "rows");
  auto cols = opt_dim(j, "cols");
  auto part = [&](const Json& data) {
    return data.is_object() ? cmatrix_from_json(data) : rows_from_json(data, rows, cols);
  };
  try {
    if (j.is_object() && j.contains("P1")) {
      return BCMatrix::from_channels(part(j.at("P1")), part(field(j, "P2")));
    }
    return BCMatrix(part(field(j, "M1")), part(field(j, "M2")));
  } catch (const DomainError& e) {
    schema(std::string("bicomplex matrix parts: ") + e.what());
  }
}

Json to_json(const BCLaurentSeries& f) {
  Json terms = Json::array();
  for (const auto& [n, c] : f.terms()) terms.push_back({{"n", n}, {"coeff", to_json(c)}});
  return {{"p", f.rows()}, {"q", f.cols()}, {"terms", terms}};
}

BCLaurentSeries bcseries_from_json(const Json& j) {
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) schema("'terms' must be an array");
  std::optional<Eigen::Index> p = opt_dim(j, "p");
  std::optional<Eigen::Index> q = opt_dim(j, "q");
  std::vector<std::pair<int, BCMatrix>> parsed;
  for (const Json& t : terms) {
    parsed.emplace_back(integer(field(t, "n"), "n"), bcmatrix_from_json(field(t, "coeff")));
  }
  if (!p) p = parsed.empty() ? 1 : parsed.front().second.rows();
  if (!q) q = parsed.empty() ? 1 : parsed.front().second.cols();
  BCLaurentSeries f(*p, *q);
  for (auto& [n, c] : parsed) {
    if (f.terms().count(n)) schema("duplicate term n=" + std::to_string(n));
    if (c.rows() != *p || c.cols() != *q) {
      schema("term n=" + std::to_string(n) + " does not match series shape");
    }
    f.set(n, std::move(c));
  }
  return f;
}

Json complex_series_to_json(const ComplexSeries& f) {
  Json terms = Json::array();
  for (const auto& [n, c] : f.terms()) terms.push_back({{"n", n}, {"coeff", to_json(c)}});
  return {{"rows", f.rows()}, {"cols", f.cols()}, {"terms", terms}};
}

ComplexSeries complex_series_from_json(const Json& j) {
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) schema("'terms' must be an array");
  std::optional<Eigen::Index> rows = opt_dim(j, "rows");
  std::optional<Eigen::Index> cols = opt_dim(j, "cols");
  std::vector<std::pair<int, CMatrix>> parsed;
  for (const Json& t : terms) {
    parsed.emplace_back(integer(field(t, "n"), "n"), cmatrix_from_json(field(t, "coeff")));
  }
  if (!rows) rows = parsed.empty() ? 1 : parsed.front().second.rows();
  if (!cols) cols = parsed.empty() ? 1 : parsed.front().second.cols();
  ComplexSeries f(*rows, *cols);
  for (auto& [n, c] : parsed) {
    if (f.terms().count(n)) schema("duplicate term n=" + std::to_string(n));
    if (c.rows() != *rows || c.cols() != *cols) {
      schema("term n=" + std::to_string(n) + " does not match series shape");
    }
    f.set(n, std::move(c));
  }
  return f;
}

Json to_json(const Realization& r) {
  return {{"A", to_json(r.A)}, {"B", to_json(r.B)}, {"C", to_json(r.C)}, {"D", to_json(r.D)}};
}

Realization realization_from_json(const Json& j) {
  Realization r{cmatrix_from_json(field(j, "A")), cmatrix_from_json(field(j, "B")),
                cmatrix_from_json(field(j, "C")), cmatrix_from_json(field(j, "D"))};
  try {
    r.validate();
  } catch (const DomainError& e) {
    schema(e.what());
  }
  return r;
}

Json to_json(const PartialFractions& pf) {
  Json poles = Json::array();
  for (const PoleTerm& t : pf.poles) {
    Json hs = Json::array();
    for (const CMatrix& h : t.coeffs) hs.push_back(to_json(h));
    poles.push_back({{"p", to_json(t.pole)}, {"H", hs}});
  }
  return {{"D", to_json(pf.D)}, {"poles", poles}};
}

PartialFractions partial_fractions_from_json(const Json& j) {
  PartialFractions pf;
  pf.D = cmatrix_from_json(field(j, "D"));
  const Json& poles = field(j, "poles");
  if (!poles.is_array()) schema("'poles' must be an array");
  for (const Json& p : poles) {
    PoleTerm t;
    t.pole = complex_from_json(field(p, "p"));
    const Json& hs = field(p, "H");
    if (!hs.is_array() || hs.empty()) schema("'H' must be a nonempty array");
    for (const Json& h : hs) {
      CMatrix m = cmatrix_from_json(h);
      if (m.rows() != pf.D.rows() || m.cols() != pf.D.cols()) {
        schema("pole coefficient shape differs from D");
      }
      t.coeffs.push_back(std::move(m));
    }
    pf.poles.push_back(std::move(t));
  }
  return pf;
}

Json to_json(const FactorOptions& opts) {
  Json j;
  j["K"] = opts.K ? Json(*opts.K) : Json(nullptr);
  j["N"] = opts.N ? Json(*opts.N) : Json(nullptr);
  j["newton_tol"] = opts.newton_tol;
  j["max_iter"] = opts.max_iter;
  j["normalization"] = opts.normalization == Normalization::pd0 ? "pd0" : "at_one";
  return j;
}

FactorOptions factor_options_from_json(const Json& j) {
  if (!j.is_object()) schema("options must be an object");
  FactorOptions o;
  if (j.contains("K") && !j["K"].is_null()) {
    o.K = integer(j["K"], "K");
    if (*o.K < 0) schema("K must be nonnegative");
  }
  if (j.contains("N") && !j["N"].is_null()) {
    int n = integer(j["N"], "N");
    if (n <= 0) schema("N must be positive");
    o.N = static_cast<std::size_t>(n);
  }
  if (j.contains("newton_tol")) o.newton_tol = number(j["newton_tol"], "newton_tol");
  if (j.contains("max_iter")) o.max_iter = integer(j["max_iter"], "max_iter");
  if (j.contains("normalization")) {
    const Json& v = j["normalization"];
    if (v == "pd0") {
      o.normalization = Normalization::pd0;
    } else if (v == "at_one") {
      o.normalization = Normalization::at_one;
    } else {
      schema("normalization must be 'pd0' or 'at_one'");
    }
  }
  return o;
}

std::string samples_csv(const BCLaurentSeries& f, const std::vector<BoundaryPoint>& grid) {
  std::string out = "t,s,entry_row,entry_col,re_z1,im_z1,re_z2,im_z2\n";
  for (const BoundaryPoint& pt : grid) {
    BCMatrix v = eval(f, pt);
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Complex z1 = v.m1()(r, c);
        Complex z2 = v.m2()(r, c);
        out += format_double(pt.t) + ',' + format_double(pt.s) + ',' + std::to_string(r) + ',' +
               std::to_string(c) + ',' + format_double(z1.real()) + ',' +
               format_double(z1.imag()) + ',' + format_double(z2.real()) + ',' +
               format_double(z2.imag()) + '\n';
      }
    }
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw IoError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace bcw::io
