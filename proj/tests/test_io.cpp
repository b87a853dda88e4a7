#include <gtest/gtest.h>

#include <filesystem>

#include "bcw/errors.hpp"
#include "bcw/io.hpp"
#include "support/gen.hpp"

using namespace bcw;
using bcw::testing::Gen;
using io::Json;

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(io::format_double(4.0), "4");
  EXPECT_EQ(io::format_double(-0.25), "-0.25");
  EXPECT_EQ(io::format_double(0.1), "0.1");
  Gen g(81);
  for (int i = 0; i < 1000; ++i) {
    double x = g.normal() * std::pow(10.0, g.integer(-30, 30));
    EXPECT_EQ(std::stod(io::format_double(x)), x);
  }
}

TEST(Json, ScalarsAndMatrices) {
  Gen g(82);
  Bicomplex z = g.bicomplex();
  EXPECT_EQ(io::bicomplex_from_json(io::to_json(z)), z);
  CMatrix m = g.matrix(3, 2);
  EXPECT_EQ(io::cmatrix_from_json(io::to_json(m)), m);
  EXPECT_EQ(io::cmatrix_from_json(Json::parse("[[1, [0, 2]], [3, 4]]")),
            (CMatrix(2, 2) << 1.0, Complex(0, 2), 3.0, 4.0).finished());
  BCMatrix b = g.bcmatrix(2, 3);
  EXPECT_EQ(distance(io::bcmatrix_from_json(io::to_json(b)), b), 0.0);
  Json channels = {{"P1", io::to_json(b.p1())}, {"P2", io::to_json(b.p2())}};
  EXPECT_LT(distance(io::bcmatrix_from_json(channels), b), 1e-14);
  BCMatrix k = io::bcmatrix_from_json(Json::parse(R"({"z1": [0, 0], "z2": [0, 1]})"));
  EXPECT_EQ(k(0, 0), Bicomplex::k());
}

TEST(Json, SeriesRealizationOptions) {
  Gen g(83);
  BCLaurentSeries f(2, 2);
  for (int n = -2; n <= 1; ++n) f.set(n, g.bcmatrix(2, 2));
  Json j = io::to_json(f);
  BCLaurentSeries back = io::bcseries_from_json(j);
  EXPECT_EQ(io::to_json(back).dump(), j.dump());

  ComplexSeries c(2, 2);
  c.set(3, g.matrix(2, 2));
  EXPECT_EQ(io::complex_series_to_json(io::complex_series_from_json(io::complex_series_to_json(c))).dump(),
            io::complex_series_to_json(c).dump());

  Realization r{g.matrix(3, 3), g.matrix(3, 2), g.matrix(2, 3), g.matrix(2, 2)};
  EXPECT_EQ(io::to_json(io::realization_from_json(io::to_json(r))).dump(), io::to_json(r).dump());

  PartialFractions pf{g.matrix(1, 1), {{Complex(0.5, 0.1), {g.matrix(1, 1), g.matrix(1, 1)}}}};
  EXPECT_EQ(io::to_json(io::partial_fractions_from_json(io::to_json(pf))).dump(), io::to_json(pf).dump());

  FactorOptions o;
  o.K = 7;
  o.normalization = Normalization::at_one;
  FactorOptions o2 = io::factor_options_from_json(io::to_json(o));
  EXPECT_EQ(o2.K, 7);
  EXPECT_FALSE(o2.N.has_value());
  EXPECT_EQ(o2.normalization, Normalization::at_one);
}

TEST(Json, SchemaErrors) {
  EXPECT_THROW(io::complex_from_json(Json::parse("[1, 2, 3]")), IoError);
  EXPECT_THROW(io::cmatrix_from_json(Json::parse("[[1, 2], [3]]")), IoError);
  EXPECT_THROW(io::cmatrix_from_json(Json::parse(R"({"rows": 3, "data": [[1]]})")), IoError);
  EXPECT_THROW(io::bcseries_from_json(Json::parse(R"({"terms": [{"n": 0.5, "coeff": {"z1": 1}}]})")), IoError);
  EXPECT_THROW(io::bcseries_from_json(Json::parse(R"({"p": 1})")), IoError);
  EXPECT_THROW(io::factor_options_from_json(Json::parse(R"({"normalization": "other"})")), IoError);
  EXPECT_THROW(io::partial_fractions_from_json(Json::parse(R"({"D": [[1]], "poles": [{"p": [0, 0], "H": []}]})")),
               IoError);
  EXPECT_THROW(io::realization_from_json(Json::parse(R"({"A": [[1]], "B": [[1, 2]], "C": [[1, 2]], "D": [[1]]})")),
               IoError);
}

TEST(Files, ReadWrite) {
  auto dir = std::filesystem::temp_directory_path() / "bcw_io_test";
  std::filesystem::create_directories(dir);
  io::write_text_file(dir / "ok.json", R"({"z1": [1, 0]})");
  EXPECT_EQ(io::bicomplex_from_json(io::read_json_file(dir / "ok.json")), Bicomplex(1.0));
  io::write_text_file(dir / "bad.json", "{ nope");
  EXPECT_THROW(io::read_json_file(dir / "bad.json"), IoError);
  EXPECT_THROW(io::read_json_file(dir / "missing.json"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(Csv, SamplerColumns) {
  BCLaurentSeries f(1, 1);
  f.set(0, BCMatrix::scalar(Bicomplex(2.0, 1.0)));
  std::string csv = io::samples_csv(f, {{0.0, 0.0}});
  EXPECT_EQ(csv, "t,s,entry_row,entry_col,re_z1,im_z1,re_z2,im_z2\n0,0,0,0,2,0,1,0\n");
}
