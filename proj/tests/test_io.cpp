#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "sobolab/io.hpp"

using namespace sobolab;

TEST(Json, PiecewiseLinearRoundTrip) {
  const PiecewiseLinear f({0.0, 0.1, 3.0}, {cplx(1, 2), cplx(-0.3, 0), cplx(1e-300, 5)});
  const json j = to_json(f);
  EXPECT_TRUE(j.contains("knots"));
  EXPECT_TRUE(j.contains("re"));
  EXPECT_TRUE(j.contains("im"));
  const PiecewiseLinear g = pl_from_json(json::parse(j.dump()));
  ASSERT_EQ(g.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(g.knots()[i], f.knots()[i]);
    EXPECT_EQ(g.values()[i], f.values()[i]);
  }
  EXPECT_TRUE(g.periodic());
}

TEST(Json, PiecewiseLinearDefaultsAndErrors) {
  const PiecewiseLinear f = pl_from_json(json::parse(R"({"knots":[0,1],"re":[2,3]})"));
  EXPECT_TRUE(f.is_real());
  const PiecewiseLinear open = pl_from_json(json::parse(R"({"knots":[0,1],"re":[2,3],"periodic":false})"));
  EXPECT_FALSE(open.periodic());
  EXPECT_THROW(pl_from_json(json::parse(R"({"knots":[0,1],"re":[2]})")), std::invalid_argument);
  EXPECT_THROW(pl_from_json(json::parse(R"({"re":[2]})")), std::invalid_argument);
}

TEST(Json, SpectrumOrderedFromMinusK) {
  SpectrumCoeffs c(2);
  c.at(-2) = cplx(1, 0);
  c.at(1) = cplx(0, 3);
  const json j = to_json(c);
  EXPECT_EQ(j["kmax"], 2);
  EXPECT_EQ(j["re"][0], 1.0);
  EXPECT_EQ(j["im"][3], 3.0);
  const SpectrumCoeffs back = spectrum_from_json(json::parse(j.dump()));
  for (int k = -2; k <= 2; ++k) EXPECT_EQ(back[k], c[k]);
}

TEST(Json, SystemRoundTrip) {
  const TriangleSystem sys = build_system(Modulus::power(1.0 / 3.0), 2);
  const json j = to_json(sys);
  EXPECT_EQ(j["a"].size(), sys.size());
  EXPECT_EQ(j["b"].size(), sys.size());
  EXPECT_EQ(j["w"].size(), sys.size());
  const TriangleSystem back = system_from_json(json::parse(j.dump()));
  for (std::size_t k = 0; k < sys.size(); ++k) {
    EXPECT_EQ(back.a(k), sys.a(k));
    EXPECT_EQ(back.delta(k), sys.delta(k));
    EXPECT_EQ(back.weight(k), sys.weight(k));
  }
  json only_ab = j;
  only_ab.erase("delta");
  const TriangleSystem from_ab = system_from_json(only_ab);
  for (std::size_t k = 0; k < sys.size(); ++k) EXPECT_NEAR(from_ab.delta(k), sys.delta(k), 1e-15);
}

TEST(Json, HomeomorphismRoundTrip) {
  std::mt19937_64 rng(3);
  const Homeomorphism h = Homeomorphism::random(10, 1.0, rng);
  const json j = to_json(h);
  EXPECT_EQ(homeo_from_json(json::parse(j.dump())), h);
}

TEST(Json, SeminormReportSchema) {
  SeminormReport r;
  r.spectral = 1.5;
  r.integral = 2.5;
  r.n = 1024;
  const json j = to_json(r);
  EXPECT_EQ(j["spectral"], 1.5);
  EXPECT_EQ(j["integral"], 2.5);
  EXPECT_EQ(j["s"], 0.5);
  EXPECT_EQ(j["N"], 1024);
}

TEST(Csv, StieltjesColumns) {
  const TriangleSystem sys = build_system(Modulus::power(1.0 / 3.0), 2);
  const std::string csv = stieltjes_csv(stieltjes_check(sys, 12));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,w_k,contribution,lower_bound_term");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(sys.size() + 1));
}

TEST(Csv, ObstructionColumns) {
  ObstructionRecord r;
  r.blocks = 2;
  r.triangles = 10;
  r.sup_lower_bound = 0.25;
  r.min_product = 0.5;
  r.evals = 7;
  const std::string csv = obstruction_csv({r});
  EXPECT_EQ(csv, "J,K,sup_lower_bound,certified_bound,min_product,evals,violations\n"
                 "2,10,0.25,0,0.5,7,0\n");
}

TEST(Files, WriteReadAndErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "sobolab_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "f.json").string();
  const PiecewiseLinear tent = triangle(CircleInterval(1.0, 2.0));
  write_text_file(path, to_json(tent).dump());
  const PiecewiseLinear f = pl_from_json(read_json_file(path));
  EXPECT_EQ(f.size(), tent.size());
  EXPECT_THROW(read_text_file((dir / "missing.json").string()), std::runtime_error);
  EXPECT_THROW(write_text_file((dir / "no/such/dir/x").string(), "x"), std::runtime_error);
  write_text_file(path, "{not json");
  EXPECT_THROW(read_json_file(path), std::runtime_error);
  std::filesystem::remove_all(dir);
}
