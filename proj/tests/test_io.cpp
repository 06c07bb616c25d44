#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include "rpz/io.hpp"

using namespace rpz;

TEST_CASE("enum round trips") {
  for (Family f : {Family::Su2Poly, Family::SphericalHarmonicS2})
    CHECK(family_from_string(to_string(f)) == f);
  for (Measure m : {Measure::Gaussian, Measure::Spherical})
    CHECK(measure_from_string(to_string(m)) == m);
  CHECK_THROWS(family_from_string("nonsense"));
  CHECK_THROWS(measure_from_string(""));
}

TEST_CASE("sample JSON round trip is exact") {
  EnsembleSpec spec{Family::Su2Poly, 12, Measure::Spherical, 345};
  const auto s = sample_spherical(spec, 1).front();
  const auto j = sample_to_json(s);
  const auto back = sample_from_json(j);
  CHECK(back.spec.family == s.spec.family);
  CHECK(back.spec.degree == s.spec.degree);
  CHECK(back.spec.measure == s.spec.measure);
  CHECK(back.spec.seed == s.spec.seed);
  REQUIRE(back.coeffs.size() == s.coeffs.size());
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) CHECK(back.coeffs[i] == s.coeffs[i]);
}

TEST_CASE("point process JSON carries points and multiplicities") {
  EnsembleSpec spec{Family::Su2Poly, 9, Measure::Gaussian, 1};
  const auto z = find_zeros(sample_gaussian(spec, 1).front());
  const auto j = point_process_to_json(z);
  CHECK(j.at("N").get<int>() == 9);
  CHECK(j.at("kind").get<std::string>() == "ZEROS");
  int total = 0;
  for (const auto& p : j.at("points")) total += p.at(4).get<int>();
  CHECK(total == z.total_multiplicity());
}

TEST_CASE("symbol JSON round trip") {
  const auto f = SymbolFunction::even_quadrupole();
  const auto back = symbol_from_json(symbol_to_json(f));
  REQUIRE(back.terms.size() == f.terms.size());
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    CHECK(back.terms[i].l == f.terms[i].l);
    CHECK(back.terms[i].k == f.terms[i].k);
    CHECK(back.terms[i].coeff == f.terms[i].coeff);
  }
}

TEST_CASE("CSV writer emits header, rows, and trailing manifest comment") {
  const std::string path = "/tmp/rpz_test_io.csv";
  {
    CsvWriter w(path, {"a", "b"});
    w.row({"1", "2"});
    w.row({format_double(0.5), format_double(1e-12)});
    w.close("manifest.json");
  }
  const std::string text = read_text_file(path);
  CHECK(text.find("a,b\n") == 0);
  CHECK(text.find("1,2\n") != std::string::npos);
  CHECK(text.find("# manifest: manifest.json") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("column count mismatches are rejected") {
  const std::string path = "/tmp/rpz_test_io2.csv";
  CsvWriter w(path, {"a", "b"});
  CHECK_THROWS(w.row({"only-one"}));
  w.close("m");
  std::remove(path.c_str());
}

TEST_CASE("format_double is round-trip faithful") {
  for (double v : {0.0, 1.0 / 3.0, -2.5e-17, 12345.678901234567}) {
    CHECK(std::stod(format_double(v)) == doctest::Approx(v).epsilon(1e-11));
  }
}
