#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "gspd/errors.hpp"
#include "gspd/io.hpp"
#include "gspd/rng.hpp"

using gspd::SymMatrix;

TEST_CASE("format_double round-trips exactly") {
  gspd::Rng rng(1);
  for (int k = 0; k < 2000; ++k) {
    const double x = rng.normal() * std::pow(10.0, rng.uniform(-300, 300));
    CHECK(gspd::parse_double(gspd::format_double(x)) == x);
  }
  CHECK(gspd::format_double(0.1) == "0.1");
  CHECK(gspd::format_double(1e-8) == "1e-08");
  CHECK(std::isnan(gspd::parse_double(gspd::format_double(std::numeric_limits<double>::quiet_NaN()))));
  CHECK_THROWS_AS(gspd::parse_double("1.5x"), gspd::IoError);
  CHECK_THROWS_AS(gspd::parse_double(""), gspd::IoError);
  CHECK_THROWS_AS(gspd::parse_int("12.5"), gspd::IoError);
}

TEST_CASE("Matrix Market coordinate output") {
  SymMatrix m(3);
  m.set(0, 0, 2);
  m.set(1, 1, 3);
  m.set(2, 2, 4);
  m.set(2, 0, 0.5);
  std::ostringstream out;
  gspd::write_matrix_market(out, m, gspd::MatrixMarketLayout::Coordinate);
  CHECK(out.str() ==
        "%%MatrixMarket matrix coordinate real symmetric\n3 3 4\n1 1 2\n3 1 0.5\n2 2 3\n3 3 4\n");
  std::ostringstream arr;
  gspd::write_matrix_market(arr, m, gspd::MatrixMarketLayout::Array);
  CHECK(arr.str() == "%%MatrixMarket matrix array real symmetric\n3 3\n2\n0\n0.5\n3\n0\n4\n");
}

TEST_CASE("Matrix Market round trip is exact in both layouts") {
  gspd::Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t p = 1 + t % 9;
    SymMatrix m(p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j)
        if (rng.bernoulli(0.5) || i == j) m.set(i, j, rng.normal() / 3.0);
    for (auto layout : {gspd::MatrixMarketLayout::Auto, gspd::MatrixMarketLayout::Coordinate,
                        gspd::MatrixMarketLayout::Array}) {
      std::stringstream io;
      gspd::write_matrix_market(io, m, layout);
      CHECK(gspd::read_matrix_market(io) == m);
    }
  }
}

TEST_CASE("Matrix Market reader accepts general symmetric input and rejects bad files") {
  std::istringstream general(
      "%%MatrixMarket matrix coordinate integer general\n% comment\n2 2 3\n1 1 1\n1 2 2\n2 1 2\n");
  CHECK(gspd::read_matrix_market(general) == SymMatrix::from_rows({{1, 2}, {2, 0}}));
  for (const char* bad : {
           "",
           "%%MatrixMarket matrix coordinate complex symmetric\n1 1 1\n1 1 1\n",
           "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 1\n",
           "%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1\n",
           "%%MatrixMarket matrix coordinate real symmetric\n2 3 0\n",
           "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 2 1\n",
           "%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n",
           "%%MatrixMarket matrix array real symmetric\n1 1\n1\n2\n",
       }) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(gspd::read_matrix_market(in), gspd::IoError);
  }
}

TEST_CASE("manifest round trip") {
  gspd::Manifest m{{"method", "po"}, {"seed", "7"}, {"zero_tol", "1e-08"}};
  std::stringstream io;
  gspd::write_manifest(io, m);
  CHECK(io.str() == "method = po\nseed = 7\nzero_tol = 1e-08\n");
  CHECK(gspd::read_manifest(io) == m);
  std::istringstream bad("no equals sign\n");
  CHECK_THROWS_AS(gspd::read_manifest(bad), gspd::IoError);
}
