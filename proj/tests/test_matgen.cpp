#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "gspd/errors.hpp"
#include "gspd/matgen.hpp"
#include "gspd/metrics.hpp"
#include "oracles.hpp"

using doctest::Approx;
using gspd::FactorMatrix;
using gspd::Method;
using gspd::SimConfig;
using gspd::SymMatrix;
using gspd::UndirectedGraph;
using gspd::Vector;

namespace {

SimConfig config(Method m, gspd::Seed seed) {
  SimConfig cfg;
  cfg.method = m;
  cfg.seed = seed;
  return cfg;
}

oracle::Rows rows_of(const FactorMatrix& q) {
  oracle::Rows out;
  for (std::size_t i = 0; i < q.p(); ++i) out.emplace_back(q.row(i).begin(), q.row(i).end());
  return out;
}

void check_pattern_exact(const SymMatrix& m, const UndirectedGraph& g) {
  for (std::size_t i = 0; i < g.p(); ++i)
    for (std::size_t j = 0; j < g.p(); ++j)
      if (i != j && !g.is_adjacent(i, j)) CHECK(m(i, j) == 0.0);
}

}  // namespace

TEST_CASE("parse_method and method_code") {
  for (Method m : {Method::DiagDominance, Method::EigShift, Method::CondShift, Method::PartialOrth})
    CHECK(gspd::parse_method(gspd::method_code(m)) == m);
  CHECK(gspd::parse_method("PartialOrth") == Method::PartialOrth);
  CHECK_THROWS_AS(gspd::parse_method("wishart"), gspd::ParameterError);
}

TEST_CASE("SimConfig validation") {
  SimConfig cfg = config(Method::EigShift, 1);
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(cfg.validate(), gspd::ParameterError);
  cfg = config(Method::CondShift, 1);
  cfg.kappa0 = 1.0;
  CHECK_THROWS_AS(cfg.validate(), gspd::ParameterError);
  cfg = config(Method::DiagDominance, 1);
  cfg.perturbation_dist = {-1.0, 1.0};
  CHECK_THROWS_AS(cfg.validate(), gspd::ParameterError);
}

TEST_CASE("random_constrained_sym") {
  const SimConfig cfg = config(Method::DiagDominance, 3);
  CHECK(gspd::random_constrained_sym(UndirectedGraph(3), cfg) == SymMatrix(3));

  const SymMatrix full = gspd::random_constrained_sym(UndirectedGraph::complete(3), cfg);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) CHECK(full(i, j) == 0.0);
      else CHECK((full(i, j) >= 0.0 && full(i, j) <= 1.0));
    }

  const UndirectedGraph g(3, {{0, 1}});
  const SymMatrix m = gspd::random_constrained_sym(g, cfg);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK((m(i, j) != 0.0) == (i != j && g.is_adjacent(i, j)));
}

TEST_CASE("diag_dominance") {
  const auto empty = gspd::diag_dominance(UndirectedGraph(3), config(Method::DiagDominance, 1));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(empty.matrix(i, i) > 0.0);
    CHECK(empty.matrix(i, i) <= 1.0);
  }
  check_pattern_exact(empty.matrix, UndirectedGraph(3));

  SymMatrix m(2);
  m.set(0, 1, 0.5);
  gspd::apply_diag_dominance(m, Vector{0.1, 0.2});
  CHECK(m(0, 0) == Approx(0.6));
  CHECK(m(1, 1) == Approx(0.7));
  CHECK(m(0, 1) == 0.5);
  const auto ev = gspd::sym_eigenvalues(m);
  const auto ref = oracle::eig2(0.6, 0.5, 0.7);
  CHECK(ev[0] == Approx(ref[0]));
  CHECK(ev[0] > 0.0);
}

TEST_CASE("diag_dominance: SPD, pattern, ratio below one and exact margins") {
  for (gspd::Seed s = 0; s < 20; ++s) {
    const auto g = gspd::erdos_renyi(50, 0.25, 1000 + s);
    const SimConfig cfg = config(Method::DiagDominance, s);
    const auto r = gspd::diag_dominance(g, cfg);
    CHECK(gspd::is_spd(r.matrix));
    check_pattern_exact(r.matrix, g);
    CHECK(gspd::max_ratio(r.matrix) < 1.0);

    // Replay the perturbation draws: they follow the off-diagonal draws.
    gspd::Rng rng(s);
    (void)gspd::random_constrained_sym(g, cfg, rng);
    for (std::size_t i = 0; i < g.p(); ++i) {
      const double delta = cfg.perturbation_dist.draw_open_low(rng);
      double off = 0.0;
      for (std::size_t j = 0; j < g.p(); ++j)
        if (j != i) off += std::abs(r.matrix(i, j));
      CHECK(r.matrix(i, i) - off > 0.0);
      CHECK(r.matrix(i, i) - off == Approx(delta).epsilon(1e-12).scale(r.matrix(i, i)));
    }
  }
}

TEST_CASE("eig_shift") {
  auto a = gspd::eig_shift(SymMatrix::diagonal(Vector{-1, 2}), 0.5);
  CHECK(a(0, 0) == Approx(0.5));
  CHECK(a(1, 1) == Approx(3.5));
  auto b = gspd::eig_shift(SymMatrix::identity(3), 1.0);
  CHECK(b == SymMatrix::identity(3).scaled(2.0));
  auto c = gspd::eig_shift(SymMatrix::from_rows({{0, 1}, {1, 0}}), 0.25);
  CHECK(c(0, 0) == Approx(1.25));
  CHECK(c(0, 1) == 1.0);
  CHECK(gspd::sym_eigenvalues(c).front() == Approx(0.25));
  CHECK_THROWS_AS(gspd::eig_shift(SymMatrix::identity(2), 0.0), gspd::ParameterError);
}

TEST_CASE("cond_shift") {
  auto a = gspd::cond_shift(SymMatrix::diagonal(Vector{1, 3}), 2.0);
  CHECK(a(0, 0) == Approx(2));
  CHECK(a(1, 1) == Approx(4));
  CHECK(gspd::condition_number(a) == Approx(2));
  auto b = gspd::cond_shift(SymMatrix::diagonal(Vector{1, 3}), 3.0);
  CHECK(b(0, 0) == Approx(1));
  CHECK(b(1, 1) == Approx(3));
  auto c = gspd::cond_shift(SymMatrix::diagonal(Vector{-1, 1}), 2.0);
  CHECK(c(0, 0) == Approx(2));
  CHECK(c(1, 1) == Approx(4));
  CHECK_THROWS_AS(gspd::cond_shift(SymMatrix::diagonal(Vector{-2, -1}), 2.0), gspd::DomainError);
  CHECK_THROWS_AS(gspd::cond_shift(SymMatrix::identity(3), 2.0), gspd::DomainError);
  CHECK_THROWS_AS(gspd::cond_shift(SymMatrix::diagonal(Vector{1, 3}), 1.0), gspd::ParameterError);
}

TEST_CASE("shifts only touch the diagonal") {
  const auto g = gspd::erdos_renyi(20, 0.3, 4);
  SimConfig cfg = config(Method::EigShift, 4);
  cfg.entry_dist = {-1.0, 1.0};
  const SymMatrix base = gspd::random_constrained_sym(g, cfg);
  for (const SymMatrix& m : {gspd::eig_shift(base, 0.5), gspd::cond_shift(base, 10.0)})
    for (std::size_t i = 0; i < 20; ++i)
      for (std::size_t j = 0; j < 20; ++j)
        if (i != j) CHECK(m(i, j) == base(i, j));
}

TEST_CASE("partial_orth: complete graph leaves the factor untouched") {
  const SimConfig cfg = config(Method::PartialOrth, 21);
  const auto r = gspd::partial_orth(UndirectedGraph::complete(6), cfg);
  gspd::Rng rng(21);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK((*r.factor)(i, j) == rng.uniform());
}

TEST_CASE("partial_orth: empty graph gives a diagonal matrix") {
  const auto r = gspd::simulate(UndirectedGraph(3), config(Method::PartialOrth, 5));
  check_pattern_exact(r.matrix, UndirectedGraph(3));
  CHECK(gspd::is_spd(r.matrix));
}

TEST_CASE("partial_orth: hand-executed path graph") {
  const UndirectedGraph g(3, {{0, 1}, {1, 2}});
  const auto q = FactorMatrix::from_rows({{1, 0, 0}, {1, 1, 0}, {1, 1, 1}});
  const auto r = gspd::partial_orth(g, q, config(Method::PartialOrth, 0));
  CHECK(*r.factor == FactorMatrix::from_rows({{1, 0, 0}, {1, 1, 0}, {0, 1, 1}}));
  CHECK(r.matrix == SymMatrix::from_rows({{1, 1, 0}, {1, 2, 1}, {0, 1, 2}}));
  CHECK(r.matrix(0, 2) == 0.0);
  CHECK(gspd::is_spd(r.matrix));
}

TEST_CASE("partial_orth matches the repeated-projection oracle on all graphs with p <= 4") {
  for (std::size_t p = 1; p <= 4; ++p) {
    std::vector<gspd::Edge> all;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j) all.emplace_back(i, j);
    for (std::size_t mask = 0; mask < (std::size_t{1} << all.size()); ++mask) {
      std::vector<gspd::Edge> edges;
      for (std::size_t k = 0; k < all.size(); ++k)
        if (mask >> k & 1) edges.push_back(all[k]);
      const UndirectedGraph g(p, edges);
      gspd::Rng rng(gspd::derive_seed(p, std::to_string(mask)));
      FactorMatrix q(p);
      for (std::size_t i = 0; i < p; ++i)
        for (double& x : q.row(i)) x = rng.uniform(-1, 1);
      const auto r = gspd::partial_orth(g, q, config(Method::PartialOrth, 0));
      const auto expected = oracle::gram(oracle::partial_orth_by_repeated_projection(
          rows_of(q), [&](std::size_t i, std::size_t j) { return g.is_adjacent(i, j); }));
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) CHECK(std::abs(r.matrix(i, j) - expected[i][j]) <= 1e-10);
    }
  }
}

TEST_CASE("partial_orth: missing-edge entries are dot products of the stored rows") {
  for (gspd::Seed s = 0; s < 120; ++s) {
    const std::size_t p = 2 + s % 7;
    const auto g = gspd::erdos_renyi(p, 0.4, 500 + s);
    const auto r = gspd::partial_orth(g, config(Method::PartialOrth, s));
    const auto rows = rows_of(*r.factor);
    const double scale = r.matrix.max_diagonal();
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        if (i == j || g.is_adjacent(i, j)) continue;
        const double direct = oracle::naive_dot(rows[i], rows[j]);
        CHECK(std::abs(r.matrix(i, j) - direct) <= 1e-12 * scale);
        CHECK(std::abs(direct) <= 1e-8 * scale);
      }
  }
}

TEST_CASE("partial_orth: re-running a row orthogonalization is idempotent") {
  const auto g = gspd::erdos_renyi(30, 0.2, 8);
  const auto r = gspd::partial_orth(g, config(Method::PartialOrth, 8));
  FactorMatrix q = *r.factor;
  const double zero_norm = gspd::zero_norm_threshold(q.max_row_norm());
  for (gspd::Vertex i = 0; i < 30; ++i) gspd::orthogonalize_row(q, g, i, zero_norm);
  for (std::size_t i = 0; i < 30; ++i) {
    const double row_norm = gspd::norm2(r.factor->row(i));
    for (std::size_t j = 0; j < 30; ++j)
      CHECK(std::abs(q(i, j) - (*r.factor)(i, j)) <= 1e-10 * row_norm);
  }
}

TEST_CASE("partial_orth: zero rows are redrawn, then fail hard") {
  // Row 2 is a combination of rows 0 and 1 and is orthogonalized against both.
  const UndirectedGraph g(3);
  auto q = FactorMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {2, 3, 0}});
  const auto r = gspd::partial_orth(g, q, config(Method::PartialOrth, 3));
  CHECK(r.resampled_rows >= 1);
  CHECK(gspd::is_spd(r.matrix));
  CHECK(std::abs(r.matrix(0, 2)) <= 1e-12);

  // A constant entry distribution can never escape the span.
  SimConfig stuck = config(Method::PartialOrth, 3);
  stuck.entry_dist = {0.0, 0.0};
  CHECK_THROWS_AS(gspd::partial_orth(g, q, stuck), gspd::NumericalError);
}

TEST_CASE("partial_orth: adjacent entries are generically nonzero") {
  std::size_t total = 0, nonzero = 0;
  for (gspd::Seed s = 0; s < 30; ++s) {
    const auto g = gspd::erdos_renyi(25, 0.3, 900 + s);
    const auto r = gspd::simulate(g, config(Method::PartialOrth, s));
    const double cutoff = 1e-8 * r.matrix.max_diagonal();
    for (auto [i, j] : g.edges()) {
      ++total;
      nonzero += std::abs(r.matrix(i, j)) > cutoff ? 1 : 0;
    }
  }
  CHECK(static_cast<double>(nonzero) >= 0.99 * static_cast<double>(total));
}

TEST_CASE("simulate: every method yields SPD matrices with the graph's zero pattern") {
  for (Method m : {Method::DiagDominance, Method::EigShift, Method::CondShift, Method::PartialOrth})
    for (gspd::Seed s = 0; s < 10; ++s) {
      const auto g = gspd::erdos_renyi(20, 0.2, 40 + s);
      SimConfig cfg = config(m, s);
      cfg.epsilon = 0.5;
      const auto r = gspd::simulate(g, cfg);
      CHECK(gspd::is_spd(r.matrix));
      check_pattern_exact(r.matrix, g);
      CHECK(r.method == m);
      CHECK(r.factor.has_value() == (m == Method::PartialOrth));
    }
}

TEST_CASE("simulate: eigenvalue and condition-number controls") {
  const auto g = gspd::erdos_renyi(30, 0.3, 77);
  SimConfig eig = config(Method::EigShift, 1);
  eig.epsilon = 0.5;
  CHECK(gspd::sym_eigenvalues(gspd::simulate(g, eig).matrix).front() >= 0.5 - 1e-8);
  SimConfig cond = config(Method::CondShift, 1);
  cond.kappa0 = 10.0;
  CHECK(std::abs(gspd::condition_number(gspd::simulate(g, cond).matrix) - 10.0) <= 1e-6);
}

TEST_CASE("validate_result reports the offending pair or eigenvalue") {
  gspd::SpdResult bad;
  bad.graph = UndirectedGraph(2);
  bad.matrix = SymMatrix::from_rows({{1, 0.5}, {0.5, 1}});
  try {
    gspd::validate_result(bad, 1e-8);
    FAIL("expected ConsistencyError");
  } catch (const gspd::ConsistencyError& e) {
    CHECK(e.has_position());
    CHECK(e.row() == 0);
    CHECK(e.col() == 1);
  }
  bad.graph = UndirectedGraph::complete(2);
  bad.matrix = SymMatrix::from_rows({{1, 2}, {2, 1}});
  try {
    gspd::validate_result(bad, 1e-8);
    FAIL("expected ConsistencyError");
  } catch (const gspd::ConsistencyError& e) {
    CHECK_FALSE(e.has_position());
    CHECK(e.value() == Approx(-1.0));
  }
}

TEST_CASE("condition number of partial_orth output grows like p^2 for dense graphs") {
  for (std::size_t p : {50u, 100u}) {
    std::vector<double> conds;
    for (gspd::Seed s = 0; s < 20; ++s) {
      const auto g = gspd::erdos_renyi(p, 0.5, 3000 + s);
      conds.push_back(gspd::condition_number(gspd::simulate(g, config(Method::PartialOrth, s)).matrix));
    }
    CHECK(gspd::median(conds) >= static_cast<double>(p * p));
  }
}
