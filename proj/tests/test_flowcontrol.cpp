#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "lqdg/feedback.hpp"
#include "lqdg/flowcontrol.hpp"
#include "lqdg/indices.hpp"
#include "lqdg/openloop.hpp"
#include "lqdg/social.hpp"

using namespace lqdg;

namespace {

struct Chain {
  double j_fb, j_social, j_ol, rho_fb, rho_ol, chi;
};

Chain solve_chain(int n, Normalization tag) {
  const Game game = build_normalized_flow_control(n, tag);
  const DerivedParams params = derive_params(game);
  const auto fb = solve_feedback_fixedpoint(game, params);
  const auto ol = solve_openloop(game, params);
  const auto social = solve_social(game, params);
  Chain c;
  c.j_fb = fb.weighted_cost;
  c.j_social = social.cost;
  c.j_ol = ol.weighted_cost;
  c.rho_fb = price_of_anarchy_fb(game, {fb}, social);
  c.rho_ol = price_of_anarchy_ol(ol, social);
  c.chi = price_of_information(c.rho_ol, c.rho_fb);
  return c;
}

}  // namespace

TEST_CASE("builders produce the documented games") {
  const Game unit = build_flow_control(2);
  CHECK(unit.a() == 0.0);
  CHECK(unit.b()[0] == 1.0);
  CHECK(unit.x0() == 1.0);
  CHECK(unit.mu()[0] == 0.5);

  const auto result = solve_feedback_eigen(unit, derive_params(unit));
  REQUIRE(result.equilibria.size() == 1);
  CHECK(result.equilibria[0].lambda == doctest::Approx(1.15470053838).epsilon(1e-9));

  const Game shared = build_normalized_flow_control(4, Normalization::OneOverN);
  CHECK(shared.b()[0] == doctest::Approx(0.25).epsilon(1e-15));
  const Game damped = build_normalized_flow_control(4, Normalization::SqrtN);
  CHECK(damped.b()[0] == doctest::Approx(0.5).epsilon(1e-15));
  const Game custom =
      build_normalized_flow_control(4, Normalization::Custom, 2.5);
  CHECK(custom.b()[0] == doctest::Approx(0.4).epsilon(1e-15));

  CHECK_THROWS_AS(build_flow_control(0), InvalidArgument);
  CHECK_THROWS_AS(build_normalized_flow_control(3, Normalization::Custom, 0.0),
                  InvalidArgument);
}

TEST_CASE("single user is efficient") {
  const Game game = build_flow_control(1);
  const DerivedParams params = derive_params(game);
  const auto fb = solve_feedback_eigen(game, params);
  const auto social = solve_social(game, params);
  CHECK(price_of_anarchy_fb(game, fb.equilibria, social) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed-form rows at the published points") {
  const FlowIndices two = closed_form_flow_indices(2, Normalization::One);
  CHECK(two.j_fb == doctest::Approx(0.577350269190).epsilon(1e-11));
  CHECK(two.j_social == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(two.j_ol == doctest::Approx(0.530330085890).epsilon(1e-11));
  CHECK(two.rho_fb == doctest::Approx(1.15470053838).epsilon(1e-11));
  CHECK(two.rho_ol == doctest::Approx(1.06066017178).epsilon(1e-11));
  CHECK(two.chi == doctest::Approx(0.918558653544).epsilon(1e-11));

  const FlowIndices four = closed_form_flow_indices(4, Normalization::One);
  CHECK(four.j_ol == doctest::Approx(0.3125).epsilon(1e-15));
  CHECK(four.j_fb == doctest::Approx(1.0 / std::sqrt(7.0)).epsilon(1e-12));
}

TEST_CASE("large-population chi crosses 1 exactly between 2 and 3 users") {
  CHECK(chi_large_population(2) > 1.0);
  CHECK(chi_large_population(3) < 1.0);
  for (int n = 3; n <= 50; ++n) CHECK(chi_large_population(n) < 1.0);
}

TEST_CASE("exact chi stays below 1 from 2 users on and above sqrt(2)/2") {
  for (int n = 2; n <= 100; ++n) {
    const double chi = closed_form_flow_indices(n, Normalization::One).chi;
    CHECK(chi < 1.0);
    CHECK(chi >= std::sqrt(2.0) / 2.0);
    if (n >= 4) {
      CHECK(chi - std::sqrt(2.0) / 2.0 <= 1.0 / n);
    }
  }
  CHECK(closed_form_flow_indices(1, Normalization::One).chi ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("solvers match the closed forms for every normalization") {
  for (int n = 1; n <= 30; ++n) {
    for (const Normalization tag :
         {Normalization::One, Normalization::OneOverN, Normalization::SqrtN}) {
      const Chain solved = solve_chain(n, tag);
      const FlowIndices closed = closed_form_flow_indices(n, tag);
      CHECK(std::abs(solved.j_fb - closed.j_fb) <=
            1e-9 * std::max(1.0, closed.j_fb));
      CHECK(std::abs(solved.j_social - closed.j_social) <=
            1e-9 * std::max(1.0, closed.j_social));
      CHECK(std::abs(solved.j_ol - closed.j_ol) <=
            1e-9 * std::max(1.0, closed.j_ol));
      CHECK(std::abs(solved.rho_fb - closed.rho_fb) <= 1e-9 * closed.rho_fb);
      CHECK(std::abs(solved.rho_ol - closed.rho_ol) <= 1e-9 * closed.rho_ol);
      CHECK(std::abs(solved.chi - closed.chi) <= 1e-9 * closed.chi);
    }
  }
}

TEST_CASE("indices are independent of the normalization factor") {
  for (int n = 2; n <= 30; ++n) {
    const Chain base = solve_chain(n, Normalization::One);
    for (const Normalization tag :
         {Normalization::OneOverN, Normalization::SqrtN}) {
      const Chain other = solve_chain(n, tag);
      CHECK(std::abs(base.rho_fb - other.rho_fb) <= 1e-10 * base.rho_fb);
      CHECK(std::abs(base.rho_ol - other.rho_ol) <= 1e-10 * base.rho_ol);
      CHECK(std::abs(base.chi - other.chi) <= 1e-10 * base.chi);
    }
  }
}

TEST_CASE("reproduce: open-loop overtakes feedback in the unit family") {
  const Dataset d = reproduce(ReproduceTarget::FigPoiVsN, 20);
  REQUIRE(d.columns[0] == "n");
  REQUIRE(d.rows.front()[0] == 2.0);

  const auto column = [&](const char* name) {
    for (std::size_t c = 0; c < d.columns.size(); ++c) {
      if (d.columns[c] == name) return c;
    }
    REQUIRE(false);
    return std::size_t{0};
  };
  const std::size_t j_fb = column("j_fb_solver");
  const std::size_t j_ol = column("j_ol_solver");
  const std::size_t chi = column("chi");

  for (const auto& row : d.rows) {
    CHECK(row[chi] >= std::sqrt(2.0) / 2.0);
    CHECK(row[chi] < 1.0);
    if (row[0] == 4.0) {
      CHECK(row[j_ol] == doctest::Approx(0.3125).epsilon(1e-9));
      CHECK(row[j_fb] == doctest::Approx(1.0 / std::sqrt(7.0)).epsilon(1e-9));
      CHECK(row[j_ol] < row[j_fb]);
    }
  }
  // Ascending n, one row per population size.
  for (std::size_t r = 1; r < d.rows.size(); ++r) {
    CHECK(d.rows[r][0] == d.rows[r - 1][0] + 1.0);
  }
}

TEST_CASE("reproduce: table datasets carry the approximations") {
  const Dataset t2 = reproduce(ReproduceTarget::Table2, 10);
  const auto column = [&](const char* name) {
    for (std::size_t c = 0; c < t2.columns.size(); ++c) {
      if (t2.columns[c] == name) return c;
    }
    REQUIRE(false);
    return std::size_t{0};
  };
  const std::size_t f = column("f");
  const std::size_t rho_approx = column("rho_fb_approx");
  const std::size_t chi_approx = column("chi_approx");
  for (const auto& row : t2.rows) {
    const double n = row[0];
    CHECK(row[rho_approx] == doctest::Approx(std::sqrt(n / 2.0)).epsilon(1e-12));
    CHECK(row[chi_approx] ==
          doctest::Approx(std::sqrt(2.0) / 2.0 * (1.0 + 1.0 / n)).epsilon(1e-12));
    CHECK((row[f] == 1.0 || row[f] == n));
  }

  const Dataset t1 = reproduce(ReproduceTarget::Table1, 6);
  CHECK(t1.rows.front()[0] == 1.0);
  CHECK(t1.rows.size() == 6);
}

TEST_CASE("normalized figures keep the indices and rescale the costs") {
  const Dataset poa_unit = reproduce(ReproduceTarget::FigPoaVsN, 12);
  const Dataset poa_norm = reproduce(ReproduceTarget::FigNormalizedPoa, 12);
  REQUIRE(poa_unit.rows.size() == poa_norm.rows.size());
  for (std::size_t r = 0; r < poa_unit.rows.size(); ++r) {
    CHECK(poa_unit.rows[r][1] == doctest::Approx(poa_norm.rows[r][1]).epsilon(1e-10));
    CHECK(poa_unit.rows[r][2] == doctest::Approx(poa_norm.rows[r][2]).epsilon(1e-10));
  }

  const Dataset sqrt_poi = reproduce(ReproduceTarget::FigSqrtNPoi, 50);
  const auto& last = sqrt_poi.rows.back();
  // Costs approach 1/2 (open loop) and sqrt(2)/2 (feedback).
  CHECK(std::abs(last[2] - 0.5) <= 0.02);
  CHECK(std::abs(last[1] - std::sqrt(2.0) / 2.0) <= 0.02);
}

TEST_CASE("datasets serialize deterministically") {
  const Dataset d = reproduce(ReproduceTarget::FigPoaVsN, 8);
  std::ostringstream first, second;
  write_csv(first, d);
  write_csv(second, d);
  CHECK(first.str() == second.str());
  CHECK(first.str().substr(0, first.str().find('\n')) ==
        "n,rho_fb_solver,rho_ol_solver,rho_fb_closed,rho_ol_closed,"
        "rho_fb_approx,chi");
}
