#include "lqdg/flowcontrol.hpp"

#include <cmath>
#include <string>

#include "lqdg/feedback.hpp"
#include "lqdg/indices.hpp"
#include "lqdg/openloop.hpp"
#include "lqdg/social.hpp"

namespace lqdg {

double cost_scale(Normalization tag, int n, double custom_factor) {
  switch (tag) {
    case Normalization::One:
      return 1.0;
    case Normalization::OneOverN:
      return static_cast<double>(n);
    case Normalization::SqrtN:
      return std::sqrt(static_cast<double>(n));
    case Normalization::Custom:
      break;
  }
  if (!(custom_factor > 0.0)) {
    throw InvalidArgument("custom normalization factor must be positive");
  }
  return custom_factor;
}

Game build_flow_control(int n) {
  return build_normalized_flow_control(n, Normalization::One);
}

Game build_normalized_flow_control(int n, Normalization tag,
                                   double custom_factor) {
  if (n < 1) {
    throw InvalidArgument("flow-control model needs at least one user");
  }
  const double b = 1.0 / cost_scale(tag, n, custom_factor);
  GameSpec spec;
  spec.a = 0.0;
  spec.b.assign(n, b);
  spec.q.assign(n, 1.0);
  spec.r.assign(n, 1.0);
  spec.x0 = 1.0;
  return validate_spec(std::move(spec));
}

FlowIndices closed_form_flow_indices(int n, Normalization tag,
                                     double custom_factor) {
  if (n < 1) {
    throw InvalidArgument("flow-control model needs at least one user");
  }
  const double nn = static_cast<double>(n);
  FlowIndices row;
  row.n = n;
  row.f = cost_scale(tag, n, custom_factor);
  row.j_fb = row.f / std::sqrt(2.0 * nn - 1.0);
  row.j_social = row.f / nn;
  row.j_ol = row.f / std::sqrt(nn) * (0.5 + 0.5 / nn);
  row.rho_fb = nn / std::sqrt(2.0 * nn - 1.0);
  row.rho_ol = std::sqrt(nn) * (nn + 1.0) / (2.0 * nn);
  row.chi = std::sqrt(2.0 - 1.0 / nn) * (0.5 + 0.5 / nn);
  return row;
}

double chi_large_population(int n) {
  return (1.0 + 1.0 / static_cast<double>(n)) / std::sqrt(2.0);
}

std::optional<ReproduceTarget> parse_reproduce_target(std::string_view name) {
  if (name == "table1") return ReproduceTarget::Table1;
  if (name == "table2") return ReproduceTarget::Table2;
  if (name == "fig_poi_vs_N") return ReproduceTarget::FigPoiVsN;
  if (name == "fig_poa_vs_N") return ReproduceTarget::FigPoaVsN;
  if (name == "fig_normalized_poi") return ReproduceTarget::FigNormalizedPoi;
  if (name == "fig_normalized_poa") return ReproduceTarget::FigNormalizedPoa;
  if (name == "fig_sqrtN_poi") return ReproduceTarget::FigSqrtNPoi;
  return std::nullopt;
}

namespace {

struct SolvedPoint {
  double j_fb, j_social, j_ol, rho_fb, rho_ol, chi;
};

SolvedPoint solve_point(int n, Normalization tag) {
  const Game game = build_normalized_flow_control(n, tag);
  const DerivedParams params = derive_params(game);
  const FeedbackEquilibrium fb = solve_feedback_fixedpoint(game, params);
  const OpenLoopEquilibrium ol = solve_openloop(game, params);
  const SocialOptimum social = solve_social(game, params);
  SolvedPoint p;
  p.j_fb = fb.weighted_cost;
  p.j_social = social.cost;
  p.j_ol = ol.weighted_cost;
  p.rho_fb = price_of_anarchy_fb(game, {fb}, social);
  p.rho_ol = price_of_anarchy_ol(ol, social);
  p.chi = price_of_information(p.rho_ol, p.rho_fb);
  return p;
}

Dataset figure_dataset(Normalization tag, int n_max, bool poi) {
  Dataset d;
  if (poi) {
    d.columns = {"n",        "j_fb_solver", "j_ol_solver", "j_fb_closed",
                 "j_ol_closed", "chi",      "chi_approx"};
  } else {
    d.columns = {"n",             "rho_fb_solver", "rho_ol_solver",
                 "rho_fb_closed", "rho_ol_closed", "rho_fb_approx",
                 "chi"};
  }
  for (int n = 2; n <= n_max; ++n) {
    const SolvedPoint p = solve_point(n, tag);
    const FlowIndices c = closed_form_flow_indices(n, tag);
    if (poi) {
      d.rows.push_back({static_cast<double>(n), p.j_fb, p.j_ol, c.j_fb, c.j_ol,
                        p.chi, chi_large_population(n)});
    } else {
      d.rows.push_back({static_cast<double>(n), p.rho_fb, p.rho_ol, c.rho_fb,
                        c.rho_ol, std::sqrt(n / 2.0), p.chi});
    }
  }
  return d;
}

}  // namespace

Dataset reproduce(ReproduceTarget target, int n_max) {
  if (n_max < 2) {
    throw InvalidArgument("reproduce needs n_max >= 2");
  }
  Dataset d;
  switch (target) {
    case ReproduceTarget::Table1: {
      d.columns = {"n",         "f",           "j_fb_closed", "j_social_closed",
                   "j_ol_closed", "rho_fb_closed", "rho_ol_closed", "chi_closed",
                   "j_fb_solver", "j_social_solver", "j_ol_solver",
                   "rho_fb_solver", "rho_ol_solver", "chi_solver"};
      for (int n = 1; n <= n_max; ++n) {
        const FlowIndices c = closed_form_flow_indices(n, Normalization::One);
        const SolvedPoint p = solve_point(n, Normalization::One);
        d.rows.push_back({static_cast<double>(n), c.f, c.j_fb, c.j_social,
                          c.j_ol, c.rho_fb, c.rho_ol, c.chi, p.j_fb, p.j_social,
                          p.j_ol, p.rho_fb, p.rho_ol, p.chi});
      }
      return d;
    }
    case ReproduceTarget::Table2: {
      // Two normalizations: per-user influence 1 (f = 1) and 1/n (f = n).
      // Approximation columns follow the large-population forms; solver
      // columns give the exact values for comparison.
      d.columns = {"n",        "f",           "j_fb_approx", "j_social",
                   "j_ol",     "rho_fb_approx", "rho_ol",    "chi_approx",
                   "j_fb_solver", "rho_fb_solver", "chi_solver"};
      for (int n = 2; n <= n_max; ++n) {
        const double nn = n;
        for (const Normalization tag :
             {Normalization::One, Normalization::OneOverN}) {
          const double f = cost_scale(tag, n);
          const FlowIndices c = closed_form_flow_indices(n, tag);
          const SolvedPoint p = solve_point(n, tag);
          d.rows.push_back({nn, f, f / std::sqrt(2.0 * nn), c.j_social, c.j_ol,
                            std::sqrt(nn / 2.0), c.rho_ol,
                            chi_large_population(n), p.j_fb, p.rho_fb, p.chi});
        }
      }
      return d;
    }
    case ReproduceTarget::FigPoiVsN:
      return figure_dataset(Normalization::One, n_max, /*poi=*/true);
    case ReproduceTarget::FigPoaVsN:
      return figure_dataset(Normalization::One, n_max, /*poi=*/false);
    case ReproduceTarget::FigNormalizedPoi:
      return figure_dataset(Normalization::OneOverN, n_max, /*poi=*/true);
    case ReproduceTarget::FigNormalizedPoa:
      return figure_dataset(Normalization::OneOverN, n_max, /*poi=*/false);
    case ReproduceTarget::FigSqrtNPoi:
      return figure_dataset(Normalization::SqrtN, n_max, /*poi=*/true);
  }
  throw InvalidArgument("unknown reproduce target");
}

}  // namespace lqdg
