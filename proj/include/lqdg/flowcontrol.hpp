#pragma once

#include <optional>
#include <string_view>

#include "lqdg/game.hpp"
#include "lqdg/textio.hpp"

namespace lqdg {

/// Normalization of the shared-queue dynamics. Tags are named after how
/// the flow-control literature presents the variants; what matters here
/// is the per-user influence b on the queue and the cost scale f = 1/b:
///   One      b = 1          f = 1
///   OneOverN b = 1/n        f = n      (each user owns a 1/n share)
///   SqrtN    b = 1/sqrt(n)  f = sqrt(n)
///   Custom   b = 1/c        f = c
struct FlowControlConfig {
  int n_users = 1;
  enum class Normalization { One, OneOverN, SqrtN, Custom } tag = Normalization::One;
  double custom_factor = 1.0;
};

using Normalization = FlowControlConfig::Normalization;

/// Cost-scale factor f(n) for a tag; the builders use b_i = 1/f(n).
double cost_scale(Normalization tag, int n, double custom_factor = 1.0);

/// Unit game of the shared-bottleneck model: a = 0, b = q = r = 1,
/// x0 = 1, equal weights.
Game build_flow_control(int n);

Game build_normalized_flow_control(int n, Normalization tag,
                                   double custom_factor = 1.0);

/// Closed-form equilibrium costs and indices of the symmetric family:
///   J_fb = f/sqrt(2n-1), J_social = f/n, J_ol = (f/sqrt(n))(1/2 + 1/(2n)),
///   rho_fb = n/sqrt(2n-1), rho_ol = sqrt(n)(n+1)/(2n),
///   chi = sqrt(2 - 1/n)(1/2 + 1/(2n)).
/// The three indices do not depend on the normalization.
struct FlowIndices {
  int n = 0;
  double f = 0.0;
  double j_fb = 0.0;
  double j_social = 0.0;
  double j_ol = 0.0;
  double rho_fb = 0.0;
  double rho_ol = 0.0;
  double chi = 0.0;
};

FlowIndices closed_form_flow_indices(int n, Normalization tag,
                                     double custom_factor = 1.0);

/// Large-population form of chi for the symmetric family,
/// (1 + 1/n)/sqrt(2); crosses 1 between n = 2 and n = 3.
double chi_large_population(int n);

enum class ReproduceTarget {
  Table1,
  Table2,
  FigPoiVsN,
  FigPoaVsN,
  FigNormalizedPoi,
  FigNormalizedPoa,
  FigSqrtNPoi,
};

std::optional<ReproduceTarget> parse_reproduce_target(std::string_view name);

/// Emits the dataset behind a table or figure: solver values next to the
/// closed forms (and large-population approximations where the source
/// uses them), one row per population size in ascending order.
Dataset reproduce(ReproduceTarget target, int n_max = 50);

}  // namespace lqdg
