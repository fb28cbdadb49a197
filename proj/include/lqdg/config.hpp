#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "lqdg/game.hpp"

namespace lqdg {

/// Parsed game config file. Keys: a, x0, b, q, r (required); mu, lambda
/// (optional). Scalars are plain numbers, arrays are bracketed
/// comma-separated lists, lambda is a bracketed list of rows; '#' starts
/// a comment; bracketed values may span lines.
struct GameConfig {
  GameSpec spec;
  std::optional<WeightVector> mu;
  std::optional<CooperationMatrix> lambda;
};

/// Throws ParseError carrying the offending field and line.
GameConfig parse_game_config(std::istream& in);

GameConfig load_game_config(const std::string& path);

/// Validates and bundles the parsed config; equal weights when mu is
/// absent. The cooperation matrix, when present, is validated too.
Game make_game(const GameConfig& config);

}  // namespace lqdg
