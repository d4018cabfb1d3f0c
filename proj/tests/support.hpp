#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "rbg/corpus.hpp"
#include "rbg/reasoner.hpp"
#include "rbg/rng.hpp"

namespace test {

inline std::filesystem::path games_dir() { return RBG_GAMES_DIR; }
inline std::filesystem::path game_path(const std::string& name) { return games_dir() / (name + ".rbg"); }

inline rbg::GameMetadata metadata(const std::string& name) {
  return rbg::load_metadata(games_dir() / (name + ".meta.json"));
}

// Compiles a corpus game, honouring its straightness whitelist.
inline std::shared_ptr<const rbg::CompiledGame> compile(const std::string& name,
                                                        rbg::OptimizerConfig config = {}) {
  return rbg::CompiledGame::compile(rbg::load_game_file(game_path(name)), metadata(name).config(config));
}

inline const char* const kAllGames[] = {
    "amazons",        "amazons_split2", "amazons_split2a",      "amazons_split3", "amazons_split5",
    "amazons_split5plus", "breakthrough", "connect4",          "connect6",       "englishDraughts",
    "englishDraughtsSplit", "gomoku",   "hex",                  "knightthrough",  "pentago",
    "reversi",        "tictactoe",      "yavalath",
};

// A one-square board with the given rules; players white and black.
inline std::string tiny_game(const std::string& rules, const std::string& extra_pieces = "",
                             const std::string& variables = "") {
  return "#players = white(100), black(100)\n#pieces = e" + extra_pieces + "\n#variables = " + variables +
         "\n#board = rectangle(up,down,left,right,[e])\n#rules = " + rules + "\n";
}

// Largest deviation of a bucket count from its mean, in standard deviations,
// over `samples` draws of next_bounded(n).
inline double max_bucket_sigma(rbg::RngMethod method, std::uint64_t seed, std::uint32_t n, std::uint64_t samples) {
  std::vector<std::uint64_t> counts(n, 0);
  rbg::AnyRng rng = rbg::make_rng(method, seed);
  std::visit(
      [&](auto& g) {
        for (std::uint64_t i = 0; i < samples; ++i) ++counts[g.next_bounded(n)];
      },
      rng);
  const double p = 1.0 / n;
  const double mean = samples * p;
  const double sigma = std::sqrt(samples * p * (1.0 - p));
  double worst = 0.0;
  for (std::uint64_t c : counts) worst = std::max(worst, std::abs(static_cast<double>(c) - mean) / sigma);
  return worst;
}

// The first `count` draws of next_bounded(n).
inline std::vector<std::uint32_t> draws(rbg::RngMethod method, std::uint64_t seed, std::uint32_t n, int count) {
  std::vector<std::uint32_t> out;
  rbg::AnyRng rng = rbg::make_rng(method, seed);
  std::visit(
      [&](auto& g) {
        for (int i = 0; i < count; ++i) out.push_back(g.next_bounded(n));
      },
      rng);
  return out;
}

}  // namespace test
