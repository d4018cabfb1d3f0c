#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rbg/game.hpp"
#include "rbg/optimizer.hpp"

namespace rbg {

enum class StraightnessMode { static_check, whitelist };

/// Expected facts about one corpus game, read from its .meta.json file.
struct GameMetadata {
  std::string name;
  std::string file;
  int initial_moves = 0;
  std::optional<int> move_length_bound;
  std::optional<int> monotonic_classes;
  StraightnessMode straightness = StraightnessMode::static_check;
  std::vector<std::uint64_t> perft_nodes;      // nodes per depth, from depth 0
  std::vector<std::uint64_t> perft_terminals;  // empty when not recorded

  /// Optimizer settings the game needs to load: whitelisted games skip the
  /// syntactic straightness check.
  OptimizerConfig config(OptimizerConfig base = {}) const;
};

struct CorpusEntry {
  std::filesystem::path path;
  GameDescription description;
  GameMetadata metadata;
};

GameMetadata load_metadata(const std::filesystem::path& path);

/// Every `<name>.meta.json` in `directory` with its `.rbg` file, sorted by
/// file name. Each game is parsed and compiled once so that a broken entry
/// fails here with the file named.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& directory);

/// The metadata next to a game file, if there is one.
std::optional<GameMetadata> metadata_for(const std::filesystem::path& game_file);

}  // namespace rbg
