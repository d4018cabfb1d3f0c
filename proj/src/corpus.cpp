#include "rbg/corpus.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "rbg/errors.hpp"
#include "rbg/reasoner.hpp"

namespace rbg {

OptimizerConfig GameMetadata::config(OptimizerConfig base) const {
  if (straightness == StraightnessMode::whitelist) base.assume_straight = true;
  return base;
}

GameMetadata load_metadata(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path.string() + ": cannot open");
  GameMetadata m;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    m.name = j.at("name").get<std::string>();
    m.file = j.at("file").get<std::string>();
    m.initial_moves = j.at("initial_moves").get<int>();
    if (j.contains("move_length_bound") && !j["move_length_bound"].is_null()) {
      m.move_length_bound = j["move_length_bound"].get<int>();
    }
    if (j.contains("monotonic_classes") && !j["monotonic_classes"].is_null()) {
      m.monotonic_classes = j["monotonic_classes"].get<int>();
    }
    const std::string mode = j.value("straightness", "static");
    if (mode == "static") {
      m.straightness = StraightnessMode::static_check;
    } else if (mode == "whitelist") {
      m.straightness = StraightnessMode::whitelist;
    } else {
      throw LoadError(path.string() + ": unknown straightness mode '" + mode + "'");
    }
    if (j.contains("perft")) {
      const auto& p = j["perft"];
      m.perft_nodes = p.at("nodes").get<std::vector<std::uint64_t>>();
      if (p.contains("terminals")) m.perft_terminals = p["terminals"].get<std::vector<std::uint64_t>>();
      if (p.at("depth").get<std::size_t>() + 1 != m.perft_nodes.size()) {
        throw LoadError(path.string() + ": perft depth does not match the node counts");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
  return m;
}

std::optional<GameMetadata> metadata_for(const std::filesystem::path& game_file) {
  std::filesystem::path meta = game_file;
  meta.replace_extension(".meta.json");
  if (!std::filesystem::exists(meta)) return std::nullopt;
  return load_metadata(meta);
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& directory) {
  std::vector<std::filesystem::path> metas;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 10 && name.ends_with(".meta.json")) metas.push_back(entry.path());
  }
  std::sort(metas.begin(), metas.end());
  std::vector<CorpusEntry> out;
  for (const auto& meta : metas) {
    CorpusEntry e;
    e.metadata = load_metadata(meta);
    e.path = directory / e.metadata.file;
    try {
      e.description = load_game_file(e.path);
      CompiledGame::compile(e.description, e.metadata.config());
    } catch (const RbgError& err) {
      throw LoadError(e.path.string() + ": " + err.what());
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace rbg
