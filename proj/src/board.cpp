#include "rbg/board.hpp"

#include <algorithm>
#include <map>

#include "rbg/errors.hpp"

namespace rbg {

struct GraphBuilderAccess {
  static BoardGraph make(std::vector<std::string> names, std::vector<std::string> directions,
                         std::vector<VertexId> neighbors, std::vector<PieceId> pieces) {
    BoardGraph board;
    board.vertex_names_ = std::move(names);
    board.directions_ = std::move(directions);
    board.neighbors_ = std::move(neighbors);
    board.initial_pieces_ = std::move(pieces);
    return board;
  }
};

namespace {

PieceId lookup_piece(const std::vector<std::string>& pieces, const std::string& name) {
  auto it = std::find(pieces.begin(), pieces.end(), name);
  if (it == pieces.end()) {
    throw BoardError(BoardError::Kind::unknown_piece, "undeclared piece '" + name + "' on board");
  }
  return static_cast<PieceId>(it - pieces.begin());
}

}  // namespace

int BoardGraph::direction_index(std::string_view label) const {
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    if (directions_[i] == label) return static_cast<int>(i);
  }
  return -1;
}

std::optional<VertexId> BoardGraph::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertex_names_.size(); ++i) {
    if (vertex_names_[i] == name) return static_cast<VertexId>(i);
  }
  return std::nullopt;
}

std::size_t BoardGraph::edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(neighbors_.begin(), neighbors_.end(), [](VertexId v) { return v != kNoVertex; }));
}

BoardGraph build_rectangle(const std::array<std::string, 4>& directions,
                           const std::vector<std::vector<std::string>>& rows,
                           const std::vector<std::string>& pieces) {
  if (rows.empty() || rows.front().empty()) {
    throw BoardError(BoardError::Kind::empty_board, "rectangle board has no squares");
  }
  const int height = static_cast<int>(rows.size());
  const int width = static_cast<int>(rows.front().size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != width) {
      throw BoardError(BoardError::Kind::ragged_rows, "rectangle rows differ in length");
    }
  }
  std::vector<std::string> names;
  std::vector<PieceId> placement;
  std::vector<VertexId> neighbors(static_cast<std::size_t>(width) * height * 4, kNoVertex);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const VertexId v = y * width + x;
      names.push_back("rx" + std::to_string(x) + "y" + std::to_string(y));
      placement.push_back(lookup_piece(pieces, rows[y][x]));
      VertexId* out = &neighbors[static_cast<std::size_t>(v) * 4];
      if (y > 0) out[0] = v - width;
      if (y + 1 < height) out[1] = v + width;
      if (x > 0) out[2] = v - 1;
      if (x + 1 < width) out[3] = v + 1;
    }
  }
  return GraphBuilderAccess::make(std::move(names),
                                  {directions[0], directions[1], directions[2], directions[3]},
                                  std::move(neighbors), std::move(placement));
}

BoardGraph build_graph(const std::vector<VertexSpec>& vertices,
                       const std::vector<std::string>& pieces) {
  if (vertices.empty()) {
    throw BoardError(BoardError::Kind::empty_board, "board has no vertices");
  }
  std::map<std::string, VertexId> index;
  std::vector<std::string> names;
  std::vector<PieceId> placement;
  std::vector<std::string> directions;
  for (const VertexSpec& spec : vertices) {
    if (!index.emplace(spec.name, static_cast<VertexId>(names.size())).second) {
      throw BoardError(BoardError::Kind::duplicate_vertex, "duplicate vertex '" + spec.name + "'");
    }
    names.push_back(spec.name);
    placement.push_back(lookup_piece(pieces, spec.piece));
    for (const auto& [direction, target] : spec.edges) {
      if (std::find(directions.begin(), directions.end(), direction) == directions.end()) {
        directions.push_back(direction);
      }
    }
  }
  const std::size_t dcount = directions.size();
  std::vector<VertexId> neighbors(names.size() * dcount, kNoVertex);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    for (const auto& [direction, target] : vertices[v].edges) {
      auto it = index.find(target);
      if (it == index.end()) {
        throw BoardError(BoardError::Kind::unknown_vertex,
                         "edge of '" + vertices[v].name + "' targets unknown vertex '" + target + "'");
      }
      const auto d = static_cast<std::size_t>(
          std::find(directions.begin(), directions.end(), direction) - directions.begin());
      neighbors[v * dcount + d] = it->second;
    }
  }
  return GraphBuilderAccess::make(std::move(names), std::move(directions), std::move(neighbors),
                                  std::move(placement));
}

}  // namespace rbg
