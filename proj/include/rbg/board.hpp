#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rbg {

using VertexId = int;
using PieceId = int;
inline constexpr VertexId kNoVertex = -1;

/// The board: a directed graph whose edges are labeled by directions, with
/// one piece placed on every vertex initially. Immutable once built.
class BoardGraph {
 public:
  BoardGraph() = default;

  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int direction_count() const { return static_cast<int>(directions_.size()); }
  const std::vector<std::string>& directions() const { return directions_; }
  const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }

  /// -1 when the label is not a direction of this board.
  int direction_index(std::string_view label) const;
  std::optional<VertexId> find_vertex(std::string_view name) const;

  std::optional<VertexId> neighbor(VertexId v, int direction) const {
    const VertexId target = step(v, direction);
    if (target == kNoVertex) return std::nullopt;
    return target;
  }
  /// Same as neighbor() but returns kNoVertex for a missing edge.
  VertexId step(VertexId v, int direction) const {
    return neighbors_[static_cast<std::size_t>(v) * directions_.size() + direction];
  }
  const std::vector<VertexId>& neighbor_table() const { return neighbors_; }

  const std::vector<PieceId>& initial_pieces() const { return initial_pieces_; }
  std::size_t edge_count() const;

  bool operator==(const BoardGraph&) const = default;

 private:
  friend BoardGraph build_rectangle(const std::array<std::string, 4>&,
                                     const std::vector<std::vector<std::string>>&,
                                     const std::vector<std::string>&);
  friend struct GraphBuilderAccess;

  std::vector<std::string> vertex_names_;
  std::vector<std::string> directions_;
  std::vector<VertexId> neighbors_;  // vertex-major, kNoVertex where absent
  std::vector<PieceId> initial_pieces_;
};

/// Rectangle with labels ordered (up, down, left, right); the first row is
/// the top one. Vertex (col, row) gets index row * cols + col and the name
/// "rx{col}y{row}".
BoardGraph build_rectangle(const std::array<std::string, 4>& directions,
                           const std::vector<std::vector<std::string>>& rows,
                           const std::vector<std::string>& pieces);

struct VertexSpec {
  std::string name;
  std::string piece;
  std::vector<std::pair<std::string, std::string>> edges;  // (direction, target name)
};

/// General board: vertices in listed order, directions in order of first use.
BoardGraph build_graph(const std::vector<VertexSpec>& vertices,
                       const std::vector<std::string>& pieces);

}  // namespace rbg
