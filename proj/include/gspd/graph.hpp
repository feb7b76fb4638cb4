#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gspd/rng.hpp"

namespace gspd {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph on vertices 0..p-1, stored as a dense symmetric
/// adjacency table. Vertex labels are 0-based in the C++ API and 1-based in
/// edge-list files.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  /// Edgeless graph on p vertices.
  explicit UndirectedGraph(std::size_t p);
  /// Graph on p vertices with the given edges (any orientation, duplicates
  /// allowed). Throws ParameterError on self-loops or out-of-range vertices.
  UndirectedGraph(std::size_t p, const std::vector<Edge>& edges);

  static UndirectedGraph complete(std::size_t p);

  std::size_t p() const noexcept { return p_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool is_adjacent(Vertex i, Vertex j) const;

  /// Edges in canonical form (i < j), sorted lexicographically.
  std::vector<Edge> edges() const;

  /// {j < i : j not adjacent to i}, ascending.
  std::vector<Vertex> nonadjacent_predecessors(Vertex i) const;

  /// Unchecked adjacency lookup for inner loops.
  bool adjacent_unchecked(Vertex i, Vertex j) const noexcept { return adj_[i * p_ + j] != 0; }

  friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

 private:
  void check_vertex(Vertex v) const;
  void link(Vertex i, Vertex j);

  std::size_t p_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<unsigned char> adj_;
};

/// G(p, d): each of the p(p-1)/2 candidate edges is included independently
/// with probability d. Candidates are visited in (i, j), i < j, row-major
/// order, one uniform draw each.
UndirectedGraph erdos_renyi(std::size_t p, double d, Rng& rng);
UndirectedGraph erdos_renyi(std::size_t p, double d, Seed seed);

/// Edge-list text: "p <int>" header, then "i j" per line (1-based, i < j).
/// Blank lines and '#' comments are ignored when reading.
void write_edge_list(std::ostream& out, const UndirectedGraph& g);
UndirectedGraph read_edge_list(std::istream& in);

void save_edge_list(const std::string& path, const UndirectedGraph& g);
UndirectedGraph load_edge_list(const std::string& path);

}  // namespace gspd
