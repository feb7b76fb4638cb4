#include "gspd/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gspd/errors.hpp"

namespace gspd {

UndirectedGraph::UndirectedGraph(std::size_t p) : p_(p), adj_(p * p, 0) {
  if (p == 0) throw ParameterError("graph must have at least one vertex");
}

UndirectedGraph::UndirectedGraph(std::size_t p, const std::vector<Edge>& edges)
    : UndirectedGraph(p) {
  for (const auto& [i, j] : edges) {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw ParameterError("self-loop at vertex " + std::to_string(i));
    link(i, j);
  }
}

UndirectedGraph UndirectedGraph::complete(std::size_t p) {
  UndirectedGraph g(p);
  for (Vertex i = 0; i < p; ++i)
    for (Vertex j = i + 1; j < p; ++j) g.link(i, j);
  return g;
}

void UndirectedGraph::check_vertex(Vertex v) const {
  if (v >= p_)
    throw ParameterError("vertex " + std::to_string(v) + " out of range for p = " +
                         std::to_string(p_));
}

void UndirectedGraph::link(Vertex i, Vertex j) {
  if (adj_[i * p_ + j]) return;
  adj_[i * p_ + j] = 1;
  adj_[j * p_ + i] = 1;
  ++edge_count_;
}

bool UndirectedGraph::is_adjacent(Vertex i, Vertex j) const {
  check_vertex(i);
  check_vertex(j);
  return adjacent_unchecked(i, j);
}

std::vector<Edge> UndirectedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex i = 0; i < p_; ++i)
    for (Vertex j = i + 1; j < p_; ++j)
      if (adjacent_unchecked(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<Vertex> UndirectedGraph::nonadjacent_predecessors(Vertex i) const {
  check_vertex(i);
  std::vector<Vertex> out;
  for (Vertex j = 0; j < i; ++j)
    if (!adjacent_unchecked(i, j)) out.push_back(j);
  return out;
}

UndirectedGraph erdos_renyi(std::size_t p, double d, Rng& rng) {
  if (p == 0) throw ParameterError("erdos_renyi: p must be >= 1");
  if (!(d >= 0.0 && d <= 1.0)) throw ParameterError("erdos_renyi: d must lie in [0, 1]");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < p; ++i)
    for (Vertex j = i + 1; j < p; ++j)
      if (rng.bernoulli(d)) edges.emplace_back(i, j);
  return UndirectedGraph(p, edges);
}

UndirectedGraph erdos_renyi(std::size_t p, double d, Seed seed) {
  Rng rng(seed);
  return erdos_renyi(p, d, rng);
}

void write_edge_list(std::ostream& out, const UndirectedGraph& g) {
  out << "p " << g.p() << '\n';
  for (const auto& [i, j] : g.edges()) out << (i + 1) << ' ' << (j + 1) << '\n';
}

UndirectedGraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t p = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    auto fail = [&](const std::string& why) {
      throw IoError("edge list line " + std::to_string(line_no) + ": " + why);
    };
    long long a = 0;
    long long b = 0;
    std::string extra;
    if (!have_header) {
      if (first != "p" || !(ls >> a) || a < 1) fail("expected header 'p <int>'");
      if (ls >> extra) fail("trailing tokens");
      p = static_cast<std::size_t>(a);
      have_header = true;
      continue;
    }
    std::istringstream ps(line);
    if (!(ps >> a >> b)) fail("expected 'i j'");
    if (ps >> extra) fail("trailing tokens");
    if (a < 1 || b < 1 || static_cast<std::size_t>(a) > p || static_cast<std::size_t>(b) > p)
      fail("vertex out of range");
    if (a == b) fail("self-loop");
    edges.emplace_back(static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1));
  }
  if (!have_header) throw IoError("edge list: missing 'p <int>' header");
  return UndirectedGraph(p, edges);
}

void save_edge_list(const std::string& path, const UndirectedGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_edge_list(out, g);
  if (!out) throw IoError("write failed: " + path);
}

UndirectedGraph load_edge_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_edge_list(in);
}

}  // namespace gspd
