#ifndef SPECTER_GRAPH_HPP
#define SPECTER_GRAPH_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace specter {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// Calls fn(index) for every set bit of a packed word range, ascending.
template <typename Fn>
void for_each_bit(std::span<const Word> words, Fn&& fn) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word x = words[w];
    while (x != 0) {
      fn(w * kWordBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
}

inline std::size_t popcount_and(std::span<const Word> a, std::span<const Word> b) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  }
  return total;
}

// A subset of {0, ..., universe-1} stored as a packed bitset.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), words_(words_for(universe), 0) {}
  VertexSet(std::size_t universe, std::initializer_list<std::size_t> members);
  VertexSet(std::size_t universe, std::span<const std::size_t> members);

  static VertexSet full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }
  bool contains(std::size_t v) const noexcept {
    return v < universe_ && ((words_[v / kWordBits] >> (v % kWordBits)) & 1U) != 0;
  }
  void insert(std::size_t v);
  void erase(std::size_t v);
  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  std::vector<std::size_t> members() const;
  std::span<const Word> words() const noexcept { return words_; }

  bool operator==(const VertexSet&) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

// Undirected simple graph on vertices 0..n-1 with one packed adjacency row
// per vertex. Rows are contiguous so neighbourhood intersections are
// word-parallel.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), stride_(words_for(n)), bits_(n * words_for(n), 0) {}
  Graph(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);
  Graph(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges);

  std::size_t order() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  bool adjacent(std::size_t u, std::size_t v) const noexcept {
    return ((bits_[u * stride_ + v / kWordBits] >> (v % kWordBits)) & 1U) != 0;
  }
  void add_edge(std::size_t u, std::size_t v);
  void remove_edge(std::size_t u, std::size_t v);
  void set_edge(std::size_t u, std::size_t v, bool present) {
    present ? add_edge(u, v) : remove_edge(u, v);
  }

  std::span<const Word> row(std::size_t u) const noexcept {
    return {bits_.data() + u * stride_, stride_};
  }
  std::size_t degree(std::size_t u) const noexcept;
  std::size_t edge_count() const noexcept;
  std::vector<std::size_t> neighbors(std::size_t u) const;
  std::vector<std::size_t> degrees() const;

  bool operator==(const Graph&) const = default;

 private:
  void check_pair(std::size_t u, std::size_t v) const;

  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> bits_;
};

// Subgraph induced by `subset`, vertices renumbered in ascending order.
Graph induced_subgraph(const Graph& g, const VertexSet& subset);
// Subgraph induced by an explicit vertex list; vertex i of the result is vertices[i].
Graph induced_subgraph(const Graph& g, std::span<const std::size_t> vertices);

std::size_t common_neighbor_count(const Graph& g, std::size_t u, std::size_t v);

// Graph on n+1 vertices; vertex n is new and adjacent exactly to `neighbors`.
Graph add_vertex(const Graph& g, const VertexSet& neighbors);

Graph relabel(const Graph& g, std::span<const std::size_t> perm);
Graph complement(const Graph& g);
Graph disjoint_union(const Graph& a, const Graph& b);

// Named graphs used as fixtures throughout the toolkit.
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph petersen_graph();
// Paley graph on a prime q = 1 (mod 4).
Graph paley_graph(std::size_t q);

// graph6 short form (n <= 62).
Graph parse_graph6(std::string_view line);
std::string write_graph6(const Graph& g);

inline constexpr std::size_t kGraph6MaxOrder = 62;

}  // namespace specter

#endif  // SPECTER_GRAPH_HPP
