#include "specter/graph.hpp"

#include <algorithm>

#include "specter/errors.hpp"

namespace specter {

VertexSet::VertexSet(std::size_t universe, std::initializer_list<std::size_t> members)
    : VertexSet(universe) {
  for (std::size_t v : members) insert(v);
}

VertexSet::VertexSet(std::size_t universe, std::span<const std::size_t> members)
    : VertexSet(universe) {
  for (std::size_t v : members) insert(v);
}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  for (std::size_t v = 0; v < universe; ++v) s.insert(v);
  return s;
}

void VertexSet::insert(std::size_t v) {
  if (v >= universe_) {
    throw IndexError("vertex " + std::to_string(v) + " outside universe of size " +
                     std::to_string(universe_));
  }
  words_[v / kWordBits] |= Word{1} << (v % kWordBits);
}

void VertexSet::erase(std::size_t v) {
  if (v >= universe_) return;
  words_[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
}

std::size_t VertexSet::count() const noexcept {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::size_t> VertexSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each_bit(words_, [&](std::size_t v) { out.push_back(v); });
  return out;
}

Graph::Graph(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges)
    : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

Graph::Graph(std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> edges)
    : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_pair(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_) {
    throw IndexError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                     ") outside graph of order " + std::to_string(n_));
  }
  if (u == v) throw DomainError("self-loops are not allowed");
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  check_pair(u, v);
  bits_[u * stride_ + v / kWordBits] |= Word{1} << (v % kWordBits);
  bits_[v * stride_ + u / kWordBits] |= Word{1} << (u % kWordBits);
}

void Graph::remove_edge(std::size_t u, std::size_t v) {
  check_pair(u, v);
  bits_[u * stride_ + v / kWordBits] &= ~(Word{1} << (v % kWordBits));
  bits_[v * stride_ + u / kWordBits] &= ~(Word{1} << (u % kWordBits));
}

std::size_t Graph::degree(std::size_t u) const noexcept {
  std::size_t d = 0;
  for (Word w : row(u)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::size_t Graph::edge_count() const noexcept {
  std::size_t total = 0;
  for (Word w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total / 2;
}

std::vector<std::size_t> Graph::neighbors(std::size_t u) const {
  std::vector<std::size_t> out;
  for_each_bit(row(u), [&](std::size_t v) { out.push_back(v); });
  return out;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(n_);
  for (std::size_t u = 0; u < n_; ++u) out[u] = degree(u);
  return out;
}

Graph induced_subgraph(const Graph& g, const VertexSet& subset) {
  if (subset.universe() > g.order()) {
    for (std::size_t v = g.order(); v < subset.universe(); ++v) {
      if (subset.contains(v)) {
        throw IndexError("vertex " + std::to_string(v) + " not in graph of order " +
                         std::to_string(g.order()));
      }
    }
  }
  const auto members = subset.members();
  return induced_subgraph(g, members);
}

Graph induced_subgraph(const Graph& g, std::span<const std::size_t> vertices) {
  for (std::size_t v : vertices) {
    if (v >= g.order()) {
      throw IndexError("vertex " + std::to_string(v) + " not in graph of order " +
                       std::to_string(g.order()));
    }
  }
  Graph h(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (g.adjacent(vertices[i], vertices[j])) h.add_edge(i, j);
    }
  }
  return h;
}

std::size_t common_neighbor_count(const Graph& g, std::size_t u, std::size_t v) {
  if (u >= g.order() || v >= g.order()) throw IndexError("vertex outside graph");
  if (u == v) throw DomainError("common_neighbor_count needs two distinct vertices");
  return popcount_and(g.row(u), g.row(v));
}

Graph add_vertex(const Graph& g, const VertexSet& neighbors) {
  const std::size_t n = g.order();
  Graph h(n + 1);
  for (std::size_t u = 0; u < n; ++u) {
    for_each_bit(g.row(u), [&](std::size_t v) {
      if (u < v) h.add_edge(u, v);
    });
  }
  for (std::size_t v : neighbors.members()) {
    if (v >= n) throw IndexError("neighbor " + std::to_string(v) + " outside graph");
    h.add_edge(n, v);
  }
  return h;
}

Graph relabel(const Graph& g, std::span<const std::size_t> perm) {
  if (perm.size() != g.order()) throw DomainError("permutation size mismatch");
  Graph h(g.order());
  for (std::size_t u = 0; u < g.order(); ++u) {
    for_each_bit(g.row(u), [&](std::size_t v) {
      if (u < v) h.add_edge(perm[u], perm[v]);
    });
  }
  return h;
}

Graph complement(const Graph& g) {
  Graph h(g.order());
  for (std::size_t u = 0; u < g.order(); ++u) {
    for (std::size_t v = u + 1; v < g.order(); ++v) {
      if (!g.adjacent(u, v)) h.add_edge(u, v);
    }
  }
  return h;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph h(a.order() + b.order());
  for (std::size_t u = 0; u < a.order(); ++u) {
    for_each_bit(a.row(u), [&](std::size_t v) {
      if (u < v) h.add_edge(u, v);
    });
  }
  for (std::size_t u = 0; u < b.order(); ++u) {
    for_each_bit(b.row(u), [&](std::size_t v) {
      if (u < v) h.add_edge(a.order() + u, a.order() + v);
    });
  }
  return h;
}

Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

Graph cycle_graph(std::size_t n) {
  Graph g(n);
  if (n < 3) throw DomainError("cycle needs at least 3 vertices");
  for (std::size_t u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

Graph star_graph(std::size_t leaves) {
  Graph g(leaves + 1);
  for (std::size_t v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

Graph petersen_graph() {
  // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
  Graph g(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
    g.add_edge(i, i + 5);
  }
  return g;
}

Graph paley_graph(std::size_t q) {
  if (q < 5 || q % 4 != 1) throw DomainError("Paley graph needs prime q = 1 (mod 4)");
  for (std::size_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) throw DomainError("Paley graph needs prime q");
  }
  std::vector<bool> square(q, false);
  for (std::size_t x = 1; x < q; ++x) square[(x * x) % q] = true;
  Graph g(q);
  for (std::size_t u = 0; u < q; ++u) {
    for (std::size_t v = u + 1; v < q; ++v) {
      if (square[v - u]) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace specter
