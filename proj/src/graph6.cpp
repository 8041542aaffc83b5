#include <string>

#include "specter/errors.hpp"
#include "specter/graph.hpp"

namespace specter {

namespace {

constexpr std::string_view kHeader = ">>graph6<<";
constexpr int kBias = 63;

}  // namespace

Graph parse_graph6(std::string_view line) {
  std::size_t base = 0;
  if (line.substr(0, kHeader.size()) == kHeader) base = kHeader.size();
  std::string_view body = line.substr(base);
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.remove_suffix(1);

  if (body.empty()) throw ParseError("graph6: empty string", base);
  for (std::size_t i = 0; i < body.size(); ++i) {
    const auto c = static_cast<unsigned char>(body[i]);
    if (c < 63 || c > 126) throw ParseError("graph6: invalid byte", base + i);
  }
  const auto first = static_cast<unsigned char>(body[0]);
  if (first == 126) {
    throw UnsupportedSizeError("graph6: long form (n > 62) is not supported");
  }
  const std::size_t n = first - kBias;
  const std::size_t nbits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t nbytes = (nbits + 5) / 6;
  if (body.size() < 1 + nbytes) {
    throw ParseError("graph6: truncated edge data", base + body.size());
  }
  if (body.size() > 1 + nbytes) {
    throw ParseError("graph6: trailing bytes", base + 1 + nbytes);
  }

  Graph g(n);
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      const int group = body[1 + k / 6] - kBias;
      if ((group >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  }
  if (nbits % 6 != 0) {
    const int last = body[nbytes] - kBias;
    const int pad_mask = (1 << (6 - nbits % 6)) - 1;
    if ((last & pad_mask) != 0) throw ParseError("graph6: nonzero padding bits", base + nbytes);
  }
  return g;
}

std::string write_graph6(const Graph& g) {
  const std::size_t n = g.order();
  if (n > kGraph6MaxOrder) {
    throw UnsupportedSizeError("graph6 short form supports at most 62 vertices, got " +
                               std::to_string(n));
  }
  const std::size_t nbits = n * (n - (n > 0 ? 1 : 0)) / 2;
  std::string groups((nbits + 5) / 6, '\0');
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      if (g.adjacent(i, j)) groups[k / 6] = static_cast<char>(groups[k / 6] | (1 << (5 - k % 6)));
    }
  }
  std::string out(1, static_cast<char>(kBias + n));
  for (char c : groups) out.push_back(static_cast<char>(c + kBias));
  return out;
}

}  // namespace specter
