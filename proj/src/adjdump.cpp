#include "specter/adjdump.hpp"

#include "specter/errors.hpp"

namespace specter {

namespace {

constexpr char kHex[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string format_adjdump(const Graph& g) {
  const std::size_t n = g.order();
  const std::size_t digits = (n + 3) / 4;
  std::string out = "n=" + std::to_string(n) + "\n";
  out.reserve(out.size() + n * (digits + 1));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t t = 0; t < digits; ++t) {
      unsigned nibble = 0;
      for (std::size_t b = 0; b < 4; ++b) {
        const std::size_t v = 4 * t + b;
        if (v < n && g.adjacent(u, v)) nibble |= 8U >> b;
      }
      out.push_back(kHex[nibble]);
    }
    out.push_back('\n');
  }
  return out;
}

void write_adjdump(std::ostream& out, const Graph& g) { out << format_adjdump(g); }

bool GraphReader::read_line(std::string& line) {
  if (!std::getline(in_, line)) return false;
  pos_ += line.size() + (in_.eof() ? 0 : 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::optional<Graph> GraphReader::next() {
  std::string line;
  for (;;) {
    start_ = pos_;
    if (!read_line(line)) return std::nullopt;
    if (!line.empty()) break;
  }
  if (line.rfind("n=", 0) != 0) {
    try {
      return parse_graph6(line);
    } catch (const ParseError& e) {
      throw ParseError("malformed graph6 line", start_ + e.offset());
    }
  }

  std::size_t n = 0;
  if (line.size() == 2) throw ParseError("empty order in adjacency dump header", start_ + 2);
  for (std::size_t i = 2; i < line.size(); ++i) {
    if (line[i] < '0' || line[i] > '9' || n > (std::size_t{1} << 40)) {
      throw ParseError("bad order in adjacency dump header", start_ + i);
    }
    n = n * 10 + static_cast<std::size_t>(line[i] - '0');
  }
  const std::size_t digits = (n + 3) / 4;
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t row_start = pos_;
    if (!read_line(line)) throw ParseError("adjacency dump truncated", row_start);
    if (line.size() != digits) throw ParseError("adjacency dump row has wrong length", row_start);
    for (std::size_t t = 0; t < digits; ++t) {
      const int nibble = hex_value(line[t]);
      if (nibble < 0) throw ParseError("non-hex digit in adjacency dump", row_start + t);
      for (std::size_t b = 0; b < 4; ++b) {
        if ((nibble & (8 >> b)) == 0) continue;
        const std::size_t v = 4 * t + b;
        if (v >= n) throw ParseError("padding bit set in adjacency dump", row_start + t);
        if (v == u) throw ParseError("loop in adjacency dump", row_start + t);
        if (v < u && !g.adjacent(u, v)) throw ParseError("asymmetric adjacency dump", row_start + t);
        if (v > u) g.add_edge(u, v);
      }
    }
    // Entries below the diagonal must match the rows already read.
    for (std::size_t v = 0; v < u; ++v) {
      const int nibble = hex_value(line[v / 4]);
      if (g.adjacent(u, v) && (nibble & (8 >> (v % 4))) == 0) {
        throw ParseError("asymmetric adjacency dump", row_start + v / 4);
      }
    }
  }
  return g;
}

}  // namespace specter
