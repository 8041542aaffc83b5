#ifndef SPECTER_ADJDUMP_HPP
#define SPECTER_ADJDUMP_HPP

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "specter/graph.hpp"

namespace specter {

// Adjacency dump: a line "n=<N>" followed by N rows of ceil(N/4) lowercase
// hex digits. Digit t of row u holds vertices 4t..4t+3, vertex 4t in the
// high bit.
std::string format_adjdump(const Graph& g);
void write_adjdump(std::ostream& out, const Graph& g);

// Reads graph6 lines and adjacency dumps from one stream, in any mix.
// Blank lines are skipped. Throws ParseError with the stream byte offset.
class GraphReader {
 public:
  explicit GraphReader(std::istream& in) : in_(in) {}
  std::optional<Graph> next();
  // Byte offset of the start of the most recently returned graph.
  std::size_t offset() const noexcept { return start_; }

 private:
  bool read_line(std::string& line);

  std::istream& in_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
};

}  // namespace specter

#endif  // SPECTER_ADJDUMP_HPP
