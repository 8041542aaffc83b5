#ifndef SPECTER_ERRORS_HPP
#define SPECTER_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specter {

// Malformed textual input (graph6, adjacency dumps, manifests).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class UnsupportedSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// (tI - A) is singular where an inverse was required.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters with no real spectrum or violating basic SRG constraints.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InfeasibleDegreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleCountError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace specter

#endif  // SPECTER_ERRORS_HPP
