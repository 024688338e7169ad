#ifndef TBRW_ERROR_HPP
#define TBRW_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tbrw {

/// A caller violated an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Something that cannot happen for valid inputs did happen (singular chain,
/// broken state machine invariant, ...).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline void require(bool ok, const char* msg) {
  if (!ok) throw PreconditionError(msg);
}

}  // namespace tbrw

#endif  // TBRW_ERROR_HPP
