#pragma once

#include <stdexcept>
#include <string>

namespace lolasym {

// Malformed specification or trace input. CLI exit code 1.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string msg, int line = 0, int col = 0)
      : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(col) + ": " + msg
                                    : msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

// A configured solver cap was exceeded. Distinct from an undetermined answer.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken internal invariant (engine bug, not user error). CLI exit code 2.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

inline void require(bool cond, const char* what) {
  if (!cond) throw InternalError(what);
}

}  // namespace lolasym
