// Error types shared by the chromaflux library and CLI.
//
// ParseError / InputError map to CLI exit code 2 (bad input),
// InternalError maps to exit code 3 (a violated algorithm contract; always a
// bug, never a property of the input).
#pragma once

#include <stdexcept>
#include <string>

namespace chromaflux {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

// Throws InternalError when `cond` is false. Used for algorithm invariants
// whose failure means the implementation (not the input) is wrong.
inline void internal_check(bool cond, const std::string& msg) {
    if (!cond) throw InternalError(msg);
}

}  // namespace chromaflux
