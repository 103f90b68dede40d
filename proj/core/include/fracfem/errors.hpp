#pragma once
#include <stdexcept>
#include <string>

namespace fracfem {

// Mesh file could not be parsed; `line` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error("parse error at line " + std::to_string(line) + ": " + what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class NonconformingMesh : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A merged breakpoint list with fewer than 2 points; signals a geometry/tolerance bug.
class DegeneratePath : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fracfem
