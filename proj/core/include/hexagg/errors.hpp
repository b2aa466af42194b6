#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hexagg {

/// Base class for every error raised by the library. `name()` is a stable
/// identifier ("DegenerateBox", "OutOfSpace", ...) that the CLI prints.
class Error : public std::runtime_error {
  public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

  private:
    std::string name_;
};

/// The query box is empty or inverted at some instant of its time interval.
class DegenerateBox : public Error {
  public:
    explicit DegenerateBox(const std::string& what) : Error("DegenerateBox", what) {}
};

/// A point lies outside the configured index space.
class OutOfSpace : public Error {
  public:
    explicit OutOfSpace(const std::string& what) : Error("OutOfSpace", what) {}
};

/// Removal of a point that the index does not hold.
class NotFound : public Error {
  public:
    explicit NotFound(const std::string& what) : Error("NotFound", what) {}
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
  public:
    explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

/// A points file or index snapshot could not be parsed.
class ParseError : public Error {
  public:
    explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

}  // namespace hexagg
