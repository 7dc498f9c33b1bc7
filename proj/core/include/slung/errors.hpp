#ifndef SLUNG_ERRORS_HPP
#define SLUNG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace slung {

struct NotSkewError : std::runtime_error {
  explicit NotSkewError(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMassMatrixError : std::runtime_error {
  explicit SingularMassMatrixError(const std::string& what) : std::runtime_error(what) {}
};

struct NonFiniteError : std::runtime_error {
  explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateThrustError : std::runtime_error {
  explicit DegenerateThrustError(const std::string& what) : std::runtime_error(what) {}
};

struct HeadingParallelError : std::runtime_error {
  explicit HeadingParallelError(const std::string& what) : std::runtime_error(what) {}
};

struct C3TooLargeError : std::runtime_error {
  explicit C3TooLargeError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slung

#endif
