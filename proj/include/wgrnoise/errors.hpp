#pragma once

#include <stdexcept>
#include <string>

namespace wgr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure in a structured text file; message carries "<source>:<line>".
class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(source),
        line_(line) {}
  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class MaterialError : public Error {
 public:
  using Error::Error;
};

/// Temperature outside the sampled range and clamping was not requested.
class RangeError : public Error {
 public:
  using Error::Error;
};

class ModeError : public Error {
 public:
  using Error::Error;
};

class MeshError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace wgr
