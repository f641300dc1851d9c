#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace agekit {

/// Base class for everything this library throws.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : Error {
  std::size_t line_no;
  ParseError(std::size_t line, const std::string& reason)
      : Error("parse error at line " + std::to_string(line) + ": " + reason),
        line_no(line) {}
};

struct OrderError : Error {
  using Error::Error;
};

struct EmptyStream : Error {
  using Error::Error;
};

struct DegenerateStroke : Error {
  using Error::Error;
};

struct TooFewSamples : Error {
  using Error::Error;
};

struct SingleClass : Error {
  using Error::Error;
};

struct EmptyData : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct MissingFeature : Error {
  std::string feature;
  explicit MissingFeature(const std::string& name)
      : Error("missing feature: " + name), feature(name) {}
};

struct VersionMismatch : Error {
  using Error::Error;
};

struct CorruptModel : Error {
  using Error::Error;
};

struct EmptySide : Error {
  using Error::Error;
};

struct EmptyMask : Error {
  using Error::Error;
};

struct InvalidProfile : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace agekit
