#pragma once

#include <stdexcept>
#include <string>

namespace loopbound {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int line, int col, const std::string &msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line(line), col(col) {}
};

struct StructureError : std::runtime_error {
  explicit StructureError(const std::string &msg)
      : std::runtime_error("structure error: " + msg) {}
};

struct UnsupportedFeature : std::runtime_error {
  explicit UnsupportedFeature(const std::string &msg)
      : std::runtime_error("unsupported feature: " + msg) {}
};

struct UnknownVariable : std::runtime_error {
  explicit UnknownVariable(const std::string &name)
      : std::runtime_error("unknown variable: " + name) {}
};

struct BackboneLimitExceeded : std::runtime_error {
  explicit BackboneLimitExceeded(int cap)
      : std::runtime_error("backbone count exceeds cap of " +
                           std::to_string(cap)) {}
};

struct ExternalSolverError : std::runtime_error {
  explicit ExternalSolverError(const std::string &msg)
      : std::runtime_error("external solver: " + msg) {}
};

} // namespace loopbound
