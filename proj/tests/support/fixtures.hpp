#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "heraklit/parser.hpp"

#ifndef MODELS_DIR
#error "MODELS_DIR must point at the bundled .hkt models"
#endif

namespace heraklit::test {

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string fixture_path(const std::string& name) {
  return std::string(MODELS_DIR) + "/" + name;
}

inline std::string fixture_text(const std::string& name) {
  return read_text_file(fixture_path(name));
}

// Parses a bundled model, failing loudly on diagnostics.
inline ModuleNet load_fixture(const std::string& name) {
  auto result = parse(fixture_text(name), name);
  if (!result.module) {
    std::string msg = "fixture " + name + " failed to parse:";
    for (const auto& d : result.diagnostics) msg += "\n  " + diagnostic_text(d, name);
    throw std::runtime_error(msg);
  }
  return std::move(*result.module);
}

// Parses inline DSL text, failing loudly on diagnostics.
inline ModuleNet module_from(const std::string& text) {
  auto result = parse(text, "<inline>");
  if (!result.module) {
    std::string msg = "inline module failed to parse:";
    for (const auto& d : result.diagnostics) msg += "\n  " + diagnostic_text(d, "<inline>");
    throw std::runtime_error(msg);
  }
  return std::move(*result.module);
}

}  // namespace heraklit::test
