#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heraklit/module.hpp"

namespace heraklit {

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
  std::size_t line = 1;
  std::size_t col = 1;
  std::string excerpt;  // the offending source line
};

std::string diagnostic_text(const Diagnostic& d, const std::string& origin);

struct ParseResult {
  std::optional<ModuleNet> module;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return module.has_value(); }
};

// Parses one module source file into a fully checked ModuleNet (sort and
// well-formedness checking included). Never throws on malformed input; all
// problems come back as positioned diagnostics.
ParseResult parse(std::string_view text, std::string origin = "");

// Parses a lone value literal (the canonical_text grammar).
std::optional<Value> parse_value_text(std::string_view text);

struct MarkingResult {
  std::optional<Marking> marking;
  std::vector<Diagnostic> diagnostics;
};

// Parses a file holding a single `marking { ... }` block in the context of
// an existing net.
MarkingResult parse_marking_text(std::string_view text, const Net& net);

}  // namespace heraklit
