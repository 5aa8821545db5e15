#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "heraklit/parser.hpp"

namespace heraklit::dsl {

enum class Tok {
  Ident,
  Int,
  KwModule,
  KwSort,
  KwPowerset,
  KwConst,
  KwFn,
  KwPred,
  KwStatic,
  KwDynamic,
  KwPlace,
  KwTransition,
  KwConsume,
  KwRead,
  KwProduce,
  KwVar,
  KwGuard,
  KwMarking,
  KwInterface,
  KwLeft,
  KwRight,
  KwBuiltin,
  KwTable,
  KwTrue,
  KwFalse,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semi,
  Colon,
  Equals,
  Star,
  Arrow,
  Eof,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  std::int64_t int_value = 0;
  std::size_t line = 1;
  std::size_t col = 1;
};

const char* token_name(Tok kind);

// Tokenizes the whole input. Unknown characters and malformed numbers
// produce diagnostics and are skipped; the token stream always ends in Eof.
std::vector<Token> lex(std::string_view text, std::vector<Diagnostic>& diags);

// The source line at a 1-based line number, for diagnostic excerpts.
std::string source_line(std::string_view text, std::size_t line);

}  // namespace heraklit::dsl
