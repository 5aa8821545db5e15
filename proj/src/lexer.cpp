#include "lexer.hpp"

#include <cctype>
#include <map>

namespace heraklit::dsl {

const char* token_name(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::KwModule: return "'module'";
    case Tok::KwSort: return "'sort'";
    case Tok::KwPowerset: return "'powerset'";
    case Tok::KwConst: return "'const'";
    case Tok::KwFn: return "'fn'";
    case Tok::KwPred: return "'pred'";
    case Tok::KwStatic: return "'static'";
    case Tok::KwDynamic: return "'dynamic'";
    case Tok::KwPlace: return "'place'";
    case Tok::KwTransition: return "'transition'";
    case Tok::KwConsume: return "'consume'";
    case Tok::KwRead: return "'read'";
    case Tok::KwProduce: return "'produce'";
    case Tok::KwVar: return "'var'";
    case Tok::KwGuard: return "'guard'";
    case Tok::KwMarking: return "'marking'";
    case Tok::KwInterface: return "'interface'";
    case Tok::KwLeft: return "'left'";
    case Tok::KwRight: return "'right'";
    case Tok::KwBuiltin: return "'builtin'";
    case Tok::KwTable: return "'table'";
    case Tok::KwTrue: return "'true'";
    case Tok::KwFalse: return "'false'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Star: return "'*'";
    case Tok::Arrow: return "'->'";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

namespace {

const std::map<std::string_view, Tok>& keywords() {
  static const std::map<std::string_view, Tok> kws = {
      {"module", Tok::KwModule},     {"sort", Tok::KwSort},
      {"powerset", Tok::KwPowerset}, {"const", Tok::KwConst},
      {"fn", Tok::KwFn},             {"pred", Tok::KwPred},
      {"static", Tok::KwStatic},     {"dynamic", Tok::KwDynamic},
      {"place", Tok::KwPlace},       {"transition", Tok::KwTransition},
      {"consume", Tok::KwConsume},   {"read", Tok::KwRead},
      {"produce", Tok::KwProduce},   {"var", Tok::KwVar},
      {"guard", Tok::KwGuard},       {"marking", Tok::KwMarking},
      {"interface", Tok::KwInterface}, {"left", Tok::KwLeft},
      {"right", Tok::KwRight},       {"builtin", Tok::KwBuiltin},
      {"table", Tok::KwTable},       {"true", Tok::KwTrue},
      {"false", Tok::KwFalse},
  };
  return kws;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::string source_line(std::string_view text, std::size_t line) {
  std::size_t cur = 1;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (cur == line) {
      std::size_t end = i;
      while (end < text.size() && text[end] != '\n') ++end;
      std::string s(text.substr(start, end - start));
      if (!s.empty() && s.back() == '\r') s.pop_back();
      return s;
    }
    if (i < text.size() && text[i] == '\n') {
      ++cur;
      start = i + 1;
      i = start - 1;
      if (cur == line) continue;
    }
  }
  return {};
}

std::vector<Token> lex(std::string_view text, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();

  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count && i < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto emit = [&](Tok kind, std::size_t len, std::size_t l, std::size_t c) {
    Token t;
    t.kind = kind;
    t.text = std::string(text.substr(i, len));
    t.line = l;
    t.col = c;
    advance(len);
    out.push_back(std::move(t));
  };
  auto error_at = [&](std::size_t l, std::size_t c, const std::string& msg) {
    if (diags.size() < 200)
      diags.push_back({Diagnostic::Severity::Error, msg, l, c, source_line(text, l)});
  };

  while (i < n) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      while (i < n && text[i] != '\n') advance(1);
      continue;
    }
    std::size_t tl = line, tc = col;
    switch (c) {
      case '{': emit(Tok::LBrace, 1, tl, tc); continue;
      case '}': emit(Tok::RBrace, 1, tl, tc); continue;
      case '(': emit(Tok::LParen, 1, tl, tc); continue;
      case ')': emit(Tok::RParen, 1, tl, tc); continue;
      case ',': emit(Tok::Comma, 1, tl, tc); continue;
      case ';': emit(Tok::Semi, 1, tl, tc); continue;
      case ':': emit(Tok::Colon, 1, tl, tc); continue;
      case '=': emit(Tok::Equals, 1, tl, tc); continue;
      case '*': emit(Tok::Star, 1, tl, tc); continue;
      default: break;
    }
    if (c == '-') {
      if (i + 1 < n && text[i + 1] == '>') {
        emit(Tok::Arrow, 2, tl, tc);
        continue;
      }
      if (i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        // negative integer literal, handled below
      } else {
        error_at(tl, tc, "stray '-' (expected '->' or a negative integer)");
        advance(1);
        continue;
      }
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t len = (c == '-') ? 1 : 0;
      while (i + len < n && std::isdigit(static_cast<unsigned char>(text[i + len]))) ++len;
      std::string digits(text.substr(i, len));
      Token t;
      t.kind = Tok::Int;
      t.text = digits;
      t.line = tl;
      t.col = tc;
      try {
        t.int_value = std::stoll(digits);
      } catch (const std::exception&) {
        error_at(tl, tc, "integer literal '" + digits + "' out of 64-bit range");
        advance(len);
        continue;
      }
      if (i + len < n && ident_start(text[i + len])) {
        error_at(tl, tc, "malformed number '" + digits + std::string(1, text[i + len]) + "'");
        advance(len + 1);
        continue;
      }
      advance(len);
      out.push_back(std::move(t));
      continue;
    }
    if (ident_start(c)) {
      std::size_t len = 1;
      while (i + len < n) {
        if (ident_char(text[i + len])) {
          ++len;
        } else if (text[i + len] == '.' && i + len + 1 < n && ident_start(text[i + len + 1])) {
          len += 2;
        } else {
          break;
        }
      }
      std::string_view word = text.substr(i, len);
      auto kw = keywords().find(word);
      emit(kw != keywords().end() ? kw->second : Tok::Ident, len, tl, tc);
      continue;
    }
    error_at(tl, tc, "unexpected character '" + std::string(1, c) + "'");
    advance(1);
  }

  Token eof;
  eof.kind = Tok::Eof;
  eof.line = line;
  eof.col = col;
  out.push_back(eof);
  return out;
}

}  // namespace heraklit::dsl
