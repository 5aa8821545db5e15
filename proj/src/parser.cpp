#include "heraklit/parser.hpp"

#include <algorithm>
#include <sstream>

#include "lexer.hpp"

namespace heraklit {

using dsl::Tok;
using dsl::Token;

std::string diagnostic_text(const Diagnostic& d, const std::string& origin) {
  std::ostringstream out;
  if (!origin.empty()) out << origin << ':';
  out << d.line << ':' << d.col << ": "
      << (d.severity == Diagnostic::Severity::Error ? "error" : "warning") << ": " << d.message;
  if (!d.excerpt.empty()) out << "\n  | " << d.excerpt;
  return out.str();
}

namespace {

constexpr std::size_t kMaxNesting = 200;
constexpr std::size_t kMaxDiagnostics = 100;

struct SynTerm {
  enum class Kind { Ident, Int, Bool, App, Tuple, Set };
  Kind kind = Kind::Int;
  std::string name;
  std::int64_t num = 0;
  bool flag = false;
  std::vector<SynTerm> args;
  std::size_t line = 1, col = 1;
};

struct SynArc {
  ArcMode mode = ArcMode::Consume;
  std::string place;
  SynTerm term;
  std::size_t line = 1, col = 1;
};

struct SynVar {
  std::string name;
  std::string sort;
  std::size_t line = 1, col = 1;
};

struct SynMarkEntry {
  std::string place;
  std::vector<SynTerm> items;
  std::size_t line = 1, col = 1;
};

struct SynDecl {
  enum class Kind {
    Module,
    SortExplicit,
    SortProduct,
    SortPowerset,
    Const,
    Fn,
    PredStatic,
    Place,
    Transition,
    Marking,
    Interface,
  };
  Kind kind = Kind::Module;
  std::string name;
  std::size_t line = 1, col = 1;

  std::vector<SynTerm> values;            // explicit carrier / relation tuples
  std::vector<std::string> sort_names;    // product comps / fn args / interface labels
  std::string sort2;                      // const sort / fn result / powerset base / place sort
  bool is_builtin = false;
  std::string builtin_name;
  std::vector<std::pair<std::vector<SynTerm>, SynTerm>> table_entries;
  std::optional<SynTerm> value;           // const value
  std::vector<SynArc> arcs;
  std::vector<SynVar> vars;
  std::optional<SynTerm> guard;
  std::vector<SynMarkEntry> marking_entries;
  bool is_left = false;
};

class Parser {
public:
  Parser(std::string_view text, std::vector<Diagnostic>& diags)
      : text_(text), diags_(diags), tokens_(dsl::lex(text, diags)) {}

  std::vector<SynDecl> parse_file() {
    std::vector<SynDecl> decls;
    while (!at(Tok::Eof) && !too_many_errors()) {
      std::size_t before = pos_;
      if (auto d = parse_decl()) decls.push_back(std::move(*d));
      if (pos_ == before) next();  // always make progress
    }
    return decls;
  }

  // Entry for a lone value literal.
  std::optional<SynTerm> parse_single_value() {
    auto t = parse_term(0);
    if (!t || !at(Tok::Eof)) return std::nullopt;
    return t;
  }

  // Entry for a marking-only file.
  std::optional<SynDecl> parse_single_marking() {
    if (!at(Tok::KwMarking)) {
      error_here("expected 'marking'");
      return std::nullopt;
    }
    auto d = parse_decl();
    if (!at(Tok::Eof)) error_here("expected end of input after the marking block");
    return d;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  bool too_many_errors() const { return diags_.size() >= kMaxDiagnostics; }

  void error_at(std::size_t line, std::size_t col, const std::string& msg) {
    if (diags_.size() < kMaxDiagnostics)
      diags_.push_back(
          {Diagnostic::Severity::Error, msg, line, col, dsl::source_line(text_, line)});
  }
  void error_here(const std::string& msg) { error_at(peek().line, peek().col, msg); }

  bool expect(Tok k, const char* where) {
    if (accept(k)) return true;
    error_here(std::string("expected ") + dsl::token_name(k) + " " + where + ", found " +
               dsl::token_name(peek().kind));
    return false;
  }

  std::optional<std::string> expect_ident(const char* where) {
    if (at(Tok::Ident)) return next().text;
    error_here(std::string("expected identifier ") + where + ", found " +
               dsl::token_name(peek().kind));
    return std::nullopt;
  }

  // Skips ahead to a token that can plausibly start a declaration.
  void sync_decl() {
    while (!at(Tok::Eof)) {
      switch (peek().kind) {
        case Tok::KwModule:
        case Tok::KwSort:
        case Tok::KwPowerset:
        case Tok::KwConst:
        case Tok::KwFn:
        case Tok::KwPred:
        case Tok::KwPlace:
        case Tok::KwTransition:
        case Tok::KwMarking:
        case Tok::KwInterface:
          return;
        case Tok::Semi:
          next();
          return;
        default:
          next();
      }
    }
  }

  std::optional<SynTerm> parse_term(std::size_t depth) {
    if (depth > kMaxNesting) {
      error_here("expression nesting too deep");
      return std::nullopt;
    }
    const Token& t = peek();
    SynTerm out;
    out.line = t.line;
    out.col = t.col;
    switch (t.kind) {
      case Tok::Int:
        out.kind = SynTerm::Kind::Int;
        out.num = t.int_value;
        next();
        return out;
      case Tok::KwTrue:
      case Tok::KwFalse:
        out.kind = SynTerm::Kind::Bool;
        out.flag = t.kind == Tok::KwTrue;
        next();
        return out;
      case Tok::Ident: {
        out.name = next().text;
        if (accept(Tok::LParen)) {
          out.kind = SynTerm::Kind::App;
          if (!parse_term_list(out.args, Tok::RParen, depth)) return std::nullopt;
        } else {
          out.kind = SynTerm::Kind::Ident;
        }
        return out;
      }
      case Tok::LParen: {
        next();
        out.kind = SynTerm::Kind::Tuple;
        if (!parse_term_list(out.args, Tok::RParen, depth)) return std::nullopt;
        return out;
      }
      case Tok::LBrace: {
        next();
        out.kind = SynTerm::Kind::Set;
        if (!parse_term_list(out.args, Tok::RBrace, depth)) return std::nullopt;
        return out;
      }
      default:
        error_here(std::string("expected a term, found ") + dsl::token_name(t.kind));
        return std::nullopt;
    }
  }

  bool parse_term_list(std::vector<SynTerm>& out, Tok closer, std::size_t depth) {
    if (accept(closer)) return true;
    while (true) {
      auto t = parse_term(depth + 1);
      if (!t) return false;
      out.push_back(std::move(*t));
      if (accept(closer)) return true;
      if (!expect(Tok::Comma, "between elements")) return false;
    }
  }

  std::optional<SynDecl> parse_decl() {
    const Token& t = peek();
    SynDecl d;
    d.line = t.line;
    d.col = t.col;
    switch (t.kind) {
      case Tok::KwModule: {
        next();
        d.kind = SynDecl::Kind::Module;
        auto name = expect_ident("after 'module'");
        if (!name) return sync_fail();
        d.name = *name;
        if (!expect(Tok::Semi, "after module name")) return sync_fail();
        return d;
      }
      case Tok::KwSort: {
        next();
        auto name = expect_ident("after 'sort'");
        if (!name) return sync_fail();
        d.name = *name;
        if (!expect(Tok::Equals, "in sort declaration")) return sync_fail();
        if (at(Tok::LBrace)) {
          next();
          d.kind = SynDecl::Kind::SortExplicit;
          if (!parse_term_list(d.values, Tok::RBrace, 0)) return sync_fail();
        } else {
          d.kind = SynDecl::Kind::SortProduct;
          auto first = expect_ident("in product sort");
          if (!first) return sync_fail();
          d.sort_names.push_back(*first);
          while (accept(Tok::Star)) {
            auto comp = expect_ident("after '*'");
            if (!comp) return sync_fail();
            d.sort_names.push_back(*comp);
          }
          if (d.sort_names.size() < 2) {
            error_at(d.line, d.col, "a product sort needs at least two components");
            return sync_fail();
          }
        }
        if (!expect(Tok::Semi, "after sort declaration")) return sync_fail();
        return d;
      }
      case Tok::KwPowerset: {
        next();
        d.kind = SynDecl::Kind::SortPowerset;
        if (!expect(Tok::KwSort, "after 'powerset'")) return sync_fail();
        auto name = expect_ident("after 'powerset sort'");
        if (!name) return sync_fail();
        d.name = *name;
        if (!expect(Tok::Equals, "in powerset sort declaration")) return sync_fail();
        auto base = expect_ident("as powerset base sort");
        if (!base) return sync_fail();
        d.sort2 = *base;
        if (!expect(Tok::Semi, "after sort declaration")) return sync_fail();
        return d;
      }
      case Tok::KwConst: {
        next();
        d.kind = SynDecl::Kind::Const;
        auto name = expect_ident("after 'const'");
        if (!name) return sync_fail();
        d.name = *name;
        if (!expect(Tok::Colon, "after constant name")) return sync_fail();
        auto sort = expect_ident("as constant sort");
        if (!sort) return sync_fail();
        d.sort2 = *sort;
        if (!expect(Tok::Equals, "before constant value")) return sync_fail();
        auto v = parse_term(0);
        if (!v) return sync_fail();
        d.value = std::move(*v);
        if (!expect(Tok::Semi, "after constant declaration")) return sync_fail();
        return d;
      }
      case Tok::KwFn: {
        next();
        d.kind = SynDecl::Kind::Fn;
        auto name = expect_ident("after 'fn'");
        if (!name) return sync_fail();
        d.name = *name;
        if (!expect(Tok::LParen, "after function name")) return sync_fail();
        if (!accept(Tok::RParen)) {
          while (true) {
            auto s = expect_ident("as argument sort");
            if (!s) return sync_fail();
            d.sort_names.push_back(*s);
            if (accept(Tok::RParen)) break;
            if (!expect(Tok::Comma, "between argument sorts")) return sync_fail();
          }
        }
        if (!expect(Tok::Arrow, "before result sort")) return sync_fail();
        auto res = expect_ident("as result sort");
        if (!res) return sync_fail();
        d.sort2 = *res;
        if (!expect(Tok::Equals, "before function definition")) return sync_fail();
        if (accept(Tok::KwBuiltin)) {
          d.is_builtin = true;
          auto b = expect_ident("as builtin name");
          if (!b) return sync_fail();
          d.builtin_name = *b;
        } else if (accept(Tok::KwTable)) {
          if (!expect(Tok::LBrace, "to open the table")) return sync_fail();
          while (!accept(Tok::RBrace)) {
            if (at(Tok::Eof)) {
              error_here("unterminated table");
              return sync_fail();
            }
            std::vector<SynTerm> key;
            if (!expect(Tok::LParen, "to open a table key")) return sync_fail();
            if (!parse_term_list(key, Tok::RParen, 0)) return sync_fail();
            if (!expect(Tok::Arrow, "between table key and result")) return sync_fail();
            auto result = parse_term(0);
            if (!result) return sync_fail();
            if (!expect(Tok::Semi, "after table entry")) return sync_fail();
            d.table_entries.emplace_back(std::move(key), std::move(*result));
          }
        } else {
          error_here("expected 'builtin' or 'table' as function definition");
          return sync_fail();
        }
        if (!expect(Tok::Semi, "after function declaration")) return sync_fail();
        return d;
      }
      case Tok::KwPred: {
        next();
        if (accept(Tok::KwDynamic)) {
          d.kind = SynDecl::Kind::Place;
          auto name = expect_ident("after 'pred dynamic'");
          if (!name) return sync_fail();
          d.name = *name;
          if (!expect(Tok::Colon, "after predicate name")) return sync_fail();
          auto sort = expect_ident("as item sort");
          if (!sort) return sync_fail();
          d.sort2 = *sort;
          if (!expect(Tok::Semi, "after declaration")) return sync_fail();
          return d;
        }
        if (!expect(Tok::KwStatic, "after 'pred'")) return sync_fail();
        d.kind = SynDecl::Kind::PredStatic;
        auto name = expect_ident("after 'pred static'");
        if (!name) return sync_fail();
        d.name = *name;
        if (!expect(Tok::LParen, "after predicate name")) return sync_fail();
        if (!accept(Tok::RParen)) {
          while (true) {
            auto s = expect_ident("as argument sort");
            if (!s) return sync_fail();
            d.sort_names.push_back(*s);
            if (accept(Tok::RParen)) break;
            if (!expect(Tok::Comma, "between argument sorts")) return sync_fail();
          }
        }
        if (!expect(Tok::Equals, "before predicate definition")) return sync_fail();
        if (accept(Tok::KwBuiltin)) {
          d.is_builtin = true;
          auto b = expect_ident("as builtin name");
          if (!b) return sync_fail();
          d.builtin_name = *b;
        } else if (at(Tok::LBrace)) {
          next();
          if (!parse_term_list(d.values, Tok::RBrace, 0)) return sync_fail();
        } else {
          error_here("expected 'builtin' or a tuple set as predicate definition");
          return sync_fail();
        }
        if (!expect(Tok::Semi, "after predicate declaration")) return sync_fail();
        return d;
      }
      case Tok::KwPlace: {
        next();
        d.kind = SynDecl::Kind::Place;
        auto name = expect_ident("after 'place'");
        if (!name) return sync_fail();
        d.name = *name;
        if (!expect(Tok::Colon, "after place name")) return sync_fail();
        auto sort = expect_ident("as item sort");
        if (!sort) return sync_fail();
        d.sort2 = *sort;
        if (!expect(Tok::Semi, "after place declaration")) return sync_fail();
        return d;
      }
      case Tok::KwTransition: {
        next();
        d.kind = SynDecl::Kind::Transition;
        auto name = expect_ident("after 'transition'");
        if (!name) return sync_fail();
        d.name = *name;
        if (!expect(Tok::LBrace, "to open the transition body")) return sync_fail();
        while (!accept(Tok::RBrace)) {
          if (at(Tok::Eof)) {
            error_here("unterminated transition body");
            return sync_fail();
          }
          if (!parse_transition_item(d)) {
            sync_decl();
            return std::nullopt;
          }
        }
        return d;
      }
      case Tok::KwMarking: {
        next();
        d.kind = SynDecl::Kind::Marking;
        if (!expect(Tok::LBrace, "to open the marking block")) return sync_fail();
        while (!accept(Tok::RBrace)) {
          if (at(Tok::Eof)) {
            error_here("unterminated marking block");
            return sync_fail();
          }
          SynMarkEntry entry;
          entry.line = peek().line;
          entry.col = peek().col;
          auto place = expect_ident("as place name");
          if (!place) return sync_fail();
          entry.place = *place;
          if (!expect(Tok::Colon, "after place name")) return sync_fail();
          if (!expect(Tok::LBrace, "to open the item set")) return sync_fail();
          if (!parse_term_list(entry.items, Tok::RBrace, 0)) return sync_fail();
          if (!expect(Tok::Semi, "after marking entry")) return sync_fail();
          d.marking_entries.push_back(std::move(entry));
        }
        return d;
      }
      case Tok::KwInterface: {
        next();
        d.kind = SynDecl::Kind::Interface;
        if (accept(Tok::KwLeft)) {
          d.is_left = true;
        } else if (accept(Tok::KwRight)) {
          d.is_left = false;
        } else {
          error_here("expected 'left' or 'right' after 'interface'");
          return sync_fail();
        }
        if (!expect(Tok::LParen, "to open the label list")) return sync_fail();
        if (!accept(Tok::RParen)) {
          while (true) {
            auto l = expect_ident("as interface label");
            if (!l) return sync_fail();
            d.sort_names.push_back(*l);
            if (accept(Tok::RParen)) break;
            if (!expect(Tok::Comma, "between labels")) return sync_fail();
          }
        }
        if (!expect(Tok::Semi, "after interface declaration")) return sync_fail();
        return d;
      }
      default:
        error_here(std::string("expected a declaration, found ") + dsl::token_name(t.kind));
        sync_decl();
        return std::nullopt;
    }
  }

  bool parse_transition_item(SynDecl& d) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::KwConsume:
      case Tok::KwRead:
      case Tok::KwProduce: {
        SynArc arc;
        arc.line = t.line;
        arc.col = t.col;
        arc.mode = t.kind == Tok::KwConsume  ? ArcMode::Consume
                   : t.kind == Tok::KwRead   ? ArcMode::Read
                                             : ArcMode::Produce;
        next();
        auto place = expect_ident("as arc place");
        if (!place) return false;
        arc.place = *place;
        if (!expect(Tok::Colon, "after arc place")) return false;
        auto term = parse_term(0);
        if (!term) return false;
        arc.term = std::move(*term);
        if (!expect(Tok::Semi, "after arc inscription")) return false;
        d.arcs.push_back(std::move(arc));
        return true;
      }
      case Tok::KwVar: {
        SynVar v;
        v.line = t.line;
        v.col = t.col;
        next();
        auto name = expect_ident("after 'var'");
        if (!name) return false;
        v.name = *name;
        if (!expect(Tok::Colon, "after variable name")) return false;
        auto sort = expect_ident("as variable sort");
        if (!sort) return false;
        v.sort = *sort;
        if (!expect(Tok::Semi, "after variable declaration")) return false;
        d.vars.push_back(std::move(v));
        return true;
      }
      case Tok::KwGuard: {
        std::size_t gl = t.line, gc = t.col;
        next();
        auto term = parse_term(0);
        if (!term) return false;
        if (d.guard) {
          error_at(gl, gc, "transition '" + d.name + "' has more than one guard");
          return false;
        }
        d.guard = std::move(*term);
        if (!expect(Tok::Semi, "after guard")) return false;
        return true;
      }
      default:
        error_here(std::string("expected 'consume', 'read', 'produce', 'var' or 'guard', found ") +
                   dsl::token_name(t.kind));
        return false;
    }
  }

  std::optional<SynDecl> sync_fail() {
    sync_decl();
    return std::nullopt;
  }

  std::string_view text_;
  std::vector<Diagnostic>& diags_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Semantic assembly
// ---------------------------------------------------------------------------

class Analyzer {
public:
  Analyzer(std::string_view text, std::vector<Diagnostic>& diags)
      : text_(text), diags_(diags) {}

  std::optional<ModuleNet> build(const std::vector<SynDecl>& decls) {
    ModuleNet mod;
    collect_declarations(decls, mod);
    if (has_error()) return std::nullopt;
    symbols_ = carrier_symbols(mod.net.signature);
    build_transitions(decls, mod);
    build_markings(decls, mod);
    if (has_error()) return std::nullopt;

    for (const auto& issue : check_module(mod)) {
      const PosMap* table = issue.about_marking ? &marking_pos_ : &subject_pos_;
      auto pos = table->find(issue.subject);
      if (pos == table->end() && table != &subject_pos_) {
        table = &subject_pos_;
        pos = table->find(issue.subject);
      }
      if (pos != table->end())
        error_at(pos->second.first, pos->second.second, issue.message);
      else
        error_at(1, 1, issue.message);
    }
    if (has_error()) return std::nullopt;
    return mod;
  }

  std::optional<Value> to_value(const SynTerm& t) {
    switch (t.kind) {
      case SynTerm::Kind::Int:
        return Value::integer(t.num);
      case SynTerm::Kind::Bool:
        return Value::boolean(t.flag);
      case SynTerm::Kind::Ident:
        if (!is_valid_symbol_name(t.name)) {
          error_at(t.line, t.col, "invalid symbol name '" + t.name + "'");
          return std::nullopt;
        }
        return Value::symbol(t.name);
      case SynTerm::Kind::App:
        error_at(t.line, t.col, "function application is not allowed in a value literal");
        return std::nullopt;
      case SynTerm::Kind::Tuple:
      case SynTerm::Kind::Set: {
        std::vector<Value> items;
        items.reserve(t.args.size());
        for (const auto& a : t.args) {
          auto v = to_value(a);
          if (!v) return std::nullopt;
          items.push_back(std::move(*v));
        }
        return t.kind == SynTerm::Kind::Tuple ? Value::tuple(std::move(items))
                                              : Value::set(std::move(items));
      }
    }
    return std::nullopt;
  }

private:
  bool has_error() const {
    return std::any_of(diags_.begin(), diags_.end(), [](const Diagnostic& d) {
      return d.severity == Diagnostic::Severity::Error;
    });
  }

  void error_at(std::size_t line, std::size_t col, const std::string& msg) {
    if (diags_.size() < kMaxDiagnostics)
      diags_.push_back(
          {Diagnostic::Severity::Error, msg, line, col, dsl::source_line(text_, line)});
  }

  void remember(const std::string& subject, const SynDecl& d) {
    subject_pos_.emplace(subject, std::make_pair(d.line, d.col));
  }

  void collect_declarations(const std::vector<SynDecl>& decls, ModuleNet& mod) {
    Signature& sig = mod.net.signature;
    Structure& str = mod.net.structure;
    bool have_module = false;
    bool have_left = false, have_right = false;

    for (const auto& d : decls) {
      switch (d.kind) {
        case SynDecl::Kind::Module:
          if (have_module) {
            error_at(d.line, d.col, "more than one 'module' declaration");
            break;
          }
          have_module = true;
          mod.name = d.name;
          break;

        case SynDecl::Kind::SortExplicit: {
          std::vector<Value> elems;
          for (const auto& e : d.values) {
            auto v = to_value(e);
            if (v) elems.push_back(std::move(*v));
          }
          declare_sort(sig, d, SortDef::explicit_set(std::move(elems)));
          break;
        }
        case SynDecl::Kind::SortProduct:
          declare_sort(sig, d, SortDef::product(d.sort_names));
          break;
        case SynDecl::Kind::SortPowerset:
          declare_sort(sig, d, SortDef::powerset(d.sort2));
          break;

        case SynDecl::Kind::Const: {
          remember(d.name, d);
          if (!sig.constants.emplace(d.name, d.sort2).second) {
            error_at(d.line, d.col, "constant '" + d.name + "' already declared");
            break;
          }
          if (auto v = to_value(*d.value)) str.constant_values.emplace(d.name, std::move(*v));
          break;
        }

        case SynDecl::Kind::Fn: {
          remember(d.name, d);
          if (!sig.functions.emplace(d.name, FunctionDecl{d.sort_names, d.sort2}).second) {
            error_at(d.line, d.col, "function '" + d.name + "' already declared");
            break;
          }
          if (d.is_builtin) {
            auto op = builtin_by_name(d.builtin_name);
            if (!op) {
              error_at(d.line, d.col, "unknown builtin '" + d.builtin_name + "'");
              break;
            }
            str.function_defs.emplace(d.name, FnDef::from_builtin(std::move(*op)));
          } else {
            std::map<std::vector<Value>, Value> table;
            for (const auto& [key_terms, result_term] : d.table_entries) {
              std::vector<Value> key;
              bool ok = true;
              for (const auto& kt : key_terms) {
                auto v = to_value(kt);
                if (!v) {
                  ok = false;
                  break;
                }
                key.push_back(std::move(*v));
              }
              auto rv = to_value(result_term);
              if (!ok || !rv) continue;
              if (!table.emplace(std::move(key), std::move(*rv)).second)
                error_at(d.line, d.col,
                         "function '" + d.name + "': duplicate table entry");
            }
            str.function_defs.emplace(d.name, FnDef::from_table(std::move(table)));
          }
          break;
        }

        case SynDecl::Kind::PredStatic: {
          remember(d.name, d);
          if (!sig.static_predicates.emplace(d.name, d.sort_names).second) {
            error_at(d.line, d.col, "predicate '" + d.name + "' already declared");
            break;
          }
          if (d.is_builtin) {
            auto op = builtin_by_name(d.builtin_name);
            if (!op) {
              error_at(d.line, d.col, "unknown builtin '" + d.builtin_name + "'");
              break;
            }
            str.static_relations.emplace(d.name, RelDef::from_builtin(std::move(*op)));
          } else {
            std::set<std::vector<Value>> tuples;
            for (const auto& e : d.values) {
              auto v = to_value(e);
              if (!v) continue;
              if (!v->is_tuple()) {
                error_at(e.line, e.col,
                         "relation element must be a tuple of arguments, got " +
                             canonical_text(*v));
                continue;
              }
              tuples.insert(v->items());
            }
            str.static_relations.emplace(d.name, RelDef::from_tuples(std::move(tuples)));
          }
          break;
        }

        case SynDecl::Kind::Place: {
          remember(d.name, d);
          if (!mod.net.places.emplace(d.name, Place{d.name, d.sort2}).second)
            error_at(d.line, d.col, "place '" + d.name + "' already declared");
          break;
        }

        case SynDecl::Kind::Transition:
          remember(d.name, d);
          if (mod.net.transitions.count(d.name))
            error_at(d.line, d.col, "transition '" + d.name + "' already declared");
          else
            mod.net.transitions.emplace(d.name, Transition{});  // body filled later
          break;

        case SynDecl::Kind::Marking:
          break;  // handled after symbol collection

        case SynDecl::Kind::Interface: {
          bool& have = d.is_left ? have_left : have_right;
          if (have) {
            error_at(d.line, d.col, std::string("more than one '") +
                                        (d.is_left ? "left" : "right") +
                                        "' interface declaration");
            break;
          }
          have = true;
          auto& side = d.is_left ? mod.left_interface : mod.right_interface;
          for (const auto& l : d.sort_names) {
            remember(l, d);
            side.push_back(l);
          }
          break;
        }
      }
    }
  }

  void declare_sort(Signature& sig, const SynDecl& d, SortDef def) {
    remember(d.name, d);
    if (d.name == "int" || d.name == "bool") {
      error_at(d.line, d.col, "sort '" + d.name + "' is builtin and cannot be redeclared");
      return;
    }
    if (!sig.sorts.emplace(d.name, std::move(def)).second)
      error_at(d.line, d.col, "sort '" + d.name + "' already declared");
  }

  Term resolve_term(const SynTerm& t, const Signature& sig) {
    switch (t.kind) {
      case SynTerm::Kind::Int:
        return Term::literal(Value::integer(t.num));
      case SynTerm::Kind::Bool:
        return Term::literal(Value::boolean(t.flag));
      case SynTerm::Kind::Ident:
        if (sig.constants.count(t.name)) return Term::constant(t.name);
        if (std::binary_search(symbols_.begin(), symbols_.end(), t.name))
          return Term::literal(Value::symbol(t.name));
        return Term::var(t.name);
      case SynTerm::Kind::App: {
        std::vector<Term> args;
        args.reserve(t.args.size());
        for (const auto& a : t.args) args.push_back(resolve_term(a, sig));
        return Term::app(t.name, std::move(args));
      }
      case SynTerm::Kind::Tuple:
      case SynTerm::Kind::Set: {
        std::vector<Term> args;
        args.reserve(t.args.size());
        bool all_lit = true;
        for (const auto& a : t.args) {
          args.push_back(resolve_term(a, sig));
          all_lit = all_lit && args.back().kind == Term::Kind::Lit;
        }
        if (all_lit) {
          std::vector<Value> vals;
          vals.reserve(args.size());
          for (auto& a : args) vals.push_back(std::move(a.lit));
          return Term::literal(t.kind == SynTerm::Kind::Tuple ? Value::tuple(std::move(vals))
                                                              : Value::set(std::move(vals)));
        }
        return t.kind == SynTerm::Kind::Tuple ? Term::tuple(std::move(args))
                                              : Term::set(std::move(args));
      }
    }
    return Term::literal(Value::integer(0));
  }

  void build_transitions(const std::vector<SynDecl>& decls, ModuleNet& mod) {
    for (const auto& d : decls) {
      if (d.kind != SynDecl::Kind::Transition) continue;
      auto it = mod.net.transitions.find(d.name);
      if (it == mod.net.transitions.end()) continue;
      Transition& t = it->second;
      t.name = d.name;
      for (const auto& arc : d.arcs)
        t.arcs.push_back({arc.place, arc.mode, resolve_term(arc.term, mod.net.signature)});
      if (d.guard) t.guard = resolve_term(*d.guard, mod.net.signature);
      for (const auto& v : d.vars) {
        if (std::binary_search(symbols_.begin(), symbols_.end(), v.name) ||
            mod.net.signature.constants.count(v.name)) {
          error_at(v.line, v.col, "variable '" + v.name +
                                      "' collides with a declared constant or carrier symbol");
          continue;
        }
        if (!t.free_vars.emplace(v.name, v.sort).second)
          error_at(v.line, v.col, "variable '" + v.name + "' declared twice");
      }
    }
  }

  void build_markings(const std::vector<SynDecl>& decls, ModuleNet& mod) {
    for (const auto& d : decls) {
      if (d.kind != SynDecl::Kind::Marking) continue;
      for (const auto& entry : d.marking_entries) {
        marking_pos_.emplace(entry.place, std::make_pair(entry.line, entry.col));
        if (!mod.net.places.count(entry.place)) {
          error_at(entry.line, entry.col,
                   "marking mentions undeclared place '" + entry.place + "'");
          continue;
        }
        for (const auto& itm : entry.items) {
          auto v = to_value(itm);
          if (v) mod.net.initial_marking.add(entry.place, std::move(*v));
        }
      }
    }
  }

  std::string_view text_;
  std::vector<Diagnostic>& diags_;
  std::vector<std::string> symbols_;  // sorted
  using PosMap = std::map<std::string, std::pair<std::size_t, std::size_t>>;
  PosMap subject_pos_;
  PosMap marking_pos_;
};

}  // namespace

ParseResult parse(std::string_view text, std::string origin) {
  (void)origin;
  ParseResult result;
  Parser parser(text, result.diagnostics);
  auto decls = parser.parse_file();
  bool syntax_error = std::any_of(
      result.diagnostics.begin(), result.diagnostics.end(),
      [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
  if (syntax_error) return result;

  Analyzer analyzer(text, result.diagnostics);
  result.module = analyzer.build(decls);
  return result;
}

std::optional<Value> parse_value_text(std::string_view text) {
  std::vector<Diagnostic> diags;
  Parser parser(text, diags);
  auto t = parser.parse_single_value();
  if (!t || !diags.empty()) return std::nullopt;
  Analyzer analyzer(text, diags);
  auto v = analyzer.to_value(*t);
  if (!diags.empty()) return std::nullopt;
  return v;
}

MarkingResult parse_marking_text(std::string_view text, const Net& net) {
  MarkingResult result;
  Parser parser(text, result.diagnostics);
  auto decl = parser.parse_single_marking();
  bool bad = std::any_of(
      result.diagnostics.begin(), result.diagnostics.end(),
      [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
  if (!decl || bad) return result;

  Analyzer analyzer(text, result.diagnostics);
  Marking m;
  for (const auto& [name, _] : net.places) m.ensure_place(name);
  // Reuse the value conversion; validate against the net's carriers.
  for (const auto& entry : decl->marking_entries) {
    auto pit = net.places.find(entry.place);
    if (pit == net.places.end()) {
      result.diagnostics.push_back({Diagnostic::Severity::Error,
                                    "marking mentions undeclared place '" + entry.place + "'",
                                    entry.line, entry.col, dsl::source_line(text, entry.line)});
      continue;
    }
    for (const auto& itm : entry.items) {
      auto v = analyzer.to_value(itm);
      if (!v) continue;
      if (!carrier_contains(net.signature, pit->second.item_sort, *v)) {
        result.diagnostics.push_back(
            {Diagnostic::Severity::Error,
             "item " + canonical_text(*v) + " is outside the carrier of '" +
                 pit->second.item_sort + "'",
             itm.line, itm.col, dsl::source_line(text, itm.line)});
        continue;
      }
      m.add(entry.place, *v);
    }
  }
  bad = std::any_of(
      result.diagnostics.begin(), result.diagnostics.end(),
      [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
  if (!bad) result.marking = std::move(m);
  return result;
}

}  // namespace heraklit
