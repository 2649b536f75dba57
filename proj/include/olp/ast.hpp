#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "olp/alphabet.hpp"

namespace olp {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Unified AST for the regular-expression DSL. Type formulas and regular
// expressions share one tree; context decides the interpretation.
struct Node {
  enum class Kind {
    Concat,   // [E1,...,En]; items
    Union,    // {E1,...,En}; items
    Star, Plus, Option,  // postfix; items[0]
    And,      // E1 & E2; items[0], items[1]
    Or,       // T1 ; T2
    Not,      // ~T
    Atom,     // identifier or quoted atom; text
    Var,      // capitalized identifier, bound by an enclosing macro; text
    Str,      // "..." literal; text
    Call,     // name(args); text + items
    RuleR,    // A -r-> B / C; items[0..2]
    RuleL,
  };

  Kind kind;
  std::string text;
  std::vector<NodePtr> items;
  int line = 0, col = 0;

  static NodePtr make(Kind k, std::vector<NodePtr> items = {}, std::string text = {});
};

struct ParseError : error {
  ParseError(const std::string& msg, int line, int col)
      : error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
        line(line), col(col) {}
  int line, col;
};

struct Definition {
  std::string name;
  std::vector<std::string> params;
  NodePtr body;
  int line = 0;
};

struct GrammarFile {
  std::vector<Definition> definitions;
  // top-level directives such as lexicon("...") / inventory("...")
  std::vector<std::pair<std::string, std::string>> directives;
};

NodePtr parse_expression(const std::string& text);
GrammarFile parse_grammar(const std::string& text);

// Macro environment: name/arity -> parameterized body. Redefinition and
// shadowing of builtin operators are errors.
class MacroEnv {
 public:
  struct Macro {
    std::vector<std::string> params;
    NodePtr body;
  };

  void define(const std::string& name, std::vector<std::string> params, NodePtr body);
  const Macro* find(const std::string& name, size_t arity) const;
  bool has_name(const std::string& name) const;

  static bool is_builtin(const std::string& name);

 private:
  std::map<std::pair<std::string, size_t>, Macro> defs_;
};

}  // namespace olp
