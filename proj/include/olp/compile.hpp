#pragma once

#include <map>
#include <string>

#include "olp/ast.hpp"
#include "olp/fsa.hpp"

namespace olp {

// Structural compiler from the regex DSL into set-labeled automata. All
// intermediate automata run over the doubled (marked) universe so that
// up/down atoms can be matched relationally by sonority_differences;
// compile() folds the marks away at the top.
class Compiler {
 public:
  Compiler(const SymbolSpace& space, const MacroEnv& env);

  // Plain, normalized result.
  Automaton compile(const NodePtr& node);
  // Marked intermediate result, for embedding into larger expressions.
  Automaton compile_marked(const NodePtr& node);

  FormulaPtr to_formula(const NodePtr& node);

  const SymbolSpace& space() const { return space_; }

 private:
  Automaton comp(const NodePtr& node);
  Automaton comp_call(const std::string& name, const std::vector<NodePtr>& args,
                      int line, int col);
  Automaton builtin(const std::string& name, const std::vector<NodePtr>& args);
  Automaton compile_rule(const Node& node);
  Automaton string_to_segments(const std::string& text);

  FormulaPtr formula(const NodePtr& node);

  Automaton plain(Automaton marked);

  const SymbolSpace& space_;
  const MacroEnv& env_;
  std::vector<std::string> call_stack_;
  std::map<std::string, Automaton> cache0_;  // compiled 0-ary macros (marked)
  std::map<std::string, Automaton> builtin_cache_;
};

}  // namespace olp
