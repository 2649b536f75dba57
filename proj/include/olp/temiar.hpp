#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "olp/compile.hpp"
#include "olp/fsa.hpp"

namespace olp {

struct LexiconEntry {
  std::string name;
  std::string root;
  std::string gloss;
  bool has_prefinal_syllable = false;
  // alternating final stop: "labial" (p/m), "coronal" (t/n), "velar" (k/N)
  std::string alternating;
  NodePtr expr;
};

enum class Voice { active, causative };
enum class Aspect { perfective, simulfactive, continuative };

const char* to_string(Voice v);
const char* to_string(Aspect a);

struct ParadigmCell {
  std::string root;
  Voice voice;
  Aspect aspect;
  std::vector<std::string> surfaces;
};

struct GrammarOptions {
  std::string inventory_path;             // overrides directive and default
  std::vector<std::string> lexicon_paths; // in addition to directives
  bool voiced_causative = false;          // footnote /b/ variant of the causative default
};

// A loaded grammar: symbol space, macro environment, lexicon, and the
// expression evaluator on top of them.
class Grammar {
 public:
  static Grammar load_file(const std::string& path, const GrammarOptions& opts = {});
  static Grammar load_text(const std::string& text, const std::string& base_dir = ".",
                           const GrammarOptions& opts = {});

  const SymbolSpace& space() const { return *space_; }
  const MacroEnv& macros() const { return *env_; }
  Compiler& compiler() { return *compiler_; }

  // Compile an expression; with optimize, runs Bounded Local Optimization.
  Automaton eval(const std::string& expression, bool optimize = true);
  Automaton eval_node(const NodePtr& node, bool optimize = true);

  // wordform pipeline for a stem/aspect conjunction: X & word, closed
  // interpretation, optimization, normalization.
  Automaton wordform(const NodePtr& stem_and_aspects, bool optimize = true);

  const std::vector<LexiconEntry>& lexicon() const { return lexicon_; }
  const LexiconEntry* entry(const std::string& root) const;

  std::vector<ParadigmCell> paradigm(const std::string& root, bool optimize = true);

  // Rendered surface forms: technical symbols dropped, phoneme names joined.
  std::vector<std::string> surfaces(const Automaton& a, uint32_t max_len = 32) const;
  // Yields keep technical symbols as tokens; used by tests and --annotate.
  std::vector<std::vector<std::string>> yields(const Automaton& a, uint32_t max_len = 32,
                                               bool keep_technicals = true) const;
  std::vector<std::string> annotated(const Automaton& a, uint32_t max_len = 32) const;

  static std::string surface_of(const SymString& s, const SymbolSpace& space);

  void add_lexicon_text(const std::string& text);

 private:
  Grammar() = default;

  std::unique_ptr<SymbolSpace> space_;
  std::unique_ptr<MacroEnv> env_;
  std::unique_ptr<Compiler> compiler_;
  std::vector<LexiconEntry> lexicon_;
};

}  // namespace olp
