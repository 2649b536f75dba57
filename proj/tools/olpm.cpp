#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "olp/dot.hpp"
#include "olp/temiar.hpp"

namespace {

struct CommonOpts {
  std::string grammar;
  std::string inventory;
  std::vector<std::string> lexicons;
  bool no_optimize = false;
};

olp::Grammar load(const CommonOpts& c) {
  olp::GrammarOptions opts;
  opts.inventory_path = c.inventory;
  opts.lexicon_paths = c.lexicons;
  return olp::Grammar::load_file(c.grammar, opts);
}

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("grammar", c.grammar, "grammar file (.olpm)")->required();
  cmd->add_option("--inventory", c.inventory, "phoneme inventory file overriding the grammar's");
  cmd->add_option("--lexicon", c.lexicons, "additional lexicon file(s)");
  cmd->add_flag("--no-optimize", c.no_optimize,
                "skip bounded local optimization (debugging path structure)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"olpm - one-level prosodic morphology engine"};
  app.require_subcommand(1);

  CommonOpts eval_opts;
  std::string eval_expr;
  unsigned max_len = 32;
  bool annotate = false, allow_empty = false;
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate an expression and print its forms");
  add_common(eval_cmd, eval_opts);
  eval_cmd->add_option("expression", eval_expr, "expression to evaluate")->required();
  eval_cmd->add_option("--max-len", max_len, "maximum symbol-string length enumerated");
  eval_cmd->add_flag("--annotate", annotate, "print full symbol strings with technical marks");
  eval_cmd->add_flag("--allow-empty", allow_empty, "exit 0 even when the language is empty");

  CommonOpts par_opts;
  std::vector<std::string> roots;
  CLI::App* par_cmd = app.add_subcommand("paradigm", "print the six-cell paradigm per root");
  add_common(par_cmd, par_opts);
  par_cmd->add_option("roots", roots, "lexicon root name(s)")->required();

  CommonOpts dot_opts;
  std::string dot_expr, dot_out;
  CLI::App* dot_cmd = app.add_subcommand("dot", "export a compiled expression as Graphviz DOT");
  add_common(dot_cmd, dot_opts);
  dot_cmd->add_option("expression", dot_expr, "expression to compile")->required();
  dot_cmd->add_option("output", dot_out, "output .dot path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*eval_cmd) {
      olp::Grammar g = load(eval_opts);
      olp::Automaton a = g.eval(eval_expr, !eval_opts.no_optimize);
      bool empty = olp::is_empty_language(a);
      if (annotate) {
        for (const std::string& line : g.annotated(a, max_len)) std::cout << line << "\n";
      } else {
        for (const std::string& s : g.surfaces(a, max_len)) std::cout << s << "\n";
      }
      if (empty) {
        std::cerr << "warning: expression denotes the empty language\n";
        if (!allow_empty) return 1;
      }
      return 0;
    }
    if (*par_cmd) {
      olp::Grammar g = load(par_opts);
      std::vector<std::vector<olp::ParadigmCell>> tables;
      for (const std::string& root : roots)
        tables.push_back(g.paradigm(root, !par_opts.no_optimize));
      std::cout << "cell";
      for (const std::string& root : roots) std::cout << "\t" << root;
      std::cout << "\n";
      for (size_t row = 0; row < 6; ++row) {
        const olp::ParadigmCell& proto = tables[0][row];
        std::cout << to_string(proto.voice) << "." << to_string(proto.aspect);
        for (const auto& table : tables) {
          std::cout << "\t";
          const auto& ss = table[row].surfaces;
          if (ss.empty()) std::cout << "-";
          for (size_t i = 0; i < ss.size(); ++i) std::cout << (i ? "," : "") << ss[i];
        }
        std::cout << "\n";
      }
      return 0;
    }
    if (*dot_cmd) {
      olp::Grammar g = load(dot_opts);
      olp::Automaton a = g.eval(dot_expr, !dot_opts.no_optimize);
      std::ofstream out(dot_out, std::ios::binary);
      if (!out) throw olp::error("cannot write '" + dot_out + "'");
      olp::write_dot(out, a);
      if (!out.good()) throw olp::error("write failure on '" + dot_out + "'");
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
