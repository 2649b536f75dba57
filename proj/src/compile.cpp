#include "olp/compile.hpp"

#include <algorithm>
#include <iostream>

#include "olp/enrich.hpp"
#include "olp/prosody.hpp"

namespace olp {

namespace {

SymbolSet flat_marked(const MarkedSet& m, uint32_t w) {
  SymbolSet out(2 * w);
  m.if_up.for_each([&](uint32_t i) { out.set(i); });
  m.if_down.for_each([&](uint32_t i) { out.set(w + i); });
  return out;
}

// Eager substitution of macro arguments for parameters. Arguments are closed
// expressions (substituted at their own expansion sites), so replacing Var
// leaves cannot capture anything.
NodePtr substitute(const NodePtr& node, const std::map<std::string, NodePtr>& args) {
  if (node->kind == Node::Kind::Var) {
    auto it = args.find(node->text);
    if (it == args.end())
      throw error("unbound macro parameter '" + node->text + "'");
    return it->second;
  }
  if (node->items.empty()) return node;
  std::vector<NodePtr> items;
  items.reserve(node->items.size());
  bool changed = false;
  for (const NodePtr& item : node->items) {
    NodePtr next = substitute(item, args);
    changed |= (next != item);
    items.push_back(std::move(next));
  }
  if (!changed) return node;
  return Node::make(node->kind, std::move(items), node->text);
}

}  // namespace

Compiler::Compiler(const SymbolSpace& space, const MacroEnv& env)
    : space_(space), env_(env) {}

Automaton Compiler::plain(Automaton marked) { return normalize(forget_marks(marked)); }

Automaton Compiler::compile(const NodePtr& node) { return plain(compile_marked(node)); }

Automaton Compiler::compile_marked(const NodePtr& node) { return comp(node); }

Automaton Compiler::comp(const NodePtr& node) {
  switch (node->kind) {
    case Node::Kind::Concat: {
      Automaton r = Automaton::epsilon_language(&space_, true);
      for (const NodePtr& item : node->items) r = concat(r, comp(item));
      return r;
    }
    case Node::Kind::Union: {
      if (node->items.empty()) return Automaton::empty_language(&space_, true);
      Automaton r = comp(node->items[0]);
      for (size_t i = 1; i < node->items.size(); ++i) r = union_of(r, comp(node->items[i]));
      return r;
    }
    case Node::Kind::Star:
      return star(comp(node->items[0]));
    case Node::Kind::Plus:
      return plus(comp(node->items[0]));
    case Node::Kind::Option:
      return option(comp(node->items[0]));
    case Node::Kind::And: {
      Automaton l = normalize(comp(node->items[0]));
      Automaton r = normalize(comp(node->items[1]));
      return intersect_open(l, r);
    }
    case Node::Kind::Var:
      throw error("unbound macro parameter '" + node->text + "'");
    case Node::Kind::Call:
      return comp_call(node->text, node->items, node->line, node->col);
    case Node::Kind::Atom:
      // a bare identifier at expression level is a 0-ary macro reference
      return comp_call(node->text, {}, node->line, node->col);
    case Node::Kind::RuleR:
    case Node::Kind::RuleL:
      return compile_rule(*node);
    case Node::Kind::Or:
    case Node::Kind::Not:
      throw error("type operator at expression level; wrap the formula in producer()/consumer()");
    case Node::Kind::Str:
      throw error("bare string literal at expression level; use stringToSegments(\"...\")");
  }
  throw error("bad expression node");
}

Automaton Compiler::comp_call(const std::string& name, const std::vector<NodePtr>& args,
                              int line, int col) {
  (void)line;
  (void)col;
  if (MacroEnv::is_builtin(name)) return builtin(name, args);

  const MacroEnv::Macro* m = env_.find(name, args.size());
  if (!m) {
    if (env_.has_name(name))
      throw error("macro '" + name + "' called with wrong arity " +
                  std::to_string(args.size()));
    if (args.empty() && space_.is_atom(name))
      throw error("type atom '" + name +
                  "' at expression level; wrap it in producer()/consumer()");
    throw error("unknown macro '" + name + "/" + std::to_string(args.size()) + "'");
  }

  if (std::find(call_stack_.begin(), call_stack_.end(), name) != call_stack_.end())
    throw error("recursive macro '" + name + "'");

  bool cacheable = args.empty();
  if (cacheable) {
    auto it = cache0_.find(name);
    if (it != cache0_.end()) return it->second;
  }

  std::map<std::string, NodePtr> binding;
  for (size_t i = 0; i < m->params.size(); ++i) binding[m->params[i]] = args[i];

  call_stack_.push_back(name);
  Automaton r = comp(substitute(m->body, binding));
  call_stack_.pop_back();
  if (cacheable) {
    Automaton n = normalize(r);
    cache0_.emplace(name, n);
    return n;
  }
  return r;
}

Automaton Compiler::builtin(const std::string& name, const std::vector<NodePtr>& args) {
  auto arity = [&](size_t n) {
    if (args.size() != n)
      throw error("builtin '" + name + "' expects " + std::to_string(n) + " argument(s)");
  };

  if (name == "producer" || name == "consumer") {
    arity(1);
    FormulaPtr f = formula(args[0]);
    MarkedSet m = denote(*f, space_);
    SymbolSet flat = flat_marked(m, space_.width());
    if (flat.empty()) return Automaton::empty_language(&space_, true);
    return Automaton::single(&space_, true,
                             {flat, name == "producer" ? Pc::producer : Pc::consumer});
  }

  if (name == "sonority_differences") {
    arity(0);
    auto it = builtin_cache_.find(name);
    if (it == builtin_cache_.end())
      it = builtin_cache_.emplace(name, sonority_differences(space_)).first;
    return it->second;
  }

  if (name == "stringToSegments") {
    arity(1);
    const NodePtr& arg = args[0];
    if (arg->kind != Node::Kind::Str)
      throw error("stringToSegments expects a string literal");
    return string_to_segments(arg->text);
  }

  if (name == "ignore") {
    arity(2);
    Automaton a = normalize(comp(args[0]));
    Automaton s = comp(args[1]);
    SymbolSet tolerated(a.width());
    for (const auto& t : s.transitions()) tolerated |= t.label.set;
    return ignore(a, tolerated);
  }

  if (name == "closed_interpretation") {
    arity(1);
    Automaton a = normalize(comp(args[0]));
    return intersect_closed(a, universal_star(&space_, true, Pc::producer));
  }

  if (name == "add_repeats" || name == "add_skips" || name == "add_self_loops") {
    arity(1);
    Automaton a = plain(comp(args[0]));
    Automaton r = name == "add_repeats"  ? add_repeats(a)
                  : name == "add_skips"  ? add_skips(a)
                                         : add_self_loops(a);
    return lift_marked(r);
  }

  if (name == "add_self_loop_before") {
    arity(2);
    FormulaPtr f = formula(args[0]);
    SymbolSet cond = denote_plain(*f, space_);
    Automaton a = plain(comp(args[1]));
    return lift_marked(add_self_loop_before(cond, a));
  }

  throw error("unhandled builtin '" + name + "'");
}

Automaton Compiler::compile_rule(const Node& node) {
  FormulaPtr fa = formula(node.items[0]);
  FormulaPtr fb = formula(node.items[1]);
  FormulaPtr fc = formula(node.items[2]);
  SymbolSet da = denote_plain(*fa, space_);
  SymbolSet db = denote_plain(*fb, space_);
  SymbolSet dc = denote_plain(*fc, space_);
  if (da.intersects(space_.technical_mask()) || dc.intersects(space_.technical_mask()))
    throw error("monotonic rule over technical symbols");
  if ((da & db).empty())
    std::cerr << "warning: rule " << fa->to_string() << " -> " << fb->to_string()
              << " does not specialize its focus\n";

  SymbolSet focus = da - db;
  const uint32_t w = space_.width();
  // forbidden factor: focus, then the right context, with technical symbols
  // transparent in between (and vice versa for left-context rules)
  Automaton bad(&space_, false);
  uint32_t s0 = bad.add_state(), s1 = bad.add_state(), s2 = bad.add_state();
  bad.set_start(s0);
  bad.set_final(s2);
  SymbolSet all = SymbolSet::full(w);
  bad.add_transition(s0, s0, all, Pc::consumer);
  bad.add_transition(s2, s2, all, Pc::consumer);
  const SymbolSet& tech = space_.technical_mask();
  bad.add_transition(s1, s1, tech, Pc::consumer);
  if (node.kind == Node::Kind::RuleR) {
    bad.add_transition(s0, s1, focus, Pc::consumer);
    bad.add_transition(s1, s2, dc, Pc::consumer);
  } else {
    bad.add_transition(s0, s1, dc, Pc::consumer);
    bad.add_transition(s1, s2, focus, Pc::consumer);
  }
  return lift_marked(complement_consumer(bad));
}

Automaton Compiler::string_to_segments(const std::string& text) {
  std::vector<Label> labels;
  static const std::map<char, char> alternating = {{'@', 'E'}, {'e', 'i'}, {'o', 'u'}};
  for (char c : text) {
    std::string name(1, c);
    int ph = space_.phoneme_index(name);
    if (ph < 0)
      throw error("stringToSegments: unknown phoneme '" + name + "'");
    FormulaPtr f = Formula::make_atom(name);
    auto alt = alternating.find(c);
    if (alt != alternating.end()) {
      std::string outer(1, alt->second);
      if (space_.phoneme_index(outer) < 0)
        throw error("stringToSegments: alternation target '" + outer + "' not in inventory");
      // Inner vowels alternate with their outer counterpart; the outer
      // variant only ever surfaces unstressed (prefinal syllables).
      f = Formula::f_or(f, Formula::f_and(Formula::make_atom(outer),
                                          Formula::make_atom("unstressed")));
    }
    MarkedSet m = denote(*f, space_);
    labels.push_back({flat_marked(m, space_.width()), Pc::producer});
  }
  return Automaton::chain(&space_, true, labels);
}

FormulaPtr Compiler::formula(const NodePtr& node) {
  switch (node->kind) {
    case Node::Kind::And:
      return Formula::f_and(formula(node->items[0]), formula(node->items[1]));
    case Node::Kind::Or:
      return Formula::f_or(formula(node->items[0]), formula(node->items[1]));
    case Node::Kind::Not:
      return Formula::f_not(formula(node->items[0]));
    case Node::Kind::Var:
      throw error("unbound macro parameter '" + node->text + "'");
    case Node::Kind::Atom: {
      if (space_.is_atom(node->text)) return Formula::make_atom(node->text);
      const MacroEnv::Macro* m = env_.find(node->text, 0);
      if (m) return formula(m->body);
      throw error("unknown atom '" + node->text + "'");
    }
    case Node::Kind::Call: {
      const MacroEnv::Macro* m = env_.find(node->text, node->items.size());
      if (!m) throw error("unknown type macro '" + node->text + "'");
      std::map<std::string, NodePtr> binding;
      for (size_t i = 0; i < m->params.size(); ++i) binding[m->params[i]] = node->items[i];
      return formula(substitute(m->body, binding));
    }
    default:
      throw error("regular-expression operator inside a type formula");
  }
}

FormulaPtr Compiler::to_formula(const NodePtr& node) { return formula(node); }

}  // namespace olp
