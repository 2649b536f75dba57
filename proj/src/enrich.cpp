#include "olp/enrich.hpp"

#include <set>
#include <tuple>

namespace olp {

namespace {

void require_normalized(const Automaton& a, const char* op) {
  if (!a.normalized()) throw error(std::string(op) + ": input automaton is not normalized");
  if (a.marked()) throw error(std::string(op) + ": input automaton is marked");
}

SymbolSet singleton(const Automaton& a, uint32_t sym) {
  SymbolSet s(a.width());
  s.set(sym);
  return s;
}

}  // namespace

Automaton add_repeats(const Automaton& a) {
  require_normalized(a, "add_repeats");
  Automaton r = a;
  SymbolSet rep = singleton(a, SymbolSpace::kRepeat);
  std::set<std::pair<uint32_t, uint32_t>> added;
  for (const auto& t : a.transitions())
    if (added.insert({t.to, t.from}).second)
      r.add_transition(t.to, t.from, rep, Pc::consumer);
  return r;
}

Automaton add_skips(const Automaton& a) {
  require_normalized(a, "add_skips");
  Automaton r = a;
  SymbolSet skip = singleton(a, SymbolSpace::kSkip);
  std::set<std::pair<uint32_t, uint32_t>> added;
  for (const auto& t : a.transitions())
    if (added.insert({t.from, t.to}).second)
      r.add_transition(t.from, t.to, skip, Pc::consumer);
  return r;
}

Automaton add_self_loops(const Automaton& a) {
  require_normalized(a, "add_self_loops");
  Automaton r = a;
  const SymbolSet& seg = a.space()->segment_mask();
  for (uint32_t i = 0; i < a.num_states(); ++i)
    r.add_transition(i, i, seg, Pc::consumer);
  return r;
}

Automaton add_self_loop_before(const SymbolSet& cond, const Automaton& a) {
  if (cond.empty())
    throw error("add_self_loop_before: condition denotes the empty set");
  if (a.marked()) throw error("add_self_loop_before: input automaton is marked");
  Automaton r = a;
  const SymbolSet& tech = a.space()->technical_mask();
  const SymbolSet& seg = a.space()->segment_mask();
  for (uint32_t i = 0; i < a.num_states(); ++i) {
    bool trigger = false;
    for (const auto& t : a.transitions())
      if (t.from == i && !t.label.set.intersects(tech) && t.label.set.subset_of(cond)) {
        trigger = true;
        break;
      }
    if (trigger) r.add_transition(i, i, seg, Pc::consumer);
  }
  r.stamp_normalized(false);
  return r;
}

Automaton ignore(const Automaton& a, const SymbolSet& tolerated) {
  if (tolerated.empty()) return a;
  Automaton r = a;
  for (uint32_t i = 0; i < a.num_states(); ++i)
    r.add_transition(i, i, tolerated, Pc::consumer);
  return r;
}

}  // namespace olp
