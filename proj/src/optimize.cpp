#include "olp/optimize.hpp"

#include <map>

namespace olp {

int technical_cost(const Label& label, const SymbolSpace& space) {
  return label.set.subset_of(space.technical_mask()) ? 1 : 0;
}

namespace {

struct PathKey {
  // segmental projection at the label level: (set words, pc) per position
  std::vector<std::pair<std::vector<uint64_t>, uint8_t>> items;
  bool operator<(const PathKey& o) const { return items < o.items; }
};

}  // namespace

Automaton bounded_local_optimization(const Automaton& a0, const LabelCost& cost0) {
  LabelCost cost = cost0 ? cost0 : technical_cost;
  Automaton a = trim(normalize(a0));
  if (is_empty_language(a)) return a;
  if (has_cycle(a)) return a;

  std::vector<std::vector<const Transition*>> out(a.num_states());
  for (const auto& t : a.transitions()) out[t.from].push_back(&t);

  const SymbolSpace& sp = *a.space();
  constexpr size_t kPathCap = 200000;

  struct Path {
    std::vector<const Transition*> labels;
    int total = 0;
  };
  std::map<PathKey, std::vector<Path>> groups;
  std::map<PathKey, int> best;

  std::vector<const Transition*> cur;
  size_t paths_seen = 0;
  auto rec = [&](auto&& self, uint32_t state, int acc) -> void {
    if (a.is_final(state)) {
      if (++paths_seen > kPathCap) throw error("optimize: path cap exceeded");
      PathKey key;
      for (const Transition* t : cur)
        if (!t->label.set.subset_of(sp.technical_mask()))
          key.items.emplace_back(t->label.set.words(),
                                 static_cast<uint8_t>(t->label.pc));
      auto [it, fresh] = best.emplace(key, acc);
      if (!fresh && acc < it->second) it->second = acc;
      groups[key].push_back({cur, acc});
    }
    for (const Transition* t : out[state]) {
      cur.push_back(t);
      self(self, t->to, acc + cost(t->label, sp));
      cur.pop_back();
    }
  };
  rec(rec, a.start(), 0);

  Automaton result(a.space(), a.marked());
  uint32_t start = result.add_state();
  result.set_start(start);
  bool any = false;
  for (const auto& [key, paths] : groups) {
    int min_cost = best[key];
    for (const Path& p : paths) {
      if (p.total != min_cost) continue;
      any = true;
      uint32_t curstate = start;
      for (const Transition* t : p.labels) {
        uint32_t next = result.add_state();
        result.add_transition(curstate, next, t->label.set, t->label.pc);
        curstate = next;
      }
      result.set_final(curstate);
    }
  }
  if (!any) return Automaton::empty_language(a.space(), a.marked());
  return normalize(result);
}

}  // namespace olp
