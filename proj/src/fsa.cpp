#include "olp/fsa.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <tuple>

namespace olp {

namespace {

void check_compatible(const Automaton& a, const Automaton& b) {
  if (a.space() != b.space()) throw error("automata over different symbol spaces");
  if (a.marked() != b.marked()) throw error("automata with mismatched mark universes");
}

Automaton copy_shell(const Automaton& a) { return Automaton(a.space(), a.marked()); }

}  // namespace

Automaton Automaton::empty_language(const SymbolSpace* space, bool marked) {
  Automaton a(space, marked);
  a.set_start(a.add_state());
  a.stamp_normalized(true);
  return a;
}

Automaton Automaton::epsilon_language(const SymbolSpace* space, bool marked) {
  Automaton a(space, marked);
  a.set_start(a.add_state());
  a.set_final(0);
  a.stamp_normalized(true);
  return a;
}

Automaton Automaton::single(const SymbolSpace* space, bool marked, Label label) {
  Automaton a(space, marked);
  uint32_t s = a.add_state(), f = a.add_state();
  a.set_start(s);
  a.set_final(f);
  a.add_transition(s, f, std::move(label.set), label.pc);
  return a;
}

Automaton Automaton::chain(const SymbolSpace* space, bool marked,
                           const std::vector<Label>& labels) {
  Automaton a(space, marked);
  uint32_t cur = a.add_state();
  a.set_start(cur);
  for (const Label& l : labels) {
    uint32_t next = a.add_state();
    a.add_transition(cur, next, l.set, l.pc);
    cur = next;
  }
  a.set_final(cur);
  return a;
}

namespace {

// Copies states/transitions of src into dst with an offset; returns offset.
uint32_t splice(Automaton& dst, const Automaton& src) {
  uint32_t offset = dst.num_states();
  for (uint32_t i = 0; i < src.num_states(); ++i) dst.add_state();
  for (const auto& t : src.transitions())
    dst.add_transition(offset + t.from, offset + t.to, t.label.set, t.label.pc);
  for (const auto& [f, t] : src.epsilons()) dst.add_epsilon(offset + f, offset + t);
  return offset;
}

}  // namespace

Automaton concat(const Automaton& a, const Automaton& b) {
  check_compatible(a, b);
  Automaton r = copy_shell(a);
  uint32_t oa = splice(r, a);
  uint32_t ob = splice(r, b);
  r.set_start(oa + a.start());
  for (uint32_t i = 0; i < a.num_states(); ++i)
    if (a.is_final(i)) r.add_epsilon(oa + i, ob + b.start());
  for (uint32_t i = 0; i < b.num_states(); ++i)
    if (b.is_final(i)) r.set_final(ob + i);
  return r;
}

Automaton union_of(const Automaton& a, const Automaton& b) {
  check_compatible(a, b);
  Automaton r = copy_shell(a);
  uint32_t s = r.add_state();
  r.set_start(s);
  uint32_t oa = splice(r, a), ob = splice(r, b);
  r.add_epsilon(s, oa + a.start());
  r.add_epsilon(s, ob + b.start());
  for (uint32_t i = 0; i < a.num_states(); ++i)
    if (a.is_final(i)) r.set_final(oa + i);
  for (uint32_t i = 0; i < b.num_states(); ++i)
    if (b.is_final(i)) r.set_final(ob + i);
  return r;
}

Automaton union_of(const std::vector<Automaton>& as, const SymbolSpace* space, bool marked) {
  if (as.empty()) return Automaton::empty_language(space, marked);
  Automaton r = as[0];
  for (size_t i = 1; i < as.size(); ++i) r = union_of(r, as[i]);
  return r;
}

Automaton star(const Automaton& a) {
  Automaton r = copy_shell(a);
  uint32_t s = r.add_state();
  r.set_start(s);
  r.set_final(s);
  uint32_t oa = splice(r, a);
  r.add_epsilon(s, oa + a.start());
  for (uint32_t i = 0; i < a.num_states(); ++i)
    if (a.is_final(i)) r.add_epsilon(oa + i, s);
  return r;
}

Automaton plus(const Automaton& a) { return concat(a, star(a)); }

Automaton option(const Automaton& a) {
  return union_of(a, Automaton::epsilon_language(a.space(), a.marked()));
}

namespace {

std::vector<std::vector<uint32_t>> adjacency(const Automaton& a, bool reverse) {
  std::vector<std::vector<uint32_t>> adj(a.num_states());
  for (const auto& t : a.transitions())
    adj[reverse ? t.to : t.from].push_back(reverse ? t.from : t.to);
  for (const auto& [f, t] : a.epsilons()) adj[reverse ? t : f].push_back(reverse ? f : t);
  return adj;
}

std::vector<bool> reachable_from(const Automaton& a, const std::vector<uint32_t>& seeds,
                                 bool reverse) {
  auto adj = adjacency(a, reverse);
  std::vector<bool> seen(a.num_states(), false);
  std::vector<uint32_t> work = seeds;
  for (uint32_t s : work) seen[s] = true;
  while (!work.empty()) {
    uint32_t s = work.back();
    work.pop_back();
    for (uint32_t t : adj[s])
      if (!seen[t]) {
        seen[t] = true;
        work.push_back(t);
      }
  }
  return seen;
}

}  // namespace

Automaton trim(const Automaton& a) {
  if (a.num_states() == 0) return Automaton::empty_language(a.space(), a.marked());
  std::vector<bool> fwd = reachable_from(a, {a.start()}, false);
  std::vector<uint32_t> finals;
  for (uint32_t i = 0; i < a.num_states(); ++i)
    if (a.is_final(i)) finals.push_back(i);
  std::vector<bool> bwd = reachable_from(a, finals, true);

  std::vector<uint32_t> remap(a.num_states(), UINT32_MAX);
  Automaton r = copy_shell(a);
  for (uint32_t i = 0; i < a.num_states(); ++i)
    if (fwd[i] && bwd[i]) remap[i] = r.add_state();
  if (remap[a.start()] == UINT32_MAX) {
    // Empty language: keep a lone start state.
    return Automaton::empty_language(a.space(), a.marked());
  }
  r.set_start(remap[a.start()]);
  for (uint32_t i = 0; i < a.num_states(); ++i)
    if (remap[i] != UINT32_MAX && a.is_final(i)) r.set_final(remap[i]);
  for (const auto& t : a.transitions())
    if (remap[t.from] != UINT32_MAX && remap[t.to] != UINT32_MAX)
      r.add_transition(remap[t.from], remap[t.to], t.label.set, t.label.pc);
  for (const auto& [f, t] : a.epsilons())
    if (remap[f] != UINT32_MAX && remap[t] != UINT32_MAX) r.add_epsilon(remap[f], remap[t]);
  return r;
}

Automaton remove_epsilons(const Automaton& a) {
  if (a.epsilons().empty()) return a;
  // epsilon closure per state
  std::vector<std::vector<uint32_t>> eps(a.num_states());
  for (const auto& [f, t] : a.epsilons()) eps[f].push_back(t);
  Automaton r = copy_shell(a);
  for (uint32_t i = 0; i < a.num_states(); ++i) r.add_state();
  r.set_start(a.start());
  for (uint32_t i = 0; i < a.num_states(); ++i) {
    std::vector<bool> seen(a.num_states(), false);
    std::vector<uint32_t> work{i};
    seen[i] = true;
    bool fin = false;
    std::vector<uint32_t> closure;
    while (!work.empty()) {
      uint32_t s = work.back();
      work.pop_back();
      closure.push_back(s);
      if (a.is_final(s)) fin = true;
      for (uint32_t t : eps[s])
        if (!seen[t]) {
          seen[t] = true;
          work.push_back(t);
        }
    }
    if (fin) r.set_final(i);
    for (uint32_t c : closure)
      for (const auto& t : a.transitions())
        if (t.from == c) r.add_transition(i, t.to, t.label.set, t.label.pc);
  }
  return r;
}

namespace {

// Splits a family of sets into disjoint nonempty cells; every input set is a
// union of cells.
std::vector<SymbolSet> atomize(const std::vector<SymbolSet>& sets, uint32_t width) {
  std::vector<SymbolSet> cells;
  SymbolSet covered(width);
  for (const SymbolSet& s : sets) {
    std::vector<SymbolSet> next;
    next.reserve(cells.size() + 1);
    for (const SymbolSet& c : cells) {
      SymbolSet inter = c & s;
      SymbolSet rest = c - s;
      if (!inter.empty()) next.push_back(std::move(inter));
      if (!rest.empty()) next.push_back(std::move(rest));
    }
    SymbolSet fresh = s - covered;
    if (!fresh.empty()) next.push_back(std::move(fresh));
    covered |= s;
    cells = std::move(next);
  }
  return cells;
}

Automaton determinize(const Automaton& a) {
  std::map<std::vector<uint32_t>, uint32_t> ids;
  std::vector<std::vector<uint32_t>> subsets;
  Automaton r = copy_shell(a);

  std::vector<std::vector<const Transition*>> out(a.num_states());
  for (const auto& t : a.transitions()) out[t.from].push_back(&t);

  auto intern = [&](std::vector<uint32_t> subset) {
    auto it = ids.find(subset);
    if (it != ids.end()) return it->second;
    uint32_t id = r.add_state();
    ids.emplace(subset, id);
    subsets.push_back(std::move(subset));
    return id;
  };

  uint32_t s0 = intern({a.start()});
  r.set_start(s0);
  for (uint32_t cur = 0; cur < r.num_states(); ++cur) {
    // copy: intern() grows `subsets` while we iterate
    const std::vector<uint32_t> subset = subsets[cur];
    bool fin = false;
    for (uint32_t q : subset)
      if (a.is_final(q)) fin = true;
    if (fin) r.set_final(cur);

    for (Pc pc : {Pc::consumer, Pc::producer}) {
      std::vector<const Transition*> ts;
      std::vector<SymbolSet> sets;
      for (uint32_t q : subset)
        for (const Transition* t : out[q])
          if (t->label.pc == pc) {
            ts.push_back(t);
            sets.push_back(t->label.set);
          }
      if (ts.empty()) continue;
      for (const SymbolSet& cell : atomize(sets, a.width())) {
        std::vector<uint32_t> targets;
        for (const Transition* t : ts)
          if (cell.intersects(t->label.set)) targets.push_back(t->to);
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        uint32_t tgt = intern(std::move(targets));
        r.add_transition(cur, tgt, cell, pc);
      }
    }
  }
  return r;
}

Automaton minimize(const Automaton& d) {
  uint32_t n = d.num_states();
  std::vector<std::vector<const Transition*>> out(n);
  for (const auto& t : d.transitions()) out[t.from].push_back(&t);

  std::vector<uint32_t> block(n);
  for (uint32_t i = 0; i < n; ++i) block[i] = d.is_final(i) ? 1 : 0;

  using Sig = std::vector<std::tuple<uint8_t, uint32_t, std::vector<uint64_t>>>;
  while (true) {
    std::map<std::pair<uint32_t, Sig>, uint32_t> fresh;
    std::vector<uint32_t> next(n);
    for (uint32_t i = 0; i < n; ++i) {
      std::map<std::pair<uint8_t, uint32_t>, SymbolSet> merged;
      for (const Transition* t : out[i]) {
        auto key = std::make_pair(static_cast<uint8_t>(t->label.pc), block[t->to]);
        auto [it, added] = merged.emplace(key, t->label.set);
        if (!added) it->second |= t->label.set;
      }
      Sig sig;
      sig.reserve(merged.size());
      for (auto& [k, s] : merged) sig.emplace_back(k.first, k.second, s.words());
      auto key = std::make_pair(block[i], std::move(sig));
      auto it = fresh.find(key);
      if (it == fresh.end()) it = fresh.emplace(std::move(key), static_cast<uint32_t>(fresh.size())).first;
      next[i] = it->second;
    }
    if (next == block) break;
    block = std::move(next);
  }

  // Renumber blocks in order of first occurrence for deterministic output.
  std::vector<uint32_t> order(n, UINT32_MAX);
  uint32_t nb = 0;
  for (uint32_t i = 0; i < n; ++i)
    if (order[block[i]] == UINT32_MAX) order[block[i]] = nb++;

  Automaton r = copy_shell(d);
  for (uint32_t i = 0; i < nb; ++i) r.add_state();
  r.set_start(order[block[d.start()]]);
  for (uint32_t i = 0; i < n; ++i)
    if (d.is_final(i)) r.set_final(order[block[i]]);

  std::vector<bool> done(nb, false);
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t b = order[block[i]];
    if (done[b]) continue;
    done[b] = true;
    std::map<std::pair<uint8_t, uint32_t>, SymbolSet> merged;
    for (const Transition* t : out[i]) {
      auto key = std::make_pair(static_cast<uint8_t>(t->label.pc), order[block[t->to]]);
      auto [it, added] = merged.emplace(key, t->label.set);
      if (!added) it->second |= t->label.set;
    }
    for (auto& [k, s] : merged)
      r.add_transition(b, k.second, s, static_cast<Pc>(k.first));
  }
  return r;
}

}  // namespace

Automaton normalize(const Automaton& a) {
  if (a.normalized()) return a;
  Automaton t = trim(remove_epsilons(a));
  if (is_empty_language(t)) {
    Automaton e = Automaton::empty_language(a.space(), a.marked());
    return e;
  }
  t = minimize(determinize(t));
  t = trim(t);
  t.stamp_normalized(true);
  return t;
}

namespace {

Automaton product(const Automaton& a0, const Automaton& b0, bool closed) {
  check_compatible(a0, b0);
  Automaton a = remove_epsilons(a0), b = remove_epsilons(b0);
  std::vector<std::vector<const Transition*>> outa(a.num_states()), outb(b.num_states());
  for (const auto& t : a.transitions()) outa[t.from].push_back(&t);
  for (const auto& t : b.transitions()) outb[t.from].push_back(&t);

  Automaton r = copy_shell(a);
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> ids;
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  auto intern = [&](uint32_t x, uint32_t y) {
    auto key = std::make_pair(x, y);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    uint32_t id = r.add_state();
    ids.emplace(key, id);
    pairs.push_back(key);
    return id;
  };
  r.set_start(intern(a.start(), b.start()));
  for (uint32_t cur = 0; cur < r.num_states(); ++cur) {
    auto [x, y] = pairs[cur];
    if (a.is_final(x) && b.is_final(y)) r.set_final(cur);
    for (const Transition* ta : outa[x])
      for (const Transition* tb : outb[y]) {
        if (closed &&
            !(ta->label.pc == Pc::producer && tb->label.pc == Pc::producer))
          continue;
        SymbolSet inter = ta->label.set & tb->label.set;
        if (inter.empty()) continue;
        Pc pc = closed ? Pc::producer
                       : ((ta->label.pc == Pc::producer || tb->label.pc == Pc::producer)
                              ? Pc::producer
                              : Pc::consumer);
        r.add_transition(cur, intern(ta->to, tb->to), std::move(inter), pc);
      }
  }
  return trim(r);
}

}  // namespace

Automaton intersect_open(const Automaton& a, const Automaton& b) { return product(a, b, false); }
Automaton intersect_closed(const Automaton& a, const Automaton& b) { return product(a, b, true); }

Automaton universal_star(const SymbolSpace* space, bool marked, Pc pc) {
  Automaton a(space, marked);
  uint32_t s = a.add_state();
  a.set_start(s);
  a.set_final(s);
  a.add_transition(s, s, SymbolSet::full(marked ? space->width() * 2 : space->width()), pc);
  return a;
}

Automaton closed_interpretation(const Automaton& a) {
  return intersect_closed(a, universal_star(a.space(), a.marked(), Pc::producer));
}

bool is_empty_language(const Automaton& a) {
  if (a.num_states() == 0) return true;
  std::vector<bool> fwd = reachable_from(a, {a.start()}, false);
  for (uint32_t i = 0; i < a.num_states(); ++i)
    if (fwd[i] && a.is_final(i)) return false;
  return true;
}

bool accepts(const Automaton& a0, const SymString& s) {
  Automaton a = remove_epsilons(a0);
  std::vector<std::vector<const Transition*>> out(a.num_states());
  for (const auto& t : a.transitions()) out[t.from].push_back(&t);
  std::vector<uint32_t> cur{a.start()};
  for (const Sym& sym : s) {
    std::vector<uint32_t> next;
    for (uint32_t q : cur)
      for (const Transition* t : out[q])
        if (t->label.pc == sym.pc && t->label.set.test(sym.index)) next.push_back(t->to);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.empty()) return false;
    cur = std::move(next);
  }
  for (uint32_t q : cur)
    if (a.is_final(q)) return true;
  return false;
}

std::vector<SymString> enumerate_strings(const Automaton& a0, uint32_t max_len, size_t limit) {
  Automaton a = a0.normalized() ? a0 : normalize(a0);
  std::vector<std::vector<const Transition*>> out(a.num_states());
  for (const auto& t : a.transitions()) out[t.from].push_back(&t);

  std::vector<SymString> result;
  SymString cur;
  auto rec = [&](auto&& self, uint32_t state) -> void {
    if (a.is_final(state)) {
      if (result.size() >= limit) throw error("enumerate: output limit exceeded");
      result.push_back(cur);
    }
    if (cur.size() == max_len) return;
    for (const Transition* t : out[state]) {
      std::vector<uint32_t> syms;
      t->label.set.for_each([&](uint32_t i) { syms.push_back(i); });
      for (uint32_t i : syms) {
        cur.push_back({i, t->label.pc});
        self(self, t->to);
        cur.pop_back();
      }
    }
  };
  if (a.num_states() > 0) rec(rec, a.start());
  std::sort(result.begin(), result.end(), [](const SymString& x, const SymString& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

namespace {

// Sorted view of a state's outgoing transitions for isomorphism checking.
std::vector<const Transition*> sorted_out(const std::vector<const Transition*>& ts) {
  std::vector<const Transition*> out = ts;
  std::sort(out.begin(), out.end(), [](const Transition* x, const Transition* y) {
    if (x->label.pc != y->label.pc) return x->label.pc < y->label.pc;
    return x->label.set < y->label.set;
  });
  return out;
}

}  // namespace

bool equivalent(const Automaton& a0, const Automaton& b0) {
  check_compatible(a0, b0);
  Automaton a = normalize(a0), b = normalize(b0);
  bool ea = is_empty_language(a), eb = is_empty_language(b);
  if (ea || eb) return ea == eb;
  if (a.num_states() != b.num_states()) return false;
  if (a.transitions().size() != b.transitions().size()) return false;

  std::vector<std::vector<const Transition*>> outa(a.num_states()), outb(b.num_states());
  for (const auto& t : a.transitions()) outa[t.from].push_back(&t);
  for (const auto& t : b.transitions()) outb[t.from].push_back(&t);

  std::vector<uint32_t> map_ab(a.num_states(), UINT32_MAX);
  std::queue<std::pair<uint32_t, uint32_t>> work;
  map_ab[a.start()] = b.start();
  work.push({a.start(), b.start()});
  std::vector<bool> mapped_b(b.num_states(), false);
  mapped_b[b.start()] = true;
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop();
    if (a.is_final(x) != b.is_final(y)) return false;
    auto ta = sorted_out(outa[x]);
    auto tb = sorted_out(outb[y]);
    if (ta.size() != tb.size()) return false;
    for (size_t i = 0; i < ta.size(); ++i) {
      if (ta[i]->label.pc != tb[i]->label.pc) return false;
      if (!(ta[i]->label.set == tb[i]->label.set)) return false;
      uint32_t nx = ta[i]->to, ny = tb[i]->to;
      if (map_ab[nx] == UINT32_MAX) {
        if (mapped_b[ny]) return false;
        map_ab[nx] = ny;
        mapped_b[ny] = true;
        work.push({nx, ny});
      } else if (map_ab[nx] != ny) {
        return false;
      }
    }
  }
  return true;
}

Automaton lift_marked(const Automaton& a) {
  if (a.marked()) throw error("lift_marked: already marked");
  Automaton r(a.space(), true);
  for (uint32_t i = 0; i < a.num_states(); ++i) r.add_state();
  r.set_start(a.start());
  for (uint32_t i = 0; i < a.num_states(); ++i)
    if (a.is_final(i)) r.set_final(i);
  for (const auto& t : a.transitions())
    r.add_transition(t.from, t.to, t.label.set.duplicate_halves(), t.label.pc);
  for (const auto& [f, t] : a.epsilons()) r.add_epsilon(f, t);
  return r;
}

Automaton forget_marks(const Automaton& a) {
  if (!a.marked()) throw error("forget_marks: automaton is not marked");
  Automaton r(a.space(), false);
  for (uint32_t i = 0; i < a.num_states(); ++i) r.add_state();
  r.set_start(a.start());
  for (uint32_t i = 0; i < a.num_states(); ++i)
    if (a.is_final(i)) r.set_final(i);
  for (const auto& t : a.transitions())
    r.add_transition(t.from, t.to, t.label.set.fold_halves(), t.label.pc);
  for (const auto& [f, t] : a.epsilons()) r.add_epsilon(f, t);
  return r;
}

Automaton complement_consumer(const Automaton& a0) {
  for (const auto& t : a0.transitions())
    if (t.label.pc != Pc::consumer)
      throw error("complement_consumer: producer transition in constraint");
  Automaton d = normalize(a0);
  // normalize() collapses the empty language to a lone non-final start state,
  // which the construction below completes to the universal acceptor.
  Automaton r = copy_shell(d);
  uint32_t n = d.num_states();
  for (uint32_t i = 0; i < n; ++i) r.add_state();
  uint32_t sink = r.add_state();
  r.set_start(n == 0 ? sink : d.start());
  SymbolSet full = SymbolSet::full(d.width());
  r.add_transition(sink, sink, full, Pc::consumer);
  r.set_final(sink);
  for (uint32_t i = 0; i < n; ++i) {
    if (!d.is_final(i)) r.set_final(i);
    SymbolSet rest = full;
    for (const auto& t : d.transitions())
      if (t.from == i) rest -= t.label.set;
    if (!rest.empty()) r.add_transition(i, sink, rest, Pc::consumer);
  }
  for (const auto& t : d.transitions())
    r.add_transition(t.from, t.to, t.label.set, t.label.pc);
  return normalize(r);
}

bool has_cycle(const Automaton& a) {
  auto adj = adjacency(a, false);
  std::vector<uint8_t> color(a.num_states(), 0);
  auto dfs = [&](auto&& self, uint32_t s) -> bool {
    color[s] = 1;
    for (uint32_t t : adj[s]) {
      if (color[t] == 1) return true;
      if (color[t] == 0 && self(self, t)) return true;
    }
    color[s] = 2;
    return false;
  };
  for (uint32_t i = 0; i < a.num_states(); ++i)
    if (color[i] == 0 && dfs(dfs, i)) return true;
  return false;
}

}  // namespace olp
