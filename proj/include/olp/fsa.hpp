#pragma once

#include <cstdint>
#include <vector>

#include "olp/alphabet.hpp"

namespace olp {

enum class Pc : uint8_t { consumer = 0, producer = 1 };

struct Label {
  SymbolSet set;
  Pc pc = Pc::consumer;
};

struct Transition {
  uint32_t from, to;
  Label label;
};

struct Sym {
  uint32_t index;
  Pc pc;
  bool operator==(const Sym& o) const { return index == o.index && pc == o.pc; }
  bool operator<(const Sym& o) const {
    if (index != o.index) return index < o.index;
    return static_cast<uint8_t>(pc) < static_cast<uint8_t>(o.pc);
  }
};

using SymString = std::vector<Sym>;

// Finite-state acceptor over set-valued labels with a producer/consumer bit.
// A `marked` automaton runs over the doubled universe (symbol x up/down);
// all public grammar-facing automata are unmarked.
class Automaton {
 public:
  Automaton(const SymbolSpace* space, bool marked = false)
      : space_(space), marked_(marked) {}

  const SymbolSpace* space() const { return space_; }
  bool marked() const { return marked_; }
  uint32_t width() const { return marked_ ? space_->width() * 2 : space_->width(); }

  uint32_t add_state() {
    final_.push_back(false);
    return num_states_++;
  }
  uint32_t num_states() const { return num_states_; }

  uint32_t start() const { return start_; }
  void set_start(uint32_t s) { start_ = s; }

  bool is_final(uint32_t s) const { return final_[s]; }
  void set_final(uint32_t s, bool f = true) { final_[s] = f; }

  void add_transition(uint32_t from, uint32_t to, SymbolSet set, Pc pc) {
    if (set.empty()) return;  // empty labels denote no transition
    transitions_.push_back({from, to, {std::move(set), pc}});
    normalized_ = false;
  }
  void add_epsilon(uint32_t from, uint32_t to) {
    epsilons_.emplace_back(from, to);
    normalized_ = false;
  }

  const std::vector<Transition>& transitions() const { return transitions_; }
  const std::vector<std::pair<uint32_t, uint32_t>>& epsilons() const { return epsilons_; }

  bool normalized() const { return normalized_; }
  void stamp_normalized(bool v) { normalized_ = v; }

  static Automaton empty_language(const SymbolSpace* space, bool marked = false);
  static Automaton epsilon_language(const SymbolSpace* space, bool marked = false);
  static Automaton single(const SymbolSpace* space, bool marked, Label label);
  static Automaton chain(const SymbolSpace* space, bool marked, const std::vector<Label>& labels);

 private:
  const SymbolSpace* space_;
  bool marked_;
  uint32_t num_states_ = 0;
  uint32_t start_ = 0;
  std::vector<bool> final_;
  std::vector<Transition> transitions_;
  std::vector<std::pair<uint32_t, uint32_t>> epsilons_;
  bool normalized_ = false;
};

Automaton concat(const Automaton& a, const Automaton& b);
Automaton union_of(const Automaton& a, const Automaton& b);
Automaton union_of(const std::vector<Automaton>& as, const SymbolSpace* space, bool marked);
Automaton star(const Automaton& a);
Automaton plus(const Automaton& a);
Automaton option(const Automaton& a);

Automaton trim(const Automaton& a);
Automaton remove_epsilons(const Automaton& a);
// eps-removal + trim + determinization over a disjoint label partition
// (pc is part of label identity) + minimization with merged parallel labels.
Automaton normalize(const Automaton& a);

Automaton intersect_open(const Automaton& a, const Automaton& b);
Automaton intersect_closed(const Automaton& a, const Automaton& b);
Automaton closed_interpretation(const Automaton& a);
Automaton universal_star(const SymbolSpace* space, bool marked, Pc pc);

bool is_empty_language(const Automaton& a);
bool accepts(const Automaton& a, const SymString& s);

// All accepted concrete (symbol, pc) strings of length <= max_len, ordered by
// length then lexicographically by symbol index.
std::vector<SymString> enumerate_strings(const Automaton& a, uint32_t max_len,
                                         size_t limit = size_t{1} << 21);

bool equivalent(const Automaton& a, const Automaton& b);

Automaton lift_marked(const Automaton& a);
Automaton forget_marks(const Automaton& a);

// Language complement restricted to all-consumer labels; used by rule
// compilation. Input must be eps-free; output is all-consumer.
Automaton complement_consumer(const Automaton& a);

bool has_cycle(const Automaton& a);

}  // namespace olp
