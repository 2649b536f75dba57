#include "olp/prosody.hpp"

namespace olp {

namespace {

// Flat marked set with the given plain segment set placed in one half.
SymbolSet half_set(const SymbolSet& plain, Mark m, uint32_t w) {
  SymbolSet out(2 * w);
  plain.for_each([&](uint32_t i) { out.set(m == Mark::up ? i : w + i); });
  return out;
}

}  // namespace

Automaton sonority_differences(const SymbolSpace& space) {
  const uint32_t w = space.width();
  const size_t nranks = space.sonority_values().size();
  Automaton a(&space, true);

  // state 0: nothing read yet; state 1 + 2*rank + mark: previous segment has
  // this rank and claimed this mark, still to be checked against the next
  // segment (or against the end of the string, where only `down` is valid).
  uint32_t start = a.add_state();
  a.set_start(start);
  a.set_final(start);
  std::vector<std::vector<uint32_t>> st(nranks, std::vector<uint32_t>(2));
  for (size_t r = 0; r < nranks; ++r)
    for (int m = 0; m < 2; ++m) {
      uint32_t s = a.add_state();
      st[r][m] = s;
      if (m == static_cast<int>(Mark::down)) a.set_final(s);
    }

  for (size_t r2 = 0; r2 < nranks; ++r2) {
    SymbolSet up_label = half_set(space.rank_mask(r2), Mark::up, w);
    SymbolSet down_label = half_set(space.rank_mask(r2), Mark::down, w);
    a.add_transition(start, st[r2][static_cast<int>(Mark::up)], up_label, Pc::consumer);
    a.add_transition(start, st[r2][static_cast<int>(Mark::down)], down_label, Pc::consumer);
    for (size_t r1 = 0; r1 < nranks; ++r1) {
      Mark actual = space.sonority_values()[r1] < space.sonority_values()[r2]
                        ? Mark::up
                        : Mark::down;
      uint32_t from = st[r1][static_cast<int>(actual)];
      a.add_transition(from, st[r2][static_cast<int>(Mark::up)], up_label, Pc::consumer);
      a.add_transition(from, st[r2][static_cast<int>(Mark::down)], down_label, Pc::consumer);
    }
  }
  return normalize(a);
}

}  // namespace olp
