#pragma once

#include "olp/fsa.hpp"

namespace olp {

// Prosodic-morphology enrichment. add_repeats/add_skips/add_self_loops demand
// a normalized (minimal, eps-free) input so only live transitions get
// enriched and technical movement stays in lockstep with segment positions.

Automaton add_repeats(const Automaton& a);
Automaton add_skips(const Automaton& a);
Automaton add_self_loops(const Automaton& a);

// Consumer segment self loops only at states with an outgoing non-technical
// transition whose label is contained in `cond`.
Automaton add_self_loop_before(const SymbolSet& cond, const Automaton& a);

// Consumer self loop labeled `tolerated` at every state.
Automaton ignore(const Automaton& a, const SymbolSet& tolerated);

}  // namespace olp
