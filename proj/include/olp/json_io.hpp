#pragma once

#include <string>

#include "olp/fsa.hpp"

namespace olp {

// JSON round-trip format: states, transitions with the label bitset as a hex
// string, pc flag, start, finals.
std::string automaton_to_json(const Automaton& a);
Automaton automaton_from_json(const std::string& text, const SymbolSpace& space);

}  // namespace olp
