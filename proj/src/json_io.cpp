#include "olp/json_io.hpp"

#include <json.hpp>

namespace olp {

std::string automaton_to_json(const Automaton& a) {
  if (a.marked()) throw error("automaton_to_json: marked automaton");
  nlohmann::json j;
  j["alphabet_width"] = a.width();
  j["states"] = a.num_states();
  j["start"] = a.start();
  nlohmann::json finals = nlohmann::json::array();
  for (uint32_t i = 0; i < a.num_states(); ++i)
    if (a.is_final(i)) finals.push_back(i);
  j["finals"] = std::move(finals);
  nlohmann::json trans = nlohmann::json::array();
  for (const auto& t : a.transitions()) {
    nlohmann::json tj;
    tj["from"] = t.from;
    tj["to"] = t.to;
    tj["pc"] = t.label.pc == Pc::producer ? "P" : "C";
    tj["set"] = t.label.set.to_hex();
    trans.push_back(std::move(tj));
  }
  j["transitions"] = std::move(trans);
  return j.dump(2);
}

Automaton automaton_from_json(const std::string& text, const SymbolSpace& space) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("alphabet_width").get<uint32_t>() != space.width())
    throw error("automaton_from_json: alphabet width mismatch");
  Automaton a(&space, false);
  uint32_t n = j.at("states").get<uint32_t>();
  for (uint32_t i = 0; i < n; ++i) a.add_state();
  a.set_start(j.at("start").get<uint32_t>());
  for (const auto& f : j.at("finals")) a.set_final(f.get<uint32_t>());
  for (const auto& tj : j.at("transitions")) {
    Pc pc = tj.at("pc").get<std::string>() == "P" ? Pc::producer : Pc::consumer;
    SymbolSet set = SymbolSet::from_hex(tj.at("set").get<std::string>(), space.width());
    a.add_transition(tj.at("from").get<uint32_t>(), tj.at("to").get<uint32_t>(),
                     std::move(set), pc);
  }
  return a;
}

}  // namespace olp
