#include "olp/dot.hpp"

#include <ostream>
#include <set>
#include <vector>

namespace olp {

namespace {

std::string join(const std::set<std::string>& parts, const char* sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

}  // namespace

std::string describe_set(const SymbolSet& set, const SymbolSpace& sp) {
  if (set.empty()) return "{}";
  if (set == sp.all_mask()) return "anything";

  std::set<std::string> tech;
  if (set.test(SymbolSpace::kSkip)) tech.insert("skip");
  if (set.test(SymbolSpace::kRepeat)) tech.insert("repeat");

  SymbolSet seg = set & sp.segment_mask();
  std::string seg_text;
  if (!seg.empty()) {
    if (seg == sp.segment_mask()) {
      seg_text = "segment";
    } else {
      // factorize into per-dimension projections and verify the product
      std::set<std::string> phs;
      std::set<bool> syncs, stresses, onss, cods;
      std::set<uint8_t> poss;
      seg.for_each([&](uint32_t i) {
        auto s = sp.decode(i);
        phs.insert(sp.phoneme_name(s.phoneme));
        syncs.insert(s.sync1);
        stresses.insert(s.stressed);
        onss.insert(s.ons);
        cods.insert(s.cod);
        poss.insert(s.position);
      });
      SymbolSet product(sp.width());
      for (const std::string& ph : phs) {
        int pi = sp.phoneme_index(ph);
        for (bool sync : syncs)
          for (bool str : stresses)
            for (bool on : onss)
              for (bool co : cods)
                for (uint8_t pos : poss)
                  product.set(sp.encode({static_cast<uint32_t>(pi), sync, str, on, co, pos}));
      }
      if (product == seg) {
        std::vector<std::string> conj;
        bool all_ph = phs.size() == sp.phoneme_count();
        if (!all_ph) {
          std::string p = join(phs, ";");
          conj.push_back(phs.size() > 1 ? "(" + p + ")" : p);
        }
        if (syncs.size() == 1) conj.push_back(*syncs.begin() ? ":1" : ":0");
        if (stresses.size() == 1) conj.push_back(*stresses.begin() ? "stressed" : "unstressed");
        if (onss.size() == 1 && cods.size() == 1) {
          bool on = *onss.begin(), co = *cods.begin();
          conj.push_back(on ? (co ? "CO" : "Ons") : (co ? "Cod" : "Nuc"));
        } else if (onss.size() == 1) {
          conj.push_back(*onss.begin() ? "ons" : "~ons");
        } else if (cods.size() == 1) {
          conj.push_back(*cods.begin() ? "cod" : "~cod");
        }
        if (poss.size() == 1) {
          static const char* names[3] = {"initial", "medial", "final"};
          conj.push_back(names[*poss.begin()]);
        } else if (poss.size() == 2) {
          static const char* names[3] = {"initial", "medial", "final"};
          std::set<std::string> two;
          for (uint8_t p : poss) two.insert(names[p]);
          conj.push_back("(" + join(two, ";") + ")");
        }
        if (conj.empty()) {
          seg_text = "segment";
        } else {
          for (const auto& c : conj) {
            if (!seg_text.empty()) seg_text += "&";
            seg_text += c;
          }
        }
      } else if (seg.count() <= 4) {
        std::set<std::string> names;
        seg.for_each([&](uint32_t i) { names.insert(sp.symbol_name(i)); });
        seg_text = join(names, ";");
      } else {
        seg_text = "#" + std::to_string(seg.count()) + "syms";
      }
    }
  }

  std::string out = join(tech, ";");
  if (!seg_text.empty()) {
    if (!out.empty()) out += ";";
    out += seg_text;
  }
  return out;
}

void write_dot(std::ostream& out, const Automaton& a) {
  if (a.marked()) throw error("write_dot: marked automaton");
  const SymbolSpace& sp = *a.space();
  out << "digraph fsa {\n  rankdir = LR;\n  node [shape = circle];\n";
  out << "  init [shape = point];\n";
  for (uint32_t i = 0; i < a.num_states(); ++i)
    if (a.is_final(i)) out << "  " << i << " [shape = doublecircle];\n";
  out << "  init -> " << a.start() << ";\n";
  for (const auto& t : a.transitions()) {
    std::string label = describe_set(t.label.set, sp);
    bool producer = t.label.pc == Pc::producer;
    out << "  " << t.from << " -> " << t.to << " [label = \"" << label
        << (producer ? " / P" : " / C") << "\"";
    if (producer) out << ", style = bold, fontname = \"bold\"";
    out << "];\n";
  }
  out << "}\n";
}

}  // namespace olp
