#include "olp/alphabet.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace olp {

uint32_t SymbolSet::count() const {
  uint32_t n = 0;
  for (auto w : words_) n += static_cast<uint32_t>(std::popcount(w));
  return n;
}

int SymbolSet::first() const {
  for (size_t wi = 0; wi < words_.size(); ++wi)
    if (words_[wi]) return static_cast<int>(wi * 64 + std::countr_zero(words_[wi]));
  return -1;
}

std::string SymbolSet::to_hex() const {
  static const char* digits = "0123456789abcdef";
  uint32_t nibbles = (width_ + 3) / 4;
  std::string out(nibbles, '0');
  for (uint32_t n = 0; n < nibbles; ++n) {
    uint32_t lo = n * 4;
    uint32_t v = 0;
    for (uint32_t b = 0; b < 4 && lo + b < width_; ++b)
      if (test(lo + b)) v |= 1u << b;
    out[nibbles - 1 - n] = digits[v];
  }
  return out;
}

SymbolSet SymbolSet::from_hex(const std::string& hex, uint32_t width) {
  SymbolSet s(width);
  uint32_t nibbles = (width + 3) / 4;
  if (hex.size() != nibbles) throw error("bitset hex string has wrong length");
  for (uint32_t n = 0; n < nibbles; ++n) {
    char c = hex[nibbles - 1 - n];
    uint32_t v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = 10 + c - 'a';
    else if (c >= 'A' && c <= 'F') v = 10 + c - 'A';
    else throw error("bad hex digit in bitset");
    for (uint32_t b = 0; b < 4; ++b)
      if ((v >> b) & 1) {
        uint32_t i = n * 4 + b;
        if (i >= width) throw error("bitset hex sets bits beyond width");
        s.set(i);
      }
  }
  return s;
}

SymbolSet SymbolSet::duplicate_halves() const {
  SymbolSet out(width_ * 2);
  for_each([&](uint32_t i) {
    out.set(i);
    out.set(width_ + i);
  });
  return out;
}

SymbolSet SymbolSet::fold_halves() const {
  uint32_t half = width_ / 2;
  SymbolSet out(half);
  for_each([&](uint32_t i) { out.set(i < half ? i : i - half); });
  return out;
}

namespace {

const std::set<std::string>& reserved_names() {
  static const std::set<std::string> names = {
      "skip", "repeat", "segment", "anything", "up", "down",
      "ons", "cod", "Ons", "Nuc", "Cod", "CO",
      "initial", "medial", "final", "stressed", "unstressed", ":1", ":0"};
  return names;
}

}  // namespace

SymbolSpace SymbolSpace::build(std::vector<PhonemeSpec> inventory) {
  if (inventory.empty()) throw error("phoneme inventory is empty");
  SymbolSpace sp;
  for (uint32_t i = 0; i < inventory.size(); ++i) {
    const PhonemeSpec& p = inventory[i];
    if (p.name.empty()) throw error("phoneme with empty name");
    if (reserved_names().count(p.name))
      throw error("phoneme name '" + p.name + "' is reserved");
    if (!sp.phoneme_index_.emplace(p.name, i).second)
      throw error("duplicate phoneme name '" + p.name + "'");
    if (p.sonority < 0) throw error("phoneme '" + p.name + "' is missing a sonority rank");
    bool has_v = p.features.count("vowel") > 0;
    bool has_c = p.features.count("consonant") > 0;
    if (has_v == has_c)
      throw error("phoneme '" + p.name + "' must carry exactly one of vowel/consonant");
    if (p.is_vowel != has_v)
      throw error("phoneme '" + p.name + "' has inconsistent is_vowel flag");
  }
  sp.inventory_ = std::move(inventory);
  uint32_t P = static_cast<uint32_t>(sp.inventory_.size());
  sp.width_ = 2 + P * 48;

  sp.all_ = SymbolSet::full(sp.width_);
  sp.segment_ = SymbolSet(sp.width_);
  sp.technical_ = SymbolSet(sp.width_);
  sp.technical_.set(kSkip);
  sp.technical_.set(kRepeat);
  for (uint32_t i = 2; i < sp.width_; ++i) sp.segment_.set(i);

  auto blank = [&] { return SymbolSet(sp.width_); };
  SymbolSet sync1 = blank(), sync0 = blank(), stressed = blank(), unstressed = blank();
  SymbolSet ons = blank(), cod = blank();
  SymbolSet pos[3] = {blank(), blank(), blank()};
  std::vector<SymbolSet> ph_masks(P, blank());
  std::map<std::string, SymbolSet> feat_masks;

  for (uint32_t sym = 2; sym < sp.width_; ++sym) {
    Segment s = sp.decode(sym);
    (s.sync1 ? sync1 : sync0).set(sym);
    (s.stressed ? stressed : unstressed).set(sym);
    if (s.ons) ons.set(sym);
    if (s.cod) cod.set(sym);
    pos[s.position].set(sym);
    ph_masks[s.phoneme].set(sym);
    for (const auto& f : sp.inventory_[s.phoneme].features) {
      auto [it, fresh] = feat_masks.emplace(f, blank());
      it->second.set(sym);
    }
  }

  SymbolSet skip = blank(), repeat = blank();
  skip.set(kSkip);
  repeat.set(kRepeat);

  sp.atoms_[":1"] = sync1;
  sp.atoms_[":0"] = sync0;
  sp.atoms_["stressed"] = stressed;
  sp.atoms_["unstressed"] = unstressed;
  sp.atoms_["ons"] = ons;
  sp.atoms_["cod"] = cod;
  sp.atoms_["Ons"] = ons - cod;
  sp.atoms_["Nuc"] = (sp.segment_ - ons) - cod;
  sp.atoms_["Cod"] = cod - ons;
  sp.atoms_["CO"] = ons & cod;
  sp.atoms_["initial"] = pos[0];
  sp.atoms_["medial"] = pos[1];
  sp.atoms_["final"] = pos[2];
  sp.atoms_["segment"] = sp.segment_;
  sp.atoms_["anything"] = sp.all_;
  sp.atoms_["skip"] = skip;
  sp.atoms_["repeat"] = repeat;
  for (uint32_t i = 0; i < P; ++i) sp.atoms_[sp.inventory_[i].name] = ph_masks[i];
  for (auto& [name, mask] : feat_masks) {
    if (sp.phoneme_index_.count(name))
      throw error("feature name '" + name + "' clashes with a phoneme name");
    if (reserved_names().count(name))
      throw error("feature name '" + name + "' is reserved");
    sp.atoms_[name] = mask;
  }

  std::set<int> distinct;
  for (const auto& p : sp.inventory_) distinct.insert(p.sonority);
  sp.sonority_values_.assign(distinct.begin(), distinct.end());
  sp.rank_masks_.assign(sp.sonority_values_.size(), blank());
  sp.phoneme_rank_.assign(P, 0);
  for (uint32_t i = 0; i < P; ++i) {
    int rank = static_cast<int>(
        std::lower_bound(sp.sonority_values_.begin(), sp.sonority_values_.end(),
                         sp.inventory_[i].sonority) -
        sp.sonority_values_.begin());
    sp.phoneme_rank_[i] = rank;
    sp.rank_masks_[rank] |= ph_masks[i];
  }
  return sp;
}

uint32_t SymbolSpace::encode(const Segment& s) const {
  uint32_t role = (s.ons ? 2u : 0u) | (s.cod ? 1u : 0u);
  return 2 + ((((s.phoneme * 2 + (s.sync1 ? 1 : 0)) * 2 + (s.stressed ? 1 : 0)) * 4 + role) * 3 +
              s.position);
}

SymbolSpace::Segment SymbolSpace::decode(uint32_t sym) const {
  if (!is_segment(sym)) throw error("decode: not a segment symbol");
  uint32_t v = sym - 2;
  Segment s;
  s.position = static_cast<uint8_t>(v % 3);
  v /= 3;
  uint32_t role = v % 4;
  v /= 4;
  s.ons = (role & 2) != 0;
  s.cod = (role & 1) != 0;
  s.stressed = (v % 2) != 0;
  v /= 2;
  s.sync1 = (v % 2) != 0;
  v /= 2;
  s.phoneme = v;
  return s;
}

bool SymbolSpace::is_atom(const std::string& name) const {
  return atoms_.count(name) > 0 || name == "up" || name == "down";
}

const SymbolSet& SymbolSpace::atom_mask(const std::string& name) const {
  auto it = atoms_.find(name);
  if (it == atoms_.end()) throw error("unknown atom '" + name + "'");
  return it->second;
}

int SymbolSpace::sonority_of(uint32_t sym) const {
  if (!is_segment(sym)) throw error("sonority_of: technical symbol");
  return inventory_[decode(sym).phoneme].sonority;
}

Mark SymbolSpace::up_down_mark(uint32_t sym, uint32_t next) const {
  if (!is_segment(sym) || !is_segment(next))
    throw error("up_down_mark: technical symbol argument");
  return sonority_of(sym) < sonority_of(next) ? Mark::up : Mark::down;
}

std::string SymbolSpace::symbol_name(uint32_t sym) const {
  if (sym == kSkip) return "skip";
  if (sym == kRepeat) return "repeat";
  Segment s = decode(sym);
  static const char* role_names[4] = {"Nuc", "Cod", "Ons", "CO"};
  static const char* pos_names[3] = {"ini", "med", "fin"};
  uint32_t role = (s.ons ? 2u : 0u) | (s.cod ? 1u : 0u);
  std::string out = inventory_[s.phoneme].name;
  out += s.sync1 ? ":1" : ":0";
  out += s.stressed ? ".str." : ".uns.";
  out += role_names[role];
  out += ".";
  out += pos_names[s.position];
  return out;
}

int SymbolSpace::phoneme_index(const std::string& name) const {
  auto it = phoneme_index_.find(name);
  return it == phoneme_index_.end() ? -1 : static_cast<int>(it->second);
}

SymbolSpace SymbolSpace::from_inventory_text(const std::string& text) {
  std::vector<PhonemeSpec> inv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    size_t pos = trimmed.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;
    if (trimmed[pos] == '#') continue;
    std::vector<std::string> cols;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() < 3)
      throw error("inventory line " + std::to_string(lineno) +
                  ": expected 'name<TAB>sonority<TAB>features'");
    PhonemeSpec p;
    p.name = cols[0];
    try {
      p.sonority = std::stoi(cols[1]);
    } catch (...) {
      throw error("inventory line " + std::to_string(lineno) + ": bad sonority value");
    }
    std::string f;
    std::istringstream feats(cols[2]);
    while (std::getline(feats, f, ','))
      if (!f.empty()) p.features.insert(f);
    p.is_vowel = p.features.count("vowel") > 0;
    inv.push_back(std::move(p));
  }
  return build(std::move(inv));
}

const char* SymbolSpace::default_inventory_text() {
  return
      "# Temiar phoneme inventory: name<TAB>sonority<TAB>features\n"
      "p\t0\tconsonant,voiceless_stop,labial\n"
      "t\t0\tconsonant,voiceless_stop,coronal\n"
      "k\t0\tconsonant,voiceless_stop,velar\n"
      "g\t0\tconsonant,voiced_stop,velar\n"
      "s\t1\tconsonant,fricative,coronal\n"
      "m\t2\tconsonant,nasal,labial\n"
      "n\t2\tconsonant,nasal,coronal\n"
      "N\t2\tconsonant,nasal,velar\n"
      "l\t3\tconsonant,liquid,coronal\n"
      "r\t3\tconsonant,liquid,coronal\n"
      "w\t4\tconsonant,glide,labial\n"
      "y\t4\tconsonant,glide,palatal\n"
      "a\t5\tvowel,open\n"
      "e\t5\tvowel,close_mid\n"
      "i\t5\tvowel,close\n"
      "o\t5\tvowel,close_mid\n"
      "u\t5\tvowel,close\n"
      "@\t5\tvowel,close_mid,central\n"
      "E\t5\tvowel,open_mid\n"
      "O\t5\tvowel,open_mid\n";
}

SymbolSpace SymbolSpace::default_temiar() {
  return from_inventory_text(default_inventory_text());
}

FormulaPtr Formula::make_atom(std::string name) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Atom;
  f->atom = std::move(name);
  return f;
}

FormulaPtr Formula::f_and(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::And;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaPtr Formula::f_or(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Or;
  f->lhs = std::move(a);
  f->rhs = std::move(b);
  return f;
}

FormulaPtr Formula::f_not(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Not;
  f->lhs = std::move(a);
  return f;
}

std::string Formula::to_string() const {
  switch (kind) {
    case Kind::Atom: return atom;
    case Kind::And: return "(" + lhs->to_string() + "&" + rhs->to_string() + ")";
    case Kind::Or: return "(" + lhs->to_string() + ";" + rhs->to_string() + ")";
    case Kind::Not: return "~" + lhs->to_string();
  }
  return "?";
}

namespace {

bool mentions_technical(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return f.atom == "skip" || f.atom == "repeat" || f.atom == "anything";
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return mentions_technical(*f.lhs) || mentions_technical(*f.rhs);
    case Formula::Kind::Not:
      return mentions_technical(*f.lhs);
  }
  return false;
}

}  // namespace

MarkedSet denote(const Formula& f, const SymbolSpace& space) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      if (f.atom == "up") return {space.segment_mask(), SymbolSet(space.width())};
      if (f.atom == "down") return {SymbolSet(space.width()), space.segment_mask()};
      const SymbolSet& s = space.atom_mask(f.atom);
      return {s, s};
    }
    case Formula::Kind::And: {
      MarkedSet a = denote(*f.lhs, space), b = denote(*f.rhs, space);
      return {a.if_up & b.if_up, a.if_down & b.if_down};
    }
    case Formula::Kind::Or: {
      MarkedSet a = denote(*f.lhs, space), b = denote(*f.rhs, space);
      return {a.if_up | b.if_up, a.if_down | b.if_down};
    }
    case Formula::Kind::Not: {
      MarkedSet a = denote(*f.lhs, space);
      // Complement stays within the segment subspace unless the negated
      // formula itself mentions technical atoms.
      SymbolSet universe = space.segment_mask();
      if (mentions_technical(*f.lhs)) universe |= space.technical_mask();
      return {universe - a.if_up, universe - a.if_down};
    }
  }
  throw error("bad formula");
}

SymbolSet denote_plain(const Formula& f, const SymbolSpace& space) {
  MarkedSet m = denote(f, space);
  if (!m.uniform())
    throw error("formula '" + f.to_string() +
                "' depends on sonority marks and has no plain denotation");
  return m.if_up;
}

}  // namespace olp
