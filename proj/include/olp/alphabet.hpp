#pragma once

#include <cstdint>
#include <memory>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace olp {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-width bit vector over an enumerated symbol universe.
class SymbolSet {
 public:
  SymbolSet() = default;
  explicit SymbolSet(uint32_t width) : width_(width), words_((width + 63) / 64, 0) {}

  static SymbolSet full(uint32_t width) {
    SymbolSet s(width);
    for (auto& w : s.words_) w = ~uint64_t{0};
    s.clear_padding();
    return s;
  }

  uint32_t width() const { return width_; }

  bool test(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(uint32_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  void reset(uint32_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

  bool empty() const {
    for (auto w : words_) if (w) return false;
    return true;
  }

  uint32_t count() const;

  bool intersects(const SymbolSet& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool subset_of(const SymbolSet& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  SymbolSet& operator&=(const SymbolSet& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  SymbolSet& operator|=(const SymbolSet& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  SymbolSet& operator-=(const SymbolSet& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend SymbolSet operator&(SymbolSet a, const SymbolSet& b) { return a &= b; }
  friend SymbolSet operator|(SymbolSet a, const SymbolSet& b) { return a |= b; }
  friend SymbolSet operator-(SymbolSet a, const SymbolSet& b) { return a -= b; }

  bool operator==(const SymbolSet& o) const {
    return width_ == o.width_ && words_ == o.words_;
  }
  bool operator!=(const SymbolSet& o) const { return !(*this == o); }
  bool operator<(const SymbolSet& o) const {
    if (width_ != o.width_) return width_ < o.width_;
    return words_ < o.words_;
  }

  int first() const;

  template <class F>
  void for_each(F f) const {
    for (size_t wi = 0; wi < words_.size(); ++wi) {
      uint64_t w = words_[wi];
      while (w) {
        uint32_t b = static_cast<uint32_t>(__builtin_ctzll(w));
        f(static_cast<uint32_t>(wi * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::string to_hex() const;
  static SymbolSet from_hex(const std::string& hex, uint32_t width);

  const std::vector<uint64_t>& words() const { return words_; }

  // Reinterprets this W-wide set as a 2W-wide set whose two halves both
  // equal the original (mark-indifferent embedding).
  SymbolSet duplicate_halves() const;
  // Inverse direction: ORs the two halves of a 2W-wide set into one W-wide set.
  SymbolSet fold_halves() const;

 private:
  void clear_padding() {
    uint32_t rem = width_ & 63;
    if (rem && !words_.empty()) words_.back() &= (uint64_t{1} << rem) - 1;
  }

  uint32_t width_ = 0;
  std::vector<uint64_t> words_;
};

struct PhonemeSpec {
  std::string name;
  int sonority = -1;
  bool is_vowel = false;
  std::set<std::string> features;
};

enum class Mark : uint8_t { up, down };

// Enumerated typed symbol space: two technical marks plus one symbol per
// (phoneme, sync, stress, ons, cod, position) combination.
class SymbolSpace {
 public:
  static constexpr uint32_t kSkip = 0;
  static constexpr uint32_t kRepeat = 1;

  static SymbolSpace build(std::vector<PhonemeSpec> inventory);
  static SymbolSpace from_inventory_text(const std::string& text);
  static SymbolSpace default_temiar();
  static const char* default_inventory_text();

  uint32_t width() const { return width_; }
  uint32_t phoneme_count() const { return static_cast<uint32_t>(inventory_.size()); }
  const std::vector<PhonemeSpec>& inventory() const { return inventory_; }

  bool is_technical(uint32_t sym) const { return sym < 2; }
  bool is_segment(uint32_t sym) const { return sym >= 2 && sym < width_; }

  struct Segment {
    uint32_t phoneme;   // index into inventory
    bool sync1;         // ':1' vs ':0'
    bool stressed;
    bool ons;
    bool cod;
    uint8_t position;   // 0 initial, 1 medial, 2 final
  };

  uint32_t encode(const Segment& s) const;
  Segment decode(uint32_t sym) const;

  const SymbolSet& all_mask() const { return all_; }
  const SymbolSet& segment_mask() const { return segment_; }
  const SymbolSet& technical_mask() const { return technical_; }

  bool is_atom(const std::string& name) const;
  // Denotation of a registered atom over the plain universe. `up`/`down`
  // are not plain atoms and throw here; they live in formula denotation.
  const SymbolSet& atom_mask(const std::string& name) const;

  // Sonority rank machinery for the up/down relation.
  const std::vector<int>& sonority_values() const { return sonority_values_; }
  const SymbolSet& rank_mask(size_t rank) const { return rank_masks_[rank]; }
  int sonority_of(uint32_t sym) const;

  Mark up_down_mark(uint32_t sym, uint32_t next) const;

  std::string symbol_name(uint32_t sym) const;
  const std::string& phoneme_name(uint32_t phoneme_index) const {
    return inventory_[phoneme_index].name;
  }
  int phoneme_index(const std::string& name) const;  // -1 when absent

 private:
  std::vector<PhonemeSpec> inventory_;
  uint32_t width_ = 0;
  SymbolSet all_, segment_, technical_;
  std::map<std::string, SymbolSet> atoms_;
  std::map<std::string, uint32_t> phoneme_index_;
  std::vector<int> sonority_values_;         // distinct, ascending
  std::vector<SymbolSet> rank_masks_;        // segment symbols per rank
  std::vector<int> phoneme_rank_;            // phoneme -> rank
};

// Type formulas: atoms combined with & ; ~.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Atom, And, Or, Not };
  Kind kind;
  std::string atom;
  FormulaPtr lhs, rhs;

  static FormulaPtr make_atom(std::string name);
  static FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
  static FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
  static FormulaPtr f_not(FormulaPtr a);

  std::string to_string() const;
};

// A formula denotes a set per sonority mark: `up`/`down` atoms select one
// half, everything else is mark-indifferent.
struct MarkedSet {
  SymbolSet if_up, if_down;
  bool uniform() const { return if_up == if_down; }
};

MarkedSet denote(const Formula& f, const SymbolSpace& space);
SymbolSet denote_plain(const Formula& f, const SymbolSpace& space);

}  // namespace olp
