#include "olp/temiar.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "olp/optimize.hpp"

namespace olp {

const char* to_string(Voice v) { return v == Voice::active ? "active" : "causative"; }

const char* to_string(Aspect a) {
  switch (a) {
    case Aspect::perfective: return "perfective";
    case Aspect::simulfactive: return "simulfactive";
    case Aspect::continuative: return "continuative";
  }
  return "?";
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dirname_of(const std::string& path) {
  size_t slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

// Rewrites the causative's default onset /t/ into the disjunction (t;b),
// the Southern-footnote variant, within default(...) first arguments.
NodePtr enable_voiced_default(const NodePtr& node) {
  if (!node) return node;
  std::vector<NodePtr> items;
  items.reserve(node->items.size());
  bool changed = false;
  for (const NodePtr& item : node->items) {
    NodePtr next = enable_voiced_default(item);
    changed |= (next != item);
    items.push_back(next);
  }
  if (node->kind == Node::Kind::Call && node->text == "default" && !items.empty()) {
    // replace atom t by (t;b) inside the Optional argument
    std::function<NodePtr(const NodePtr&)> patch = [&](const NodePtr& n) -> NodePtr {
      if (n->kind == Node::Kind::Atom && n->text == "t")
        return Node::make(Node::Kind::Or,
                          {Node::make(Node::Kind::Atom, {}, "t"),
                           Node::make(Node::Kind::Atom, {}, "b")});
      if (n->items.empty()) return n;
      std::vector<NodePtr> kids;
      bool any = false;
      for (const NodePtr& k : n->items) {
        NodePtr nk = patch(k);
        any |= (nk != k);
        kids.push_back(nk);
      }
      if (!any) return n;
      return Node::make(n->kind, std::move(kids), n->text);
    };
    NodePtr opt = patch(items[0]);
    if (opt != items[0]) {
      items[0] = opt;
      changed = true;
    }
  }
  if (!changed) return node;
  return Node::make(node->kind, std::move(items), node->text);
}

}  // namespace

Grammar Grammar::load_file(const std::string& path, const GrammarOptions& opts) {
  return load_text(read_file(path), dirname_of(path), opts);
}

Grammar Grammar::load_text(const std::string& text, const std::string& base_dir,
                           const GrammarOptions& opts) {
  GrammarFile file = parse_grammar(text);

  std::string inventory_text;
  if (!opts.inventory_path.empty()) {
    inventory_text = read_file(opts.inventory_path);
  } else {
    for (const auto& [name, arg] : file.directives)
      if (name == "inventory") inventory_text = read_file(base_dir + "/" + arg);
    if (inventory_text.empty()) inventory_text = SymbolSpace::default_inventory_text();
  }

  Grammar g;
  g.space_ = std::make_unique<SymbolSpace>(SymbolSpace::from_inventory_text(inventory_text));
  g.env_ = std::make_unique<MacroEnv>();
  for (const Definition& def : file.definitions) {
    NodePtr body = def.body;
    if (opts.voiced_causative && def.name == "causative")
      body = enable_voiced_default(body);
    g.env_->define(def.name, def.params, body);
  }
  g.compiler_ = std::make_unique<Compiler>(*g.space_, *g.env_);

  for (const auto& [name, arg] : file.directives)
    if (name == "lexicon") g.add_lexicon_text(read_file(base_dir + "/" + arg));
  for (const std::string& path : opts.lexicon_paths)
    g.add_lexicon_text(read_file(path));
  return g;
}

void Grammar::add_lexicon_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::vector<std::string> cols;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() < 2)
      throw error("lexicon line " + std::to_string(lineno) +
                  ": expected 'name<TAB>root<TAB>flags[<TAB>gloss]'");
    LexiconEntry e;
    e.name = cols[0];
    e.root = cols[1];
    if (cols.size() >= 3 && !cols[2].empty()) {
      std::istringstream flags(cols[2]);
      std::string f;
      while (std::getline(flags, f, ',')) {
        if (f == "has_prefinal_syllable") e.has_prefinal_syllable = true;
        else if (f == "alternating_labial") e.alternating = "labial";
        else if (f == "alternating_coronal") e.alternating = "coronal";
        else if (f == "alternating_velar") e.alternating = "velar";
        else if (!f.empty())
          throw error("lexicon line " + std::to_string(lineno) + ": unknown flag '" + f + "'");
      }
    }
    if (cols.size() >= 4) e.gloss = cols[3];

    // stem material: the root string, with an alternating final consonant
    // replaced by the corresponding alternating_* pattern
    NodePtr material;
    if (!e.alternating.empty()) {
      static const std::map<std::string, char> finals = {
          {"labial", 'p'}, {"coronal", 't'}, {"velar", 'k'}};
      char want = finals.at(e.alternating);
      if (e.root.empty() || e.root.back() != want)
        throw error("lexicon entry '" + e.name + "': alternating_" + e.alternating +
                    " requires a root ending in '" + std::string(1, want) + "'");
      std::string prefix = e.root.substr(0, e.root.size() - 1);
      NodePtr sts = Node::make(Node::Kind::Call,
                               {Node::make(Node::Kind::Str, {}, prefix)}, "stringToSegments");
      NodePtr alt = Node::make(Node::Kind::Atom, {}, "alternating_" + e.alternating);
      material = Node::make(Node::Kind::Concat, {sts, alt});
    } else {
      material = Node::make(Node::Kind::Call,
                            {Node::make(Node::Kind::Str, {}, e.root)}, "stringToSegments");
    }
    NodePtr stem = Node::make(Node::Kind::Call, {material}, "stem0");
    if (e.has_prefinal_syllable)
      stem = Node::make(Node::Kind::And,
                        {stem, Node::make(Node::Kind::Atom, {}, "has_prefinal_syllable")});
    e.expr = stem;
    env_->define(e.name, {}, e.expr);
    lexicon_.push_back(std::move(e));
  }
}

Automaton Grammar::eval(const std::string& expression, bool optimize) {
  return eval_node(parse_expression(expression), optimize);
}

Automaton Grammar::eval_node(const NodePtr& node, bool optimize) {
  Automaton a = compiler_->compile(node);
  if (optimize) a = bounded_local_optimization(a);
  return normalize(a);
}

Automaton Grammar::wordform(const NodePtr& stem_and_aspects, bool optimize) {
  NodePtr call = Node::make(Node::Kind::Call, {stem_and_aspects}, "wordform");
  return eval_node(call, optimize);
}

const LexiconEntry* Grammar::entry(const std::string& root) const {
  for (const auto& e : lexicon_)
    if (e.name == root) return &e;
  return nullptr;
}

std::vector<ParadigmCell> Grammar::paradigm(const std::string& root, bool optimize) {
  if (!entry(root)) throw error("unknown lexicon root '" + root + "'");
  NodePtr base = Node::make(Node::Kind::Atom, {}, root);
  auto conj = [](NodePtr a, const char* name) {
    return Node::make(Node::Kind::And, {a, Node::make(Node::Kind::Atom, {}, name)});
  };
  std::vector<ParadigmCell> cells;
  for (Voice v : {Voice::active, Voice::causative}) {
    for (Aspect asp : {Aspect::perfective, Aspect::simulfactive, Aspect::continuative}) {
      NodePtr x = base;
      if (v == Voice::causative) x = conj(x, "causative");
      if (asp == Aspect::simulfactive) x = conj(x, "simulfactive");
      if (asp == Aspect::continuative) x = conj(x, "continuative");
      Automaton a = wordform(x, optimize);
      cells.push_back({root, v, asp, surfaces(a)});
    }
  }
  return cells;
}

std::vector<std::vector<std::string>> Grammar::yields(const Automaton& a0, uint32_t max_len,
                                                      bool keep_technicals) const {
  if (a0.marked()) throw error("yields: marked automaton");
  Automaton a = a0.normalized() ? a0 : normalize(a0);
  std::vector<std::vector<const Transition*>> out(a.num_states());
  for (const auto& t : a.transitions()) out[t.from].push_back(&t);

  const SymbolSpace& sp = *a.space();
  std::set<std::vector<std::string>> found;
  std::vector<std::string> cur;
  auto rec = [&](auto&& self, uint32_t state, uint32_t used) -> void {
    if (a.is_final(state)) found.insert(cur);
    if (used == max_len) return;
    for (const Transition* t : out[state]) {
      // one token per distinct phoneme / technical symbol in the label
      std::set<std::string> tokens;
      t->label.set.for_each([&](uint32_t i) {
        if (sp.is_technical(i)) {
          if (keep_technicals) tokens.insert(i == SymbolSpace::kSkip ? "skip" : "repeat");
        } else {
          tokens.insert(sp.phoneme_name(sp.decode(i).phoneme));
        }
      });
      if (tokens.empty()) {
        // purely technical label dropped from the rendering; still consumes
        // a position against max_len
        self(self, t->to, used + 1);
        continue;
      }
      for (const std::string& tok : tokens) {
        cur.push_back(tok);
        self(self, t->to, used + 1);
        cur.pop_back();
      }
    }
  };
  if (a.num_states() > 0) rec(rec, a.start(), 0);
  return {found.begin(), found.end()};
}

std::vector<std::string> Grammar::surfaces(const Automaton& a, uint32_t max_len) const {
  std::set<std::string> out;
  if (a.marked()) throw error("surfaces: marked automaton");
  Automaton n = a.normalized() ? a : normalize(a);
  std::vector<std::vector<const Transition*>> adj(n.num_states());
  for (const auto& t : n.transitions()) adj[t.from].push_back(&t);
  const SymbolSpace& sp = *n.space();

  std::string cur;
  auto rec = [&](auto&& self, uint32_t state, uint32_t used) -> void {
    if (n.is_final(state)) out.insert(cur);
    if (used == max_len) return;
    for (const Transition* t : adj[state]) {
      if (t->label.set.subset_of(sp.technical_mask())) {
        self(self, t->to, used + 1);
        continue;
      }
      std::set<std::string> phs;
      t->label.set.for_each([&](uint32_t i) {
        if (!sp.is_technical(i)) phs.insert(sp.phoneme_name(sp.decode(i).phoneme));
      });
      size_t len = cur.size();
      for (const std::string& ph : phs) {
        cur += ph;
        self(self, t->to, used + 1);
        cur.resize(len);
      }
    }
  };
  if (n.num_states() > 0) rec(rec, n.start(), 0);
  return {out.begin(), out.end()};
}

std::vector<std::string> Grammar::annotated(const Automaton& a, uint32_t max_len) const {
  std::vector<std::string> out;
  for (const SymString& s : enumerate_strings(a, max_len)) {
    std::string line;
    for (const Sym& sym : s) {
      if (!line.empty()) line += ' ';
      if (sym.pc == Pc::producer) line += '*';
      line += space_->symbol_name(sym.index);
    }
    out.push_back(line.empty() ? "(empty string)" : line);
  }
  return out;
}

std::string Grammar::surface_of(const SymString& s, const SymbolSpace& space) {
  std::string out;
  for (const Sym& sym : s)
    if (!space.is_technical(sym.index))
      out += space.phoneme_name(space.decode(sym.index).phoneme);
  return out;
}

}  // namespace olp
