#include "olp/ast.hpp"

#include <cctype>
#include <set>

namespace olp {

NodePtr Node::make(Kind k, std::vector<NodePtr> items, std::string text) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->items = std::move(items);
  n->text = std::move(text);
  return n;
}

namespace {

struct Token {
  enum class Type {
    Ident, Quoted, Str,
    LBrack, RBrack, LBrace, RBrace, LParen, RParen,
    Comma, Star, Plus, Hat, Amp, Semi, Tilde, Dot, Slash,
    Assign, ArrowR, ArrowL, End,
  };
  Type type;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (pos_ >= src_.size()) {
        out.push_back({Token::Type::End, "", line_, col_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Token tok(Token::Type t, std::string text, int line, int col) {
    return {t, std::move(text), line, col};
  }

  Token next() {
    int line = line_, col = col_;
    char c = src_[pos_];
    auto one = [&](Token::Type t) {
      advance();
      return tok(t, std::string(1, c), line, col);
    };
    switch (c) {
      case '[': return one(Token::Type::LBrack);
      case ']': return one(Token::Type::RBrack);
      case '{': return one(Token::Type::LBrace);
      case '}': return one(Token::Type::RBrace);
      case '(': return one(Token::Type::LParen);
      case ')': return one(Token::Type::RParen);
      case ',': return one(Token::Type::Comma);
      case '*': return one(Token::Type::Star);
      case '+': return one(Token::Type::Plus);
      case '^': return one(Token::Type::Hat);
      case '&': return one(Token::Type::Amp);
      case ';': return one(Token::Type::Semi);
      case '~': return one(Token::Type::Tilde);
      case '.': return one(Token::Type::Dot);
      case '/': return one(Token::Type::Slash);
      default: break;
    }
    if (c == ':') {
      if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
        advance();
        advance();
        return tok(Token::Type::Assign, ":=", line, col);
      }
      throw ParseError("stray ':' (synchronization atoms must be quoted, e.g. ':1')", line, col);
    }
    if (c == '-') {
      if (pos_ + 3 < src_.size() && src_[pos_ + 2] == '-' && src_[pos_ + 3] == '>' &&
          (src_[pos_ + 1] == 'r' || src_[pos_ + 1] == 'l')) {
        char dir = src_[pos_ + 1];
        for (int i = 0; i < 4; ++i) advance();
        return tok(dir == 'r' ? Token::Type::ArrowR : Token::Type::ArrowL,
                   dir == 'r' ? "-r->" : "-l->", line, col);
      }
      throw ParseError("unexpected '-'", line, col);
    }
    if (c == '\'') {
      advance();
      std::string text;
      while (pos_ < src_.size() && src_[pos_] != '\'') {
        text += src_[pos_];
        advance();
      }
      if (pos_ >= src_.size()) throw ParseError("unterminated quoted atom", line, col);
      advance();
      if (text.empty()) throw ParseError("empty quoted atom", line, col);
      return tok(Token::Type::Quoted, text, line, col);
    }
    if (c == '"') {
      advance();
      std::string text;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        text += src_[pos_];
        advance();
      }
      if (pos_ >= src_.size()) throw ParseError("unterminated string literal", line, col);
      advance();
      return tok(Token::Type::Str, text, line, col);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@') {
      std::string text;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '@') {
          text += d;
          advance();
        } else {
          break;
        }
      }
      return tok(Token::Type::Ident, text, line, col);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  NodePtr expression() {
    NodePtr e = rule_or_or();
    return e;
  }

  GrammarFile grammar() {
    GrammarFile g;
    while (peek().type != Token::Type::End) {
      Token head = expect(Token::Type::Ident, "definition head");
      std::vector<std::string> params;
      bool had_parens = false;
      std::string directive_arg;
      bool is_directive = false;
      if (peek().type == Token::Type::LParen) {
        had_parens = true;
        get();
        if ((head.text == "lexicon" || head.text == "inventory") &&
            peek().type == Token::Type::Str) {
          directive_arg = get().text;
          expect(Token::Type::RParen, "')'");
          is_directive = true;
        } else {
          if (peek().type != Token::Type::RParen) {
            while (true) {
              Token p = expect(Token::Type::Ident, "macro parameter");
              params.push_back(p.text);
              if (peek().type == Token::Type::Comma) {
                get();
                continue;
              }
              break;
            }
          }
          expect(Token::Type::RParen, "')'");
        }
      }
      if (is_directive) {
        expect(Token::Type::Dot, "'.' after directive");
        g.directives.emplace_back(head.text, directive_arg);
        continue;
      }
      (void)had_parens;
      expect(Token::Type::Assign, "':=' in definition");
      NodePtr body = expression();
      expect(Token::Type::Dot, "'.' terminating definition");
      Definition def;
      def.name = head.text;
      def.params = std::move(params);
      def.body = body;
      def.line = head.line;
      g.definitions.push_back(std::move(def));
    }
    return g;
  }

  void expect_end() {
    if (peek().type != Token::Type::End)
      throw ParseError("trailing input after expression", peek().line, peek().col);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token get() { return toks_[pos_++]; }
  Token expect(Token::Type t, const std::string& what) {
    if (peek().type != t)
      throw ParseError("expected " + what, peek().line, peek().col);
    return get();
  }

  NodePtr rule_or_or() {
    NodePtr a = or_expr();
    if (peek().type == Token::Type::ArrowR || peek().type == Token::Type::ArrowL) {
      bool right = get().type == Token::Type::ArrowR;
      // allow the paper's optional parenthesization: A -r-> (B / C)
      bool parens = false;
      if (peek().type == Token::Type::LParen) {
        parens = true;
        get();
      }
      NodePtr b = or_expr();
      expect(Token::Type::Slash, "'/' in rule");
      NodePtr c = or_expr();
      if (parens) expect(Token::Type::RParen, "')'");
      return Node::make(right ? Node::Kind::RuleR : Node::Kind::RuleL, {a, b, c});
    }
    return a;
  }

  NodePtr or_expr() {
    NodePtr a = and_expr();
    while (peek().type == Token::Type::Semi) {
      get();
      NodePtr b = and_expr();
      a = Node::make(Node::Kind::Or, {a, b});
    }
    return a;
  }

  NodePtr and_expr() {
    NodePtr a = postfix();
    while (peek().type == Token::Type::Amp) {
      get();
      NodePtr b = postfix();
      a = Node::make(Node::Kind::And, {a, b});
    }
    return a;
  }

  NodePtr postfix() {
    NodePtr a = unary();
    while (true) {
      switch (peek().type) {
        case Token::Type::Star:
          get();
          a = Node::make(Node::Kind::Star, {a});
          break;
        case Token::Type::Plus:
          get();
          a = Node::make(Node::Kind::Plus, {a});
          break;
        case Token::Type::Hat:
          get();
          a = Node::make(Node::Kind::Option, {a});
          break;
        default:
          return a;
      }
    }
  }

  NodePtr unary() {
    if (peek().type == Token::Type::Tilde) {
      Token t = get();
      NodePtr a = unary();
      auto n = Node::make(Node::Kind::Not, {a});
      return n;
    }
    return primary();
  }

  std::vector<NodePtr> element_list(Token::Type closer) {
    std::vector<NodePtr> items;
    if (peek().type != closer) {
      while (true) {
        items.push_back(expression());
        if (peek().type == Token::Type::Comma) {
          get();
          continue;
        }
        break;
      }
    }
    expect(closer, closer == Token::Type::RBrack ? "']'" : "'}'");
    return items;
  }

  NodePtr primary() {
    Token t = peek();
    switch (t.type) {
      case Token::Type::LBrack: {
        get();
        auto items = element_list(Token::Type::RBrack);
        return Node::make(Node::Kind::Concat, std::move(items));
      }
      case Token::Type::LBrace: {
        get();
        auto items = element_list(Token::Type::RBrace);
        return Node::make(Node::Kind::Union, std::move(items));
      }
      case Token::Type::LParen: {
        get();
        NodePtr e = expression();
        expect(Token::Type::RParen, "')'");
        return e;
      }
      case Token::Type::Str: {
        get();
        auto n = Node::make(Node::Kind::Str, {}, t.text);
        return n;
      }
      case Token::Type::Quoted: {
        get();
        auto n = Node::make(Node::Kind::Atom, {}, t.text);
        return n;
      }
      case Token::Type::Ident: {
        get();
        if (peek().type == Token::Type::LParen) {
          get();
          std::vector<NodePtr> args;
          if (peek().type != Token::Type::RParen) {
            while (true) {
              args.push_back(expression());
              if (peek().type == Token::Type::Comma) {
                get();
                continue;
              }
              break;
            }
          }
          expect(Token::Type::RParen, "')'");
          return Node::make(Node::Kind::Call, std::move(args), t.text);
        }
        // Prolog convention: capitalized identifiers are macro parameters;
        // capitalized atoms ('Ons', 'E', 'N', ...) must be quoted.
        bool var = std::isupper(static_cast<unsigned char>(t.text[0])) != 0;
        return Node::make(var ? Node::Kind::Var : Node::Kind::Atom, {}, t.text);
      }
      default:
        throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

NodePtr parse_expression(const std::string& text) {
  Parser p(Lexer(text).run());
  NodePtr e = p.expression();
  p.expect_end();
  return e;
}

GrammarFile parse_grammar(const std::string& text) {
  Parser p(Lexer(text).run());
  return p.grammar();
}

void MacroEnv::define(const std::string& name, std::vector<std::string> params, NodePtr body) {
  if (is_builtin(name))
    throw error("cannot define macro '" + name + "': name is a builtin operator");
  auto key = std::make_pair(name, params.size());
  if (defs_.count(key))
    throw error("macro '" + name + "/" + std::to_string(params.size()) + "' redefined");
  defs_.emplace(std::move(key), Macro{std::move(params), std::move(body)});
}

const MacroEnv::Macro* MacroEnv::find(const std::string& name, size_t arity) const {
  auto it = defs_.find({name, arity});
  return it == defs_.end() ? nullptr : &it->second;
}

bool MacroEnv::has_name(const std::string& name) const {
  for (const auto& [key, m] : defs_)
    if (key.first == name) return true;
  return false;
}

bool MacroEnv::is_builtin(const std::string& name) {
  static const std::set<std::string> builtins = {
      "producer", "consumer", "stringToSegments",
      "add_repeats", "add_skips", "add_self_loops", "add_self_loop_before",
      "ignore", "closed_interpretation", "sonority_differences",
  };
  return builtins.count(name) > 0;
}

}  // namespace olp
