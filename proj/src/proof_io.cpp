#include "epsforge/proof_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "epsforge/errors.hpp"

namespace epsforge {

namespace {

struct Tok {
  enum Kind { LParen, RParen, String, Key, Atom, End } kind;
  std::string text;
  std::size_t line, column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Tok next() {
    skip();
    std::size_t l = line_, c = col_;
    if (i_ >= s_.size()) return {Tok::End, "", l, c};
    char ch = s_[i_];
    if (ch == '(') return advance(), Tok{Tok::LParen, "(", l, c};
    if (ch == ')') return advance(), Tok{Tok::RParen, ")", l, c};
    if (ch == '"') {
      advance();
      std::string out;
      while (true) {
        if (i_ >= s_.size()) throw ParseError("unterminated string", l, c);
        char d = s_[i_];
        advance();
        if (d == '"') break;
        if (d == '\\') {
          if (i_ >= s_.size()) throw ParseError("unterminated string", l, c);
          d = s_[i_];
          advance();
        }
        out += d;
      }
      return {Tok::String, out, l, c};
    }
    std::string out;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
           s_[i_] != ')' && s_[i_] != '"' && s_[i_] != ';') {
      out += s_[i_];
      advance();
    }
    if (out.size() > 1 && out[0] == ':') return {Tok::Key, out.substr(1), l, c};
    return {Tok::Atom, out, l, c};
  }

 private:
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        advance();
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
};

// Strips the "line:col: " prefix a nested ParseError carries.
std::string bare_message(const ParseError& e) {
  std::string m = e.what();
  auto first = m.find(':');
  auto second = first == std::string::npos ? first : m.find(": ", first + 1);
  return second == std::string::npos ? m : m.substr(second + 2);
}

class ProofParser {
 public:
  explicit ProofParser(std::string_view s) : lex_(s) { tok_ = lex_.next(); }

  ProofFile file() {
    ProofFile out;
    expect(Tok::LParen, "'('");
    if (tok_.kind == Tok::Atom && tok_.text == "calculus") {
      next();
      Tok name = tok_;
      if (name.kind != Tok::Atom) fail("expected calculus name", name);
      auto c = calculus_from_name(name.text);
      if (!c) fail("unknown calculus '" + name.text + "'", name);
      out.calculus = c;
      next();
      expect(Tok::RParen, "')'");
      expect(Tok::LParen, "'('");
    }
    out.proof = node_after_paren();
    if (tok_.kind != Tok::End) fail("trailing input after proof", tok_);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Tok& t) { throw ParseError(msg, t.line, t.column); }

  void next() { tok_ = lex_.next(); }

  void expect(Tok::Kind k, const char* what) {
    if (tok_.kind != k) fail(std::string("expected ") + what, tok_);
    next();
  }

  Tok value() {
    Tok t = tok_;
    if (t.kind != Tok::String && t.kind != Tok::Atom) fail("expected a value", t);
    next();
    return t;
  }

  // Re-anchors errors from the formula parser at the enclosing token.
  template <typename F>
  auto embedded(const Tok& t, F&& parse) {
    try {
      return parse(t.text);
    } catch (const ParseError& e) {
      std::size_t line = t.line + e.line() - 1;
      std::size_t col = e.line() == 1 ? t.column + e.column() : e.column();
      throw ParseError(bare_message(e), line, col);
    } catch (const ArityError& e) {
      throw ParseError(e.what(), t.line, t.column);
    }
  }

  ProofNode node_after_paren() {
    ProofNode n;
    Tok head = tok_;
    if (head.kind != Tok::Atom) fail("expected rule name", head);
    auto r = rule_from_name(head.text);
    if (!r) fail("unknown rule '" + head.text + "'", head);
    n.rule = *r;
    next();
    Tok seq = tok_;
    if (seq.kind != Tok::String) fail("expected quoted sequent", seq);
    next();
    n.conclusion = embedded(seq, [&](const std::string& s) { return parse_sequent(s, sig_); });

    while (tok_.kind == Tok::Key) {
      Tok key = tok_;
      next();
      Tok v = value();
      auto term = [&] { return embedded(v, [](const std::string& s) { return parse_term(s); }); };
      if (key.text == "ev" || key.text == "eigenvariable") {
        n.data.eigenvariable = v.text;
      } else if (key.text == "witness") {
        n.data.witness = term();
      } else if (key.text == "var") {
        n.data.var = v.text;
      } else if (key.text == "term") {
        n.data.term = term();
      } else if (key.text == "principal") {
        try {
          std::size_t used = 0;
          n.data.principal = std::stoul(v.text, &used);
          if (used != v.text.size()) throw std::invalid_argument(v.text);
        } catch (const std::exception&) {
          fail("expected a number", v);
        }
      } else if (key.text == "origin") {
        n.data.origin = embedded(v, [&](const std::string& s) { return parse_formula(s, sig_); });
      } else {
        fail("unknown key ':" + key.text + "'", key);
      }
    }
    while (tok_.kind == Tok::LParen) {
      next();
      n.premises.push_back(node_after_paren());
    }
    expect(Tok::RParen, "')'");
    return n;
  }

  Lexer lex_;
  Tok tok_;
  Signature sig_;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string term_token(const Term& t) {
  std::string s = to_string(t);
  bool bare = !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
  return bare ? s : quote(s);
}

void print_node(const ProofNode& p, std::size_t indent, std::ostringstream& out) {
  out << std::string(indent, ' ') << '(' << rule_name(p.rule) << ' ' << quote(to_string(p.conclusion));
  const auto& d = p.data;
  if (d.eigenvariable) out << " :ev " << *d.eigenvariable;
  if (d.witness) out << " :witness " << term_token(*d.witness);
  if (d.var) out << " :var " << *d.var;
  if (d.term) out << " :term " << term_token(*d.term);
  if (d.principal) out << " :principal " << *d.principal;
  if (d.origin) out << " :origin " << quote(to_string(*d.origin));
  for (const auto& q : p.premises) {
    out << '\n';
    print_node(q, indent + 2, out);
  }
  out << ')';
}

}  // namespace

ProofFile parse_proof_file(std::string_view text) { return ProofParser(text).file(); }

ProofNode parse_proof(std::string_view text) { return parse_proof_file(text).proof; }

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

ProofFile load_proof_file(const std::string& path) { return parse_proof_file(read_file(path)); }

Formula parse_formula_file(std::string_view text) {
  std::string stripped;
  bool comment = false;
  for (char c : text) {
    if (c == ';') comment = true;
    if (c == '\n') comment = false;
    stripped += comment ? ' ' : c;
  }
  return parse_formula(stripped);
}

Formula load_formula_file(const std::string& path) { return parse_formula_file(read_file(path)); }

std::string print_proof(const ProofNode& p, std::optional<Calculus> calculus) {
  std::ostringstream out;
  if (calculus) out << "(calculus " << calculus_name(*calculus) << ")\n";
  print_node(p, 0, out);
  out << '\n';
  return out.str();
}

nlohmann::json to_json(const Metrics& m) {
  return {{"length", m.length}, {"sequent_count", m.sequent_count}, {"symbol_size", m.symbol_size}};
}

nlohmann::json to_json(const SideVarGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return {{"nodes", g.nodes}, {"edges", edges}, {"acyclic", check_acyclic(g)}};
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : r.violations) v.push_back({{"path", x.path}, {"condition", x.condition}, {"message", x.message}});
  return {{"valid", r.valid},
          {"calculus", std::string(calculus_name(r.calculus))},
          {"violations", v},
          {"metrics", to_json(r.metrics)},
          {"side_variable_graph", to_json(r.side_var_graph)}};
}

}  // namespace epsforge
