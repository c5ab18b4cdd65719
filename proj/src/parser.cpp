// Text syntax for terms, formulas and sequents.
//
//   term    := ident | ident "(" term {"," term} ")" | "eps" ident "." formula
//              | "(" term ")"
//   formula := ident "(" term {"," term} ")" | term "=" term | "~" formula
//            | formula "&" formula | formula "|" formula | formula "->" formula
//            | "all" ident "." formula | "ex" ident "." formula | "(" formula ")"
//   sequent := [formula {"," formula}] "|-" [formula {"," formula}]
//
// Precedence ~ > & > | > ->; -> is right-associative, & and | associate to
// the left; binders extend as far right as possible.

#include <cctype>

#include "epsforge/syntax.hpp"

namespace epsforge {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Tilde, Amp, Bar, Arrow, Eq, Turnstile, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    if (two == "->") {
      out.push_back({Tok::Arrow, "->", l, cl});
      advance(2);
      continue;
    }
    if (two == "|-") {
      out.push_back({Tok::Turnstile, "|-", l, cl});
      advance(2);
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '~': k = Tok::Tilde; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      case '=': k = Tok::Eq; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({k, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_keyword(const std::string& s) { return s == "all" || s == "ex" || s == "eps"; }

class Parser {
 public:
  Parser(std::string_view src, Signature* sig) : toks_(tokenize(src)), sig_(sig) {}

  Term whole_term() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

  Formula whole_formula() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Sequent whole_sequent() {
    Sequent s;
    if (peek().kind != Tok::Turnstile) s.ante = formula_list();
    expect(Tok::Turnstile, "'|-'");
    if (peek().kind != Tok::End) s.succ = formula_list();
    expect(Tok::End, "end of input");
    return s;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    throw ParseError(msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"), t.line,
                     t.column);
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  std::string ident() {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected identifier");
    return toks_[pos_++].text;
  }

  void arity(bool pred, const std::string& name, std::size_t n) {
    if (!sig_) return;
    const auto& t = toks_[pos_ > 0 ? pos_ - 1 : 0];
    try {
      if (pred)
        sig_->add_pred(name, n);
      else
        sig_->add_fn(name, n);
    } catch (const ArityError& e) {
      throw ParseError(e.what(), t.line, t.column);
    }
  }

  std::vector<Formula> formula_list() {
    std::vector<Formula> out{formula()};
    while (accept(Tok::Comma)) out.push_back(formula());
    return out;
  }

  std::vector<Term> term_args() {
    expect(Tok::LParen, "'('");
    std::vector<Term> args{term()};
    while (accept(Tok::Comma)) args.push_back(term());
    expect(Tok::RParen, "')'");
    return args;
  }

  Term term() {
    const auto& t = peek();
    if (t.kind == Tok::LParen) {
      ++pos_;
      Term inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident && t.text == "eps") {
      ++pos_;
      std::string x = ident();
      expect(Tok::Dot, "'.'");
      return Term::eps(x, formula());
    }
    std::string name = ident();
    if (peek().kind == Tok::LParen) {
      auto args = term_args();
      arity(false, name, args.size());
      return Term::app(name, std::move(args));
    }
    if (is_reserved_constant(name)) {
      arity(false, name, 0);
      return Term::app(name, {});
    }
    return Term::var(name);
  }

  Formula formula() { return implication(); }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::imp(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Bar)) f = Formula::disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    const auto& t = peek();
    if (t.kind == Tok::Tilde) {
      ++pos_;
      return Formula::neg(unary());
    }
    if (t.kind == Tok::Ident && (t.text == "all" || t.text == "ex")) {
      bool universal = t.text == "all";
      ++pos_;
      std::string x = ident();
      expect(Tok::Dot, "'.'");
      Formula body = formula();
      return universal ? Formula::all(x, body) : Formula::ex(x, body);
    }
    return primary();
  }

  // Atoms, equations and parenthesized formulas. A leading term followed by
  // '=' is an equation; otherwise the input is re-read as a formula.
  Formula primary() {
    std::size_t start = pos_;
    const auto& t = peek();
    if (t.kind == Tok::LParen || t.kind == Tok::Ident) {
      std::optional<Term> lhs;
      Signature* saved = sig_;
      sig_ = nullptr;
      try {
        lhs = term();
      } catch (const ParseError&) {
        lhs.reset();
      }
      sig_ = saved;
      if (lhs && accept(Tok::Eq)) {
        if (sig_) {
          try {
            sig_->collect(*lhs);
          } catch (const ArityError& e) {
            throw ParseError(e.what(), t.line, t.column);
          }
        }
        Term rhs = term();
        arity(true, "=", 2);
        return Formula::eq(*lhs, rhs);
      }
      pos_ = start;
    }
    if (accept(Tok::LParen)) {
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Ident && t.text == "eps") fail("epsilon term used as a formula");
    std::string name = ident();
    if (peek().kind != Tok::LParen) fail("expected '(' or '=' after '" + name + "'");
    auto args = term_args();
    arity(true, name, args.size());
    return Formula::atom(name, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature* sig_;
};

// ---------------------------------------------------------------------------
// Printing

int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Imp: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Neg: return 4;
    case Formula::Kind::All:
    case Formula::Kind::Ex: return 4;
    case Formula::Kind::Atom: return 5;
  }
  return 5;
}

// True when the printed form ends in an open binder scope, which would
// swallow anything printed after it.
bool open_right(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::All:
    case Formula::Kind::Ex: return true;
    case Formula::Kind::Neg: return open_right(f.operand());
    default: return false;
  }
}

void print(const Formula& f, std::string& out, int min_prec, bool rightmost);

void print(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::App:
      out += t.name();
      if (!t.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out += ", ";
          print(t.args()[i], out);
        }
        out += ')';
      }
      return;
    case Term::Kind::Eps:
      out += "eps " + t.name() + ". ";
      if (t.body().is_binary()) {
        out += '(';
        print(t.body(), out, 0, true);
        out += ')';
      } else {
        print(t.body(), out, 0, true);
      }
      return;
  }
}

void print_eq_side(const Term& t, std::string& out) {
  if (t.is_eps()) {
    out += '(';
    print(t, out);
    out += ')';
  } else {
    print(t, out);
  }
}

void print(const Formula& f, std::string& out, int min_prec, bool rightmost) {
  int prec = precedence(f);
  bool parens = prec < min_prec || (!rightmost && open_right(f));
  if (parens) {
    out += '(';
    rightmost = true;
  }
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (f.pred() == "=" && f.args().size() == 2) {
        print_eq_side(f.args()[0], out);
        out += " = ";
        print_eq_side(f.args()[1], out);
      } else {
        out += f.pred();
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ", ";
          print(f.args()[i], out);
        }
        out += ')';
      }
      break;
    case Formula::Kind::Neg:
      out += '~';
      print(f.operand(), out, 4, rightmost);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      print(f.lhs(), out, prec, false);
      out += f.kind() == Formula::Kind::And ? " & " : " | ";
      print(f.rhs(), out, prec + 1, rightmost);
      break;
    }
    case Formula::Kind::Imp:
      print(f.lhs(), out, 2, false);
      out += " -> ";
      print(f.rhs(), out, 1, rightmost);
      break;
    case Formula::Kind::All:
    case Formula::Kind::Ex:
      out += f.kind() == Formula::Kind::All ? "all " : "ex ";
      out += f.bound() + ". ";
      if (f.body().is_binary()) {
        out += '(';
        print(f.body(), out, 0, true);
        out += ')';
      } else {
        print(f.body(), out, 0, rightmost);
      }
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out, 0, true);
  return out;
}

std::string to_string(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.ante.size(); ++i) {
    if (i) out += ", ";
    out += to_string(s.ante[i]);
  }
  out += s.ante.empty() ? "|-" : " |-";
  for (std::size_t i = 0; i < s.succ.size(); ++i) {
    out += i ? ", " : " ";
    out += to_string(s.succ[i]);
  }
  return out;
}

Term parse_term(std::string_view text) {
  Signature sig;
  return Parser(text, &sig).whole_term();
}
Formula parse_formula(std::string_view text) {
  Signature sig;
  return Parser(text, &sig).whole_formula();
}
Sequent parse_sequent(std::string_view text) {
  Signature sig;
  return Parser(text, &sig).whole_sequent();
}

Formula parse_formula(std::string_view text, Signature& sig) { return Parser(text, &sig).whole_formula(); }
Sequent parse_sequent(std::string_view text, Signature& sig) { return Parser(text, &sig).whole_sequent(); }

}  // namespace epsforge
