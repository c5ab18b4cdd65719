#include <doctest.h>

#include "epsforge/syntax.hpp"
#include "oracles.hpp"

using namespace epsforge;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Term T(const char* s) { return parse_term(s); }

}  // namespace

TEST_SUITE("syntax") {

TEST_CASE("free variables") {
  CHECK(free_vars(F("A(a, b) | B(a)")) == NameSet{"a", "b"});
  CHECK(free_vars(T("eps x. ~A(x)")).empty());
  CHECK(free_vars(T("eps y. (A(y) -> A(eps x. ~A(x)))")).empty());
  CHECK(free_vars(F("all x. R(x, y) & ex y. P(y)")) == NameSet{"y"});
  CHECK(free_vars(F("P(c)")) == NameSet{"c"});
  CHECK(free_vars(F("P(sk1)")).empty());
}

TEST_CASE("substitution replaces free occurrences only") {
  CHECK(substitute(F("A(a)"), "a", T("eps x. ~A(x)")) == F("A(eps x. ~A(x))"));
  auto f = F("all x. P(x) & Q(c)");
  CHECK(substitute(f, "x", T("d")) == f);
  CHECK(substitute(F("P(x) & all x. P(x)"), "x", T("c")) == F("P(c) & all x. P(x)"));
}

TEST_CASE("substitution avoids capture") {
  auto out = substitute(F("all y. A(x, y)"), "x", T("g(y)"));
  REQUIRE(out.kind() == Formula::Kind::All);
  CHECK(out.bound() != "y");
  CHECK(free_vars(out) == NameSet{"y"});
  CHECK(oracle::alpha_equal(out, oracle::subst_by_renaming(F("all y. A(x, y)"), "x", T("g(y)"))));
  CHECK(oracle::alpha_equal(out, F("all w. A(g(y), w)")));

  auto e = substitute(T("eps y. R(x, y)"), "x", T("y"));
  CHECK(oracle::alpha_equal(e, T("eps z. R(y, z)")));
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(T("eps x. ~A(x)"), T("eps z. ~A(z)")));
  CHECK_FALSE(alpha_eq(T("eps x. ~A(x)"), T("eps x. ~B(x)")));
  auto a = F("ex y. (A(y) -> all x. A(x))");
  auto b = F("ex v. (A(v) -> all w. A(w))");
  CHECK(alpha_eq(a, b));
  CHECK(oracle::alpha_equal(a, b));
  CHECK_FALSE(alpha_eq(F("all x. R(x, y)"), F("all y. R(y, y)")));
  CHECK_FALSE(alpha_eq(F("P(x)"), F("P(y)")));
  CHECK(alpha_eq(F("all x. all x. P(x)"), F("all y. all z. P(z)")));
  CHECK_FALSE(alpha_eq(F("all x. all x. P(x)"), F("all y. all z. P(y)")));
}

TEST_CASE("matrix") {
  CHECK(to_string(matrix(F("ex x. ((all y. A(x, y)) | B(x))"))) == "A(v1, v2) | B(v1)");
  CHECK(matrix(F("P(c)")) == F("P(c)"));
  auto shadow = F("all x. ex x. A(x)");
  CHECK(matrix(shadow) == F("A(v2)"));
  CHECK(matrix(shadow) == oracle::strip_quantifiers(shadow));
  CHECK(to_string(matrix(F("all x. P(x, v1)"))) == "P(v2, v1)");
  CHECK_THROWS_AS(matrix(F("P(eps x. P(x))")), MatrixUndefined);

  auto m = matrix_with_vars(F("ex x. ((all y. A(x, y)) | B(x))"));
  CHECK(m.vars == std::vector<std::string>{"v1", "v2"});
}

TEST_CASE("parsing builds the expected trees") {
  auto d = F("ex y. (A(y) -> all x. A(x))");
  REQUIRE(d.kind() == Formula::Kind::Ex);
  CHECK(d.bound() == "y");
  REQUIRE(d.body().kind() == Formula::Kind::Imp);
  CHECK(d.body().lhs() == Formula::atom("A", {Term::var("y")}));
  CHECK(d.body().rhs() == Formula::all("x", Formula::atom("A", {Term::var("x")})));

  auto e = T("eps x. ~A(x)");
  REQUIRE(e.is_eps());
  CHECK(e.name() == "x");
  CHECK(e.body() == Formula::neg(Formula::atom("A", {Term::var("x")})));

  CHECK(F("P(c) -> Q(c) -> P(c)") == F("P(c) -> (Q(c) -> P(c))"));
  CHECK(F("~P(c) & Q(c) | P(c)") == F("((~P(c)) & Q(c)) | P(c)"));
  CHECK(F("all x. P(x) -> Q(x)") == F("all x. (P(x) -> Q(x))"));
  CHECK(F("~x = x") == Formula::neg(Formula::eq(Term::var("x"), Term::var("x"))));
  CHECK(T("c").kind() == Term::Kind::Var);
  CHECK(T("sk1").kind() == Term::Kind::App);
  CHECK(T("a").kind() == Term::Kind::Var);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_formula("P(c) &\n  & Q(c)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_formula("P(c"), ParseError);
  CHECK_THROWS_AS(parse_formula(""), ParseError);
  CHECK_THROWS_AS(parse_formula("P(c) | P(c, d)"), ParseError);
  CHECK_THROWS_AS(parse_formula("P(f(c), f(c, c))"), ParseError);
}

TEST_CASE("printing round-trips") {
  for (const char* s : {"ex y. (A(y) -> all x. A(x))", "A(eps y. (A(y) -> A(eps x. ~A(x)))) -> A(eps x. ~A(x))",
                        "(eps v. v = (eps x. ~x = x)) = (eps x. ~x = x)", "~(P(c) & Q(c)) | (P(c) -> Q(d))",
                        "(P(c) -> Q(c)) -> P(c)", "all x. ex x. A(x)"}) {
    auto f = F(s);
    CHECK(to_string(f) == s);
    CHECK(F(to_string(f).c_str()) == f);
  }
}

TEST_CASE("property: substitution agrees with the renaming oracle") {
  oracle::Gen g(7);
  for (int i = 0; i < 300; ++i) {
    auto f = g.fo(4, {"x", "y"});
    auto t = g.term(2, {"x", "y", "z"});
    auto out = substitute(f, "x", t);
    CHECK_MESSAGE(oracle::alpha_equal(out, oracle::subst_by_renaming(f, "x", t)), to_string(f), " / ", to_string(t));
    if (occurs_free("x", f)) {
      NameSet allowed = free_vars(f);
      allowed.erase("x");
      for (const auto& v : free_vars(t)) allowed.insert(v);
      for (const auto& v : free_vars(out)) CHECK(allowed.count(v));
    } else {
      CHECK(out == f);
    }
  }
}

TEST_CASE("property: alpha equivalence agrees with de Bruijn rendering") {
  oracle::Gen g(11);
  for (int i = 0; i < 300; ++i) {
    auto a = g.fo(4, {});
    NameSet used = all_names(a);
    auto b = oracle::rename_binders(a, "u", used);
    auto c = g.fo(4, {});
    CHECK(alpha_eq(a, a));
    CHECK(alpha_eq(a, b));
    CHECK(alpha_eq(b, a));
    CHECK(alpha_eq(a, c) == oracle::alpha_equal(a, c));
    CHECK(alpha_eq(b, c) == alpha_eq(a, c));
    auto t = g.term(1, {"y"});
    CHECK(alpha_eq(substitute(a, "y", t), substitute(b, "y", t)));
  }
}

TEST_CASE("property: epsilon formulas compare like their de Bruijn text") {
  oracle::Gen g(12);
  for (int i = 0; i < 200; ++i) {
    auto a = g.eps_formula(2);
    auto b = g.eps_formula(2);
    CHECK(alpha_eq(a, b) == oracle::alpha_equal(a, b));
    CHECK(parse_formula(to_string(a)) == a);
  }
}

TEST_CASE("property: matrices are quantifier-free with distinct fresh variables") {
  oracle::Gen g(13);
  for (int i = 0; i < 300; ++i) {
    auto f = g.fo(4, {"a"});
    auto m = matrix_with_vars(f);
    CHECK_FALSE(has_quantifier(m.formula));
    CHECK(m.vars.size() == quantifier_count(f));
    NameSet seen;
    for (const auto& v : m.vars) {
      CHECK(seen.insert(v).second);
      CHECK_FALSE(free_vars(f).count(v));
    }
    CHECK_MESSAGE(m.formula == oracle::strip_quantifiers(f), (to_string(f) + " => " + to_string(m.formula) + " vs " + to_string(oracle::strip_quantifiers(f))));
  }
}

TEST_CASE("property: print and parse are inverse") {
  oracle::Gen g(14);
  for (int i = 0; i < 300; ++i) {
    auto f = g.fo(5, {"a"});
    auto text = to_string(f);
    CHECK(parse_formula(text) == f);
    CHECK(to_string(parse_formula(text)) == text);
  }
}

}  // TEST_SUITE
