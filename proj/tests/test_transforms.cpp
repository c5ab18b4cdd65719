#include <doctest.h>

#include <functional>

#include "epsforge/epsilon_theorem.hpp"
#include "epsforge/proof_io.hpp"
#include "epsforge/translation.hpp"
#include "oracles.hpp"

using namespace epsforge;

namespace {

ProofNode corpus(const std::string& name) {
  return load_proof_file(std::string(EPSFORGE_CORPUS_DIR) + "/" + name).proof;
}

Formula F(const char* s) { return parse_formula(s); }

bool valid(const ProofNode& p, Calculus c) { return check(p, c).valid; }

void collect(const ProofNode& p, Rule r, std::vector<const ProofNode*>& out) {
  if (p.rule == r) out.push_back(&p);
  for (const auto& q : p.premises) collect(q, r, out);
}

std::vector<const ProofNode*> nodes(const ProofNode& p, Rule r) {
  std::vector<const ProofNode*> out;
  collect(p, r, out);
  return out;
}

// Same rules and alpha-equal sequents, node by node.
bool alpha_same_tree(const ProofNode& a, const ProofNode& b) {
  if (a.rule != b.rule || a.premises.size() != b.premises.size()) return false;
  auto same = [](const std::vector<Formula>& x, const std::vector<Formula>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!oracle::alpha_equal(x[i], y[i])) return false;
    return true;
  };
  if (!same(a.conclusion.ante, b.conclusion.ante) || !same(a.conclusion.succ, b.conclusion.succ)) return false;
  for (std::size_t i = 0; i < a.premises.size(); ++i)
    if (!alpha_same_tree(a.premises[i], b.premises[i])) return false;
  return true;
}

void check_trace(const TransformResult& r) {
  auto m = metrics(r.proof);
  CHECK(r.trace.output.length == m.length);
  CHECK(r.trace.output.sequent_count == m.sequent_count);
  CHECK(r.trace.output.symbol_size == m.symbol_size);
}

}  // namespace

TEST_SUITE("transforms") {

TEST_CASE("first-order proofs translate to shorter epsilon proofs") {
  auto lk = corpus("ex2_lk_drinker.prf");
  auto r = lk_to_leps(lk);
  CHECK(valid(r.proof, Calculus::Leps));
  CHECK(metrics(r.proof).length == 7);
  CHECK(r.trace.input.length == 8);
  CHECK(r.proof.conclusion.ante.empty());
  REQUIRE(r.proof.conclusion.succ.size() == 1);
  CHECK(alpha_eq(r.proof.conclusion.succ[0], F("A(eps y. (A(y) -> A(eps x. ~A(x)))) -> A(eps x. ~A(x))")));
  CHECK(alpha_same_tree(r.proof, corpus("ex2_leps_translation.prf")));
  REQUIRE(r.trace.steps.size() == 1);
  CHECK(r.trace.steps[0].action == "allr-to-subst");
  check_trace(r);

  auto mixed = lk_to_leps(corpus("allex_lk.prf"));
  CHECK(valid(mixed.proof, Calculus::Leps));
  CHECK(metrics(mixed.proof).length <= 3);

  auto prop = corpus("prop_only.prf");
  auto same = lk_to_leps(prop);
  CHECK(alpha_same_tree(same.proof, prop));

  auto cut = lk_to_leps(corpus("cut_exists_lk.prf"));
  auto cuts = nodes(cut.proof, Rule::Cut);
  REQUIRE(cuts.size() == 1);
  REQUIRE(cuts[0]->data.origin);
  CHECK(*cuts[0]->data.origin == F("ex x. P(x)"));

  CHECK_THROWS_AS(lk_to_leps(corpus("ex4_lkplus_drinker.prf")), InvalidInput);
}

TEST_CASE("property: translated proofs check and never grow") {
  oracle::Gen g(51);
  for (int i = 0; i < 200; ++i) {
    auto p = g.proof(5, Calculus::LK);
    auto r = lk_to_leps(p);
    REQUIRE_MESSAGE(valid(r.proof, Calculus::Leps), print_proof(r.proof));
    CHECK(metrics(r.proof).length <= metrics(p).length);
    for (std::size_t k = 0; k < p.conclusion.succ.size(); ++k)
      CHECK(alpha_eq(r.proof.conclusion.succ[k], to_epsilon(p.conclusion.succ[k])));
    for (const auto* c : nodes(r.proof, Rule::Cut)) CHECK(c->data.origin.has_value());
    check_trace(r);
  }
}

TEST_CASE("critical formulas of the short drinker proof") {
  auto cf = to_critical_form(corpus("ex2_leps_short.prf"));
  CHECK(valid(cf.proof, Calculus::Leps));
  REQUIRE(cf.criticals.size() == 1);
  const auto& c = cf.criticals[0];
  Term e = parse_term("eps x. ~A(x)");
  CHECK(alpha_eq(substitute(c.base, c.var, Term::var("y")), F("A(y) -> A(eps x. ~A(x))")));
  CHECK(alpha_eq(c.witness, e));
  CHECK(alpha_eq(c.formula, F("(A(eps x. ~A(x)) -> A(eps x. ~A(x))) -> "
                              "A(eps y. (A(y) -> A(eps x. ~A(x)))) -> A(eps x. ~A(x))")));
  CHECK(nodes(cf.proof, Rule::ExR).empty());
  REQUIRE(cf.proof.conclusion.ante.size() == 1);
  CHECK(alpha_eq(cf.proof.conclusion.ante[0], c.formula));
  CHECK(oracle::truth_table_valid(cf.tautology));
}

TEST_CASE("critical form edge cases") {
  auto prop = to_critical_form(corpus("prop_only.prf"));
  CHECK(prop.criticals.empty());
  CHECK(prop.tautology == prop.goal);
  CHECK(prop.goal == F("P(c) | ~P(c)"));

  auto stacked = corpus("stacked_exr.prf");
  auto cf = to_critical_form(stacked);
  CHECK(valid(cf.proof, Calculus::Leps));
  CHECK(cf.criticals.size() == 2);
  CHECK(cf.proof.conclusion.ante.size() == stacked.conclusion.ante.size() + 2);
  CHECK(oracle::truth_table_valid(cf.tautology));

  CHECK_THROWS_AS(to_critical_form(corpus("cut_prop.prf")), UnsupportedCut);
}

TEST_CASE("property: critical forms are valid and tautological") {
  oracle::Gen g(52);
  int with_criticals = 0;
  for (int i = 0; i < 200; ++i) {
    auto p = g.proof(5, Calculus::Leps);
    auto cf = to_critical_form(p);
    REQUIRE_MESSAGE(valid(cf.proof, Calculus::Leps), print_proof(p));
    CHECK(nodes(cf.proof, Rule::ExR).empty());
    CHECK(nodes(cf.proof, Rule::AllL).empty());
    CHECK(cf.criticals.size() == count_rule(p, Rule::ExR) + count_rule(p, Rule::AllL));
    for (const auto& c : cf.criticals) {
      Formula expected = Formula::imp(substitute(c.base, c.var, c.witness),
                                      substitute(c.base, c.var, Term::eps(c.var, c.base)));
      CHECK(c.formula == expected);
    }
    CHECK(oracle::truth_table_valid(cf.tautology));
    if (!cf.criticals.empty()) ++with_criticals;
  }
  CHECK(with_criticals > 20);
}

TEST_CASE("cut universalization") {
  auto prop = corpus("cut_prop.prf");
  auto r = universalize_cuts(prop);
  CHECK(valid(r.proof, Calculus::Leps));
  CHECK(is_cut_free(r.proof));
  REQUIRE(r.trace.added_end_formulas.size() == 1);
  CHECK(r.trace.added_end_formulas[0] == F("P(c) -> P(c)"));
  CHECK(metrics(r.proof).length == metrics(prop).length);

  auto translated = lk_to_leps(corpus("cut_exists_lk.prf")).proof;
  auto u = universalize_cuts(translated);
  CHECK(valid(u.proof, Calculus::Leps));
  CHECK(is_cut_free(u.proof));
  REQUIRE(u.trace.added_end_formulas.size() == 1);
  CHECK(alpha_eq(u.trace.added_end_formulas[0], to_epsilon(F("all v1. (P(v1) -> P(v1))"))));
  auto expected = translated.conclusion;
  expected.ante.push_back(u.trace.added_end_formulas[0]);
  CHECK(same_sequent(u.proof.conclusion, expected));

  auto free = corpus("prop_only.prf");
  auto id = universalize_cuts(free);
  CHECK(print_proof(id.proof) == print_proof(free));
  CHECK(id.trace.added_end_formulas.empty());
  check_trace(u);
}

TEST_CASE("cut universalization needs consistent origins") {
  auto p = corpus("cut_prop.prf");
  p.data.origin.reset();
  CHECK_THROWS_AS(universalize_cuts(p), OriginRequired);
  p.data.origin = F("ex x. Q(x)");
  CHECK_THROWS_AS(universalize_cuts(p), MatrixMismatch);
}

TEST_CASE("property: universalized proofs are cut-free with linear growth") {
  oracle::Gen g(53);
  for (int i = 0; i < 60; ++i) {
    int k = 1 + static_cast<int>(g.pick(3));
    auto p = g.leps_with_cuts(k);
    REQUIRE_MESSAGE(valid(p, Calculus::Leps), print_proof(p));
    auto cuts = nodes(p, Rule::Cut);
    REQUIRE(cuts.size() == static_cast<std::size_t>(k));
    std::size_t budget = 0;
    for (const auto* c : cuts) budget += 4 * (1 + quantifier_count(*c->data.origin));
    auto r = universalize_cuts(p);
    REQUIRE_MESSAGE(valid(r.proof, Calculus::Leps), print_proof(p));
    CHECK(is_cut_free(r.proof));
    CHECK(metrics(r.proof).length <= metrics(p).length + budget);
    for (const auto& f : r.trace.added_end_formulas) {
      bool matched = false;
      for (const auto* c : cuts) matched = matched || alpha_eq(f, oracle::universal_image(*c->data.origin));
      CHECK(matched);
    }
    auto expected = p.conclusion;
    for (const auto& f : r.trace.added_end_formulas) expected.ante.push_back(f);
    CHECK(same_sequent(r.proof.conclusion, expected));
    check_trace(r);
  }
}

TEST_CASE("unsound inferences become cuts") {
  auto ex4 = corpus("ex4_lkplus_drinker.prf");
  auto r = eliminate_unsound_inferences(ex4);
  CHECK(valid(r.proof, Calculus::LK));
  CHECK(count_rule(r.proof, Rule::Cut) == 1);
  CHECK(same_sequent(r.proof.conclusion, ex4.conclusion));
  check_trace(r);

  auto lk = corpus("ex2_lk_drinker.prf");
  auto same = eliminate_unsound_inferences(lk);
  CHECK(print_proof(same.proof) == print_proof(lk));
  CHECK(same.trace.steps.empty());

  auto chain = corpus("lkplus_chain.prf");
  auto c = eliminate_unsound_inferences(chain);
  CHECK(valid(c.proof, Calculus::LK));
  CHECK(count_rule(c.proof, Rule::Cut) == 2);
  CHECK(same_sequent(c.proof.conclusion, chain.conclusion));
  std::vector<std::string> discharges;
  for (const auto& s : c.trace.steps)
    if (s.action.rfind("discharge", 0) == 0) discharges.push_back(s.action);
  CHECK(discharges == std::vector<std::string>{"discharge a", "discharge b"});

  auto shared = eliminate_unsound_inferences(corpus("ex5_regularity_same_main.prf"));
  CHECK(valid(shared.proof, Calculus::LK));

  CHECK_THROWS_AS(eliminate_unsound_inferences(corpus("ex5_loop.prf")), InvalidInput);
}

TEST_CASE("eigenvariables renamed apart") {
  auto p = rename_eigenvariables_apart(corpus("ex5_regularity_same_main.prf"));
  std::vector<std::string> evs;
  std::function<void(const ProofNode&)> walk = [&](const ProofNode& n) {
    if (n.data.eigenvariable) evs.push_back(*n.data.eigenvariable);
    for (const auto& q : n.premises) walk(q);
  };
  walk(p);
  REQUIRE(evs.size() == 2);
  CHECK(evs[0] != evs[1]);
  CHECK(valid(p, Calculus::LKplus));

  auto ex4 = corpus("ex4_lkplus_drinker.prf");
  CHECK(print_proof(rename_eigenvariables_apart(ex4)) == print_proof(ex4));
}

TEST_CASE("Skolemization by cuts") {
  auto lk = corpus("ex2_lk_drinker.prf");
  auto r = skolemize_by_cuts(lk);
  CHECK(valid(r.proof, Calculus::LK));
  REQUIRE(r.proof.conclusion.succ.size() == 1);
  CHECK(r.proof.conclusion.succ[0] == skolemize_formula(lk.conclusion.succ[0], Polarity::Positive));
  CHECK(metrics(r.proof).length <= metrics(lk).length + 3);
  check_trace(r);

  auto one = parse_proof(R"p((allr "|- all x. (R(x, c) -> R(x, c))" :ev a
    (impr "|- R(a, c) -> R(a, c)" (ax "R(a, c) |- R(a, c)"))))p");
  auto o = skolemize_by_cuts(one);
  CHECK(valid(o.proof, Calculus::LK));
  REQUIRE(o.proof.rule == Rule::Cut);
  CHECK(same_sequent(o.proof.premises[1].conclusion,
                     parse_sequent("all x. (R(x, c) -> R(x, c)) |- R(sk1, c) -> R(sk1, c)")));

  auto nested = corpus("skolem_nested.prf");
  auto n = skolemize_by_cuts(nested);
  CHECK(valid(n.proof, Calculus::LK));
  auto cuts = nodes(n.proof, Rule::Cut);
  REQUIRE(cuts.size() == 1);
  const auto& right = cuts[0]->premises[1].conclusion;
  CHECK(same_sequent(right, parse_sequent("all z. (B(a, b, z) -> B(a, b, z)) |- B(a, b, sk1(a, b)) -> B(a, b, sk1(a, b))")));

  auto prop = corpus("prop_only.prf");
  CHECK(print_proof(skolemize_by_cuts(prop).proof) == print_proof(prop));
}

TEST_CASE("cut-free Skolemization") {
  auto lk = corpus("ex2_lk_drinker.prf");
  auto r = skolemize_cut_free(lk);
  CHECK(valid(r.proof, Calculus::LK));
  CHECK(is_cut_free(r.proof));
  CHECK(metrics(r.proof).length == 7);
  CHECK(same_sequent(r.proof.conclusion, parse_sequent("|- ex y. (A(y) -> A(sk1(y)))")));

  auto nested = skolemize_cut_free(corpus("skolem_nested.prf"));
  CHECK(valid(nested.proof, Calculus::LK));
  CHECK(nested.proof.conclusion.succ[0] == F("ex x. ex y. (B(x, y, sk1(x, y)) -> B(x, y, sk1(x, y)))"));
  CHECK(nested.proof.conclusion.succ[0] ==
        skolemize_formula(F("ex x. ex y. all z. (B(x, y, z) -> B(x, y, z))"), Polarity::Positive));

  auto prop = corpus("prop_only.prf");
  CHECK(print_proof(skolemize_cut_free(prop).proof) == print_proof(prop));
  CHECK_THROWS_AS(skolemize_cut_free(corpus("cut_exists_lk.prf")), UnsupportedCut);
}

TEST_CASE("property: both Skolemizations agree and stay valid") {
  oracle::Gen g(54);
  int strong_total = 0;
  for (int i = 0; i < 200; ++i) {
    auto p = g.proof(5, Calculus::LK);
    std::size_t strong = count_rule(p, Rule::AllR) + count_rule(p, Rule::ExL);
    strong_total += static_cast<int>(strong);
    auto by_cuts = skolemize_by_cuts(p);
    REQUIRE_MESSAGE(valid(by_cuts.proof, Calculus::LK), print_proof(p));
    check_trace(by_cuts);
    std::size_t gadget_budget = 0;
    std::function<void(const ProofNode&)> walk = [&](const ProofNode& n) {
      if (is_strong_rule(n.rule)) {
        const auto& f = at(n.conclusion, *match_rule(n, false)->principal);
        gadget_budget += 2 + metrics(expand_axiom(f.body(), Calculus::LK)).length;
      }
      for (const auto& q : n.premises) walk(q);
    };
    walk(p);
    CHECK(metrics(by_cuts.proof).length <= metrics(p).length + gadget_budget);
    if (!is_cut_free(p)) continue;
    auto cut_free = skolemize_cut_free(p);
    REQUIRE_MESSAGE(valid(cut_free.proof, Calculus::LK), print_proof(p));
    CHECK(is_cut_free(cut_free.proof));
    CHECK(metrics(cut_free.proof).length + strong == metrics(p).length);
    CHECK(same_sequent(cut_free.proof.conclusion, by_cuts.proof.conclusion));
    for (const auto& f : cut_free.proof.conclusion.succ) CHECK_FALSE(has_strong_quantifier(f, true));
    for (const auto& f : cut_free.proof.conclusion.ante) CHECK_FALSE(has_strong_quantifier(f, false));
  }
  CHECK(strong_total > 20);
}

}  // TEST_SUITE
