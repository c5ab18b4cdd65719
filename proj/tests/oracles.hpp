#pragma once

// Reference implementations and random generators used only by the tests.
// Each oracle is written without calling the library routine it checks.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "epsforge/epsilon_theorem.hpp"
#include "epsforge/kernel.hpp"
#include "epsforge/syntax.hpp"
#include "epsforge/transforms.hpp"

namespace oracle {

using namespace epsforge;

// De Bruijn rendering: bound variables print as their binder distance.
std::string nameless(const Term& t);
std::string nameless(const Formula& f);
bool alpha_equal(const Formula& a, const Formula& b);
bool alpha_equal(const Term& a, const Term& b);

// Renames every binder to a fresh name from `prefix` and strips nothing.
Formula rename_binders(const Formula& f, const std::string& prefix, NameSet& used);
// Textbook replacement of free occurrences, no capture check.
Formula naive_subst(const Formula& f, const std::string& x, const Term& t);
// Renames all binders apart from x and t first, then substitutes naively.
Formula subst_by_renaming(const Formula& f, const std::string& x, const Term& t);

// Quantifier stripping after renaming binders v1, v2, ... in pre-order.
Formula strip_quantifiers(const Formula& f);
// Epsilon image of all v. (M -> M) for the matrix M of a first-order formula.
Formula universal_image(const Formula& origin);

// Full truth table over the atoms of f, atoms keyed by their de Bruijn text.
bool truth_table_valid(const Formula& f);

// Depth-first topological sort; false when a back edge is found.
bool has_topological_order(const SideVarGraph& g);

std::size_t count_nodes(const ProofNode& p, Rule r);

class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  // Terms over constants c, d, unary f and the given variables.
  Term term(int depth, const std::vector<std::string>& vars);
  // Quantifier-free formulas over P/1, Q/1, R/2.
  Formula qf(int depth, const std::vector<std::string>& vars);
  // First-order formulas; quantifiers bind x, y, z, possibly shadowing.
  Formula fo(int depth, std::vector<std::string> vars);
  // Formulas that may contain epsilon terms.
  Formula eps_formula(int depth);

  // A valid proof, built forward from axioms. In Leps mode alll/exr use the
  // epsilon shapes; in LK mode strong rules respect the eigenvariable
  // condition and use pairwise distinct eigenvariables.
  ProofNode proof(int depth, Calculus c);

  // A valid epsilon-calculus proof with exactly `cuts` cuts, each carrying a
  // first-order origin.
  ProofNode leps_with_cuts(int cuts);

  struct EpsilonCase {
    EpsilonProblem problem;
    Formula templ;
    std::vector<std::string> vars;
  };
  // A random existential goal with critical formulas making the problem a
  // tautology, or nullopt when the sampled criticals do not suffice.
  std::optional<EpsilonCase> epsilon_case();

 private:
  ProofNode unary_step(ProofNode p, Calculus c);
  ProofNode binary_step(ProofNode a, ProofNode b, Calculus c);
  std::string fresh_eigenvariable();

  std::mt19937 rng_;
  int eigen_counter_ = 0;
};

}  // namespace oracle
