#pragma once

// Critical-formula elimination: from a tautology (criticals) -> E to a
// tautological disjunction of instances of E's weak-quantifier template.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "epsforge/kernel.hpp"
#include "epsforge/transforms.hpp"

namespace epsforge {

// 1 + the largest rank among epsilon subterms of the body that mention the
// bound variable; for other terms the largest rank of an epsilon subterm,
// 0 without any.
std::size_t epsilon_rank(const Term& t);

inline constexpr std::size_t kMaxTautologyAtoms = 24;

// Exact propositional validity; atoms are compared up to alpha. Throws
// TooManyAtoms above `max_atoms` distinct atoms.
bool is_tautology(const Formula& f, std::size_t max_atoms = kMaxTautologyAtoms);

struct EpsilonProblem {
  std::vector<CriticalFormula> criticals;
  Formula goal;

  // Throws NonTautology unless (conjunction of criticals) -> goal is valid.
  static EpsilonProblem make(std::vector<CriticalFormula> criticals, Formula goal);
  Formula implication() const;
};

struct HerbrandDisjunction {
  Formula templ;
  std::vector<std::string> vars;
  std::vector<std::vector<Term>> instances;
  Formula disjunction;
  bool certified = false;
};

inline constexpr std::size_t kDefaultStepBudget = 100000;

// The default term for the branch in which no critical formula of an
// epsilon term fires.
Term default_term();

// Throws NonTautology if the result fails certification and Diverged when
// the branch budget runs out or no epsilon term can be eliminated.
HerbrandDisjunction eliminate(const EpsilonProblem& problem, const Formula& templ,
                              const std::vector<std::string>& vars, std::size_t budget = kDefaultStepBudget);

// to_critical_form, problem construction and eliminate for a cut-free
// epsilon proof of |- [goal]^eps; the template is matrix(goal).
HerbrandDisjunction herbrand_pipeline(const ProofNode& p, const Formula& fo_goal);

bool has_strong_quantifier(const Formula& f, bool positive = true);

nlohmann::json to_json(const HerbrandDisjunction& h);

}  // namespace epsforge
