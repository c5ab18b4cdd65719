#pragma once

// Proof-to-proof transformations between LK, the epsilon calculus and the
// calculi with relaxed eigenvariable conditions.

#include <string>
#include <vector>

#include <json.hpp>

#include "epsforge/kernel.hpp"

namespace epsforge {

// A(t) -> A(eps x. A(x)), kept together with the pieces it is built from.
struct CriticalFormula {
  std::string var;
  Formula base;
  Term witness;
  Formula formula;
};

CriticalFormula make_critical(const std::string& x, const Formula& base, const Term& t);

struct TraceStep {
  std::string path;
  std::string action;
};

struct TransformTrace {
  std::string pass;
  Metrics input;
  Metrics output;
  std::vector<TraceStep> steps;
  std::vector<Formula> added_end_formulas;
};

struct TransformResult {
  ProofNode proof;
  TransformTrace trace;
};

struct CriticalForm {
  ProofNode proof;
  std::vector<CriticalFormula> criticals;
  // Disjunction of the succedent and the negated antecedent of the input.
  Formula goal;
  // (conjunction of criticals) -> goal, or goal alone without criticals.
  Formula tautology;
  TransformTrace trace;
};

// LK -> epsilon calculus. Strong inferences become subst nodes, cuts carry
// their first-order formula as origin.
TransformResult lk_to_leps(const ProofNode& p);

// Rewrites every epsilon quantifier inference of a cut-free epsilon proof
// into an implication-left inference on its critical formula. Throws
// UnsupportedCut on cuts.
CriticalForm to_critical_form(const ProofNode& p);

// Replaces each cut on A by an implication-left inference on A -> A and
// quantifies the new antecedent formula to the image of all v. (M -> M),
// M the matrix of the cut's origin. Throws OriginRequired, MatrixMismatch.
TransformResult universalize_cuts(const ProofNode& p);

// Turns an LK+ or LK++ proof into an LK proof with one cut per discharged
// eigenvariable formula.
TransformResult eliminate_unsound_inferences(const ProofNode& p);

TransformResult skolemize_by_cuts(const ProofNode& p);
// Throws UnsupportedCut on cuts.
TransformResult skolemize_cut_free(const ProofNode& p);

// Renames eigenvariables so that each occurs only below the lowest sequent
// that does not mention it. In an LK proof every strong inference then has
// an eigenvariable of its own; in LK++ proofs, inferences that share one
// inside a single such subtree keep sharing it.
ProofNode rename_eigenvariables_apart(const ProofNode& p);

// Applies a substitution to every sequent and payload of a tree.
ProofNode substitute_proof(const ProofNode& p, const TermMap& sigma);

nlohmann::json to_json(const TransformTrace& t);

}  // namespace epsforge
