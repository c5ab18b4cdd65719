#pragma once

// Proof trees and checkers for LK, the epsilon sequent calculus, LK+ and
// LK++.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "epsforge/syntax.hpp"

namespace epsforge {

enum class Rule { Ax, AndL, AndR, OrL, OrR, ImpL, ImpR, NegL, NegR, WL, WR, CL, CR, Cut, AllL, AllR, ExL, ExR, Subst };

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
std::size_t rule_arity(Rule r);
inline bool is_strong_rule(Rule r) { return r == Rule::AllR || r == Rule::ExL; }
inline bool is_weak_rule(Rule r) { return r == Rule::AllL || r == Rule::ExR; }

enum class Calculus { LK, Leps, LKplus, LKplusplus };

std::string_view calculus_name(Calculus c);
std::optional<Calculus> calculus_from_name(std::string_view name);

struct RuleData {
  std::optional<std::string> eigenvariable;  // allr, exl
  std::optional<Term> witness;               // alll, exr
  std::optional<std::string> var;            // subst
  std::optional<Term> term;                  // subst
  std::optional<std::size_t> principal;      // index on the principal formula's side
  std::optional<Formula> origin;             // cut: first-order cut formula
};

struct ProofNode {
  Rule rule = Rule::Ax;
  Sequent conclusion;
  std::vector<ProofNode> premises;
  RuleData data;
};

enum class Side { Ante, Succ };

struct Occurrence {
  Side side;
  std::size_t index;
};

// Where one premise formula goes in the conclusion: context formulas have a
// copy there, auxiliary formulas are absorbed into the principal formula and
// the cut formula disappears.
struct Link {
  enum class Kind { Context, Auxiliary, Cut };
  Kind kind;
  std::optional<Occurrence> target;
};

struct PremiseLinks {
  std::vector<Link> ante;
  std::vector<Link> succ;
};

// The resolved reading of one inference.
struct RuleMatch {
  std::optional<Occurrence> principal;
  std::vector<PremiseLinks> premises;
  std::optional<Term> witness;               // quantifier rules
  std::optional<std::string> eigenvariable;  // strong rules
  std::optional<Formula> cut_formula;
  // For epsilon-style quantifier rules: the epsilon term the principal
  // formula is built from.
  std::optional<Term> epsilon;
};

// Reads `node` as an instance of its rule. `epsilon_rules` selects the
// epsilon-witness shape for alll/exr. Returns nullopt with a reason when the
// sequents do not fit the rule.
std::optional<RuleMatch> match_rule(const ProofNode& node, bool epsilon_rules, std::string* why = nullptr);

struct SideVarGraph {
  std::set<std::string> nodes;
  std::set<std::pair<std::string, std::string>> edges;  // (a, b): b is a side variable of a
};

SideVarGraph side_variable_relation(const ProofNode& p);
bool check_acyclic(const SideVarGraph& g);

struct Metrics {
  std::size_t length = 0;         // inferences, ax and subst excluded
  std::size_t sequent_count = 0;  // displayed sequents, subst excluded
  std::size_t symbol_size = 0;    // symbol occurrences over displayed sequents
};

Metrics metrics(const ProofNode& p);

struct Violation {
  std::string path;
  std::string condition;
  std::string message;
};

struct CheckReport {
  bool valid = true;
  Calculus calculus = Calculus::LK;
  std::vector<Violation> violations;
  SideVarGraph side_var_graph;
  Metrics metrics;
};

// Throws MalformedTree on arity or payload problems.
CheckReport check(const ProofNode& p, Calculus c);

// Derivation of F |- F from atomic axioms. Fresh eigenvariables avoid
// `avoid` and are added to it.
ProofNode expand_axiom(const Formula& f, Calculus c, NameSet* avoid = nullptr);

// ---------------------------------------------------------------------------
// Helpers shared by the transforms.

std::size_t count_rule(const ProofNode& p, Rule r);
bool is_cut_free(const ProofNode& p);
// Every identifier in every sequent and payload of the tree.
NameSet proof_names(const ProofNode& p);
std::size_t symbol_size(const Sequent& s);

const Formula& at(const Sequent& s, Occurrence o);
std::vector<Formula>& side(Sequent& s, Side which);
const std::vector<Formula>& side(const Sequent& s, Side which);

// Multiset equality up to alpha.
bool same_multiset(const std::vector<Formula>& a, const std::vector<Formula>& b);
bool same_sequent(const Sequent& a, const Sequent& b);

}  // namespace epsforge
