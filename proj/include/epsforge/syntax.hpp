#pragma once

// Terms and formulas of first-order logic extended with epsilon terms.
//
// Values are immutable and share structure through reference-counted nodes,
// so copying a Term or Formula is cheap and every operation below is pure.
// Bound variables are named; alpha_eq is the semantic equality.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "epsforge/errors.hpp"

namespace epsforge {

struct TermNode;
struct FormulaNode;
class Term;

class Formula {
 public:
  enum class Kind { Atom, Neg, And, Or, Imp, All, Ex };

  Formula() = default;

  static Formula atom(std::string pred, std::vector<Term> args);
  static Formula eq(Term lhs, Term rhs);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula all(std::string var, Formula body);
  static Formula ex(std::string var, Formula body);

  bool empty() const { return !node_; }
  Kind kind() const;

  // Atom: predicate symbol ("=" for equations).
  const std::string& pred() const;
  const std::vector<Term>& args() const;
  // Neg: operand(); binary connectives: lhs()/rhs().
  const Formula& operand() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  // All / Ex.
  const std::string& bound() const;
  const Formula& body() const;

  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_binary() const {
    auto k = kind();
    return k == Kind::And || k == Kind::Or || k == Kind::Imp;
  }
  bool is_quantifier() const {
    auto k = kind();
    return k == Kind::All || k == Kind::Ex;
  }

  // Exact structural equality (bound names included). Use alpha_eq for
  // semantic comparison.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FormulaNode> node_;
};

class Term {
 public:
  enum class Kind { Var, App, Eps };

  Term() = default;

  static Term var(std::string name);
  static Term app(std::string fn, std::vector<Term> args);
  static Term eps(std::string var, Formula body);

  bool empty() const { return !node_; }
  Kind kind() const;
  // Var: variable name; App: function symbol; Eps: bound variable.
  const std::string& name() const;
  const std::vector<Term>& args() const;
  const Formula& body() const;

  bool is_var() const { return kind() == Kind::Var; }
  bool is_eps() const { return kind() == Kind::Eps; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct Sequent {
  std::vector<Formula> ante;
  std::vector<Formula> succ;
};

// Symbol arities for one problem. Arity 0 function symbols are constants.
class Signature {
 public:
  void add_pred(const std::string& name, std::size_t arity);
  void add_fn(const std::string& name, std::size_t arity);
  void collect(const Term& t);
  void collect(const Formula& f);
  void collect(const Sequent& s);

  const std::map<std::string, std::size_t>& preds() const { return preds_; }
  const std::map<std::string, std::size_t>& fns() const { return fns_; }

 private:
  std::map<std::string, std::size_t> preds_;
  std::map<std::string, std::size_t> fns_;
};

using NameSet = std::set<std::string>;
using TermMap = std::map<std::string, Term>;

NameSet free_vars(const Term& t);
NameSet free_vars(const Formula& f);
NameSet free_vars(const Sequent& s);
bool occurs_free(const std::string& x, const Term& t);
bool occurs_free(const std::string& x, const Formula& f);

// Every identifier occurring anywhere: variables (free or bound), function
// and predicate symbols. Fresh-name generation avoids all of them.
NameSet all_names(const Term& t);
NameSet all_names(const Formula& f);
void collect_names(const Formula& f, NameSet& out);
void collect_names(const Term& t, NameSet& out);

// First name of the form prefix1, prefix2, ... that is not in `used`;
// the chosen name is inserted into `used`.
std::string fresh_name(const std::string& prefix, NameSet& used);

// Capture-avoiding substitution of t for the free occurrences of x.
Term substitute(const Term& e, const std::string& x, const Term& t);
Formula substitute(const Formula& e, const std::string& x, const Term& t);
// Simultaneous substitution.
Term substitute(const Term& e, const TermMap& sigma);
Formula substitute(const Formula& e, const TermMap& sigma);
Sequent substitute(const Sequent& s, const std::string& x, const Term& t);

bool alpha_eq(const Term& a, const Term& b);
bool alpha_eq(const Formula& a, const Formula& b);

// Finds sigma over `vars` with alpha_eq(substitute(pattern, sigma), target).
// Variables of `vars` that do not occur free in the pattern stay unbound.
std::optional<TermMap> match(const Formula& pattern, const NameSet& vars, const Formula& target);
std::optional<Term> match_instance(const Formula& pattern, const std::string& x,
                                   const Formula& target);

// Replaces every occurrence of the term `from` (up to alpha, and only where
// none of its free variables is captured) by `to`.
Formula replace_term(const Formula& f, const Term& from, const Term& to);
Term replace_term(const Term& e, const Term& from, const Term& to);

bool has_epsilon(const Term& t);
bool has_epsilon(const Formula& f);
bool has_quantifier(const Formula& f);
bool has_quantifier(const Term& t);
std::size_t quantifier_count(const Formula& f);

// Epsilon subterm occurrences in left-to-right pre-order (outer before inner).
std::vector<Term> epsilon_subterms(const Formula& f);
std::vector<Term> epsilon_subterms(const Term& t);
// Epsilon subterms not properly contained in another epsilon subterm,
// deduplicated up to alpha, in left-to-right order.
std::vector<Term> maximal_epsilon_subterms(const Formula& f);
// Deepest nesting of epsilon binders.
std::size_t epsilon_depth(const Formula& f);
std::size_t epsilon_depth(const Term& t);

std::size_t symbol_size(const Term& t);
std::size_t symbol_size(const Formula& f);

struct MatrixResult {
  Formula formula;
  // Fresh variable per quantifier occurrence, left to right.
  std::vector<std::string> vars;
};
// Deletes all quantifiers, replacing each bound variable by a fresh free one.
// Throws MatrixUndefined on epsilon input.
MatrixResult matrix_with_vars(const Formula& f);
Formula matrix(const Formula& f);

// Reserved symbol namespaces: Skolem functions sk<N> and the default
// constant def0. Bare identifiers in these namespaces denote constants.
bool is_reserved_constant(std::string_view name);

std::string to_string(const Term& t);
std::string to_string(const Formula& f);
std::string to_string(const Sequent& s);

Term parse_term(std::string_view text);
Formula parse_formula(std::string_view text);
Sequent parse_sequent(std::string_view text);
// Variants that accumulate arities into `sig` and reject inconsistent use.
Formula parse_formula(std::string_view text, Signature& sig);
Sequent parse_sequent(std::string_view text, Signature& sig);

}  // namespace epsforge
