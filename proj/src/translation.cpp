#include "epsforge/translation.hpp"

namespace epsforge {

Formula to_epsilon(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Neg:
      return Formula::neg(to_epsilon(f.operand()));
    case Formula::Kind::And:
      return Formula::conj(to_epsilon(f.lhs()), to_epsilon(f.rhs()));
    case Formula::Kind::Or:
      return Formula::disj(to_epsilon(f.lhs()), to_epsilon(f.rhs()));
    case Formula::Kind::Imp:
      return Formula::imp(to_epsilon(f.lhs()), to_epsilon(f.rhs()));
    case Formula::Kind::Ex: {
      Formula body = to_epsilon(f.body());
      return substitute(body, f.bound(), Term::eps(f.bound(), body));
    }
    case Formula::Kind::All: {
      Formula body = to_epsilon(f.body());
      return substitute(body, f.bound(), Term::eps(f.bound(), Formula::neg(body)));
    }
  }
  return f;
}

namespace {

// Backtracking preimage search. The outermost quantifier of a preimage shows
// up as a maximal epsilon term whose body, instantiated with the term
// itself, reproduces the whole formula.
std::optional<Formula> invert(const Formula& f) {
  auto candidates = maximal_epsilon_subterms(f);
  if (candidates.empty()) return has_quantifier(f) ? std::nullopt : std::optional<Formula>(f);

  for (const auto& e : candidates) {
    const std::string& x = e.name();
    const Formula& body = e.body();
    if (alpha_eq(substitute(body, x, e), f)) {
      if (auto g = invert(body)) return Formula::ex(x, *g);
    }
    if (body.kind() == Formula::Kind::Neg && alpha_eq(substitute(body.operand(), x, e), f)) {
      if (auto g = invert(body.operand())) return Formula::all(x, *g);
    }
  }

  switch (f.kind()) {
    case Formula::Kind::Atom:
      return std::nullopt;
    case Formula::Kind::Neg:
      if (auto g = invert(f.operand())) return Formula::neg(*g);
      return std::nullopt;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp: {
      auto l = invert(f.lhs());
      if (!l) return std::nullopt;
      auto r = invert(f.rhs());
      if (!r) return std::nullopt;
      if (f.kind() == Formula::Kind::And) return Formula::conj(*l, *r);
      if (f.kind() == Formula::Kind::Or) return Formula::disj(*l, *r);
      return Formula::imp(*l, *r);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<Formula> from_epsilon(const Formula& f, std::size_t bound) {
  if (has_quantifier(f)) return std::nullopt;
  std::size_t depth = epsilon_depth(f);
  if (depth > bound)
    throw SearchBoundExceeded("epsilon nesting depth " + std::to_string(depth) + " exceeds search bound " +
                              std::to_string(bound));
  auto g = invert(f);
  if (g && !alpha_eq(to_epsilon(*g), f)) return std::nullopt;
  return g;
}

// ---------------------------------------------------------------------------
// Skolemization

namespace {

SkolemPlanPtr plan(const Formula& f, Polarity p, NameSet& used) {
  auto node = std::make_shared<SkolemPlan>();
  switch (f.kind()) {
    case Formula::Kind::Atom:
      break;
    case Formula::Kind::Neg:
      node->children.push_back(plan(f.operand(), flip(p), used));
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      node->children.push_back(plan(f.lhs(), p, used));
      node->children.push_back(plan(f.rhs(), p, used));
      break;
    case Formula::Kind::Imp:
      node->children.push_back(plan(f.lhs(), flip(p), used));
      node->children.push_back(plan(f.rhs(), p, used));
      break;
    case Formula::Kind::All:
    case Formula::Kind::Ex:
      if (is_strong(f.kind(), p)) node->symbol = fresh_name("sk", used);
      node->children.push_back(plan(f.body(), p, used));
      break;
  }
  return node;
}

const SkolemPlanPtr& child(const SkolemPlanPtr& p, std::size_t i) {
  static const SkolemPlanPtr none;
  return p ? p->children.at(i) : none;
}

}  // namespace

SkolemPlanPtr plan_skolem_symbols(const Formula& f, Polarity p, NameSet& used) { return plan(f, p, used); }

Formula skolem_image(const Formula& f, Polarity p, const SkolemPlanPtr& pl, const std::vector<Term>& args) {
  if (!pl) return f;
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Neg:
      return Formula::neg(skolem_image(f.operand(), flip(p), child(pl, 0), args));
    case Formula::Kind::And:
      return Formula::conj(skolem_image(f.lhs(), p, child(pl, 0), args),
                           skolem_image(f.rhs(), p, child(pl, 1), args));
    case Formula::Kind::Or:
      return Formula::disj(skolem_image(f.lhs(), p, child(pl, 0), args),
                           skolem_image(f.rhs(), p, child(pl, 1), args));
    case Formula::Kind::Imp:
      return Formula::imp(skolem_image(f.lhs(), flip(p), child(pl, 0), args),
                          skolem_image(f.rhs(), p, child(pl, 1), args));
    case Formula::Kind::All:
    case Formula::Kind::Ex: {
      if (!pl->symbol.empty()) {
        Formula body = substitute(f.body(), f.bound(), Term::app(pl->symbol, args));
        return skolem_image(body, p, child(pl, 0), args);
      }
      std::vector<Term> inner = args;
      inner.push_back(Term::var(f.bound()));
      Formula body = skolem_image(f.body(), p, child(pl, 0), inner);
      return f.kind() == Formula::Kind::All ? Formula::all(f.bound(), body) : Formula::ex(f.bound(), body);
    }
  }
  return f;
}

Formula skolemize_formula(const Formula& f, Polarity p) {
  NameSet used = all_names(f);
  return skolem_image(f, p, plan_skolem_symbols(f, p, used), {});
}

}  // namespace epsforge
