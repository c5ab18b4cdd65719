#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "epsforge/syntax.hpp"

namespace epsforge {

// Epsilon translation: existential quantifiers become A(eps x. A(x)),
// universal ones A(eps x. ~A(x)); epsilon bodies are translated as well, so
// the result contains no quantifier anywhere.
Formula to_epsilon(const Formula& f);

inline constexpr std::size_t kDefaultSearchBound = 8;

// Some first-order G whose epsilon translation is alpha-equal to `f`, or
// nullopt when no preimage exists. Throws SearchBoundExceeded when the
// epsilon nesting depth of `f` exceeds `bound`.
std::optional<Formula> from_epsilon(const Formula& f, std::size_t bound = kDefaultSearchBound);

enum class Polarity { Positive, Negative };

inline Polarity flip(Polarity p) { return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive; }

// Strong quantifiers: universal in positive position, existential in
// negative position.
inline bool is_strong(Formula::Kind quantifier, Polarity p) {
  return (quantifier == Formula::Kind::All) == (p == Polarity::Positive);
}

// Skolem symbol assignment mirroring the shape of one formula. Strong
// quantifier nodes carry their Skolem function symbol.
struct SkolemPlan {
  std::string symbol;
  std::vector<std::shared_ptr<const SkolemPlan>> children;
};
using SkolemPlanPtr = std::shared_ptr<const SkolemPlan>;

// Assigns sk<N> symbols (avoiding `used`) to the strong quantifiers of `f`
// in left-to-right pre-order.
SkolemPlanPtr plan_skolem_symbols(const Formula& f, Polarity p, NameSet& used);

// Replaces each planned strong quantifier by its Skolem function applied to
// `args` followed by the weakly bound variables in scope, outermost first.
// A null plan leaves the formula untouched.
Formula skolem_image(const Formula& f, Polarity p, const SkolemPlanPtr& plan, const std::vector<Term>& args);

Formula skolemize_formula(const Formula& f, Polarity p);

}  // namespace epsforge
