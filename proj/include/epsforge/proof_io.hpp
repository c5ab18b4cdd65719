#pragma once

// Text format for proof trees:
//
//   (calculus lk)                       ; optional header
//   (allr "|- all x. P(x) -> P(x)" :ev a
//     (impr "|- P(a) -> P(a)"
//       (ax "P(a) |- P(a)")))
//
// Payload keys: :ev, :witness, :var, :term, :principal, :origin. A ';'
// starts a comment that runs to the end of the line.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "epsforge/kernel.hpp"

namespace epsforge {

struct ProofFile {
  std::optional<Calculus> calculus;
  ProofNode proof;
};

// Throws ParseError with line and column of the offending token.
ProofFile parse_proof_file(std::string_view text);
ProofNode parse_proof(std::string_view text);
ProofFile load_proof_file(const std::string& path);

// A formula file: one formula, `;` comments to end of line.
Formula parse_formula_file(std::string_view text);
Formula load_formula_file(const std::string& path);

std::string print_proof(const ProofNode& p, std::optional<Calculus> calculus = std::nullopt);

nlohmann::json to_json(const CheckReport& r);
nlohmann::json to_json(const Metrics& m);
nlohmann::json to_json(const SideVarGraph& g);

}  // namespace epsforge
