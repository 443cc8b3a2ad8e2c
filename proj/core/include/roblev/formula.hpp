#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roblev {

// One model term. A single factor is a main effect; two or more form an
// interaction. Factors keep the order in which they were written.
struct Term {
  std::vector<std::string> factors;

  std::size_t order() const noexcept { return factors.size(); }
  // Order-insensitive identity: a:b and b:a are the same term.
  bool same_variables(const Term& other) const;
  std::string label() const;  // "a:b"

  friend bool operator==(const Term&, const Term&) = default;
};

struct ModelSpec {
  std::optional<std::string> response;
  std::vector<Term> terms;
  bool intercept = true;

  // Distinct variables in first-appearance order.
  std::vector<std::string> variables() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// Grammar:
//   formula  := [name] '~' rhs
//   rhs      := ['-'] item { ('+' | '-') item }
//   item     := '1' | '0' | product
//   product  := inter { '*' inter }      a*b  ->  a + b + a:b
//   inter    := name { ':' name }
// "- 1" and "0" drop the intercept, which is otherwise present. Main effects
// come first in appearance order, then interactions by ascending order.
// Names are [A-Za-z_.][A-Za-z0-9_.]* or `back-quoted`.
// Throws FormulaError carrying the offending character offset.
ModelSpec parse_formula(std::string_view text);

// Canonical text; parse_formula(render_formula(s)) == s.
std::string render_formula(const ModelSpec& spec);

}  // namespace roblev
