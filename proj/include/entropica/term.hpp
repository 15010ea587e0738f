#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entropica/signature.hpp"

namespace entropica {

/// Immutable term tree: a variable, or an operation symbol applied to
/// arguments. Constants are applications with no arguments. Copies share
/// structure.
class Term {
 public:
  static Term variable(std::string name);
  static Term apply(std::string op, std::vector<Term> args = {});

  bool is_variable() const noexcept { return node_->variable; }
  const std::string& symbol() const noexcept { return node_->symbol; }
  const std::vector<Term>& args() const noexcept { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }

  /// Number of variable occurrences.
  std::size_t leaf_count() const noexcept { return node_->leaves; }
  std::size_t depth() const noexcept { return node_->depth; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    std::string symbol;
    std::vector<Term> args;
    bool variable = false;
    std::size_t leaves = 0;
    std::size_t depth = 0;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Identity {
  Term lhs;
  Term rhs;

  friend bool operator==(const Identity&, const Identity&) = default;
};

// ---------------------------------------------------------------------------
// Syntax
//
//   identity := expr '=' expr
//   expr     := product { ('+' | '-') product }        (left-associative)
//   product  := primary { infix primary }               (left-associative)
//   primary  := name '(' expr {',' expr} ')' | name | symbol '(' ... ')'
//             | '(' expr ')'
//
// A bare name is a constant when the signature has a nullary operation of
// that name, otherwise a variable ([A-Za-z][A-Za-z0-9_]*). Any single
// punctuation character naming a binary operation may be used infix; `*`
// additionally stands for the sole binary operation of a signature that has
// exactly one.

/// Parses over `sig`; throws ParseError (with byte offset) or SignatureError.
Term parse_term(std::string_view src, const Signature& sig);
Identity parse_identity(std::string_view src, const Signature& sig);

/// Same, over the groupoid signature {*}.
Term parse_term(std::string_view src);
Identity parse_identity(std::string_view src);

/// Canonical form: symbolic binary operations infix with every compound
/// operand parenthesised, everything else prefix. Contains no whitespace.
std::string to_string(const Term& t);
std::string to_string(const Identity& id);

/// Throws SignatureError unless every symbol of `t` is an operation of `sig`
/// with matching arity.
void check_well_formed(const Term& t, const Signature& sig);

// ---------------------------------------------------------------------------
// Structure

/// Variables in order of first occurrence (left to right).
std::vector<std::string> variables(const Term& t);
/// Variables of lhs, then the new ones of rhs.
std::vector<std::string> variables(const Identity& id);

std::map<std::string, std::size_t> occurrence_counts(const Term& t);

bool is_linear(const Term& t);
bool is_linear(const Identity& id);
/// Both sides contain the same variables.
bool is_regular(const Identity& id);
/// Both sides contain each variable equally often.
bool is_balanced(const Identity& id);

Term substitute(const Term& t, const std::map<std::string, Term>& sigma);

/// Mirror image over binary operations: (t1 t2) becomes (t2' t1').
Term mirror(const Term& t);

// ---------------------------------------------------------------------------
// Linearization

/// The j-th occurrence of variable x is renamed to x_j. A variable of the
/// requested order that does not occur still gets one (unused) fresh name.
struct Linearization {
  Term original;
  Term star;
  std::vector<std::string> variables;
  std::vector<std::vector<std::string>> groups;

  std::vector<std::size_t> counts() const;
};

std::string fresh_name(const std::string& var, std::size_t occurrence);

Linearization linearize(const Term& t);
/// Linearizes with the given variable order; every variable of `t` must be
/// listed.
Linearization linearize(const Term& t, std::span<const std::string> order);

// ---------------------------------------------------------------------------
// Focal decomposition (single binary operation)

/// t = m1 * (m2 * ( ... (mk * focal))).
struct FocalDecomposition {
  std::vector<Term> multipliers;
  std::string focal;
};

FocalDecomposition focal_decompose(const Term& t);

/// Recursive focal equivalence: if either side has a single variable, both
/// must be that variable; otherwise equal focals, equally many multipliers,
/// and every multiplier on each side equivalent to some multiplier on the
/// other side.
bool focally_equivalent(const Term& t, const Term& u);

// ---------------------------------------------------------------------------
// Enumeration over one binary operation

/// Shapes with exactly `leaves` leaves, every leaf the variable `_`. Ordered
/// by size of the left subtree, then recursively.
std::vector<Term> binary_shapes(std::size_t leaves, const std::string& op);

/// Terms with 1..max_leaves leaves over `vars`: by leaf count, then shape,
/// then leaf labels lexicographically (in the order of `vars`).
std::vector<Term> enumerate_terms(std::size_t max_leaves,
                                  std::span<const std::string> vars,
                                  const std::string& op, bool linear_only);

/// Every identity t = u with 1..max_leaves leaves per side, once per
/// renaming class: leaf labels form a restricted growth string over the
/// leaves of t followed by those of u, with variables named x, y, z, u, v,
/// w, p, q (then x9, x10, ...).
void for_each_identity(std::size_t max_leaves, const std::string& op,
                       bool linear_only,
                       const std::function<void(const Identity&)>& visit);

}  // namespace entropica
