#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entropica/algebra.hpp"
#include "entropica/term.hpp"

namespace entropica {

/// A k-ary term operation: its full value table (n^k entries, first
/// variable most significant) and a term producing it.
struct CloneElement {
  std::size_t arity = 0;
  std::vector<Elem> table;
  Term witness = Term::variable("x");
  std::size_t depth = 0;
};

/// Cell budget from ENTROPICA_BUDGET, else 10^7.
std::size_t default_cell_budget();

struct CloneOptions {
  std::size_t max_elements = std::numeric_limits<std::size_t>::max();
  std::size_t max_depth = std::numeric_limits<std::size_t>::max();
  /// Bound on (number of elements) * n^k.
  std::size_t cell_budget = default_cell_budget();
  /// On hitting a bound, return what was found instead of throwing.
  bool truncate = false;
};

/// The k-ary clone, in breadth-first order: projections first, then each
/// round applies the operations (in signature order) to argument tuples in
/// lexicographic order that use at least one element of the previous round.
/// A table is kept with the first term that produced it.
struct Clone {
  std::size_t arity = 0;
  std::vector<std::string> variables;
  std::vector<CloneElement> elements;
  /// False if a bound stopped the search before a fixpoint.
  bool complete = true;

  std::size_t size() const noexcept { return elements.size(); }
  std::optional<std::size_t> find(std::span<const Elem> table) const;
};

/// x; x, y; x, y, z; otherwise x1, ..., xk.
std::vector<std::string> clone_variables(std::size_t k);

/// Throws BudgetExceeded (partial = elements found) unless `truncate` is set.
Clone clone(const Algebra& A, std::size_t k, const CloneOptions& options = {});

/// Table of `t` read as an operation in the variables `vars`.
CloneElement term_op(const Algebra& A, const Term& t, std::span<const std::string> vars);

/// Algebra whose elements are the clone's elements, named by their witness
/// terms, with operations applied pointwise. The clone must be complete.
Algebra clone_algebra(const Algebra& A, const Clone& C, std::string name);

struct FreeAlgebra {
  Algebra algebra;
  Clone clone;
  /// Indices of the free generators (the projections).
  std::vector<Elem> generators;
};

/// Free algebra on k generators in the variety generated by `generators`,
/// computed as the k-ary clone of their product.
FreeAlgebra free_algebra(std::span<const Algebra> generators, std::size_t k,
                         const CloneOptions& options = {});

/// Every binary term operation of a groupoid is one of x, y, xy, yx.
bool every_binary_term_linear(const Algebra& A);

}  // namespace entropica
