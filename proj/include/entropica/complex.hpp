#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entropica/algebra.hpp"
#include "entropica/subset.hpp"

namespace entropica {

/// `{a,c}` with element names of `A`.
std::string subset_name(const Algebra& A, const Subset& S);

/// f(S1, ..., Sk) = { f(a1, ..., ak) : ai in Si }. Arguments must be
/// nonempty.
Subset complex_apply(const Algebra& A, std::size_t op, std::span<const Subset> args);

/// Least subuniverse containing S. Empty only if S is empty and there are no
/// constants.
Subset sg_closure(const Algebra& A, const Subset& S);

/// All subuniverses in cardinality-then-mask order. The empty set is included
/// only when `nonempty` is false and it is a subuniverse. Throws
/// BudgetExceeded once more than `max_count` have been found.
std::vector<Subset> all_subuniverses(const Algebra& A, bool nonempty = true,
                                     std::size_t max_count = 1u << 20);

/// Subuniverses generated by at most `k` elements, nonempty, sorted.
std::vector<Subset> small_subuniverses(const Algebra& A, std::size_t k);

struct SubClosureWitness {
  std::size_t outer_op = 0;
  std::vector<Subset> arguments;
  Subset image;
  std::size_t inner_op = 0;
  std::vector<Elem> inner_arguments;
  Elem result = 0;
};

struct SubClosureReport {
  bool closed = true;
  std::optional<SubClosureWitness> witness;
};

/// Decides whether the nonempty subuniverses are closed under complex
/// operations. A failure, if any, already shows up among subuniverses
/// generated by at most max-arity elements (shrink each argument to the
/// subuniverse generated by the elements used by the witness), so only those
/// are tried, as tuples in lexicographic order.
SubClosureReport is_sub_closed(const Algebra& A);

/// Complex algebra of the nonempty subuniverses, named "Sub(<name>)".
/// Throws PreconditionError if they are not closed.
Algebra sub_algebra(const Algebra& A);

/// Complex algebra of all nonempty subsets, named "Glob(<name>)". Throws
/// BudgetExceeded if the algebra has more than `size_cap` elements.
Algebra glob_algebra(const Algebra& A, std::size_t size_cap = 12);

struct SquareEmbedding {
  /// x -> index of {x, x*x} in sub_algebra(A); empty on failure.
  std::optional<std::vector<Elem>> map;
  std::string reason;
};

/// Tries x -> {x, x*x} into Sub(A), using the sole binary operation.
SquareEmbedding square_embedding(const Algebra& A);

}  // namespace entropica
