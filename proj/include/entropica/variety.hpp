#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entropica/algebra.hpp"
#include "entropica/clone.hpp"
#include "entropica/gep.hpp"
#include "entropica/term.hpp"

namespace entropica {

// Identities of the varieties generated by complex algebras of members of
// V = V(A), for a single finite algebra A. Every statement "holds in V"
// below is "holds in A".

/// A precursor t* = s~ for the ordered pair (t, s). Variables x_1..x_n are
/// those of t then s in order of first occurrence; k_i counts x_i in t (1 if
/// absent) and l_i counts x_i in s. `r[i][j]` is a k_i-ary term operation
/// and s~ substitutes r_ij(x_i_1, .., x_i_k) for the j-th occurrence of x_i
/// in s.
struct PrecursorWitness {
  std::vector<std::string> variables;
  std::vector<std::size_t> k;
  std::vector<std::size_t> l;
  std::vector<std::vector<CloneElement>> r;
  Term t_star = Term::variable("x");
  Term s_tilde = Term::variable("x");
};

/// Builds t* and s~ from the r_ij. Throws PreconditionError when the shape
/// or arities of `r` do not fit (t, s).
PrecursorWitness make_precursor(const Term& t, const Term& s,
                                std::vector<std::vector<CloneElement>> r);

/// Whether t* = s~ holds in A.
bool check_precursor(const Algebra& A, const Term& t, const Term& s,
                     const std::vector<std::vector<CloneElement>>& r);

struct PrecursorSearch {
  Verdict verdict = Verdict::unknown;  // holds: found, fails: exhausted
  std::optional<PrecursorWitness> witness;
  std::size_t tried = 0;
};

/// Tries the r_ij over the clones of arity k_i (they only matter as term
/// operations, so exhausting them is a proof). Candidates run through the
/// product of the clone orders, lexicographically with r_11 most
/// significant. Hitting the clone budget or `max_candidates` gives unknown.
PrecursorSearch search_precursor(const Algebra& A, const Term& t, const Term& s,
                                 const CloneOptions& clone_options = {},
                                 std::size_t max_candidates = 50'000'000);

struct SubVResult {
  Verdict verdict = Verdict::unknown;
  PrecursorSearch forward;   // pair (t, s)
  PrecursorSearch backward;  // pair (s, t)
};

/// Decides whether the identity holds in the variety generated by the
/// algebras Sub(B), B in V(A): precursors must exist for both (t, s) and
/// (s, t). Throws PreconditionError when V(A) fails the generalized
/// entropic property; unknown when that cannot be settled in budget.
SubVResult sub_v_satisfies(const Algebra& A, const Identity& id, const GepOptions& gep = {});

/// A linear identity and a renaming of its variables onto those of the
/// identity being decided.
struct IdentificationWitness {
  Identity linear;
  std::map<std::string, std::string> sigma;
};

struct GlobVResult {
  Verdict verdict = Verdict::unknown;
  std::optional<IdentificationWitness> witness;
  std::size_t tried = 0;
};

/// Decides whether the identity holds in the variety generated by the
/// algebras Glob(B), B in V(A): some linear identity true in A must yield it
/// by identifying variables. Candidates share a variable between a leaf of t
/// and a leaf of u carrying the same variable; identifying more only weakens
/// a linear identity, so maximal sharings suffice. More than `max_leaves`
/// leaves in total gives unknown.
GlobVResult glob_v_satisfies(const Algebra& A, const Identity& id, std::size_t max_leaves = 12);

}  // namespace entropica
