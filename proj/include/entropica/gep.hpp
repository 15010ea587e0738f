#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entropica/algebra.hpp"
#include "entropica/clone.hpp"
#include "entropica/term.hpp"

namespace entropica {

enum class Verdict { holds, fails, unknown };

std::string_view to_string(Verdict v);

// ---------------------------------------------------------------------------
// Entropy

/// g(f(x11,..,xn1), .., f(x1m,..,xnm)) = f(g(x11,..,x1m), .., g(xn1,..,xnm)).
/// For two binary operations the variables are x, y, u, v (x11, x21, x12,
/// x22), giving (x*y)*(u*v) = (x*u)*(y*v).
Identity entropic_identity(const Signature& sig, std::size_t f, std::size_t g);

struct EntropyCounterexample {
  std::size_t f = 0;
  std::size_t g = 0;
  Identity identity;
  Assignment assignment;
  Elem lhs = 0;
  Elem rhs = 0;
};

/// First failing ordered pair (f, g) in signature order, with the least
/// failing assignment.
std::optional<EntropyCounterexample> entropy_counterexample(const Algebra& A);
bool is_entropic(const Algebra& A);

/// The term with variables replaced by element names, e.g. "(a*a)*(b*a)".
std::string instantiate(const Algebra& A, const Term& t, const Assignment& v);

// ---------------------------------------------------------------------------
// Generalized entropic property

/// The GEP identity for (f, g) with the given m-ary terms over `vars`.
Identity gep_identity(const Signature& sig, std::size_t f, std::size_t g,
                      std::span<const Term> ts, std::span<const std::string> vars);

/// Exhaustive check of the GEP identity for (f, g) with terms t_1..t_n given
/// as m-ary operations. Throws PreconditionError on arity mismatch.
bool check_gep_witness(const Algebra& A, std::size_t f, std::size_t g,
                       std::span<const CloneElement> ts);
/// Same, with terms whose variables are read in the order of `vars`.
bool check_gep_witness(const Algebra& A, std::size_t f, std::size_t g,
                       std::span<const Term> ts, std::span<const std::string> vars);

/// The search problem for one pair (f n-ary, g m-ary). Each candidate t_i is
/// an m-ary table; cell c encodes a row (a1, .., am) in base n, a1 most
/// significant. Construction prunes, for every cell of every t_i, the values
/// that cannot occur in any solution where t_i(r) lies in the subuniverse
/// generated by r (generalized arc consistency). Since term operations
/// satisfy that, an empty domain proves there is no witness at all.
class GepPairSearch {
 public:
  /// Throws PreconditionError for algebras with more than 64 elements and
  /// BudgetExceeded when the constraint table gets too large.
  GepPairSearch(const Algebra& A, std::size_t f, std::size_t g);

  std::size_t f() const noexcept { return f_; }
  std::size_t g() const noexcept { return g_; }
  std::size_t outer_arity() const noexcept { return n_; }
  std::size_t inner_arity() const noexcept { return m_; }

  bool relaxed_feasible() const noexcept { return feasible_; }

  /// Table fits the pruned domains of position i.
  bool admits(std::size_t i, std::span<const Elem> table) const;

  /// Clone indices admitted at each position, ascending.
  std::vector<std::vector<std::size_t>> candidates(const Clone& C) const;

  /// First solution over the given candidate lists (clone indices,
  /// ascending), ordered by largest index used, then lexicographically.
  std::optional<std::vector<std::size_t>> first_witness(
      const Clone& C, const std::vector<std::vector<std::size_t>>& lists) const;

  /// Some solution uses the same clone element at every position.
  std::optional<std::size_t> uniform_witness(const Clone& C,
                                             const std::vector<std::size_t>& list) const;

  bool check(std::span<const std::vector<Elem>* const> tables) const;

 private:
  std::uint64_t needed_last(std::span<const Elem* const> prefix, std::size_t cell) const;

  const Algebra* A_;
  std::size_t f_, g_, n_, m_, s_;
  std::size_t cells_;                    // s^m
  std::vector<Elem> lhs_;                // indexed by (c1, .., cn)
  std::vector<std::vector<std::uint64_t>> domains_;  // [position][cell]
  bool feasible_ = true;
};

struct GepMode {
  enum class Kind { basic_ops, depth_bounded, full_clone };
  Kind kind = Kind::full_clone;
  std::size_t depth = 0;

  static GepMode basic() { return {Kind::basic_ops, 0}; }
  static GepMode bounded(std::size_t d) { return {Kind::depth_bounded, d}; }
  static GepMode full() { return {Kind::full_clone, 0}; }
};

std::string to_string(const GepMode& mode);

struct GepOptions {
  GepMode mode = GepMode::full();
  CloneOptions clone;
  /// Skip the remaining pairs once one fails.
  bool stop_at_failure = false;
};

struct GepPairResult {
  std::size_t f = 0;
  std::size_t g = 0;
  Verdict verdict = Verdict::unknown;
  /// t_1..t_n when the verdict is holds.
  std::vector<CloneElement> witness;
  /// Candidates considered at the first position.
  std::size_t candidates = 0;
  /// Failure was shown without the clone.
  bool refuted_by_domains = false;
};

struct GepReport {
  GepMode mode;
  Verdict verdict = Verdict::unknown;
  std::vector<GepPairResult> pairs;
  /// Every clone used was complete.
  bool clones_complete = true;
};

/// Searches a witness for every ordered pair of operations. Candidates are
/// projections and basic operations (basic_ops), clone elements up to a
/// depth (depth_bounded), or the whole clone (full_clone). Only a complete
/// full clone lets a pair fail; otherwise an unsuccessful search is unknown.
/// For a variety generated by several algebras, search their product.
GepReport search_gep(const Algebra& A, const GepOptions& options = {});

// ---------------------------------------------------------------------------
// Groupoid identities

struct PseudoDistributivity {
  bool g1 = false;  // xy.uv = t(x,u).s(y,v)
  bool g2 = false;  // xy.xz = x.s(y,z)
  bool g3 = false;  // yx.zx = t(y,z).x
  bool g4 = false;  // x.yz = t(x,y).s(x,z)
  bool g5 = false;  // yz.x = t(y,x).s(z,x)
};

/// t and s are binary terms in x, y.
PseudoDistributivity pseudo_distributivity(const Algebra& A, const Term& t, const Term& s);

/// xy.uv = (xy.uy)(xv.uv) and xy.uv = (xy.xv)(uy.uv).
std::array<Identity, 2> cross_identities(const std::string& op = "*");
bool satisfies_cross_identities(const Algebra& A);

// ---------------------------------------------------------------------------
// Permutations of {1, .., degree}

using Permutation = std::vector<std::uint8_t>;  // image of i at index i-1

/// Cycle notation, e.g. "(1 3 2)", "(1 2)(3 4)", "(1,2)", "()" or "id".
/// Throws ParseError for malformed input or points outside 1..degree.
Permutation parse_permutation(std::string_view src, std::size_t degree = 4);
std::string to_string(const Permutation& p);

/// (p * q)(i) = p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);

/// Subgroup generated by `gens`, sorted.
std::vector<Permutation> generated_subgroup(std::span<const Permutation> gens, std::size_t degree = 4);

/// The groupoid identity x1x2.x3x4 = x_p1 x_p2 . x_p3 x_p4.
Identity permutation_identity(const Permutation& p);

/// Whether the variety defined by the identities of `gens` is entropic,
/// i.e. whether (2 3) lies in the generated subgroup of S4.
bool permutation_entropy_test(std::span<const Permutation> gens);

// ---------------------------------------------------------------------------
// Loops: signature (*, /, \, e)

struct LoopTrichotomy {
  Verdict gep = Verdict::unknown;
  bool entropic = false;
  bool abelian_group = false;
};

/// Throws SignatureError for another signature and PreconditionError if the
/// loop axioms fail.
LoopTrichotomy loop_trichotomy(const Algebra& A, const GepOptions& options = {});

}  // namespace entropica
