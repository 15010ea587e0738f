#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entropica/signature.hpp"
#include "entropica/subset.hpp"
#include "entropica/term.hpp"

namespace entropica {

/// Finite algebra with dense operation tables. The table of a k-ary
/// operation has n^k entries; the entry for (a1, ..., ak) sits at index
/// a1*n^(k-1) + ... + ak (last argument varies fastest).
class Algebra {
 public:
  Algebra() = default;
  /// Validates sizes, entry ranges and element names (nonempty, distinct,
  /// no whitespace or '#'). Throws PreconditionError.
  Algebra(std::string name, std::vector<std::string> elements, Signature sig,
          std::vector<std::vector<Elem>> tables);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::string>& element_names() const noexcept { return elements_; }
  const std::string& element_name(Elem e) const { return elements_.at(e); }
  std::optional<Elem> element(std::string_view name) const;

  const Signature& signature() const noexcept { return sig_; }
  const std::vector<Elem>& table(std::size_t op) const { return tables_.at(op); }

  /// Index of the named operation; throws SignatureError if absent.
  std::size_t op_index(std::string_view name) const;

  Elem apply(std::size_t op, std::span<const Elem> args) const;
  Elem apply(std::size_t op, std::initializer_list<Elem> args) const {
    return apply(op, std::span<const Elem>(args.begin(), args.size()));
  }
  Elem binary(std::size_t op, Elem a, Elem b) const noexcept {
    return tables_[op][a * elements_.size() + b];
  }

  /// Groupoid multiplication; only meaningful when the signature is a
  /// single binary operation.
  Elem mul(Elem a, Elem b) const noexcept { return tables_[0][a * elements_.size() + b]; }

  bool is_groupoid() const noexcept { return sig_.is_groupoid(); }

  Algebra renamed(std::string name) const;

  friend bool operator==(const Algebra&, const Algebra&) = default;

 private:
  std::string name_;
  std::vector<std::string> elements_;
  Signature sig_;
  std::vector<std::vector<Elem>> tables_;
};

/// Variable valuation; keeps insertion order.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<std::string, Elem>> bindings);

  void set(const std::string& var, Elem value);
  std::optional<Elem> get(std::string_view var) const;
  const std::vector<std::pair<std::string, Elem>>& bindings() const noexcept { return bindings_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::pair<std::string, Elem>> bindings_;
};

/// `x=a, y=b` with element names of `A`.
std::string to_string(const Assignment& v, const Algebra& A);

/// A term compiled against an algebra and a fixed variable order; evaluates
/// without allocation given a scratch stack.
class CompiledTerm {
 public:
  /// Throws SignatureError for unknown operations or arity mismatch and
  /// UnboundVariable for variables missing from `vars`.
  CompiledTerm(const Algebra& A, const Term& t, std::span<const std::string> vars);

  Elem operator()(std::span<const Elem> values, std::vector<Elem>& stack) const;
  Elem operator()(std::span<const Elem> values) const {
    std::vector<Elem> stack;
    return (*this)(values, stack);
  }

 private:
  struct Instr {
    std::uint32_t op;      // operation index, or variable slot
    std::uint32_t arity;   // 0xFFFFFFFF marks a variable
  };
  const Algebra* A_;
  std::vector<Instr> code_;
};

Elem eval(const Algebra& A, const Term& t, const Assignment& v);

/// Lexicographically least failing assignment, variables taken in order of
/// first occurrence in lhs then rhs and elements in index order.
std::optional<Assignment> counterexample(const Algebra& A, const Identity& id);
bool holds(const Algebra& A, const Identity& id);

/// Cartesian product; element names are tuples "(a,b)" and the first factor
/// is most significant. Throws PreconditionError on an empty list and
/// SignatureError on differing signatures.
Algebra product(std::span<const Algebra> factors);

/// Restriction to a nonempty subuniverse, elements keep their names.
Algebra induced_subalgebra(const Algebra& A, const Subset& S);

/// `h[i]` is the image of element i.
bool is_homomorphism(const Algebra& A, const Algebra& B, std::span<const Elem> h);

/// x o y = y * x. Groupoids only.
Algebra dual(const Algebra& A);

struct StructuralFlags {
  bool idempotent = false;
  /// The following four range over the binary operations.
  bool commutative = false;
  bool associative = false;
  bool left_cancellative = false;
  bool right_cancellative = false;
  /// Least e with e*x = x (resp. x*e = x) for every binary operation.
  std::optional<Elem> left_unit;
  std::optional<Elem> right_unit;
  /// Least e that is a unit for every operation: f(e,..,x,..,e) = x in each
  /// position (constants impose nothing).
  std::optional<Elem> unit;
  /// Least unit for each operation separately.
  std::vector<std::optional<Elem>> op_units;
};

StructuralFlags structural_flags(const Algebra& A);

}  // namespace entropica
