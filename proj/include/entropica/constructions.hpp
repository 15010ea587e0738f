#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "entropica/algebra.hpp"
#include "entropica/gep.hpp"

namespace entropica {

/// Blocks of element names; must be disjoint and nonempty.
using Partition = std::vector<std::vector<std::string>>;

/// x*y = x if x and y share a block, y otherwise. Elements in block order.
/// Throws PreconditionError for overlapping or empty blocks.
Algebra equivalence_algebra(const Partition& blocks, std::string name = "equiv");

struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;  // directed
  /// Adds both directions of every edge.
  Graph undirected() const;
  /// Adds a loop at every vertex.
  Graph with_loops() const;
};

/// x*y = x if (x, y) is an edge, 0 otherwise, on the vertices followed by an
/// absorbing element "0". Throws PreconditionError for unknown vertices or a
/// vertex named "0".
Algebra graph_algebra(const Graph& G, std::string name = "graph");

/// 2x2 matrix over GF(p), row-major.
struct Mat2 {
  std::array<int, 4> e{};
  int p = 2;

  static Mat2 identity(int p);
  static Mat2 scalar(int p, int c);
  int trace() const { return (e[0] + e[3]) % p; }
  int det() const;
  Mat2 operator+(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 operator*(const Mat2& o) const;
  /// Throws PreconditionError when singular.
  Mat2 inverse() const;
  std::array<int, 2> apply(std::array<int, 2> v) const;
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// "[a b; c d]".
std::string to_string(const Mat2& m);

/// Matrices with determinant 1 and trace 1, scanned with entries in
/// lexicographic order. Throws PreconditionError unless p is a prime <= 7.
std::vector<Mat2> trace_det_matrices(int p);

struct AffineModule {
  Algebra algebra;
  /// Matrix of the operation r<i>.
  std::vector<Mat2> manifest;
};

/// On GF(p)^2 with elements named by their coordinates ("01" is (0, 1)),
/// one binary operation r<i>(x, y) = (1 - r)x + ry per matrix.
AffineModule affine_module_algebra(int p, const std::vector<Mat2>& X, std::string name = "M");

/// Index of the basic operation whose matrix is m.
std::size_t matrix_op(const AffineModule& M, const Mat2& m);

/// The two witnesses of the generalized entropic property for the pair of
/// basic operations (r, t): s1 = (1-r)^-1 t (1-r) and s2 = r^-1 t r. Throws
/// PreconditionError if r or 1-r is singular or a result is not a basic
/// operation.
std::array<std::size_t, 2> conjugation_witness(const AffineModule& M, std::size_t r, std::size_t t);

/// Z_n with +, unary - and 0.
Algebra cyclic_group(std::size_t n, std::string name = "");

/// The symmetric group on 3 points as a groupoid, elements in the order
/// id, (1 2), (1 3), (2 3), (1 2 3), (1 3 2), product p*q = p o q.
Algebra symmetric_group3();

/// Loop (*, /, \, e) from a groupoid with a two-sided unit whose table is a
/// Latin square. Throws PreconditionError otherwise.
Algebra loop_from_groupoid(const Algebra& G);

/// G with a new unit element "e". Groupoids only.
Algebra adjoin_unit(const Algebra& G, std::string unit_name = "e");

/// Unary algebra on points 1..n with one operation per permutation, named
/// f0, f1, ... Throws PreconditionError unless the list is closed under
/// inverses.
Algebra unary_permutation_algebra(std::size_t n, const std::vector<Permutation>& perms,
                                  std::string name = "B");

/// Named examples; `example_algebra` throws PreconditionError for an unknown
/// name.
std::vector<std::string> example_names();
Algebra example_algebra(const std::string& name);
/// One-line description of a named example.
std::string example_description(const std::string& name);

}  // namespace entropica
