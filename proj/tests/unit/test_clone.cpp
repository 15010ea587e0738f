#include <gtest/gtest.h>

#include "entropica/clone.hpp"
#include "entropica/complex.hpp"
#include "entropica/constructions.hpp"
#include "entropica/errors.hpp"
#include "support.hpp"

using namespace entropica;
using namespace entropica::testing;

namespace {

// Fixpoint of pointwise application, starting from the projections; tables
// kept in a set, so no ordering or witness logic is shared with the library.
std::set<std::vector<Elem>> naive_clone(const Algebra& A, std::size_t k) {
  const std::size_t n = A.size();
  std::size_t rows = 1;
  for (std::size_t i = 0; i < k; ++i) rows *= n;
  std::set<std::vector<Elem>> out;
  for (std::size_t v = 0; v < k; ++v) {
    std::vector<Elem> t(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t q = r;
      for (std::size_t j = k; j-- > v + 1;) q /= n;
      t[r] = static_cast<Elem>(q % n);
    }
    out.insert(t);
  }
  for (std::size_t op = 0; op < A.signature().size(); ++op)
    if (A.signature()[op].arity == 0) out.insert(std::vector<Elem>(rows, A.apply(op, {})));
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<std::vector<Elem>> cur(out.begin(), out.end());
    for (std::size_t op = 0; op < A.signature().size(); ++op) {
      const std::size_t ar = A.signature()[op].arity;
      if (ar == 0) continue;
      std::vector<std::size_t> idx(ar, 0);
      while (true) {
        std::vector<Elem> t(rows), args(ar);
        for (std::size_t r = 0; r < rows; ++r) {
          for (std::size_t i = 0; i < ar; ++i) args[i] = cur[idx[i]][r];
          t[r] = A.apply(op, args);
        }
        grew = out.insert(t).second || grew;
        std::size_t i = ar;
        while (i > 0 && ++idx[i - 1] == cur.size()) idx[--i] = 0;
        if (i == 0) break;
      }
    }
  }
  return out;
}

}  // namespace

TEST(Clone, G1BinaryClone) {
  const Clone C = clone(example_algebra("g1"), 2);
  EXPECT_TRUE(C.complete);
  std::vector<std::string> w;
  for (const auto& e : C.elements) w.push_back(to_string(e.witness));
  EXPECT_EQ(w, (std::vector<std::string>{"x", "y", "x*y", "y*x"}));
}

TEST(Clone, UnaryCloneOfIdempotentGroupoid) {
  auto rng = engine(41);
  for (int round = 0; round < 50; ++round)
    EXPECT_EQ(clone(random_groupoid(rng, 2 + pick(rng, 3), true), 1).size(), 1u);
}

TEST(Clone, Z2BinaryClone) {
  const Clone C = clone(cyclic_group(2), 2);
  EXPECT_EQ(C.size(), 4u);
}

TEST(Clone, MatchesFixpointOracle) {
  auto rng = engine(42);
  for (int round = 0; round < 60; ++round) {
    const std::size_t k = 1 + pick(rng, 2);
    const std::size_t n = k == 1 ? 3 + pick(rng, 2) : 2;
    const Algebra A = pick(rng, 2) ? random_groupoid(rng, n) : random_mixed(rng, n);
    const Clone C = clone(A, k);
    const auto oracle = naive_clone(A, k);
    ASSERT_EQ(C.size(), oracle.size());
    for (const auto& e : C.elements) EXPECT_TRUE(oracle.count(e.table));
  }
}

TEST(Clone, WitnessesReproduceTables) {
  auto rng = engine(43);
  for (int round = 0; round < 40; ++round) {
    const Algebra A = pick(rng, 2) ? random_groupoid(rng, 2) : random_mixed(rng, 2);
    const Clone C = clone(A, 2 + pick(rng, 2));
    for (const auto& e : C.elements) EXPECT_EQ(term_op(A, e.witness, C.variables).table, e.table);
  }
  const Algebra m9 = example_algebra("m9");
  const Clone C = clone(m9, 2);
  for (const auto& e : C.elements) EXPECT_EQ(term_op(m9, e.witness, C.variables).table, e.table);
}

TEST(Clone, ClosedUnderOperations) {
  auto rng = engine(44);
  for (int round = 0; round < 30; ++round) {
    const Algebra A = random_groupoid(rng, 2 + pick(rng, 2), true);
    const Clone C = clone(A, 2);
    for (const auto& a : C.elements)
      for (const auto& b : C.elements) {
        std::vector<Elem> t(a.table.size());
        for (std::size_t r = 0; r < t.size(); ++r) t[r] = A.mul(a.table[r], b.table[r]);
        EXPECT_TRUE(C.find(t));
      }
  }
}

TEST(Clone, DepthBoundGivesPrefix) {
  const Algebra A = example_algebra("m9");
  const Clone full = clone(A, 2);
  CloneOptions o;
  o.max_depth = 1;
  o.truncate = true;
  const Clone part = clone(A, 2, o);
  EXPECT_FALSE(part.complete);
  ASSERT_LT(part.size(), full.size());
  for (std::size_t i = 0; i < part.size(); ++i) EXPECT_EQ(part.elements[i].table, full.elements[i].table);
}

TEST(Clone, BudgetThrowsWithPartialCount) {
  CloneOptions o;
  o.max_elements = 5;
  try {
    clone(example_algebra("m9"), 2, o);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_GE(e.partial(), 5u);
  }
}

TEST(Clone, FreeAlgebras) {
  const Algebra g1[] = {example_algebra("g1")};
  EXPECT_EQ(free_algebra(g1, 2).algebra.size(), 4u);
  const Algebra eq[] = {equivalence_algebra({{"a", "b"}}), equivalence_algebra({{"a"}, {"b"}})};
  const FreeAlgebra F = free_algebra(eq, 2);
  EXPECT_EQ(F.algebra.element_names(), (std::vector<std::string>{"x", "y", "x*y", "y*x"}));
  EXPECT_EQ(F.generators, (std::vector<Elem>{0, 1}));
  const Graph none{{"a", "b"}, {}}, edge{{"a", "b"}, {{"a", "b"}}};
  const Algebra graphs[] = {graph_algebra(Graph{}), graph_algebra(Graph{{"a"}, {}}.with_loops()),
                            graph_algebra(none.with_loops()), graph_algebra(edge.undirected().with_loops())};
  EXPECT_EQ(free_algebra(graphs, 2).algebra.size(), 4u);
}

TEST(Clone, FreeAlgebraIdentityTransfer) {
  auto rng = engine(45);
  const std::vector<std::string> vars = {"x", "y", "z"};
  for (int round = 0; round < 8; ++round) {
    const Algebra A[] = {random_groupoid(rng, 2, true)};
    const FreeAlgebra F = free_algebra(A, 3);
    for (int i = 0; i < 25; ++i) {
      const Identity id = random_identity(rng, vars, 3);
      EXPECT_EQ(holds(F.algebra, id), holds(A[0], id)) << to_string(id);
    }
  }
}

TEST(Clone, G1FreeAlgebraNonClosure) {
  const Algebra g1[] = {example_algebra("g1")};
  const FreeAlgebra F = free_algebra(g1, 3);
  const Algebra& A = F.algebra;
  const std::size_t n = A.size();
  const Elem x = F.generators[0], y = F.generators[1], z = F.generators[2];
  const Subset a = sg_closure(A, Subset(n, {x, y})), b = sg_closure(A, Subset(n, {z}));
  EXPECT_EQ(a.count(), 4u);
  EXPECT_EQ(b, Subset(n, {z}));
  const Subset ab_args[] = {a, b};
  const Subset ab = complex_apply(A, 0, ab_args);
  const Subset aba_args[] = {ab, a};
  const Subset W = complex_apply(A, 0, aba_args);
  const auto element = [&](const char* term) {
    const auto op = term_op(g1[0], parse_term(term), F.clone.variables);
    return static_cast<Elem>(*F.clone.find(op.table));
  };
  EXPECT_TRUE(W.contains(element("((y*x)*z)*y")));
  EXPECT_TRUE(W.contains(element("(x*z)*x")));
  EXPECT_EQ(element("(x*z)*x"), x);
  EXPECT_FALSE(W.contains(element("(((y*x)*z)*y)*x")));
  EXPECT_FALSE(is_sub_closed(A).closed);
}

TEST(Clone, EveryBinaryTermLinear) {
  EXPECT_TRUE(every_binary_term_linear(example_algebra("g1")));
  const Algebra eq[] = {equivalence_algebra({{"a", "b"}}), equivalence_algebra({{"a"}, {"b"}})};
  EXPECT_TRUE(every_binary_term_linear(product(eq)));
  const Algebra z3 = cyclic_group(3);
  const Algebra plus("Z3", z3.element_names(), Signature::groupoid(), {z3.table(0)});
  EXPECT_FALSE(every_binary_term_linear(plus));
}
