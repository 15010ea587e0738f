#include <gtest/gtest.h>

#include <deque>

#include "entropica/clone.hpp"
#include "entropica/complex.hpp"
#include "entropica/constructions.hpp"
#include "entropica/errors.hpp"
#include "entropica/gep.hpp"
#include "support.hpp"

using namespace entropica;
using namespace entropica::testing;

namespace {

Verdict full(const Algebra& A) {
  GepOptions o;
  o.stop_at_failure = true;
  return search_gep(A, o).verdict;
}

// Exhaustive search over all pairs of binary clone elements, bypassing the
// pruned domains.
bool naive_gep_groupoid(const Algebra& A) {
  const Clone C = clone(A, 2);
  for (const auto& t : C.elements)
    for (const auto& s : C.elements) {
      const CloneElement w[] = {t, s};
      if (check_gep_witness(A, 0, 0, w)) return true;
    }
  return false;
}

std::string digest_of(const Algebra& A) {
  std::string s;
  for (Elem e : A.table(0)) s += static_cast<char>('0' + e);
  return s;
}

std::size_t bfs_group_size(const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation{1, 2, 3, 4}};
  std::deque<Permutation> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    const Permutation p = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Permutation q(4);
      for (std::size_t i = 0; i < 4; ++i) q[i] = p[g[i] - 1];
      if (seen.insert(q).second) queue.push_back(q);
    }
  }
  return seen.size();
}

}  // namespace

TEST(Entropy, G1Witness) {
  const Algebra g1 = example_algebra("g1");
  const auto cx = entropy_counterexample(g1);
  ASSERT_TRUE(cx);
  EXPECT_EQ(instantiate(g1, cx->identity.lhs, cx->assignment), "(a*a)*(b*a)");
  EXPECT_EQ(g1.element_name(cx->lhs), "c");
  EXPECT_EQ(instantiate(g1, cx->identity.rhs, cx->assignment), "(a*b)*(a*a)");
  EXPECT_EQ(g1.element_name(cx->rhs), "a");
}

TEST(Entropy, Examples) {
  EXPECT_TRUE(is_entropic(cyclic_group(3)));
  EXPECT_TRUE(is_entropic(cyclic_group(5)));
  EXPECT_FALSE(is_entropic(example_algebra("m9")));
  EXPECT_EQ(to_string(entropic_identity(Signature::groupoid(), 0, 0)), "(x*y)*(u*v) = (x*u)*(y*v)");
}

TEST(Entropy, MatchesMedialLaw) {
  auto rng = engine(51);
  const Identity medial = parse_identity("(x*y)*(u*v) = (x*u)*(y*v)");
  for (int round = 0; round < 300; ++round) {
    const Algebra A = random_groupoid(rng, 2 + pick(rng, 2));
    EXPECT_EQ(is_entropic(A), naive_holds(A, medial));
  }
}

TEST(Gep, WitnessCheck) {
  const Algebra g1 = example_algebra("g1");
  const Term ts[] = {parse_term("x*y"), parse_term("x*y")};
  const std::vector<std::string> xy = {"x", "y"};
  EXPECT_FALSE(check_gep_witness(g1, 0, 0, ts, xy));
  auto rng = engine(52);
  for (int round = 0; round < 50; ++round) {
    const Algebra A = random_mixed(rng, 2);
    if (!is_entropic(A)) continue;
    EXPECT_TRUE(check_gep_witness(A, 0, 0, ts, xy));
  }
  const Algebra z3 = cyclic_group(3);
  const Term plus[] = {parse_term("x+y", z3.signature()), parse_term("x+y", z3.signature())};
  EXPECT_TRUE(check_gep_witness(z3, 0, 0, plus, xy));
}

TEST(Gep, KnownVerdicts) {
  EXPECT_EQ(full(example_algebra("g1")), Verdict::fails);
  EXPECT_EQ(full(example_algebra("g2")), Verdict::fails);
  EXPECT_EQ(full(example_algebra("m9")), Verdict::holds);
  const GepReport r = search_gep(example_algebra("perm3"));
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_FALSE(is_entropic(example_algebra("perm3")));
}

TEST(Gep, UnaryPermutationWitnessIsConjugate) {
  const Algebra B = example_algebra("perm3");
  const GepReport r = search_gep(B);
  for (const auto& p : r.pairs) {
    ASSERT_EQ(p.verdict, Verdict::holds);
    ASSERT_EQ(p.witness.size(), 1u);
    // g(f(x)) = f(t(x)) with f invertible leaves t = f^-1 g f.
    const auto& f = B.table(p.f);
    const auto& g = B.table(p.g);
    std::vector<Elem> want(3);
    for (Elem x = 0; x < 3; ++x)
      for (Elem y = 0; y < 3; ++y)
        if (f[y] == g[f[x]]) want[x] = y;
    EXPECT_EQ(p.witness[0].table, want);
  }
}

TEST(Gep, EntropicImpliesBasicModeHolds) {
  auto rng = engine(53);
  std::size_t seen = 0;
  for (int round = 0; round < 400; ++round) {
    const Algebra A = random_groupoid(rng, 2 + pick(rng, 2));
    if (!is_entropic(A)) continue;
    ++seen;
    GepOptions o;
    o.mode = GepMode::basic();
    EXPECT_EQ(search_gep(A, o).verdict, Verdict::holds);
  }
  EXPECT_GT(seen, 5u);
}

TEST(Gep, FullSearchMatchesExhaustivePairs) {
  auto rng = engine(54);
  for (int round = 0; round < 60; ++round) {
    const bool idempotent = pick(rng, 2) == 0;
    const Algebra A = random_groupoid(rng, idempotent ? 3 : 2, idempotent);
    const Verdict v = full(A);
    ASSERT_NE(v, Verdict::unknown);
    EXPECT_EQ(v == Verdict::holds, naive_gep_groupoid(A)) << digest_of(A);
  }
}

TEST(Gep, ReportedWitnessesCheck) {
  auto rng = engine(55);
  for (int round = 0; round < 60; ++round) {
    const Algebra A = random_groupoid(rng, 3, true);
    const GepReport r = search_gep(A);
    for (const auto& p : r.pairs)
      if (p.verdict == Verdict::holds) EXPECT_TRUE(check_gep_witness(A, p.f, p.g, p.witness));
  }
}

TEST(Gep, PartialModesNeverFail) {
  auto rng = engine(56);
  for (int round = 0; round < 60; ++round) {
    const Algebra A = random_groupoid(rng, 3);
    for (const GepMode m : {GepMode::basic(), GepMode::bounded(1)}) {
      GepOptions o;
      o.mode = m;
      const Verdict v = search_gep(A, o).verdict;
      EXPECT_NE(v, Verdict::fails);
      if (v == Verdict::holds) EXPECT_EQ(full(A), Verdict::holds);
    }
  }
}

TEST(Gep, GepImpliesSubClosed) {
  auto rng = engine(57);
  for (int round = 0; round < 200; ++round) {
    const Algebra A = random_groupoid(rng, 3);
    if (full(A) == Verdict::holds) EXPECT_TRUE(is_sub_closed(A).closed);
  }
}

TEST(Gep, IdempotentWitnessTheorems) {
  // Linear witness or equal witnesses on an idempotent groupoid force entropy.
  auto rng = engine(58);
  const std::vector<std::string> xy = {"x", "y"};
  for (int round = 0; round < 80; ++round) {
    const Algebra A = random_groupoid(rng, 3, true);
    const Clone C = clone(A, 2);
    std::vector<std::vector<Elem>> linear;
    for (const char* t : {"x", "y", "x*y", "y*x"}) linear.push_back(term_op(A, parse_term(t), xy).table);
    for (const auto& t : C.elements)
      for (const auto& s : C.elements) {
        const CloneElement w[] = {t, s};
        if (!check_gep_witness(A, 0, 0, w)) continue;
        const bool lin = std::find(linear.begin(), linear.end(), t.table) != linear.end() ||
                         std::find(linear.begin(), linear.end(), s.table) != linear.end();
        if (lin || t.table == s.table) EXPECT_TRUE(is_entropic(A));
      }
  }
}

TEST(Gep, OneSidedUnitIdempotentForcesEntropy) {
  auto rng = engine(59);
  for (int round = 0; round < 3000; ++round) {
    const Algebra A = random_groupoid(rng, 3, true);
    const auto f = structural_flags(A);
    if (!f.left_unit && !f.right_unit) continue;
    if (!is_entropic(A)) EXPECT_EQ(full(A), Verdict::fails);
  }
}

TEST(Gep, AdjoinedUnit) {
  // ea.be = ab differs from ba = eb.ae.
  for (const char* name : {"leftzero2", "g1", "g2"}) {
    const Algebra G = adjoin_unit(example_algebra(name));
    EXPECT_FALSE(is_entropic(G)) << name;
    EXPECT_EQ(full(G), Verdict::fails) << name;
  }
}

TEST(Gep, PairSearchDomains) {
  const Algebra g1 = example_algebra("g1");
  const GepPairSearch s(g1, 0, 0);
  EXPECT_FALSE(s.relaxed_feasible());
  const Algebra m9 = example_algebra("m9");
  const GepPairSearch m(m9, 0, 1);
  EXPECT_TRUE(m.relaxed_feasible());
  const Clone C = clone(m9, 2);
  const auto lists = m.candidates(C);
  const auto w = m.first_witness(C, lists);
  ASSERT_TRUE(w);
  const CloneElement ts[] = {C.elements[(*w)[0]], C.elements[(*w)[1]]};
  EXPECT_TRUE(check_gep_witness(m9, 0, 1, ts));
}

TEST(Gep, PseudoDistributivity) {
  const Algebra rz("RZ", {"a", "b", "c"}, Signature::groupoid(), {{0, 1, 2, 0, 1, 2, 0, 1, 2}});
  const auto p = pseudo_distributivity(rz, parse_term("x*y"), parse_term("x*y"));
  EXPECT_TRUE(p.g1 && p.g2 && p.g3 && p.g4 && p.g5);
  const auto q = pseudo_distributivity(example_algebra("g2"), parse_term("x*y"), parse_term("x*y"));
  EXPECT_FALSE(q.g1);
}

TEST(Gep, CrossIdentities) {
  EXPECT_TRUE(satisfies_cross_identities(example_algebra("g2")));
  auto rng = engine(60);
  for (int round = 0; round < 300; ++round) {
    const Algebra A = random_groupoid(rng, 3, true);
    if (is_entropic(A)) EXPECT_TRUE(satisfies_cross_identities(A));
  }
  const Algebra g1 = example_algebra("g1");
  const auto ids = cross_identities();
  EXPECT_EQ(satisfies_cross_identities(g1), naive_holds(g1, ids[0]) && naive_holds(g1, ids[1]));
}

TEST(Permutations, ParseAndCompose) {
  EXPECT_EQ(to_string(parse_permutation("(1 3 2)")), "(1 3 2)");
  EXPECT_EQ(to_string(parse_permutation("(1,2)(3,4)")), "(1 2)(3 4)");
  EXPECT_EQ(to_string(parse_permutation("id")), "id");
  EXPECT_EQ(parse_permutation("()"), parse_permutation("id"));
  EXPECT_THROW(parse_permutation("(1 5)"), ParseError);
  EXPECT_THROW(parse_permutation("(1 2"), ParseError);
  const Permutation a = parse_permutation("(1 2)"), b = parse_permutation("(2 3)");
  EXPECT_EQ(to_string(compose(a, b)), "(1 2 3)");
  EXPECT_EQ(to_string(permutation_identity(parse_permutation("(2 3)")).rhs), "(x1*x3)*(x2*x4)");
}

TEST(Permutations, EntropyTest) {
  const Permutation c[] = {parse_permutation("(1 3 2)")};
  EXPECT_FALSE(permutation_entropy_test(c));
  EXPECT_EQ(generated_subgroup(c).size(), 3u);
  const Permutation t[] = {parse_permutation("(2 3)")};
  EXPECT_TRUE(permutation_entropy_test(t));
  const Permutation s4[] = {parse_permutation("(1 2)"), parse_permutation("(1 2 3 4)")};
  EXPECT_TRUE(permutation_entropy_test(s4));
  EXPECT_EQ(generated_subgroup(s4).size(), 24u);
}

TEST(Permutations, SubgroupSizesMatchBfs) {
  auto rng = engine(61);
  for (int round = 0; round < 200; ++round) {
    std::vector<Permutation> gens;
    const std::size_t k = 1 + pick(rng, 2);
    for (std::size_t i = 0; i < k; ++i) {
      Permutation p = {1, 2, 3, 4};
      std::shuffle(p.begin(), p.end(), rng);
      gens.push_back(p);
    }
    const auto group = generated_subgroup(gens);
    EXPECT_EQ(group.size(), bfs_group_size(gens));
    const Permutation swap23 = {1, 3, 2, 4};
    EXPECT_EQ(permutation_entropy_test(gens), std::binary_search(group.begin(), group.end(), swap23));
  }
}

TEST(Loops, Trichotomy) {
  const auto s3 = loop_trichotomy(example_algebra("s3loop"));
  EXPECT_EQ(s3.gep, Verdict::fails);
  EXPECT_FALSE(s3.entropic);
  EXPECT_FALSE(s3.abelian_group);
  const Algebra z = cyclic_group(3);
  const Algebra plus("Z3", z.element_names(), Signature::groupoid(), {z.table(0)});
  const auto ab = loop_trichotomy(loop_from_groupoid(plus));
  EXPECT_EQ(ab.gep, Verdict::holds);
  EXPECT_TRUE(ab.entropic);
  EXPECT_TRUE(ab.abelian_group);
  EXPECT_THROW(loop_trichotomy(example_algebra("g1")), SignatureError);
}
