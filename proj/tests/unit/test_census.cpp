#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "entropica/census.hpp"
#include "entropica/constructions.hpp"
#include "entropica/errors.hpp"
#include "support.hpp"

using namespace entropica;
using namespace entropica::testing;

namespace {

std::vector<Elem> relabel(std::size_t n, const std::vector<Elem>& t, const std::vector<Elem>& p) {
  std::vector<Elem> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[p[i] * n + p[j]] = p[t[i * n + j]];
  return out;
}

// Isomorphism classes by collecting the least relabeling of every table.
std::size_t naive_classes(std::size_t n, bool idempotent) {
  std::set<std::vector<Elem>> reps;
  std::vector<Elem> t(n * n, 0);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (idempotent && i == j) t[i * n + j] = static_cast<Elem>(i);
      else free.push_back(i * n + j);
    }
  while (true) {
    std::vector<Elem> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Elem> best = t;
    do best = std::min(best, relabel(n, t, p));
    while (std::next_permutation(p.begin(), p.end()));
    reps.insert(best);
    std::size_t i = free.size();
    while (i > 0 && ++t[free[i - 1]] == n) t[free[--i]] = 0;
    if (i == 0) break;
  }
  return reps.size();
}

CensusOptions order(std::size_t n, bool idempotent) {
  CensusOptions o;
  o.enumeration.order = n;
  o.enumeration.idempotent = idempotent;
  return o;
}

std::filesystem::path temp_file(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("entropica_test_" + name);
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST(Enumeration, Sizes) {
  EXPECT_EQ(enumeration_size({2, false, false, false}), 16u);
  EXPECT_EQ(enumeration_size({3, true, false, false}), 729u);
  EXPECT_EQ(enumeration_size({3, false, false, false}), 19683u);
  EXPECT_EQ(enumeration_size({3, false, true, false}), 729u);
  EXPECT_EQ(enumeration_size({4, true, false, false}), 16777216u);
  EXPECT_THROW(enumeration_size({4, false, false, false}), PreconditionError);
  EXPECT_THROW(enumeration_size({5, true, false, false}), PreconditionError);
}

TEST(Enumeration, TableOrder) {
  EXPECT_EQ(enumeration_table({2, false, false, false}, 0), (std::vector<Elem>{0, 0, 0, 0}));
  EXPECT_EQ(enumeration_table({2, false, false, false}, 1), (std::vector<Elem>{0, 0, 0, 1}));
  EXPECT_EQ(enumeration_table({2, false, false, false}, 8), (std::vector<Elem>{1, 0, 0, 0}));
  EXPECT_EQ(enumeration_table({2, true, false, false}, 1), (std::vector<Elem>{0, 0, 1, 1}));
  const auto c = enumeration_table({3, false, true, false}, 100);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(c[i * 3 + j], c[j * 3 + i]);
}

TEST(Enumeration, CanonicalIsLeastRelabeling) {
  auto rng = engine(81);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 2 + pick(rng, 3);
    const Algebra A = random_groupoid(rng, n);
    std::vector<Elem> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    const auto c = canonical_table(n, A.table(0));
    EXPECT_EQ(canonical_table(n, relabel(n, A.table(0), p)), c);
    EXPECT_LE(c, A.table(0));
  }
}

TEST(Enumeration, IsomorphismClassCounts) {
  const auto count = [](std::size_t n, bool idem) {
    EnumerationOptions o{n, idem, false, true};
    std::size_t k = 0;
    for (std::size_t i = 0; i < enumeration_size(o); ++i) {
      const auto t = enumeration_table(o, i);
      if (canonical_table(n, t) == t) ++k;
    }
    return k;
  };
  EXPECT_EQ(count(2, false), naive_classes(2, false));
  EXPECT_EQ(count(2, false), 10u);
  EXPECT_EQ(count(3, true), naive_classes(3, true));
  EXPECT_EQ(count(3, false), 3330u);
}

TEST(Classify, Examples) {
  const auto g1 = classify(example_algebra("g1"));
  EXPECT_TRUE(g1.idempotent);
  EXPECT_FALSE(g1.entropic);
  EXPECT_TRUE(g1.sub_closed);
  EXPECT_EQ(g1.gep, Verdict::fails);
  EXPECT_TRUE(g1.left_unit);
  const auto g2 = classify(example_algebra("g2"));
  EXPECT_TRUE(g2.idempotent);
  EXPECT_FALSE(g2.entropic);
  EXPECT_EQ(g2.gep, Verdict::fails);
  EXPECT_TRUE(g2.cross_identities);
  const Algebra rz("rz", {"a", "b", "c"}, Signature::groupoid(), {{0, 1, 2, 0, 1, 2, 0, 1, 2}});
  const auto r = classify(rz);
  EXPECT_TRUE(r.entropic);
  EXPECT_EQ(r.gep, Verdict::holds);
  EXPECT_TRUE(r.sub_closed);
  EXPECT_TRUE(r.gep_witness_linear);
}

TEST(Classify, InvariantUnderIsomorphism) {
  auto rng = engine(82);
  for (int round = 0; round < 80; ++round) {
    const Algebra A = random_groupoid(rng, 3, pick(rng, 2) == 0);
    std::vector<Elem> p = {0, 1, 2};
    std::shuffle(p.begin(), p.end(), rng);
    auto a = classify(A);
    auto b = classify(groupoid_from_table(3, relabel(3, A.table(0), p)));
    EXPECT_EQ(a.canonical, b.canonical);
    EXPECT_EQ(a.entropic, b.entropic);
    EXPECT_EQ(a.sub_closed, b.sub_closed);
    EXPECT_EQ(a.gep, b.gep);
    EXPECT_EQ(a.left_unit || a.right_unit, b.left_unit || b.right_unit);
    EXPECT_EQ(a.associative, b.associative);
  }
}

TEST(Census, Order2MatchesDirectClassification) {
  const CensusSummary s = run_census(order(2, false));
  EXPECT_EQ(s.tables, 16u);
  EXPECT_EQ(s.records, 16u);
  std::size_t entropic = 0, holds = 0, closed = 0;
  for (std::size_t i = 0; i < 16; ++i) {
    const auto r = classify(groupoid_from_table(2, enumeration_table({2, false, false, false}, i)));
    entropic += r.entropic;
    holds += r.gep == Verdict::holds;
    closed += r.sub_closed;
  }
  EXPECT_EQ(s.entropic, entropic);
  EXPECT_EQ(s.gep_holds, holds);
  EXPECT_EQ(s.sub_closed, closed);
}

TEST(Census, Order3IdempotentProperties) {
  const CensusSummary s = run_census(order(3, true));
  EXPECT_EQ(s.records, 729u);
  EXPECT_EQ(s.gep_unknown, 0u);
  for (const auto& [name, count] : s.violations) EXPECT_EQ(count, 0u) << name;
  EXPECT_TRUE(s.conjecture_counterexamples.empty());
  const auto g1 = digest(canonical_table(3, example_algebra("g1").table(0)));
  EXPECT_TRUE(std::binary_search(s.sub_closed_gep_fails_classes.begin(), s.sub_closed_gep_fails_classes.end(), g1));
}

TEST(Census, JobsAndChunksDoNotChangeResults) {
  CensusOptions a = order(3, true);
  std::vector<std::string> rows_a, rows_b;
  a.on_record = [&](const ClassificationRecord& r) { rows_a.push_back(csv_row(r)); };
  const CensusSummary sa = run_census(a);
  CensusOptions b = order(3, true);
  b.jobs = 3;
  b.chunk = 37;
  b.on_record = [&](const ClassificationRecord& r) { rows_b.push_back(csv_row(r)); };
  const CensusSummary sb = run_census(b);
  EXPECT_EQ(sa, sb);
  EXPECT_EQ(rows_a, rows_b);
  EXPECT_EQ(format_summary(a, sa), format_summary(b, sb));
}

TEST(Census, RangesMerge) {
  CensusOptions all = order(3, true);
  all.enumeration.up_to_iso = true;
  const CensusSummary whole = run_census(all);
  CensusSummary parts;
  for (std::size_t begin = 0; begin < 729; begin += 200) {
    CensusOptions o = all;
    o.begin = begin;
    o.end = begin + 200;
    parts.merge(run_census(o));
  }
  EXPECT_EQ(parts, whole);
}

TEST(Census, BookmarkResume) {
  const auto path = temp_file("bookmark.json");
  // Interrupt the first run inside its fourth chunk.
  CensusOptions first = order(3, true);
  first.bookmark = path;
  first.chunk = 100;
  std::size_t seen = 0;
  first.on_record = [&](const ClassificationRecord&) {
    if (++seen == 350) throw std::runtime_error("interrupted");
  };
  EXPECT_THROW(run_census(first), std::runtime_error);
  ASSERT_TRUE(std::filesystem::exists(path));
  CensusOptions rest = order(3, true);
  rest.bookmark = path;
  rest.chunk = 100;
  std::vector<std::size_t> resumed_indices;
  rest.on_record = [&](const ClassificationRecord& r) { resumed_indices.push_back(r.index); };
  const CensusSummary resumed = run_census(rest);
  ASSERT_FALSE(resumed_indices.empty());
  EXPECT_EQ(resumed_indices.front(), 300u);
  EXPECT_EQ(resumed, run_census(order(3, true)));
  CensusOptions other = order(2, false);
  other.bookmark = path;
  EXPECT_THROW(run_census(other), PreconditionError);
  std::filesystem::remove(path);
}

TEST(Census, CsvShape) {
  const auto header = csv_header();
  const auto row = csv_row(classify(example_algebra("g1")));
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
}
