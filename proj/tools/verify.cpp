#include <functional>

#include "cli.hpp"
#include "entropica/census.hpp"
#include "entropica/complex.hpp"
#include "entropica/constructions.hpp"
#include "entropica/gep.hpp"
#include "entropica/variety.hpp"

namespace entropica::cli {

namespace {

using Check = std::pair<const char*, std::function<bool(std::string&)>>;

Term T(const std::string& s, const Signature& sig) { return parse_term(s, sig); }
Identity I(const std::string& s, const Signature& sig) { return parse_identity(s, sig); }

Verdict full_gep(const Algebra& A) {
  GepOptions o;
  o.stop_at_failure = true;
  return search_gep(A, o).verdict;
}

bool m9_suite(const AffineModule& M, std::string& detail) {
  const Algebra& A = M.algebra;
  const std::size_t ops = A.signature().size();
  if (!structural_flags(A).idempotent || is_entropic(A)) {
    detail = "flags";
    return false;
  }
  const auto vars = clone_variables(2);
  for (std::size_t r = 0; r < ops; ++r)
    for (std::size_t t = 0; t < ops; ++t) {
      const auto [s1, s2] = conjugation_witness(M, r, t);
      const auto& sig = A.signature();
      const Term x = Term::variable("x"), y = Term::variable("y");
      const CloneElement w[] = {term_op(A, Term::apply(sig[s1].name, {x, y}), vars),
                                term_op(A, Term::apply(sig[s2].name, {x, y}), vars)};
      if (!check_gep_witness(A, r, t, w)) {
        detail = "pair " + sig[r].name + " " + sig[t].name;
        return false;
      }
    }
  const Algebra S = sub_algebra(A);
  for (const auto& op : A.signature()) {
    const std::string id = op.name + "(x," + op.name + "(y,x)) = y";
    if (!holds(A, I(id, A.signature()))) {
      detail = id;
      return false;
    }
  }
  // Fails in Sub for some operation.
  bool fails_somewhere = false;
  for (const auto& op : A.signature())
    fails_somewhere = fails_somewhere || !holds(S, I(op.name + "(x," + op.name + "(y,x)) = y", S.signature()));
  if (!fails_somewhere) detail = "identity holds in Sub";
  return fails_somewhere;
}

std::vector<Check> checks() {
  std::vector<Check> c;
  const Algebra g1 = example_algebra("g1");
  const Signature& gs = g1.signature();

  c.push_back({"g1_sub_table", [=](std::string&) { return sub_algebra(g1) == example_algebra("subg1"); }});
  c.push_back({"g1_not_entropic", [=](std::string& d) {
                 const auto cx = entropy_counterexample(g1);
                 if (!cx) return false;
                 d = instantiate(g1, cx->identity.lhs, cx->assignment) + " = " + g1.element_name(cx->lhs) +
                     ", " + instantiate(g1, cx->identity.rhs, cx->assignment) + " = " +
                     g1.element_name(cx->rhs);
                 return d == "(a*a)*(b*a) = c, (a*b)*(a*a) = a";
               }});
  c.push_back({"g1_idempotent_left_unit_c", [=](std::string&) {
                 const auto f = structural_flags(g1);
                 return f.idempotent && f.left_unit && g1.element_name(*f.left_unit) == "c";
               }});
  c.push_back({"g1_gep_fails", [=](std::string&) { return full_gep(g1) == Verdict::fails; }});
  c.push_back({"g1_binary_clone_linear", [=](std::string&) {
                 return clone(g1, 2).size() == 4 && every_binary_term_linear(g1);
               }});
  c.push_back({"g1_free3_not_sub_closed", [=](std::string&) {
                 const Algebra gens[] = {g1};
                 return !is_sub_closed(free_algebra(gens, 3).algebra).closed;
               }});
  c.push_back({"g1_subdirect_embedding", [=](std::string&) {
                 const Algebra S = example_algebra("subg1");
                 // Elements {a} {b} {c} {a,c} {b,c} {a,b,c}.
                 const std::vector<Elem> f1 = {0, 1, 2, 0, 2, 0}, f2 = {0, 1, 2, 2, 1, 1};
                 if (!is_homomorphism(S, g1, f1) || !is_homomorphism(S, g1, f2)) return false;
                 const Algebra pair[] = {g1, g1};
                 const Algebra P = product(pair);
                 std::vector<Elem> h;
                 for (std::size_t i = 0; i < S.size(); ++i) h.push_back(static_cast<Elem>(f1[i] * 3 + f2[i]));
                 std::vector<Elem> sorted = h;
                 std::sort(sorted.begin(), sorted.end());
                 return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
                        is_homomorphism(S, P, h);
               }});
  c.push_back({"g2_cross_identities", [](std::string&) {
                 return satisfies_cross_identities(example_algebra("g2"));
               }});
  c.push_back({"g2_gep_fails", [](std::string&) { return full_gep(example_algebra("g2")) == Verdict::fails; }});
  c.push_back({"trace_det_counts", [](std::string&) {
                 const auto two = trace_det_matrices(2);
                 return trace_det_matrices(3).size() == 9 && two.size() == 2 && two[0] * two[1] == two[1] * two[0];
               }});
  c.push_back({"m9_suite", [](std::string& d) {
                 return m9_suite(affine_module_algebra(3, trace_det_matrices(3), "M9"), d);
               }});
  c.push_back({"m9prime_suite", [](std::string& d) {
                 auto X = trace_det_matrices(3);
                 X.erase(std::remove(X.begin(), X.end(), Mat2::scalar(3, 2)), X.end());
                 return X.size() == 8 && m9_suite(affine_module_algebra(3, X, "M9prime"), d);
               }});
  c.push_back({"m9_sub_closed", [](std::string&) { return is_sub_closed(example_algebra("m9")).closed; }});
  c.push_back({"m9_single_reducts_entropic", [](std::string&) {
                 const Algebra M = example_algebra("m9");
                 for (std::size_t op = 0; op < M.signature().size(); ++op) {
                   const Algebra R("r", M.element_names(), Signature({{"*", 2}}), {M.table(op)});
                   if (!is_entropic(R)) return false;
                 }
                 return true;
               }});
  c.push_back({"equiv_non_entropy_witness", [](std::string&) {
                 const Algebra E = example_algebra("equiv_ab_c");
                 Assignment v{{"a", *E.element("a")}, {"b", *E.element("b")}, {"c", *E.element("c")}};
                 return E.element_name(eval(E, T("(c*a)*b", E.signature()), v)) == "a" &&
                        E.element_name(eval(E, T("(c*b)*(a*b)", E.signature()), v)) == "b";
               }});
  c.push_back({"graph_non_entropy_witness", [](std::string&) {
                 const Algebra G = example_algebra("path3");
                 Assignment v{{"a", *G.element("a")}, {"b", *G.element("b")}, {"c", *G.element("c")}};
                 return G.element_name(eval(G, T("(b*c)*a", G.signature()), v)) == "b" &&
                        G.element_name(eval(G, T("(b*a)*(c*a)", G.signature()), v)) == "0";
               }});
  c.push_back({"equiv_graph_sub_closed", [](std::string&) {
                 return is_sub_closed(example_algebra("equiv_ab_c")).closed &&
                        is_sub_closed(example_algebra("path3")).closed;
               }});
  c.push_back({"equiv_free2_and_gep", [](std::string& d) {
                 const Algebra gens[] = {equivalence_algebra({{"a", "b"}}, "one"),
                                         equivalence_algebra({{"a"}, {"b"}}, "two")};
                 const Algebra with_witness[] = {gens[0], gens[1], example_algebra("equiv_ab_c")};
                 const auto F = free_algebra(gens, 2);
                 d = "free " + std::to_string(F.algebra.size());
                 return F.algebra.size() == 4 && every_binary_term_linear(product(gens)) &&
                        full_gep(product(with_witness)) == Verdict::fails;
               }});
  c.push_back({"graph_free2_and_gep", [](std::string& d) {
                 const Graph none{{"a", "b"}, {}}, edge{{"a", "b"}, {{"a", "b"}}};
                 const Algebra gens[] = {graph_algebra(Graph{{"a"}, {}}.with_loops(), "g1"),
                                         graph_algebra(none.with_loops(), "g2"),
                                         graph_algebra(edge.undirected().with_loops(), "g3")};
                 const Algebra with_witness[] = {gens[1], gens[2], example_algebra("path3")};
                 const auto F = free_algebra(gens, 2);
                 d = "free " + std::to_string(F.algebra.size());
                 return F.algebra.size() == 4 && full_gep(product(with_witness)) == Verdict::fails;
               }});
  c.push_back({"t_satisfies_x_xy", [](std::string&) {
                 const Algebra A = example_algebra("t");
                 return holds(A, I("x*(x*y) = y", A.signature())) && is_entropic(A) &&
                        structural_flags(A).idempotent;
               }});
  c.push_back({"t_subv_rejects_x_xy", [](std::string&) {
                 const Algebra A = example_algebra("t");
                 return sub_v_satisfies(A, I("x*(x*y) = y", A.signature())).verdict == Verdict::fails;
               }});
  c.push_back({"z3_subv_idempotent", [](std::string&) {
                 const Algebra A = example_algebra("z3");
                 return sub_v_satisfies(A, I("x+x = x", A.signature())).verdict == Verdict::holds;
               }});
  c.push_back({"z3_globv_not_idempotent", [](std::string&) {
                 const Algebra A = example_algebra("z3");
                 return glob_v_satisfies(A, I("x+x = x", A.signature())).verdict == Verdict::fails;
               }});
  c.push_back({"z3_precursor_examples", [](std::string&) {
                 const Algebra A = example_algebra("z3");
                 const auto& sig = A.signature();
                 const std::vector<std::string> x = {"x"}, xy = {"x", "y"};
                 const std::vector<std::vector<CloneElement>> r1 = {
                     {term_op(A, T("0", sig), x), term_op(A, T("x", sig), x)}};
                 const std::vector<std::vector<CloneElement>> r2 = {{term_op(A, T("x+y", sig), xy)}};
                 return check_precursor(A, T("x", sig), T("x+x", sig), r1) &&
                        check_precursor(A, T("x+x", sig), T("x", sig), r2);
               }});
  c.push_back({"left_zero_globv", [](std::string&) {
                 const Algebra A = example_algebra("leftzero2");
                 return glob_v_satisfies(A, parse_identity("x*x = x")).verdict == Verdict::holds;
               }});
  c.push_back({"permutation_test", [](std::string&) {
                 const Permutation a[] = {parse_permutation("(1 3 2)")};
                 const Permutation b[] = {parse_permutation("(2 3)")};
                 return !permutation_entropy_test(a) && permutation_entropy_test(b);
               }});
  c.push_back({"unary_permutations_gep_not_entropic", [](std::string&) {
                 const Algebra B = example_algebra("perm3");
                 return full_gep(B) == Verdict::holds && !is_entropic(B);
               }});
  c.push_back({"adjoined_unit_not_entropic", [](std::string&) {
                 const Algebra G = adjoin_unit(example_algebra("leftzero2"));
                 return full_gep(example_algebra("leftzero2")) == Verdict::holds && !is_entropic(G) &&
                        full_gep(G) == Verdict::fails;
               }});
  c.push_back({"loops", [](std::string&) {
                 const auto s3 = loop_trichotomy(example_algebra("s3loop"));
                 const Algebra z3 = cyclic_group(3);
                 const Algebra plus("Z3", z3.element_names(), Signature::groupoid(), {z3.table(0)});
                 const auto ab = loop_trichotomy(loop_from_groupoid(plus));
                 return s3.gep == Verdict::fails && !s3.entropic && !s3.abelian_group &&
                        ab.gep == Verdict::holds && ab.entropic && ab.abelian_group;
               }});
  c.push_back({"g1_linear_identities_focal", [=](std::string& d) {
                 std::size_t bad = 0, total = 0;
                 for_each_identity(4, "*", true, [&](const Identity& id) {
                   ++total;
                   const bool h = holds(g1, id);
                   if (h != focally_equivalent(id.lhs, id.rhs) || (h && !is_regular(id))) ++bad;
                 });
                 d = std::to_string(total) + " identities";
                 return bad == 0;
               }});
  c.push_back({"g1_identities_equal_focals", [=](std::string& d) {
                 std::size_t bad = 0, total = 0;
                 for_each_identity(4, "*", false, [&](const Identity& id) {
                   ++total;
                   if (holds(g1, id) && focal_decompose(id.lhs).focal != focal_decompose(id.rhs).focal) ++bad;
                 });
                 d = std::to_string(total) + " identities";
                 return bad == 0;
               }});
  c.push_back({"census_order3_idempotent", [](std::string&) {
                 CensusOptions o;
                 o.enumeration.order = 3;
                 o.enumeration.idempotent = true;
                 const CensusSummary s = run_census(o);
                 const auto g1c = digest(canonical_table(3, example_algebra("g1").table(0)));
                 std::size_t v = 0;
                 for (const auto& [name, count] : s.violations) v += count;
                 return s.records == 729 && v == 0 &&
                        std::binary_search(s.sub_closed_gep_fails_classes.begin(),
                                           s.sub_closed_gep_fails_classes.end(), g1c);
               }});
  (void)gs;
  return c;
}

}  // namespace

std::vector<VerifyCheck> verify_checks() {
  std::vector<VerifyCheck> out;
  for (auto& [name, fn] : checks()) {
    VerifyCheck v;
    v.name = name;
    try {
      v.passed = fn(v.detail);
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail = e.what();
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace entropica::cli
