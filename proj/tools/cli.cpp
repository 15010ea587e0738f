#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "entropica/algebra_io.hpp"
#include "entropica/census.hpp"
#include "entropica/complex.hpp"
#include "entropica/constructions.hpp"
#include "entropica/errors.hpp"
#include "entropica/gep.hpp"
#include "entropica/variety.hpp"

namespace entropica::cli {

namespace {

/// A file path, or the name of a built-in example when no such file exists.
Algebra load_algebra(const std::string& spec) {
  if (std::filesystem::exists(spec)) return read_algebra_file(spec);
  const auto names = example_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) return example_algebra(spec);
  throw Error("cannot open '" + spec + "' (no such file or example)");
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::holds: return kOk;
    case Verdict::fails: return kFails;
    case Verdict::unknown: return kUnknown;
  }
  return kUnknown;
}

GepMode parse_mode(const std::string& s) {
  if (s == "basic") return GepMode::basic();
  if (s == "full") return GepMode::full();
  if (s.rfind("depth:", 0) == 0) {
    try {
      std::size_t used = 0;
      const unsigned long d = std::stoul(s.substr(6), &used);
      if (used == s.size() - 6) return GepMode::bounded(d);
    } catch (const std::logic_error&) {
    }
  }
  throw CLI::ValidationError("--mode", "expected basic, depth:D or full, got '" + s + "'");
}

std::string witness_terms(const std::vector<CloneElement>& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "; " : "") + to_string(w[i].witness);
  return out;
}

void print_precursor(std::ostream& out, const std::string& prefix, const PrecursorSearch& p) {
  out << prefix << "RESULT: "
      << (p.verdict == Verdict::holds ? "FOUND" : p.verdict == Verdict::fails ? "EXHAUSTED" : "UNKNOWN")
      << "\n";
  out << prefix << "TRIED: " << p.tried << "\n";
  if (!p.witness) return;
  const auto& w = *p.witness;
  for (std::size_t i = 0; i < w.variables.size(); ++i)
    for (std::size_t j = 0; j < w.r[i].size(); ++j)
      out << prefix << "R " << w.variables[i] << " " << j + 1 << ": " << to_string(w.r[i][j].witness)
          << "\n";
  out << prefix << "PRECURSOR: " << to_string(w.t_star) << " = " << to_string(w.s_tilde) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite algebras: complex algebras, clones and the generalized entropic property",
               "entropica"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");
  std::function<int()> action;

  // check
  std::string algebra, identity, term_a, term_b;
  auto* check = app.add_subcommand("check", "Check an identity in an algebra");
  check->add_option("algebra", algebra, "Algebra file or example name")->required();
  check->add_option("identity", identity, "Identity, e.g. \"x*y = y*x\"")->required();
  check->callback([&] {
    action = [&] {
      const Algebra A = load_algebra(algebra);
      const Identity id = parse_identity(identity, A.signature());
      out << "ALGEBRA: " << A.name() << "\n";
      out << "IDENTITY: " << to_string(id) << "\n";
      const auto cx = counterexample(A, id);
      out << "RESULT: " << (cx ? "FAILS" : "HOLDS") << "\n";
      if (!cx) return kOk;
      out << "COUNTEREXAMPLE: " << to_string(*cx, A) << "\n";
      out << "LHS: " << instantiate(A, id.lhs, *cx) << " = " << A.element_name(eval(A, id.lhs, *cx)) << "\n";
      out << "RHS: " << instantiate(A, id.rhs, *cx) << " = " << A.element_name(eval(A, id.rhs, *cx)) << "\n";
      return kFails;
    };
  });

  // glob
  std::size_t glob_cap = 12;
  auto* glob = app.add_subcommand("glob", "Print the complex algebra of all nonempty subsets");
  glob->add_option("algebra", algebra, "Algebra file or example name")->required();
  glob->add_option("--max-size", glob_cap, "Largest algebra accepted")->capture_default_str();
  glob->callback([&] {
    action = [&] {
      out << to_text(glob_algebra(load_algebra(algebra), glob_cap));
      return kOk;
    };
  });

  // sub
  auto* sub = app.add_subcommand("sub", "Print the complex algebra of subuniverses");
  sub->add_option("algebra", algebra, "Algebra file or example name")->required();
  sub->callback([&] {
    action = [&] {
      const Algebra A = load_algebra(algebra);
      const auto report = is_sub_closed(A);
      if (report.closed) {
        out << to_text(sub_algebra(A));
        return kOk;
      }
      const auto& w = *report.witness;
      const auto& sig = A.signature();
      out << "ALGEBRA: " << A.name() << "\n";
      out << "RESULT: NOT CLOSED\n";
      std::string argsline;
      for (std::size_t i = 0; i < w.arguments.size(); ++i)
        argsline += (i ? ", " : "") + subset_name(A, w.arguments[i]);
      out << "WITNESS: " << sig[w.outer_op].name << "(" << argsline << ") = " << subset_name(A, w.image)
          << "\n";
      std::string inner;
      for (std::size_t i = 0; i < w.inner_arguments.size(); ++i)
        inner += (i ? ", " : "") + A.element_name(w.inner_arguments[i]);
      out << "ESCAPES: " << sig[w.inner_op].name << "(" << inner << ") = " << A.element_name(w.result)
          << "\n";
      return kFails;
    };
  });

  // gep
  std::string mode = "full";
  std::size_t max_elements = 0;
  auto* gep = app.add_subcommand("gep", "Search witnesses of the generalized entropic property");
  gep->add_option("algebra", algebra, "Algebra file or example name")->required();
  gep->add_option("--mode", mode, "basic, depth:D or full")->capture_default_str();
  gep->add_option("--max-clone", max_elements, "Bound on clone elements (0: none)");
  gep->callback([&] {
    action = [&] {
      const Algebra A = load_algebra(algebra);
      GepOptions o;
      o.mode = parse_mode(mode);
      if (max_elements) o.clone.max_elements = max_elements;
      const GepReport r = search_gep(A, o);
      const auto& sig = A.signature();
      out << "ALGEBRA: " << A.name() << "\n";
      out << "MODE: " << to_string(r.mode) << "\n";
      for (const auto& p : r.pairs) {
        out << "PAIR: " << sig[p.f].name << " " << sig[p.g].name << " " << upper(to_string(p.verdict));
        if (p.refuted_by_domains) out << " (refuted by domains)";
        out << "\n";
        if (p.verdict == Verdict::holds && !p.witness.empty())
          out << "WITNESS: " << witness_terms(p.witness) << "\n";
      }
      out << "CLONES_COMPLETE: " << yes(r.clones_complete) << "\n";
      out << "GEP: " << upper(to_string(r.verdict)) << "\n";
      return verdict_code(r.verdict);
    };
  });

  // entropy
  auto* entropy = app.add_subcommand("entropy", "Check the entropic law for all pairs of operations");
  entropy->add_option("algebra", algebra, "Algebra file or example name")->required();
  entropy->callback([&] {
    action = [&] {
      const Algebra A = load_algebra(algebra);
      const auto cx = entropy_counterexample(A);
      out << "ALGEBRA: " << A.name() << "\n";
      out << "ENTROPIC: " << yes(!cx) << "\n";
      if (!cx) return kOk;
      const auto& sig = A.signature();
      out << "PAIR: " << sig[cx->f].name << " " << sig[cx->g].name << "\n";
      out << "IDENTITY: " << to_string(cx->identity) << "\n";
      out << "COUNTEREXAMPLE: " << to_string(cx->assignment, A) << "\n";
      out << "LHS: " << instantiate(A, cx->identity.lhs, cx->assignment) << " = "
          << A.element_name(cx->lhs) << "\n";
      out << "RHS: " << instantiate(A, cx->identity.rhs, cx->assignment) << " = "
          << A.element_name(cx->rhs) << "\n";
      return kFails;
    };
  });

  // clone
  std::size_t k = 2;
  bool show_tables = false;
  auto* clone_cmd = app.add_subcommand("clone", "List the k-ary term operations");
  clone_cmd->add_option("algebra", algebra, "Algebra file or example name")->required();
  clone_cmd->add_option("-k,--arity", k, "Arity")->capture_default_str();
  clone_cmd->add_option("--max-clone", max_elements, "Bound on clone elements (0: none)");
  clone_cmd->add_flag("--tables", show_tables, "Print value tables");
  clone_cmd->callback([&] {
    action = [&] {
      const Algebra A = load_algebra(algebra);
      CloneOptions o;
      o.truncate = true;
      if (max_elements) o.max_elements = max_elements;
      const Clone C = clone(A, k, o);
      out << "ALGEBRA: " << A.name() << "\n";
      out << "ARITY: " << k << "\n";
      out << "SIZE: " << C.size() << "\n";
      out << "COMPLETE: " << yes(C.complete) << "\n";
      for (std::size_t i = 0; i < C.size(); ++i) {
        out << "ELEMENT " << i << ": " << to_string(C.elements[i].witness);
        if (show_tables) {
          out << " |";
          for (Elem e : C.elements[i].table) out << " " << A.element_name(e);
        }
        out << "\n";
      }
      return C.complete ? kOk : kUnknown;
    };
  });

  // free
  std::vector<std::string> algebras;
  auto* free_cmd = app.add_subcommand("free", "Free algebra of the variety generated by the algebras");
  free_cmd->add_option("algebras", algebras, "Algebra files or example names")->required();
  free_cmd->add_option("-k,--generators", k, "Number of free generators")->capture_default_str();
  free_cmd->callback([&] {
    action = [&] {
      std::vector<Algebra> gens;
      for (const auto& a : algebras) gens.push_back(load_algebra(a));
      const FreeAlgebra F = free_algebra(gens, k);
      out << "SIZE: " << F.algebra.size() << "\n";
      out << to_text(F.algebra);
      return kOk;
    };
  });

  // precursor
  auto* precursor = app.add_subcommand("precursor", "Search a semilinear precursor for the pair (t, s)");
  precursor->add_option("algebra", algebra, "Algebra file or example name")->required();
  precursor->add_option("t", term_a, "Term t")->required();
  precursor->add_option("s", term_b, "Term s")->required();
  precursor->callback([&] {
    action = [&] {
      const Algebra A = load_algebra(algebra);
      const Term t = parse_term(term_a, A.signature()), s = parse_term(term_b, A.signature());
      const auto p = search_precursor(A, t, s);
      out << "ALGEBRA: " << A.name() << "\n";
      out << "PAIR: " << to_string(t) << " , " << to_string(s) << "\n";
      print_precursor(out, "", p);
      return verdict_code(p.verdict);
    };
  });

  // subv
  auto* subv = app.add_subcommand("subv", "Decide an identity in the variety generated by Sub(B), B in V(A)");
  subv->add_option("algebra", algebra, "Algebra file or example name")->required();
  subv->add_option("identity", identity, "Identity")->required();
  subv->callback([&] {
    action = [&] {
      const Algebra A = load_algebra(algebra);
      const Identity id = parse_identity(identity, A.signature());
      const SubVResult r = sub_v_satisfies(A, id);
      out << "ALGEBRA: " << A.name() << "\n";
      out << "IDENTITY: " << to_string(id) << "\n";
      print_precursor(out, "FORWARD ", r.forward);
      print_precursor(out, "BACKWARD ", r.backward);
      out << "RESULT: " << upper(to_string(r.verdict)) << "\n";
      return verdict_code(r.verdict);
    };
  });

  // globv
  auto* globv = app.add_subcommand("globv", "Decide an identity in the variety generated by Glob(B), B in V(A)");
  globv->add_option("algebra", algebra, "Algebra file or example name")->required();
  globv->add_option("identity", identity, "Identity")->required();
  globv->callback([&] {
    action = [&] {
      const Algebra A = load_algebra(algebra);
      const Identity id = parse_identity(identity, A.signature());
      const GlobVResult r = glob_v_satisfies(A, id);
      out << "ALGEBRA: " << A.name() << "\n";
      out << "IDENTITY: " << to_string(id) << "\n";
      out << "TRIED: " << r.tried << "\n";
      if (r.witness) {
        out << "LINEAR: " << to_string(r.witness->linear) << "\n";
        std::string sigma;
        for (const auto& [from, to] : r.witness->sigma) sigma += (sigma.empty() ? "" : ", ") + from + "->" + to;
        out << "SIGMA: " << sigma << "\n";
      }
      out << "RESULT: " << upper(to_string(r.verdict)) << "\n";
      return verdict_code(r.verdict);
    };
  });

  // focal
  std::string in_algebra;
  auto* focal = app.add_subcommand("focal", "Focal decompositions of two groupoid terms");
  focal->add_option("t", term_a, "Term")->required();
  focal->add_option("u", term_b, "Term")->required();
  focal->add_option("--in", in_algebra, "Also check t = u in this algebra");
  focal->callback([&] {
    action = [&] {
      const Term t = parse_term(term_a), u = parse_term(term_b);
      for (const auto& [label, term] : {std::pair{"T", t}, std::pair{"U", u}}) {
        const auto d = focal_decompose(term);
        out << "FOCAL_" << label << ": " << d.focal << "\n";
        std::string ms;
        for (const auto& m : d.multipliers) ms += (ms.empty() ? "" : "; ") + to_string(m);
        out << "MULTIPLIERS_" << label << ": " << (ms.empty() ? "none" : ms) << "\n";
      }
      const Identity id{t, u};
      out << "REGULAR: " << yes(is_regular(id)) << "\n";
      out << "LINEAR: " << yes(is_linear(id)) << "\n";
      const bool eq = focally_equivalent(t, u);
      out << "FOCALLY_EQUIVALENT: " << yes(eq) << "\n";
      if (!in_algebra.empty()) {
        const Algebra A = load_algebra(in_algebra);
        out << "HOLDS_IN " << A.name() << ": " << yes(holds(A, id)) << "\n";
      }
      return eq ? kOk : kFails;
    };
  });

  // census
  CensusOptions census_opts;
  std::string resume, csv, dump_dir;
  std::size_t census_end = 0;
  auto* census = app.add_subcommand("census", "Enumerate and classify small groupoids");
  census->add_option("--order", census_opts.enumeration.order, "Number of elements (1..4)")->required();
  census->add_flag("--idempotent", census_opts.enumeration.idempotent, "Only idempotent tables");
  census->add_flag("--commutative", census_opts.enumeration.commutative, "Only commutative tables");
  census->add_flag("--up-to-iso", census_opts.enumeration.up_to_iso, "One table per isomorphism class");
  census->add_option("--jobs", census_opts.jobs, "Worker threads")->capture_default_str();
  census->add_option("--begin", census_opts.begin, "First table index")->capture_default_str();
  census->add_option("--end", census_end, "One past the last table index (0: all)");
  census->add_option("--chunk", census_opts.chunk, "Tables per work unit")->capture_default_str();
  census->add_option("--resume", resume, "Bookmark file to resume from and update");
  census->add_option("--csv", csv, "Write one line per record");
  census->add_option("--dump-dir", dump_dir, "Write counterexamples as algebra files");
  census->add_option("--max-clone", max_elements, "Bound on binary clone elements (0: none)");
  census->callback([&] {
    action = [&] {
      if (census_end) census_opts.end = census_end;
      if (max_elements) census_opts.classify.clone.max_elements = max_elements;
      if (!resume.empty()) census_opts.bookmark = resume;
      std::ofstream csv_out;
      if (!csv.empty()) {
        const bool append = !resume.empty() && std::filesystem::exists(resume) && std::filesystem::exists(csv);
        csv_out.open(csv, append ? std::ios::app : std::ios::trunc);
        if (!csv_out) throw Error("cannot write '" + csv + "'");
        if (!append) csv_out << csv_header() << "\n";
        census_opts.on_record = [&](const ClassificationRecord& r) { csv_out << csv_row(r) << "\n"; };
      }
      const CensusSummary s = run_census(census_opts);
      out << format_summary(census_opts, s);
      if (census_opts.enumeration.order == 3) {
        const auto g1 = digest(canonical_table(3, example_algebra("g1").table(0)));
        const bool seen = std::binary_search(s.sub_closed_gep_fails_classes.begin(),
                                             s.sub_closed_gep_fails_classes.end(), g1);
        out << "G1_CLASS_SUB_CLOSED_GEP_FAILS: " << yes(seen) << "\n";
      }
      if (!dump_dir.empty()) {
        std::filesystem::create_directories(dump_dir);
        const std::size_t n = census_opts.enumeration.order;
        for (const auto& d : s.conjecture_counterexamples) {
          std::vector<Elem> table;
          for (char c : d) table.push_back(static_cast<Elem>(c - '0'));
          std::ofstream f(std::filesystem::path(dump_dir) / ("g" + d + ".alg"));
          f << to_text(groupoid_from_table(n, table));
        }
      }
      std::size_t violations = 0;
      for (const auto& [name, count] : s.violations) violations += count;
      return violations ? kFails : kOk;
    };
  });

  // example
  std::string example_name;
  bool list = false;
  auto* example = app.add_subcommand("example", "Print a built-in example algebra");
  example->add_option("name", example_name, "Example name");
  example->add_flag("--list", list, "List the examples");
  example->callback([&] {
    action = [&] {
      if (list || example_name.empty()) {
        for (const auto& n : example_names()) out << n << ": " << example_description(n) << "\n";
        return kOk;
      }
      out << to_text(example_algebra(example_name));
      return kOk;
    };
  });

  // paper-verify
  auto* verify = app.add_subcommand("paper-verify", "Run the built-in checklist of reproduced results");
  verify->callback([&] {
    action = [&] {
      const auto checks = verify_checks();
      std::size_t passed = 0;
      for (const auto& c : checks) {
        out << "CHECK " << c.name << ": " << (c.passed ? "PASS" : "FAIL");
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        out << "\n";
        passed += c.passed;
      }
      out << "CHECKS: " << checks.size() << "\n";
      out << "PASSED: " << passed << "\n";
      return passed == checks.size() ? kOk : kFails;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace entropica::cli
