#include "entropica/census.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "entropica/complex.hpp"
#include "entropica/errors.hpp"

namespace entropica {

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Role of each cell: free (index into the numeral), or copied.
struct Layout {
  std::size_t n = 0;
  std::vector<std::size_t> free_cells;
  std::vector<std::size_t> mirror;  // cell -> source cell, or itself
};

Layout layout(const EnumerationOptions& o) {
  if (o.order < 1 || o.order > 4) throw PreconditionError("census order must be between 1 and 4");
  Layout L;
  L.n = o.order;
  const std::size_t n = o.order;
  L.mirror.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t c = i * n + j;
      L.mirror[c] = c;
      if (o.idempotent && i == j) continue;
      if (o.commutative && j < i) {
        L.mirror[c] = j * n + i;
        continue;
      }
      L.free_cells.push_back(c);
    }
  return L;
}

std::string verdict_word(Verdict v) { return std::string(to_string(v)); }

}  // namespace

std::size_t enumeration_size(const EnumerationOptions& options) {
  const Layout L = layout(options);
  if (L.free_cells.size() > 12)
    throw PreconditionError("order 4 needs the idempotent or commutative filter");
  return power(L.n, L.free_cells.size());
}

std::vector<Elem> enumeration_table(const EnumerationOptions& options, std::size_t index) {
  const Layout L = layout(options);
  const std::size_t n = L.n;
  std::vector<Elem> t(n * n, 0);
  for (std::size_t k = L.free_cells.size(); k-- > 0;) {
    t[L.free_cells[k]] = static_cast<Elem>(index % n);
    index /= n;
  }
  for (std::size_t c = 0; c < n * n; ++c) {
    if (options.idempotent && c / n == c % n) t[c] = static_cast<Elem>(c / n);
    else if (L.mirror[c] != c) t[c] = t[L.mirror[c]];
  }
  return t;
}

std::vector<Elem> canonical_table(std::size_t n, const std::vector<Elem>& table) {
  std::vector<Elem> perm(n), inv(n), best = table, cand(n * n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = static_cast<Elem>(i);
    // Relabeled table: cell (i, j) holds perm(table[inv i][inv j]).
    bool less = false;
    std::size_t c = 0;
    for (; c < n * n; ++c) {
      const Elem v = perm[table[inv[c / n] * n + inv[c % n]]];
      cand[c] = v;
      if (v != best[c]) {
        less = v < best[c];
        break;
      }
    }
    if (less) {
      for (++c; c < n * n; ++c) cand[c] = perm[table[inv[c / n] * n + inv[c % n]]];
      best = cand;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string digest(const std::vector<Elem>& table) {
  std::string out;
  for (Elem e : table) out += static_cast<char>('0' + e);
  return out;
}

Algebra groupoid_from_table(std::size_t n, const std::vector<Elem>& table) {
  static const char* names[] = {"a", "b", "c", "d", "e", "f", "g", "h", "i"};
  if (n > 9) throw PreconditionError("groupoid_from_table supports at most 9 elements");
  std::vector<std::string> elements(names, names + n);
  return Algebra("g" + digest(table), std::move(elements), Signature::groupoid(), {table});
}

ClassificationRecord classify(const Algebra& A, const ClassifyOptions& options) {
  if (!A.is_groupoid()) throw SignatureError("classification needs a groupoid");
  ClassificationRecord r;
  const std::size_t n = A.size();
  r.order = n;
  r.digest = digest(A.table(0));
  r.canonical = digest(canonical_table(n, A.table(0)));
  const StructuralFlags flags = structural_flags(A);
  r.idempotent = flags.idempotent;
  r.commutative = flags.commutative;
  r.associative = flags.associative;
  r.left_cancellative = flags.left_cancellative;
  r.right_cancellative = flags.right_cancellative;
  r.left_unit = flags.left_unit.has_value();
  r.right_unit = flags.right_unit.has_value();
  r.unit = flags.unit.has_value();
  r.entropic = is_entropic(A);
  r.sub_closed = is_sub_closed(A).closed;
  r.cross_identities = satisfies_cross_identities(A);

  const GepPairSearch search(A, 0, 0);
  if (!search.relaxed_feasible()) {
    r.gep = Verdict::fails;
    r.gep_refuted_by_domains = true;
    return r;
  }

  CloneOptions quick = options.clone;
  quick.max_depth = options.quick_depth;
  quick.truncate = true;
  Clone partial = clone(A, 2, quick);
  std::optional<Clone> full;
  auto full_clone = [&]() -> const Clone& {
    if (!full) {
      if (partial.complete) {
        full = partial;
      } else {
        CloneOptions o = options.clone;
        o.truncate = true;
        full = clone(A, 2, o);
      }
    }
    return *full;
  };

  const Clone* C = &partial;
  auto lists = search.candidates(partial);
  auto w = search.first_witness(partial, lists);
  if (!w) {
    C = &full_clone();
    lists = search.candidates(*C);
    w = search.first_witness(*C, lists);
    if (!w) {
      r.gep = C->complete ? Verdict::fails : Verdict::unknown;
      if (C->complete) r.clone_size = C->size();
      return r;
    }
  }
  r.gep = Verdict::holds;
  const Term t = C->elements[(*w)[0]].witness, s = C->elements[(*w)[1]].witness;
  r.t = to_string(t);
  r.s = to_string(s);
  const auto pd = pseudo_distributivity(A, t, s);
  r.pseudo_distributive = pd.g1 && pd.g2 && pd.g3 && pd.g4 && pd.g5;

  if (r.entropic) {
    // (x*y, x*y) is a witness.
    r.gep_witness_linear = r.gep_witness_same = r.witness_flags_exact = true;
    return r;
  }
  const Clone& F = full_clone();
  r.witness_flags_exact = F.complete;
  if (F.complete) r.clone_size = F.size();
  lists = search.candidates(F);
  const std::string& op = A.signature()[0].name;
  const Term x = Term::variable("x"), y = Term::variable("y");
  std::vector<std::size_t> linear;
  for (const Term& l : {x, y, Term::apply(op, {x, y}), Term::apply(op, {y, x})})
    if (auto idx = F.find(term_op(A, l, F.variables).table)) linear.push_back(*idx);
  std::sort(linear.begin(), linear.end());
  auto restrict = [&](const std::vector<std::size_t>& list) {
    std::vector<std::size_t> out;
    std::set_intersection(list.begin(), list.end(), linear.begin(), linear.end(), std::back_inserter(out));
    return out;
  };
  r.gep_witness_linear = search.first_witness(F, {restrict(lists[0]), lists[1]}).has_value() ||
                         search.first_witness(F, {lists[0], restrict(lists[1])}).has_value();
  r.gep_witness_same = search.uniform_witness(F, lists[0]).has_value();
  return r;
}

std::vector<Property> all_properties() {
  return {Property::entropic_implies_gep, Property::gep_implies_sub_closed, Property::linear_witness,
          Property::same_witness,         Property::bands,                  Property::commutative_idempotent,
          Property::cancellative,         Property::one_sided_unit,         Property::unit,
          Property::pseudo_distributive,  Property::cross_identities};
}

std::string property_name(Property p) {
  switch (p) {
    case Property::entropic_implies_gep: return "entropic_implies_gep";
    case Property::gep_implies_sub_closed: return "gep_implies_sub_closed";
    case Property::linear_witness: return "idempotent_linear_witness";
    case Property::same_witness: return "idempotent_same_witness";
    case Property::bands: return "bands";
    case Property::commutative_idempotent: return "commutative_idempotent";
    case Property::cancellative: return "idempotent_cancellative";
    case Property::one_sided_unit: return "idempotent_one_sided_unit";
    case Property::unit: return "unit";
    case Property::pseudo_distributive: return "pseudo_distributive";
    case Property::cross_identities: return "cross_identities";
  }
  return "?";
}

bool violates(const ClassificationRecord& r, Property p) {
  const bool gep = r.gep == Verdict::holds;
  const bool idem_gep_not_entropic = r.idempotent && gep && !r.entropic;
  switch (p) {
    case Property::entropic_implies_gep: return r.entropic && r.gep != Verdict::holds;
    case Property::gep_implies_sub_closed: return gep && !r.sub_closed;
    case Property::linear_witness: return idem_gep_not_entropic && r.gep_witness_linear;
    case Property::same_witness: return idem_gep_not_entropic && r.gep_witness_same;
    case Property::bands: return idem_gep_not_entropic && r.associative;
    case Property::commutative_idempotent: return idem_gep_not_entropic && r.commutative;
    case Property::cancellative:
      return idem_gep_not_entropic && (r.left_cancellative || r.right_cancellative);
    case Property::one_sided_unit: return idem_gep_not_entropic && (r.left_unit || r.right_unit);
    case Property::unit: return gep && !r.entropic && r.unit;
    case Property::pseudo_distributive: return r.idempotent && gep && !r.pseudo_distributive;
    case Property::cross_identities: return r.idempotent && gep && !r.cross_identities;
  }
  return false;
}

void CensusSummary::add(const ClassificationRecord& r) {
  ++records;
  idempotent += r.idempotent;
  entropic += r.entropic;
  sub_closed += r.sub_closed;
  gep_holds += r.gep == Verdict::holds;
  gep_fails += r.gep == Verdict::fails;
  gep_unknown += r.gep == Verdict::unknown;
  gep_refuted_by_domains += r.gep_refuted_by_domains;
  if (r.sub_closed && r.gep == Verdict::fails) {
    ++sub_closed_gep_fails;
    auto it = std::lower_bound(sub_closed_gep_fails_classes.begin(), sub_closed_gep_fails_classes.end(),
                               r.canonical);
    if (it == sub_closed_gep_fails_classes.end() || *it != r.canonical)
      sub_closed_gep_fails_classes.insert(it, r.canonical);
  }
  if (r.gep == Verdict::holds && !r.entropic) {
    ++gep_not_entropic;
    if (r.idempotent) {
      auto it = std::lower_bound(conjecture_counterexamples.begin(), conjecture_counterexamples.end(),
                                 r.digest);
      conjecture_counterexamples.insert(it, r.digest);
    }
  }
  for (Property p : all_properties()) {
    if (!violates(r, p)) continue;
    const std::string name = property_name(p);
    ++violations[name];
    auto [it, fresh] = first_violation.emplace(name, r.digest);
    if (!fresh && r.digest < it->second) it->second = r.digest;
  }
}

void CensusSummary::merge(const CensusSummary& o) {
  tables += o.tables;
  records += o.records;
  idempotent += o.idempotent;
  entropic += o.entropic;
  sub_closed += o.sub_closed;
  gep_holds += o.gep_holds;
  gep_fails += o.gep_fails;
  gep_unknown += o.gep_unknown;
  gep_refuted_by_domains += o.gep_refuted_by_domains;
  sub_closed_gep_fails += o.sub_closed_gep_fails;
  gep_not_entropic += o.gep_not_entropic;
  auto unite = [](std::vector<std::string>& a, const std::vector<std::string>& b, bool unique) {
    std::vector<std::string> out;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    if (unique) out.erase(std::unique(out.begin(), out.end()), out.end());
    a = std::move(out);
  };
  unite(conjecture_counterexamples, o.conjecture_counterexamples, false);
  unite(sub_closed_gep_fails_classes, o.sub_closed_gep_fails_classes, true);
  for (const auto& [k, v] : o.violations) violations[k] += v;
  for (const auto& [k, v] : o.first_violation) {
    auto [it, fresh] = first_violation.emplace(k, v);
    if (!fresh && v < it->second) it->second = v;
  }
}

namespace {

using nlohmann::json;

json to_json(const CensusSummary& s) {
  return json{{"tables", s.tables},
              {"records", s.records},
              {"idempotent", s.idempotent},
              {"entropic", s.entropic},
              {"sub_closed", s.sub_closed},
              {"gep_holds", s.gep_holds},
              {"gep_fails", s.gep_fails},
              {"gep_unknown", s.gep_unknown},
              {"gep_refuted_by_domains", s.gep_refuted_by_domains},
              {"sub_closed_gep_fails", s.sub_closed_gep_fails},
              {"gep_not_entropic", s.gep_not_entropic},
              {"conjecture_counterexamples", s.conjecture_counterexamples},
              {"sub_closed_gep_fails_classes", s.sub_closed_gep_fails_classes},
              {"violations", s.violations},
              {"first_violation", s.first_violation}};
}

CensusSummary summary_from_json(const json& j) {
  CensusSummary s;
  j.at("tables").get_to(s.tables);
  j.at("records").get_to(s.records);
  j.at("idempotent").get_to(s.idempotent);
  j.at("entropic").get_to(s.entropic);
  j.at("sub_closed").get_to(s.sub_closed);
  j.at("gep_holds").get_to(s.gep_holds);
  j.at("gep_fails").get_to(s.gep_fails);
  j.at("gep_unknown").get_to(s.gep_unknown);
  j.at("gep_refuted_by_domains").get_to(s.gep_refuted_by_domains);
  j.at("sub_closed_gep_fails").get_to(s.sub_closed_gep_fails);
  j.at("gep_not_entropic").get_to(s.gep_not_entropic);
  j.at("conjecture_counterexamples").get_to(s.conjecture_counterexamples);
  j.at("sub_closed_gep_fails_classes").get_to(s.sub_closed_gep_fails_classes);
  j.at("violations").get_to(s.violations);
  j.at("first_violation").get_to(s.first_violation);
  return s;
}

json parameters(const CensusOptions& o, std::size_t end) {
  const auto& e = o.enumeration;
  return json{{"order", e.order},
              {"idempotent", e.idempotent},
              {"commutative", e.commutative},
              {"up_to_iso", e.up_to_iso},
              {"begin", o.begin},
              {"end", end},
              {"chunk", o.chunk},
              {"clone_cell_budget", o.classify.clone.cell_budget},
              {"clone_max_elements", o.classify.clone.max_elements}};
}

struct Chunk {
  CensusSummary summary;
  std::vector<ClassificationRecord> records;
};

Chunk run_chunk(const CensusOptions& o, std::size_t lo, std::size_t hi, bool keep) {
  Chunk out;
  const std::size_t n = o.enumeration.order;
  for (std::size_t i = lo; i < hi; ++i) {
    ++out.summary.tables;
    auto table = enumeration_table(o.enumeration, i);
    if (o.enumeration.up_to_iso && canonical_table(n, table) != table) continue;
    ClassificationRecord r = classify(groupoid_from_table(n, table), o.classify);
    r.index = i;
    out.summary.add(r);
    if (keep) out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace

CensusSummary run_census(const CensusOptions& o) {
  const std::size_t total = enumeration_size(o.enumeration);
  const std::size_t end = std::min(o.end, total);
  const std::size_t begin = std::min(o.begin, end);
  const std::size_t chunk = std::max<std::size_t>(o.chunk, 1);
  const bool keep = static_cast<bool>(o.on_record);

  CensusSummary summary;
  std::size_t next = begin;
  const json params = parameters(o, end);
  if (o.bookmark && std::filesystem::exists(*o.bookmark)) {
    std::ifstream in(*o.bookmark);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw PreconditionError("unreadable bookmark '" + o.bookmark->string() + "': " + e.what());
    }
    if (j.value("parameters", json()) != params)
      throw PreconditionError("bookmark '" + o.bookmark->string() + "' belongs to another census");
    next = j.at("next").get<std::size_t>();
    summary = summary_from_json(j.at("summary"));
  }
  auto save = [&] {
    if (!o.bookmark) return;
    const auto tmp = o.bookmark->string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << json{{"parameters", params}, {"next", next}, {"summary", to_json(summary)}}.dump(1) << "\n";
    }
    std::filesystem::rename(tmp, *o.bookmark);
  };
  auto consume = [&](Chunk& c, std::size_t hi) {
    if (keep)
      for (const auto& r : c.records) o.on_record(r);
    summary.merge(c.summary);
    next = hi;
    save();
  };

  const std::size_t chunks = (end - next + chunk - 1) / chunk;
  const std::size_t first = next;
  auto bounds_from = [&](std::size_t k) {
    const std::size_t lo = first + k * chunk;
    return std::pair{lo, std::min(lo + chunk, end)};
  };

  if (o.jobs <= 1 || chunks <= 1) {
    for (std::size_t k = 0; k < chunks; ++k) {
      auto [lo, hi] = bounds_from(k);
      Chunk c = run_chunk(o, lo, hi, keep);
      consume(c, hi);
    }
    return summary;
  }

  std::vector<std::optional<Chunk>> done(chunks);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> ticket{0};
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      const std::size_t k = ticket.fetch_add(1);
      if (k >= chunks) return;
      auto [lo, hi] = bounds_from(k);
      try {
        Chunk c = run_chunk(o, lo, hi, keep);
        std::lock_guard lock(mu);
        done[k] = std::move(c);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        ticket = chunks;
      }
      cv.notify_all();
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t j = 0; j < std::min(o.jobs, chunks); ++j) threads.emplace_back(worker);
  for (std::size_t k = 0; k < chunks; ++k) {
    Chunk c;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return done[k].has_value() || failure; });
      if (failure) break;
      c = std::move(*done[k]);
      done[k].reset();
    }
    consume(c, bounds_from(k).second);
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return summary;
}

std::string format_summary(const CensusOptions& o, const CensusSummary& s) {
  std::ostringstream out;
  const auto& e = o.enumeration;
  std::string filters;
  if (e.idempotent) filters += " idempotent";
  if (e.commutative) filters += " commutative";
  if (e.up_to_iso) filters += " up-to-iso";
  out << "ORDER: " << e.order << "\n";
  out << "FILTERS:" << (filters.empty() ? " none" : filters) << "\n";
  out << "TABLES: " << s.tables << "\n";
  out << "RECORDS: " << s.records << "\n";
  out << "IDEMPOTENT: " << s.idempotent << "\n";
  out << "ENTROPIC: " << s.entropic << "\n";
  out << "SUB_CLOSED: " << s.sub_closed << "\n";
  out << "GEP_HOLDS: " << s.gep_holds << "\n";
  out << "GEP_FAILS: " << s.gep_fails << "\n";
  out << "GEP_UNKNOWN: " << s.gep_unknown << "\n";
  out << "GEP_REFUTED_BY_DOMAINS: " << s.gep_refuted_by_domains << "\n";
  out << "SUB_CLOSED_GEP_FAILS: " << s.sub_closed_gep_fails << "\n";
  out << "SUB_CLOSED_GEP_FAILS_CLASSES: " << s.sub_closed_gep_fails_classes.size() << "\n";
  out << "GEP_NOT_ENTROPIC: " << s.gep_not_entropic << "\n";
  out << "IDEMPOTENT_GEP_NOT_ENTROPIC: " << s.conjecture_counterexamples.size() << "\n";
  for (const auto& d : s.conjecture_counterexamples) out << "COUNTEREXAMPLE: " << d << "\n";
  std::size_t total = 0;
  for (Property p : all_properties()) {
    const std::string name = property_name(p);
    auto it = s.violations.find(name);
    const std::size_t count = it == s.violations.end() ? 0 : it->second;
    total += count;
    out << "VIOLATIONS " << name << ": " << count;
    if (count) out << " (first " << s.first_violation.at(name) << ")";
    out << "\n";
  }
  out << "VIOLATIONS_TOTAL: " << total << "\n";
  return out.str();
}

std::string csv_header() {
  return "index,digest,canonical,idempotent,commutative,associative,left_cancellative,"
         "right_cancellative,left_unit,right_unit,unit,entropic,sub_closed,gep,gep_refuted_by_domains,"
         "gep_witness_linear,gep_witness_same,witness_flags_exact,pseudo_distributive,cross_identities,"
         "t,s,clone_size";
}

std::string csv_row(const ClassificationRecord& r) {
  std::ostringstream out;
  auto b = [](bool v) { return v ? "1" : "0"; };
  out << r.index << "," << r.digest << "," << r.canonical << "," << b(r.idempotent) << ","
      << b(r.commutative) << "," << b(r.associative) << "," << b(r.left_cancellative) << ","
      << b(r.right_cancellative) << "," << b(r.left_unit) << "," << b(r.right_unit) << "," << b(r.unit)
      << "," << b(r.entropic) << "," << b(r.sub_closed) << "," << verdict_word(r.gep) << ","
      << b(r.gep_refuted_by_domains) << "," << b(r.gep_witness_linear) << "," << b(r.gep_witness_same)
      << "," << b(r.witness_flags_exact) << "," << b(r.pseudo_distributive) << ","
      << b(r.cross_identities) << "," << r.t << "," << r.s << "," << r.clone_size;
  return out.str();
}

}  // namespace entropica
