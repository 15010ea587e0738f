#include "entropica/gep.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <map>
#include <set>

#include "entropica/complex.hpp"
#include "entropica/errors.hpp"

namespace entropica {

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Variable x_ij of the entropic and GEP identities (i = 1..n, j = 1..m).
std::string grid_variable(std::size_t i, std::size_t j, std::size_t n, std::size_t m) {
  if (n == 2 && m == 2) {
    static const char* names[2][2] = {{"x", "u"}, {"y", "v"}};
    return names[i - 1][j - 1];
  }
  if (i < 10 && j < 10) return "x" + std::to_string(i) + std::to_string(j);
  return "x" + std::to_string(i) + "_" + std::to_string(j);
}

// g(f(x11,..,xn1), .., f(x1m,..,xnm)).
Term gep_lhs(const Signature& sig, std::size_t f, std::size_t g) {
  const std::size_t n = sig[f].arity, m = sig[g].arity;
  std::vector<Term> cols;
  for (std::size_t j = 1; j <= m; ++j) {
    std::vector<Term> args;
    for (std::size_t i = 1; i <= n; ++i) args.push_back(Term::variable(grid_variable(i, j, n, m)));
    cols.push_back(Term::apply(sig[f].name, std::move(args)));
  }
  return Term::apply(sig[g].name, std::move(cols));
}

std::vector<Elem> lhs_table(const Algebra& A, std::size_t f, std::size_t g) {
  const std::size_t s = A.size();
  const std::size_t n = A.signature()[f].arity, m = A.signature()[g].arity;
  const std::size_t cells = power(s, m);
  const std::size_t total = power(cells, n);
  if (total > (std::size_t{1} << 26))
    throw BudgetExceeded("GEP constraint table for this pair has " + std::to_string(total) + " entries",
                         0);
  std::vector<Elem> rows(cells * std::max<std::size_t>(m, 1));
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    for (std::size_t j = m; j-- > 0;) {
      rows[c * m + j] = static_cast<Elem>(rest % s);
      rest /= s;
    }
  }
  std::vector<Elem> out(total), code(n), fargs(n), gargs(m);
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rest = t;
    for (std::size_t i = n; i-- > 0;) {
      code[i] = static_cast<Elem>(rest % cells);
      rest /= cells;
    }
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < n; ++i) fargs[i] = rows[code[i] * m + j];
      gargs[j] = A.apply(f, fargs);
    }
    out[t] = A.apply(g, gargs);
  }
  return out;
}

std::uint64_t bit(Elem e) { return std::uint64_t{1} << e; }

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Entropy

Identity entropic_identity(const Signature& sig, std::size_t f, std::size_t g) {
  const std::size_t n = sig[f].arity, m = sig[g].arity;
  std::vector<Term> rows;
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Term> args;
    for (std::size_t j = 1; j <= m; ++j) args.push_back(Term::variable(grid_variable(i, j, n, m)));
    rows.push_back(Term::apply(sig[g].name, std::move(args)));
  }
  return {gep_lhs(sig, f, g), Term::apply(sig[f].name, std::move(rows))};
}

std::optional<EntropyCounterexample> entropy_counterexample(const Algebra& A) {
  const Signature& sig = A.signature();
  for (std::size_t f = 0; f < sig.size(); ++f)
    for (std::size_t g = 0; g < sig.size(); ++g) {
      Identity id = entropic_identity(sig, f, g);
      if (auto v = counterexample(A, id)) {
        EntropyCounterexample out{f, g, id, *v, eval(A, id.lhs, *v), eval(A, id.rhs, *v)};
        return out;
      }
    }
  return std::nullopt;
}

bool is_entropic(const Algebra& A) { return !entropy_counterexample(A); }

std::string instantiate(const Algebra& A, const Term& t, const Assignment& v) {
  std::map<std::string, Term> sigma;
  for (const auto& [name, e] : v.bindings()) sigma.emplace(name, Term::variable(A.element_name(e)));
  return to_string(substitute(t, sigma));
}

// ---------------------------------------------------------------------------
// GEP witnesses

Identity gep_identity(const Signature& sig, std::size_t f, std::size_t g,
                      std::span<const Term> ts, std::span<const std::string> vars) {
  const std::size_t n = sig[f].arity, m = sig[g].arity;
  if (ts.size() != n) throw PreconditionError("expected " + std::to_string(n) + " terms");
  if (vars.size() != m) throw PreconditionError("expected " + std::to_string(m) + " variables");
  std::vector<Term> args;
  for (std::size_t i = 1; i <= n; ++i) {
    std::map<std::string, Term> sigma;
    for (std::size_t j = 1; j <= m; ++j) sigma.emplace(vars[j - 1], Term::variable(grid_variable(i, j, n, m)));
    for (const auto& x : variables(ts[i - 1]))
      if (!sigma.count(x)) throw UnboundVariable("witness term uses variable '" + x + "'");
    args.push_back(substitute(ts[i - 1], sigma));
  }
  return {gep_lhs(sig, f, g), Term::apply(sig[f].name, std::move(args))};
}

bool check_gep_witness(const Algebra& A, std::size_t f, std::size_t g,
                       std::span<const CloneElement> ts) {
  const std::size_t n = A.signature()[f].arity, m = A.signature()[g].arity;
  const std::size_t cells = power(A.size(), m);
  if (ts.size() != n)
    throw PreconditionError("operation '" + A.signature()[f].name + "' needs " + std::to_string(n) +
                            " witness terms");
  for (const auto& t : ts)
    if (t.arity != m || t.table.size() != cells)
      throw PreconditionError("witness terms must be " + std::to_string(m) + "-ary");
  const auto lhs = lhs_table(A, f, g);
  std::vector<Elem> args(n);
  for (std::size_t code = 0; code < lhs.size(); ++code) {
    std::size_t rest = code;
    for (std::size_t i = n; i-- > 0;) {
      args[i] = ts[i].table[rest % cells];
      rest /= cells;
    }
    if (A.apply(f, args) != lhs[code]) return false;
  }
  return true;
}

bool check_gep_witness(const Algebra& A, std::size_t f, std::size_t g,
                       std::span<const Term> ts, std::span<const std::string> vars) {
  if (vars.size() != A.signature()[g].arity)
    throw PreconditionError("witness terms need " + std::to_string(A.signature()[g].arity) + " variables");
  std::vector<CloneElement> ops;
  for (const auto& t : ts) ops.push_back(term_op(A, t, vars));
  return check_gep_witness(A, f, g, ops);
}

// ---------------------------------------------------------------------------
// GepPairSearch

GepPairSearch::GepPairSearch(const Algebra& A, std::size_t f, std::size_t g)
    : A_(&A), f_(f), g_(g), n_(A.signature()[f].arity), m_(A.signature()[g].arity), s_(A.size()) {
  if (s_ > 64) throw PreconditionError("GEP search supports algebras with at most 64 elements");
  cells_ = power(s_, m_);
  lhs_ = lhs_table(A, f, g);
  if (n_ == 0) {
    feasible_ = lhs_[0] == A.table(f)[0];
    return;
  }

  // Initial domains: t(r) lies in the subuniverse generated by the row r.
  std::vector<std::uint64_t> initial(cells_);
  std::vector<Elem> row(m_);
  for (std::size_t c = 0; c < cells_; ++c) {
    std::size_t rest = c;
    for (std::size_t j = m_; j-- > 0;) {
      row[j] = static_cast<Elem>(rest % s_);
      rest /= s_;
    }
    Subset gen(s_, row);
    std::uint64_t mask = 0;
    sg_closure(A, gen).for_each([&](Elem e) { mask |= bit(e); });
    initial[c] = mask;
  }
  domains_.assign(n_, initial);

  // Generalized arc consistency.
  const auto& table = A.table(f);
  std::vector<std::size_t> code(n_);
  std::vector<Elem> args(n_);
  std::vector<std::uint64_t> cur(n_);
  // Some tuple in the product of the `cur` domains maps to `target`.
  auto supported = [&](Elem target) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (cur[j] == 0) return false;
      args[j] = static_cast<Elem>(std::countr_zero(cur[j]));
    }
    while (true) {
      std::size_t pos = 0;
      for (std::size_t j = 0; j < n_; ++j) pos = pos * s_ + args[j];
      if (table[pos] == target) return true;
      std::size_t j = n_;
      while (true) {
        if (j == 0) return false;
        --j;
        const std::uint64_t higher = cur[j] & ~((bit(args[j]) << 1) - 1);
        if (higher) {
          args[j] = static_cast<Elem>(std::countr_zero(higher));
          break;
        }
        args[j] = static_cast<Elem>(std::countr_zero(cur[j]));
      }
    }
  };
  bool changed = true;
  while (changed && feasible_) {
    changed = false;
    for (std::size_t t = 0; t < lhs_.size() && feasible_; ++t) {
      std::size_t rest = t;
      for (std::size_t i = n_; i-- > 0;) {
        code[i] = rest % cells_;
        rest /= cells_;
      }
      for (std::size_t i = 0; i < n_; ++i) {
        const std::uint64_t dom = domains_[i][code[i]];
        std::uint64_t kept = 0;
        for (std::uint64_t bits = dom; bits; bits &= bits - 1) {
          const Elem v = static_cast<Elem>(std::countr_zero(bits));
          for (std::size_t j = 0; j < n_; ++j) cur[j] = j == i ? bit(v) : domains_[j][code[j]];
          if (supported(lhs_[t])) kept |= bit(v);
        }
        if (kept != dom) {
          domains_[i][code[i]] = kept;
          changed = true;
          if (kept == 0) feasible_ = false;
        }
      }
    }
  }
}

bool GepPairSearch::admits(std::size_t i, std::span<const Elem> table) const {
  if (table.size() != cells_) return false;
  for (std::size_t c = 0; c < cells_; ++c)
    if (!(domains_[i][c] & bit(table[c]))) return false;
  return true;
}

std::vector<std::vector<std::size_t>> GepPairSearch::candidates(const Clone& C) const {
  std::vector<std::vector<std::size_t>> out(n_);
  if (!feasible_) return out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < C.size(); ++k)
      if (admits(i, C.elements[k].table)) out[i].push_back(k);
  return out;
}

std::uint64_t GepPairSearch::needed_last(std::span<const Elem* const> prefix, std::size_t cell) const {
  // Values w with f(t1[c1], .., t_{n-1}[c_{n-1}], w) = lhs for every c1..c_{n-1}.
  const auto& table = A_->table(f_);
  std::uint64_t mask = domains_[n_ - 1][cell];
  const std::size_t k = n_ - 1;
  const std::size_t combos = power(cells_, k);
  for (std::size_t t = 0; t < combos && mask; ++t) {
    std::size_t rest = t, pos = 0, code = 0;
    // Decode c_1..c_{n-1} (c_1 most significant).
    std::size_t cs[16];
    for (std::size_t i = k; i-- > 0;) {
      cs[i] = rest % cells_;
      rest /= cells_;
    }
    for (std::size_t i = 0; i < k; ++i) {
      pos = pos * s_ + prefix[i][cs[i]];
      code = code * cells_ + cs[i];
    }
    code = code * cells_ + cell;
    const Elem target = lhs_[code];
    std::uint64_t ok = 0;
    for (std::uint64_t bits = mask; bits; bits &= bits - 1) {
      const Elem w = static_cast<Elem>(std::countr_zero(bits));
      if (table[pos * s_ + w] == target) ok |= bit(w);
    }
    mask = ok;
  }
  return mask;
}

std::optional<std::vector<std::size_t>> GepPairSearch::first_witness(
    const Clone& C, const std::vector<std::vector<std::size_t>>& lists) const {
  if (!feasible_) return std::nullopt;
  if (n_ == 0) return std::vector<std::size_t>{};
  if (n_ > 16) throw PreconditionError("GEP search supports arity at most 16");
  for (const auto& l : lists)
    if (l.empty()) return std::nullopt;

  const std::size_t k = n_ - 1;
  std::optional<std::vector<std::size_t>> best;
  std::size_t best_max = 0;
  std::vector<std::size_t> pos(k, 0);
  std::vector<const Elem*> prefix(k);
  std::vector<std::uint64_t> need(cells_);
  while (true) {
    std::size_t pmax = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t idx = lists[i][pos[i]];
      prefix[i] = C.elements[idx].table.data();
      pmax = std::max(pmax, idx);
    }
    if (k > 0 && best && lists[0][pos[0]] > best_max) break;
    if (!best || pmax < best_max) {
      bool possible = true;
      for (std::size_t c = 0; c < cells_ && possible; ++c) {
        need[c] = needed_last(prefix, c);
        possible = need[c] != 0;
      }
      if (possible) {
        for (std::size_t idx : lists[k]) {
          if (best && std::max(pmax, idx) >= best_max) break;
          const auto& t = C.elements[idx].table;
          bool fits = true;
          for (std::size_t c = 0; c < cells_ && fits; ++c) fits = (need[c] >> t[c]) & 1u;
          if (fits) {
            std::vector<std::size_t> w;
            for (std::size_t i = 0; i < k; ++i) w.push_back(lists[i][pos[i]]);
            w.push_back(idx);
            best = std::move(w);
            best_max = std::max(pmax, idx);
            break;
          }
        }
      }
    }
    // Next prefix in lexicographic order.
    std::size_t i = k;
    while (i > 0 && ++pos[i - 1] == lists[i - 1].size()) pos[--i] = 0;
    if (i == 0) break;
  }
  return best;
}

std::optional<std::size_t> GepPairSearch::uniform_witness(const Clone& C,
                                                          const std::vector<std::size_t>& list) const {
  if (!feasible_ || n_ == 0) return std::nullopt;
  std::vector<const Elem*> prefix(n_ - 1);
  for (std::size_t idx : list) {
    const auto& t = C.elements[idx].table;
    bool ok = true;
    for (std::size_t i = 0; i < n_ && ok; ++i) ok = admits(i, t);
    if (!ok) continue;
    std::fill(prefix.begin(), prefix.end(), t.data());
    for (std::size_t c = 0; c < cells_ && ok; ++c) ok = (needed_last(prefix, c) >> t[c]) & 1u;
    if (ok) return idx;
  }
  return std::nullopt;
}

bool GepPairSearch::check(std::span<const std::vector<Elem>* const> tables) const {
  if (tables.size() != n_) return false;
  std::vector<Elem> args(n_);
  for (std::size_t code = 0; code < lhs_.size(); ++code) {
    std::size_t rest = code;
    for (std::size_t i = n_; i-- > 0;) {
      args[i] = (*tables[i])[rest % cells_];
      rest /= cells_;
    }
    if (A_->apply(f_, args) != lhs_[code]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// search_gep

std::string to_string(const GepMode& mode) {
  switch (mode.kind) {
    case GepMode::Kind::basic_ops: return "basic";
    case GepMode::Kind::depth_bounded: return "depth:" + std::to_string(mode.depth);
    case GepMode::Kind::full_clone: return "full";
  }
  return "full";
}

namespace {

Clone basic_pool(const Algebra& A, std::size_t m) {
  Clone C;
  C.arity = m;
  C.variables = clone_variables(m);
  C.complete = false;
  std::vector<CloneElement> all;
  std::vector<Term> vars;
  for (const auto& v : C.variables) vars.push_back(Term::variable(v));
  for (const auto& v : vars) all.push_back(term_op(A, v, C.variables));
  for (const auto& op : A.signature())
    if (op.arity == m) all.push_back(term_op(A, Term::apply(op.name, vars), C.variables));
  for (auto& e : all)
    if (!C.find(e.table)) C.elements.push_back(std::move(e));
  return C;
}

}  // namespace

GepReport search_gep(const Algebra& A, const GepOptions& options) {
  const Signature& sig = A.signature();
  const bool full = options.mode.kind == GepMode::Kind::full_clone;
  GepReport report;
  report.mode = options.mode;
  std::map<std::size_t, Clone> pools;
  auto pool = [&](std::size_t m) -> const Clone& {
    auto it = pools.find(m);
    if (it != pools.end()) return it->second;
    Clone C;
    switch (options.mode.kind) {
      case GepMode::Kind::basic_ops:
        C = basic_pool(A, m);
        break;
      case GepMode::Kind::depth_bounded: {
        CloneOptions o = options.clone;
        o.max_depth = options.mode.depth;
        o.truncate = true;
        C = clone(A, m, o);
        break;
      }
      case GepMode::Kind::full_clone: {
        CloneOptions o = options.clone;
        o.truncate = true;
        C = clone(A, m, o);
        break;
      }
    }
    if (!C.complete) report.clones_complete = false;
    return pools.emplace(m, std::move(C)).first->second;
  };

  bool any_fail = false, any_unknown = false;
  for (std::size_t f = 0; f < sig.size(); ++f) {
    for (std::size_t g = 0; g < sig.size(); ++g) {
      if (any_fail && options.stop_at_failure) break;
      GepPairResult r;
      r.f = f;
      r.g = g;
      GepPairSearch search(A, f, g);
      if (!search.relaxed_feasible()) {
        r.refuted_by_domains = true;
        r.verdict = full ? Verdict::fails : Verdict::unknown;
      } else if (search.outer_arity() == 0) {
        r.verdict = Verdict::holds;
      } else {
        const Clone& C = pool(sig[g].arity);
        auto lists = search.candidates(C);
        r.candidates = lists.empty() ? 0 : lists[0].size();
        if (auto w = search.first_witness(C, lists)) {
          r.verdict = Verdict::holds;
          for (std::size_t idx : *w) r.witness.push_back(C.elements[idx]);
        } else {
          r.verdict = full && C.complete ? Verdict::fails : Verdict::unknown;
        }
      }
      any_fail = any_fail || r.verdict == Verdict::fails;
      any_unknown = any_unknown || r.verdict == Verdict::unknown;
      report.pairs.push_back(std::move(r));
    }
  }
  report.verdict = any_fail ? Verdict::fails : any_unknown ? Verdict::unknown : Verdict::holds;
  return report;
}

// ---------------------------------------------------------------------------
// Groupoid identities

PseudoDistributivity pseudo_distributivity(const Algebra& A, const Term& t, const Term& s) {
  auto bin = A.signature().sole_binary();
  if (!bin) throw SignatureError("pseudo-distributivity needs a single binary operation");
  for (const Term* term : {&t, &s})
    for (const auto& v : variables(*term))
      if (v != "x" && v != "y") throw PreconditionError("witness terms must use only x and y");
  const std::string& op = A.signature()[*bin].name;
  auto V = [](const char* name) { return Term::variable(name); };
  auto mul = [&](const Term& a, const Term& b) { return Term::apply(op, {a, b}); };
  auto T = [&](const Term& a, const Term& b) { return substitute(t, {{"x", a}, {"y", b}}); };
  auto S = [&](const Term& a, const Term& b) { return substitute(s, {{"x", a}, {"y", b}}); };
  const Term x = V("x"), y = V("y"), z = V("z"), u = V("u"), v = V("v");
  PseudoDistributivity out;
  out.g1 = holds(A, {mul(mul(x, y), mul(u, v)), mul(T(x, u), S(y, v))});
  out.g2 = holds(A, {mul(mul(x, y), mul(x, z)), mul(x, S(y, z))});
  out.g3 = holds(A, {mul(mul(y, x), mul(z, x)), mul(T(y, z), x)});
  out.g4 = holds(A, {mul(x, mul(y, z)), mul(T(x, y), S(x, z))});
  out.g5 = holds(A, {mul(mul(y, z), x), mul(T(y, x), S(z, x))});
  return out;
}

std::array<Identity, 2> cross_identities(const std::string& op) {
  auto V = [](const char* name) { return Term::variable(name); };
  auto mul = [&](const Term& a, const Term& b) { return Term::apply(op, {a, b}); };
  const Term x = V("x"), y = V("y"), u = V("u"), v = V("v");
  const Term lhs = mul(mul(x, y), mul(u, v));
  return {Identity{lhs, mul(mul(mul(x, y), mul(u, y)), mul(mul(x, v), mul(u, v)))},
          Identity{lhs, mul(mul(mul(x, y), mul(x, v)), mul(mul(u, y), mul(u, v)))}};
}

bool satisfies_cross_identities(const Algebra& A) {
  auto bin = A.signature().sole_binary();
  if (!bin) throw SignatureError("cross identities need a single binary operation");
  for (const auto& id : cross_identities(A.signature()[*bin].name))
    if (!holds(A, id)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Permutations

Permutation parse_permutation(std::string_view src, std::size_t degree) {
  if (degree == 0 || degree > 255) throw PreconditionError("unsupported permutation degree");
  Permutation p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint8_t>(i + 1);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
  };
  skip();
  if (src.substr(i) == "id") return p;
  if (i == src.size()) throw ParseError("empty permutation", 0);
  while (true) {
    skip();
    if (i == src.size()) break;
    if (src[i] != '(') throw ParseError("expected '('", i);
    ++i;
    std::vector<std::size_t> cycle;
    while (true) {
      skip();
      if (i < src.size() && src[i] == ')') {
        ++i;
        break;
      }
      if (i < src.size() && src[i] == ',' && !cycle.empty()) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      std::size_t value = 0;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
        value = value * 10 + static_cast<std::size_t>(src[i++] - '0');
      if (i == start) throw ParseError("expected a point or ')'", i);
      if (value < 1 || value > degree)
        throw ParseError("point " + std::to_string(value) + " outside 1.." + std::to_string(degree), start);
      if (std::find(cycle.begin(), cycle.end(), value) != cycle.end())
        throw ParseError("point " + std::to_string(value) + " repeated in a cycle", start);
      cycle.push_back(value);
    }
    // Products of cycles act right to left.
    Permutation c(degree);
    for (std::size_t k = 0; k < degree; ++k) c[k] = static_cast<std::uint8_t>(k + 1);
    for (std::size_t k = 0; k < cycle.size(); ++k)
      c[cycle[k] - 1] = static_cast<std::uint8_t>(cycle[(k + 1) % cycle.size()]);
    p = compose(p, c);
  }
  return p;
}

std::string to_string(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i + 1) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = p[j] - 1u) {
      if (j != i) out += " ";
      out += std::to_string(j + 1);
      seen[j] = true;
    }
    out += ")";
  }
  return out.empty() ? "id" : out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw PreconditionError("permutations of different degree");
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i] - 1u];
  return r;
}

std::vector<Permutation> generated_subgroup(std::span<const Permutation> gens, std::size_t degree) {
  Permutation id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint8_t>(i + 1);
  for (const auto& g : gens)
    if (g.size() != degree) throw PreconditionError("generator of wrong degree");
  std::set<Permutation> group{id};
  std::deque<Permutation> queue{id};
  while (!queue.empty()) {
    Permutation p = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Permutation r = compose(g, p);
      if (group.insert(r).second) queue.push_back(std::move(r));
    }
  }
  return {group.begin(), group.end()};
}

Identity permutation_identity(const Permutation& p) {
  if (p.size() != 4) throw PreconditionError("permutation identities need degree 4");
  auto x = [](std::size_t i) { return Term::variable("x" + std::to_string(i)); };
  auto mul = [](const Term& a, const Term& b) { return Term::apply("*", {a, b}); };
  return {mul(mul(x(1), x(2)), mul(x(3), x(4))),
          mul(mul(x(p[0]), x(p[1])), mul(x(p[2]), x(p[3])))};
}

bool permutation_entropy_test(std::span<const Permutation> gens) {
  const auto group = generated_subgroup(gens, 4);
  const Permutation swap23 = {1, 3, 2, 4};
  return std::binary_search(group.begin(), group.end(), swap23);
}

// ---------------------------------------------------------------------------
// Loops

LoopTrichotomy loop_trichotomy(const Algebra& A, const GepOptions& options) {
  const Signature& sig = A.signature();
  for (const char* name : {"*", "/", "\\"}) {
    auto i = sig.find(name);
    if (!i || sig[*i].arity != 2) throw SignatureError(std::string("loop needs binary '") + name + "'");
  }
  auto e = sig.find("e");
  if (!e || sig[*e].arity != 0 || sig.size() != 4)
    throw SignatureError("loop signature is (*, /, \\, e)");
  for (const char* axiom : {"x\\(x*y) = y", "(y*x)/x = y", "x*(x\\y) = y", "(y/x)*x = y",
                            "x*e = x", "e*x = x"})
    if (!holds(A, parse_identity(axiom, sig)))
      throw PreconditionError(std::string("loop axiom fails: ") + axiom);
  LoopTrichotomy out;
  out.entropic = is_entropic(A);
  out.abelian_group = holds(A, parse_identity("(x*y)*z = x*(y*z)", sig)) &&
                      holds(A, parse_identity("x*y = y*x", sig));
  out.gep = search_gep(A, options).verdict;
  return out;
}

}  // namespace entropica
