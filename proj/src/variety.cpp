#include "entropica/variety.hpp"

#include <algorithm>
#include <numeric>

#include "entropica/errors.hpp"

namespace entropica {

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

struct Shape {
  std::vector<std::string> variables;
  std::vector<std::size_t> k;
  std::vector<std::size_t> l;
  Linearization t_lin;
  Linearization s_lin;
};

Shape shape_of(const Term& t, const Term& s) {
  auto vars = variables(Identity{t, s});
  Shape sh{vars, {}, {}, linearize(t, vars), linearize(s, vars)};
  const auto s_counts = occurrence_counts(s);
  for (std::size_t i = 0; i < sh.variables.size(); ++i) {
    sh.k.push_back(sh.t_lin.groups[i].size());
    auto it = s_counts.find(sh.variables[i]);
    sh.l.push_back(it == s_counts.end() ? 0 : it->second);
  }
  return sh;
}

// Witness of a k-ary clone element with its variables renamed to `names`.
Term rename_witness(const CloneElement& e, const std::vector<std::string>& names) {
  const auto vars = clone_variables(e.arity);
  std::map<std::string, Term> sigma;
  for (std::size_t i = 0; i < vars.size(); ++i) sigma.emplace(vars[i], Term::variable(names[i]));
  return substitute(e.witness, sigma);
}

Term relabel(const Term& t, const std::vector<std::string>& names, std::size_t& next) {
  if (t.is_variable()) return Term::variable(names[next++]);
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(relabel(a, names, next));
  return Term::apply(t.symbol(), std::move(args));
}

void leaf_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    out.push_back(t.symbol());
    return;
  }
  for (const auto& a : t.args()) leaf_variables(a, out);
}

}  // namespace

PrecursorWitness make_precursor(const Term& t, const Term& s,
                                std::vector<std::vector<CloneElement>> r) {
  Shape sh = shape_of(t, s);
  const std::size_t n = sh.variables.size();
  if (r.size() != n)
    throw PreconditionError("precursor needs terms for " + std::to_string(n) + " variables");
  std::map<std::string, Term> sigma;
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i].size() != sh.l[i])
      throw PreconditionError("variable '" + sh.variables[i] + "' occurs " + std::to_string(sh.l[i]) +
                              " times on the right");
    for (std::size_t j = 0; j < r[i].size(); ++j) {
      if (r[i][j].arity != sh.k[i])
        throw PreconditionError("term for '" + sh.variables[i] + "' must be " +
                                std::to_string(sh.k[i]) + "-ary");
      sigma.emplace(fresh_name(sh.variables[i], j + 1), rename_witness(r[i][j], sh.t_lin.groups[i]));
    }
  }
  PrecursorWitness w;
  w.variables = sh.variables;
  w.k = sh.k;
  w.l = sh.l;
  w.r = std::move(r);
  w.t_star = sh.t_lin.star;
  w.s_tilde = substitute(sh.s_lin.star, sigma);
  return w;
}

bool check_precursor(const Algebra& A, const Term& t, const Term& s,
                     const std::vector<std::vector<CloneElement>>& r) {
  const PrecursorWitness w = make_precursor(t, s, r);
  return holds(A, Identity{w.t_star, w.s_tilde});
}

PrecursorSearch search_precursor(const Algebra& A, const Term& t, const Term& s,
                                 const CloneOptions& clone_options, std::size_t max_candidates) {
  PrecursorSearch out;
  const Shape sh = shape_of(t, s);
  const std::size_t n = sh.variables.size();
  const std::size_t size = A.size();

  std::map<std::size_t, Clone> clones;
  try {
    for (std::size_t i = 0; i < n; ++i)
      if (sh.l[i] > 0 && !clones.count(sh.k[i])) {
        CloneOptions o = clone_options;
        o.truncate = false;
        clones.emplace(sh.k[i], clone(A, sh.k[i], o));
      }
  } catch (const BudgetExceeded&) {
    return out;
  }

  // Variables of t*, grouped by original variable.
  std::vector<std::string> t_vars;
  std::vector<std::size_t> group_start;
  for (std::size_t i = 0; i < n; ++i) {
    group_start.push_back(t_vars.size());
    for (const auto& v : sh.t_lin.groups[i]) t_vars.push_back(v);
  }
  const std::size_t K = t_vars.size();
  if (K > 24 || power(size, K) > 20'000'000) return out;
  const std::size_t cells = power(size, K);

  // Slots: occurrences of variables in s, in group order.
  struct Slot {
    std::size_t var;
    const Clone* clone;
  };
  std::vector<Slot> slots;
  std::vector<std::string> s_vars;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < sh.l[i]; ++j) {
      slots.push_back({i, &clones.at(sh.k[i])});
      s_vars.push_back(fresh_name(sh.variables[i], j + 1));
    }

  const CompiledTerm t_star(A, sh.t_lin.star, t_vars);
  const CompiledTerm s_star(A, sh.s_lin.star, s_vars);
  std::vector<Elem> t_values(cells);
  std::vector<std::size_t> group_cells(cells * n);
  {
    std::vector<Elem> a(K), stack;
    for (std::size_t c = 0; c < cells; ++c) {
      std::size_t rest = c;
      for (std::size_t v = K; v-- > 0;) {
        a[v] = static_cast<Elem>(rest % size);
        rest /= size;
      }
      t_values[c] = t_star(a, stack);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t code = 0;
        for (std::size_t j = 0; j < sh.k[i]; ++j) code = code * size + a[group_start[i] + j];
        group_cells[c * n + i] = code;
      }
    }
  }

  std::vector<std::size_t> choice(slots.size(), 0);
  std::vector<Elem> vals(slots.size()), stack;
  while (true) {
    if (++out.tried > max_candidates) return out;
    bool ok = true;
    for (std::size_t c = 0; c < cells && ok; ++c) {
      for (std::size_t q = 0; q < slots.size(); ++q)
        vals[q] = slots[q].clone->elements[choice[q]].table[group_cells[c * n + slots[q].var]];
      ok = s_star(vals, stack) == t_values[c];
    }
    if (ok) {
      std::vector<std::vector<CloneElement>> r(n);
      for (std::size_t q = 0; q < slots.size(); ++q)
        r[slots[q].var].push_back(slots[q].clone->elements[choice[q]]);
      out.witness = make_precursor(t, s, std::move(r));
      out.verdict = Verdict::holds;
      return out;
    }
    std::size_t q = slots.size();
    while (q > 0 && ++choice[q - 1] == slots[q - 1].clone->size()) choice[--q] = 0;
    if (q == 0) break;
  }
  out.verdict = Verdict::fails;
  return out;
}

SubVResult sub_v_satisfies(const Algebra& A, const Identity& id, const GepOptions& gep) {
  SubVResult out;
  GepOptions opts = gep;
  opts.mode = GepMode::full();
  opts.stop_at_failure = true;
  const Verdict v = search_gep(A, opts).verdict;
  if (v == Verdict::fails)
    throw PreconditionError("V(" + A.name() + ") fails the generalized entropic property");
  if (v == Verdict::unknown) return out;
  out.forward = search_precursor(A, id.lhs, id.rhs, gep.clone);
  out.backward = search_precursor(A, id.rhs, id.lhs, gep.clone);
  if (out.forward.verdict == Verdict::fails || out.backward.verdict == Verdict::fails)
    out.verdict = Verdict::fails;
  else if (out.forward.verdict == Verdict::unknown || out.backward.verdict == Verdict::unknown)
    out.verdict = Verdict::unknown;
  else
    out.verdict = Verdict::holds;
  return out;
}

GlobVResult glob_v_satisfies(const Algebra& A, const Identity& id, std::size_t max_leaves) {
  GlobVResult out;
  std::vector<std::string> t_leaves, u_leaves;
  leaf_variables(id.lhs, t_leaves);
  leaf_variables(id.rhs, u_leaves);
  if (t_leaves.size() + u_leaves.size() > max_leaves) return out;

  const auto vars = variables(id);
  // For each variable: its leaf positions on both sides and the list of
  // maximal matchings, each as pairs (t position, u position).
  using Matching = std::vector<std::pair<std::size_t, std::size_t>>;
  std::vector<std::vector<Matching>> options;
  for (const auto& x : vars) {
    std::vector<std::size_t> tp, up;
    for (std::size_t i = 0; i < t_leaves.size(); ++i)
      if (t_leaves[i] == x) tp.push_back(i);
    for (std::size_t i = 0; i < u_leaves.size(); ++i)
      if (u_leaves[i] == x) up.push_back(i);
    const bool t_small = tp.size() <= up.size();
    const auto& small = t_small ? tp : up;
    const auto& large = t_small ? up : tp;
    // Injections small -> large, as arrangements in lexicographic order.
    std::vector<Matching> ms;
    std::vector<std::size_t> pick;
    std::vector<bool> used(large.size(), false);
    auto rec = [&](auto&& self) -> void {
      if (pick.size() == small.size()) {
        Matching m;
        for (std::size_t a = 0; a < small.size(); ++a)
          m.emplace_back(t_small ? small[a] : large[pick[a]], t_small ? large[pick[a]] : small[a]);
        ms.push_back(std::move(m));
        return;
      }
      for (std::size_t b = 0; b < large.size(); ++b) {
        if (used[b]) continue;
        used[b] = true;
        pick.push_back(b);
        self(self);
        pick.pop_back();
        used[b] = false;
      }
    };
    rec(rec);
    options.push_back(std::move(ms));
  }

  std::vector<std::size_t> choice(vars.size(), 0);
  while (true) {
    ++out.tried;
    std::vector<std::string> t_names(t_leaves.size()), u_names(u_leaves.size());
    std::map<std::string, std::size_t> t_seen, u_extra;
    std::map<std::string, std::string> sigma;
    for (std::size_t i = 0; i < t_leaves.size(); ++i) {
      t_names[i] = fresh_name(t_leaves[i], ++t_seen[t_leaves[i]]);
      sigma[t_names[i]] = t_leaves[i];
    }
    std::vector<std::optional<std::size_t>> partner(u_leaves.size());
    for (std::size_t v = 0; v < vars.size(); ++v)
      for (const auto& [tp, up] : options[v][choice[v]]) partner[up] = tp;
    for (std::size_t i = 0; i < u_leaves.size(); ++i) {
      if (partner[i]) {
        u_names[i] = t_names[*partner[i]];
      } else {
        u_names[i] = fresh_name(u_leaves[i], t_seen[u_leaves[i]] + ++u_extra[u_leaves[i]]);
        sigma[u_names[i]] = u_leaves[i];
      }
    }
    std::size_t next = 0;
    Term tl = relabel(id.lhs, t_names, next);
    next = 0;
    Term ul = relabel(id.rhs, u_names, next);
    Identity linear{tl, ul};
    if (holds(A, linear)) {
      out.verdict = Verdict::holds;
      out.witness = IdentificationWitness{std::move(linear), std::move(sigma)};
      return out;
    }
    std::size_t v = vars.size();
    while (v > 0 && ++choice[v - 1] == options[v - 1].size()) choice[--v] = 0;
    if (v == 0) break;
  }
  out.verdict = Verdict::fails;
  return out;
}

}  // namespace entropica
