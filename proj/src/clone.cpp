#include "entropica/clone.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>

#include "entropica/errors.hpp"

namespace entropica {

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::uint64_t hash_table(const Elem* data, std::size_t len) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= data[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return h;
}

// Flat storage of equally long tables with an open-addressing index.
class TablePool {
 public:
  explicit TablePool(std::size_t cells) : cells_(cells), slots_(64, 0) {}

  std::size_t size() const noexcept { return hashes_.size(); }
  const Elem* at(std::size_t i) const noexcept { return data_.data() + i * cells_; }

  /// Scratch area for the next candidate.
  Elem* candidate() {
    data_.resize((size() + 1) * cells_);
    return data_.data() + size() * cells_;
  }

  /// Index of an equal table, or the new index if the candidate was kept.
  std::pair<std::size_t, bool> commit() {
    const Elem* cand = data_.data() + size() * cells_;
    const std::uint64_t h = hash_table(cand, cells_);
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = h & mask;; s = (s + 1) & mask) {
      const std::uint32_t v = slots_[s];
      if (v == 0) break;
      if (hashes_[v - 1] == h && std::memcmp(at(v - 1), cand, cells_ * sizeof(Elem)) == 0) {
        data_.resize(size() * cells_);
        return {v - 1, false};
      }
    }
    const std::size_t idx = size();
    hashes_.push_back(h);
    if (2 * hashes_.size() > slots_.size()) rehash();
    else place(idx);
    return {idx, true};
  }

  std::optional<std::size_t> find(std::span<const Elem> table) const {
    if (table.size() != cells_) return std::nullopt;
    const std::uint64_t h = hash_table(table.data(), cells_);
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = h & mask;; s = (s + 1) & mask) {
      const std::uint32_t v = slots_[s];
      if (v == 0) return std::nullopt;
      if (hashes_[v - 1] == h && std::memcmp(at(v - 1), table.data(), cells_ * sizeof(Elem)) == 0)
        return v - 1;
    }
  }

 private:
  void place(std::size_t idx) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t s = hashes_[idx] & mask;
    while (slots_[s] != 0) s = (s + 1) & mask;
    slots_[s] = static_cast<std::uint32_t>(idx + 1);
  }

  void rehash() {
    slots_.assign(slots_.size() * 2, 0);
    for (std::size_t i = 0; i < hashes_.size(); ++i) place(i);
  }

  std::size_t cells_;
  std::vector<Elem> data_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint32_t> slots_;
};

}  // namespace

std::size_t default_cell_budget() {
  if (const char* env = std::getenv("ENTROPICA_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000'000;
}

std::vector<std::string> clone_variables(std::size_t k) {
  static const char* small[] = {"x", "y", "z"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i)
    out.push_back(k <= 3 ? std::string(small[i]) : "x" + std::to_string(i + 1));
  return out;
}

std::optional<std::size_t> Clone::find(std::span<const Elem> table) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (std::equal(table.begin(), table.end(), elements[i].table.begin(), elements[i].table.end()))
      return i;
  return std::nullopt;
}

Clone clone(const Algebra& A, std::size_t k, const CloneOptions& options) {
  const std::size_t n = A.size();
  const std::size_t cells = power(n, k);
  const Signature& sig = A.signature();
  Clone C;
  C.arity = k;
  C.variables = clone_variables(k);
  TablePool pool(cells);
  std::vector<std::size_t> stride(k);
  for (std::size_t i = 0; i < k; ++i) stride[i] = power(n, k - 1 - i);

  auto over_budget = [&](std::size_t count) {
    return count > options.max_elements || count * cells > options.cell_budget;
  };
  auto stop = [&]() {
    if (!options.truncate)
      throw BudgetExceeded("clone of arity " + std::to_string(k) + " exceeds its budget after " +
                               std::to_string(C.elements.size()) + " elements",
                           C.elements.size());
    C.complete = false;
  };

  auto keep = [&](Term witness, std::size_t depth) -> bool {
    auto [idx, fresh] = pool.commit();
    if (!fresh) return true;
    if (over_budget(pool.size())) {
      stop();
      return false;
    }
    C.elements.push_back({k, std::vector<Elem>(pool.at(idx), pool.at(idx) + cells),
                          std::move(witness), depth});
    return true;
  };

  for (std::size_t i = 0; i < k; ++i) {
    Elem* t = pool.candidate();
    for (std::size_t c = 0; c < cells; ++c) t[c] = static_cast<Elem>(c / stride[i] % n);
    if (!keep(Term::variable(C.variables[i]), 0)) return C;
  }

  std::size_t frontier_begin = 0;
  std::vector<std::size_t> idx;
  for (std::size_t depth = 1;; ++depth) {
    const std::size_t end = C.elements.size();
    if (depth > options.max_depth) {
      C.complete = false;
      return C;
    }
    for (std::size_t op = 0; op < sig.size(); ++op) {
      const std::size_t a = sig[op].arity;
      const auto& table = A.table(op);
      if (a == 0) {
        if (depth != 1) continue;
        Elem* t = pool.candidate();
        std::fill(t, t + cells, table[0]);
        if (!keep(Term::apply(sig[op].name), depth)) return C;
        continue;
      }
      if (frontier_begin == end) continue;
      if (a > 16) throw PreconditionError("operations of arity above 16 are not supported");
      // Tuples over [0, end) in lexicographic order with some component in
      // the frontier [frontier_begin, end).
      idx.assign(a, 0);
      auto prefix_old = [&]() {
        for (std::size_t j = 0; j + 1 < a; ++j)
          if (idx[j] >= frontier_begin) return false;
        return true;
      };
      idx[a - 1] = prefix_old() ? frontier_begin : 0;
      while (true) {
        Elem* t = pool.candidate();
        const Elem* args[16];
        for (std::size_t j = 0; j < a; ++j) args[j] = pool.at(idx[j]);
        for (std::size_t c = 0; c < cells; ++c) {
          std::size_t pos = 0;
          for (std::size_t j = 0; j < a; ++j) pos = pos * n + args[j][c];
          t[c] = table[pos];
        }
        auto [found, fresh] = pool.commit();
        if (fresh) {
          if (over_budget(pool.size())) {
            stop();
            return C;
          }
          std::vector<Term> wargs;
          for (std::size_t j = 0; j < a; ++j) wargs.push_back(C.elements[idx[j]].witness);
          C.elements.push_back({k, std::vector<Elem>(pool.at(found), pool.at(found) + cells),
                                Term::apply(sig[op].name, std::move(wargs)), depth});
        }
        // Advance.
        std::size_t j = a;
        bool done = false;
        while (true) {
          if (j == 0) {
            done = true;
            break;
          }
          --j;
          if (++idx[j] < end) break;
          idx[j] = 0;
        }
        if (done) break;
        if (j + 1 < a && prefix_old()) idx[a - 1] = frontier_begin;
      }
    }
    if (C.elements.size() == end) return C;
    frontier_begin = end;
  }
}

CloneElement term_op(const Algebra& A, const Term& t, std::span<const std::string> vars) {
  const std::size_t n = A.size();
  const std::size_t k = vars.size();
  const std::size_t cells = power(n, k);
  CompiledTerm ct(A, t, vars);
  CloneElement out{k, std::vector<Elem>(cells), t, t.depth()};
  std::vector<Elem> values(k, 0), stack;
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    for (std::size_t j = k; j-- > 0;) {
      values[j] = static_cast<Elem>(rest % n);
      rest /= n;
    }
    out.table[c] = ct(values, stack);
  }
  return out;
}

Algebra clone_algebra(const Algebra& A, const Clone& C, std::string name) {
  if (!C.complete) throw PreconditionError("clone is incomplete");
  const std::size_t m = C.size();
  const std::size_t cells = power(A.size(), C.arity);
  TablePool pool(cells);
  std::vector<std::string> names;
  for (const auto& e : C.elements) {
    std::copy(e.table.begin(), e.table.end(), pool.candidate());
    pool.commit();
    names.push_back(to_string(e.witness));
  }
  std::vector<std::vector<Elem>> tables;
  const std::size_t n = A.size();
  std::vector<Elem> scratch(cells);
  for (std::size_t op = 0; op < A.signature().size(); ++op) {
    const std::size_t a = A.signature()[op].arity;
    const std::size_t tcells = power(m, a);
    std::vector<Elem> table(tcells);
    std::vector<std::size_t> idx(a);
    for (std::size_t cell = 0; cell < tcells; ++cell) {
      std::size_t rest = cell;
      for (std::size_t j = a; j-- > 0;) {
        idx[j] = rest % m;
        rest /= m;
      }
      for (std::size_t c = 0; c < cells; ++c) {
        std::size_t pos = 0;
        for (std::size_t j = 0; j < a; ++j) pos = pos * n + C.elements[idx[j]].table[c];
        scratch[c] = A.table(op)[pos];
      }
      auto found = pool.find(scratch);
      if (!found) throw PreconditionError("clone is not closed under '" + A.signature()[op].name + "'");
      table[cell] = static_cast<Elem>(*found);
    }
    tables.push_back(std::move(table));
  }
  return Algebra(std::move(name), std::move(names), A.signature(), std::move(tables));
}

FreeAlgebra free_algebra(std::span<const Algebra> generators, std::size_t k,
                         const CloneOptions& options) {
  if (generators.empty()) throw PreconditionError("free algebra needs at least one generator algebra");
  const Algebra P = generators.size() == 1 ? generators[0] : product(generators);
  CloneOptions opts = options;
  opts.truncate = false;
  Clone C = clone(P, k, opts);
  std::string name = "Free(";
  for (std::size_t i = 0; i < generators.size(); ++i) name += (i ? "," : "") + generators[i].name();
  name += ";" + std::to_string(k) + ")";
  Algebra F = clone_algebra(P, C, name);
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(static_cast<Elem>(i));
  return {std::move(F), std::move(C), std::move(gens)};
}

bool every_binary_term_linear(const Algebra& A) {
  if (!A.is_groupoid()) throw SignatureError("every_binary_term_linear needs a groupoid");
  const Clone C = clone(A, 2);
  const auto vars = clone_variables(2);
  const std::string& op = A.signature()[0].name;
  const Term x = Term::variable("x"), y = Term::variable("y");
  const Term linear[] = {x, y, Term::apply(op, {x, y}), Term::apply(op, {y, x})};
  std::vector<std::vector<Elem>> tables;
  for (const auto& t : linear) tables.push_back(term_op(A, t, vars).table);
  return std::all_of(C.elements.begin(), C.elements.end(), [&](const CloneElement& e) {
    return std::find(tables.begin(), tables.end(), e.table) != tables.end();
  });
}

}  // namespace entropica
