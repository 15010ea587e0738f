#include "entropica/complex.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "entropica/errors.hpp"

namespace entropica {

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Calls f(tuple) for every tuple over `lists` in lexicographic order.
template <class F>
void for_each_tuple(const std::vector<std::vector<Elem>>& lists, std::vector<Elem>& tuple, F&& f) {
  const std::size_t k = lists.size();
  for (const auto& l : lists)
    if (l.empty()) return;
  std::vector<std::size_t> pos(k, 0);
  tuple.resize(k);
  for (std::size_t i = 0; i < k; ++i) tuple[i] = lists[i][0];
  while (true) {
    f(tuple);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++pos[i] < lists[i].size()) {
        tuple[i] = lists[i][pos[i]];
        break;
      }
      pos[i] = 0;
      tuple[i] = lists[i][0];
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

// First tuple over the members of S under which some operation leaves S.
std::optional<std::pair<std::size_t, std::vector<Elem>>> escape(const Algebra& A, const Subset& S) {
  const auto members = S.elements();
  std::vector<Elem> tuple;
  for (std::size_t op = 0; op < A.signature().size(); ++op) {
    std::vector<std::vector<Elem>> lists(A.signature()[op].arity, members);
    std::optional<std::vector<Elem>> found;
    for_each_tuple(lists, tuple, [&](const std::vector<Elem>& t) {
      if (!found && !S.contains(A.apply(op, t))) found = t;
    });
    if (found) return std::make_pair(op, *found);
  }
  return std::nullopt;
}

}  // namespace

std::string subset_name(const Algebra& A, const Subset& S) {
  std::string out = "{";
  bool first = true;
  S.for_each([&](Elem e) {
    if (!first) out += ',';
    first = false;
    out += A.element_name(e);
  });
  return out + "}";
}

Subset complex_apply(const Algebra& A, std::size_t op, std::span<const Subset> args) {
  if (args.size() != A.signature()[op].arity)
    throw SignatureError("operation '" + A.signature()[op].name + "' has arity " +
                         std::to_string(A.signature()[op].arity));
  std::vector<std::vector<Elem>> lists;
  for (const auto& S : args) {
    if (S.empty()) throw PreconditionError("complex operation on an empty subset");
    if (S.universe() != A.size()) throw PreconditionError("subset over a different universe");
    lists.push_back(S.elements());
  }
  Subset out(A.size());
  std::vector<Elem> tuple;
  for_each_tuple(lists, tuple, [&](const std::vector<Elem>& t) { out.insert(A.apply(op, t)); });
  return out;
}

Subset sg_closure(const Algebra& A, const Subset& S) {
  if (S.universe() != A.size()) throw PreconditionError("subset over a different universe");
  Subset out(A.size());
  std::vector<Elem> members;
  auto add = [&](Elem e) {
    if (out.insert(e)) members.push_back(e);
  };
  S.for_each(add);
  const Signature& sig = A.signature();
  for (std::size_t op = 0; op < sig.size(); ++op)
    if (sig[op].arity == 0) add(A.table(op)[0]);

  // Semi-naive: when member p is processed, apply every operation to the
  // tuples over members[0..p] that use p, split by the first position
  // holding p.
  std::vector<Elem> args;
  for (std::size_t p = 0; p < members.size(); ++p) {
    for (std::size_t op = 0; op < sig.size(); ++op) {
      const std::size_t k = sig[op].arity;
      for (std::size_t first = 0; first < k; ++first) {
        // positions < first range over [0,p), position first is p, later over [0,p]
        std::vector<std::size_t> idx(k, 0);
        idx[first] = p;
        bool done = false;
        if (first > 0 && p == 0) continue;
        while (!done) {
          args.resize(k);
          for (std::size_t j = 0; j < k; ++j) args[j] = members[idx[j]];
          add(A.apply(op, args));
          std::size_t j = k;
          while (true) {
            if (j == 0) {
              done = true;
              break;
            }
            --j;
            if (j == first) continue;
            const std::size_t limit = j < first ? p : p + 1;
            if (++idx[j] < limit) break;
            idx[j] = 0;
          }
        }
      }
    }
  }
  return out;
}

std::vector<Subset> all_subuniverses(const Algebra& A, bool nonempty, std::size_t max_count) {
  const std::size_t n = A.size();
  std::unordered_set<Subset, SubsetHash> seen;
  std::deque<Subset> queue;
  auto visit = [&](Subset S) {
    if (S.empty() && nonempty) return;
    if (seen.insert(S).second) {
      if (seen.size() > max_count)
        throw BudgetExceeded("more than " + std::to_string(max_count) + " subuniverses", seen.size());
      queue.push_back(std::move(S));
    }
  };
  visit(sg_closure(A, Subset(n)));
  for (Elem a = 0; a < n; ++a) visit(sg_closure(A, Subset::singleton(n, a)));
  while (!queue.empty()) {
    Subset S = std::move(queue.front());
    queue.pop_front();
    for (Elem a = 0; a < n; ++a)
      if (!S.contains(a)) {
        Subset T = S;
        T.insert(a);
        visit(sg_closure(A, T));
      }
  }
  std::vector<Subset> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subset> small_subuniverses(const Algebra& A, std::size_t k) {
  const std::size_t n = A.size();
  std::unordered_set<Subset, SubsetHash> seen;
  if (Subset s = sg_closure(A, Subset(n)); !s.empty()) seen.insert(s);
  // Generating sets as increasing index tuples of length 1..k.
  for (std::size_t len = 1; len <= std::min(k, n); ++len) {
    std::vector<Elem> gens(len);
    for (std::size_t i = 0; i < len; ++i) gens[i] = static_cast<Elem>(i);
    while (true) {
      seen.insert(sg_closure(A, Subset(n, gens)));
      std::size_t i = len;
      while (i > 0 && gens[i - 1] == n - len + i - 1) --i;
      if (i == 0) break;
      ++gens[i - 1];
      for (std::size_t j = i; j < len; ++j) gens[j] = gens[j - 1] + 1;
    }
  }
  std::vector<Subset> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

SubClosureReport is_sub_closed(const Algebra& A) {
  const Signature& sig = A.signature();
  const auto family = small_subuniverses(A, std::max<std::size_t>(sig.max_arity(), 1));
  std::unordered_map<Subset, bool, SubsetHash> cache;

  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t k = sig[op].arity;
    std::vector<std::size_t> idx(k, 0);
    std::vector<Subset> args(k);
    while (true) {
      for (std::size_t j = 0; j < k; ++j) args[j] = family[idx[j]];
      Subset image = complex_apply(A, op, args);
      auto it = cache.find(image);
      if (it == cache.end()) {
        const bool closed = !escape(A, image);
        it = cache.emplace(image, closed).first;
      }
      if (!it->second) {
        auto esc = escape(A, image);
        SubClosureWitness w;
        w.outer_op = op;
        w.arguments = args;
        w.image = image;
        w.inner_op = esc->first;
        w.inner_arguments = esc->second;
        w.result = A.apply(esc->first, esc->second);
        return {false, std::move(w)};
      }
      std::size_t j = k;
      while (j > 0 && ++idx[j - 1] == family.size()) idx[--j] = 0;
      if (j == 0) break;
    }
  }
  return {true, std::nullopt};
}

namespace {

// Complex algebra on the given sorted list of nonempty subsets, which must be
// closed under complex operations.
Algebra complex_algebra(const Algebra& A, const std::vector<Subset>& universe, std::string name) {
  const std::size_t m = universe.size();
  std::unordered_map<Subset, Elem, SubsetHash> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    index.emplace(universe[i], static_cast<Elem>(i));
    names.push_back(subset_name(A, universe[i]));
  }
  std::vector<std::vector<Elem>> tables;
  for (std::size_t op = 0; op < A.signature().size(); ++op) {
    const std::size_t k = A.signature()[op].arity;
    const std::size_t cells = power(m, k);
    std::vector<Elem> table(cells);
    std::vector<Subset> args(k);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      std::size_t rest = cell;
      for (std::size_t j = k; j-- > 0;) {
        args[j] = universe[rest % m];
        rest /= m;
      }
      auto it = index.find(complex_apply(A, op, args));
      if (it == index.end())
        throw PreconditionError("complex operation '" + A.signature()[op].name +
                                "' leaves the family of subsets");
      table[cell] = it->second;
    }
    tables.push_back(std::move(table));
  }
  return Algebra(std::move(name), std::move(names), A.signature(), std::move(tables));
}

}  // namespace

Algebra sub_algebra(const Algebra& A) {
  if (!is_sub_closed(A).closed)
    throw PreconditionError("subuniverses of '" + A.name() + "' are not closed under complex operations");
  return complex_algebra(A, all_subuniverses(A, true), "Sub(" + A.name() + ")");
}

Algebra glob_algebra(const Algebra& A, std::size_t size_cap) {
  const std::size_t n = A.size();
  if (n > size_cap || n >= 20)
    throw BudgetExceeded("Glob needs 2^" + std::to_string(n) + "-1 elements, cap is " +
                             std::to_string(size_cap) + " generators",
                         n);
  std::size_t cells = 0;
  for (const auto& op : A.signature()) cells += power((std::size_t{1} << n) - 1, op.arity);
  if (cells > 200'000'000)
    throw BudgetExceeded("Glob tables would have " + std::to_string(cells) + " cells", cells);
  std::vector<Subset> universe;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    Subset S(n);
    for (Elem e = 0; e < n; ++e)
      if (mask >> e & 1u) S.insert(e);
    universe.push_back(std::move(S));
  }
  std::sort(universe.begin(), universe.end());
  return complex_algebra(A, universe, "Glob(" + A.name() + ")");
}

SquareEmbedding square_embedding(const Algebra& A) {
  auto bin = A.signature().sole_binary();
  if (!bin) return {std::nullopt, "no unique binary operation"};
  if (!is_sub_closed(A).closed) return {std::nullopt, "Sub(" + A.name() + ") is not defined"};
  const auto subs = all_subuniverses(A, true);
  const std::size_t n = A.size();
  std::vector<Elem> map(n);
  for (Elem x = 0; x < n; ++x) {
    Subset S(n, {x, A.binary(*bin, x, x)});
    auto it = std::find(subs.begin(), subs.end(), S);
    if (it == subs.end()) return {std::nullopt, subset_name(A, S) + " is not a subuniverse"};
    map[x] = static_cast<Elem>(it - subs.begin());
  }
  std::vector<Elem> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return {std::nullopt, "map is not injective"};
  if (!is_homomorphism(A, sub_algebra(A), map)) return {std::nullopt, "map is not a homomorphism"};
  return {map, ""};
}

}  // namespace entropica
