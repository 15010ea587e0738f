#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "entropica/algebra.hpp"
#include "entropica/term.hpp"

namespace entropica::testing {

// Hand-rolled generators for property tests. Every generator takes the
// engine so a failing case is reproducible from the seed.

inline std::mt19937_64 engine(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::size_t pick(std::mt19937_64& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

inline std::vector<std::string> letters(std::size_t n) {
  static const char* names[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
  return {names, names + n};
}

inline Algebra random_groupoid(std::mt19937_64& rng, std::size_t n, bool idempotent = false) {
  std::vector<Elem> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t[i * n + j] = idempotent && i == j ? static_cast<Elem>(i) : static_cast<Elem>(pick(rng, n));
  return Algebra("R", letters(n), Signature::groupoid(), {t});
}

/// Algebra with a binary *, a unary ~ and a constant k.
inline Algebra random_mixed(std::mt19937_64& rng, std::size_t n) {
  std::vector<Elem> mul(n * n), neg(n), k{static_cast<Elem>(pick(rng, n))};
  for (auto& v : mul) v = static_cast<Elem>(pick(rng, n));
  for (auto& v : neg) v = static_cast<Elem>(pick(rng, n));
  return Algebra("M", letters(n), Signature({{"*", 2}, {"~", 1}, {"k", 0}}), {mul, neg, k});
}

inline Term random_term(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t depth) {
  if (depth == 0 || pick(rng, 3) == 0) return Term::variable(vars[pick(rng, vars.size())]);
  return Term::apply("*", {random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1)});
}

inline Identity random_identity(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t depth) {
  return {random_term(rng, vars, depth), random_term(rng, vars, depth)};
}

/// Direct recursive evaluation, independent of the compiled evaluator.
inline Elem naive_eval(const Algebra& A, const Term& t, const std::map<std::string, Elem>& v) {
  if (t.is_variable()) return v.at(t.symbol());
  std::vector<Elem> args;
  for (const auto& a : t.args()) args.push_back(naive_eval(A, a, v));
  return A.apply(*A.signature().find(t.symbol()), args);
}

inline bool naive_holds(const Algebra& A, const Identity& id) {
  const auto vars = variables(id);
  std::vector<Elem> vals(vars.size(), 0);
  while (true) {
    std::map<std::string, Elem> v;
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = vals[i];
    if (naive_eval(A, id.lhs, v) != naive_eval(A, id.rhs, v)) return false;
    std::size_t i = vars.size();
    while (i > 0 && ++vals[i - 1] == A.size()) vals[--i] = 0;
    if (i == 0) return true;
  }
}

/// Subsets of {0..n-1} as bit masks closed under every operation.
inline std::vector<unsigned> naive_subuniverses(const Algebra& A) {
  std::vector<unsigned> out;
  const std::size_t n = A.size();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool closed = true;
    for (std::size_t op = 0; op < A.signature().size() && closed; ++op) {
      const std::size_t k = A.signature()[op].arity;
      std::vector<Elem> args(k, 0);
      std::vector<Elem> members;
      for (Elem e = 0; e < n; ++e)
        if (mask >> e & 1) members.push_back(e);
      std::vector<std::size_t> idx(k, 0);
      while (closed) {
        for (std::size_t i = 0; i < k; ++i) args[i] = members[idx[i]];
        if (!(mask >> A.apply(op, args) & 1)) closed = false;
        std::size_t i = k;
        while (i > 0 && ++idx[i - 1] == members.size()) idx[--i] = 0;
        if (i == 0) break;
      }
    }
    if (closed) out.push_back(mask);
  }
  return out;
}

}  // namespace entropica::testing
