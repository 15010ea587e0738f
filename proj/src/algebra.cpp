#include "entropica/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "entropica/errors.hpp"

namespace entropica {

namespace {

constexpr std::uint32_t kVariable = 0xFFFFFFFFu;

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

bool valid_element_name(const std::string& s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '#';
  });
}

}  // namespace

// ---------------------------------------------------------------------------
// Algebra

Algebra::Algebra(std::string name, std::vector<std::string> elements, Signature sig,
                 std::vector<std::vector<Elem>> tables)
    : name_(std::move(name)),
      elements_(std::move(elements)),
      sig_(std::move(sig)),
      tables_(std::move(tables)) {
  const std::size_t n = elements_.size();
  if (n == 0) throw PreconditionError("algebra '" + name_ + "' has no elements");
  std::set<std::string> seen;
  for (const auto& e : elements_) {
    if (!valid_element_name(e))
      throw PreconditionError("invalid element name '" + e + "'");
    if (!seen.insert(e).second) throw PreconditionError("duplicate element name '" + e + "'");
  }
  if (tables_.size() != sig_.size())
    throw PreconditionError("expected " + std::to_string(sig_.size()) + " tables, got " +
                            std::to_string(tables_.size()));
  for (std::size_t i = 0; i < sig_.size(); ++i) {
    const std::size_t expected = power(n, sig_[i].arity);
    if (tables_[i].size() != expected)
      throw PreconditionError("table of '" + sig_[i].name + "' has " +
                              std::to_string(tables_[i].size()) + " entries, expected " +
                              std::to_string(expected));
    for (Elem v : tables_[i])
      if (v >= n) throw PreconditionError("table of '" + sig_[i].name + "' has entry out of range");
  }
}

std::optional<Elem> Algebra::element(std::string_view name) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i] == name) return static_cast<Elem>(i);
  return std::nullopt;
}

std::size_t Algebra::op_index(std::string_view name) const {
  if (auto i = sig_.find(name)) return *i;
  throw SignatureError("algebra '" + name_ + "' has no operation '" + std::string(name) + "'");
}

Elem Algebra::apply(std::size_t op, std::span<const Elem> args) const {
  const std::size_t n = elements_.size();
  std::size_t idx = 0;
  for (Elem a : args) idx = idx * n + a;
  return tables_[op][idx];
}

Algebra Algebra::renamed(std::string name) const {
  Algebra copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

// ---------------------------------------------------------------------------
// Assignment

Assignment::Assignment(std::initializer_list<std::pair<std::string, Elem>> bindings) {
  for (const auto& [var, value] : bindings) set(var, value);
}

void Assignment::set(const std::string& var, Elem value) {
  for (auto& [name, v] : bindings_)
    if (name == var) {
      v = value;
      return;
    }
  bindings_.emplace_back(var, value);
}

std::optional<Elem> Assignment::get(std::string_view var) const {
  for (const auto& [name, v] : bindings_)
    if (name == var) return v;
  return std::nullopt;
}

std::string to_string(const Assignment& v, const Algebra& A) {
  std::string out;
  for (const auto& [name, e] : v.bindings()) {
    if (!out.empty()) out += ", ";
    out += name + "=" + A.element_name(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

CompiledTerm::CompiledTerm(const Algebra& A, const Term& t, std::span<const std::string> vars)
    : A_(&A) {
  // Post-order traversal with an explicit stack of (term, expanded?) pairs.
  std::vector<std::pair<const Term*, bool>> todo{{&t, false}};
  while (!todo.empty()) {
    auto [cur, expanded] = todo.back();
    todo.pop_back();
    if (cur->is_variable()) {
      auto it = std::find(vars.begin(), vars.end(), cur->symbol());
      if (it == vars.end()) throw UnboundVariable("unbound variable '" + cur->symbol() + "'");
      code_.push_back({static_cast<std::uint32_t>(it - vars.begin()), kVariable});
      continue;
    }
    if (expanded) {
      auto idx = A.signature().find(cur->symbol());
      code_.push_back({static_cast<std::uint32_t>(*idx),
                       static_cast<std::uint32_t>(cur->args().size())});
      continue;
    }
    auto idx = A.signature().find(cur->symbol());
    if (!idx) throw SignatureError("unknown operation '" + cur->symbol() + "'");
    if (A.signature()[*idx].arity != cur->args().size())
      throw SignatureError("operation '" + cur->symbol() + "' has arity " +
                           std::to_string(A.signature()[*idx].arity) + ", used with " +
                           std::to_string(cur->args().size()));
    todo.push_back({cur, true});
    for (auto it = cur->args().rbegin(); it != cur->args().rend(); ++it) todo.push_back({&*it, false});
  }
}

Elem CompiledTerm::operator()(std::span<const Elem> values, std::vector<Elem>& stack) const {
  stack.clear();
  const std::size_t n = A_->size();
  for (const Instr& in : code_) {
    if (in.arity == kVariable) {
      stack.push_back(values[in.op]);
      continue;
    }
    const std::size_t base = stack.size() - in.arity;
    std::size_t idx = 0;
    for (std::size_t i = base; i < stack.size(); ++i) idx = idx * n + stack[i];
    stack.resize(base);
    stack.push_back(A_->table(in.op)[idx]);
  }
  return stack.back();
}

Elem eval(const Algebra& A, const Term& t, const Assignment& v) {
  const auto vars = variables(t);
  std::vector<Elem> values;
  for (const auto& x : vars) {
    auto e = v.get(x);
    if (!e) throw UnboundVariable("unbound variable '" + x + "'");
    if (*e >= A.size()) throw PreconditionError("assignment value out of range for '" + x + "'");
    values.push_back(*e);
  }
  return CompiledTerm(A, t, vars)(values);
}

std::optional<Assignment> counterexample(const Algebra& A, const Identity& id) {
  const auto vars = variables(id);
  const CompiledTerm lhs(A, id.lhs, vars);
  const CompiledTerm rhs(A, id.rhs, vars);
  const std::size_t n = A.size();
  std::vector<Elem> values(vars.size(), 0), stack;
  while (true) {
    if (lhs(values, stack) != rhs(values, stack)) {
      Assignment out;
      for (std::size_t i = 0; i < vars.size(); ++i) out.set(vars[i], values[i]);
      return out;
    }
    std::size_t pos = values.size();
    while (pos > 0 && ++values[pos - 1] == n) values[--pos] = 0;
    if (pos == 0) return std::nullopt;
  }
}

bool holds(const Algebra& A, const Identity& id) { return !counterexample(A, id); }

// ---------------------------------------------------------------------------
// Constructions on algebras

Algebra product(std::span<const Algebra> factors) {
  if (factors.empty()) throw PreconditionError("product of no algebras");
  const Signature& sig = factors[0].signature();
  for (const auto& F : factors)
    if (!(F.signature() == sig)) throw SignatureError("product factors have different signatures");

  std::vector<std::size_t> sizes;
  std::size_t total = 1;
  for (const auto& F : factors) {
    sizes.push_back(F.size());
    total *= F.size();
  }
  auto decode = [&](std::size_t code, std::vector<Elem>& out) {
    for (std::size_t i = factors.size(); i-- > 0;) {
      out[i] = static_cast<Elem>(code % sizes[i]);
      code /= sizes[i];
    }
  };

  std::vector<std::string> names(total);
  std::vector<Elem> coords(factors.size());
  for (std::size_t c = 0; c < total; ++c) {
    decode(c, coords);
    std::string s = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) s += ',';
      s += factors[i].element_name(coords[i]);
    }
    names[c] = s + ")";
  }

  std::vector<std::vector<Elem>> tables;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t k = sig[op].arity;
    const std::size_t cells = power(total, k);
    std::vector<Elem> table(cells);
    std::vector<std::vector<Elem>> arg_coords(k, std::vector<Elem>(factors.size()));
    std::vector<Elem> args(k);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      std::size_t rest = cell;
      for (std::size_t j = k; j-- > 0;) {
        decode(rest % total, arg_coords[j]);
        rest /= total;
      }
      std::size_t code = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        for (std::size_t j = 0; j < k; ++j) args[j] = arg_coords[j][i];
        code = code * sizes[i] + factors[i].apply(op, args);
      }
      table[cell] = static_cast<Elem>(code);
    }
    tables.push_back(std::move(table));
  }

  std::string name;
  for (const auto& F : factors) name += (name.empty() ? "" : "x") + F.name();
  return Algebra(name, std::move(names), sig, std::move(tables));
}

Algebra induced_subalgebra(const Algebra& A, const Subset& S) {
  if (S.universe() != A.size()) throw PreconditionError("subset over a different universe");
  if (S.empty()) throw PreconditionError("empty subset has no subalgebra");
  const auto members = S.elements();
  std::vector<Elem> index(A.size(), 0);
  for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<Elem>(i);
  const std::size_t m = members.size();

  std::vector<std::vector<Elem>> tables;
  for (std::size_t op = 0; op < A.signature().size(); ++op) {
    const std::size_t k = A.signature()[op].arity;
    const std::size_t cells = power(m, k);
    std::vector<Elem> table(cells), args(k);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      std::size_t rest = cell;
      for (std::size_t j = k; j-- > 0;) {
        args[j] = members[rest % m];
        rest /= m;
      }
      const Elem v = A.apply(op, args);
      if (!S.contains(v))
        throw PreconditionError("subset is not closed under '" + A.signature()[op].name + "'");
      table[cell] = index[v];
    }
    tables.push_back(std::move(table));
  }
  std::vector<std::string> names;
  for (Elem e : members) names.push_back(A.element_name(e));
  return Algebra(A.name(), std::move(names), A.signature(), std::move(tables));
}

bool is_homomorphism(const Algebra& A, const Algebra& B, std::span<const Elem> h) {
  if (!(A.signature() == B.signature()) || h.size() != A.size()) return false;
  for (Elem v : h)
    if (v >= B.size()) return false;
  const std::size_t n = A.size();
  std::vector<Elem> args, images;
  for (std::size_t op = 0; op < A.signature().size(); ++op) {
    const std::size_t k = A.signature()[op].arity;
    const std::size_t cells = power(n, k);
    args.assign(k, 0);
    images.assign(k, 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      std::size_t rest = cell;
      for (std::size_t j = k; j-- > 0;) {
        args[j] = static_cast<Elem>(rest % n);
        images[j] = h[args[j]];
        rest /= n;
      }
      if (h[A.table(op)[cell]] != B.apply(op, images)) return false;
    }
  }
  return true;
}

Algebra dual(const Algebra& A) {
  if (!A.is_groupoid()) throw SignatureError("dual is defined for groupoids only");
  const std::size_t n = A.size();
  std::vector<Elem> table(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) table[x * n + y] = A.mul(y, x);
  return Algebra(A.name() + "^d", A.element_names(), A.signature(), {std::move(table)});
}

StructuralFlags structural_flags(const Algebra& A) {
  const std::size_t n = A.size();
  const Signature& sig = A.signature();
  StructuralFlags f;
  f.idempotent = true;
  f.commutative = f.associative = f.left_cancellative = f.right_cancellative = true;

  std::vector<Elem> args;
  for (std::size_t op = 0; op < sig.size(); ++op) {
    const std::size_t k = sig[op].arity;
    if (k == 0) {
      if (n != 1) f.idempotent = false;
      continue;
    }
    for (Elem x = 0; x < n && f.idempotent; ++x) {
      args.assign(k, x);
      if (A.apply(op, args) != x) f.idempotent = false;
    }
    if (k != 2) continue;
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        if (A.binary(op, x, y) != A.binary(op, y, x)) f.commutative = false;
        for (Elem z = 0; z < n; ++z) {
          if (A.binary(op, A.binary(op, x, y), z) != A.binary(op, x, A.binary(op, y, z)))
            f.associative = false;
          if (y != z && A.binary(op, x, y) == A.binary(op, x, z)) f.left_cancellative = false;
          if (y != z && A.binary(op, y, x) == A.binary(op, z, x)) f.right_cancellative = false;
        }
      }
  }

  auto left_unit = [&](Elem e) {
    for (std::size_t op = 0; op < sig.size(); ++op)
      if (sig[op].arity == 2)
        for (Elem x = 0; x < n; ++x)
          if (A.binary(op, e, x) != x) return false;
    return true;
  };
  auto right_unit = [&](Elem e) {
    for (std::size_t op = 0; op < sig.size(); ++op)
      if (sig[op].arity == 2)
        for (Elem x = 0; x < n; ++x)
          if (A.binary(op, x, e) != x) return false;
    return true;
  };
  auto unit_for = [&](std::size_t op, Elem e) {
    const std::size_t k = sig[op].arity;
    for (std::size_t pos = 0; pos < k; ++pos)
      for (Elem x = 0; x < n; ++x) {
        args.assign(k, e);
        args[pos] = x;
        if (A.apply(op, args) != x) return false;
      }
    return true;
  };

  const bool has_binary = std::any_of(sig.begin(), sig.end(), [](const Operation& o) { return o.arity == 2; });
  f.op_units.resize(sig.size());
  for (Elem e = 0; e < n; ++e) {
    if (has_binary && !f.left_unit && left_unit(e)) f.left_unit = e;
    if (has_binary && !f.right_unit && right_unit(e)) f.right_unit = e;
    bool all = true;
    for (std::size_t op = 0; op < sig.size(); ++op) {
      const bool u = unit_for(op, e);
      if (u && !f.op_units[op]) f.op_units[op] = e;
      all = all && u;
    }
    if (all && !f.unit) f.unit = e;
  }
  return f;
}

}  // namespace entropica
