#include "entropica/signature.hpp"

#include <algorithm>
#include <set>

#include "entropica/errors.hpp"

namespace entropica {

Signature::Signature(std::vector<Operation> ops) : ops_(std::move(ops)) {
  std::set<std::string> seen;
  for (const auto& op : ops_) {
    if (op.name.empty()) throw SignatureError("empty operation name");
    if (!seen.insert(op.name).second)
      throw SignatureError("duplicate operation name '" + op.name + "'");
  }
}

Signature Signature::groupoid(std::string name) {
  return Signature({{std::move(name), 2}});
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Signature::max_arity() const noexcept {
  std::size_t m = 0;
  for (const auto& op : ops_) m = std::max(m, op.arity);
  return m;
}

std::optional<std::size_t> Signature::sole_binary() const {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].arity != 2) continue;
    if (found) return std::nullopt;
    found = i;
  }
  return found;
}

}  // namespace entropica
