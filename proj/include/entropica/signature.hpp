#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entropica {

struct Operation {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// Ordered list of operation symbols. Names are unique; arity 0 denotes a
/// constant.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Operation> ops);

  /// The signature of groupoids: one binary operation named `*`.
  static Signature groupoid(std::string name = "*");

  std::size_t size() const noexcept { return ops_.size(); }
  bool empty() const noexcept { return ops_.empty(); }
  const Operation& operator[](std::size_t i) const { return ops_[i]; }
  const std::vector<Operation>& operations() const noexcept { return ops_; }
  auto begin() const noexcept { return ops_.begin(); }
  auto end() const noexcept { return ops_.end(); }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t max_arity() const noexcept;

  /// Index of the only binary operation, if there is exactly one.
  std::optional<std::size_t> sole_binary() const;

  /// Exactly one operation, and it is binary.
  bool is_groupoid() const noexcept {
    return ops_.size() == 1 && ops_[0].arity == 2;
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Operation> ops_;
};

}  // namespace entropica
