#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "entropica/algebra.hpp"

namespace entropica {

// Text format:
//
//   algebra <name>
//   elements e1 e2 ... en
//   op <name> <arity>
//   <n^(arity-1) rows of n element names>   (one name for arity 0)
//   ...
//
// `#` starts a comment. Rows are listed with the earlier arguments fixed in
// lexicographic order and the last argument running along the row.

/// Throws ParseError with a 1-based line number.
Algebra parse_algebra(std::string_view text);
Algebra read_algebra_file(const std::filesystem::path& path);

/// Canonical text: single spaces, no comments, trailing newline.
std::string to_text(const Algebra& A);

/// Operation table of a binary operation as aligned rows, for reports.
std::string format_table(const Algebra& A, std::size_t op);

}  // namespace entropica
