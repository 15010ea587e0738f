#include "entropica/algebra_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "entropica/errors.hpp"

namespace entropica {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> words;
};

std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream in{std::string(line)};
    Line l{number, {}};
    for (std::string w; in >> w;) l.words.push_back(w);
    if (!l.words.empty()) out.push_back(std::move(l));
    start = end + 1;
  }
  return out;
}

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Algebra parse_algebra(std::string_view text) {
  const auto lines = significant_lines(text);
  std::size_t i = 0;
  auto need = [&](const char* what) -> const Line& {
    if (i >= lines.size()) {
      const std::size_t last = lines.empty() ? 1 : lines.back().number;
      throw ParseError(std::string("unexpected end of input, expected ") + what, last);
    }
    return lines[i++];
  };

  const Line& header = need("'algebra <name>'");
  if (header.words[0] != "algebra" || header.words.size() != 2)
    throw ParseError("expected 'algebra <name>'", header.number);
  const std::string name = header.words[1];

  const Line& elems = need("'elements ...'");
  if (elems.words[0] != "elements" || elems.words.size() < 2)
    throw ParseError("expected 'elements e1 e2 ...'", elems.number);
  std::vector<std::string> elements(elems.words.begin() + 1, elems.words.end());
  const std::size_t n = elements.size();
  auto lookup = [&](const std::string& w, std::size_t line) {
    auto it = std::find(elements.begin(), elements.end(), w);
    if (it == elements.end()) throw ParseError("unknown element '" + w + "'", line);
    return static_cast<Elem>(it - elements.begin());
  };

  std::vector<Operation> ops;
  std::vector<std::vector<Elem>> tables;
  while (i < lines.size()) {
    const Line& opline = lines[i++];
    if (opline.words[0] != "op" || opline.words.size() != 3)
      throw ParseError("expected 'op <name> <arity>'", opline.number);
    std::size_t arity = 0;
    try {
      std::size_t used = 0;
      const long long a = std::stoll(opline.words[2], &used);
      if (used != opline.words[2].size() || a < 0 || a > 8) throw std::invalid_argument("arity");
      arity = static_cast<std::size_t>(a);
    } catch (const std::logic_error&) {
      throw ParseError("invalid arity '" + opline.words[2] + "'", opline.number);
    }
    ops.push_back({opline.words[1], arity});
    std::vector<Elem> table;
    if (arity == 0) {
      const Line& row = need("a constant value");
      if (row.words.size() != 1) throw ParseError("constant needs exactly one element", row.number);
      table.push_back(lookup(row.words[0], row.number));
    } else {
      const std::size_t rows = power(n, arity - 1);
      table.reserve(rows * n);
      for (std::size_t r = 0; r < rows; ++r) {
        const Line& row = need("a table row");
        if (row.words.size() != n)
          throw ParseError("row has " + std::to_string(row.words.size()) + " entries, expected " +
                               std::to_string(n),
                           row.number);
        for (const auto& w : row.words) table.push_back(lookup(w, row.number));
      }
    }
    tables.push_back(std::move(table));
  }

  try {
    return Algebra(name, std::move(elements), Signature(std::move(ops)), std::move(tables));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), header.number);
  }
}

Algebra read_algebra_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_algebra(buf.str());
}

std::string to_text(const Algebra& A) {
  std::string out = "algebra " + A.name() + "\nelements";
  for (const auto& e : A.element_names()) out += " " + e;
  out += "\n";
  const std::size_t n = A.size();
  for (std::size_t op = 0; op < A.signature().size(); ++op) {
    const auto& o = A.signature()[op];
    out += "op " + o.name + " " + std::to_string(o.arity) + "\n";
    const auto& table = A.table(op);
    const std::size_t width = o.arity == 0 ? 1 : n;
    for (std::size_t i = 0; i < table.size(); ++i) {
      out += A.element_name(table[i]);
      out += (i + 1) % width == 0 ? "\n" : " ";
    }
  }
  return out;
}

std::string format_table(const Algebra& A, std::size_t op) {
  const std::size_t n = A.size();
  std::size_t w = 0;
  for (const auto& e : A.element_names()) w = std::max(w, e.size());
  auto pad = [&](const std::string& s) { return s + std::string(w - s.size(), ' '); };
  std::string out = pad(A.signature()[op].name) + " |";
  for (const auto& e : A.element_names()) out += " " + pad(e);
  out += "\n" + std::string(w + 1, '-') + "+" + std::string((w + 1) * n, '-') + "\n";
  for (Elem x = 0; x < n; ++x) {
    out += pad(A.element_name(x)) + " |";
    for (Elem y = 0; y < n; ++y) out += " " + pad(A.element_name(A.binary(op, x, y)));
    out += "\n";
  }
  return out;
}

}  // namespace entropica
