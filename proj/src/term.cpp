#include "entropica/term.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <utility>

#include "entropica/errors.hpp"

namespace entropica {

// ---------------------------------------------------------------------------
// Term

Term Term::variable(std::string name) {
  if (name.empty()) throw PreconditionError("empty variable name");
  auto node = std::make_shared<Node>();
  node->symbol = std::move(name);
  node->variable = true;
  node->leaves = 1;
  return Term(std::move(node));
}

Term Term::apply(std::string op, std::vector<Term> args) {
  if (op.empty()) throw PreconditionError("empty operation symbol");
  auto node = std::make_shared<Node>();
  node->symbol = std::move(op);
  std::size_t depth = 0;
  for (const auto& a : args) {
    node->leaves += a.leaf_count();
    depth = std::max(depth, a.depth());
  }
  node->depth = depth + 1;
  node->args = std::move(args);
  return Term(std::move(node));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_variable() != b.is_variable() || a.symbol() != b.symbol() ||
      a.leaf_count() != b.leaf_count() || a.args().size() != b.args().size())
    return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!(a.args()[i] == b.args()[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_symbolic(std::string_view name) {
  return !name.empty() && !is_name_char(name.front());
}

enum class Tok { name, symbol, lparen, rparen, comma, equals, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_name_char(c)) {
      while (i < src.size() && is_name_char(src[i])) ++i;
      out.push_back({Tok::name, std::string(src.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::lparen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::rparen, ")", start}); ++i; continue;
      case ',': out.push_back({Tok::comma, ",", start}); ++i; continue;
      case '=': out.push_back({Tok::equals, "=", start}); ++i; continue;
      default: break;
    }
    // One symbol character; a UTF-8 sequence counts as one character.
    ++i;
    if (static_cast<unsigned char>(c) >= 0xC0)
      while (i < src.size() && (static_cast<unsigned char>(src[i]) & 0xC0) == 0x80) ++i;
    out.push_back({Tok::symbol, std::string(src.substr(start, i - start)), start});
  }
  out.push_back({Tok::end, "", src.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view src, const Signature& sig)
      : tokens_(tokenize(src)), sig_(sig) {}

  Term term_only() {
    Term t = expr();
    expect(Tok::end, "end of input");
    return t;
  }

  Identity identity() {
    Term lhs = expr();
    expect(Tok::equals, "'='");
    Term rhs = expr();
    expect(Tok::end, "end of input");
    return {std::move(lhs), std::move(rhs)};
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      throw ParseError(std::string("expected ") + what + ", found '" +
                           peek().text + "'",
                       peek().pos);
    ++pos_;
  }

  static bool additive(const std::string& s) { return s == "+" || s == "-"; }

  // Name of the binary operation an infix symbol stands for.
  std::optional<std::string> infix_op(const std::string& sym) const {
    if (auto i = sig_.find(sym); i && sig_[*i].arity == 2) return sym;
    if (sym == "*")
      if (auto b = sig_.sole_binary()) return sig_[*b].name;
    return std::nullopt;
  }

  Term expr() {
    Term t = product();
    while (peek().kind == Tok::symbol && additive(peek().text)) {
      const Token& op = peek();
      auto name = infix_op(op.text);
      if (!name) throw ParseError("'" + op.text + "' is not a binary operation", op.pos);
      ++pos_;
      t = Term::apply(*name, {t, product()});
    }
    return t;
  }

  Term product() {
    Term t = primary();
    while (peek().kind == Tok::symbol && !additive(peek().text)) {
      const Token& op = peek();
      auto name = infix_op(op.text);
      if (!name) throw ParseError("'" + op.text + "' is not a binary operation", op.pos);
      ++pos_;
      t = Term::apply(*name, {t, primary()});
    }
    return t;
  }

  Term application(const Token& head) {
    auto idx = sig_.find(head.text);
    if (!idx) throw ParseError("unknown operation '" + head.text + "'", head.pos);
    expect(Tok::lparen, "'('");
    std::vector<Term> args;
    if (peek().kind != Tok::rparen) {
      args.push_back(expr());
      while (peek().kind == Tok::comma) {
        ++pos_;
        args.push_back(expr());
      }
    }
    expect(Tok::rparen, "')'");
    if (args.size() != sig_[*idx].arity)
      throw ParseError("operation '" + head.text + "' has arity " +
                           std::to_string(sig_[*idx].arity) + ", given " +
                           std::to_string(args.size()),
                       head.pos);
    return Term::apply(head.text, std::move(args));
  }

  Term primary() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::lparen: {
        ++pos_;
        Term t = expr();
        expect(Tok::rparen, "')'");
        return t;
      }
      case Tok::symbol:
        ++pos_;
        if (peek().kind != Tok::lparen)
          throw ParseError("operator '" + tok.text + "' needs arguments", tok.pos);
        return application(tok);
      case Tok::name: {
        ++pos_;
        if (peek().kind == Tok::lparen) return application(tok);
        if (auto idx = sig_.find(tok.text); idx && sig_[*idx].arity == 0)
          return Term::apply(tok.text);
        if (!std::isalpha(static_cast<unsigned char>(tok.text.front())))
          throw ParseError("'" + tok.text + "' is not a variable or constant", tok.pos);
        return Term::variable(tok.text);
      }
      default:
        throw ParseError("unexpected '" + tok.text + "'", tok.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature& sig_;
};

void print(const Term& t, std::string& out) {
  if (t.is_variable() || t.args().empty()) {
    out += t.symbol();
    return;
  }
  if (t.args().size() == 2 && is_symbolic(t.symbol())) {
    for (std::size_t i = 0; i < 2; ++i) {
      const Term& a = t.args()[i];
      const bool wrap = !a.is_variable() && a.args().size() == 2 && is_symbolic(a.symbol());
      if (wrap) out += '(';
      print(a, out);
      if (wrap) out += ')';
      if (i == 0) out += t.symbol();
    }
    return;
  }
  out += t.symbol();
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    print(t.args()[i], out);
  }
  out += ')';
}

}  // namespace

Term parse_term(std::string_view src, const Signature& sig) {
  return Parser(src, sig).term_only();
}

Identity parse_identity(std::string_view src, const Signature& sig) {
  return Parser(src, sig).identity();
}

Term parse_term(std::string_view src) {
  return parse_term(src, Signature::groupoid());
}

Identity parse_identity(std::string_view src) {
  return parse_identity(src, Signature::groupoid());
}

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string to_string(const Identity& id) {
  return to_string(id.lhs) + " = " + to_string(id.rhs);
}

void check_well_formed(const Term& t, const Signature& sig) {
  if (t.is_variable()) return;
  auto idx = sig.find(t.symbol());
  if (!idx) throw SignatureError("unknown operation '" + t.symbol() + "'");
  if (sig[*idx].arity != t.args().size())
    throw SignatureError("operation '" + t.symbol() + "' has arity " +
                         std::to_string(sig[*idx].arity));
  for (const auto& a : t.args()) check_well_formed(a, sig);
}

// ---------------------------------------------------------------------------
// Structure

namespace {

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.symbol()) == out.end())
      out.push_back(t.symbol());
    return;
  }
  for (const auto& a : t.args()) collect_variables(a, out);
}

void count_occurrences(const Term& t, std::map<std::string, std::size_t>& out) {
  if (t.is_variable()) {
    ++out[t.symbol()];
    return;
  }
  for (const auto& a : t.args()) count_occurrences(a, out);
}

}  // namespace

std::vector<std::string> variables(const Term& t) {
  std::vector<std::string> out;
  collect_variables(t, out);
  return out;
}

std::vector<std::string> variables(const Identity& id) {
  std::vector<std::string> out;
  collect_variables(id.lhs, out);
  collect_variables(id.rhs, out);
  return out;
}

std::map<std::string, std::size_t> occurrence_counts(const Term& t) {
  std::map<std::string, std::size_t> out;
  count_occurrences(t, out);
  return out;
}

bool is_linear(const Term& t) {
  return variables(t).size() == t.leaf_count();
}

bool is_linear(const Identity& id) { return is_linear(id.lhs) && is_linear(id.rhs); }

bool is_regular(const Identity& id) {
  auto a = variables(id.lhs);
  auto b = variables(id.rhs);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool is_balanced(const Identity& id) {
  return occurrence_counts(id.lhs) == occurrence_counts(id.rhs);
}

Term substitute(const Term& t, const std::map<std::string, Term>& sigma) {
  if (t.is_variable()) {
    auto it = sigma.find(t.symbol());
    return it == sigma.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(substitute(a, sigma));
  return Term::apply(t.symbol(), std::move(args));
}

Term mirror(const Term& t) {
  if (t.is_variable()) return t;
  std::vector<Term> args;
  for (auto it = t.args().rbegin(); it != t.args().rend(); ++it) args.push_back(mirror(*it));
  return Term::apply(t.symbol(), std::move(args));
}

// ---------------------------------------------------------------------------
// Linearization

std::vector<std::size_t> Linearization::counts() const {
  std::vector<std::size_t> out;
  out.reserve(groups.size());
  for (const auto& g : groups) out.push_back(g.size());
  return out;
}

std::string fresh_name(const std::string& var, std::size_t occurrence) {
  return var + "_" + std::to_string(occurrence);
}

namespace {

Term rename_occurrences(const Term& t, std::map<std::string, std::size_t>& seen) {
  if (t.is_variable()) return Term::variable(fresh_name(t.symbol(), ++seen[t.symbol()]));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(rename_occurrences(a, seen));
  return Term::apply(t.symbol(), std::move(args));
}

}  // namespace

Linearization linearize(const Term& t) {
  const auto order = variables(t);
  return linearize(t, order);
}

Linearization linearize(const Term& t, std::span<const std::string> order) {
  const auto counts = occurrence_counts(t);
  for (const auto& [var, _] : counts)
    if (std::find(order.begin(), order.end(), var) == order.end())
      throw PreconditionError("variable '" + var + "' missing from linearization order");
  Linearization lin{t, t, {order.begin(), order.end()}, {}};
  std::map<std::string, std::size_t> seen;
  lin.star = rename_occurrences(t, seen);
  for (const auto& var : order) {
    auto it = counts.find(var);
    const std::size_t k = it == counts.end() ? 1 : it->second;
    std::vector<std::string> group;
    for (std::size_t j = 1; j <= k; ++j) group.push_back(fresh_name(var, j));
    lin.groups.push_back(std::move(group));
  }
  return lin;
}

// ---------------------------------------------------------------------------
// Focal machinery

FocalDecomposition focal_decompose(const Term& t) {
  FocalDecomposition out;
  const Term* cur = &t;
  while (!cur->is_variable()) {
    if (cur->args().size() != 2)
      throw PreconditionError("focal decomposition needs a single binary operation, found '" +
                              cur->symbol() + "'");
    out.multipliers.push_back(cur->args()[0]);
    cur = &cur->args()[1];
  }
  out.focal = cur->symbol();
  for (const auto& m : out.multipliers) {
    // Multipliers must themselves be binary terms.
    std::vector<const Term*> stack{&m};
    while (!stack.empty()) {
      const Term* s = stack.back();
      stack.pop_back();
      if (s->is_variable()) continue;
      if (s->args().size() != 2)
        throw PreconditionError("focal decomposition needs a single binary operation, found '" +
                                s->symbol() + "'");
      stack.push_back(&s->args()[0]);
      stack.push_back(&s->args()[1]);
    }
  }
  return out;
}

bool focally_equivalent(const Term& t, const Term& u) {
  const auto vt = variables(t);
  const auto vu = variables(u);
  if (vt.size() <= 1 || vu.size() <= 1)
    return t.is_variable() && u.is_variable() && t.symbol() == u.symbol();
  const auto dt = focal_decompose(t);
  const auto du = focal_decompose(u);
  if (dt.focal != du.focal || dt.multipliers.size() != du.multipliers.size()) return false;
  auto covered = [](const std::vector<Term>& from, const std::vector<Term>& to) {
    return std::all_of(from.begin(), from.end(), [&](const Term& a) {
      return std::any_of(to.begin(), to.end(),
                         [&](const Term& b) { return focally_equivalent(a, b); });
    });
  };
  return covered(dt.multipliers, du.multipliers) && covered(du.multipliers, dt.multipliers);
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Term> binary_shapes(std::size_t leaves, const std::string& op) {
  if (leaves == 0) return {};
  std::vector<std::vector<Term>> memo(leaves + 1);
  memo[1] = {Term::variable("_")};
  for (std::size_t k = 2; k <= leaves; ++k)
    for (std::size_t left = 1; left < k; ++left)
      for (const auto& l : memo[left])
        for (const auto& r : memo[k - left]) memo[k].push_back(Term::apply(op, {l, r}));
  return memo[leaves];
}

namespace {

Term label_leaves(const Term& shape, std::span<const std::string> labels, std::size_t& next) {
  if (shape.is_variable()) return Term::variable(labels[next++]);
  std::vector<Term> args;
  for (const auto& a : shape.args()) args.push_back(label_leaves(a, labels, next));
  return Term::apply(shape.symbol(), std::move(args));
}

std::string default_variable(std::size_t i) {
  static const char* names[] = {"x", "y", "z", "u", "v", "w", "p", "q"};
  return i < 8 ? names[i] : "x" + std::to_string(i + 1);
}

bool has_repeat(std::span<const std::size_t> labels) {
  std::set<std::size_t> s(labels.begin(), labels.end());
  return s.size() != labels.size();
}

}  // namespace

std::vector<Term> enumerate_terms(std::size_t max_leaves, std::span<const std::string> vars,
                                  const std::string& op, bool linear_only) {
  std::vector<Term> out;
  if (vars.empty()) return out;
  for (std::size_t k = 1; k <= max_leaves; ++k) {
    for (const auto& shape : binary_shapes(k, op)) {
      std::vector<std::size_t> digits(k, 0);
      while (true) {
        if (!linear_only || !has_repeat(digits)) {
          std::vector<std::string> labels;
          for (auto d : digits) labels.push_back(vars[d]);
          std::size_t next = 0;
          out.push_back(label_leaves(shape, labels, next));
        }
        std::size_t pos = k;
        while (pos > 0 && ++digits[pos - 1] == vars.size()) digits[--pos] = 0;
        if (pos == 0) break;
      }
    }
  }
  return out;
}

void for_each_identity(std::size_t max_leaves, const std::string& op, bool linear_only,
                       const std::function<void(const Identity&)>& visit) {
  std::vector<std::vector<Term>> shapes(max_leaves + 1);
  for (std::size_t k = 1; k <= max_leaves; ++k) shapes[k] = binary_shapes(k, op);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < 2 * max_leaves; ++i) names.push_back(default_variable(i));

  for (std::size_t kt = 1; kt <= max_leaves; ++kt)
    for (const auto& st : shapes[kt])
      for (std::size_t ku = 1; ku <= max_leaves; ++ku)
        for (const auto& su : shapes[ku]) {
          const std::size_t total = kt + ku;
          // Restricted growth strings of length `total`.
          std::vector<std::size_t> rgs(total, 0), prefix_max(total, 0);
          while (true) {
            std::span<const std::size_t> lt(rgs.data(), kt), lu(rgs.data() + kt, ku);
            if (!linear_only || (!has_repeat(lt) && !has_repeat(lu))) {
              std::vector<std::string> labels;
              for (auto d : rgs) labels.push_back(names[d]);
              std::size_t next = 0;
              Term t = label_leaves(st, labels, next);
              Term u = label_leaves(su, labels, next);
              visit(Identity{std::move(t), std::move(u)});
            }
            // Advance: rgs[i] may grow up to prefix_max[i-1] + 1.
            std::size_t i = total;
            while (i > 1) {
              --i;
              const std::size_t limit = prefix_max[i - 1] + 1;
              if (rgs[i] < limit) {
                ++rgs[i];
                prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
                for (std::size_t j = i + 1; j < total; ++j) {
                  rgs[j] = 0;
                  prefix_max[j] = prefix_max[i];
                }
                break;
              }
              if (i == 1) {
                i = 0;
                break;
              }
            }
            if (i == 0 || total == 1) break;
          }
        }
}

}  // namespace entropica
