#include "entropica/constructions.hpp"

#include <algorithm>

#include "entropica/errors.hpp"

namespace entropica {

namespace {

int mod(int a, int p) { return ((a % p) + p) % p; }

Algebra groupoid(std::string name, std::vector<std::string> elements,
                 std::vector<std::vector<Elem>> rows) {
  std::vector<Elem> table;
  for (const auto& r : rows) table.insert(table.end(), r.begin(), r.end());
  return Algebra(std::move(name), std::move(elements), Signature::groupoid(), {std::move(table)});
}

}  // namespace

Algebra equivalence_algebra(const Partition& blocks, std::string name) {
  std::vector<std::string> elements;
  std::vector<std::size_t> block_of;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw PreconditionError("partition has an empty block");
    for (const auto& e : blocks[b]) {
      if (std::find(elements.begin(), elements.end(), e) != elements.end())
        throw PreconditionError("element '" + e + "' lies in two blocks");
      elements.push_back(e);
      block_of.push_back(b);
    }
  }
  const std::size_t n = elements.size();
  std::vector<Elem> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      table[x * n + y] = static_cast<Elem>(block_of[x] == block_of[y] ? x : y);
  return Algebra(std::move(name), std::move(elements), Signature::groupoid(), {std::move(table)});
}

Graph Graph::undirected() const {
  Graph g = *this;
  for (const auto& [a, b] : edges)
    if (std::find(g.edges.begin(), g.edges.end(), std::pair{b, a}) == g.edges.end())
      g.edges.emplace_back(b, a);
  return g;
}

Graph Graph::with_loops() const {
  Graph g = *this;
  for (const auto& v : vertices)
    if (std::find(g.edges.begin(), g.edges.end(), std::pair{v, v}) == g.edges.end())
      g.edges.emplace_back(v, v);
  return g;
}

Algebra graph_algebra(const Graph& G, std::string name) {
  std::vector<std::string> elements = G.vertices;
  if (std::find(elements.begin(), elements.end(), "0") != elements.end())
    throw PreconditionError("vertex name '0' is reserved for the absorbing element");
  elements.push_back("0");
  const std::size_t n = elements.size();
  auto index = [&](const std::string& v) {
    auto it = std::find(G.vertices.begin(), G.vertices.end(), v);
    if (it == G.vertices.end()) throw PreconditionError("unknown vertex '" + v + "'");
    return static_cast<std::size_t>(it - G.vertices.begin());
  };
  const Elem zero = static_cast<Elem>(n - 1);
  std::vector<Elem> table(n * n, zero);
  for (const auto& [a, b] : G.edges) {
    const std::size_t x = index(a), y = index(b);
    table[x * n + y] = static_cast<Elem>(x);
  }
  return Algebra(std::move(name), std::move(elements), Signature::groupoid(), {std::move(table)});
}

Mat2 Mat2::identity(int p) { return scalar(p, 1); }

Mat2 Mat2::scalar(int p, int c) {
  Mat2 m;
  m.p = p;
  m.e = {mod(c, p), 0, 0, mod(c, p)};
  return m;
}

int Mat2::det() const { return mod(e[0] * e[3] - e[1] * e[2], p); }

Mat2 Mat2::operator+(const Mat2& o) const {
  Mat2 m{{}, p};
  for (int i = 0; i < 4; ++i) m.e[i] = mod(e[i] + o.e[i], p);
  return m;
}

Mat2 Mat2::operator-(const Mat2& o) const {
  Mat2 m{{}, p};
  for (int i = 0; i < 4; ++i) m.e[i] = mod(e[i] - o.e[i], p);
  return m;
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return Mat2{{mod(e[0] * o.e[0] + e[1] * o.e[2], p), mod(e[0] * o.e[1] + e[1] * o.e[3], p),
               mod(e[2] * o.e[0] + e[3] * o.e[2], p), mod(e[2] * o.e[1] + e[3] * o.e[3], p)},
              p};
}

Mat2 Mat2::inverse() const {
  const int d = det();
  if (d == 0) throw PreconditionError("matrix " + to_string(*this) + " is singular");
  int inv = 1;
  while (mod(inv * d, p) != 1) ++inv;
  return Mat2{{mod(e[3] * inv, p), mod(-e[1] * inv, p), mod(-e[2] * inv, p), mod(e[0] * inv, p)}, p};
}

std::array<int, 2> Mat2::apply(std::array<int, 2> v) const {
  return {mod(e[0] * v[0] + e[1] * v[1], p), mod(e[2] * v[0] + e[3] * v[1], p)};
}

std::string to_string(const Mat2& m) {
  return "[" + std::to_string(m.e[0]) + " " + std::to_string(m.e[1]) + "; " + std::to_string(m.e[2]) +
         " " + std::to_string(m.e[3]) + "]";
}

std::vector<Mat2> trace_det_matrices(int p) {
  if (p != 2 && p != 3 && p != 5 && p != 7) throw PreconditionError("p must be a prime at most 7");
  std::vector<Mat2> out;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d) {
          const Mat2 m{{a, b, c, d}, p};
          if (m.det() == 1 && m.trace() == 1) out.push_back(m);
        }
  return out;
}

AffineModule affine_module_algebra(int p, const std::vector<Mat2>& X, std::string name) {
  if (X.empty()) throw PreconditionError("affine module algebra needs at least one matrix");
  const std::size_t n = static_cast<std::size_t>(p * p);
  std::vector<std::string> elements;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) elements.push_back(std::to_string(a) + std::to_string(b));
  std::vector<Operation> ops;
  std::vector<std::vector<Elem>> tables;
  const Mat2 one = Mat2::identity(p);
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X[i].p != p) throw PreconditionError("matrix over the wrong field");
    ops.push_back({"r" + std::to_string(i), 2});
    const Mat2 left = one - X[i];
    std::vector<Elem> table(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const auto u = left.apply({static_cast<int>(x) / p, static_cast<int>(x) % p});
        const auto v = X[i].apply({static_cast<int>(y) / p, static_cast<int>(y) % p});
        table[x * n + y] = static_cast<Elem>(mod(u[0] + v[0], p) * p + mod(u[1] + v[1], p));
      }
    tables.push_back(std::move(table));
  }
  return {Algebra(std::move(name), std::move(elements), Signature(std::move(ops)), std::move(tables)),
          X};
}

std::size_t matrix_op(const AffineModule& M, const Mat2& m) {
  auto it = std::find(M.manifest.begin(), M.manifest.end(), m);
  if (it == M.manifest.end())
    throw PreconditionError("matrix " + to_string(m) + " is not a basic operation");
  return static_cast<std::size_t>(it - M.manifest.begin());
}

std::array<std::size_t, 2> conjugation_witness(const AffineModule& M, std::size_t r, std::size_t t) {
  const Mat2& R = M.manifest.at(r);
  const Mat2& T = M.manifest.at(t);
  const Mat2 left = Mat2::identity(R.p) - R;
  return {matrix_op(M, left.inverse() * T * left), matrix_op(M, R.inverse() * T * R)};
}

Algebra cyclic_group(std::size_t n, std::string name) {
  if (n == 0) throw PreconditionError("cyclic group of order 0");
  if (name.empty()) name = "Z" + std::to_string(n);
  std::vector<std::string> elements;
  for (std::size_t i = 0; i < n; ++i) elements.push_back(std::to_string(i));
  std::vector<Elem> plus(n * n), minus(n);
  for (std::size_t a = 0; a < n; ++a) {
    minus[a] = static_cast<Elem>((n - a) % n);
    for (std::size_t b = 0; b < n; ++b) plus[a * n + b] = static_cast<Elem>((a + b) % n);
  }
  return Algebra(std::move(name), std::move(elements), Signature({{"+", 2}, {"-", 1}, {"0", 0}}),
                 {std::move(plus), std::move(minus), {0}});
}

Algebra symmetric_group3() {
  const std::vector<std::string> names = {"id", "12", "13", "23", "123", "132"};
  std::vector<Permutation> perms;
  for (const char* c : {"()", "(1 2)", "(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"})
    perms.push_back(parse_permutation(c, 3));
  std::vector<Elem> table(36);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      const auto it = std::find(perms.begin(), perms.end(), compose(perms[a], perms[b]));
      table[a * 6 + b] = static_cast<Elem>(it - perms.begin());
    }
  return Algebra("S3", names, Signature::groupoid(), {std::move(table)});
}

Algebra loop_from_groupoid(const Algebra& G) {
  if (!G.is_groupoid()) throw SignatureError("loop construction needs a groupoid");
  const std::size_t n = G.size();
  const auto flags = structural_flags(G);
  const auto e = flags.unit;
  if (!e) throw PreconditionError("groupoid has no two-sided unit");
  std::vector<Elem> rdiv(n * n, 0), ldiv(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      const Elem ab = G.mul(static_cast<Elem>(a), static_cast<Elem>(b));
      const Elem ba = G.mul(static_cast<Elem>(b), static_cast<Elem>(a));
      if (row[ab] || col[ba]) throw PreconditionError("table is not a Latin square");
      row[ab] = col[ba] = true;
      ldiv[a * n + ab] = static_cast<Elem>(b);  // a \ ab = b
      rdiv[ba * n + a] = static_cast<Elem>(b);  // ba / a = b
    }
  }
  return Algebra(G.name() + "loop", G.element_names(),
                 Signature({{G.signature()[0].name, 2}, {"/", 2}, {"\\", 2}, {"e", 0}}),
                 {G.table(0), std::move(rdiv), std::move(ldiv), {*e}});
}

Algebra adjoin_unit(const Algebra& G, std::string unit_name) {
  if (!G.is_groupoid()) throw SignatureError("adjoining a unit needs a groupoid");
  if (G.element(unit_name)) throw PreconditionError("element '" + unit_name + "' already exists");
  const std::size_t n = G.size(), m = n + 1;
  std::vector<std::string> elements = G.element_names();
  elements.push_back(unit_name);
  std::vector<Elem> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      table[a * m + b] = a == n   ? static_cast<Elem>(b)
                         : b == n ? static_cast<Elem>(a)
                                  : G.mul(static_cast<Elem>(a), static_cast<Elem>(b));
  return Algebra(G.name() + "+" + unit_name, std::move(elements), G.signature(), {std::move(table)});
}

Algebra unary_permutation_algebra(std::size_t n, const std::vector<Permutation>& perms,
                                  std::string name) {
  std::vector<std::string> elements;
  for (std::size_t i = 1; i <= n; ++i) elements.push_back(std::to_string(i));
  std::vector<Operation> ops;
  std::vector<std::vector<Elem>> tables;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const auto& p = perms[i];
    if (p.size() != n) throw PreconditionError("permutation " + to_string(p) + " has the wrong degree");
    Permutation inv(n);
    for (std::size_t k = 0; k < n; ++k) inv[p[k] - 1] = static_cast<std::uint8_t>(k + 1);
    if (std::find(perms.begin(), perms.end(), inv) == perms.end())
      throw PreconditionError("inverse of " + to_string(p) + " is missing");
    ops.push_back({"f" + std::to_string(i), 1});
    std::vector<Elem> table(n);
    for (std::size_t k = 0; k < n; ++k) table[k] = static_cast<Elem>(p[k] - 1);
    tables.push_back(std::move(table));
  }
  return Algebra(std::move(name), std::move(elements), Signature(std::move(ops)), std::move(tables));
}

namespace {

struct Example {
  const char* name;
  const char* description;
  Algebra (*build)();
};

Algebra build_g1() {
  return groupoid("G1", {"a", "b", "c"}, {{0, 2, 2}, {2, 1, 2}, {0, 1, 2}});
}

Algebra build_g2() {
  return groupoid("G2", {"a", "b", "c"}, {{0, 1, 0}, {2, 1, 2}, {2, 1, 2}});
}

Algebra build_t() {
  return groupoid("T", {"0", "1", "2"}, {{0, 1, 2}, {2, 1, 0}, {0, 1, 2}});
}

Algebra build_subg1() {
  // Elements {a} {b} {c} {a,c} {b,c} {a,b,c}.
  return groupoid("Sub(G1)", {"{a}", "{b}", "{c}", "{a,c}", "{b,c}", "{a,b,c}"},
                  {{0, 2, 2, 3, 2, 3},
                   {2, 1, 2, 2, 4, 4},
                   {0, 1, 2, 3, 4, 5},
                   {0, 4, 2, 3, 4, 5},
                   {3, 1, 2, 3, 4, 5},
                   {3, 4, 2, 3, 4, 5}});
}

Algebra build_m9() { return affine_module_algebra(3, trace_det_matrices(3), "M9").algebra; }

Algebra build_m9prime() {
  auto X = trace_det_matrices(3);
  X.erase(std::remove(X.begin(), X.end(), Mat2::scalar(3, 2)), X.end());
  return affine_module_algebra(3, X, "M9prime").algebra;
}

Algebra build_path3() {
  Graph g{{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}};
  return graph_algebra(g.undirected().with_loops(), "path3");
}

Algebra build_equiv() { return equivalence_algebra({{"a", "b"}, {"c"}}, "equiv"); }

Algebra build_z3() { return cyclic_group(3); }

Algebra build_s3loop() { return loop_from_groupoid(symmetric_group3()).renamed("S3loop"); }

Algebra build_perm3() {
  return unary_permutation_algebra(
      3, {parse_permutation("(1 2)", 3), parse_permutation("(1 2 3)", 3), parse_permutation("(1 3 2)", 3)},
      "perm3");
}

Algebra build_leftzero() { return groupoid("LZ2", {"a", "b"}, {{0, 0}, {1, 1}}); }

const std::vector<Example>& registry() {
  static const std::vector<Example> r = {
      {"g1", "3-element idempotent groupoid with closed subuniverses, fails GEP", build_g1},
      {"g2", "3-element groupoid satisfying the cross identities, fails GEP", build_g2},
      {"t", "entropic idempotent groupoid with x(xy)=y", build_t},
      {"subg1", "complex algebra of the subuniverses of g1", build_subg1},
      {"m9", "affine module algebra over GF(3) with the 9 trace-1 det-1 matrices", build_m9},
      {"m9prime", "m9 without the operation diag(2,2)", build_m9prime},
      {"path3", "graph algebra of the looped path a-b-c", build_path3},
      {"equiv_ab_c", "equivalence algebra of the partition {a,b},{c}", build_equiv},
      {"z3", "cyclic group of order 3 with +, -, 0", build_z3},
      {"s3loop", "symmetric group S3 as a loop with divisions", build_s3loop},
      {"perm3", "unary algebra of (1 2), (1 2 3), (1 3 2) on 3 points", build_perm3},
      {"leftzero2", "2-element left-zero band", build_leftzero},
  };
  return r;
}

const Example& find_example(const std::string& name) {
  for (const auto& e : registry())
    if (name == e.name) return e;
  throw PreconditionError("unknown example '" + name + "'");
}

}  // namespace

std::vector<std::string> example_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.emplace_back(e.name);
  return out;
}

Algebra example_algebra(const std::string& name) { return find_example(name).build(); }

std::string example_description(const std::string& name) { return find_example(name).description; }

}  // namespace entropica
