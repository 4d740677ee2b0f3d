#include "aqg/constructors.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace aqg {

void validate_group(const FiniteGroupTable& g) {
  const int n = g.order;
  auto bad = [](const std::string& why) { throw Error(ErrorCode::Schema, "invalid group table: " + why); };
  if (n <= 0 || static_cast<int>(g.cayley.size()) != n) bad("order");
  for (const auto& row : g.cayley) {
    if (static_cast<int>(row.size()) != n) bad("row length");
    std::vector<bool> seen(n, false);
    for (int x : row) {
      if (x < 0 || x >= n || seen[x]) bad("not a Latin square");
      seen[x] = true;
    }
  }
  for (int h = 0; h < n; ++h) {
    std::vector<bool> seen(n, false);
    for (int k = 0; k < n; ++k) {
      int x = g.cayley[k][h];
      if (seen[x]) bad("not a Latin square");
      seen[x] = true;
    }
  }
  if (n <= 64)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) bad("not associative");
  for (int a = 0; a < n; ++a) {
    if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a) bad("identity");
    if (g.mul(a, g.inverse[a]) != g.identity) bad("inverse");
  }
}

FiniteGroupTable group_from_cayley(std::vector<std::vector<int>> cayley, std::vector<std::string> labels) {
  FiniteGroupTable g;
  g.order = static_cast<int>(cayley.size());
  g.cayley = std::move(cayley);
  if (g.order == 0) throw Error(ErrorCode::Schema, "invalid group table: empty");
  g.identity = -1;
  for (int e = 0; e < g.order && g.identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < g.order && ok; ++a)
      ok = static_cast<int>(g.cayley[e].size()) == g.order && g.cayley[e][a] == a;
    if (ok) g.identity = e;
  }
  if (g.identity < 0) throw Error(ErrorCode::Schema, "invalid group table: no identity");
  g.inverse.assign(g.order, -1);
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      if (g.cayley[a][b] == g.identity) g.inverse[a] = b;
  if (std::count(g.inverse.begin(), g.inverse.end(), -1))
    throw Error(ErrorCode::Schema, "invalid group table: missing inverse");
  if (labels.empty())
    for (int a = 0; a < g.order; ++a) labels.push_back("g" + std::to_string(a));
  g.labels = std::move(labels);
  validate_group(g);
  return g;
}

FiniteGroupTable cyclic_group(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return group_from_cayley(std::move(t), std::move(labels));
}

FiniteGroupTable symmetric_group(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> labels;
  for (int a = 0; a < m; ++a) {
    std::string s;
    for (int x : perms[a]) s += std::to_string(x);
    labels.push_back(s);
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];  // (ab)(i) = a(b(i))
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return group_from_cayley(std::move(t), std::move(labels));
}

FiniteGroupTable direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b) {
  const int n = a.order * b.order;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int x = 0; x < n; ++x) {
    labels.push_back("(" + a.labels[x / b.order] + "," + b.labels[x % b.order] + ")");
    for (int y = 0; y < n; ++y)
      t[x][y] = a.mul(x / b.order, y / b.order) * b.order + b.mul(x % b.order, y % b.order);
  }
  return group_from_cayley(std::move(t), std::move(labels));
}

FiniteGroupTable named_group(const std::string& name) {
  int k = 0;
  const char* first = name.data() + 1;
  const char* last = name.data() + name.size();
  auto [ptr, ec] = name.size() >= 2 ? std::from_chars(first, last, k) : std::from_chars_result{first, std::errc::invalid_argument};
  if (ec != std::errc() || ptr != last || k < 1) throw Error(ErrorCode::Schema, "unknown group name " + name);
  if (name[0] == 'Z') {
    if (k > kMaxGroupOrder) throw Error(ErrorCode::Schema, "group " + name + " is too large");
    return cyclic_group(k);
  }
  if (name[0] == 'S') {
    if (k > 6) throw Error(ErrorCode::Schema, "group " + name + " is too large");
    return symmetric_group(k);
  }
  throw Error(ErrorCode::Schema, "unknown group name " + name);
}

namespace {

QuantumGroupPresentation empty_presentation(int n) {
  QuantumGroupPresentation p;
  p.algebra.dim = n;
  p.algebra.mult = Mat::Zero(n, n * n);
  p.algebra.involution = Mat::Zero(n, n);
  p.algebra.unit = Vec::Zero(n);
  p.comul = Mat::Zero(n * n, n);
  p.counit = RowVec::Zero(n);
  p.antipode = Mat::Zero(n, n);
  return p;
}

}  // namespace

QuantumGroupPresentation group_algebra(const FiniteGroupTable& g) {
  const int n = g.order;
  auto p = empty_presentation(n);
  for (int a = 0; a < n; ++a) {
    p.algebra.labels.push_back("l_" + g.labels[a]);
    for (int b = 0; b < n; ++b) p.algebra.mult(g.mul(a, b), a * n + b) = 1.0;
    p.algebra.involution(g.inverse[a], a) = 1.0;
    p.comul(a * n + a, a) = 1.0;
    p.counit(a) = 1.0;
    (*p.antipode)(g.inverse[a], a) = 1.0;
  }
  p.algebra.unit(g.identity) = 1.0;
  return p;
}

QuantumGroupPresentation function_algebra(const FiniteGroupTable& g) {
  const int n = g.order;
  auto p = empty_presentation(n);
  for (int a = 0; a < n; ++a) {
    p.algebra.labels.push_back("d_" + g.labels[a]);
    p.algebra.mult(a, a * n + a) = 1.0;
    p.algebra.involution(a, a) = 1.0;
    p.algebra.unit(a) = 1.0;
    for (int b = 0; b < n; ++b) p.comul(a * n + b, g.mul(a, b)) += 1.0;
    (*p.antipode)(g.inverse[a], a) = 1.0;
  }
  p.counit(g.identity) = 1.0;
  return p;
}

QuantumGroupPresentation drinfeld_double(const FiniteGroupTable& g) {
  const int n = g.order;
  const int dim = n * n;
  auto p = empty_presentation(dim);
  auto idx = [n](int x, int h) { return x * n + h; };
  for (int x = 0; x < n; ++x)
    for (int h = 0; h < n; ++h) {
      const int i = idx(x, h);
      p.algebra.labels.push_back("d_" + g.labels[x] + "*" + g.labels[h]);
      const int hi = g.inverse[h];
      // (d_x h)(d_y k) = [x = h y h^-1] d_x hk
      for (int y = 0; y < n; ++y)
        for (int k = 0; k < n; ++k)
          if (x == g.mul(g.mul(h, y), hi)) p.algebra.mult(idx(x, g.mul(h, k)), i * dim + idx(y, k)) = 1.0;
      // (d_x h)* = d_{h^-1 x h} h^-1 and S(d_x h) = d_{h^-1 x^-1 h} h^-1
      p.algebra.involution(idx(g.mul(g.mul(hi, x), h), hi), i) = 1.0;
      (*p.antipode)(idx(g.mul(g.mul(hi, g.inverse[x]), h), hi), i) = 1.0;
      for (int a = 0; a < n; ++a) {
        int b = g.mul(g.inverse[a], x);
        p.comul(idx(a, h) * dim + idx(b, h), i) += 1.0;
      }
      if (x == g.identity) p.counit(i) = 1.0;
    }
  for (int x = 0; x < n; ++x) p.algebra.unit(idx(x, g.identity)) = 1.0;
  return p;
}

}  // namespace aqg
