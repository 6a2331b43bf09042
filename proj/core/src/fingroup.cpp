#include "fpg/fingroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fpg/error.hpp"

namespace fpg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NoPreimage: return "NoPreimage";
    case ErrorKind::MalformedWord: return "MalformedWord";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::IndexBoundExceeded: return "IndexBoundExceeded";
    case ErrorKind::DisconnectedUnion: return "DisconnectedUnion";
    case ErrorKind::TreeBoundExceeded: return "TreeBoundExceeded";
    case ErrorKind::ThetaNotSurjectiveOntoB: return "ThetaNotSurjectiveOntoB";
    case ErrorKind::CrossFactorPieceNontrivial: return "CrossFactorPieceNontrivial";
    case ErrorKind::BetaImageNotInFactor: return "BetaImageNotInFactor";
    case ErrorKind::NotFreeProduct: return "NotFreeProduct";
    case ErrorKind::GraphNotComplete: return "GraphNotComplete";
    case ErrorKind::MalformedCertificate: return "MalformedCertificate";
  }
  return "Unknown";
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<Elem>>& table, std::string name) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorKind::MalformedTable, "empty table");
  for (const auto& row : table) {
    if (row.size() != n) throw Error(ErrorKind::MalformedTable, "table is not square");
    for (Elem e : row)
      if (e >= n) throw Error(ErrorKind::MalformedTable, "entry out of range");
  }

  std::size_t identity = n;
  for (std::size_t e = 0; e < n && identity == n; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (identity == n) throw Error(ErrorKind::NoIdentity, "no two-sided identity element");

  // Swap the identity into slot 0.
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::swap(perm[0], perm[identity]);

  FiniteGroup g;
  g.order_ = static_cast<std::uint32_t>(n);
  g.name_ = std::move(name);
  g.mul_.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      g.mul_[perm[x] * n + perm[y]] = perm[table[x][y]];

  std::vector<char> seen(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t y = 0; y < n; ++y) seen[g.mul_[x * n + y]] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw Error(ErrorKind::NotInvertible, "row " + std::to_string(x) + " is not a permutation");
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t y = 0; y < n; ++y) seen[g.mul_[y * n + x]] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw Error(ErrorKind::NotInvertible, "column " + std::to_string(x) + " is not a permutation");
  }

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xy = g.mul_[x * n + y];
      for (std::size_t z = 0; z < n; ++z)
        if (g.mul_[xy * n + z] != g.mul_[x * n + g.mul_[y * n + z]])
          throw Error(ErrorKind::NotAssociative, "(xy)z != x(yz) for x=" + std::to_string(x) +
                                                     " y=" + std::to_string(y) + " z=" + std::to_string(z));
    }

  g.inv_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (g.mul_[x * n + y] == 0) g.inv_[x] = static_cast<Elem>(y);
  return g;
}

FiniteGroup FiniteGroup::trivial() {
  FiniteGroup g;
  g.name_ = "trivial";
  return g;
}

FiniteGroup FiniteGroup::cyclic(std::uint32_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "cyclic group of order 0");
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) t[x][y] = (x + y) % n;
  return from_table(t, "Z" + std::to_string(n));
}

FiniteGroup FiniteGroup::sym(std::uint32_t n) {
  if (n == 0 || n > 5) throw Error(ErrorKind::InvalidInput, "sym(n) supports 1 <= n <= 5");
  std::vector<std::vector<std::uint8_t>> perms;
  std::vector<std::uint8_t> p(n);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::map<std::vector<std::uint8_t>, Elem> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index.emplace(perms[i], static_cast<Elem>(i));

  // x·y applies x first, then y.
  std::vector<std::vector<Elem>> t(perms.size(), std::vector<Elem>(perms.size()));
  std::vector<std::uint8_t> c(n);
  for (std::size_t x = 0; x < perms.size(); ++x)
    for (std::size_t y = 0; y < perms.size(); ++y) {
      for (std::uint32_t i = 0; i < n; ++i) c[i] = perms[y][perms[x][i]];
      t[x][y] = index.at(c);
    }
  return from_table(t, "S" + std::to_string(n));
}

std::vector<std::vector<Elem>> FiniteGroup::table() const {
  std::vector<std::vector<Elem>> t(order_, std::vector<Elem>(order_));
  for (Elem x = 0; x < order_; ++x)
    for (Elem y = 0; y < order_; ++y) t[x][y] = mul(x, y);
  return t;
}

ElemSet subgroup_closure(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> queue{0};
  in[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elem x = queue[head];
    for (Elem s : gens) {
      const Elem y = g.mul(x, s);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  }
  // Finite group: closure under multiplication already contains inverses.
  std::sort(queue.begin(), queue.end());
  return queue;
}

ElemSet conjugacy_class_key(const FiniteGroup& g, const ElemSet& subgroup) {
  ElemSet best = subgroup;
  ElemSet cur(subgroup.size());
  for (Elem c = 1; c < g.order(); ++c) {
    for (std::size_t i = 0; i < subgroup.size(); ++i) cur[i] = g.mul(g.mul(g.inv(c), subgroup[i]), c);
    std::sort(cur.begin(), cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

GroupHom::GroupHom(const FiniteGroup& source, const FiniteGroup& target, std::vector<Elem> map)
    : map_(std::move(map)), target_order_(target.order()) {
  if (map_.size() != source.order())
    throw Error(ErrorKind::MalformedTable, "homomorphism table length differs from source order");
  for (Elem b : map_)
    if (b >= target.order()) throw Error(ErrorKind::MalformedTable, "homomorphism image out of range");
  for (Elem x = 0; x < source.order(); ++x)
    for (Elem y = 0; y < source.order(); ++y)
      if (map_[source.mul(x, y)] != target.mul(map_[x], map_[y]))
        throw Error(ErrorKind::NotHomomorphism,
                    "map(xy) != map(x)map(y) for x=" + std::to_string(x) + " y=" + std::to_string(y));
}

bool GroupHom::is_surjective() const {
  std::vector<char> hit(target_order_, 0);
  for (Elem b : map_) hit[b] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

Elem GroupHom::solve_preimage(Elem b) const {
  for (std::size_t g = 0; g < map_.size(); ++g)
    if (map_[g] == b) return static_cast<Elem>(g);
  throw Error(ErrorKind::NoPreimage, "no preimage for target element " + std::to_string(b));
}

}  // namespace fpg
