#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fpg {

using Elem = std::uint32_t;
using ElemSet = std::vector<Elem>;  // sorted, duplicate free

/// A finite group given extensionally by its multiplication table.
///
/// The identity is always element 0. Tables whose identity sits elsewhere are
/// re-indexed by `from_table`, swapping the identity with index 0. Instances
/// are immutable once constructed.
class FiniteGroup {
 public:
  /// Validates `table` (rows of element indices) and builds the group.
  /// Throws Error{MalformedTable|NoIdentity|NotInvertible|NotAssociative}.
  static FiniteGroup from_table(const std::vector<std::vector<Elem>>& table, std::string name = {});

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::uint32_t n);
  /// Symmetric group on n ≤ 5 points; element 0 is the identity permutation,
  /// the rest follow lexicographic order of the one-line notation.
  static FiniteGroup sym(std::uint32_t n);

  std::uint32_t order() const noexcept { return order_; }
  const std::string& name() const noexcept { return name_; }

  Elem mul(Elem x, Elem y) const noexcept { return mul_[static_cast<std::size_t>(x) * order_ + y]; }
  Elem inv(Elem x) const noexcept { return inv_[x]; }

  std::vector<std::vector<Elem>> table() const;

  bool operator==(const FiniteGroup& o) const noexcept {
    return order_ == o.order_ && mul_ == o.mul_;
  }

 private:
  FiniteGroup() = default;

  std::uint32_t order_ = 1;
  std::vector<Elem> mul_{0};
  std::vector<Elem> inv_{0};
  std::string name_;
};

/// Smallest subgroup containing `gens`. Returned sorted.
ElemSet subgroup_closure(const FiniteGroup& g, std::span<const Elem> gens);

/// g⁻¹ S g for every g, minimised lexicographically: a canonical name for the
/// conjugacy class of the subgroup S.
ElemSet conjugacy_class_key(const FiniteGroup& g, const ElemSet& subgroup);

/// Homomorphism between finite groups, stored as an image table.
class GroupHom {
 public:
  /// Throws Error{MalformedTable|NotHomomorphism}.
  GroupHom(const FiniteGroup& source, const FiniteGroup& target, std::vector<Elem> map);

  Elem operator()(Elem x) const noexcept { return map_[x]; }
  const std::vector<Elem>& map() const noexcept { return map_; }
  std::uint32_t target_order() const noexcept { return target_order_; }

  bool is_surjective() const;

  /// Smallest source index mapping onto `b`. Throws Error{NoPreimage}.
  Elem solve_preimage(Elem b) const;

  bool operator==(const GroupHom& o) const noexcept { return map_ == o.map_; }

 private:
  std::vector<Elem> map_;
  std::uint32_t target_order_;
};

}  // namespace fpg
