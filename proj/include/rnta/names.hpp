#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rnta {

// An interned atom from a countably infinite pool.  Names are created by
// interning a spelling; the pool is process-global, append-only and
// synchronized, so Name values are cheap to copy and compare.  Id 0 is the
// dummy name "_", which stands for the absent label on unlabelled nodes.
class Name {
 public:
  Name() : id_(0) {}

  static Name intern(std::string_view spelling);
  static Name from_id(uint32_t id);
  static Name dummy() { return Name(); }

  uint32_t id() const { return id_; }
  const std::string& str() const;
  bool is_dummy() const { return id_ == 0; }

  auto operator<=>(const Name&) const = default;

 private:
  friend struct NameAccess;
  explicit Name(uint32_t id) : id_(id) {}
  uint32_t id_;
};

// Interns a spelling that is not obtainable through ordinary interning.
// Used for the canonical bound names of alpha_canon; such names are skipped
// by fresh_for and never chosen as restriction-set members.
Name intern_reserved(std::string_view spelling);
bool is_reserved(Name a);

// A finite set of names, kept sorted by id.
class NameSet {
 public:
  NameSet() = default;
  explicit NameSet(std::vector<Name> names);

  static NameSet of(std::initializer_list<Name> names);

  bool contains(Name a) const;
  void insert(Name a);
  void erase(Name a);
  NameSet union_with(const NameSet& other) const;
  bool subset_of(const NameSet& other) const;

  size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }

  bool operator==(const NameSet&) const = default;

 private:
  std::vector<Name> names_;
};

// Lowest-id interned name outside s, skipping the dummy and reserved names.
// Extends the pool with a generated spelling if every interned name is in s.
Name fresh_for(const NameSet& s);

// A finite permutation of the name pool, stored sparsely: only names moved
// by the permutation appear in the map.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity() { return Permutation(); }
  static Permutation swap(Name a, Name b);

  Name operator()(Name a) const;

  // Applicative-order composition: (p.after(q))(a) == p(q(a)).
  Permutation after(const Permutation& q) const;
  Permutation inverse() const;

  bool is_identity() const { return map_.empty(); }
  NameSet moved_names() const;

  bool operator==(const Permutation&) const = default;

 private:
  // sorted by source id; entries with source == target are never stored
  std::vector<std::pair<Name, Name>> map_;
};

}  // namespace rnta
