#include "rnta/names.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace rnta {

struct NameAccess {
  static Name make(uint32_t id) { return Name(id); }
};

namespace {

struct NamePool {
  // deque keeps spellings at stable addresses while the pool grows
  std::deque<std::string> spellings;
  std::vector<bool> reserved;
  std::unordered_map<std::string_view, uint32_t> index;
  std::mutex mu;

  NamePool() { intern("_", false); }

  uint32_t intern(std::string_view spelling, bool reserve) {
    auto it = index.find(spelling);
    if (it != index.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(spellings.size());
    spellings.emplace_back(spelling);
    reserved.push_back(reserve);
    index.emplace(spellings.back(), id);
    return id;
  }
};

NamePool& pool() {
  static NamePool p;
  return p;
}

}  // namespace

Name Name::intern(std::string_view spelling) {
  if (spelling.empty()) throw std::invalid_argument("empty name spelling");
  NamePool& p = pool();
  std::lock_guard<std::mutex> lock(p.mu);
  return NameAccess::make(p.intern(spelling, false));
}

Name Name::from_id(uint32_t id) {
  NamePool& p = pool();
  std::lock_guard<std::mutex> lock(p.mu);
  if (id >= p.spellings.size()) throw std::out_of_range("unknown name id");
  return NameAccess::make(id);
}

const std::string& Name::str() const {
  NamePool& p = pool();
  std::lock_guard<std::mutex> lock(p.mu);
  return p.spellings[id_];
}

Name intern_reserved(std::string_view spelling) {
  NamePool& p = pool();
  std::lock_guard<std::mutex> lock(p.mu);
  return NameAccess::make(p.intern(spelling, true));
}

bool is_reserved(Name a) {
  NamePool& p = pool();
  std::lock_guard<std::mutex> lock(p.mu);
  return p.reserved[a.id()];
}

NameSet::NameSet(std::vector<Name> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

NameSet NameSet::of(std::initializer_list<Name> names) {
  return NameSet(std::vector<Name>(names));
}

bool NameSet::contains(Name a) const {
  return std::binary_search(names_.begin(), names_.end(), a);
}

void NameSet::insert(Name a) {
  auto it = std::lower_bound(names_.begin(), names_.end(), a);
  if (it == names_.end() || *it != a) names_.insert(it, a);
}

void NameSet::erase(Name a) {
  auto it = std::lower_bound(names_.begin(), names_.end(), a);
  if (it != names_.end() && *it == a) names_.erase(it);
}

NameSet NameSet::union_with(const NameSet& other) const {
  std::vector<Name> merged;
  merged.reserve(names_.size() + other.names_.size());
  std::set_union(names_.begin(), names_.end(), other.names_.begin(),
                 other.names_.end(), std::back_inserter(merged));
  NameSet r;
  r.names_ = std::move(merged);
  return r;
}

bool NameSet::subset_of(const NameSet& other) const {
  return std::includes(other.names_.begin(), other.names_.end(),
                       names_.begin(), names_.end());
}

Name fresh_for(const NameSet& s) {
  NamePool& p = pool();
  std::lock_guard<std::mutex> lock(p.mu);
  for (uint32_t id = 1; id < p.spellings.size(); ++id) {
    if (p.reserved[id]) continue;
    Name candidate = NameAccess::make(id);
    if (!s.contains(candidate)) return candidate;
  }
  // every interned name is taken: mint a new spelling
  for (uint32_t n = 0;; ++n) {
    std::string spelling = "u" + std::to_string(n);
    if (p.index.count(spelling)) continue;
    return NameAccess::make(p.intern(spelling, false));
  }
}

Permutation Permutation::swap(Name a, Name b) {
  Permutation p;
  if (a == b) return p;
  if (b < a) std::swap(a, b);
  p.map_ = {{a, b}, {b, a}};
  return p;
}

Name Permutation::operator()(Name a) const {
  auto it = std::lower_bound(
      map_.begin(), map_.end(), a,
      [](const std::pair<Name, Name>& e, Name x) { return e.first < x; });
  if (it != map_.end() && it->first == a) return it->second;
  return a;
}

Permutation Permutation::after(const Permutation& q) const {
  NameSet carrier = moved_names().union_with(q.moved_names());
  Permutation r;
  for (Name a : carrier) {
    Name b = (*this)(q(a));
    if (b != a) r.map_.emplace_back(a, b);
  }
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.map_.reserve(map_.size());
  for (const auto& [a, b] : map_) r.map_.emplace_back(b, a);
  std::sort(r.map_.begin(), r.map_.end());
  return r;
}

NameSet Permutation::moved_names() const {
  std::vector<Name> moved;
  moved.reserve(map_.size());
  for (const auto& [a, b] : map_) moved.push_back(a);
  return NameSet(std::move(moved));
}

}  // namespace rnta
