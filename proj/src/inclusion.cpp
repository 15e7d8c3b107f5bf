#include "rnta/inclusion.hpp"

#include <stdexcept>
#include <string>

#include "rnta/namedrop.hpp"
#include "rnta/nfta.hpp"

namespace rnta {

namespace {

NameSet pool_names(int count) {
  NameSet s;
  for (int i = 0; i < count; ++i) {
    std::string spelling = i < 26 ? std::string(1, static_cast<char>('a' + i))
                                  : "n" + std::to_string(i + 1);
    s.insert(Name::intern(spelling));
  }
  return s;
}

}  // namespace

NameSet restriction_set(const RntaSpec& a) {
  NameSet s = pool_names(degree(a) * max_arity(a) + 1);
  if (a.uses_dummy) s.insert(Name::dummy());
  return s;
}

IncludeResult include(const RntaSpec& a, const RntaSpec& b,
                      SemanticsKind kind) {
  if (!a.sig.same_symbols(b.sig))
    throw std::invalid_argument("inclusion needs a common signature");

  // enough names to pick an equivalent term inside the left language; the
  // right side is closed under renaming once name-dropped
  NameSet S = pool_names(degree(a) * max_arity(a) + 1);
  if (a.uses_dummy || b.uses_dummy) S.insert(Name::dummy());

  Nfta left = restrict_to(a, S);

  const RntaSpec* dropped = &b;
  RntaSpec storage;
  if (!b.name_dropped) {
    storage = name_drop(b);
    dropped = &storage;
  }
  Nfta right = restrict_to(*dropped, S);
  if (kind == SemanticsKind::Local) right = down_close(right);

  NftaInclusionResult r = nfta_inclusion(left, right);
  IncludeResult out;
  out.holds = r.holds;
  if (!r.holds) {
    out.witness = r.witness;
    if (kind != SemanticsKind::Alphatic)
      out.witness_data = denu(clean_variant(r.witness));
  }
  return out;
}

}  // namespace rnta
