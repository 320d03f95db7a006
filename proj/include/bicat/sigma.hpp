#pragma once

// Checks on a distinguished class of arrows Σ and on single arrows:
// 3-for-2, w-splitness, decomposition into w-split Σ-arrows, quasiequivalences
// and equivalences.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bicat/core.hpp"
#include "bicat/pseudofunctor.hpp"

namespace bicat {

class SigmaClass {
 public:
  SigmaClass(BicatPtr b, std::vector<ArrId> members) : b_(std::move(b)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (ArrId f : members_)
      if (!b_->valid_arr(f)) throw Error("sigma: invalid arrow id " + std::to_string(f));
    for (ObjId x = 0; x < b_->num_objects(); ++x)
      if (!contains(b_->id_arrow(x))) throw Error("sigma must contain the identity " + b_->arr_name(b_->id_arrow(x)));
  }

  // Σ as declared in the presentation.
  static SigmaClass of(BicatPtr b) {
    auto m = b->sigma;
    return SigmaClass(std::move(b), std::move(m));
  }
  static SigmaClass by_names(BicatPtr b, const std::vector<std::string>& names) {
    std::vector<ArrId> m;
    for (const auto& n : names) m.push_back(b->arrow(n));
    return SigmaClass(std::move(b), std::move(m));
  }

  bool contains(ArrId f) const { return std::binary_search(members_.begin(), members_.end(), f); }
  const std::vector<ArrId>& members() const { return members_; }
  const Bicategory& bicat() const { return *b_; }
  const BicatPtr& ptr() const { return b_; }

 private:
  BicatPtr b_;
  std::vector<ArrId> members_;
};

// An invertible cell g∗f ⇒ h where two of f, g, h lie in Σ and `missing` does not.
struct ThreeForTwoViolation {
  ArrId f = kNone, g = kNone, h = kNone;
  CellId cell = kNone;
  ArrId missing = kNone;
};

struct ThreeForTwoReport {
  std::vector<ThreeForTwoViolation> violations;
  bool ok() const { return violations.empty(); }
  // Prefers a violation whose composite is the missing arrow.
  const ThreeForTwoViolation& primary() const {
    for (const auto& v : violations)
      if (v.missing == v.h) return v;
    return violations.front();
  }
};

inline ThreeForTwoReport check_three_for_two(const SigmaClass& S) {
  const Bicategory& B = S.bicat();
  ThreeForTwoReport rep;
  for (ArrId g = 0; g < B.num_arrows(); ++g)
    for (ArrId f = 0; f < B.num_arrows(); ++f) {
      if (B.dst(f) != B.src(g)) continue;
      const ArrId gf = B.comp(g, f);
      if (gf == kNone) continue;
      for (ArrId h : B.arrows(B.src(f), B.dst(g)))
        for (CellId c : B.hom(gf, h)) {
          if (!B.invertible(c)) continue;
          const int in = S.contains(f) + S.contains(g) + S.contains(h);
          if (in != 2) continue;
          const ArrId missing = !S.contains(f) ? f : !S.contains(g) ? g : h;
          rep.violations.push_back({f, g, h, c, missing});
          break;
        }
    }
  return rep;
}

// r∗s ⇒ id_X invertible, s: X → Y.
struct WSplitWitness {
  ArrId s = kNone, r = kNone;
  CellId alpha = kNone;
};

struct WSplitResult {
  std::optional<WSplitWitness> as_section;     // f plays s
  std::optional<WSplitWitness> as_retraction;  // f plays r
  bool section() const { return as_section.has_value(); }
  bool retraction() const { return as_retraction.has_value(); }
};

namespace detail {

inline CellId invertible_cell(const Bicategory& B, ArrId from, ArrId to) {
  for (CellId c : B.hom(from, to))
    if (B.invertible(c)) return c;
  return kNone;
}

}  // namespace detail

inline std::optional<WSplitResult> find_w_split(const Bicategory& B, ArrId f) {
  WSplitResult res;
  const ObjId X = B.src(f), Y = B.dst(f);
  for (ArrId r : B.arrows(Y, X)) {
    if (!res.as_section) {
      const CellId a = detail::invertible_cell(B, B.comp(r, f), B.id_arrow(X));
      if (a != kNone) res.as_section = WSplitWitness{f, r, a};
    }
    if (!res.as_retraction) {
      const CellId a = detail::invertible_cell(B, B.comp(f, r), B.id_arrow(Y));
      if (a != kNone) res.as_retraction = WSplitWitness{r, f, a};
    }
  }
  if (!res.section() && !res.retraction()) return std::nullopt;
  return res;
}

inline bool is_w_split(const Bicategory& B, ArrId f) { return find_w_split(B, f).has_value(); }

// Arrows g1..gk listed outermost first and an invertible cell g1∗...∗gk ⇒ f.
struct Decomposition {
  std::vector<ArrId> chain;
  CellId cell = kNone;
};

inline std::optional<Decomposition> w_split_decompose(const SigmaClass& S, ArrId f, int max_len) {
  if (max_len < 1) throw Error("max_len must be at least 1");
  const Bicategory& B = S.bicat();
  std::vector<ArrId> pieces;
  for (ArrId g : S.members())
    if (is_w_split(B, g)) pieces.push_back(g);
  struct Node {
    ArrId comp;
    std::vector<ArrId> chain;
  };
  std::vector<Node> layer;
  std::set<ArrId> seen;
  for (ArrId g : pieces)
    if (B.src(g) == B.src(f) && seen.insert(g).second) layer.push_back({g, {g}});
  for (int len = 1; len <= max_len && !layer.empty(); ++len) {
    for (const Node& n : layer) {
      if (!B.parallel(n.comp, f)) continue;
      const CellId c = detail::invertible_cell(B, n.comp, f);
      if (c != kNone) return Decomposition{n.chain, c};
    }
    std::vector<Node> next;
    for (const Node& n : layer)
      for (ArrId g : pieces) {
        if (B.src(g) != B.dst(n.comp)) continue;
        const ArrId c = B.comp(g, n.comp);
        if (c == kNone || !seen.insert(c).second) continue;
        std::vector<ArrId> chain{g};
        chain.insert(chain.end(), n.chain.begin(), n.chain.end());
        next.push_back({c, std::move(chain)});
      }
    layer = std::move(next);
  }
  return std::nullopt;
}

// Post- and pre-composition with f are full and faithful on every hom-category.
inline bool is_quasiequivalence(const Bicategory& B, ArrId f) {
  const ObjId X = B.src(f), Y = B.dst(f);
  auto bijective = [&](ArrId a, ArrId b, ArrId fa, ArrId fb, bool post) {
    const auto& dom = B.hom(a, b);
    const auto& cod = B.hom(fa, fb);
    if (dom.size() != cod.size()) return false;
    std::set<CellId> img;
    for (CellId c : dom) {
      const CellId d = post ? B.lw(f, c) : B.rw(c, f);
      if (d == kNone) return false;
      img.insert(d);
    }
    return img.size() == cod.size();
  };
  for (ObjId Z = 0; Z < B.num_objects(); ++Z) {
    for (ArrId a : B.arrows(Z, X))
      for (ArrId b : B.arrows(Z, X))
        if (!bijective(a, b, B.comp(f, a), B.comp(f, b), true)) return false;
    for (ArrId a : B.arrows(Y, Z))
      for (ArrId b : B.arrows(Y, Z))
        if (!bijective(a, b, B.comp(a, f), B.comp(b, f), false)) return false;
  }
  return true;
}

// Invertible cells g∗f ⇒ id_X and f∗g ⇒ id_Y.
struct EquivalenceWitness {
  ArrId f = kNone, g = kNone;
  CellId unit = kNone;    // g∗f ⇒ id_X
  CellId counit = kNone;  // f∗g ⇒ id_Y
};

inline std::optional<EquivalenceWitness> find_equivalence(const Bicategory& B, ArrId f) {
  const ObjId X = B.src(f), Y = B.dst(f);
  for (ArrId g : B.arrows(Y, X)) {
    const CellId u = detail::invertible_cell(B, B.comp(g, f), B.id_arrow(X));
    if (u == kNone) continue;
    const CellId v = detail::invertible_cell(B, B.comp(f, g), B.id_arrow(Y));
    if (v == kNone) continue;
    return EquivalenceWitness{f, g, u, v};
  }
  return std::nullopt;
}

}  // namespace bicat
