#pragma once

// Exhaustive enumeration of 2-functors between strict finite 2-categories and
// the probe sets built from them.

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bicat/core.hpp"
#include "bicat/presentation.hpp"
#include "bicat/pseudofunctor.hpp"
#include "bicat/sigma.hpp"

namespace bicat {

namespace detail {

class TwoFunctorSearch {
 public:
  TwoFunctorSearch(BicatPtr C, BicatPtr D, const SigmaClass* S, std::size_t cap)
      : C_(std::move(C)), D_(std::move(D)), S_(S), cap_(cap) {
    const Bicategory& c = *C_;
    arr_eqs_.resize(static_cast<std::size_t>(c.num_arrows()));
    for (ArrId g = 0; g < c.num_arrows(); ++g)
      for (ArrId f = 0; f < c.num_arrows(); ++f) {
        if (c.dst(f) != c.src(g)) continue;
        const ArrId gf = c.comp(g, f);
        if (gf == kNone) throw Error("enumerate: source composite " + c.arr_name(g) + " . " + c.arr_name(f) + " undefined");
        arr_eqs_[static_cast<std::size_t>(std::max({g, f, gf}))].push_back({g, f, gf});
      }
    cell_eqs_.resize(static_cast<std::size_t>(c.num_cells()));
    for (CellId b = 0; b < c.num_cells(); ++b)
      for (CellId a = 0; a < c.num_cells(); ++a) {
        if (c.cdst(a) != c.csrc(b)) continue;
        const CellId ba = c.vc(b, a);
        if (ba != kNone) cell_eqs_[static_cast<std::size_t>(std::max({a, b, ba}))].push_back({kVc, b, a, ba});
      }
    for (CellId a = 0; a < c.num_cells(); ++a)
      for (ArrId g = 0; g < c.num_arrows(); ++g) {
        if (c.src(g) == c.dst(c.csrc(a))) {
          const CellId ga = c.lw(g, a);
          if (ga != kNone) cell_eqs_[static_cast<std::size_t>(std::max(a, ga))].push_back({kLw, g, a, ga});
        }
        if (c.dst(g) == c.src(c.csrc(a))) {
          const CellId ag = c.rw(a, g);
          if (ag != kNone) cell_eqs_[static_cast<std::size_t>(std::max(a, ag))].push_back({kRw, g, a, ag});
        }
      }
  }

  std::vector<PseudofunctorData> run() {
    if (!C_->strict || !D_->strict) throw Error("enumerate: 2-functors are enumerated between strict bicategories only");
    F_.source = C_;
    F_.target = D_;
    F_.obj_map.assign(static_cast<std::size_t>(C_->num_objects()), kNone);
    F_.arr_map.assign(static_cast<std::size_t>(C_->num_arrows()), kNone);
    F_.cell_map.assign(static_cast<std::size_t>(C_->num_cells()), kNone);
    objects(0);
    return std::move(out_);
  }

 private:
  enum Kind { kVc, kLw, kRw };
  struct ArrEq {
    ArrId g, f, gf;
  };
  struct CellEq {
    Kind k;
    int x;  // b for vc, arrow g otherwise
    CellId a, c;
  };

  bool full() const { return out_.size() >= cap_; }

  bool qe(ArrId d) {
    auto it = qe_cache_.find(d);
    if (it != qe_cache_.end()) return it->second;
    return qe_cache_[d] = is_quasiequivalence(*D_, d);
  }

  void objects(ObjId x) {
    if (full()) return;
    if (x == C_->num_objects()) return arrows(0);
    for (ObjId y = 0; y < D_->num_objects(); ++y) {
      F_.obj_map[static_cast<std::size_t>(x)] = y;
      objects(x + 1);
    }
  }

  bool arrow_ok(ArrId f) {
    if (S_ && S_->contains(f) && !qe(F_.arr(f))) return false;
    for (const auto& e : arr_eqs_[static_cast<std::size_t>(f)])
      if (D_->comp(F_.arr(e.g), F_.arr(e.f)) != F_.arr(e.gf)) return false;
    return true;
  }

  void arrows(ArrId f) {
    if (full()) return;
    if (f == C_->num_arrows()) return cells(0);
    const Bicategory& c = *C_;
    const ObjId X = F_.obj(c.src(f)), Y = F_.obj(c.dst(f));
    std::vector<ArrId> dom;
    if (c.id_arrow(c.src(f)) == f) dom = {D_->id_arrow(X)};
    else dom = D_->arrows(X, Y);
    for (ArrId d : dom) {
      F_.arr_map[static_cast<std::size_t>(f)] = d;
      if (arrow_ok(f)) arrows(f + 1);
    }
    F_.arr_map[static_cast<std::size_t>(f)] = kNone;
  }

  bool cell_ok(CellId a) {
    for (const auto& e : cell_eqs_[static_cast<std::size_t>(a)]) {
      CellId v = kNone;
      switch (e.k) {
        case kVc: v = D_->vc(F_.cell(e.x), F_.cell(e.a)); break;
        case kLw: v = D_->lw(F_.arr(e.x), F_.cell(e.a)); break;
        case kRw: v = D_->rw(F_.cell(e.a), F_.arr(e.x)); break;
      }
      if (v == kNone || v != F_.cell(e.c)) return false;
    }
    return true;
  }

  void cells(CellId a) {
    if (full()) return;
    if (a == C_->num_cells()) {
      PseudofunctorData G = F_;
      fill_identity_structure(G);
      out_.push_back(std::move(G));
      return;
    }
    const Bicategory& c = *C_;
    const ArrId f = F_.arr(c.csrc(a)), g = F_.arr(c.cdst(a));
    std::vector<CellId> dom;
    if (c.is_identity(a)) dom = {D_->id_cell(f)};
    else dom = D_->hom(f, g);
    for (CellId d : dom) {
      F_.cell_map[static_cast<std::size_t>(a)] = d;
      if (cell_ok(a)) cells(a + 1);
    }
    F_.cell_map[static_cast<std::size_t>(a)] = kNone;
  }

  BicatPtr C_, D_;
  const SigmaClass* S_;
  std::size_t cap_;
  PseudofunctorData F_;
  std::vector<std::vector<ArrEq>> arr_eqs_;
  std::vector<std::vector<CellEq>> cell_eqs_;
  std::map<ArrId, bool> qe_cache_;
  std::vector<PseudofunctorData> out_;
};

}  // namespace detail

// All 2-functors C → D, optionally only those sending Σ to quasiequivalences.
inline std::vector<PseudofunctorData> enumerate_2functors(BicatPtr C, BicatPtr D, const SigmaClass* S = nullptr,
                                                          std::size_t cap = 100000) {
  return detail::TwoFunctorSearch(std::move(C), std::move(D), S, cap).run();
}

struct Probe {
  std::string name;  // "<target>#<index>"
  PseudofunctorData F;
};

struct Target {
  std::string name;
  BicatPtr bicat;
};

using ProbeSet = std::vector<Probe>;

// Probes from every target, in target order then enumeration order.
inline ProbeSet build_probes(const SigmaClass& S, const std::vector<Target>& targets, std::size_t cap_per_target = 5000) {
  ProbeSet out;
  for (const auto& t : targets) {
    if (!t.bicat->strict) continue;
    auto fs = enumerate_2functors(S.ptr(), t.bicat, &S, cap_per_target);
    for (std::size_t i = 0; i < fs.size(); ++i) out.push_back({t.name + "#" + std::to_string(i), std::move(fs[i])});
  }
  return out;
}

// Every *.bicat file in a directory, sorted by file name.
inline std::vector<Target> load_targets(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("probe library '" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".bicat") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Target> out;
  for (const auto& p : files) out.push_back({p.stem().string(), load_presentation_file(p.string())});
  return out;
}

}  // namespace bicat
