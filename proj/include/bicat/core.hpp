#pragma once

// Finite tabulated bicategories.
//
// Every table is dense and indexed by integer ids.  Undefined entries hold
// kNone.  Tables are plain data so that tests can mutate single entries and
// re-run the validator; call reindex() after editing names or boundaries.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bicat {

using ObjId = int;
using ArrId = int;
using CellId = int;

inline constexpr int kNone = -1;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Bicategory {
  std::vector<std::string> obj_names;
  std::vector<std::string> arr_names;
  std::vector<std::string> cell_names;

  std::vector<ObjId> arr_src, arr_dst;
  std::vector<ArrId> cell_src, cell_dst;

  std::vector<ArrId> id1;       // object -> identity arrow
  std::vector<ArrId> hcomp1;    // [g * nA + f] -> g∗f
  std::vector<CellId> idc;      // arrow -> identity cell
  std::vector<CellId> vcomp;    // [b * nC + a] -> b∘a
  std::vector<CellId> lwhisk;   // [g * nC + a] -> g∗a
  std::vector<CellId> rwhisk;   // [a * nA + f] -> a∗f
  std::vector<CellId> lunitor;  // f -> λ: f∗id_X ⇒ f
  std::vector<CellId> runitor;  // f -> ρ: id_Y∗f ⇒ f
  std::map<std::array<ArrId, 3>, CellId> assoc;  // (h,g,f) -> θ: h∗(g∗f) ⇒ (h∗g)∗f
  bool strict = true;

  // Distinguished arrows named in the presentation; consumed by SigmaClass.
  std::vector<ArrId> sigma;

  int num_objects() const { return static_cast<int>(obj_names.size()); }
  int num_arrows() const { return static_cast<int>(arr_names.size()); }
  int num_cells() const { return static_cast<int>(cell_names.size()); }

  bool valid_obj(int x) const { return x >= 0 && x < num_objects(); }
  bool valid_arr(int f) const { return f >= 0 && f < num_arrows(); }
  bool valid_cell(int c) const { return c >= 0 && c < num_cells(); }

  // Allocates empty tables for the current entity counts.
  void allocate_tables() {
    const auto nA = static_cast<std::size_t>(num_arrows());
    const auto nC = static_cast<std::size_t>(num_cells());
    id1.assign(static_cast<std::size_t>(num_objects()), kNone);
    hcomp1.assign(nA * nA, kNone);
    idc.assign(nA, kNone);
    vcomp.assign(nC * nC, kNone);
    lwhisk.assign(nA * nC, kNone);
    rwhisk.assign(nC * nA, kNone);
    lunitor.assign(nA, kNone);
    runitor.assign(nA, kNone);
    assoc.clear();
  }

  ArrId comp(ArrId g, ArrId f) const {
    if (!valid_arr(g) || !valid_arr(f)) return kNone;
    return hcomp1[static_cast<std::size_t>(g * num_arrows() + f)];
  }
  CellId vc(CellId b, CellId a) const {
    if (!valid_cell(b) || !valid_cell(a)) return kNone;
    return vcomp[static_cast<std::size_t>(b * num_cells() + a)];
  }
  CellId lw(ArrId g, CellId a) const {
    if (!valid_arr(g) || !valid_cell(a)) return kNone;
    return lwhisk[static_cast<std::size_t>(g * num_cells() + a)];
  }
  CellId rw(CellId a, ArrId f) const {
    if (!valid_cell(a) || !valid_arr(f)) return kNone;
    return rwhisk[static_cast<std::size_t>(a * num_arrows() + f)];
  }
  CellId id_cell(ArrId f) const { return valid_arr(f) ? idc[static_cast<std::size_t>(f)] : kNone; }
  ArrId id_arrow(ObjId x) const { return valid_obj(x) ? id1[static_cast<std::size_t>(x)] : kNone; }
  CellId lambda(ArrId f) const { return valid_arr(f) ? lunitor[static_cast<std::size_t>(f)] : kNone; }
  CellId rho(ArrId f) const { return valid_arr(f) ? runitor[static_cast<std::size_t>(f)] : kNone; }
  CellId theta(ArrId h, ArrId g, ArrId f) const {
    auto it = assoc.find({h, g, f});
    return it == assoc.end() ? kNone : it->second;
  }

  void set_comp(ArrId g, ArrId f, ArrId h) { hcomp1[static_cast<std::size_t>(g * num_arrows() + f)] = h; }
  void set_vc(CellId b, CellId a, CellId c) { vcomp[static_cast<std::size_t>(b * num_cells() + a)] = c; }
  void set_lw(ArrId g, CellId a, CellId c) { lwhisk[static_cast<std::size_t>(g * num_cells() + a)] = c; }
  void set_rw(CellId a, ArrId f, CellId c) { rwhisk[static_cast<std::size_t>(a * num_arrows() + f)] = c; }

  // Horizontal composite β∗α := (g2∗α)∘(β∗f1), the first form of W1.
  CellId hc(CellId b, CellId a) const {
    if (!valid_cell(b) || !valid_cell(a)) return kNone;
    return vc(lw(cell_dst[static_cast<std::size_t>(b)], a), rw(b, cell_src[static_cast<std::size_t>(a)]));
  }

  ObjId src(ArrId f) const { return arr_src[static_cast<std::size_t>(f)]; }
  ObjId dst(ArrId f) const { return arr_dst[static_cast<std::size_t>(f)]; }
  ArrId csrc(CellId c) const { return cell_src[static_cast<std::size_t>(c)]; }
  ArrId cdst(CellId c) const { return cell_dst[static_cast<std::size_t>(c)]; }

  bool parallel(ArrId f, ArrId g) const {
    return valid_arr(f) && valid_arr(g) && src(f) == src(g) && dst(f) == dst(g);
  }

  // Cells f ⇒ g.
  const std::vector<CellId>& hom(ArrId f, ArrId g) const {
    static const std::vector<CellId> empty;
    auto it = hom_index_.find({f, g});
    return it == hom_index_.end() ? empty : it->second;
  }
  // Arrows X → Y.
  const std::vector<ArrId>& arrows(ObjId x, ObjId y) const {
    static const std::vector<ArrId> empty;
    auto it = arr_index_.find({x, y});
    return it == arr_index_.end() ? empty : it->second;
  }

  bool is_identity(CellId c) const { return valid_cell(c) && id_cell(csrc(c)) == c; }

  // The two-sided vcomp inverse of c, or kNone.
  CellId inverse(CellId c) const {
    if (!valid_cell(c)) return kNone;
    const ArrId f = csrc(c), g = cdst(c);
    for (CellId d : hom(g, f)) {
      if (vc(d, c) == id_cell(f) && vc(c, d) == id_cell(g)) return d;
    }
    return kNone;
  }
  bool invertible(CellId c) const { return inverse(c) != kNone; }

  std::optional<ObjId> find_object(const std::string& n) const { return lookup(obj_by_name_, n); }
  std::optional<ArrId> find_arrow(const std::string& n) const { return lookup(arr_by_name_, n); }
  std::optional<CellId> find_cell(const std::string& n) const { return lookup(cell_by_name_, n); }

  ArrId arrow(const std::string& n) const {
    auto a = find_arrow(n);
    if (!a) throw Error("unknown arrow '" + n + "'");
    return *a;
  }
  CellId cell(const std::string& n) const {
    auto c = find_cell(n);
    if (!c) throw Error("unknown cell '" + n + "'");
    return *c;
  }
  ObjId object(const std::string& n) const {
    auto x = find_object(n);
    if (!x) throw Error("unknown object '" + n + "'");
    return *x;
  }

  std::string cell_name(CellId c) const {
    return valid_cell(c) ? cell_names[static_cast<std::size_t>(c)] : (c == kNone ? "undefined" : "#" + std::to_string(c));
  }
  std::string arr_name(ArrId f) const {
    return valid_arr(f) ? arr_names[static_cast<std::size_t>(f)] : (f == kNone ? "undefined" : "#" + std::to_string(f));
  }
  std::string obj_name(ObjId x) const {
    return valid_obj(x) ? obj_names[static_cast<std::size_t>(x)] : (x == kNone ? "undefined" : "#" + std::to_string(x));
  }

  void reindex() {
    obj_by_name_.clear();
    arr_by_name_.clear();
    cell_by_name_.clear();
    hom_index_.clear();
    arr_index_.clear();
    for (int i = 0; i < num_objects(); ++i) obj_by_name_[obj_names[static_cast<std::size_t>(i)]] = i;
    for (int i = 0; i < num_arrows(); ++i) {
      arr_by_name_[arr_names[static_cast<std::size_t>(i)]] = i;
      arr_index_[{src(i), dst(i)}].push_back(i);
    }
    for (int i = 0; i < num_cells(); ++i) {
      cell_by_name_[cell_names[static_cast<std::size_t>(i)]] = i;
      hom_index_[{csrc(i), cdst(i)}].push_back(i);
    }
  }

 private:
  static std::optional<int> lookup(const std::map<std::string, int>& m, const std::string& n) {
    auto it = m.find(n);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }

  std::map<std::string, int> obj_by_name_, arr_by_name_, cell_by_name_;
  std::map<std::pair<ArrId, ArrId>, std::vector<CellId>> hom_index_;
  std::map<std::pair<ObjId, ObjId>, std::vector<ArrId>> arr_index_;
};

// Composite of a nonempty arrow chain written outermost first: {g, f} is g∗f.
// Brackets to the right.  Returns kNone if some composite is undefined.
inline ArrId compose_chain(const Bicategory& b, const std::vector<ArrId>& chain) {
  if (chain.empty()) return kNone;
  ArrId acc = chain.back();
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
    acc = b.comp(*it, acc);
    if (acc == kNone) return kNone;
  }
  return acc;
}

// Vertical composite of cells listed in application order.
inline CellId vcomp_chain(const Bicategory& b, const std::vector<CellId>& cells) {
  if (cells.empty()) return kNone;
  CellId acc = cells.front();
  for (std::size_t i = 1; i < cells.size() && acc != kNone; ++i) acc = b.vc(cells[i], acc);
  return acc;
}

}  // namespace bicat
