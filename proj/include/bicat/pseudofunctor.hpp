#pragma once

// Pseudofunctors between tabulated bicategories, pseudonatural
// transformations, modifications, the ∗_F composite and the factorization
// F = F1 ∘ F2 through the bicategory C_F.

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bicat/core.hpp"
#include "bicat/validate.hpp"

namespace bicat {

using BicatPtr = std::shared_ptr<const Bicategory>;

struct PseudofunctorData {
  BicatPtr source, target;
  std::vector<ObjId> obj_map;
  std::vector<ArrId> arr_map;
  std::vector<CellId> cell_map;
  std::vector<CellId> xi;                          // X -> ξ: id_{FX} ⇒ F(id_X)
  std::map<std::pair<ArrId, ArrId>, CellId> phi;  // (g, f) -> φ: Fg∗Ff ⇒ F(g∗f)

  ObjId obj(ObjId x) const { return at(obj_map, x); }
  ArrId arr(ArrId f) const { return at(arr_map, f); }
  CellId cell(CellId c) const { return at(cell_map, c); }
  CellId xi_at(ObjId x) const { return at(xi, x); }
  CellId phi_at(ArrId g, ArrId f) const {
    auto it = phi.find({g, f});
    return it == phi.end() ? kNone : it->second;
  }

  // All ξ and φ are identity cells.
  bool is_2functor() const {
    for (CellId c : xi)
      if (!target->is_identity(c)) return false;
    for (const auto& [k, c] : phi)
      if (!target->is_identity(c)) return false;
    return true;
  }

 private:
  static int at(const std::vector<int>& v, int i) {
    return i >= 0 && i < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(i)] : kNone;
  }
};

// Identity 2-functor on b.
inline PseudofunctorData identity_functor(const BicatPtr& b) {
  PseudofunctorData F;
  F.source = F.target = b;
  for (ObjId x = 0; x < b->num_objects(); ++x) {
    F.obj_map.push_back(x);
    F.xi.push_back(b->id_cell(b->id_arrow(x)));
  }
  for (ArrId f = 0; f < b->num_arrows(); ++f) F.arr_map.push_back(f);
  for (CellId c = 0; c < b->num_cells(); ++c) F.cell_map.push_back(c);
  for (ArrId g = 0; g < b->num_arrows(); ++g)
    for (ArrId f = 0; f < b->num_arrows(); ++f)
      if (b->dst(f) == b->src(g)) F.phi[{g, f}] = b->id_cell(b->comp(g, f));
  return F;
}

// Fills φ and ξ with identity cells wherever the boundaries allow it.  Used for
// 2-functors given only by their object, arrow and cell maps.
inline void fill_identity_structure(PseudofunctorData& F) {
  const Bicategory& C = *F.source;
  const Bicategory& D = *F.target;
  F.xi.resize(static_cast<std::size_t>(C.num_objects()), kNone);
  for (ObjId x = 0; x < C.num_objects(); ++x) {
    if (F.xi[static_cast<std::size_t>(x)] != kNone) continue;
    const ArrId fid = F.arr(C.id_arrow(x));
    if (D.valid_arr(fid) && fid == D.id_arrow(F.obj(x))) F.xi[static_cast<std::size_t>(x)] = D.id_cell(fid);
  }
  for (ArrId g = 0; g < C.num_arrows(); ++g) {
    for (ArrId f = 0; f < C.num_arrows(); ++f) {
      if (C.dst(f) != C.src(g) || F.phi.count({g, f})) continue;
      const ArrId lhs = D.comp(F.arr(g), F.arr(f));
      const ArrId rhs = F.arr(C.comp(g, f));
      if (lhs != kNone && lhs == rhs) F.phi[{g, f}] = D.id_cell(lhs);
    }
  }
}

namespace detail {

class FunctorChecker {
 public:
  FunctorChecker(const PseudofunctorData& F, ValidationReport& r) : F_(F), C_(*F.source), D_(*F.target), r_(r) {}

  void run() {
    if (!check_maps()) return;
    check_functorial();
    check_structure();
    check_coherence();
  }

 private:
  std::string cname(CellId c) const { return D_.cell_name(c); }
  void eq(const char* axiom, const std::string& w, CellId l, CellId r) {
    if (l == kNone || r == kNone) {
      r_.add(axiom, w + " (undefined composite)", cname(l), cname(r));
      return;
    }
    if (l != r) r_.add(axiom, w, cname(l), cname(r));
  }

  bool check_maps() {
    bool ok = true;
    if (F_.obj_map.size() != static_cast<std::size_t>(C_.num_objects()) ||
        F_.arr_map.size() != static_cast<std::size_t>(C_.num_arrows()) ||
        F_.cell_map.size() != static_cast<std::size_t>(C_.num_cells())) {
      r_.add("map-total", "map sizes differ from the source");
      return false;
    }
    for (ObjId x = 0; x < C_.num_objects(); ++x)
      if (!D_.valid_obj(F_.obj(x))) {
        r_.add("map-typing", "object " + C_.obj_name(x));
        ok = false;
      }
    if (!ok) return false;
    for (ArrId f = 0; f < C_.num_arrows(); ++f) {
      const ArrId Ff = F_.arr(f);
      if (!D_.valid_arr(Ff) || D_.src(Ff) != F_.obj(C_.src(f)) || D_.dst(Ff) != F_.obj(C_.dst(f))) {
        r_.add("map-typing", "arrow " + C_.arr_name(f), D_.arr_name(Ff));
        ok = false;
      }
    }
    if (!ok) return false;
    for (CellId c = 0; c < C_.num_cells(); ++c) {
      const CellId Fc = F_.cell(c);
      if (!D_.valid_cell(Fc) || D_.csrc(Fc) != F_.arr(C_.csrc(c)) || D_.cdst(Fc) != F_.arr(C_.cdst(c))) {
        r_.add("map-typing", "cell " + C_.cell_name(c), cname(Fc));
        ok = false;
      }
    }
    return ok;
  }

  void check_functorial() {
    for (ArrId f = 0; f < C_.num_arrows(); ++f)
      eq("functor-idc", "id of " + C_.arr_name(f), F_.cell(C_.id_cell(f)), D_.id_cell(F_.arr(f)));
    for (CellId a = 0; a < C_.num_cells(); ++a)
      for (CellId b = 0; b < C_.num_cells(); ++b) {
        if (C_.csrc(b) != C_.cdst(a)) continue;
        eq("functor-vcomp", C_.cell_name(b) + " . " + C_.cell_name(a), F_.cell(C_.vc(b, a)),
           D_.vc(F_.cell(b), F_.cell(a)));
      }
  }

  void check_structure() {
    for (ObjId x = 0; x < C_.num_objects(); ++x) {
      const CellId k = F_.xi_at(x);
      const ArrId idFX = D_.id_arrow(F_.obj(x));
      const std::string w = "xi " + C_.obj_name(x);
      if (k == kNone) {
        r_.add("xi-total", w);
      } else if (!D_.valid_cell(k) || D_.csrc(k) != idFX || D_.cdst(k) != F_.arr(C_.id_arrow(x))) {
        r_.add("xi-typing", w, cname(k));
      } else if (!D_.invertible(k)) {
        r_.add("xi-invertible", w, cname(k));
      }
    }
    for (ArrId g = 0; g < C_.num_arrows(); ++g)
      for (ArrId f = 0; f < C_.num_arrows(); ++f) {
        if (C_.dst(f) != C_.src(g)) continue;
        const CellId k = F_.phi_at(g, f);
        const std::string w = "phi " + C_.arr_name(g) + " . " + C_.arr_name(f);
        if (k == kNone) {
          r_.add("phi-total", w);
        } else if (!D_.valid_cell(k) || D_.csrc(k) != D_.comp(F_.arr(g), F_.arr(f)) ||
                   D_.cdst(k) != F_.arr(C_.comp(g, f))) {
          r_.add("phi-typing", w, cname(k));
        } else if (!D_.invertible(k)) {
          r_.add("phi-invertible", w, cname(k));
        }
      }
  }

  void check_coherence() {
    if (r_.has("xi-total") || r_.has("xi-typing") || r_.has("phi-total") || r_.has("phi-typing")) return;
    for (ArrId f = 0; f < C_.num_arrows(); ++f) {
      const ObjId X = C_.src(f), Y = C_.dst(f);
      const ArrId Ff = F_.arr(f);
      const ArrId idX = C_.id_arrow(X), idY = C_.id_arrow(Y);
      eq("P1", C_.arr_name(f),
         vcomp_chain(D_, {D_.lw(Ff, F_.xi_at(X)), F_.phi_at(f, idX), F_.cell(C_.lambda(f))}), D_.lambda(Ff));
      eq("P2", C_.arr_name(f),
         vcomp_chain(D_, {D_.rw(F_.xi_at(Y), Ff), F_.phi_at(idY, f), F_.cell(C_.rho(f))}), D_.rho(Ff));
    }
    const int nA = C_.num_arrows();
    for (ArrId h = 0; h < nA; ++h)
      for (ArrId g = 0; g < nA; ++g) {
        if (C_.dst(g) != C_.src(h)) continue;
        for (ArrId f = 0; f < nA; ++f) {
          if (C_.dst(f) != C_.src(g)) continue;
          const ArrId gf = C_.comp(g, f), hg = C_.comp(h, g);
          const ArrId Fh = F_.arr(h), Fg = F_.arr(g), Ff = F_.arr(f);
          CellId l = vcomp_chain(D_, {D_.lw(Fh, F_.phi_at(g, f)), F_.phi_at(h, gf), F_.cell(C_.theta(h, g, f))});
          CellId r = vcomp_chain(D_, {D_.theta(Fh, Fg, Ff), D_.rw(F_.phi_at(h, g), Ff), F_.phi_at(hg, f)});
          eq("P3", C_.arr_name(h) + " . " + C_.arr_name(g) + " . " + C_.arr_name(f), l, r);
        }
      }
    for (CellId a = 0; a < C_.num_cells(); ++a)
      for (CellId b = 0; b < C_.num_cells(); ++b) {
        const ArrId f1 = C_.csrc(a), f2 = C_.cdst(a), g1 = C_.csrc(b), g2 = C_.cdst(b);
        if (C_.dst(f1) != C_.src(g1)) continue;
        CellId l = D_.vc(F_.phi_at(g2, f2), D_.hc(F_.cell(b), F_.cell(a)));
        CellId r = D_.vc(F_.cell(C_.hc(b, a)), F_.phi_at(g1, f1));
        eq("N-phi", C_.cell_name(b) + " * " + C_.cell_name(a), l, r);
      }
  }

  const PseudofunctorData& F_;
  const Bicategory& C_;
  const Bicategory& D_;
  ValidationReport& r_;
};

}  // namespace detail

inline ValidationReport validate_pseudofunctor(const PseudofunctorData& F) {
  ValidationReport r;
  detail::FunctorChecker(F, r).run();
  return r;
}

// β ∗_F α : F(g1∗f1) ⇒ F(g2∗f2), the composite φ ∘ (β∗α) ∘ φ⁻¹.
inline CellId comp_sub_f(const PseudofunctorData& F, CellId beta, CellId alpha, ArrId g1, ArrId f1, ArrId g2,
                         ArrId f2) {
  const Bicategory& C = *F.source;
  const Bicategory& D = *F.target;
  if (!C.valid_arr(g1) || !C.valid_arr(f1) || !C.valid_arr(g2) || !C.valid_arr(f2) || !C.parallel(f1, f2) ||
      !C.parallel(g1, g2) || C.dst(f1) != C.src(g1))
    throw Error("comp_sub_f: source arrows are not a composable configuration");
  if (!D.valid_cell(beta) || D.csrc(beta) != F.arr(g1) || D.cdst(beta) != F.arr(g2))
    throw Error("comp_sub_f: " + D.cell_name(beta) + " is not a cell F" + C.arr_name(g1) + " => F" +
                C.arr_name(g2));
  if (!D.valid_cell(alpha) || D.csrc(alpha) != F.arr(f1) || D.cdst(alpha) != F.arr(f2))
    throw Error("comp_sub_f: " + D.cell_name(alpha) + " is not a cell F" + C.arr_name(f1) + " => F" +
                C.arr_name(f2));
  const CellId phi_in = D.inverse(F.phi_at(g1, f1));
  const CellId phi_out = F.phi_at(g2, f2);
  if (phi_in == kNone || phi_out == kNone) throw Error("comp_sub_f: phi is missing or not invertible");
  const CellId c = vcomp_chain(D, {phi_in, D.hc(beta, alpha), phi_out});
  if (c == kNone) throw Error("comp_sub_f: undefined composite in the target tables");
  return c;
}

struct Factorization {
  std::shared_ptr<const Bicategory> cf;
  PseudofunctorData f1;  // C_F -> D, pseudofunctor carrying ξ and φ of F
  PseudofunctorData f2;  // C -> C_F, 2-functor
  // (f, g, D-cell) -> cell of C_F
  std::map<std::tuple<ArrId, ArrId, CellId>, CellId> cell_of;
};

// Builds C_F: objects and arrows of the source, cells f ⇒ g are the target
// cells Ff ⇒ Fg, horizontal composition is ∗_F.
inline Factorization factorize(const PseudofunctorData& F) {
  const Bicategory& C = *F.source;
  const Bicategory& D = *F.target;
  auto cf = std::make_shared<Bicategory>();
  Bicategory& B = *cf;
  B.obj_names = C.obj_names;
  B.arr_names = C.arr_names;
  B.arr_src = C.arr_src;
  B.arr_dst = C.arr_dst;
  B.sigma = C.sigma;

  Factorization out;
  std::vector<CellId> under;  // cell of C_F -> D-cell
  for (ArrId f = 0; f < C.num_arrows(); ++f)
    for (ArrId g = 0; g < C.num_arrows(); ++g) {
      if (!C.parallel(f, g)) continue;
      for (CellId c : D.hom(F.arr(f), F.arr(g))) {
        out.cell_of[{f, g, c}] = B.num_cells();
        B.cell_names.push_back(D.cell_name(c) + "[" + C.arr_name(f) + ">" + C.arr_name(g) + "]");
        B.cell_src.push_back(f);
        B.cell_dst.push_back(g);
        under.push_back(c);
      }
    }
  B.allocate_tables();
  auto lift = [&](ArrId f, ArrId g, CellId c) {
    auto it = out.cell_of.find({f, g, c});
    return it == out.cell_of.end() ? kNone : it->second;
  };
  B.id1 = C.id1;
  B.hcomp1 = C.hcomp1;
  for (ArrId f = 0; f < C.num_arrows(); ++f) B.idc[static_cast<std::size_t>(f)] = lift(f, f, D.id_cell(F.arr(f)));
  const int n = B.num_cells();
  for (CellId b = 0; b < n; ++b)
    for (CellId a = 0; a < n; ++a)
      if (B.csrc(b) == B.cdst(a))
        B.set_vc(b, a, lift(B.csrc(a), B.cdst(b), D.vc(under[static_cast<std::size_t>(b)], under[static_cast<std::size_t>(a)])));
  for (ArrId h = 0; h < C.num_arrows(); ++h)
    for (CellId a = 0; a < n; ++a) {
      const ArrId f = B.csrc(a), g = B.cdst(a);
      const CellId u = under[static_cast<std::size_t>(a)];
      if (C.dst(f) == C.src(h)) {
        const CellId c = comp_sub_f(F, D.id_cell(F.arr(h)), u, h, f, h, g);
        B.set_lw(h, a, lift(C.comp(h, f), C.comp(h, g), c));
      }
      if (C.dst(h) == C.src(f)) {
        const CellId c = comp_sub_f(F, u, D.id_cell(F.arr(h)), f, h, g, h);
        B.set_rw(a, h, lift(C.comp(f, h), C.comp(g, h), c));
      }
    }
  for (ArrId f = 0; f < C.num_arrows(); ++f) {
    const ArrId idX = C.id_arrow(C.src(f)), idY = C.id_arrow(C.dst(f));
    B.lunitor[static_cast<std::size_t>(f)] = lift(C.comp(f, idX), f, F.cell(C.lambda(f)));
    B.runitor[static_cast<std::size_t>(f)] = lift(C.comp(idY, f), f, F.cell(C.rho(f)));
  }
  for (const auto& [k, t] : C.assoc) {
    const auto [h, g, f] = k;
    B.assoc[k] = lift(C.comp(h, C.comp(g, f)), C.comp(C.comp(h, g), f), F.cell(t));
  }
  B.reindex();
  B.strict = true;
  {
    const ValidationReport rep = validate_bicategory(B);
    for (const auto& v : rep.violations)
      if (v.axiom.rfind("strict-", 0) == 0) B.strict = false;
  }
  if (!C.strict || !D.strict) B.strict = false;
  out.cf = cf;

  // F2: C -> C_F
  PseudofunctorData& F2 = out.f2;
  F2.source = F.source;
  F2.target = cf;
  for (ObjId x = 0; x < C.num_objects(); ++x) {
    F2.obj_map.push_back(x);
    F2.xi.push_back(B.id_cell(B.id_arrow(x)));
  }
  for (ArrId f = 0; f < C.num_arrows(); ++f) F2.arr_map.push_back(f);
  for (CellId c = 0; c < C.num_cells(); ++c) F2.cell_map.push_back(lift(C.csrc(c), C.cdst(c), F.cell(c)));
  for (ArrId g = 0; g < C.num_arrows(); ++g)
    for (ArrId f = 0; f < C.num_arrows(); ++f)
      if (C.dst(f) == C.src(g)) F2.phi[{g, f}] = B.id_cell(C.comp(g, f));

  // F1: C_F -> D
  PseudofunctorData& F1 = out.f1;
  F1.source = cf;
  F1.target = F.target;
  F1.obj_map = F.obj_map;
  F1.arr_map = F.arr_map;
  F1.cell_map = under;
  F1.xi = F.xi;
  F1.phi = F.phi;
  return out;
}

// Pseudonatural transformation θ: F ⇒ G.  Components are checked against a
// strict target.
struct TransformationData {
  PseudofunctorData F, G;
  std::vector<ArrId> comp_obj;   // X -> θ_X : FX -> GX
  std::vector<CellId> comp_arr;  // f -> θ_f : Gf∗θ_X ⇒ θ_Y∗Ff

  ArrId at(ObjId x) const { return x >= 0 && x < static_cast<int>(comp_obj.size()) ? comp_obj[static_cast<std::size_t>(x)] : kNone; }
  CellId at_arrow(ArrId f) const {
    return f >= 0 && f < static_cast<int>(comp_arr.size()) ? comp_arr[static_cast<std::size_t>(f)] : kNone;
  }
};

struct ModificationData {
  TransformationData theta, eta;
  std::vector<CellId> comp;  // X -> ρ_X : θ_X ⇒ η_X
};

namespace detail {

inline void require_strict_target(const Bicategory& D, ValidationReport& r) {
  if (!D.strict) r.add("target-not-strict", "transformations are checked in strict targets only");
}

// PN2 instance for one arrow-parallel pair of target cells (GA, FA) standing for
// Gα and Fα of a source 2-cell α: f ⇒ g.
inline void check_pn2(const TransformationData& t, ArrId f, ArrId g, CellId Ga, CellId Fa, const std::string& w,
                      ValidationReport& r) {
  const Bicategory& C = *t.F.source;
  const Bicategory& D = *t.F.target;
  const ObjId X = C.src(f), Y = C.dst(f);
  CellId lhs = D.vc(t.at_arrow(g), D.rw(Ga, t.at(X)));
  CellId rhs = D.vc(D.lw(t.at(Y), Fa), t.at_arrow(f));
  if (lhs == kNone || rhs == kNone) {
    r.add("PN2", w + " (undefined composite)", D.cell_name(lhs), D.cell_name(rhs));
  } else if (lhs != rhs) {
    r.add("PN2", w, D.cell_name(lhs), D.cell_name(rhs));
  }
}

}  // namespace detail

inline ValidationReport validate_transformation(const TransformationData& t) {
  ValidationReport r;
  const Bicategory& C = *t.F.source;
  const Bicategory& D = *t.F.target;
  detail::require_strict_target(D, r);
  if (!r.ok()) return r;
  for (ObjId x = 0; x < C.num_objects(); ++x) {
    const ArrId c = t.at(x);
    if (!D.valid_arr(c) || D.src(c) != t.F.obj(x) || D.dst(c) != t.G.obj(x))
      r.add("component-typing", "theta_" + C.obj_name(x), D.arr_name(c));
  }
  if (!r.ok()) return r;
  for (ArrId f = 0; f < C.num_arrows(); ++f) {
    const CellId c = t.at_arrow(f);
    const ObjId X = C.src(f), Y = C.dst(f);
    if (!D.valid_cell(c) || D.csrc(c) != D.comp(t.G.arr(f), t.at(X)) || D.cdst(c) != D.comp(t.at(Y), t.F.arr(f))) {
      r.add("component-typing", "theta_" + C.arr_name(f), D.cell_name(c));
    } else if (!D.invertible(c)) {
      r.add("component-invertible", "theta_" + C.arr_name(f), D.cell_name(c));
    }
  }
  if (!r.ok()) return r;
  auto eq = [&](const char* ax, const std::string& w, CellId l, CellId rr) {
    if (l == kNone || rr == kNone || l != rr) r.add(ax, w, D.cell_name(l), D.cell_name(rr));
  };
  for (ObjId x = 0; x < C.num_objects(); ++x) {
    const ArrId tx = t.at(x);
    const ArrId idX = C.id_arrow(x);
    eq("PN0", C.obj_name(x), D.vc(t.at_arrow(idX), D.rw(t.G.xi_at(x), tx)), D.lw(tx, t.F.xi_at(x)));
  }
  for (ArrId g = 0; g < C.num_arrows(); ++g)
    for (ArrId f = 0; f < C.num_arrows(); ++f) {
      if (C.dst(f) != C.src(g)) continue;
      const ObjId Z = C.dst(g);
      CellId l = vcomp_chain(D, {D.lw(t.G.arr(g), t.at_arrow(f)), D.rw(t.at_arrow(g), t.F.arr(f)),
                                 D.lw(t.at(Z), t.F.phi_at(g, f))});
      CellId rr = D.vc(t.at_arrow(C.comp(g, f)), D.rw(t.G.phi_at(g, f), t.at(C.src(f))));
      eq("PN1", C.arr_name(g) + " . " + C.arr_name(f), l, rr);
    }
  for (CellId a = 0; a < C.num_cells(); ++a)
    detail::check_pn2(t, C.csrc(a), C.cdst(a), t.G.cell(a), t.F.cell(a), C.cell_name(a), r);
  return r;
}

inline ValidationReport validate_modification(const ModificationData& m) {
  ValidationReport r;
  const Bicategory& C = *m.theta.F.source;
  const Bicategory& D = *m.theta.F.target;
  detail::require_strict_target(D, r);
  if (!r.ok()) return r;
  for (ObjId x = 0; x < C.num_objects(); ++x) {
    const CellId c = x < static_cast<int>(m.comp.size()) ? m.comp[static_cast<std::size_t>(x)] : kNone;
    if (!D.valid_cell(c) || D.csrc(c) != m.theta.at(x) || D.cdst(c) != m.eta.at(x))
      r.add("component-typing", "rho_" + C.obj_name(x), D.cell_name(c));
  }
  if (!r.ok()) return r;
  for (ArrId f = 0; f < C.num_arrows(); ++f) {
    const ObjId X = C.src(f), Y = C.dst(f);
    CellId l = D.vc(D.rw(m.comp[static_cast<std::size_t>(Y)], m.theta.F.arr(f)), m.theta.at_arrow(f));
    CellId rr = D.vc(m.eta.at_arrow(f), D.lw(m.theta.G.arr(f), m.comp[static_cast<std::size_t>(X)]));
    if (l == kNone || rr == kNone || l != rr) r.add("PM", C.arr_name(f), D.cell_name(l), D.cell_name(rr));
  }
  return r;
}

}  // namespace bicat
