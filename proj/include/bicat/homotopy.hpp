#pragma once

// σ-cylinders and left σ-homotopies in a strict tabulated bicategory, their
// constructors and transforms, images under pseudofunctors, and the cells
// Ĉ, Ĥ and F̂H they induce when Σ acts by quasiequivalences.

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "bicat/core.hpp"
#include "bicat/presentation.hpp"
#include "bicat/pseudofunctor.hpp"
#include "bicat/sigma.hpp"
#include "bicat/validate.hpp"

namespace bicat {

// C = (W, Z, d0, d1, x, s, α0, α1) for X = src d0:
//   d0, d1 : X → W,  x : X → Z,  s : W → Z,  α0 : s∗d0 ⇒ x,  α1 : s∗d1 ⇒ x.
struct Cylinder {
  ObjId W = kNone, Z = kNone;
  ArrId d0 = kNone, d1 = kNone, x = kNone, s = kNone;
  CellId a0 = kNone, a1 = kNone;
  bool operator==(const Cylinder&) const = default;
};

// H = (C, h, η, ε) from f to g:  h : W → Y,  η : f ⇒ h∗d0,  ε : h∗d1 ⇒ g.
struct Homotopy {
  Cylinder C;
  ArrId h = kNone;
  CellId eta = kNone, eps = kNone;
  bool operator==(const Homotopy&) const = default;

  ArrId from(const Bicategory& B) const { return B.csrc(eta); }
  ArrId to(const Bicategory& B) const { return B.cdst(eps); }
};

namespace detail {

inline void require_strict(const Bicategory& B, const char* what) {
  if (!B.strict) throw Error(std::string(what) + " needs a strict bicategory");
}

inline CellId must(CellId c, const std::string& what) {
  if (c == kNone) throw Error(what + ": undefined composite");
  return c;
}

inline CellId inverse_or_throw(const Bicategory& B, CellId c, const std::string& what) {
  const CellId i = B.inverse(c);
  if (i == kNone) throw Error(what + ": " + B.cell_name(c) + " is not invertible");
  return i;
}

}  // namespace detail

// Typing of a cylinder in B; Σ membership of s is checked when S is given.
inline ValidationReport validate_cylinder(const Bicategory& B, const Cylinder& C, const SigmaClass* S = nullptr) {
  ValidationReport r;
  const bool arrows_ok = B.valid_obj(C.W) && B.valid_obj(C.Z) && B.valid_arr(C.d0) && B.valid_arr(C.d1) &&
                         B.valid_arr(C.x) && B.valid_arr(C.s);
  if (!arrows_ok) {
    r.add("cyl-typing", "undefined component");
    return r;
  }
  const ObjId X = B.src(C.d0);
  if (B.src(C.d1) != X || B.dst(C.d0) != C.W || B.dst(C.d1) != C.W || B.src(C.x) != X || B.dst(C.x) != C.Z ||
      B.src(C.s) != C.W || B.dst(C.s) != C.Z)
    r.add("cyl-typing", "arrow boundaries");
  if (!r.ok()) return r;
  if (!B.valid_cell(C.a0) || B.csrc(C.a0) != B.comp(C.s, C.d0) || B.cdst(C.a0) != C.x)
    r.add("cyl-typing", "alpha0", B.cell_name(C.a0));
  if (!B.valid_cell(C.a1) || B.csrc(C.a1) != B.comp(C.s, C.d1) || B.cdst(C.a1) != C.x)
    r.add("cyl-typing", "alpha1", B.cell_name(C.a1));
  if (!r.ok()) return r;
  if (!B.invertible(C.a0)) r.add("cyl-invertible", "alpha0", B.cell_name(C.a0));
  if (!B.invertible(C.a1)) r.add("cyl-invertible", "alpha1", B.cell_name(C.a1));
  if (S && !S->contains(C.s)) r.add("cyl-sigma", B.arr_name(C.s) + " is not in sigma");
  return r;
}

inline ValidationReport validate_homotopy(const Bicategory& B, const Homotopy& H, const SigmaClass* S = nullptr) {
  ValidationReport r = validate_cylinder(B, H.C, S);
  if (!r.ok()) return r;
  if (!B.valid_arr(H.h) || B.src(H.h) != H.C.W) {
    r.add("htpy-typing", "h", B.arr_name(H.h));
    return r;
  }
  if (!B.valid_cell(H.eta) || B.cdst(H.eta) != B.comp(H.h, H.C.d0)) r.add("htpy-typing", "eta", B.cell_name(H.eta));
  if (!B.valid_cell(H.eps) || B.csrc(H.eps) != B.comp(H.h, H.C.d1)) r.add("htpy-typing", "eps", B.cell_name(H.eps));
  if (r.ok() && !B.parallel(B.csrc(H.eta), B.cdst(H.eps))) r.add("htpy-typing", "f and g are not parallel");
  return r;
}

inline bool has_invertible_cells(const Bicategory& B, const Homotopy& H) {
  return B.invertible(H.eta) && B.invertible(H.eps);
}

// α̃ = α1⁻¹ ∘ α0 : s∗d0 ⇒ s∗d1.
inline CellId alpha_tilde(const Bicategory& B, const Cylinder& C) {
  return detail::must(B.vc(detail::inverse_or_throw(B, C.a1, "alpha1"), C.a0), "alpha tilde");
}

inline Cylinder identity_cylinder(const Bicategory& B, ObjId X) {
  const ArrId id = B.id_arrow(X);
  const CellId c = B.id_cell(id);
  return Cylinder{X, X, id, id, id, id, c, c};
}

inline Cylinder inverse_cylinder(const Cylinder& C) { return Cylinder{C.W, C.Z, C.d1, C.d0, C.x, C.s, C.a1, C.a0}; }

// (Y, X, s∗r, id_Y, r, r, α∗r, id_r) for s : X → Y, r : Y → X, α : r∗s ⇒ id_X.
inline Cylinder retraction_cylinder(const SigmaClass& S, ArrId s, ArrId r, CellId alpha) {
  const Bicategory& B = S.bicat();
  detail::require_strict(B, "retraction cylinder");
  if (!B.valid_arr(s) || !B.valid_arr(r) || B.src(s) != B.dst(r) || B.dst(s) != B.src(r))
    throw Error("retraction cylinder: s and r are not opposite arrows");
  const ObjId X = B.src(s), Y = B.dst(s);
  if (!B.valid_cell(alpha) || B.csrc(alpha) != B.comp(r, s) || B.cdst(alpha) != B.id_arrow(X))
    throw Error("retraction cylinder: alpha is not a cell r*s => id");
  if (!B.invertible(alpha)) throw Error("retraction cylinder: alpha is not invertible");
  if (!S.contains(r)) throw Error("retraction cylinder: " + B.arr_name(r) + " is not in sigma");
  Cylinder C{Y, X, B.comp(s, r), B.id_arrow(Y), r, r, B.rw(alpha, r), B.id_cell(r)};
  auto rep = validate_cylinder(B, C, &S);
  if (!rep.ok()) throw Error("retraction cylinder: " + rep.violations.front().axiom);
  return C;
}

// H^C from d0 to d1.
inline Homotopy cylinder_homotopy(const Bicategory& B, const Cylinder& C) {
  return Homotopy{C, B.id_arrow(C.W), B.id_cell(C.d0), B.id_cell(C.d1)};
}

// μ ∘ H for μ : g ⇒ g'.
inline Homotopy post(const Bicategory& B, CellId mu, const Homotopy& H) {
  if (!B.valid_cell(mu) || B.csrc(mu) != H.to(B)) throw Error("post: cell does not start at the homotopy target");
  Homotopy K = H;
  K.eps = detail::must(B.vc(mu, H.eps), "post");
  return K;
}

// H ∘ ν for ν : f' ⇒ f.
inline Homotopy pre(const Bicategory& B, const Homotopy& H, CellId nu) {
  if (!B.valid_cell(nu) || B.cdst(nu) != H.from(B)) throw Error("pre: cell does not end at the homotopy source");
  Homotopy K = H;
  K.eta = detail::must(B.vc(H.eta, nu), "pre");
  return K;
}

// r ∗ H for r : Y → Y'.
inline Homotopy lwhisk(const Bicategory& B, ArrId r, const Homotopy& H) {
  detail::require_strict(B, "lwhisk");
  if (!B.valid_arr(r) || B.src(r) != B.dst(H.h)) throw Error("lwhisk: arrow does not compose with h");
  Homotopy K = H;
  K.h = B.comp(r, H.h);
  K.eta = detail::must(B.lw(r, H.eta), "lwhisk");
  K.eps = detail::must(B.lw(r, H.eps), "lwhisk");
  return K;
}

// H ∗ ℓ for ℓ : X' → X.
inline Homotopy rwhisk(const Bicategory& B, const Homotopy& H, ArrId l) {
  detail::require_strict(B, "rwhisk");
  if (!B.valid_arr(l) || B.dst(l) != B.src(H.C.d0)) throw Error("rwhisk: arrow does not compose with the cylinder");
  Homotopy K = H;
  K.C.d0 = B.comp(H.C.d0, l);
  K.C.d1 = B.comp(H.C.d1, l);
  K.C.x = B.comp(H.C.x, l);
  K.C.a0 = detail::must(B.rw(H.C.a0, l), "rwhisk");
  K.C.a1 = detail::must(B.rw(H.C.a1, l), "rwhisk");
  K.eta = detail::must(B.rw(H.eta, l), "rwhisk");
  K.eps = detail::must(B.rw(H.eps, l), "rwhisk");
  return K;
}

// H⁻¹ = (C⁻¹, h, ε⁻¹, η⁻¹).
inline Homotopy invert(const Bicategory& B, const Homotopy& H) {
  return Homotopy{inverse_cylinder(H.C), H.h, detail::inverse_or_throw(B, H.eps, "invert"),
                  detail::inverse_or_throw(B, H.eta, "invert")};
}

// H0 = (C_X, g, μ, g) and H1 = (C_X, f, f, μ) for μ : f ⇒ g.
inline std::pair<Homotopy, Homotopy> mu_homotopies(const Bicategory& B, CellId mu) {
  if (!B.valid_cell(mu)) throw Error("mu_homotopies: invalid cell");
  const ArrId f = B.csrc(mu), g = B.cdst(mu);
  const Cylinder CX = identity_cylinder(B, B.src(f));
  return {Homotopy{CX, g, mu, B.id_cell(g)}, Homotopy{CX, f, B.id_cell(f), mu}};
}

// FC = (FW, FZ, Fd0, Fd1, Fx, Fs, Fα0∘φ, Fα1∘φ).
inline Cylinder apply_functor(const PseudofunctorData& F, const Cylinder& C) {
  const Bicategory& D = *F.target;
  return Cylinder{F.obj(C.W), F.obj(C.Z), F.arr(C.d0), F.arr(C.d1), F.arr(C.x), F.arr(C.s),
                  detail::must(D.vc(F.cell(C.a0), F.phi_at(C.s, C.d0)), "apply_functor"),
                  detail::must(D.vc(F.cell(C.a1), F.phi_at(C.s, C.d1)), "apply_functor")};
}

// FH = (FC, Fh, φ⁻¹∘Fη, Fε∘φ).
inline Homotopy apply_functor(const PseudofunctorData& F, const Homotopy& H) {
  const Bicategory& D = *F.target;
  const CellId phi0 = detail::inverse_or_throw(D, F.phi_at(H.h, H.C.d0), "apply_functor");
  return Homotopy{apply_functor(F, H.C), F.arr(H.h), detail::must(D.vc(phi0, F.cell(H.eta)), "apply_functor"),
                  detail::must(D.vc(F.cell(H.eps), F.phi_at(H.h, H.C.d1)), "apply_functor")};
}

// The unique x : d0 ⇒ d1 with s∗x = target.
inline CellId solve_lw(const Bicategory& B, ArrId s, ArrId d0, ArrId d1, CellId target) {
  CellId found = kNone;
  for (CellId x : B.hom(d0, d1)) {
    if (B.lw(s, x) != target) continue;
    if (found != kNone)
      throw Error("hat: several cells x with " + B.arr_name(s) + " * x = " + B.cell_name(target));
    found = x;
  }
  if (found == kNone) throw Error("hat: no cell x with " + B.arr_name(s) + " * x = " + B.cell_name(target));
  return found;
}

// Ĉ : d0 ⇒ d1, the unique cell with s∗Ĉ = α̃.
inline CellId hat(const Bicategory& B, const Cylinder& C, bool check_quasiequivalence = true) {
  if (check_quasiequivalence && !is_quasiequivalence(B, C.s))
    throw Error("hat: " + B.arr_name(C.s) + " is not a quasiequivalence");
  return solve_lw(B, C.s, C.d0, C.d1, alpha_tilde(B, C));
}

// Ĥ = ε ∘ (h∗Ĉ) ∘ η.
inline CellId hat(const Bicategory& B, const Homotopy& H, bool check_quasiequivalence = true) {
  const CellId c = hat(B, H.C, check_quasiequivalence);
  return detail::must(vcomp_chain(B, {H.eta, B.lw(H.h, c), H.eps}), "hat");
}

// F̂C : Fd0 ⇒ Fd1 with Fs ∗_F F̂C = Fα̃.
inline CellId f_hat(const PseudofunctorData& F, const Cylinder& C, bool check_quasiequivalence = true) {
  const Bicategory& B = *F.source;
  const Bicategory& D = *F.target;
  const ArrId Fs = F.arr(C.s);
  if (check_quasiequivalence && !is_quasiequivalence(D, Fs))
    throw Error("f_hat: F" + B.arr_name(C.s) + " is not a quasiequivalence");
  const CellId Fat = detail::must(D.vc(detail::inverse_or_throw(D, F.cell(C.a1), "f_hat"), F.cell(C.a0)), "f_hat");
  const CellId target = vcomp_chain(D, {F.phi_at(C.s, C.d0), Fat, detail::inverse_or_throw(D, F.phi_at(C.s, C.d1), "f_hat")});
  return solve_lw(D, Fs, F.arr(C.d0), F.arr(C.d1), detail::must(target, "f_hat"));
}

// F̂H = Fε ∘ φ ∘ (Fh∗F̂C) ∘ φ⁻¹ ∘ Fη.
inline CellId f_hat(const PseudofunctorData& F, const Homotopy& H, bool check_quasiequivalence = true) {
  const Bicategory& D = *F.target;
  const CellId c = f_hat(F, H.C, check_quasiequivalence);
  const CellId v = vcomp_chain(D, {F.cell(H.eta), detail::inverse_or_throw(D, F.phi_at(H.h, H.C.d0), "f_hat"),
                                   D.lw(F.arr(H.h), c), F.phi_at(H.h, H.C.d1), F.cell(H.eps)});
  return detail::must(v, "f_hat");
}

// Gluing data for composing two homotopies whose cylinders share Z and x.
// Orientation: ν_i : s∗b_i ⇒ s_i,  γ_i : h∗b_i ⇒ h_i,  δ : b1∗d1¹ ⇒ b2∗d0².
struct Glue {
  ObjId W = kNone;
  ArrId s = kNone, h = kNone, b1 = kNone, b2 = kNone;
  CellId nu1 = kNone, nu2 = kNone, gamma1 = kNone, gamma2 = kNone, delta = kNone;
};

struct HypothesisError : Error {
  HypothesisError(int which, CellId lhs, CellId rhs, const std::string& msg)
      : Error(msg), hypothesis(which), lhs(lhs), rhs(rhs) {}
  int hypothesis;
  CellId lhs, rhs;
};

// One homotopy H with [H] = [H2, H1], built from the gluing data.
inline Homotopy compose_lemma(const SigmaClass& S, const Homotopy& H1, const Homotopy& H2, const Glue& G) {
  const Bicategory& B = S.bicat();
  detail::require_strict(B, "compose_lemma");
  if (!validate_homotopy(B, H1, &S).ok() || !validate_homotopy(B, H2, &S).ok()) throw Error("compose_lemma: ill-typed homotopy");
  if (H1.C.Z != H2.C.Z || H1.C.x != H2.C.x) throw Error("compose_lemma: cylinders differ in Z or x");
  if (H1.to(B) != H2.from(B)) throw Error("compose_lemma: homotopies are not composable");
  auto cell_is = [&](CellId c, ArrId from, ArrId to, const char* n) {
    if (!B.valid_cell(c) || B.csrc(c) != from || B.cdst(c) != to) throw Error(std::string("compose_lemma: ") + n + " has the wrong boundary");
  };
  if (!B.valid_arr(G.b1) || B.src(G.b1) != H1.C.W || B.dst(G.b1) != G.W || !B.valid_arr(G.b2) || B.src(G.b2) != H2.C.W ||
      B.dst(G.b2) != G.W || !B.valid_arr(G.s) || B.src(G.s) != G.W || B.dst(G.s) != H1.C.Z || !B.valid_arr(G.h) ||
      B.src(G.h) != G.W || B.dst(G.h) != B.dst(H1.h))
    throw Error("compose_lemma: glue arrows have the wrong boundary");
  if (!S.contains(G.s)) throw Error("compose_lemma: " + B.arr_name(G.s) + " is not in sigma");
  cell_is(G.nu1, B.comp(G.s, G.b1), H1.C.s, "nu1");
  cell_is(G.nu2, B.comp(G.s, G.b2), H2.C.s, "nu2");
  cell_is(G.gamma1, B.comp(G.h, G.b1), H1.h, "gamma1");
  cell_is(G.gamma2, B.comp(G.h, G.b2), H2.h, "gamma2");
  cell_is(G.delta, B.comp(G.b1, H1.C.d1), B.comp(G.b2, H2.C.d0), "delta");
  const CellId nu1i = detail::inverse_or_throw(B, G.nu1, "nu1");
  detail::inverse_or_throw(B, G.nu2, "nu2");
  const CellId g1i = detail::inverse_or_throw(B, G.gamma1, "gamma1");
  detail::inverse_or_throw(B, G.gamma2, "gamma2");

  const CellId h1l = B.vc(H2.eta, H1.eps);
  const CellId h1r = vcomp_chain(B, {B.rw(g1i, H1.C.d1), B.lw(G.h, G.delta), B.rw(G.gamma2, H2.C.d0)});
  if (h1l == kNone || h1l != h1r)
    throw HypothesisError(1, h1l, h1r, "compose_lemma: hypothesis 1 fails: " + B.cell_name(h1l) + " vs " + B.cell_name(h1r));
  const CellId h2l = B.vc(detail::inverse_or_throw(B, H2.C.a0, "alpha0"), H1.C.a1);
  const CellId h2r = vcomp_chain(B, {B.rw(nu1i, H1.C.d1), B.lw(G.s, G.delta), B.rw(G.nu2, H2.C.d0)});
  if (h2l == kNone || h2l != h2r)
    throw HypothesisError(2, h2l, h2r, "compose_lemma: hypothesis 2 fails: " + B.cell_name(h2l) + " vs " + B.cell_name(h2r));

  Cylinder C{G.W, H1.C.Z, B.comp(G.b1, H1.C.d0), B.comp(G.b2, H2.C.d1), H1.C.x, G.s,
             detail::must(B.vc(H1.C.a0, B.rw(G.nu1, H1.C.d0)), "alpha0"),
             detail::must(B.vc(H2.C.a1, B.rw(G.nu2, H2.C.d1)), "alpha1")};
  Homotopy H{C, G.h, detail::must(B.vc(B.rw(g1i, H1.C.d0), H1.eta), "eta"),
             detail::must(B.vc(H2.eps, B.rw(G.gamma2, H2.C.d1)), "eps")};
  auto rep = validate_homotopy(B, H, &S);
  if (!rep.ok()) throw Error("compose_lemma: result is ill-typed: " + rep.violations.front().axiom);
  return H;
}

// Named cylinders and homotopies read from text:
//   cylinder C = (W, Z, d0, d1, x, s, a0, a1)
//   homotopy H = (C, h, eta, eps)
// A homotopy may name a cylinder or write one inline as cyl(...).
struct HomotopyLibrary {
  std::map<std::string, Cylinder> cylinders;
  std::map<std::string, Homotopy> homotopies;
  std::vector<std::string> order;  // declaration order of homotopies
};

namespace detail {

class HomotopyLoader {
 public:
  HomotopyLoader(const Bicategory& B, const std::string& src) : B_(B), lines_(text::split_lines(src)) {}

  HomotopyLibrary load() {
    HomotopyLibrary lib;
    for (const auto& l : lines_) {
      text::Cursor c(l);
      const auto& kw = c.name();
      if (kw.s == "cylinder") {
        const auto& n = c.name();
        c.expect("=");
        Cylinder C = tuple_cylinder(c);
        c.finish();
        if (lib.cylinders.count(n.s)) text::Cursor::fail_at(l, n, "duplicate cylinder '" + n.s + "'");
        check(l, n, validate_cylinder(B_, C));
        lib.cylinders[n.s] = C;
      } else if (kw.s == "homotopy") {
        const auto& n = c.name();
        c.expect("=");
        c.expect("(");
        const auto& ct = c.name();
        Cylinder C;
        if (ct.s == "cyl") {
          C = tuple_cylinder(c);
        } else {
          auto it = lib.cylinders.find(ct.s);
          if (it == lib.cylinders.end()) text::Cursor::fail_at(l, ct, "dangling reference to cylinder '" + ct.s + "'");
          C = it->second;
        }
        c.expect(",");
        const ArrId h = arrow(l, c.name());
        c.expect(",");
        const CellId eta = cell(l, c.name());
        c.expect(",");
        const CellId eps = cell(l, c.name());
        c.expect(")");
        c.finish();
        if (lib.homotopies.count(n.s)) text::Cursor::fail_at(l, n, "duplicate homotopy '" + n.s + "'");
        Homotopy H{C, h, eta, eps};
        check(l, n, validate_homotopy(B_, H));
        lib.homotopies[n.s] = H;
        lib.order.push_back(n.s);
      } else {
        text::Cursor::fail_at(l, kw, "expected 'cylinder' or 'homotopy'");
      }
    }
    return lib;
  }

 private:
  Cylinder tuple_cylinder(text::Cursor& c) {
    const auto& l = c.line();
    c.expect("(");
    Cylinder C;
    C.W = object(l, c.name());
    c.expect(",");
    C.Z = object(l, c.name());
    for (ArrId* a : {&C.d0, &C.d1, &C.x, &C.s}) {
      c.expect(",");
      *a = arrow(l, c.name());
    }
    for (CellId* a : {&C.a0, &C.a1}) {
      c.expect(",");
      *a = cell(l, c.name());
    }
    c.expect(")");
    return C;
  }
  void check(const text::Line& l, const text::Token& n, const ValidationReport& r) const {
    if (!r.ok()) text::Cursor::fail_at(l, n, "'" + n.s + "' is ill-typed: " + r.violations.front().axiom + " " + r.violations.front().witness);
  }
  ObjId object(const text::Line& l, const text::Token& t) const {
    if (auto x = B_.find_object(t.s)) return *x;
    text::Cursor::fail_at(l, t, "dangling reference to object '" + t.s + "'");
  }
  ArrId arrow(const text::Line& l, const text::Token& t) const {
    if (auto x = B_.find_arrow(t.s)) return *x;
    text::Cursor::fail_at(l, t, "dangling reference to arrow '" + t.s + "'");
  }
  CellId cell(const text::Line& l, const text::Token& t) const {
    if (auto x = B_.find_cell(t.s)) return *x;
    if (auto a = B_.find_arrow(t.s)) return B_.id_cell(*a);
    text::Cursor::fail_at(l, t, "dangling reference to cell '" + t.s + "'");
  }

  const Bicategory& B_;
  std::vector<text::Line> lines_;
};

}  // namespace detail

inline HomotopyLibrary load_homotopies(const Bicategory& B, const std::string& text) {
  return detail::HomotopyLoader(B, text).load();
}

}  // namespace bicat
