#pragma once

// Extensions along i : C → Ho(C,Σ) of 2-functors, pseudofunctors,
// transformations and modifications, tabulated on materialized terms.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "bicat/ho.hpp"
#include "bicat/homotopy.hpp"
#include "bicat/pseudofunctor.hpp"
#include "bicat/sigma.hpp"
#include "bicat/validate.hpp"

namespace bicat {

using TermKey = std::array<int, 13>;

inline TermKey term_key(const HoTerm& t) {
  if (t.kind == HoTerm::Kind::I) return {1, t.mu, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  const Homotopy& H = t.H;
  return {0, H.C.W, H.C.Z, H.C.d0, H.C.d1, H.C.x, H.C.s, H.C.a0, H.C.a1, H.h, H.eta, H.eps, 0};
}

// G on singleton classes [t]; classes of longer sequences are composites.
struct Extension {
  PseudofunctorData F;
  std::vector<HoTerm> terms;
  std::vector<CellId> values;
  std::map<TermKey, std::size_t> index;

  std::optional<CellId> value(const HoTerm& t) const {
    auto it = index.find(term_key(t));
    if (it == index.end()) return std::nullopt;
    return values[it->second];
  }
  // G on a sequence; identity terms contribute identities.
  CellId value(const Bicategory& B, const HoCell& k) const {
    const Bicategory& D = *F.target;
    CellId acc = D.id_cell(F.arr(k.f));
    for (const auto& t : k.seq) {
      CellId v;
      if (t.kind == HoTerm::Kind::I && B.is_identity(t.mu)) {
        v = D.id_cell(F.arr(B.csrc(t.mu)));
      } else {
        auto x = value(t);
        if (!x) throw Error("extension: term is not materialized");
        v = *x;
      }
      acc = D.vc(v, acc);
    }
    return acc;
  }
};

namespace detail {

inline void add_term(Extension& G, const HoTerm& t, CellId v) {
  const TermKey k = term_key(t);
  if (G.index.count(k)) return;
  G.index[k] = G.terms.size();
  G.terms.push_back(t);
  G.values.push_back(v);
}

inline void require_probe_like(const SigmaClass& S, const PseudofunctorData& F) {
  if (F.source.get() != &S.bicat()) throw Error("extension: functor source differs from the sigma bicategory");
  for (ArrId s : S.members())
    if (!is_quasiequivalence(*F.target, F.arr(s)))
      throw Error("extension: F" + S.bicat().arr_name(s) + " is not a quasiequivalence");
}

// The homotopies whose classes are tabulated: the given ones, their one-step
// whiskers, and for each of those H^C and h∗H^C.
inline std::vector<Homotopy> materialize(const Bicategory& B, const std::vector<Homotopy>& given) {
  std::vector<Homotopy> base = given;
  for (const auto& H : given) {
    for (ArrId r = 0; r < B.num_arrows(); ++r)
      if (B.src(r) == B.dst(H.h)) base.push_back(lwhisk(B, r, H));
    for (ArrId l = 0; l < B.num_arrows(); ++l)
      if (B.dst(l) == B.src(H.C.d0)) base.push_back(rwhisk(B, H, l));
  }
  std::vector<Homotopy> out = base;
  for (const auto& H : base) {
    const Homotopy HC = cylinder_homotopy(B, H.C);
    out.push_back(HC);
    out.push_back(lwhisk(B, H.h, HC));
  }
  return out;
}

}  // namespace detail

// G with Gi = F and G[H] = F̂H on every materialized class.
inline Extension extend_2functor(const SigmaClass& S, const PseudofunctorData& F, const std::vector<Homotopy>& homotopies) {
  const Bicategory& B = S.bicat();
  detail::require_strict(B, "extend_2functor");
  if (!F.is_2functor()) throw Error("extend_2functor: F is not a 2-functor");
  if (auto r = validate_pseudofunctor(F); !r.ok()) throw Error("extend_2functor: F is invalid: " + r.violations.front().axiom);
  detail::require_probe_like(S, F);
  Extension G;
  G.F = F;
  for (CellId mu = 0; mu < B.num_cells(); ++mu)
    if (!B.is_identity(mu)) detail::add_term(G, HoTerm::I(mu), F.cell(mu));
  for (const auto& H : detail::materialize(B, homotopies)) detail::add_term(G, HoTerm::of(H), f_hat(F, H, false));
  return G;
}

// Structural equations of G on its table. Tags: gi, decompose, whisker, sigma,
// lwhisk, rwhisk. Each equation reads table entries on the left.
inline ValidationReport verify_extension(const SigmaClass& S, const Extension& G) {
  const Bicategory& B = S.bicat();
  const PseudofunctorData& F = G.F;
  const Bicategory& D = *F.target;
  ValidationReport r;
  auto I = [&](CellId mu) -> CellId {
    if (B.is_identity(mu)) return D.id_cell(F.arr(B.csrc(mu)));
    auto v = G.value(HoTerm::I(mu));
    return v ? *v : kNone;
  };
  auto entry = [&](const Homotopy& H) -> CellId {
    auto v = G.value(HoTerm::of(H));
    return v ? *v : kNone;
  };
  auto eq = [&](const char* tag, const std::string& w, CellId l, CellId rr) {
    if (l == kNone || rr == kNone || l != rr) r.add(tag, w, D.cell_name(l), D.cell_name(rr));
  };
  for (std::size_t i = 0; i < G.terms.size(); ++i) {
    const HoTerm& t = G.terms[i];
    const CellId v = G.values[i];
    const std::string w = "entry " + std::to_string(i);
    if (t.kind == HoTerm::Kind::I) {
      eq("gi", w, v, F.cell(t.mu));
      continue;
    }
    const Homotopy& H = t.H;
    const Homotopy HC = cylinder_homotopy(B, H.C);
    const Homotopy hHC = lwhisk(B, H.h, HC);
    if (G.value(HoTerm::of(hHC)))
      eq("decompose", w, v, vcomp_chain(D, {I(H.eta), entry(hHC), I(H.eps)}));
    if (H == hHC && G.value(HoTerm::of(HC)) && !(hHC == HC)) eq("whisker", w, v, D.lw(F.arr(H.h), entry(HC)));
    if (H == HC) eq("sigma", w, D.lw(F.arr(H.C.s), v), I(alpha_tilde(B, H.C)));
  }
  // Whiskers of tabulated homotopies by arrows, when both sides are tabulated.
  for (std::size_t i = 0; i < G.terms.size(); ++i) {
    const HoTerm& t = G.terms[i];
    if (t.kind != HoTerm::Kind::H) continue;
    const Homotopy& H = t.H;
    for (ArrId x = 0; x < B.num_arrows(); ++x) {
      if (B.src(x) == B.dst(H.h)) {
        const Homotopy K = lwhisk(B, x, H);
        if (auto v = G.value(HoTerm::of(K)))
          eq("lwhisk", "entry " + std::to_string(i) + " by " + B.arr_name(x), *v, D.lw(F.arr(x), G.values[i]));
      }
      if (B.dst(x) == B.src(H.C.d0)) {
        const Homotopy K = rwhisk(B, H, x);
        if (auto v = G.value(HoTerm::of(K)))
          eq("rwhisk", "entry " + std::to_string(i) + " by " + B.arr_name(x), *v, D.rw(G.values[i], F.arr(x)));
      }
    }
  }
  return r;
}

// Every table value re-derived from F̂; tag "formula".
inline ValidationReport verify_formula(const SigmaClass& S, const Extension& G) {
  ValidationReport r;
  const Bicategory& D = *G.F.target;
  for (std::size_t i = 0; i < G.terms.size(); ++i) {
    const HoTerm& t = G.terms[i];
    const CellId want = t.kind == HoTerm::Kind::I ? G.F.cell(t.mu) : f_hat(G.F, t.H, false);
    if (want != G.values[i]) r.add("formula", "entry " + std::to_string(i), D.cell_name(G.values[i]), D.cell_name(want));
  }
  (void)S;
  return r;
}

// F = F1 F2 through C_F; F′ = F1 G2 on the table of G2.
struct PseudoExtension {
  Factorization fz;
  Extension g2;
  std::vector<CellId> values;  // F1 applied to g2.values
};

inline PseudoExtension extend_pseudofunctor(const SigmaClass& S, const PseudofunctorData& F, const std::vector<Homotopy>& homotopies) {
  if (auto r = validate_pseudofunctor(F); !r.ok()) throw Error("extend_pseudofunctor: F is invalid: " + r.violations.front().axiom);
  detail::require_probe_like(S, F);
  PseudoExtension out;
  out.fz = factorize(F);
  out.g2 = extend_2functor(S, out.fz.f2, homotopies);
  for (CellId v : out.g2.values) out.values.push_back(out.fz.f1.cell(v));
  return out;
}

// F′[t] = F̂t on every entry; tag "formula".
inline ValidationReport verify_pseudo_extension(const PseudofunctorData& F, const PseudoExtension& E) {
  ValidationReport r;
  const Bicategory& D = *F.target;
  for (std::size_t i = 0; i < E.g2.terms.size(); ++i) {
    const HoTerm& t = E.g2.terms[i];
    const CellId want = t.kind == HoTerm::Kind::I ? F.cell(t.mu) : f_hat(F, t.H, false);
    if (want != E.values[i]) r.add("formula", "entry " + std::to_string(i), D.cell_name(E.values[i]), D.cell_name(want));
  }
  return r;
}

// θ′ with θ′_X = θ_X and θ′_f = θ_f; PN2 checked on every tabulated term.
inline ValidationReport extend_transformation(const TransformationData& t, const Extension& GF, const Extension& GG) {
  ValidationReport r = validate_transformation(t);
  if (!r.ok()) return r;
  const Bicategory& B = *t.F.source;
  for (std::size_t i = 0; i < GF.terms.size(); ++i) {
    const HoTerm& term = GF.terms[i];
    auto g = GG.value(term);
    if (!g) continue;
    detail::check_pn2(t, term.from(B), term.to(B), *g, GF.values[i], "term " + std::to_string(i), r);
  }
  return r;
}

// ρ′_X = ρ_X; PM involves arrows only and is re-checked as is.
inline ValidationReport extend_modification(const ModificationData& m, const Extension& GF, const Extension& GG) {
  ValidationReport r = extend_transformation(m.theta, GF, GG);
  ValidationReport r2 = extend_transformation(m.eta, GF, GG);
  for (auto& v : r2.violations) r.violations.push_back(v);
  for (auto& v : validate_modification(m).violations) r.violations.push_back(v);
  return r;
}

}  // namespace bicat
