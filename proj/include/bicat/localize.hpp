#pragma once

// The localization pipeline: hypotheses on Σ, w-split decompositions, and
// equivalence witnesses in Ho(C,Σ) for every arrow of Σ.

#include <map>
#include <string>
#include <vector>

#include "bicat/enumerate.hpp"
#include "bicat/ho.hpp"
#include "bicat/homotopy.hpp"
#include "bicat/sigma.hpp"

namespace bicat {

// q quasiinverse to f in Ho with unit : q∗f ⇒ id and counit : f∗q ⇒ id.
struct EquivalenceEntry {
  ArrId f = kNone, q = kNone;
  HoCell unit, unit_inv, counit, counit_inv;
  // unit_inv∘unit, unit∘unit_inv, counit_inv∘counit, counit∘counit_inv against identities.
  std::vector<EqVerdict> checks;

  bool verified() const {
    if (checks.size() != 4) return false;
    for (const auto& c : checks)
      if (c.kind != EqVerdict::Kind::Equal) return false;
    return true;
  }
};

struct IFunctorialityCheck {
  std::string kind;  // "identity", "vertical", "lwhisk", "rwhisk"
  std::string witness;
  EqVerdict verdict;
};

struct LocalizationCertificate {
  ThreeForTwoReport three_for_two;
  std::map<ArrId, Decomposition> decompositions;
  std::vector<EquivalenceEntry> equivalences;
  std::vector<IFunctorialityCheck> i_functoriality;
  std::vector<std::string> probes_used;
  std::vector<std::string> errors;

  bool complete() const {
    if (!errors.empty() || !three_for_two.ok()) return false;
    for (const auto& e : equivalences)
      if (!e.verified()) return false;
    for (const auto& c : i_functoriality)
      if (c.verdict.kind != EqVerdict::Kind::Equal) return false;
    return true;
  }
};

namespace detail {

struct Witness {
  ArrId f, q;
  HoCell unit, unit_inv, counit, counit_inv;
};

inline Witness piece_witness(const SigmaClass& S, ArrId g) {
  const Bicategory& B = S.bicat();
  auto ws = find_w_split(B, g);
  if (!ws) throw Error(B.arr_name(g) + " is not w-split");
  if (ws->as_section && S.contains(ws->as_section->r)) {
    const auto& w = *ws->as_section;
    const Cylinder C = retraction_cylinder(S, w.s, w.r, w.alpha);
    return {g, w.r, i_cell(B, w.alpha), i_cell(B, B.inverse(w.alpha)), ho_single(B, cylinder_homotopy(B, C)),
            ho_single(B, cylinder_homotopy(B, inverse_cylinder(C)))};
  }
  if (ws->as_retraction) {
    const auto& w = *ws->as_retraction;
    const Cylinder C = retraction_cylinder(S, w.s, w.r, w.alpha);
    return {g, w.s, ho_single(B, cylinder_homotopy(B, C)), ho_single(B, cylinder_homotopy(B, inverse_cylinder(C))),
            i_cell(B, w.alpha), i_cell(B, B.inverse(w.alpha))};
  }
  throw Error(B.arr_name(g) + " is a w-section whose retraction is not in sigma");
}

// Witness for outer ∗ inner.
inline Witness compose_witness(const Bicategory& B, const Witness& o, const Witness& in) {
  Witness w;
  w.f = B.comp(o.f, in.f);
  w.q = B.comp(in.q, o.q);
  w.unit = ho_vcomp(in.unit, ho_lwhisk(B, in.q, ho_rwhisk(B, o.unit, in.f)));
  w.unit_inv = ho_vcomp(ho_lwhisk(B, in.q, ho_rwhisk(B, o.unit_inv, in.f)), in.unit_inv);
  w.counit = ho_vcomp(o.counit, ho_lwhisk(B, o.f, ho_rwhisk(B, in.counit, o.q)));
  w.counit_inv = ho_vcomp(ho_lwhisk(B, o.f, ho_rwhisk(B, in.counit_inv, o.q)), o.counit_inv);
  return w;
}

// Moves a witness for p along an invertible c : p ⇒ f.
inline Witness transport(const Bicategory& B, const Witness& w, CellId c, ArrId f) {
  if (w.f == f) return w;
  const CellId ci = B.inverse(c);
  Witness out = w;
  out.f = f;
  out.unit = ho_vcomp(w.unit, i_cell(B, B.lw(w.q, ci)));
  out.unit_inv = ho_vcomp(i_cell(B, B.lw(w.q, c)), w.unit_inv);
  out.counit = ho_vcomp(w.counit, i_cell(B, B.rw(ci, w.q)));
  out.counit_inv = ho_vcomp(i_cell(B, B.rw(c, w.q)), w.counit_inv);
  return out;
}

}  // namespace detail

struct LocalizeOptions {
  int max_len = 4;
  DecideOptions decide;
};

inline LocalizationCertificate localize(const SigmaClass& S, const ProbeSet& probes, const LocalizeOptions& opt = {}) {
  const Bicategory& B = S.bicat();
  if (opt.max_len < 1) throw Error("max_len must be at least 1");
  detail::require_strict(B, "localize");
  LocalizationCertificate cert;
  for (const auto& p : probes) cert.probes_used.push_back(p.name);
  cert.three_for_two = check_three_for_two(S);
  if (!cert.three_for_two.ok()) {
    const auto& v = cert.three_for_two.primary();
    cert.errors.push_back("3-for-2 fails: " + B.arr_name(v.g) + " . " + B.arr_name(v.f) + " ~ " + B.arr_name(v.h) +
                          " with " + B.arr_name(v.missing) + " not in sigma");
    return cert;
  }
  const HoRewriter R(S);
  auto check = [&](const HoCell& a, const HoCell& b) {
    return ho_eq(R, a, b, probes, opt.decide);
  };
  for (ArrId f : S.members()) {
    auto d = w_split_decompose(S, f, opt.max_len);
    if (!d) {
      cert.errors.push_back(B.arr_name(f) + " has no w-split decomposition of length <= " + std::to_string(opt.max_len));
      continue;
    }
    cert.decompositions[f] = *d;
    try {
      detail::Witness w = detail::piece_witness(S, d->chain.back());
      for (std::size_t i = d->chain.size() - 1; i-- > 0;) w = detail::compose_witness(B, detail::piece_witness(S, d->chain[i]), w);
      w = detail::transport(B, w, d->cell, f);
      EquivalenceEntry e{f, w.q, w.unit, w.unit_inv, w.counit, w.counit_inv, {}};
      const ArrId qf = B.comp(w.q, f), fq = B.comp(f, w.q);
      e.checks.push_back(check(ho_vcomp(w.unit_inv, w.unit), ho_identity(qf)));
      e.checks.push_back(check(ho_vcomp(w.unit, w.unit_inv), ho_identity(B.id_arrow(B.src(f)))));
      e.checks.push_back(check(ho_vcomp(w.counit_inv, w.counit), ho_identity(fq)));
      e.checks.push_back(check(ho_vcomp(w.counit, w.counit_inv), ho_identity(B.id_arrow(B.dst(f)))));
      cert.equivalences.push_back(std::move(e));
    } catch (const Error& e) {
      cert.errors.push_back(B.arr_name(f) + ": " + e.what());
    }
  }
  for (ArrId f = 0; f < B.num_arrows(); ++f)
    cert.i_functoriality.push_back({"identity", B.arr_name(f), check(i_cell(B, B.id_cell(f)), ho_identity(f))});
  for (CellId b = 0; b < B.num_cells(); ++b)
    for (CellId a = 0; a < B.num_cells(); ++a) {
      if (B.cdst(a) != B.csrc(b) || B.is_identity(a) || B.is_identity(b)) continue;
      cert.i_functoriality.push_back({"vertical", B.cell_name(b) + " . " + B.cell_name(a),
                                      check(i_cell(B, B.vc(b, a)), ho_vcomp(i_cell(B, b), i_cell(B, a)))});
    }
  for (CellId a = 0; a < B.num_cells(); ++a) {
    if (B.is_identity(a)) continue;
    for (ArrId r = 0; r < B.num_arrows(); ++r) {
      if (B.src(r) == B.dst(B.csrc(a)))
        cert.i_functoriality.push_back({"lwhisk", B.arr_name(r) + " * " + B.cell_name(a),
                                        check(i_cell(B, B.lw(r, a)), ho_lwhisk(B, r, i_cell(B, a)))});
      if (B.dst(r) == B.src(B.csrc(a)))
        cert.i_functoriality.push_back({"rwhisk", B.cell_name(a) + " * " + B.arr_name(r),
                                        check(i_cell(B, B.rw(a, r)), ho_rwhisk(B, i_cell(B, a), r))});
    }
  }
  return cert;
}

}  // namespace bicat
