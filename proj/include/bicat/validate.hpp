#pragma once

// Exhaustive axiom checker for tabulated bicategories.

#include <string>
#include <vector>

#include "bicat/core.hpp"

namespace bicat {

struct Violation {
  std::string axiom;
  std::string witness;
  std::string lhs;
  std::string rhs;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& axiom) const {
    for (const auto& v : violations)
      if (v.axiom == axiom) return true;
    return false;
  }
  void add(std::string axiom, std::string witness, std::string lhs = {}, std::string rhs = {}) {
    violations.push_back({std::move(axiom), std::move(witness), std::move(lhs), std::move(rhs)});
  }
};

namespace detail {

class BicatChecker {
 public:
  BicatChecker(const Bicategory& b, ValidationReport& r) : b_(b), r_(r) {
    from_.resize(static_cast<std::size_t>(b.num_arrows()));
    for (CellId c = 0; c < b.num_cells(); ++c)
      if (b.valid_arr(b.csrc(c))) from_[static_cast<std::size_t>(b.csrc(c))].push_back(c);
  }

  void run() {
    check_arrows();
    check_cells();
    check_vertical();
    check_whiskers();
    check_whisker_axioms();
    check_interchange();
    check_unitors();
    check_associator();
    if (b_.strict) check_strict();
  }

 private:
  std::string A(ArrId f) const { return b_.arr_name(f); }
  std::string C(CellId c) const { return b_.cell_name(c); }

  bool composable(ArrId g, ArrId f) const { return b_.valid_arr(g) && b_.valid_arr(f) && b_.dst(f) == b_.src(g); }

  void eq(const char* axiom, const std::string& witness, CellId lhs, CellId rhs) {
    if (lhs == kNone || rhs == kNone) return;  // reported by a totality check
    if (lhs != rhs) r_.add(axiom, witness, C(lhs), C(rhs));
  }

  void check_arrows() {
    for (ObjId x = 0; x < b_.num_objects(); ++x) {
      ArrId i = b_.id_arrow(x);
      if (!b_.valid_arr(i) || b_.src(i) != x || b_.dst(i) != x)
        r_.add("id1-typing", "id_" + b_.obj_name(x), A(i));
    }
    const int n = b_.num_arrows();
    for (ArrId g = 0; g < n; ++g) {
      for (ArrId f = 0; f < n; ++f) {
        ArrId h = b_.comp(g, f);
        const std::string w = A(g) + " . " + A(f);
        if (!composable(g, f)) {
          if (h != kNone) r_.add("hcomp1-typing", w + " defined on a non-composable pair", A(h));
          continue;
        }
        if (h == kNone) {
          r_.add("hcomp1-total", w);
        } else if (!b_.valid_arr(h) || b_.src(h) != b_.src(f) || b_.dst(h) != b_.dst(g)) {
          r_.add("hcomp1-typing", w, A(h));
        }
      }
    }
  }

  void check_cells() {
    for (CellId c = 0; c < b_.num_cells(); ++c) {
      if (!b_.parallel(b_.csrc(c), b_.cdst(c))) r_.add("cell-typing", C(c) + " between non-parallel arrows");
    }
    for (ArrId f = 0; f < b_.num_arrows(); ++f) {
      CellId i = b_.id_cell(f);
      if (i == kNone) {
        r_.add("idc-total", "id cell of " + A(f));
      } else if (!b_.valid_cell(i) || b_.csrc(i) != f || b_.cdst(i) != f) {
        r_.add("idc-typing", "id cell of " + A(f), C(i));
      }
    }
  }

  bool good_idc(ArrId f) const {
    CellId i = b_.id_cell(f);
    return b_.valid_cell(i) && b_.csrc(i) == f && b_.cdst(i) == f;
  }

  void check_vertical() {
    const int n = b_.num_cells();
    for (CellId bb = 0; bb < n; ++bb) {
      for (CellId a = 0; a < n; ++a) {
        CellId c = b_.vc(bb, a);
        const std::string w = C(bb) + " . " + C(a);
        if (b_.cdst(a) != b_.csrc(bb)) {
          if (c != kNone) r_.add("vcomp-typing", w + " defined on a non-composable pair", C(c));
          continue;
        }
        if (c == kNone) {
          r_.add("vcomp-total", w);
        } else if (!b_.valid_cell(c) || b_.csrc(c) != b_.csrc(a) || b_.cdst(c) != b_.cdst(bb)) {
          r_.add("vcomp-typing", w, C(c));
        }
      }
    }
    for (CellId a = 0; a < n; ++a) {
      ArrId f = b_.csrc(a), g = b_.cdst(a);
      if (good_idc(f)) eq("vcomp-unit", C(a) + " . id", b_.vc(a, b_.id_cell(f)), a);
      if (good_idc(g)) eq("vcomp-unit", "id . " + C(a), b_.vc(b_.id_cell(g), a), a);
    }
    for (CellId a = 0; a < n; ++a) {
      for (CellId bb = 0; bb < n; ++bb) {
        if (b_.csrc(bb) != b_.cdst(a)) continue;
        for (CellId c : all_from(b_.cdst(bb))) {
          CellId l = b_.vc(c, b_.vc(bb, a));
          CellId r = b_.vc(b_.vc(c, bb), a);
          eq("vcomp-assoc", C(c) + " . " + C(bb) + " . " + C(a), l, r);
        }
      }
    }
  }

  void check_whiskers() {
    const int nA = b_.num_arrows(), nC = b_.num_cells();
    for (ArrId g = 0; g < nA; ++g) {
      for (CellId a = 0; a < nC; ++a) {
        const ArrId f1 = b_.csrc(a), f2 = b_.cdst(a);
        // g ∗ α
        {
          CellId c = b_.lw(g, a);
          const std::string w = A(g) + " * " + C(a);
          if (!composable(g, f1)) {
            if (c != kNone) r_.add("lwhisk-typing", w + " defined on a non-composable pair", C(c));
          } else if (c == kNone) {
            r_.add("lwhisk-total", w);
          } else if (!b_.valid_cell(c) || b_.csrc(c) != b_.comp(g, f1) || b_.cdst(c) != b_.comp(g, f2)) {
            r_.add("lwhisk-typing", w, C(c));
          }
        }
        // α ∗ g
        {
          CellId c = b_.rw(a, g);
          const std::string w = C(a) + " * " + A(g);
          if (!composable(f1, g)) {
            if (c != kNone) r_.add("rwhisk-typing", w + " defined on a non-composable pair", C(c));
          } else if (c == kNone) {
            r_.add("rwhisk-total", w);
          } else if (!b_.valid_cell(c) || b_.csrc(c) != b_.comp(f1, g) || b_.cdst(c) != b_.comp(f2, g)) {
            r_.add("rwhisk-typing", w, C(c));
          }
        }
      }
    }
  }

  void check_whisker_axioms() {
    const int nA = b_.num_arrows(), nC = b_.num_cells();
    // W1 for every pair α: f1 ⇒ f2, β: g1 ⇒ g2 with src(g) = dst(f).
    for (CellId a = 0; a < nC; ++a) {
      for (CellId bb = 0; bb < nC; ++bb) {
        const ArrId f1 = b_.csrc(a), f2 = b_.cdst(a), g1 = b_.csrc(bb), g2 = b_.cdst(bb);
        if (!composable(g1, f1)) continue;
        CellId l = b_.vc(b_.lw(g2, a), b_.rw(bb, f1));
        CellId r = b_.vc(b_.rw(bb, f2), b_.lw(g1, a));
        eq("W1", C(bb) + " , " + C(a), l, r);
      }
    }
    // W2
    for (ArrId g = 0; g < nA; ++g) {
      for (ArrId f = 0; f < nA; ++f) {
        if (!composable(g, f)) continue;
        ArrId gf = b_.comp(g, f);
        if (!b_.valid_arr(gf) || !good_idc(gf)) continue;
        eq("W2", "id_" + A(g) + " * " + A(f), b_.rw(b_.id_cell(g), f), b_.id_cell(gf));
        eq("W2", A(g) + " * id_" + A(f), b_.lw(g, b_.id_cell(f)), b_.id_cell(gf));
      }
    }
    // W3
    for (CellId a = 0; a < nC; ++a) {
      for (CellId bb : all_from(b_.cdst(a))) {
        CellId ba = b_.vc(bb, a);
        for (ArrId f = 0; f < nA; ++f) {
          if (composable(b_.csrc(a), f))
            eq("W3", "(" + C(bb) + " . " + C(a) + ") * " + A(f), b_.vc(b_.rw(bb, f), b_.rw(a, f)), b_.rw(ba, f));
          if (composable(f, b_.csrc(a)))
            eq("W3", A(f) + " * (" + C(bb) + " . " + C(a) + ")", b_.vc(b_.lw(f, bb), b_.lw(f, a)), b_.lw(f, ba));
        }
      }
    }
  }

  const std::vector<CellId>& all_from(ArrId f) const {
    static const std::vector<CellId> empty;
    return b_.valid_arr(f) ? from_[static_cast<std::size_t>(f)] : empty;
  }

  void check_interchange() {
    const int nC = b_.num_cells();
    for (CellId a = 0; a < nC; ++a) {
      for (CellId bb : all_from(b_.cdst(a))) {
        for (CellId g = 0; g < nC; ++g) {
          if (!composable(b_.csrc(g), b_.csrc(a))) continue;
          for (CellId d : all_from(b_.cdst(g))) {
            CellId l = b_.vc(b_.hc(d, bb), b_.hc(g, a));
            CellId r = b_.hc(b_.vc(d, g), b_.vc(bb, a));
            eq("interchange", "(" + C(d) + "*" + C(bb) + ") . (" + C(g) + "*" + C(a) + ")", l, r);
          }
        }
      }
    }
  }

  void check_unitors() {
    const int nA = b_.num_arrows();
    for (ArrId f = 0; f < nA; ++f) {
      const ArrId idx = b_.id_arrow(b_.src(f)), idy = b_.id_arrow(b_.dst(f));
      // λ: f∗id_X ⇒ f
      CellId l = b_.lambda(f);
      if (l == kNone) {
        r_.add("lunitor-total", A(f));
      } else if (!b_.valid_cell(l) || b_.csrc(l) != b_.comp(f, idx) || b_.cdst(l) != f) {
        r_.add("lunitor-typing", A(f), C(l));
      } else {
        if (!b_.invertible(l)) r_.add("lunitor-invertible", A(f), C(l));
        for (CellId a = 0; a < b_.num_cells(); ++a) {
          if (b_.csrc(a) != f) continue;
          const ArrId g = b_.cdst(a);
          eq("N-lambda", C(a), b_.vc(b_.lambda(g), b_.rw(a, idx)), b_.vc(a, l));
        }
      }
      // ρ: id_Y∗f ⇒ f
      CellId r = b_.rho(f);
      if (r == kNone) {
        r_.add("runitor-total", A(f));
      } else if (!b_.valid_cell(r) || b_.csrc(r) != b_.comp(idy, f) || b_.cdst(r) != f) {
        r_.add("runitor-typing", A(f), C(r));
      } else {
        if (!b_.invertible(r)) r_.add("runitor-invertible", A(f), C(r));
        for (CellId a = 0; a < b_.num_cells(); ++a) {
          if (b_.csrc(a) != f) continue;
          const ArrId g = b_.cdst(a);
          eq("N-rho", C(a), b_.vc(b_.rho(g), b_.lw(idy, a)), b_.vc(a, r));
        }
      }
    }
  }

  void check_associator() {
    const int nA = b_.num_arrows();
    for (ArrId h = 0; h < nA; ++h) {
      for (ArrId g = 0; g < nA; ++g) {
        if (!composable(h, g)) continue;
        for (ArrId f = 0; f < nA; ++f) {
          if (!composable(g, f)) continue;
          const std::string w = A(h) + " . " + A(g) + " . " + A(f);
          CellId t = b_.theta(h, g, f);
          const ArrId hg = b_.comp(h, g), gf = b_.comp(g, f);
          if (t == kNone) {
            r_.add("assoc-total", w);
            continue;
          }
          if (!b_.valid_cell(t) || b_.csrc(t) != b_.comp(h, gf) || b_.cdst(t) != b_.comp(hg, f)) {
            r_.add("assoc-typing", w, C(t));
            continue;
          }
          if (!b_.invertible(t)) r_.add("assoc-invertible", w, C(t));
          for (CellId a = 0; a < b_.num_cells(); ++a) {
            const ArrId x1 = b_.csrc(a), x2 = b_.cdst(a);
            if (x1 == f) {
              eq("N-theta1", w + " ; " + C(a), b_.vc(b_.theta(h, g, x2), b_.lw(h, b_.lw(g, a))),
                 b_.vc(b_.lw(hg, a), t));
            }
            if (x1 == g) {
              eq("N-theta2", w + " ; " + C(a), b_.vc(b_.theta(h, x2, f), b_.lw(h, b_.rw(a, f))),
                 b_.vc(b_.rw(b_.lw(h, a), f), t));
            }
            if (x1 == h) {
              eq("N-theta3", w + " ; " + C(a), b_.vc(b_.theta(x2, g, f), b_.rw(a, gf)),
                 b_.vc(b_.rw(b_.rw(a, g), f), t));
            }
          }
          // triangle when g is an identity arrow
          if (g == b_.id_arrow(b_.src(h))) {
            eq("triangle", w, b_.vc(b_.rw(b_.lambda(h), f), t), b_.lw(h, b_.rho(f)));
          }
          // pentagon with an outer arrow k
          for (ArrId k = 0; k < nA; ++k) {
            if (!composable(k, h)) continue;
            const ArrId kh = b_.comp(k, h);
            CellId l = b_.vc(b_.theta(kh, g, f), b_.theta(k, h, gf));
            CellId r = vcomp_chain(b_, {b_.lw(k, t), b_.theta(k, hg, f), b_.rw(b_.theta(k, h, g), f)});
            eq("pentagon", A(k) + " . " + w, l, r);
          }
        }
      }
    }
  }

  void check_strict() {
    const int nA = b_.num_arrows();
    for (ArrId f = 0; f < nA; ++f) {
      const ArrId idx = b_.id_arrow(b_.src(f)), idy = b_.id_arrow(b_.dst(f));
      if (b_.comp(f, idx) != kNone && b_.comp(f, idx) != f) r_.add("strict-unit1", A(f) + " . id", A(b_.comp(f, idx)), A(f));
      if (b_.comp(idy, f) != kNone && b_.comp(idy, f) != f) r_.add("strict-unit1", "id . " + A(f), A(b_.comp(idy, f)), A(f));
      if (b_.lambda(f) != kNone && !b_.is_identity(b_.lambda(f))) r_.add("strict-coherence", "lambda " + A(f), C(b_.lambda(f)));
      if (b_.rho(f) != kNone && !b_.is_identity(b_.rho(f))) r_.add("strict-coherence", "rho " + A(f), C(b_.rho(f)));
    }
    for (ArrId h = 0; h < nA; ++h)
      for (ArrId g = 0; g < nA; ++g) {
        if (!composable(h, g)) continue;
        for (ArrId f = 0; f < nA; ++f) {
          if (!composable(g, f)) continue;
          const ArrId l = b_.comp(h, b_.comp(g, f)), r = b_.comp(b_.comp(h, g), f);
          if (l != kNone && r != kNone && l != r)
            r_.add("strict-assoc1", A(h) + " . " + A(g) + " . " + A(f), A(l), A(r));
          CellId t = b_.theta(h, g, f);
          if (t != kNone && !b_.is_identity(t))
            r_.add("strict-coherence", "theta " + A(h) + " . " + A(g) + " . " + A(f), C(t));
        }
      }
  }

  const Bicategory& b_;
  ValidationReport& r_;
  std::vector<std::vector<CellId>> from_;
};

}  // namespace detail

inline ValidationReport validate_bicategory(const Bicategory& b) {
  ValidationReport r;
  detail::BicatChecker(b, r).run();
  return r;
}

}  // namespace bicat
