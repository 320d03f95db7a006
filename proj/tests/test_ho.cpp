#include <gtest/gtest.h>

#include <random>

#include "bicat/enumerate.hpp"
#include "bicat/extension.hpp"
#include "bicat/ho.hpp"
#include "bicat/localize.hpp"
#include "bicat/product.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace bicat;

namespace {

BicatPtr probe_target(const std::string& name) {
  return load_presentation_file(std::string(BICAT_PROBE_DIR) + "/" + name + ".bicat");
}

std::vector<Target> library() {
  return {{"triv", probe_target("triv")}, {"iso", probe_target("iso")}, {"grpd", probe_target("grpd")}, {"zgrpd", probe_target("zgrpd")}};
}

BicatPtr grpd_iso() { return std::make_shared<const Bicategory>(product(*fixture("grpd"), *fixture("iso"))); }

void expect_ok(const ValidationReport& r) {
  for (auto& v : r.violations) ADD_FAILURE() << v.axiom << " " << v.witness << " " << v.lhs << " vs " << v.rhs;
}

// Independent count: every total map, kept when it validates as a 2-functor.
std::size_t naive_2functor_count(const BicatPtr& C, const BicatPtr& D, const SigmaClass* S) {
  std::size_t count = 0;
  PseudofunctorData F;
  F.source = C;
  F.target = D;
  const int no = C->num_objects(), na = C->num_arrows(), nc = C->num_cells();
  F.obj_map.assign(static_cast<std::size_t>(no), 0);
  F.arr_map.assign(static_cast<std::size_t>(na), 0);
  F.cell_map.assign(static_cast<std::size_t>(nc), 0);
  std::function<void(int)> go = [&](int i) {
    if (i < no) {
      for (ObjId y = 0; y < D->num_objects(); ++y) F.obj_map[static_cast<std::size_t>(i)] = y, go(i + 1);
      return;
    }
    if (i < no + na) {
      for (ArrId y = 0; y < D->num_arrows(); ++y) F.arr_map[static_cast<std::size_t>(i - no)] = y, go(i + 1);
      return;
    }
    if (i < no + na + nc) {
      for (CellId y = 0; y < D->num_cells(); ++y) F.cell_map[static_cast<std::size_t>(i - no - na)] = y, go(i + 1);
      return;
    }
    PseudofunctorData G = F;
    G.xi.clear();
    G.phi.clear();
    fill_identity_structure(G);
    if (!G.is_2functor() || !validate_pseudofunctor(G).ok()) return;
    if (S)
      for (ArrId s : S->members())
        if (!is_quasiequivalence(*D, G.arr(s))) return;
    ++count;
  };
  go(0);
  return count;
}

HoCell sequence_of(const Bicategory& B, const std::vector<Homotopy>& hs) {
  HoCell k{hs.front().from(B), hs.back().to(B), {}};
  for (const auto& h : hs) k.seq.push_back(HoTerm::of(h));
  return k;
}

}  // namespace

TEST(Enumerate, LibraryTargetsValidate) {
  for (const auto& t : library()) EXPECT_TRUE(validate_bicategory(*t.bicat).ok()) << t.name;
}

TEST(Enumerate, AgreesWithNaiveSearch) {
  struct Case {
    const char *src, *tgt;
  };
  for (const Case& c : {Case{"split", "iso"}, Case{"split", "grpd"}, Case{"grpd", "grpd"}, Case{"idem", "idem"},
                        Case{"arrow", "iso"}, Case{"iso", "split"}}) {
    auto C = fixture(c.src), D = fixture(c.tgt);
    const auto S = SigmaClass::of(C);
    EXPECT_EQ(enumerate_2functors(C, D).size(), naive_2functor_count(C, D, nullptr)) << c.src << " -> " << c.tgt;
    EXPECT_EQ(enumerate_2functors(C, D, &S).size(), naive_2functor_count(C, D, &S)) << c.src << " -> " << c.tgt;
  }
}

TEST(Enumerate, ResultsAreValidTwoFunctors) {
  auto C = fixture("split");
  const auto S = SigmaClass::of(C);
  for (const auto& p : build_probes(S, library())) {
    EXPECT_TRUE(p.F.is_2functor()) << p.name;
    expect_ok(validate_pseudofunctor(p.F));
    for (ArrId s : S.members()) EXPECT_TRUE(is_quasiequivalence(*p.F.target, p.F.arr(s))) << p.name;
  }
}

TEST(Enumerate, IdentityIsAmongSelfFunctors) {
  auto C = fixture("grpd");
  auto fs = enumerate_2functors(C, C);
  const auto id = identity_functor(C);
  bool found = false;
  for (const auto& F : fs) found |= F.obj_map == id.obj_map && F.arr_map == id.arr_map && F.cell_map == id.cell_map;
  EXPECT_TRUE(found);
  EXPECT_EQ(fs.size(), 2u);
}

TEST(HoCell, IdentityOfIdentityCell) {
  auto b = fixture("split");
  const ArrId e = b->arrow("e");
  EXPECT_EQ(i_cell(*b, b->id_cell(e)), ho_identity(e));
}

TEST(HoCell, VcompJuxtaposes) {
  auto b = fixture("grpd");
  const CellId g = b->cell("g");
  const HoCell k = ho_vcomp(i_cell(*b, g), i_cell(*b, g));
  EXPECT_EQ(k.seq.size(), 2u);
  EXPECT_EQ(ho_vcomp(k, ho_identity(k.f)).seq.size(), 2u);
}

TEST(HoCell, WhiskerByIdentityAndCylinder) {
  auto b = fixture("split");
  const auto S = SigmaClass::of(b);
  const ArrId r = b->arrow("r"), s = b->arrow("s");
  const Cylinder C = retraction_cylinder(S, s, r, b->id_cell(b->arrow("id_X")));
  const HoCell k = ho_single(*b, cylinder_homotopy(*b, C));
  EXPECT_EQ(ho_lwhisk(*b, b->arrow("id_Y"), k), k);
  EXPECT_EQ(ho_lwhisk(*b, r, k).seq[0].H, lwhisk(*b, r, cylinder_homotopy(*b, C)));
  EXPECT_THROW(ho_lwhisk(*b, s, k), Error);
}

TEST(HoEq, ReflexiveAndUnit) {
  auto b = fixture("grpd");
  const auto S = SigmaClass::of(b);
  const HoCell k = i_cell(*b, b->cell("g"));
  EXPECT_EQ(ho_eq(S, k, k, {}).kind, EqVerdict::Kind::Equal);
  EXPECT_EQ(ho_eq(S, ho_vcomp(k, ho_identity(k.f)), k, {}).kind, EqVerdict::Kind::Equal);
}

TEST(HoEq, CylinderInverseCancels) {
  auto b = fixture("split");
  const auto S = SigmaClass::of(b);
  const HoRewriter R(S);
  const Cylinder C = retraction_cylinder(S, b->arrow("s"), b->arrow("r"), b->id_cell(b->arrow("id_X")));
  const HoCell k = ho_single(*b, cylinder_homotopy(*b, C));
  const HoCell ki = ho_single(*b, cylinder_homotopy(*b, inverse_cylinder(C)));
  for (const auto& [lhs, id] : {std::pair{ho_vcomp(ki, k), ho_identity(k.f)}, std::pair{ho_vcomp(k, ki), ho_identity(k.g)}}) {
    auto v = ho_eq(R, lhs, id, {});
    ASSERT_EQ(v.kind, EqVerdict::Kind::Equal);
    EXPECT_EQ(replay(R, v.derivation), "");
    bool cites = false;
    for (const auto& st : v.derivation.steps) cites |= st.rule == Rule::MergeP || st.rule == Rule::TrivialP;
    EXPECT_TRUE(cites);
  }
}

TEST(HoEq, DecompositionRule) {
  auto b = grpd_iso();
  const auto S = SigmaClass::of(b);
  const HoRewriter R(S);
  for (const auto& H : testsupport::all_homotopies(S, 150)) {
    const HoCell lhs = ho_single(*b, H);
    const HoCell rhs = ho_vcomp(i_cell(*b, H.eps), ho_vcomp(ho_single(*b, lwhisk(*b, H.h, cylinder_homotopy(*b, H.C))), i_cell(*b, H.eta)));
    auto v = ho_eq(R, lhs, rhs, {});
    ASSERT_EQ(v.kind, EqVerdict::Kind::Equal);
    EXPECT_EQ(replay(R, v.derivation), "");
  }
}

TEST(HoEq, InverseHomotopyCancels) {
  auto b = grpd_iso();
  const auto S = SigmaClass::of(b);
  const HoRewriter R(S);
  for (const auto& H : testsupport::all_homotopies(S, 300)) {
    const HoCell k = ho_single(*b, H), ki = ho_single(*b, invert(*b, H));
    auto v = ho_eq(R, ho_vcomp(ki, k), ho_identity(k.f), {});
    ASSERT_EQ(v.kind, EqVerdict::Kind::Equal);
    EXPECT_EQ(replay(R, v.derivation), "");
  }
}

TEST(HoEq, IFunctoriality) {
  auto b = grpd_iso();
  const auto S = SigmaClass::of(b);
  const HoRewriter R(S);
  for (CellId x = 0; x < b->num_cells(); ++x)
    for (CellId y = 0; y < b->num_cells(); ++y) {
      if (b->cdst(y) != b->csrc(x)) continue;
      EXPECT_EQ(ho_eq(R, i_cell(*b, b->vc(x, y)), ho_vcomp(i_cell(*b, x), i_cell(*b, y)), {}).kind, EqVerdict::Kind::Equal);
    }
  for (CellId x = 0; x < b->num_cells(); ++x)
    for (ArrId r = 0; r < b->num_arrows(); ++r)
      if (b->src(r) == b->dst(b->csrc(x))) {
        EXPECT_EQ(ho_eq(R, i_cell(*b, b->lw(r, x)), ho_lwhisk(*b, r, i_cell(*b, x)), {}).kind, EqVerdict::Kind::Equal);
      }
}

TEST(HoEq, DistinctNeedsASeparatingProbe) {
  auto b = fixture("grpd");
  const auto S = SigmaClass::of(b);
  const HoCell k = i_cell(*b, b->cell("g"));
  const HoCell id = ho_identity(k.f);
  EXPECT_EQ(ho_eq(S, k, id, {}).kind, EqVerdict::Kind::Unknown);
  const auto probes = build_probes(S, library());
  auto v = ho_eq(S, k, id, probes);
  ASSERT_EQ(v.kind, EqVerdict::Kind::Distinct);
  const Probe* p = nullptr;
  for (const auto& q : probes)
    if (q.name == v.probe) p = &q;
  ASSERT_NE(p, nullptr);
  EXPECT_NE(evaluate(p->F, k), evaluate(p->F, id));
  EXPECT_EQ(v.lhs_value, evaluate(p->F, k));
}

TEST(HoEq, BoundaryMismatch) {
  auto b = fixture("split");
  const auto S = SigmaClass::of(b);
  EXPECT_THROW(ho_eq(S, ho_identity(b->arrow("s")), ho_identity(b->arrow("e")), {}), Error);
  EXPECT_THROW(ho_vcomp(ho_identity(b->arrow("s")), ho_identity(b->arrow("r"))), Error);
}

TEST(HoEq, TamperedDerivationFailsReplay) {
  auto b = fixture("split");
  const auto S = SigmaClass::of(b);
  const HoRewriter R(S);
  const Cylinder C = retraction_cylinder(S, b->arrow("s"), b->arrow("r"), b->id_cell(b->arrow("id_X")));
  const HoCell k = ho_single(*b, cylinder_homotopy(*b, C));
  const HoCell ki = ho_single(*b, cylinder_homotopy(*b, inverse_cylinder(C)));
  auto v = ho_eq(R, ho_vcomp(ki, k), ho_identity(k.f), {});
  ASSERT_EQ(v.kind, EqVerdict::Kind::Equal);
  ASSERT_FALSE(v.derivation.steps.empty());
  Derivation d = v.derivation;
  d.steps.pop_back();
  EXPECT_NE(replay(R, d), "");
  d = v.derivation;
  d.steps.front().pos += 1;
  EXPECT_NE(replay(R, d), "");
  d = v.derivation;
  d.rhs = ho_vcomp(k, ki);
  EXPECT_NE(replay(R, d), "");
}

TEST(HoEq, RulesPreserveProbeValues) {
  auto b = grpd_iso();
  const auto S = SigmaClass::of(b);
  const HoRewriter R(S);
  const auto probes = build_probes(S, library());
  ASSERT_FALSE(probes.empty());
  const auto hs = testsupport::all_homotopies(S, 400);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const Homotopy& H = hs[std::uniform_int_distribution<std::size_t>(0, hs.size() - 1)(rng)];
    HoCell k = ho_single(*b, H);
    for (const auto& H2 : hs)
      if (H2.from(*b) == k.g) {
        k = ho_vcomp(ho_single(*b, H2), k);
        break;
      }
    AtomSeq q = R.expand(k);
    std::vector<Step> steps;
    R.normalize(q, steps);
    for (const auto& [m, st] : R.moves(q)) steps.insert(steps.end(), st.begin(), st.end());
    for (const auto& p : probes) {
      const CellId want = evaluate(p.F, k);
      EXPECT_EQ(evaluate_atoms(p.F, R, k.f, q), want);
      for (const auto& s : steps) EXPECT_EQ(evaluate_atoms(p.F, R, k.f, s.after), want) << rule_name(s.rule);
    }
  }
}

TEST(HoEq, VerdictsAgreeWithProbes) {
  auto b = grpd_iso();
  const auto S = SigmaClass::of(b);
  const HoRewriter R(S);
  const auto probes = build_probes(S, library());
  const auto hs = testsupport::all_homotopies(S, 200);
  int equal = 0;
  for (std::size_t i = 0; i < hs.size(); i += 7)
    for (std::size_t j = 0; j < hs.size(); j += 5) {
      if (hs[i].from(*b) != hs[j].from(*b) || hs[i].to(*b) != hs[j].to(*b)) continue;
      const HoCell a = ho_single(*b, hs[i]), c = ho_single(*b, hs[j]);
      auto v = ho_eq(R, a, c, {}, DecideOptions{2, 2000});
      if (v.kind != EqVerdict::Kind::Equal) continue;
      ++equal;
      EXPECT_EQ(replay(R, v.derivation), "");
      for (const auto& p : probes) EXPECT_EQ(evaluate(p.F, a), evaluate(p.F, c)) << p.name;
    }
  EXPECT_GT(equal, 0);
}

TEST(GluedComposite, DeciderAgrees) {
  auto b = grpd_iso();
  const auto S = SigmaClass::of(b);
  const HoRewriter R(S);
  const auto probes = build_probes(S, library());
  const auto hs = testsupport::all_homotopies(S, 2000);
  int built = 0;
  for (const auto& H1 : hs) {
    if (built >= 5) break;
    for (const auto& H2 : hs) {
      if (built >= 5) break;
      if (H1.C.Z != H2.C.Z || H1.C.x != H2.C.x || H1.to(*b) != H2.from(*b) || H2.C.W != H1.C.W || H1.C.s != H2.C.s || H1.h != H2.h)
        continue;
      const ArrId id = b->id_arrow(H1.C.W);
      const CellId sn = b->id_cell(H1.C.s), hn = b->id_cell(H1.h);
      for (CellId d : b->hom(H1.C.d1, H2.C.d0)) {
        try {
          const Homotopy H = compose_lemma(S, H1, H2, Glue{H1.C.W, H1.C.s, H1.h, id, id, sn, sn, hn, hn, d});
          ++built;
          auto v = ho_eq(R, ho_single(*b, H), sequence_of(*b, {H1, H2}), probes);
          EXPECT_EQ(v.kind, EqVerdict::Kind::Equal);
          for (const auto& p : probes)
            EXPECT_EQ(f_hat(p.F, H), p.F.target->vc(f_hat(p.F, H2), f_hat(p.F, H1))) << p.name;
        } catch (const HypothesisError&) {
        }
      }
    }
  }
  EXPECT_GT(built, 0);
}

TEST(Extension, TwoFunctorsFromSplit) {
  auto b = fixture("split");
  const auto S = SigmaClass::of(b);
  const auto probes = build_probes(S, library());
  ASSERT_FALSE(probes.empty());
  std::vector<Homotopy> hs = testsupport::all_homotopies(S, 100);
  for (const auto& p : probes) {
    const Extension G = extend_2functor(S, p.F, hs);
    expect_ok(verify_extension(S, G));
    expect_ok(verify_formula(S, G));
    for (CellId mu = 0; mu < b->num_cells(); ++mu) EXPECT_EQ(G.value(*b, i_cell(*b, mu)), p.F.cell(mu));
  }
}

TEST(Extension, PerturbationBreaksAnEquation) {
  auto b = grpd_iso();
  const auto S = SigmaClass::of(b);
  auto F = testsupport::first_projection(b, fixture("grpd"), *fixture("iso"));
  const Extension G = extend_2functor(S, F, testsupport::all_homotopies(S, 40));
  const Bicategory& D = *F.target;
  int perturbed = 0;
  for (std::size_t i = 0; i < G.values.size(); ++i) {
    const CellId v = G.values[i];
    for (CellId alt : D.hom(D.csrc(v), D.cdst(v))) {
      if (alt == v) continue;
      Extension P = G;
      P.values[i] = alt;
      EXPECT_FALSE(verify_extension(S, P).ok()) << "entry " << i;
      ++perturbed;
    }
  }
  EXPECT_GT(perturbed, 0);
}

TEST(Extension, RejectsNonQuasiequivalenceImage) {
  auto b = fixture("split");
  const auto S = SigmaClass::of(b);
  EXPECT_THROW(extend_2functor(S, identity_functor(b), {}), Error);
}

TEST(Extension, PseudofunctorThroughFactorization) {
  auto chain = fixture("chain");
  auto F = load_pseudofunctor(read_file(fixture_path("chain_to_idem.functor")), chain, fixture("idem"));
  const auto S = SigmaClass::of(chain);
  const auto hs = testsupport::all_homotopies(S, 200);
  const PseudoExtension E = extend_pseudofunctor(S, F, hs);
  expect_ok(verify_pseudo_extension(F, E));
  for (std::size_t i = 0; i < E.g2.terms.size(); ++i)
    if (E.g2.terms[i].kind == HoTerm::Kind::H) {
      EXPECT_EQ(E.values[i], f_hat(F, E.g2.terms[i].H));
    }
}

TEST(Extension, TwoFunctorInputMatchesPseudofunctorPath) {
  auto b = fixture("split");
  const auto S = SigmaClass::of(b);
  const auto probes = build_probes(S, library());
  const auto hs = testsupport::all_homotopies(S, 60);
  for (const auto& p : probes) {
    const Extension G = extend_2functor(S, p.F, hs);
    const PseudoExtension E = extend_pseudofunctor(S, p.F, hs);
    ASSERT_EQ(G.values.size(), E.values.size());
    EXPECT_EQ(G.values, E.values) << p.name;
  }
}

TEST(Extension, IdentityAndSymmetryTransformations) {
  auto b = fixture("split");
  const auto S = SigmaClass::of(b);
  auto iso = fixture("iso");
  auto fs = enumerate_2functors(b, iso, &S);
  const auto hs = testsupport::all_homotopies(S, 60);
  int checked = 0;
  for (const auto& F1 : fs)
    for (const auto& F2 : fs) {
      TransformationData t{F1, F2, {}, {}};
      for (ObjId x = 0; x < b->num_objects(); ++x) t.comp_obj.push_back(iso->arrows(F1.obj(x), F2.obj(x)).front());
      for (ArrId f = 0; f < b->num_arrows(); ++f) {
        const ObjId X = b->src(f), Y = b->dst(f);
        t.comp_arr.push_back(iso->id_cell(iso->comp(F2.arr(f), t.comp_obj[static_cast<std::size_t>(X)])));
        ASSERT_EQ(iso->comp(F2.arr(f), t.at(X)), iso->comp(t.at(Y), F1.arr(f)));
      }
      const Extension G1 = extend_2functor(S, F1, hs), G2 = extend_2functor(S, F2, hs);
      expect_ok(extend_transformation(t, G1, G2));
      ++checked;
    }
  EXPECT_GT(checked, 1);
}

TEST(Extension, PerturbedModificationViolatesPM) {
  auto b = fixture("split");
  const auto S = SigmaClass::of(b);
  auto z = probe_target("zgrpd");
  auto fs = enumerate_2functors(b, z, &S);
  ASSERT_FALSE(fs.empty());
  const auto& F = fs.front();
  TransformationData t{F, F, {}, {}};
  for (ObjId x = 0; x < b->num_objects(); ++x) t.comp_obj.push_back(z->id_arrow(F.obj(x)));
  for (ArrId f = 0; f < b->num_arrows(); ++f) t.comp_arr.push_back(z->id_cell(F.arr(f)));
  const auto hs = testsupport::all_homotopies(S, 60);
  const Extension G = extend_2functor(S, F, hs);
  ModificationData m{t, t, {}};
  for (ObjId x = 0; x < b->num_objects(); ++x) m.comp.push_back(z->id_cell(t.at(x)));
  expect_ok(extend_modification(m, G, G));
  for (CellId c : z->hom(t.at(0), t.at(0)))
    if (!z->is_identity(c)) m.comp[0] = c;
  ASSERT_NE(m.comp[0], z->id_cell(t.at(0)));
  EXPECT_TRUE(extend_modification(m, G, G).has("PM"));
}

TEST(Localize, TrivialFixture) {
  auto b = fixture("triv");
  const auto S = SigmaClass::of(b);
  const auto cert = localize(S, build_probes(S, library()));
  EXPECT_TRUE(cert.complete());
  EXPECT_EQ(cert.equivalences.size(), 1u);
}

TEST(Localize, SplitFullSigma) {
  auto b = fixture("split");
  const auto S = SigmaClass::of(b);
  LocalizeOptions opt;
  opt.max_len = 2;
  const auto cert = localize(S, build_probes(S, library()), opt);
  for (const auto& e : cert.errors) ADD_FAILURE() << e;
  EXPECT_TRUE(cert.complete());
  EXPECT_EQ(cert.equivalences.size(), 5u);
  const auto& de = cert.decompositions.at(b->arrow("e"));
  EXPECT_EQ(de.chain, (std::vector<ArrId>{b->arrow("s"), b->arrow("r")}));
  const HoRewriter R(S);
  for (const auto& e : cert.equivalences)
    for (const auto& c : e.checks) EXPECT_EQ(replay(R, c.derivation), "");
}

TEST(Localize, SplitWithoutE) {
  auto b = fixture("split");
  const auto S = SigmaClass::by_names(b, {"id_X", "id_Y", "s", "r"});
  const auto cert = localize(S, {});
  EXPECT_FALSE(cert.complete());
  ASSERT_FALSE(cert.three_for_two.ok());
  const auto& v = cert.three_for_two.primary();
  EXPECT_EQ(v.g, b->arrow("s"));
  EXPECT_EQ(v.f, b->arrow("r"));
  EXPECT_EQ(v.h, b->arrow("e"));
}
