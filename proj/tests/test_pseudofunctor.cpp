#include <gtest/gtest.h>

#include "bicat/presentation.hpp"
#include "bicat/product.hpp"
#include "bicat/pseudofunctor.hpp"
#include "bicat/validate.hpp"
#include "fixtures.hpp"

using namespace bicat;

namespace {

PseudofunctorData functor_file(const std::string& file, BicatPtr c, BicatPtr d) {
  return load_pseudofunctor(read_file(fixture_path(file)), std::move(c), std::move(d));
}

void expect_ok(const ValidationReport& r) {
  for (auto& v : r.violations) ADD_FAILURE() << v.axiom << " " << v.witness << " " << v.lhs << " vs " << v.rhs;
}

}  // namespace

TEST(Pseudofunctor, IdentityOnSplit) {
  auto b = fixture("split");
  auto F = identity_functor(b);
  expect_ok(validate_pseudofunctor(F));
  EXPECT_TRUE(F.is_2functor());
}

TEST(Pseudofunctor, IdentityOnEveryFixture) {
  for (const char* n : {"triv", "split", "iso", "grpd", "chain", "idem", "arrow"}) expect_ok(validate_pseudofunctor(identity_functor(fixture(n))));
}

TEST(Pseudofunctor, SplitToIso) {
  auto F = functor_file("split_to_iso.functor", fixture("split"), fixture("iso"));
  expect_ok(validate_pseudofunctor(F));
  EXPECT_EQ(F.arr(F.source->arrow("e")), F.target->arrow("id_B"));
  // e = s∘r so Fe must be u∘v; the table gives id_B.
  EXPECT_EQ(F.target->comp(F.target->arrow("u"), F.target->arrow("v")), F.target->arrow("id_B"));
}

TEST(Pseudofunctor, SplitToIsoWithDistinctImageOfE) {
  auto iso = std::make_shared<Bicategory>(*fixture("iso"));
  // Add a separate arrow w : B -> B standing in for "u . v".
  auto doc = read_file(fixture_path("iso.bicat"));
  doc.replace(doc.find("arrows:") + 7, 0, "\n  w : B -> B");
  doc += "compose:\n  w . w = w\n  w . u = u\n  v . w = v\n";
  auto D = std::make_shared<const Bicategory>(load_presentation(doc));
  std::string fdoc = read_file(fixture_path("split_to_iso.functor"));
  fdoc.replace(fdoc.find("e -> id_B"), 9, "e -> w");
  auto F = load_pseudofunctor(fdoc, fixture("split"), D);
  auto rep = validate_pseudofunctor(F);
  EXPECT_FALSE(rep.ok());
  EXPECT_TRUE(rep.has("phi-typing") || rep.has("phi-total") || rep.has("map-typing"));
}

TEST(Pseudofunctor, ChainToIdemHasNonidentityPhi) {
  auto F = functor_file("chain_to_idem.functor", fixture("chain"), fixture("idem"));
  expect_ok(validate_pseudofunctor(F));
  EXPECT_FALSE(F.is_2functor());
}

TEST(Pseudofunctor, LoaderErrors) {
  auto c = fixture("split"), d = fixture("iso");
  EXPECT_THROW(load_pseudofunctor("map_obj:\n  Q -> A\n", c, d), ParseError);
  EXPECT_THROW(load_pseudofunctor("map_obj:\n  X -> A\n  X -> B\n", c, d), ParseError);
  EXPECT_THROW(load_pseudofunctor("map_arr:\n  s -> q\n", c, d), ParseError);
}

TEST(CompSubF, IdentitiesGiveIdentity) {
  auto F = functor_file("split_to_iso.functor", fixture("split"), fixture("iso"));
  const auto& C = *F.source;
  const auto& D = *F.target;
  const ArrId s = C.arrow("s"), r = C.arrow("r");
  EXPECT_EQ(comp_sub_f(F, D.id_cell(F.arr(s)), D.id_cell(F.arr(r)), s, r, s, r), D.id_cell(F.arr(C.comp(s, r))));
}

TEST(CompSubF, GrpdIdentityFunctorRecoversHorizontalComposite) {
  auto b = fixture("grpd");
  auto F = identity_functor(b);
  const ArrId id = b->arrow("id_pt");
  for (CellId x = 0; x < b->num_cells(); ++x)
    for (CellId y = 0; y < b->num_cells(); ++y) EXPECT_EQ(comp_sub_f(F, F.cell(y), F.cell(x), id, id, id, id), F.cell(b->hc(y, x)));
}

TEST(CompSubF, NonidentityPhiAgainstTableComposite) {
  auto F = functor_file("chain_to_idem.functor", fixture("chain"), fixture("idem"));
  const auto& C = *F.source;
  const auto& D = *F.target;
  const ArrId f = C.arrow("f"), g = C.arrow("g");
  const CellId z = D.cell("z"), one = D.id_cell(D.arrow("p"));
  // Oracle: z ∘ (β∗α) ∘ z⁻¹ with z⁻¹ = z, written out from the IDEM tables.
  for (CellId b : {one, z})
    for (CellId a : {one, z}) {
      const CellId ba = D.vc(D.lw(D.arrow("p"), a), D.rw(b, D.arrow("p")));
      EXPECT_EQ(comp_sub_f(F, b, a, g, f, g, f), D.vc(z, D.vc(ba, z)));
    }
  EXPECT_THROW(comp_sub_f(F, z, z, f, g, f, g), Error);
}

TEST(CompSubF, BoundaryMismatchThrows) {
  auto F = functor_file("split_to_iso.functor", fixture("split"), fixture("iso"));
  const auto& C = *F.source;
  const auto& D = *F.target;
  EXPECT_THROW(comp_sub_f(F, D.id_cell(D.arrow("u")), D.id_cell(D.arrow("u")), C.arrow("s"), C.arrow("r"), C.arrow("s"),
                          C.arrow("r")),
               Error);
}

namespace {

void check_factorization(const PseudofunctorData& F) {
  auto fac = factorize(F);
  const auto& C = *F.source;
  const auto& CF = *fac.cf;
  const auto& D = *F.target;
  expect_ok(validate_bicategory(CF));
  expect_ok(validate_pseudofunctor(fac.f1));
  expect_ok(validate_pseudofunctor(fac.f2));
  EXPECT_TRUE(fac.f2.is_2functor());
  EXPECT_EQ(CF.num_objects(), C.num_objects());
  EXPECT_EQ(CF.num_arrows(), C.num_arrows());
  // F1 after F2 is F.
  for (ObjId x = 0; x < C.num_objects(); ++x) EXPECT_EQ(fac.f1.obj(fac.f2.obj(x)), F.obj(x));
  for (ArrId f = 0; f < C.num_arrows(); ++f) EXPECT_EQ(fac.f1.arr(fac.f2.arr(f)), F.arr(f));
  for (CellId c = 0; c < C.num_cells(); ++c) EXPECT_EQ(fac.f1.cell(fac.f2.cell(c)), F.cell(c));
  for (ArrId f = 0; f < C.num_arrows(); ++f) {
    EXPECT_EQ(fac.f1.cell(CF.lambda(f)), F.cell(C.lambda(f)));
    EXPECT_EQ(fac.f1.cell(CF.rho(f)), F.cell(C.rho(f)));
  }
  for (const auto& [k, t] : C.assoc) EXPECT_EQ(fac.f1.cell(CF.theta(k[0], k[1], k[2])), F.cell(t));
  // F1(β ∗ α) computed in C_F equals β ∗_F α.
  for (CellId a = 0; a < CF.num_cells(); ++a)
    for (CellId b = 0; b < CF.num_cells(); ++b) {
      const ArrId f1 = CF.csrc(a), f2 = CF.cdst(a), g1 = CF.csrc(b), g2 = CF.cdst(b);
      if (C.dst(f1) != C.src(g1)) continue;
      EXPECT_EQ(fac.f1.cell(CF.hc(b, a)), comp_sub_f(F, fac.f1.cell(b), fac.f1.cell(a), g1, f1, g2, f2));
    }
  (void)D;
}

}  // namespace

TEST(Factorize, IdentityOnTriv) {
  auto b = fixture("triv");
  auto fac = factorize(identity_functor(b));
  EXPECT_EQ(fac.cf->num_objects(), 1);
  EXPECT_EQ(fac.cf->num_arrows(), 1);
  EXPECT_EQ(fac.cf->num_cells(), 1);
  check_factorization(identity_functor(b));
}

TEST(Factorize, SplitToIso) {
  auto F = functor_file("split_to_iso.functor", fixture("split"), fixture("iso"));
  auto fac = factorize(F);
  EXPECT_EQ(fac.cf->num_arrows(), 5);
  // Fe = F(id_Y), so C_F has cells e => id_Y; all of them lie over identities.
  for (CellId c = 0; c < fac.cf->num_cells(); ++c) EXPECT_TRUE(F.target->is_identity(fac.f1.cell(c)));
  EXPECT_EQ(fac.cf->hom(F.source->arrow("e"), F.source->arrow("id_Y")).size(), 1u);
  check_factorization(F);
}

TEST(Factorize, ChainToIdem) { check_factorization(functor_file("chain_to_idem.functor", fixture("chain"), fixture("idem"))); }

TEST(Factorize, GrpdIdentity) { check_factorization(identity_functor(fixture("grpd"))); }

TEST(Product, IsoTimesGrpdValidates) {
  auto p = product(*fixture("iso"), *fixture("grpd"));
  EXPECT_EQ(p.num_objects(), 2);
  EXPECT_EQ(p.num_arrows(), 4);
  expect_ok(validate_bicategory(p));
}

namespace {

// ι: C -> D where D has the same data; used for transformations with explicit
// components.
TransformationData identity_transformation(const PseudofunctorData& F) {
  TransformationData t;
  t.F = F;
  t.G = F;
  const auto& C = *F.source;
  const auto& D = *F.target;
  for (ObjId x = 0; x < C.num_objects(); ++x) t.comp_obj.push_back(D.id_arrow(F.obj(x)));
  for (ArrId f = 0; f < C.num_arrows(); ++f) t.comp_arr.push_back(D.id_cell(F.arr(f)));
  return t;
}

}  // namespace

TEST(Transformation, IdentityIsPseudonatural) {
  for (const char* n : {"split", "iso", "grpd"}) {
    auto t = identity_transformation(identity_functor(fixture(n)));
    expect_ok(validate_transformation(t));
    ModificationData m{t, t, {}};
    for (ObjId x = 0; x < t.F.source->num_objects(); ++x) m.comp.push_back(t.F.target->id_cell(t.comp_obj[static_cast<std::size_t>(x)]));
    expect_ok(validate_modification(m));
  }
}

TEST(Transformation, BrokenComponentIsRejected) {
  auto t = identity_transformation(identity_functor(fixture("grpd")));
  t.comp_arr[0] = t.F.target->cell("g");
  auto rep = validate_transformation(t);
  EXPECT_FALSE(rep.ok());
}

TEST(Modification, GrpdCellIsModificationOnlyIfCentral) {
  // In GRPD the cell g is a modification from the identity transformation to
  // itself: PM reads (g∗1)∘1 = 1∘(1∗g).
  auto t = identity_transformation(identity_functor(fixture("grpd")));
  ModificationData m{t, t, {t.F.target->cell("g")}};
  expect_ok(validate_modification(m));
}
