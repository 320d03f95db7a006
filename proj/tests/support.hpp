#pragma once

// Shared helpers for tests: random elevator expressions and small strict
// models.

#include <random>
#include <string>
#include <vector>

#include "bicat/elevator.hpp"
#include "bicat/presentation.hpp"

namespace testsupport {

// All (position, cell) steps applicable to a path.
inline std::vector<bicat::elev::Step> applicable(const bicat::Computad& K, const bicat::Path& p) {
  std::vector<bicat::elev::Step> out;
  for (bicat::CellId c = 0; c < K.num_cells(); ++c)
    for (int pos = 0; pos <= static_cast<int>(p.size()); ++pos) {
      try {
        bicat::elev::apply(K, p, {pos, c});
        out.push_back({pos, c});
      } catch (const bicat::Error&) {
      }
    }
  return out;
}

inline bicat::CellExpr random_expr(const bicat::Computad& K, const bicat::Path& src, int layers, std::mt19937& rng) {
  std::vector<bicat::elev::Step> steps;
  bicat::Path cur = src;
  for (int i = 0; i < layers; ++i) {
    auto opts = applicable(K, cur);
    if (opts.empty()) break;
    auto s = opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)];
    cur = bicat::elev::apply(K, cur, s);
    steps.push_back(s);
  }
  return bicat::expr_from_steps(K, src, steps);
}

// One object, one arrow, cells forming the cyclic monoid with the given index
// and period under vertical composition.
inline bicat::Bicategory cyclic_monoid_model(int index, int period) {
  const int n = index + period;
  auto name = [](int k) { return k == 0 ? std::string("id_pt") : "c" + std::to_string(k); };
  std::string doc = "objects: pt\nstrict true\ncells:\n";
  for (int k = 1; k < n; ++k) doc += "  c" + std::to_string(k) + " : id_pt => id_pt\n";
  doc += "vcomp:\n";
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b) {
      int s = a + b;
      if (s >= n) s = index + (s - index) % period;
      doc += "  " + name(a) + " . " + name(b) + " = " + name(s) + "\n";
    }
  return bicat::load_presentation(doc);
}

}  // namespace testsupport

#include "bicat/homotopy.hpp"

namespace testsupport {

// Every homotopy of B with s ∈ S, up to `cap` of them.
inline std::vector<bicat::Homotopy> all_homotopies(const bicat::SigmaClass& S, std::size_t cap = 5000) {
  using namespace bicat;
  const Bicategory& B = S.bicat();
  std::vector<Homotopy> out;
  for (ArrId s : S.members()) {
    const ObjId W = B.src(s), Z = B.dst(s);
    for (ObjId X = 0; X < B.num_objects(); ++X)
      for (ArrId d0 : B.arrows(X, W))
        for (ArrId d1 : B.arrows(X, W))
          for (ArrId x : B.arrows(X, Z))
            for (CellId a0 : B.hom(B.comp(s, d0), x)) {
              if (!B.invertible(a0)) continue;
              for (CellId a1 : B.hom(B.comp(s, d1), x)) {
                if (!B.invertible(a1)) continue;
                const Cylinder C{W, Z, d0, d1, x, s, a0, a1};
                for (ArrId h = 0; h < B.num_arrows(); ++h) {
                  if (B.src(h) != W) continue;
                  const ObjId Y = B.dst(h);
                  for (ArrId f : B.arrows(X, Y))
                    for (CellId eta : B.hom(f, B.comp(h, d0)))
                      for (ArrId g : B.arrows(X, Y))
                        for (CellId eps : B.hom(B.comp(h, d1), g)) {
                          out.push_back({C, h, eta, eps});
                          if (out.size() >= cap) return out;
                        }
                }
              }
            }
  }
  return out;
}

// Projection of a product onto its first factor, as a 2-functor.
inline bicat::PseudofunctorData first_projection(bicat::BicatPtr P, bicat::BicatPtr A, const bicat::Bicategory& Bf) {
  bicat::PseudofunctorData F;
  F.source = P;
  F.target = A;
  for (bicat::ObjId x = 0; x < P->num_objects(); ++x) F.obj_map.push_back(x / Bf.num_objects());
  for (bicat::ArrId f = 0; f < P->num_arrows(); ++f) F.arr_map.push_back(f / Bf.num_arrows());
  for (bicat::CellId c = 0; c < P->num_cells(); ++c) F.cell_map.push_back(c / Bf.num_cells());
  bicat::fill_identity_structure(F);
  return F;
}

}  // namespace testsupport
