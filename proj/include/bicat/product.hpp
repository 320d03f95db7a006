#pragma once

// Componentwise product of two tabulated bicategories.  Entity names are
// "a|b".

#include <memory>

#include "bicat/core.hpp"

namespace bicat {

inline Bicategory product(const Bicategory& A, const Bicategory& B) {
  Bicategory P;
  const int oB = B.num_objects(), aB = B.num_arrows(), cB = B.num_cells();
  auto obj = [&](ObjId x, ObjId y) { return x * oB + y; };
  auto arr = [&](ArrId f, ArrId g) { return f * aB + g; };
  auto cel = [&](CellId a, CellId b) { return a == kNone || b == kNone ? kNone : a * cB + b; };
  auto pa = [&](ArrId f, ArrId g) { return f == kNone || g == kNone ? kNone : arr(f, g); };
  for (ObjId x = 0; x < A.num_objects(); ++x)
    for (ObjId y = 0; y < oB; ++y) P.obj_names.push_back(A.obj_name(x) + "|" + B.obj_name(y));
  for (ArrId f = 0; f < A.num_arrows(); ++f)
    for (ArrId g = 0; g < aB; ++g) {
      P.arr_names.push_back(A.arr_name(f) + "|" + B.arr_name(g));
      P.arr_src.push_back(obj(A.src(f), B.src(g)));
      P.arr_dst.push_back(obj(A.dst(f), B.dst(g)));
    }
  for (CellId a = 0; a < A.num_cells(); ++a)
    for (CellId b = 0; b < cB; ++b) {
      P.cell_names.push_back(A.cell_name(a) + "|" + B.cell_name(b));
      P.cell_src.push_back(arr(A.csrc(a), B.csrc(b)));
      P.cell_dst.push_back(arr(A.cdst(a), B.cdst(b)));
    }
  P.allocate_tables();
  for (ObjId x = 0; x < A.num_objects(); ++x)
    for (ObjId y = 0; y < oB; ++y) P.id1[static_cast<std::size_t>(obj(x, y))] = arr(A.id_arrow(x), B.id_arrow(y));
  for (ArrId f = 0; f < A.num_arrows(); ++f)
    for (ArrId g = 0; g < aB; ++g) {
      const ArrId p = arr(f, g);
      P.idc[static_cast<std::size_t>(p)] = cel(A.id_cell(f), B.id_cell(g));
      P.lunitor[static_cast<std::size_t>(p)] = cel(A.lambda(f), B.lambda(g));
      P.runitor[static_cast<std::size_t>(p)] = cel(A.rho(f), B.rho(g));
      for (ArrId f2 = 0; f2 < A.num_arrows(); ++f2)
        for (ArrId g2 = 0; g2 < aB; ++g2) P.set_comp(p, arr(f2, g2), pa(A.comp(f, f2), B.comp(g, g2)));
      for (CellId a = 0; a < A.num_cells(); ++a)
        for (CellId b = 0; b < cB; ++b) {
          P.set_lw(p, cel(a, b), cel(A.lw(f, a), B.lw(g, b)));
          P.set_rw(cel(a, b), p, cel(A.rw(a, f), B.rw(b, g)));
        }
    }
  for (CellId a = 0; a < A.num_cells(); ++a)
    for (CellId b = 0; b < cB; ++b)
      for (CellId a2 = 0; a2 < A.num_cells(); ++a2)
        for (CellId b2 = 0; b2 < cB; ++b2) P.set_vc(cel(a, b), cel(a2, b2), cel(A.vc(a, a2), B.vc(b, b2)));
  for (const auto& [ka, ta] : A.assoc)
    for (const auto& [kb, tb] : B.assoc)
      P.assoc[{arr(ka[0], kb[0]), arr(ka[1], kb[1]), arr(ka[2], kb[2])}] = cel(ta, tb);
  P.strict = A.strict && B.strict;
  for (ArrId f : A.sigma)
    for (ArrId g : B.sigma) P.sigma.push_back(arr(f, g));
  P.reindex();
  return P;
}

}  // namespace bicat
