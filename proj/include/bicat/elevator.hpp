#pragma once

// Elevator calculus: layered 2-cell expressions over a computad.
//
// A path is a list of generator arrows written outermost first, so {g, f} is
// g∗f.  A layer (L, c, R) is the whiskered cell L∗c∗R.  Layers are listed in
// application order.  Two expressions denote the same cell of the free strict
// 2-category iff they are related by interchange moves of adjacent layers;
// the normal form is the least element of that class under the per-layer key
// (left whisker length, cell id).

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bicat/core.hpp"
#include "bicat/presentation.hpp"

namespace bicat {

struct Path {
  ObjId src = kNone, dst = kNone;
  std::vector<ArrId> arrows;  // outermost first
  std::size_t size() const { return arrows.size(); }
  bool operator==(const Path&) const = default;
};

struct Computad {
  std::vector<std::string> obj_names, arr_names, cell_names;
  std::vector<ObjId> arr_src, arr_dst;
  std::vector<Path> cell_src, cell_dst;

  int num_objects() const { return static_cast<int>(obj_names.size()); }
  int num_arrows() const { return static_cast<int>(arr_names.size()); }
  int num_cells() const { return static_cast<int>(cell_names.size()); }

  Path empty_path(ObjId x) const { return Path{x, x, {}}; }

  // Path from raw arrows; throws on a non-composable sequence.
  Path path(const std::vector<ArrId>& arrows, ObjId at = kNone) const {
    if (arrows.empty()) {
      if (at == kNone) throw Error("empty path needs an object");
      return empty_path(at);
    }
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
      if (arr_src[static_cast<std::size_t>(arrows[i])] != arr_dst[static_cast<std::size_t>(arrows[i + 1])])
        throw Error("path " + arr_names[static_cast<std::size_t>(arrows[i])] + " . " +
                    arr_names[static_cast<std::size_t>(arrows[i + 1])] + " is not composable");
    return Path{arr_src[static_cast<std::size_t>(arrows.back())], arr_dst[static_cast<std::size_t>(arrows.front())], arrows};
  }

  // Object at position p of a path: 0 is the target end.
  ObjId object_at(const Path& p, std::size_t pos) const {
    if (pos == 0) return p.dst;
    return arr_src[static_cast<std::size_t>(p.arrows[pos - 1])];
  }

  std::string path_name(const Path& p) const {
    if (p.arrows.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) {
      if (i) s += ".";
      s += arr_names[static_cast<std::size_t>(p.arrows[i])];
    }
    return s;
  }
};

struct Layer {
  Path left;
  CellId cell = kNone;
  Path right;
  bool operator==(const Layer&) const = default;
};

struct CellExpr {
  Path src, dst;
  std::vector<Layer> layers;
  bool operator==(const CellExpr&) const = default;
};

using NormalForm = CellExpr;

namespace elev {

struct Step {
  int pos = 0;
  CellId cell = kNone;
  auto operator<=>(const Step&) const = default;
};

inline int width_in(const Computad& K, CellId c) { return static_cast<int>(K.cell_src[static_cast<std::size_t>(c)].size()); }
inline int width_out(const Computad& K, CellId c) { return static_cast<int>(K.cell_dst[static_cast<std::size_t>(c)].size()); }

// Applies a step to a path; throws if the cell's source does not match.
inline Path apply(const Computad& K, const Path& p, Step s) {
  const Path& in = K.cell_src[static_cast<std::size_t>(s.cell)];
  const Path& out = K.cell_dst[static_cast<std::size_t>(s.cell)];
  const auto w = in.size();
  if (s.pos < 0 || static_cast<std::size_t>(s.pos) + w > p.size())
    throw Error("layer with " + K.cell_names[static_cast<std::size_t>(s.cell)] + " does not fit its path");
  if (!std::equal(in.arrows.begin(), in.arrows.end(), p.arrows.begin() + s.pos))
    throw Error("layer with " + K.cell_names[static_cast<std::size_t>(s.cell)] + " does not match its path");
  if (K.object_at(p, static_cast<std::size_t>(s.pos)) != in.dst)
    throw Error("layer with " + K.cell_names[static_cast<std::size_t>(s.cell)] + " sits at the wrong object");
  Path r;
  r.src = p.src;
  r.dst = p.dst;
  r.arrows.assign(p.arrows.begin(), p.arrows.begin() + s.pos);
  r.arrows.insert(r.arrows.end(), out.arrows.begin(), out.arrows.end());
  r.arrows.insert(r.arrows.end(), p.arrows.begin() + s.pos + static_cast<long>(w), p.arrows.end());
  return r;
}

// All ways to exchange consecutive steps a (first) and b (second).
inline std::vector<std::pair<Step, Step>> exchanges(const Computad& K, Step a, Step b) {
  std::vector<std::pair<Step, Step>> out;
  const int ai = width_in(K, a.cell), ao = width_out(K, a.cell);
  const int bi = width_in(K, b.cell), bo = width_out(K, b.cell);
  if (b.pos + bi <= a.pos) out.push_back({{b.pos, b.cell}, {a.pos - bi + bo, a.cell}});
  if (a.pos + ao <= b.pos) {
    std::pair<Step, Step> x{{b.pos - ao + ai, b.cell}, {a.pos, a.cell}};
    if (out.empty() || out.front() != x) out.push_back(x);
  }
  return out;
}

}  // namespace elev

// Checks boundaries of every layer; throws on an ill-typed expression.
inline void check_expr(const Computad& K, const CellExpr& e) {
  Path cur = e.src;
  for (const Layer& l : e.layers) {
    if (l.cell < 0 || l.cell >= K.num_cells()) throw Error("unknown cell in layer");
    const Path& in = K.cell_src[static_cast<std::size_t>(l.cell)];
    Path whole = l.left;
    whole.arrows.insert(whole.arrows.end(), in.arrows.begin(), in.arrows.end());
    whole.arrows.insert(whole.arrows.end(), l.right.arrows.begin(), l.right.arrows.end());
    if (whole.arrows != cur.arrows || l.left.dst != cur.dst || l.right.src != cur.src ||
        l.left.src != in.dst || l.right.dst != in.src)
      throw Error("ill-typed layer " + K.path_name(l.left) + " * " + K.cell_names[static_cast<std::size_t>(l.cell)] +
                  " * " + K.path_name(l.right) + " on path " + K.path_name(cur));
    cur = elev::apply(K, cur, {static_cast<int>(l.left.size()), l.cell});
  }
  if (cur.arrows != e.dst.arrows || cur.src != e.dst.src || cur.dst != e.dst.dst)
    throw Error("expression target " + K.path_name(cur) + " differs from declared " + K.path_name(e.dst));
}

inline std::vector<elev::Step> steps_of(const CellExpr& e) {
  std::vector<elev::Step> s;
  for (const Layer& l : e.layers) s.push_back({static_cast<int>(l.left.size()), l.cell});
  return s;
}

inline CellExpr expr_from_steps(const Computad& K, const Path& src, const std::vector<elev::Step>& steps) {
  CellExpr e;
  e.src = src;
  Path cur = src;
  for (const auto& s : steps) {
    if (s.cell < 0 || s.cell >= K.num_cells()) throw Error("unknown cell in layer");
    const Path& in = K.cell_src[static_cast<std::size_t>(s.cell)];
    Path next = elev::apply(K, cur, s);
    Layer l;
    l.cell = s.cell;
    l.left.arrows.assign(cur.arrows.begin(), cur.arrows.begin() + s.pos);
    l.left.dst = cur.dst;
    l.left.src = in.dst;
    l.right.arrows.assign(cur.arrows.begin() + s.pos + static_cast<long>(in.size()), cur.arrows.end());
    l.right.src = cur.src;
    l.right.dst = in.src;
    cur = std::move(next);
    e.layers.push_back(std::move(l));
  }
  e.dst = cur;
  return e;
}

// Builds an expression from steps (position, cell), checking types.
inline CellExpr make_expr(const Computad& K, const Path& src, const std::vector<std::pair<int, CellId>>& steps) {
  std::vector<elev::Step> s;
  for (auto [p, c] : steps) s.push_back({p, c});
  return expr_from_steps(K, src, s);
}

inline constexpr std::size_t kElevatorStateCap = 200000;

inline NormalForm normalize(const Computad& K, const CellExpr& e) {
  check_expr(K, e);
  using elev::Step;
  const auto start = steps_of(e);
  std::set<std::vector<Step>> seen{start};
  std::deque<std::vector<Step>> queue{start};
  std::vector<Step> best = start;
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    if (cur < best) best = cur;
    for (std::size_t k = 0; k + 1 < cur.size(); ++k)
      for (const auto& [b, a] : elev::exchanges(K, cur[k], cur[k + 1])) {
        auto nxt = cur;
        nxt[k] = b;
        nxt[k + 1] = a;
        if (seen.insert(nxt).second) {
          if (seen.size() > kElevatorStateCap) throw Error("interchange class exceeds the state cap");
          queue.push_back(std::move(nxt));
        }
      }
  }
  return expr_from_steps(K, e.src, best);
}

// One-step rewrites that lower the key sequence.
inline std::vector<CellExpr> rewrites(const Computad& K, const CellExpr& e) {
  std::vector<CellExpr> out;
  const auto s = steps_of(e);
  for (std::size_t k = 0; k + 1 < s.size(); ++k)
    for (const auto& [b, a] : elev::exchanges(K, s[k], s[k + 1])) {
      if (!(b < s[k] || (b == s[k] && a < s[k + 1]))) continue;
      auto n = s;
      n[k] = b;
      n[k + 1] = a;
      out.push_back(expr_from_steps(K, e.src, n));
    }
  return out;
}

// Applies the first available rewrite until none is left.
inline CellExpr greedy_normalize(const Computad& K, CellExpr e) {
  check_expr(K, e);
  for (;;) {
    auto r = rewrites(K, e);
    if (r.empty()) return e;
    e = std::move(r.front());
  }
}

inline bool expr_equal(const Computad& K, const CellExpr& a, const CellExpr& b) {
  if (!(a.src == b.src) || !(a.dst == b.dst)) throw Error("expressions have different boundaries");
  return normalize(K, a) == normalize(K, b);
}

// Vertical stacking: a then b.
inline CellExpr vstack(const CellExpr& a, const CellExpr& b) {
  if (!(a.dst == b.src)) throw Error("vstack: boundary mismatch");
  CellExpr e = a;
  e.dst = b.dst;
  e.layers.insert(e.layers.end(), b.layers.begin(), b.layers.end());
  return e;
}

// Whiskers every layer by paths l (outer) and r (inner).
inline CellExpr whisker(const Computad& K, const Path& l, const CellExpr& e, const Path& r) {
  if (l.src != e.src.dst || r.dst != e.src.src) throw Error("whisker: boundary mismatch");
  auto wrap = [&](const Path& p) {
    Path q;
    q.dst = l.dst;
    q.src = r.src;
    q.arrows = l.arrows;
    q.arrows.insert(q.arrows.end(), p.arrows.begin(), p.arrows.end());
    q.arrows.insert(q.arrows.end(), r.arrows.begin(), r.arrows.end());
    return q;
  };
  std::vector<elev::Step> s;
  for (const Layer& x : e.layers) s.push_back({static_cast<int>(l.size() + x.left.size()), x.cell});
  return expr_from_steps(K, wrap(e.src), s);
}

// Generators of a tabulated bicategory: non-identity arrows, and non-identity
// cells with boundaries of length one (or zero on identity arrows).
inline Computad computad_of(const Bicategory& B) {
  Computad K;
  K.obj_names = B.obj_names;
  std::vector<ArrId> gen(static_cast<std::size_t>(B.num_arrows()), kNone);
  for (ArrId f = 0; f < B.num_arrows(); ++f) {
    if (B.id_arrow(B.src(f)) == f) continue;
    gen[static_cast<std::size_t>(f)] = K.num_arrows();
    K.arr_names.push_back(B.arr_name(f));
    K.arr_src.push_back(B.src(f));
    K.arr_dst.push_back(B.dst(f));
  }
  auto as_path = [&](ArrId f) {
    const ArrId g = gen[static_cast<std::size_t>(f)];
    return g == kNone ? K.empty_path(B.src(f)) : Path{B.src(f), B.dst(f), {g}};
  };
  for (CellId c = 0; c < B.num_cells(); ++c) {
    if (B.is_identity(c)) continue;
    K.cell_names.push_back(B.cell_name(c));
    K.cell_src.push_back(as_path(B.csrc(c)));
    K.cell_dst.push_back(as_path(B.cdst(c)));
  }
  return K;
}

// Assignment of computad generators to a tabulated bicategory.
struct Interpretation {
  std::vector<ObjId> obj;
  std::vector<ArrId> arr;
  std::vector<CellId> cell;
};

// The interpretation that sends every generator of computad_of(B) back to B.
inline Interpretation tautological(const Bicategory& B, const Computad& K) {
  Interpretation I;
  for (ObjId x = 0; x < K.num_objects(); ++x) I.obj.push_back(B.object(K.obj_names[static_cast<std::size_t>(x)]));
  for (ArrId f = 0; f < K.num_arrows(); ++f) I.arr.push_back(B.arrow(K.arr_names[static_cast<std::size_t>(f)]));
  for (CellId c = 0; c < K.num_cells(); ++c) I.cell.push_back(B.cell(K.cell_names[static_cast<std::size_t>(c)]));
  return I;
}

inline ArrId evaluate_path(const Bicategory& B, const Interpretation& I, const Path& p) {
  if (p.arrows.empty()) return B.id_arrow(I.obj.at(static_cast<std::size_t>(p.src)));
  std::vector<ArrId> chain;
  for (ArrId f : p.arrows) chain.push_back(I.arr.at(static_cast<std::size_t>(f)));
  const ArrId r = compose_chain(B, chain);
  if (r == kNone) throw Error("path composite undefined in the target");
  return r;
}

inline CellId evaluate(const Bicategory& B, const Computad& K, const Interpretation& I, const CellExpr& e) {
  if (!B.strict) throw Error("evaluate needs a strict target");
  check_expr(K, e);
  if (I.obj.size() != static_cast<std::size_t>(K.num_objects()) || I.arr.size() != static_cast<std::size_t>(K.num_arrows()) ||
      I.cell.size() != static_cast<std::size_t>(K.num_cells()))
    throw Error("interpretation does not cover the computad");
  for (CellId c = 0; c < K.num_cells(); ++c) {
    const CellId v = I.cell[static_cast<std::size_t>(c)];
    if (!B.valid_cell(v) || B.csrc(v) != evaluate_path(B, I, K.cell_src[static_cast<std::size_t>(c)]) ||
        B.cdst(v) != evaluate_path(B, I, K.cell_dst[static_cast<std::size_t>(c)]))
      throw Error("generator " + K.cell_names[static_cast<std::size_t>(c)] + " is not mappable");
  }
  CellId acc = B.id_cell(evaluate_path(B, I, e.src));
  for (const Layer& l : e.layers) {
    const CellId inner = B.rw(I.cell[static_cast<std::size_t>(l.cell)], evaluate_path(B, I, l.right));
    const CellId v = B.lw(evaluate_path(B, I, l.left), inner);
    acc = B.vc(v, acc);
    if (acc == kNone) throw Error("undefined composite while evaluating");
  }
  return acc;
}

namespace detail {

inline Path parse_path(const Computad& K, const text::Line& l, const std::vector<text::Token>& toks, ObjId hint) {
  std::vector<ArrId> arrows;
  ObjId at = hint;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const auto& t = toks[i];
    if (i % 2 == 1) {
      if (!(t.sym && t.s == ".")) text::Cursor::fail_at(l, t, "expected '.'");
      continue;
    }
    if (t.sym) text::Cursor::fail_at(l, t, "expected an arrow");
    if (t.s == "1") continue;
    auto it = std::find(K.arr_names.begin(), K.arr_names.end(), t.s);
    if (it != K.arr_names.end()) {
      arrows.push_back(static_cast<ArrId>(it - K.arr_names.begin()));
      continue;
    }
    if (t.s.rfind("id_", 0) == 0) {
      auto o = std::find(K.obj_names.begin(), K.obj_names.end(), t.s.substr(3));
      if (o != K.obj_names.end()) {
        at = static_cast<ObjId>(o - K.obj_names.begin());
        continue;
      }
    }
    text::Cursor::fail_at(l, t, "dangling reference to arrow '" + t.s + "'");
  }
  if (!toks.empty() && toks.size() % 2 == 0) text::Cursor::fail_at(l, toks.back(), "dangling '.'");
  if (arrows.empty() && at == kNone) {
    if (K.num_objects() != 1) throw ParseError(l.no, toks.empty() ? 1 : toks[0].col, "cannot infer the object of an empty path");
    at = 0;
  }
  try {
    return K.path(arrows, at);
  } catch (const Error& e) {
    throw ParseError(l.no, toks.empty() ? 1 : toks[0].col, e.what());
  }
}

}  // namespace detail

// Expression text: layers "L * c * R" separated by ';' in application order;
// the cell name 1 marks an identity layer that only fixes the boundary.
inline CellExpr parse_expr(const Computad& K, const std::string& src) {
  text::Line line{1, text::tokenize(src)};
  std::vector<std::vector<text::Token>> layers(1);
  for (const auto& t : line.toks) {
    if (t.sym && t.s == ";") layers.emplace_back();
    else layers.back().push_back(t);
  }
  std::vector<elev::Step> steps;
  std::optional<Path> start;
  Path cur;
  for (const auto& toks : layers) {
    std::vector<std::vector<text::Token>> parts(1);
    for (const auto& t : toks) {
      if (t.sym && t.s == "*") parts.emplace_back();
      else parts.back().push_back(t);
    }
    const int col = toks.empty() ? 1 : toks[0].col;
    if (parts.size() != 3 || parts[1].size() != 1 || parts[1][0].sym)
      throw ParseError(1, col, "expected a layer 'path * cell * path'");
    const std::string& cn = parts[1][0].s;
    ObjId lhint = kNone, rhint = kNone;
    CellId cell = kNone;
    if (cn != "1") {
      auto it = std::find(K.cell_names.begin(), K.cell_names.end(), cn);
      if (it == K.cell_names.end()) throw ParseError(1, parts[1][0].col, "dangling reference to cell '" + cn + "'");
      cell = static_cast<CellId>(it - K.cell_names.begin());
      lhint = K.cell_src[static_cast<std::size_t>(cell)].dst;
      rhint = K.cell_src[static_cast<std::size_t>(cell)].src;
    }
    Path L, R;
    if (cell != kNone) {
      L = detail::parse_path(K, line, parts[0], lhint);
      R = detail::parse_path(K, line, parts[2], rhint);
    } else if (std::any_of(parts[2].begin(), parts[2].end(), [&](const text::Token& t) {
                 return !t.sym && std::count(K.arr_names.begin(), K.arr_names.end(), t.s);
               })) {
      R = detail::parse_path(K, line, parts[2], kNone);
      L = detail::parse_path(K, line, parts[0], R.dst);
    } else {
      L = detail::parse_path(K, line, parts[0], kNone);
      R = detail::parse_path(K, line, parts[2], L.src);
    }
    Path in;
    if (cell == kNone) {
      in = K.empty_path(L.src);
    } else {
      in = K.cell_src[static_cast<std::size_t>(cell)];
    }
    if (L.src != in.dst || R.dst != in.src) throw ParseError(1, col, "whisker paths do not meet the cell");
    Path whole;
    whole.dst = L.dst;
    whole.src = R.src;
    whole.arrows = L.arrows;
    whole.arrows.insert(whole.arrows.end(), in.arrows.begin(), in.arrows.end());
    whole.arrows.insert(whole.arrows.end(), R.arrows.begin(), R.arrows.end());
    if (!start) {
      start = whole;
      cur = whole;
    } else if (!(whole == cur)) {
      throw ParseError(1, col, "layer input " + K.path_name(whole) + " does not match " + K.path_name(cur));
    }
    if (cell != kNone) {
      const elev::Step s{static_cast<int>(L.size()), cell};
      cur = elev::apply(K, cur, s);
      steps.push_back(s);
    }
  }
  return expr_from_steps(K, *start, steps);
}

inline std::string format_expr(const Computad& K, const CellExpr& e) {
  if (e.layers.empty()) return K.path_name(e.src) + " * 1 * 1";
  std::string s;
  for (std::size_t i = 0; i < e.layers.size(); ++i) {
    const Layer& l = e.layers[i];
    if (i) s += " ; ";
    s += K.path_name(l.left) + " * " + K.cell_names[static_cast<std::size_t>(l.cell)] + " * " + K.path_name(l.right);
  }
  return s;
}

// Monospaced elevator diagram: one row of wires per path, one row per cell.
inline std::string render(const Computad& K, const CellExpr& e) {
  std::ostringstream out;
  auto wires = [&](const Path& p) {
    std::string s;
    if (p.arrows.empty()) return std::string("  (") + K.obj_names[static_cast<std::size_t>(p.src)] + ")";
    for (ArrId f : p.arrows) s += "  " + K.arr_names[static_cast<std::size_t>(f)];
    return s;
  };
  Path cur = e.src;
  out << wires(cur) << "\n";
  for (const Layer& l : e.layers) {
    std::string row;
    for (std::size_t i = 0; i < l.left.size(); ++i) row += "  |";
    row += "  [" + K.cell_names[static_cast<std::size_t>(l.cell)] + "]";
    for (std::size_t i = 0; i < l.right.size(); ++i) row += "  |";
    out << row << "\n";
    cur = elev::apply(K, cur, {static_cast<int>(l.left.size()), l.cell});
    out << wires(cur) << "\n";
  }
  return out.str();
}

// Computad text: sections objects, arrows (n : X -> Y) and cells
// (n : path => path), where a path is "g . f" or id_X.
inline Computad load_computad(const std::string& src) {
  const auto lines = text::split_lines(src);
  const auto secs = text::sections(lines, {"objects", "arrows", "cells"});
  Computad K;
  auto find_obj = [&](const text::Line& l, const text::Token& t) {
    auto it = std::find(K.obj_names.begin(), K.obj_names.end(), t.s);
    if (it == K.obj_names.end()) text::Cursor::fail_at(l, t, "dangling reference to object '" + t.s + "'");
    return static_cast<ObjId>(it - K.obj_names.begin());
  };
  for (const auto& s : secs)
    if (s.name == "objects")
      for (const auto& [l, t] : text::list_items(s)) {
        if (std::count(K.obj_names.begin(), K.obj_names.end(), t.s)) text::Cursor::fail_at(l, t, "duplicate object '" + t.s + "'");
        K.obj_names.push_back(t.s);
      }
  for (const auto& s : secs)
    if (s.name == "arrows")
      for (const auto& l : s.body) {
        text::Cursor c(l);
        const auto& n = c.name();
        c.expect(":");
        const ObjId x = find_obj(l, c.name());
        c.expect("->");
        const ObjId y = find_obj(l, c.name());
        c.finish();
        if (std::count(K.arr_names.begin(), K.arr_names.end(), n.s)) text::Cursor::fail_at(l, n, "duplicate arrow '" + n.s + "'");
        K.arr_names.push_back(n.s);
        K.arr_src.push_back(x);
        K.arr_dst.push_back(y);
      }
  for (const auto& s : secs)
    if (s.name == "cells")
      for (const auto& l : s.body) {
        if (l.toks.size() < 2 || l.toks[0].sym || !(l.toks[1].sym && l.toks[1].s == ":"))
          text::Cursor::fail_at(l, l.toks[0], "expected 'name : path => path'");
        const auto& n = l.toks[0];
        auto arrow = std::find_if(l.toks.begin(), l.toks.end(), [](const text::Token& t) { return t.sym && t.s == "=>"; });
        if (arrow == l.toks.end()) text::Cursor::fail_at(l, l.toks.back(), "expected '=>'");
        std::vector<text::Token> a(l.toks.begin() + 2, arrow), b(arrow + 1, l.toks.end());
        Path p = detail::parse_path(K, l, a, kNone);
        Path q = detail::parse_path(K, l, b, kNone);
        if (p.src != q.src || p.dst != q.dst) text::Cursor::fail_at(l, n, "cell boundary paths are not parallel");
        if (std::count(K.cell_names.begin(), K.cell_names.end(), n.s)) text::Cursor::fail_at(l, n, "duplicate cell '" + n.s + "'");
        K.cell_names.push_back(n.s);
        K.cell_src.push_back(p);
        K.cell_dst.push_back(q);
      }
  return K;
}

}  // namespace bicat
