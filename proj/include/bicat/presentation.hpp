#pragma once

// Line-oriented text presentations of bicategories and pseudofunctors.
//
//   objects: X, Y
//   arrows:
//     s : X -> Y
//   compose:
//     r . s = id_X
//   cells:
//     a : f => g
//   vcomp:      b . a = c
//   lwhisk:     g * a = c
//   rwhisk:     a * f = c
//   unitors:    lambda f = c   /   rho f = c
//   assoc:      h . g . f = c
//   strict true
//   sigma: s, r
//
// Identity arrows are named id_X and identity cells 1_f unless declared.  An
// arrow name in a cell position denotes its identity cell.  Composites with
// identities, vertical composites with identity cells and whiskers of identity
// cells are filled in when absent; strict presentations also get identity
// whiskers, unitors and associators.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bicat/core.hpp"
#include "bicat/pseudofunctor.hpp"

namespace bicat {

struct ParseError : Error {
  ParseError(int line, int col, const std::string& msg)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg), line(line), col(col) {}
  // Keeps line and column but replaces the message.
  ParseError(const ParseError& e, const std::string& prefix) : Error(prefix + e.what()), line(e.line), col(e.col) {}
  int line;
  int col;
};

namespace text {

struct Token {
  std::string s;
  int col = 0;  // 1-based
  bool sym = false;
};

struct Line {
  int no = 0;
  std::vector<Token> toks;
};

inline bool is_sym_char(char c) {
  return c == '.' || c == '*' || c == '=' || c == ',' || c == ':' || c == '(' || c == ')' || c == ';';
}

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    if ((c == '-' || c == '=') && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({std::string(s.substr(i, 2)), col, true});
      i += 2;
      continue;
    }
    if (is_sym_char(c)) {
      out.push_back({std::string(1, c), col, true});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && !is_sym_char(s[j]) && s[j] != '#' &&
           !(s[j] == '-' && j + 1 < s.size() && s[j + 1] == '>'))
      ++j;
    out.push_back({std::string(s.substr(i, j - i)), col, false});
    i = j;
  }
  return out;
}

inline std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto toks = tokenize(raw);
    if (!toks.empty()) out.push_back({no, std::move(toks)});
  }
  return out;
}

// Cursor over one line's tokens with typed expectations.
class Cursor {
 public:
  explicit Cursor(const Line& l, std::size_t start = 0) : l_(l), i_(start) {}

  bool done() const { return i_ >= l_.toks.size(); }
  const Token& peek() const { return done() ? end_token() : l_.toks[i_]; }
  bool at_sym(std::string_view s) const { return !done() && l_.toks[i_].sym && l_.toks[i_].s == s; }
  bool accept(std::string_view s) {
    if (!at_sym(s)) return false;
    ++i_;
    return true;
  }
  const Token& name() {
    if (done() || l_.toks[i_].sym) fail("expected a name");
    return l_.toks[i_++];
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }
  void finish() {
    if (!done()) fail("unexpected '" + peek().s + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(l_.no, col(), msg); }
  [[noreturn]] static void fail_at(const Line& l, const Token& t, const std::string& msg) {
    throw ParseError(l.no, t.col, msg);
  }
  int col() const {
    if (!done()) return l_.toks[i_].col;
    if (l_.toks.empty()) return 1;
    const Token& t = l_.toks.back();
    return t.col + static_cast<int>(t.s.size());
  }
  const Line& line() const { return l_; }

 private:
  static const Token& end_token() {
    static const Token t{"end of line", 0, true};
    return t;
  }
  const Line& l_;
  std::size_t i_;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Line> body;
  Line header_rest;  // tokens after "name:" on the header line
};

// Groups lines under known section headers.  A standalone "strict true|false"
// line is returned as a pseudo-section named "strict".
inline std::vector<Section> sections(const std::vector<Line>& lines, const std::set<std::string>& known) {
  std::vector<Section> out;
  for (const Line& l : lines) {
    const auto& t = l.toks;
    if (!t[0].sym && t[0].s == "strict" && known.count("strict")) {
      Section s{"strict", l.no, {}, {l.no, {t.begin() + 1, t.end()}}};
      out.push_back(std::move(s));
      out.push_back({"", l.no, {}, {}});
      continue;
    }
    if (t.size() >= 2 && !t[0].sym && known.count(t[0].s) && t[1].sym && t[1].s == ":") {
      out.push_back({t[0].s, l.no, {}, {l.no, {t.begin() + 2, t.end()}}});
      continue;
    }
    if (out.empty() || out.back().name.empty()) throw ParseError(l.no, t[0].col, "line outside of any section");
    out.back().body.push_back(l);
  }
  return out;
}

// Names separated by commas and/or whitespace across the header remainder and
// the body of a list section.
inline std::vector<std::pair<Line, Token>> list_items(const Section& s) {
  std::vector<std::pair<Line, Token>> out;
  auto take = [&](const Line& l) {
    for (const Token& t : l.toks) {
      if (t.sym && t.s == ",") continue;
      if (t.sym) Cursor::fail_at(l, t, "expected a name");
      out.emplace_back(l, t);
    }
  };
  take(s.header_rest);
  for (const Line& l : s.body) take(l);
  return out;
}

}  // namespace text

namespace detail {

class PresentationLoader {
 public:
  explicit PresentationLoader(const std::string& src) : lines_(text::split_lines(src)) {}

  Bicategory load() {
    const auto secs = text::sections(lines_, {"objects", "arrows", "compose", "cells", "vcomp", "lwhisk", "rwhisk",
                                             "unitors", "assoc", "strict", "sigma"});
    for (const auto& s : secs)
      if (s.name == "strict") parse_strict(s);
    for (const auto& s : secs)
      if (s.name == "objects") parse_objects(s);
    for (const auto& s : secs)
      if (s.name == "arrows") parse_arrows(s);
    add_identity_arrows();
    for (const auto& s : secs)
      if (s.name == "cells") parse_cells(s);
    add_identity_cells();
    b_.allocate_tables();
    for (ObjId x = 0; x < b_.num_objects(); ++x) b_.id1[static_cast<std::size_t>(x)] = id_arr_[static_cast<std::size_t>(x)];
    for (ArrId f = 0; f < b_.num_arrows(); ++f) b_.idc[static_cast<std::size_t>(f)] = id_cell_[static_cast<std::size_t>(f)];
    for (const auto& s : secs) {
      if (s.name == "compose") parse_compose(s);
      else if (s.name == "vcomp") parse_vcomp(s);
      else if (s.name == "lwhisk") parse_lwhisk(s);
      else if (s.name == "rwhisk") parse_rwhisk(s);
      else if (s.name == "unitors") parse_unitors(s);
      else if (s.name == "assoc") parse_assoc(s);
      else if (s.name == "sigma") parse_sigma(s);
    }
    if (std::none_of(secs.begin(), secs.end(), [](const auto& s) { return s.name == "sigma"; }))
      for (ObjId x = 0; x < b_.num_objects(); ++x) b_.sigma.push_back(b_.id_arrow(x));
    fill_defaults();
    return std::move(b_);
  }

 private:
  using Line = text::Line;
  using Token = text::Token;
  using Cursor = text::Cursor;

  [[noreturn]] static void fail(const Line& l, const Token& t, const std::string& m) { Cursor::fail_at(l, t, m); }

  void parse_strict(const text::Section& s) {
    Cursor c(s.header_rest);
    const Token& v = c.name();
    if (v.s == "true") b_.strict = true;
    else if (v.s == "false") b_.strict = false;
    else fail(s.header_rest, v, "expected true or false");
    c.finish();
  }

  void parse_objects(const text::Section& s) {
    for (const auto& [l, t] : text::list_items(s)) {
      if (obj_.count(t.s)) fail(l, t, "duplicate object '" + t.s + "'");
      obj_[t.s] = b_.num_objects();
      b_.obj_names.push_back(t.s);
    }
  }

  ObjId object(const Line& l, const Token& t) const {
    auto it = obj_.find(t.s);
    if (it == obj_.end()) fail(l, t, "dangling reference to object '" + t.s + "'");
    return it->second;
  }
  ArrId arrow(const Line& l, const Token& t) const {
    auto it = arr_.find(t.s);
    if (it == arr_.end()) fail(l, t, "dangling reference to arrow '" + t.s + "'");
    return it->second;
  }
  CellId cell(const Line& l, const Token& t) const {
    auto it = cell_.find(t.s);
    if (it != cell_.end()) return it->second;
    auto a = arr_.find(t.s);
    if (a != arr_.end()) return id_cell_[static_cast<std::size_t>(a->second)];
    fail(l, t, "dangling reference to cell '" + t.s + "'");
  }

  void declare_arrow(const std::string& n, ObjId x, ObjId y) {
    arr_[n] = b_.num_arrows();
    b_.arr_names.push_back(n);
    b_.arr_src.push_back(x);
    b_.arr_dst.push_back(y);
  }
  void declare_cell(const std::string& n, ArrId f, ArrId g) {
    cell_[n] = b_.num_cells();
    b_.cell_names.push_back(n);
    b_.cell_src.push_back(f);
    b_.cell_dst.push_back(g);
  }

  void parse_arrows(const text::Section& s) {
    for (const Line& l : s.body) {
      Cursor c(l);
      const Token& n = c.name();
      c.expect(":");
      const ObjId x = object(l, c.name());
      c.expect("->");
      const ObjId y = object(l, c.name());
      c.finish();
      if (arr_.count(n.s)) fail(l, n, "duplicate arrow '" + n.s + "'");
      declare_arrow(n.s, x, y);
    }
  }

  void add_identity_arrows() {
    for (ObjId x = 0; x < b_.num_objects(); ++x) {
      const std::string n = "id_" + b_.obj_names[static_cast<std::size_t>(x)];
      auto it = arr_.find(n);
      if (it == arr_.end()) {
        declare_arrow(n, x, x);
        id_arr_.push_back(b_.num_arrows() - 1);
      } else {
        if (b_.src(it->second) != x || b_.dst(it->second) != x)
          throw ParseError(0, 0, "arrow '" + n + "' must be an endo-arrow of " + b_.obj_names[static_cast<std::size_t>(x)]);
        id_arr_.push_back(it->second);
      }
    }
  }

  void parse_cells(const text::Section& s) {
    for (const Line& l : s.body) {
      Cursor c(l);
      const Token& n = c.name();
      c.expect(":");
      const Token& ft = c.name();
      const ArrId f = arrow(l, ft);
      c.expect("=>");
      const Token& gt = c.name();
      const ArrId g = arrow(l, gt);
      c.finish();
      if (cell_.count(n.s)) fail(l, n, "duplicate cell '" + n.s + "'");
      if (b_.src(f) != b_.src(g) || b_.dst(f) != b_.dst(g)) fail(l, gt, "cell boundary arrows are not parallel");
      declare_cell(n.s, f, g);
    }
  }

  void add_identity_cells() {
    const int nA = b_.num_arrows();
    for (ArrId f = 0; f < nA; ++f) {
      const std::string n = "1_" + b_.arr_names[static_cast<std::size_t>(f)];
      auto it = cell_.find(n);
      if (it == cell_.end()) {
        declare_cell(n, f, f);
        id_cell_.push_back(b_.num_cells() - 1);
      } else {
        if (b_.csrc(it->second) != f || b_.cdst(it->second) != f)
          throw ParseError(0, 0, "cell '" + n + "' must be an endo-cell of " + b_.arr_names[static_cast<std::size_t>(f)]);
        id_cell_.push_back(it->second);
      }
    }
    b_.reindex();
  }

  // g . f = h
  void parse_compose(const text::Section& s) {
    for (const Line& l : s.body) {
      Cursor c(l);
      std::vector<std::pair<ArrId, const Token*>> chain;
      do {
        const Token& t = c.name();
        chain.emplace_back(arrow(l, t), &t);
      } while (c.accept("."));
      c.expect("=");
      const Token& ht = c.name();
      const ArrId h = arrow(l, ht);
      c.finish();
      if (chain.size() != 2) fail(l, *chain.front().second, "compose entries take exactly two arrows");
      const ArrId g = chain[0].first, f = chain[1].first;
      if (b_.dst(f) != b_.src(g)) fail(l, *chain[0].second, "arrows are not composable");
      if (b_.src(h) != b_.src(f) || b_.dst(h) != b_.dst(g)) fail(l, ht, "composite has the wrong boundary");
      if (b_.comp(g, f) != kNone && b_.comp(g, f) != h) fail(l, ht, "conflicting composite");
      b_.set_comp(g, f, h);
    }
  }

  // b . a = c
  void parse_vcomp(const text::Section& s) {
    for (const Line& l : s.body) {
      Cursor c(l);
      const Token& bt = c.name();
      const CellId b = cell(l, bt);
      c.expect(".");
      const Token& at = c.name();
      const CellId a = cell(l, at);
      c.expect("=");
      const Token& rt = c.name();
      const CellId r = cell(l, rt);
      c.finish();
      if (b_.cdst(a) != b_.csrc(b)) fail(l, bt, "cells are not vertically composable");
      if (b_.vc(b, a) != kNone && b_.vc(b, a) != r) fail(l, rt, "conflicting vertical composite");
      b_.set_vc(b, a, r);
    }
  }

  // g * a = c
  void parse_lwhisk(const text::Section& s) {
    for (const Line& l : s.body) {
      Cursor c(l);
      const Token& gt = c.name();
      const ArrId g = arrow(l, gt);
      c.expect("*");
      const Token& at = c.name();
      const CellId a = cell(l, at);
      c.expect("=");
      const Token& rt = c.name();
      const CellId r = cell(l, rt);
      c.finish();
      if (b_.dst(b_.csrc(a)) != b_.src(g)) fail(l, gt, "arrow and cell are not composable");
      if (b_.lw(g, a) != kNone && b_.lw(g, a) != r) fail(l, rt, "conflicting whisker");
      b_.set_lw(g, a, r);
    }
  }

  // a * f = c
  void parse_rwhisk(const text::Section& s) {
    for (const Line& l : s.body) {
      Cursor c(l);
      const Token& at = c.name();
      const CellId a = cell(l, at);
      c.expect("*");
      const Token& ft = c.name();
      const ArrId f = arrow(l, ft);
      c.expect("=");
      const Token& rt = c.name();
      const CellId r = cell(l, rt);
      c.finish();
      if (b_.dst(f) != b_.src(b_.csrc(a))) fail(l, ft, "cell and arrow are not composable");
      if (b_.rw(a, f) != kNone && b_.rw(a, f) != r) fail(l, rt, "conflicting whisker");
      b_.set_rw(a, f, r);
    }
  }

  // lambda f = c | rho f = c
  void parse_unitors(const text::Section& s) {
    for (const Line& l : s.body) {
      Cursor c(l);
      const Token& kind = c.name();
      if (kind.s != "lambda" && kind.s != "rho") fail(l, kind, "expected lambda or rho");
      const ArrId f = arrow(l, c.name());
      c.expect("=");
      const CellId r = cell(l, c.name());
      c.finish();
      auto& tab = kind.s == "lambda" ? b_.lunitor : b_.runitor;
      tab[static_cast<std::size_t>(f)] = r;
    }
  }

  // h . g . f = c
  void parse_assoc(const text::Section& s) {
    for (const Line& l : s.body) {
      Cursor c(l);
      std::vector<ArrId> chain;
      const Token& first = c.peek();
      do chain.push_back(arrow(l, c.name()));
      while (c.accept("."));
      c.expect("=");
      const CellId r = cell(l, c.name());
      c.finish();
      if (chain.size() != 3) fail(l, first, "assoc entries take exactly three arrows");
      if (b_.dst(chain[2]) != b_.src(chain[1]) || b_.dst(chain[1]) != b_.src(chain[0]))
        fail(l, first, "arrows are not composable");
      b_.assoc[{chain[0], chain[1], chain[2]}] = r;
    }
  }

  void parse_sigma(const text::Section& s) {
    for (const auto& [l, t] : text::list_items(s)) {
      const ArrId f = arrow(l, t);
      if (std::find(b_.sigma.begin(), b_.sigma.end(), f) == b_.sigma.end()) b_.sigma.push_back(f);
    }
  }

  void fill_defaults() {
    const int nA = b_.num_arrows(), nC = b_.num_cells();
    if (b_.strict) {
      for (ArrId f = 0; f < nA; ++f) {
        const ArrId idX = b_.id_arrow(b_.src(f)), idY = b_.id_arrow(b_.dst(f));
        if (b_.comp(f, idX) == kNone) b_.set_comp(f, idX, f);
        if (b_.comp(idY, f) == kNone) b_.set_comp(idY, f, f);
      }
    }
    for (CellId a = 0; a < nC; ++a) {
      const CellId ia = b_.id_cell(b_.csrc(a)), ib = b_.id_cell(b_.cdst(a));
      if (b_.vc(a, ia) == kNone) b_.set_vc(a, ia, a);
      if (b_.vc(ib, a) == kNone) b_.set_vc(ib, a, a);
    }
    for (ArrId g = 0; g < nA; ++g)
      for (ArrId f = 0; f < nA; ++f) {
        if (b_.dst(f) != b_.src(g)) continue;
        const ArrId gf = b_.comp(g, f);
        if (gf == kNone) continue;
        const CellId igf = b_.id_cell(gf);
        if (b_.lw(g, b_.id_cell(f)) == kNone) b_.set_lw(g, b_.id_cell(f), igf);
        if (b_.rw(b_.id_cell(g), f) == kNone) b_.set_rw(b_.id_cell(g), f, igf);
      }
    if (!b_.strict) return;
    for (CellId a = 0; a < nC; ++a) {
      const ArrId f = b_.csrc(a);
      const ArrId idX = b_.id_arrow(b_.src(f)), idY = b_.id_arrow(b_.dst(f));
      if (b_.lw(idY, a) == kNone) b_.set_lw(idY, a, a);
      if (b_.rw(a, idX) == kNone) b_.set_rw(a, idX, a);
    }
    for (ArrId f = 0; f < nA; ++f) {
      if (b_.lunitor[static_cast<std::size_t>(f)] == kNone) b_.lunitor[static_cast<std::size_t>(f)] = b_.id_cell(f);
      if (b_.runitor[static_cast<std::size_t>(f)] == kNone) b_.runitor[static_cast<std::size_t>(f)] = b_.id_cell(f);
    }
    for (ArrId h = 0; h < nA; ++h)
      for (ArrId g = 0; g < nA; ++g) {
        if (b_.dst(g) != b_.src(h)) continue;
        for (ArrId f = 0; f < nA; ++f) {
          if (b_.dst(f) != b_.src(g) || b_.assoc.count({h, g, f})) continue;
          const ArrId l = b_.comp(h, b_.comp(g, f));
          if (l != kNone && l == b_.comp(b_.comp(h, g), f)) b_.assoc[{h, g, f}] = b_.id_cell(l);
        }
      }
  }

  std::vector<Line> lines_;
  Bicategory b_;
  std::map<std::string, int> obj_, arr_, cell_;
  std::vector<ArrId> id_arr_;
  std::vector<CellId> id_cell_;
};

class FunctorLoader {
 public:
  FunctorLoader(const std::string& src, BicatPtr source, BicatPtr target)
      : lines_(text::split_lines(src)), C_(std::move(source)), D_(std::move(target)) {}

  PseudofunctorData load() {
    PseudofunctorData F;
    F.source = C_;
    F.target = D_;
    F.obj_map.assign(static_cast<std::size_t>(C_->num_objects()), kNone);
    F.arr_map.assign(static_cast<std::size_t>(C_->num_arrows()), kNone);
    F.cell_map.assign(static_cast<std::size_t>(C_->num_cells()), kNone);
    const auto secs = text::sections(lines_, {"map_obj", "map_arr", "map_cell", "xi", "phi"});
    for (const auto& s : secs) {
      for (const Line& l : s.body) {
        Cursor c(l);
        if (s.name == "map_obj") {
          const Token& t = c.name();
          set_once(F.obj_map, l, t, find(l, t, &Bicategory::find_object, *C_, "object"), arrow_rhs(c, l, &Bicategory::find_object, "object"));
        } else if (s.name == "map_arr") {
          const Token& t = c.name();
          set_once(F.arr_map, l, t, find(l, t, &Bicategory::find_arrow, *C_, "arrow"), arrow_rhs(c, l, &Bicategory::find_arrow, "arrow"));
        } else if (s.name == "map_cell") {
          const Token& t = c.name();
          const CellId a = source_cell(l, t);
          c.expect("->");
          set_once(F.cell_map, l, t, a, target_cell(l, c.name()));
        } else if (s.name == "xi") {
          const Token& t = c.name();
          const ObjId x = find(l, t, &Bicategory::find_object, *C_, "object");
          c.expect("=");
          F.xi.resize(static_cast<std::size_t>(C_->num_objects()), kNone);
          set_once(F.xi, l, t, x, target_cell(l, c.name()));
        } else if (s.name == "phi") {
          const Token& gt = c.name();
          const ArrId g = find(l, gt, &Bicategory::find_arrow, *C_, "arrow");
          c.expect(".");
          const ArrId f = find(l, c.name(), &Bicategory::find_arrow, *C_, "arrow");
          c.expect("=");
          const CellId v = target_cell(l, c.name());
          if (C_->dst(f) != C_->src(g)) Cursor::fail_at(l, gt, "arrows are not composable");
          if (F.phi.count({g, f})) Cursor::fail_at(l, gt, "duplicate phi entry");
          F.phi[{g, f}] = v;
        } else {
          Cursor::fail_at(l, l.toks[0], "unexpected section");
        }
        c.finish();
      }
    }
    // Unlisted identities go to identities.
    for (ObjId x = 0; x < C_->num_objects(); ++x) {
      auto& m = F.arr_map[static_cast<std::size_t>(C_->id_arrow(x))];
      if (m == kNone && F.obj(x) != kNone) m = D_->id_arrow(F.obj(x));
    }
    for (ArrId f = 0; f < C_->num_arrows(); ++f) {
      auto& m = F.cell_map[static_cast<std::size_t>(C_->id_cell(f))];
      if (m == kNone && F.arr(f) != kNone) m = D_->id_cell(F.arr(f));
    }
    fill_identity_structure(F);
    return F;
  }

 private:
  using Line = text::Line;
  using Token = text::Token;
  using Cursor = text::Cursor;
  using Finder = std::optional<int> (Bicategory::*)(const std::string&) const;

  static int find(const Line& l, const Token& t, Finder fn, const Bicategory& b, const char* what) {
    auto r = (b.*fn)(t.s);
    if (!r) Cursor::fail_at(l, t, std::string("dangling reference to ") + what + " '" + t.s + "'");
    return *r;
  }
  int arrow_rhs(Cursor& c, const Line& l, Finder fn, const char* what) const {
    c.expect("->");
    return find(l, c.name(), fn, *D_, what);
  }
  static CellId resolve_cell(const Line& l, const Token& t, const Bicategory& b) {
    if (auto c = b.find_cell(t.s)) return *c;
    if (auto a = b.find_arrow(t.s)) return b.id_cell(*a);
    Cursor::fail_at(l, t, "dangling reference to cell '" + t.s + "'");
  }
  CellId source_cell(const Line& l, const Token& t) const { return resolve_cell(l, t, *C_); }
  CellId target_cell(const Line& l, const Token& t) const { return resolve_cell(l, t, *D_); }
  static void set_once(std::vector<int>& v, const Line& l, const Token& t, int key, int val) {
    auto& slot = v[static_cast<std::size_t>(key)];
    if (slot != kNone) Cursor::fail_at(l, t, "duplicate entry for '" + t.s + "'");
    slot = val;
  }

  std::vector<Line> lines_;
  BicatPtr C_, D_;
};

}  // namespace detail

inline Bicategory load_presentation(const std::string& text) { return detail::PresentationLoader(text).load(); }

inline PseudofunctorData load_pseudofunctor(const std::string& text, BicatPtr source, BicatPtr target) {
  return detail::FunctorLoader(text, std::move(source), std::move(target)).load();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline BicatPtr load_presentation_file(const std::string& path) {
  try {
    return std::make_shared<const Bicategory>(load_presentation(read_file(path)));
  } catch (const ParseError& e) {
    throw ParseError(e, path + ": ");
  }
}

}  // namespace bicat
