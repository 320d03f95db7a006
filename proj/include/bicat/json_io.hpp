#pragma once

// JSON reports and certificates. Entities are written by name so that a
// certificate can be replayed against a freshly loaded presentation.

#include <string>
#include <vector>

#include "bicat/ho.hpp"
#include "bicat/localize.hpp"
#include "bicat/validate.hpp"
#include "json.hpp"

namespace bicat::json_io {

using nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline ordered_json report(const ValidationReport& r) {
  ordered_json out = ordered_json::array();
  for (const auto& v : r.violations) out.push_back({{"axiom", v.axiom}, {"witness", v.witness}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  return out;
}

inline ordered_json atom(const Bicategory& B, const Atom& a) {
  if (a.kind == Atom::Kind::I) return {{"i", B.cell_name(a.mu)}};
  return {{"h", B.arr_name(a.h)}, {"s", B.arr_name(a.s)}, {"d0", B.arr_name(a.d0)}, {"d1", B.arr_name(a.d1)}, {"t", B.cell_name(a.t)}};
}

inline Atom atom_from(const Bicategory& B, const ordered_json& j) {
  if (j.contains("i")) return Atom::I(B.cell(j.at("i").get<std::string>()));
  auto a = [&](const char* k) { return B.arrow(j.at(k).get<std::string>()); };
  return Atom::P(a("h"), a("s"), a("d0"), a("d1"), B.cell(j.at("t").get<std::string>()));
}

inline ordered_json term(const Bicategory& B, const HoTerm& t) {
  if (t.kind == HoTerm::Kind::I) return {{"i", B.cell_name(t.mu)}};
  const Homotopy& H = t.H;
  const Cylinder& C = H.C;
  return {{"cylinder",
           {B.obj_name(C.W), B.obj_name(C.Z), B.arr_name(C.d0), B.arr_name(C.d1), B.arr_name(C.x), B.arr_name(C.s),
            B.cell_name(C.a0), B.cell_name(C.a1)}},
          {"h", B.arr_name(H.h)},
          {"eta", B.cell_name(H.eta)},
          {"eps", B.cell_name(H.eps)}};
}

inline HoTerm term_from(const Bicategory& B, const ordered_json& j) {
  if (j.contains("i")) return HoTerm::I(B.cell(j.at("i").get<std::string>()));
  const auto& c = j.at("cylinder");
  if (!c.is_array() || c.size() != 8) throw Error("json: cylinder needs 8 entries");
  auto s = [&](std::size_t i) { return c.at(i).get<std::string>(); };
  Homotopy H{Cylinder{B.object(s(0)), B.object(s(1)), B.arrow(s(2)), B.arrow(s(3)), B.arrow(s(4)), B.arrow(s(5)), B.cell(s(6)),
                      B.cell(s(7))},
             B.arrow(j.at("h").get<std::string>()), B.cell(j.at("eta").get<std::string>()),
             B.cell(j.at("eps").get<std::string>())};
  return HoTerm::of(H);
}

inline ordered_json hocell(const Bicategory& B, const HoCell& k) {
  ordered_json seq = ordered_json::array();
  for (const auto& t : k.seq) seq.push_back(term(B, t));
  return {{"from", B.arr_name(k.f)}, {"to", B.arr_name(k.g)}, {"seq", seq}};
}

inline HoCell hocell_from(const Bicategory& B, const ordered_json& j) {
  HoCell k{B.arrow(j.at("from").get<std::string>()), B.arrow(j.at("to").get<std::string>()), {}};
  for (const auto& t : j.at("seq")) k.seq.push_back(term_from(B, t));
  check_hocell(B, k);
  return k;
}

// Operand kinds per rule: 'a' arrow, 'c' cell.
inline std::string operand_kinds(Rule r) {
  switch (r) {
    case Rule::SigmaWhisker: return "ac";
    case Rule::Conjugate: return "c";
    case Rule::ExchangeForward:
    case Rule::ExchangeBackward: return "cc";
    default: return "";
  }
}

inline ordered_json step(const Bicategory& B, const Step& s) {
  ordered_json ops = ordered_json::array();
  const std::string kinds = operand_kinds(s.rule);
  for (std::size_t i = 0; i < s.args.size(); ++i)
    ops.push_back(i < kinds.size() && kinds[i] == 'a' ? B.arr_name(s.args[i]) : B.cell_name(s.args[i]));
  ordered_json after = ordered_json::array();
  for (const auto& a : s.after) after.push_back(atom(B, a));
  return {{"rule", rule_name(s.rule)}, {"justification", rule_justification(s.rule)}, {"pos", s.pos},
          {"operands", ops},          {"backward", s.backward},                      {"after", after}};
}

inline Step step_from(const Bicategory& B, const ordered_json& j) {
  Step s;
  const auto r = rule_from_name(j.at("rule").get<std::string>());
  if (!r) throw Error("json: unknown rule '" + j.at("rule").get<std::string>() + "'");
  s.rule = *r;
  s.pos = j.at("pos").get<int>();
  s.backward = j.at("backward").get<bool>();
  const std::string kinds = operand_kinds(s.rule);
  const auto& ops = j.at("operands");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto n = ops.at(i).get<std::string>();
    s.args.push_back(i < kinds.size() && kinds[i] == 'a' ? B.arrow(n) : B.cell(n));
  }
  for (const auto& a : j.at("after")) s.after.push_back(atom_from(B, a));
  return s;
}

// Decompose entries come first, one per homotopy term on either side; they
// record the expansion that replay recomputes.
inline ordered_json derivation(const Bicategory& B, const Derivation& d) {
  ordered_json steps = ordered_json::array();
  for (const auto* side : {&d.lhs, &d.rhs})
    for (std::size_t i = 0; i < side->seq.size(); ++i)
      if (side->seq[i].kind == HoTerm::Kind::H)
        steps.push_back({{"rule", rule_name(Rule::Decompose)},
                         {"justification", rule_justification(Rule::Decompose)},
                         {"side", side == &d.lhs ? "lhs" : "rhs"},
                         {"term", i}});
  for (const auto& s : d.steps) steps.push_back(step(B, s));
  return {{"lhs", hocell(B, d.lhs)}, {"rhs", hocell(B, d.rhs)}, {"steps", steps}};
}

inline Derivation derivation_from(const Bicategory& B, const ordered_json& j) {
  Derivation d{hocell_from(B, j.at("lhs")), hocell_from(B, j.at("rhs")), {}};
  for (const auto& s : j.at("steps"))
    if (s.at("rule").get<std::string>() != rule_name(Rule::Decompose)) d.steps.push_back(step_from(B, s));
  return d;
}

inline ordered_json verdict(const Bicategory& B, const EqVerdict& v, const Bicategory* target = nullptr) {
  ordered_json out{{"verdict", verdict_name(v.kind)}};
  switch (v.kind) {
    case EqVerdict::Kind::Equal: out["derivation"] = derivation(B, v.derivation); break;
    case EqVerdict::Kind::Distinct:
      out["probe"] = v.probe;
      out["lhs_value"] = target ? target->cell_name(v.lhs_value) : std::to_string(v.lhs_value);
      out["rhs_value"] = target ? target->cell_name(v.rhs_value) : std::to_string(v.rhs_value);
      break;
    case EqVerdict::Kind::Unknown: out["explored"] = v.explored; break;
  }
  return out;
}

inline ordered_json certificate(const Bicategory& B, const LocalizationCertificate& c) {
  ordered_json out{{"schema_version", kSchemaVersion}, {"complete", c.complete()}};
  ordered_json tft{{"ok", c.three_for_two.ok()}, {"violations", ordered_json::array()}};
  for (const auto& v : c.three_for_two.violations)
    tft["violations"].push_back({{"g", B.arr_name(v.g)},
                                 {"f", B.arr_name(v.f)},
                                 {"h", B.arr_name(v.h)},
                                 {"cell", B.cell_name(v.cell)},
                                 {"missing", B.arr_name(v.missing)}});
  out["three_for_two"] = tft;
  ordered_json dec = ordered_json::array();
  for (const auto& [f, d] : c.decompositions) {
    ordered_json chain = ordered_json::array();
    for (ArrId a : d.chain) chain.push_back(B.arr_name(a));
    dec.push_back({{"arrow", B.arr_name(f)}, {"chain", chain}, {"cell", B.cell_name(d.cell)}});
  }
  out["decompositions"] = dec;
  ordered_json eqs = ordered_json::array();
  for (const auto& e : c.equivalences) {
    ordered_json checks = ordered_json::array();
    for (const auto& v : e.checks) checks.push_back(verdict(B, v));
    eqs.push_back({{"arrow", B.arr_name(e.f)},
                   {"quasiinverse", B.arr_name(e.q)},
                   {"unit", hocell(B, e.unit)},
                   {"unit_inverse", hocell(B, e.unit_inv)},
                   {"counit", hocell(B, e.counit)},
                   {"counit_inverse", hocell(B, e.counit_inv)},
                   {"checks", checks}});
  }
  out["equivalences"] = eqs;
  ordered_json ifun = ordered_json::array();
  for (const auto& x : c.i_functoriality) {
    ordered_json v = verdict(B, x.verdict);
    ifun.push_back({{"kind", x.kind}, {"witness", x.witness}, {"result", v}});
  }
  out["i_functoriality"] = ifun;
  out["probes_used"] = c.probes_used;
  out["errors"] = c.errors;
  return out;
}

// Replays every Equal derivation in a certificate and re-checks that the
// recorded check sides are built from the recorded witnesses. Returns the
// list of failures.
inline std::vector<std::string> replay_certificate(const HoRewriter& R, const ordered_json& cert) {
  const Bicategory& B = R.bicat();
  std::vector<std::string> errs;
  if (!cert.contains("schema_version") || cert.at("schema_version").get<int>() != kSchemaVersion)
    return {"unsupported schema_version"};
  auto check_result = [&](const std::string& where, const ordered_json& v, const HoCell* lhs, const HoCell* rhs) {
    if (v.at("verdict").get<std::string>() != verdict_name(EqVerdict::Kind::Equal)) {
      errs.push_back(where + ": verdict is " + v.at("verdict").get<std::string>());
      return;
    }
    const Derivation d = derivation_from(B, v.at("derivation"));
    if (lhs && !(d.lhs == *lhs)) errs.push_back(where + ": left side does not match the witness");
    if (rhs && !(d.rhs == *rhs)) errs.push_back(where + ": right side does not match the witness");
    if (auto e = replay(R, d); !e.empty()) errs.push_back(where + ": " + e);
  };
  try {
    for (const auto& e : cert.at("equivalences")) {
      const std::string name = e.at("arrow").get<std::string>();
      const ArrId f = B.arrow(name), q = B.arrow(e.at("quasiinverse").get<std::string>());
      const HoCell u = hocell_from(B, e.at("unit")), ui = hocell_from(B, e.at("unit_inverse"));
      const HoCell c = hocell_from(B, e.at("counit")), ci = hocell_from(B, e.at("counit_inverse"));
      const ArrId qf = B.comp(q, f), fq = B.comp(f, q);
      if (u.f != qf || u.g != B.id_arrow(B.src(f)) || c.f != fq || c.g != B.id_arrow(B.dst(f)))
        errs.push_back(name + ": witness boundaries are wrong");
      const auto& checks = e.at("checks");
      if (checks.size() != 4) {
        errs.push_back(name + ": expected 4 checks");
        continue;
      }
      const HoCell l[4] = {ho_vcomp(ui, u), ho_vcomp(u, ui), ho_vcomp(ci, c), ho_vcomp(c, ci)};
      const HoCell r[4] = {ho_identity(qf), ho_identity(u.g), ho_identity(fq), ho_identity(c.g)};
      for (std::size_t i = 0; i < 4; ++i) check_result(name + " check " + std::to_string(i), checks.at(i), &l[i], &r[i]);
    }
    for (const auto& x : cert.at("i_functoriality"))
      check_result(x.at("kind").get<std::string>() + " " + x.at("witness").get<std::string>(), x.at("result"), nullptr, nullptr);
  } catch (const std::exception& e) {
    errs.push_back(std::string("malformed certificate: ") + e.what());
  }
  return errs;
}

}  // namespace bicat::json_io
