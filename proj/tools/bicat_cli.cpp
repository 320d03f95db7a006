// bicat_cli: batch front end for presentations, Σ checks, localization,
// Ho equality, hat values, extensions and elevator diagrams.
//
// Exit status: 0 ok / Equal, 1 violations / Distinct, 2 Unknown, 3 usage or
// input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bicat/elevator.hpp"
#include "bicat/enumerate.hpp"
#include "bicat/extension.hpp"
#include "bicat/ho.hpp"
#include "bicat/homotopy.hpp"
#include "bicat/json_io.hpp"
#include "bicat/localize.hpp"
#include "bicat/presentation.hpp"
#include "bicat/sigma.hpp"
#include "bicat/validate.hpp"

using namespace bicat;
using json_io::ordered_json;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUnknown = 2, kUsage = 3 };

struct Config {
  std::string input, second, third, fourth;
  std::string sigma, probes, format = "text", replay, out, functor, target, homotopies;
  int max_len = 4;
  int budget = kDefaultBudget;
  bool no_self = false;
};

struct Output {
  ordered_json json;
  std::string text;
  int status = kOk;
};

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

SigmaClass sigma_of(const BicatPtr& B, const Config& c) {
  return c.sigma.empty() ? SigmaClass::of(B) : SigmaClass::by_names(B, split_names(c.sigma));
}

std::string probe_dir(const Config& c) {
  if (!c.probes.empty()) return c.probes;
  if (const char* e = std::getenv("BICAT_PROBE_DIR")) return e;
  return "";
}

// Library targets in file order, then the source itself.
ProbeSet probes_for(const SigmaClass& S, const Config& c) {
  std::vector<Target> targets;
  if (auto d = probe_dir(c); !d.empty()) targets = load_targets(d);
  if (!c.no_self) targets.push_back({"self", S.ptr()});
  return build_probes(S, targets);
}

std::string names_of(const Bicategory& B, const std::vector<ArrId>& fs) {
  std::string s;
  for (ArrId f : fs) s += (s.empty() ? "" : ", ") + B.arr_name(f);
  return s;
}

std::string report_text(const ValidationReport& r) {
  if (r.ok()) return "ok\n";
  std::string s;
  for (const auto& v : r.violations) s += v.axiom + ": " + v.witness + " (" + v.lhs + " vs " + v.rhs + ")\n";
  return s;
}

struct Functor {
  BicatPtr target;
  PseudofunctorData F;
};

std::optional<Functor> functor_of(const BicatPtr& B, const Config& c) {
  if (c.functor.empty() && c.target.empty()) return std::nullopt;
  if (c.functor.empty() || c.target.empty()) throw Error("--functor and --target go together");
  auto T = load_presentation_file(c.target);
  return Functor{T, load_pseudofunctor(read_file(c.functor), B, T)};
}

// Terms separated by '.', outermost first: a homotopy name (optionally with
// ^-1), a cell name for i(cell), or an arrow name for its identity class.
HoCell parse_hocell(const Bicategory& B, const HomotopyLibrary& L, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '.')) {
    const auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw Error("empty term in '" + text + "'");
    parts.push_back(item.substr(a, b - a + 1));
  }
  std::optional<HoCell> acc;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    std::string n = *it;
    bool inv = false;
    if (n.size() > 3 && n.compare(n.size() - 3, 3, "^-1") == 0) {
      inv = true;
      n.resize(n.size() - 3);
    }
    HoCell k;
    if (auto h = L.homotopies.find(n); h != L.homotopies.end()) {
      k = ho_single(B, inv ? invert(B, h->second) : h->second);
    } else if (inv) {
      throw Error("'" + n + "' is not a homotopy");
    } else if (auto c = B.find_cell(n)) {
      k = i_cell(B, *c);
    } else if (auto f = B.find_arrow(n)) {
      k = ho_identity(*f);
    } else {
      throw Error("unknown term '" + n + "'");
    }
    acc = acc ? ho_vcomp(k, *acc) : k;
  }
  if (!acc) throw Error("empty class expression");
  return *acc;
}

std::string hocell_text(const Bicategory& B, const HoCell& k) {
  std::string s = "[";
  for (std::size_t i = k.seq.size(); i-- > 0;) {
    const HoTerm& t = k.seq[i];
    s += t.kind == HoTerm::Kind::I ? "I(" + B.cell_name(t.mu) + ")" : "H(" + B.arr_name(t.H.h) + "; " + B.arr_name(t.H.C.s) + ")";
    if (i) s += ", ";
  }
  return s + "] : " + B.arr_name(k.f) + " => " + B.arr_name(k.g);
}

std::string atoms_text(const Bicategory& B, const AtomSeq& q) {
  std::string s;
  for (std::size_t i = q.size(); i-- > 0;) {
    const Atom& a = q[i];
    s += a.kind == Atom::Kind::I ? "I(" + B.cell_name(a.mu) + ")"
                                 : B.arr_name(a.h) + "*H(" + B.arr_name(a.s) + "; " + B.arr_name(a.d0) + ", " +
                                       B.arr_name(a.d1) + "; " + B.cell_name(a.t) + ")";
    if (i) s += ", ";
  }
  return "[" + s + "]";
}

std::string derivation_text(const Bicategory& B, const Derivation& d) {
  std::string s;
  for (const auto* side : {&d.lhs, &d.rhs})
    for (std::size_t i = 0; i < side->seq.size(); ++i)
      if (side->seq[i].kind == HoTerm::Kind::H)
        s += std::string("  decompose ") + (side == &d.lhs ? "lhs" : "rhs") + " term " + std::to_string(i) + "  -- " +
             rule_justification(Rule::Decompose) + "\n";
  for (const auto& st : d.steps)
    s += std::string("  ") + rule_name(st.rule) + (st.backward ? " (reversed)" : "") + " at " + std::to_string(st.pos) + " -> " +
         atoms_text(B, st.after) + "  -- " + rule_justification(st.rule) + "\n";
  return s;
}

Output cmd_validate(const Config& c) {
  auto B = load_presentation_file(c.input);
  Output o;
  const auto r = validate_bicategory(*B);
  o.json = {{"schema_version", json_io::kSchemaVersion}, {"bicategory", json_io::report(r)}};
  o.text = "bicategory: " + report_text(r);
  bool ok = r.ok();
  if (auto F = functor_of(B, c)) {
    const auto rf = validate_pseudofunctor(F->F);
    o.json["pseudofunctor"] = json_io::report(rf);
    o.text += "pseudofunctor: " + report_text(rf);
    ok = ok && rf.ok();
  }
  o.status = ok ? kOk : kViolation;
  return o;
}

Output cmd_sigma_check(const Config& c) {
  if (c.max_len < 1) throw Error("--max-len must be at least 1");
  auto B = load_presentation_file(c.input);
  const auto S = sigma_of(B, c);
  Output o;
  const auto tft = check_three_for_two(S);
  ordered_json j{{"schema_version", json_io::kSchemaVersion}, {"sigma", ordered_json::array()}};
  for (ArrId f : S.members()) j["sigma"].push_back(B->arr_name(f));
  ordered_json v = ordered_json::array();
  o.text = "sigma: " + names_of(*B, S.members()) + "\n3-for-2: " + (tft.ok() ? "ok" : "fails") + "\n";
  for (const auto& x : tft.violations) {
    v.push_back({{"g", B->arr_name(x.g)}, {"f", B->arr_name(x.f)}, {"h", B->arr_name(x.h)}, {"missing", B->arr_name(x.missing)}});
    o.text += "  " + B->arr_name(x.g) + " . " + B->arr_name(x.f) + " ~ " + B->arr_name(x.h) + ", missing " + B->arr_name(x.missing) + "\n";
  }
  j["three_for_two"] = {{"ok", tft.ok()}, {"violations", v}};
  ordered_json rows = ordered_json::array();
  o.text += "w-split table:\n";
  bool all = tft.ok();
  for (ArrId f : S.members()) {
    const auto ws = find_w_split(*B, f);
    const auto d = w_split_decompose(S, f, c.max_len);
    ordered_json row{{"arrow", B->arr_name(f)},
                     {"w_section", ws && ws->section()},
                     {"w_retraction", ws && ws->retraction()},
                     {"decomposition", d ? ordered_json::array() : ordered_json(nullptr)}};
    if (d)
      for (ArrId a : d->chain) row["decomposition"].push_back(B->arr_name(a));
    rows.push_back(row);
    o.text += "  " + B->arr_name(f) + ": section " + (ws && ws->section() ? "yes" : "no") + ", retraction " +
              (ws && ws->retraction() ? "yes" : "no") + ", decomposition " + (d ? names_of(*B, d->chain) : "none") + "\n";
    all = all && d;
  }
  j["w_split"] = rows;
  o.json = j;
  o.status = all ? kOk : kViolation;
  return o;
}

Output cmd_localize(const Config& c) {
  if (c.max_len < 1) throw Error("--max-len must be at least 1");
  if (c.budget < 1) throw Error("--budget must be at least 1");
  auto B = load_presentation_file(c.input);
  const auto S = sigma_of(B, c);
  Output o;
  if (!c.replay.empty()) {
    const auto cert = ordered_json::parse(read_file(c.replay));
    const HoRewriter R(S);
    const auto errs = json_io::replay_certificate(R, cert);
    o.json = {{"schema_version", json_io::kSchemaVersion}, {"replay", errs.empty() ? "ok" : "failed"}, {"errors", errs}};
    o.text = errs.empty() ? "replay: ok\n" : "replay: failed\n";
    for (const auto& e : errs) o.text += "  " + e + "\n";
    o.status = errs.empty() ? kOk : kViolation;
    return o;
  }
  LocalizeOptions opt;
  opt.max_len = c.max_len;
  opt.decide.budget = c.budget;
  const auto cert = localize(S, probes_for(S, c), opt);
  o.json = json_io::certificate(*B, cert);
  o.text = std::string("localization: ") + (cert.complete() ? "complete" : "incomplete") + "\n";
  o.text += std::string("3-for-2: ") + (cert.three_for_two.ok() ? "ok" : "fails") + "\n";
  for (const auto& e : cert.errors) o.text += "error: " + e + "\n";
  for (const auto& [f, d] : cert.decompositions) o.text += "decomposition " + B->arr_name(f) + " = " + names_of(*B, d.chain) + "\n";
  for (const auto& e : cert.equivalences) {
    o.text += "equivalence " + B->arr_name(e.f) + " with quasiinverse " + B->arr_name(e.q) + ": " +
              (e.verified() ? "verified" : "unverified") + "\n";
    o.text += "  unit " + hocell_text(*B, e.unit) + "\n  counit " + hocell_text(*B, e.counit) + "\n";
  }
  std::size_t ok = 0;
  for (const auto& x : cert.i_functoriality) ok += x.verdict.kind == EqVerdict::Kind::Equal;
  o.text += "i functoriality: " + std::to_string(ok) + "/" + std::to_string(cert.i_functoriality.size()) + " Equal\n";
  o.text += "probes: " + std::to_string(cert.probes_used.size()) + "\n";
  o.status = cert.complete() ? kOk : kViolation;
  return o;
}

Output cmd_ho_eq(const Config& c) {
  if (c.budget < 1) throw Error("--budget must be at least 1");
  auto B = load_presentation_file(c.input);
  const auto S = sigma_of(B, c);
  const auto L = load_homotopies(*B, read_file(c.second));
  const HoCell k1 = parse_hocell(*B, L, c.third), k2 = parse_hocell(*B, L, c.fourth);
  const auto probes = probes_for(S, c);
  const HoRewriter R(S);
  const auto v = ho_eq(R, k1, k2, probes, DecideOptions{c.budget, kHoStateCap});
  Output o;
  const Bicategory* target = nullptr;
  for (const auto& p : probes)
    if (p.name == v.probe) target = p.F.target.get();
  o.json = json_io::verdict(*B, v, target);
  o.json["schema_version"] = json_io::kSchemaVersion;
  o.text = std::string(verdict_name(v.kind)) + "\n";
  if (v.kind == EqVerdict::Kind::Equal) o.text += derivation_text(*B, v.derivation);
  if (v.kind == EqVerdict::Kind::Distinct)
    o.text += "  probe " + v.probe + ": " + target->cell_name(v.lhs_value) + " vs " + target->cell_name(v.rhs_value) + "\n";
  if (v.kind == EqVerdict::Kind::Unknown) o.text += "  explored " + std::to_string(v.explored) + " states\n";
  o.status = v.kind == EqVerdict::Kind::Equal ? kOk : v.kind == EqVerdict::Kind::Distinct ? kViolation : kUnknown;
  return o;
}

Output cmd_hat(const Config& c) {
  auto B = load_presentation_file(c.input);
  const auto L = load_homotopies(*B, read_file(c.second));
  const std::string& n = c.third;
  const auto F = functor_of(B, c);
  const Bicategory& T = F ? *F->target : *B;
  CellId v;
  if (auto h = L.homotopies.find(n); h != L.homotopies.end()) v = F ? f_hat(F->F, h->second) : hat(*B, h->second);
  else if (auto cy = L.cylinders.find(n); cy != L.cylinders.end()) v = F ? f_hat(F->F, cy->second) : hat(*B, cy->second);
  else throw Error("no cylinder or homotopy named '" + n + "'");
  Output o;
  o.json = {{"schema_version", json_io::kSchemaVersion}, {"name", n}, {"value", T.cell_name(v)},
            {"from", T.arr_name(T.csrc(v))}, {"to", T.arr_name(T.cdst(v))}};
  o.text = n + " = " + T.cell_name(v) + " : " + T.arr_name(T.csrc(v)) + " => " + T.arr_name(T.cdst(v)) + "\n";
  return o;
}

Output cmd_extend(const Config& c) {
  auto B = load_presentation_file(c.input);
  const auto S = sigma_of(B, c);
  std::vector<Homotopy> hs;
  if (!c.homotopies.empty()) {
    const auto L = load_homotopies(*B, read_file(c.homotopies));
    for (const auto& n : L.order) hs.push_back(L.homotopies.at(n));
  }
  Output o;
  o.json = {{"schema_version", json_io::kSchemaVersion}, {"extensions", ordered_json::array()}};
  bool ok = true;
  auto dump = [&](const std::string& name, const Extension& G, const std::vector<CellId>& values, const Bicategory& T,
                  const ValidationReport& r) {
    ordered_json table = ordered_json::array();
    for (std::size_t i = 0; i < G.terms.size(); ++i)
      table.push_back({{"term", json_io::term(*B, G.terms[i])}, {"value", T.cell_name(values[i])}});
    o.json["extensions"].push_back({{"functor", name}, {"entries", table}, {"violations", json_io::report(r)}});
    o.text += name + ": " + std::to_string(G.terms.size()) + " entries, " + (r.ok() ? "verified" : "violations") + "\n";
    if (!r.ok()) o.text += report_text(r);
    ok = ok && r.ok();
  };
  if (auto F = functor_of(B, c)) {
    const auto E = extend_pseudofunctor(S, F->F, hs);
    dump(c.functor, E.g2, E.values, *F->target, verify_pseudo_extension(F->F, E));
  } else {
    for (const auto& p : probes_for(S, c)) {
      const auto G = extend_2functor(S, p.F, hs);
      ValidationReport r = verify_extension(S, G);
      for (auto& v : verify_formula(S, G).violations) r.violations.push_back(v);
      dump(p.name, G, G.values, *p.F.target, r);
    }
  }
  o.status = ok ? kOk : kViolation;
  return o;
}

Output cmd_elevator(const Config& c) {
  const Computad K = load_computad(read_file(c.input));
  Output o;
  o.json = {{"schema_version", json_io::kSchemaVersion}, {"expressions", ordered_json::array()}};
  std::vector<CellExpr> nfs;
  for (const auto* s : {&c.second, &c.third}) {
    if (s->empty()) continue;
    const CellExpr e = parse_expr(K, *s);
    const CellExpr n = normalize(K, e);
    nfs.push_back(n);
    o.json["expressions"].push_back({{"input", format_expr(K, e)}, {"normal_form", format_expr(K, n)}});
    o.text += "input: " + format_expr(K, e) + "\nnormal form: " + format_expr(K, n) + "\n" + render(K, n);
  }
  if (nfs.size() == 2) {
    if (!(nfs[0].src == nfs[1].src) || !(nfs[0].dst == nfs[1].dst)) throw Error("expressions have different boundaries");
    const bool eq = nfs[0] == nfs[1];
    o.json["equal"] = eq;
    o.text += std::string("equal: ") + (eq ? "yes" : "no") + "\n";
    o.status = eq ? kOk : kViolation;
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite bicategories, sigma-homotopies and the localization Ho(C,Sigma)"};
  app.require_subcommand(1, 1);
  Config c;
  auto common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--out", c.out, "write the report to a file");
  };
  auto sigma_opt = [&](CLI::App* s) { s->add_option("--sigma", c.sigma, "comma-separated sigma arrows"); };
  auto probe_opt = [&](CLI::App* s) {
    s->add_option("--probes", c.probes, "probe library directory (default $BICAT_PROBE_DIR)");
    s->add_flag("--no-self", c.no_self, "do not probe with 2-functors into the input itself");
  };
  auto functor_opt = [&](CLI::App* s) {
    s->add_option("--functor", c.functor, "pseudofunctor file");
    s->add_option("--target", c.target, "target presentation of --functor");
  };

  auto* validate = app.add_subcommand("validate", "check the bicategory axioms");
  validate->add_option("presentation", c.input)->required();
  functor_opt(validate);
  common(validate);

  auto* sigma = app.add_subcommand("sigma-check", "3-for-2 and w-split table");
  sigma->add_option("presentation", c.input)->required();
  sigma_opt(sigma);
  sigma->add_option("--max-len", c.max_len, "decomposition length bound");
  common(sigma);

  auto* loc = app.add_subcommand("localize", "build a localization certificate");
  loc->add_option("presentation", c.input)->required();
  sigma_opt(loc);
  probe_opt(loc);
  loc->add_option("--max-len", c.max_len, "decomposition length bound");
  loc->add_option("--budget", c.budget, "moves per side in the exchange search");
  loc->add_option("--replay", c.replay, "re-verify a certificate instead");
  common(loc);

  auto* hoeq = app.add_subcommand("ho-eq", "decide equality of two Ho 2-cells");
  hoeq->add_option("presentation", c.input)->required();
  hoeq->add_option("homotopies", c.second)->required();
  hoeq->add_option("lhs", c.third)->required();
  hoeq->add_option("rhs", c.fourth)->required();
  sigma_opt(hoeq);
  probe_opt(hoeq);
  hoeq->add_option("--budget", c.budget, "moves per side in the exchange search");
  common(hoeq);

  auto* hatc = app.add_subcommand("hat", "hat of a cylinder or homotopy, or F-hat with --functor");
  hatc->add_option("presentation", c.input)->required();
  hatc->add_option("homotopies", c.second)->required();
  hatc->add_option("name", c.third)->required();
  functor_opt(hatc);
  common(hatc);

  auto* ext = app.add_subcommand("extend", "extend probes or a pseudofunctor along i");
  ext->add_option("presentation", c.input)->required();
  ext->add_option("--homotopies", c.homotopies, "homotopies to tabulate");
  sigma_opt(ext);
  probe_opt(ext);
  functor_opt(ext);
  common(ext);

  auto* elev = app.add_subcommand("elevator", "normal form and diagram of elevator expressions");
  elev->add_option("computad", c.input)->required();
  elev->add_option("expr", c.second)->required();
  elev->add_option("expr2", c.third);
  common(elev);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Output o;
  try {
    if (*validate) o = cmd_validate(c);
    else if (*sigma) o = cmd_sigma_check(c);
    else if (*loc) o = cmd_localize(c);
    else if (*hoeq) o = cmd_ho_eq(c);
    else if (*hatc) o = cmd_hat(c);
    else if (*ext) o = cmd_extend(c);
    else o = cmd_elevator(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  const std::string body = c.format == "json" ? o.json.dump(2) + "\n" : o.text;
  if (c.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write '" << c.out << "'\n";
      return kUsage;
    }
    f << body;
  }
  return o.status;
}
