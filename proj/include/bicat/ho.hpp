#pragma once

// 2-cells of Ho(C,Σ) as sequences of homotopy terms, their vertical and
// horizontal structure, evaluation under probes, and a three-valued equality
// decider with replayable derivations.

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bicat/core.hpp"
#include "bicat/enumerate.hpp"
#include "bicat/homotopy.hpp"
#include "bicat/sigma.hpp"

namespace bicat {

// A homotopy, or I(μ) standing for any homotopy with F̂ = Fμ for all probes.
struct HoTerm {
  enum class Kind { H, I };
  Kind kind = Kind::I;
  Homotopy H;
  CellId mu = kNone;

  static HoTerm of(const Homotopy& h) { return HoTerm{Kind::H, h, kNone}; }
  static HoTerm I(CellId mu) { return HoTerm{Kind::I, Homotopy{}, mu}; }

  ArrId from(const Bicategory& B) const { return kind == Kind::I ? B.csrc(mu) : H.from(B); }
  ArrId to(const Bicategory& B) const { return kind == Kind::I ? B.cdst(mu) : H.to(B); }
  bool operator==(const HoTerm&) const = default;
};

// [Hⁿ, …, H¹] from f to g; seq[0] is applied first.
struct HoCell {
  ArrId f = kNone, g = kNone;
  std::vector<HoTerm> seq;
  bool operator==(const HoCell&) const = default;
};

inline void check_hocell(const Bicategory& B, const HoCell& k) {
  if (!B.valid_arr(k.f) || !B.valid_arr(k.g) || !B.parallel(k.f, k.g)) throw Error("ho cell: boundary arrows are not parallel");
  ArrId cur = k.f;
  for (std::size_t i = 0; i < k.seq.size(); ++i) {
    const HoTerm& t = k.seq[i];
    if (t.kind == HoTerm::Kind::I ? !B.valid_cell(t.mu) : !validate_homotopy(B, t.H).ok())
      throw Error("ho cell: term " + std::to_string(i) + " is ill-typed");
    if (t.from(B) != cur) throw Error("ho cell: term " + std::to_string(i) + " does not start where the previous one ends");
    cur = t.to(B);
  }
  if (cur != k.g) throw Error("ho cell: sequence does not end at the target arrow");
}

inline HoCell ho_identity(ArrId f) { return HoCell{f, f, {}}; }

inline HoCell i_cell(const Bicategory& B, CellId mu) {
  if (B.is_identity(mu)) return ho_identity(B.csrc(mu));
  return HoCell{B.csrc(mu), B.cdst(mu), {HoTerm::I(mu)}};
}

inline HoCell ho_single(const Bicategory& B, const Homotopy& H) { return HoCell{H.from(B), H.to(B), {HoTerm::of(H)}}; }

// k2 ∘ k1.
inline HoCell ho_vcomp(const HoCell& k2, const HoCell& k1) {
  if (k1.g != k2.f) throw Error("ho_vcomp: boundary mismatch");
  HoCell k{k1.f, k2.g, k1.seq};
  k.seq.insert(k.seq.end(), k2.seq.begin(), k2.seq.end());
  return k;
}

// r ∗ k.
inline HoCell ho_lwhisk(const Bicategory& B, ArrId r, const HoCell& k) {
  if (!B.valid_arr(r) || B.src(r) != B.dst(k.f)) throw Error("ho_lwhisk: arrow does not compose");
  HoCell out{B.comp(r, k.f), B.comp(r, k.g), {}};
  for (const auto& t : k.seq)
    out.seq.push_back(t.kind == HoTerm::Kind::I ? HoTerm::I(B.lw(r, t.mu)) : HoTerm::of(lwhisk(B, r, t.H)));
  return out;
}

// k ∗ ℓ.
inline HoCell ho_rwhisk(const Bicategory& B, const HoCell& k, ArrId l) {
  if (!B.valid_arr(l) || B.dst(l) != B.src(k.f)) throw Error("ho_rwhisk: arrow does not compose");
  HoCell out{B.comp(k.f, l), B.comp(k.g, l), {}};
  for (const auto& t : k.seq)
    out.seq.push_back(t.kind == HoTerm::Kind::I ? HoTerm::I(B.rw(t.mu, l)) : HoTerm::of(rwhisk(B, t.H, l)));
  return out;
}

// The inverse sequence, for terms with invertible cells.
inline HoCell ho_inverse(const Bicategory& B, const HoCell& k) {
  HoCell out{k.g, k.f, {}};
  for (auto it = k.seq.rbegin(); it != k.seq.rend(); ++it)
    out.seq.push_back(it->kind == HoTerm::Kind::I ? HoTerm::I(detail::inverse_or_throw(B, it->mu, "ho_inverse"))
                                                  : HoTerm::of(invert(B, it->H)));
  return out;
}

// G[Hⁿ,…,H¹] = F̂Hⁿ ∘ ⋯ ∘ F̂H¹, with I(μ) evaluated through H₀^μ.
inline CellId evaluate(const PseudofunctorData& F, const HoCell& k, bool check_quasiequivalence = false) {
  const Bicategory& B = *F.source;
  const Bicategory& D = *F.target;
  CellId acc = D.id_cell(F.arr(k.f));
  for (const auto& t : k.seq) {
    const CellId v = t.kind == HoTerm::Kind::I ? f_hat(F, mu_homotopies(B, t.mu).first, check_quasiequivalence)
                                               : f_hat(F, t.H, check_quasiequivalence);
    acc = D.vc(v, acc);
    if (acc == kNone) throw Error("evaluate: composite undefined");
  }
  return acc;
}

// Normal-form atoms: I(μ), or P = h ∗ H^C for a cylinder over s with α̃ = t : s∗d0 ⇒ s∗d1.
struct Atom {
  enum class Kind { I, P };
  Kind kind = Kind::I;
  CellId mu = kNone;
  ArrId h = kNone, s = kNone, d0 = kNone, d1 = kNone;
  CellId t = kNone;

  static Atom I(CellId mu) { return Atom{Kind::I, mu, kNone, kNone, kNone, kNone, kNone}; }
  static Atom P(ArrId h, ArrId s, ArrId d0, ArrId d1, CellId t) { return Atom{Kind::P, kNone, h, s, d0, d1, t}; }
  auto operator<=>(const Atom&) const = default;
};

using AtomSeq = std::vector<Atom>;

enum class Rule {
  Decompose,        // H = [I(η), h∗H^C, I(ε)]
  DropIdentity,     // [I(id)] = id
  MergeI,           // [I(μ′), I(μ)] = [I(μ′∘μ)]
  MergeP,           // cylinder homotopies over one σ-arrow compose through α̃
  TrivialP,         // d0 = d1 and α̃ = id gives the identity
  HatCollapse,      // s a quasiequivalence in C: h∗H^C = I(h∗Ĉ)
  SigmaWhisker,     // h ≅ k∗s: h∗H^C = I(β∗d1 ∘ k∗α̃ ∘ β⁻¹∗d0)
  Conjugate,        // h′∗H^C = I(μ∗d1) ∘ h∗H^C ∘ I(μ⁻¹∗d0) for invertible μ : h ⇒ h′
  ExchangeForward,  // [I(μ∗d0 ∘ ν1), h′∗H^C] = [I(ν1), h∗H^C, I(μ∗d1)]
  ExchangeBackward  // [h∗H^C, I(ν2 ∘ μ∗d1)] = [I(μ∗d0), h′∗H^C, I(ν2)]
};

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Decompose: return "decompose";
    case Rule::DropIdentity: return "drop-identity";
    case Rule::MergeI: return "merge-i";
    case Rule::MergeP: return "merge-cylinder";
    case Rule::TrivialP: return "trivial-cylinder";
    case Rule::HatCollapse: return "hat-collapse";
    case Rule::SigmaWhisker: return "sigma-whisker";
    case Rule::Conjugate: return "conjugate";
    case Rule::ExchangeForward: return "exchange-forward";
    case Rule::ExchangeBackward: return "exchange-backward";
  }
  return "?";
}

inline const char* rule_justification(Rule r) {
  switch (r) {
    case Rule::Decompose: return "a homotopy decomposes as i(eps), h * H^C, i(eta)";
    case Rule::DropIdentity: return "i preserves identities";
    case Rule::MergeI: return "i preserves vertical composition";
    case Rule::MergeP: return "F-hat of a cylinder depends only on s and alpha-tilde, and is functorial in alpha-tilde";
    case Rule::TrivialP: return "a cylinder with d0 = d1 and identity alpha-tilde has F-hat the identity; [H^C][H^C^-1] = id";
    case Rule::HatCollapse: return "for s a quasiequivalence, F-hat of the cylinder is F of its hat";
    case Rule::SigmaWhisker: return "s * H^C is i(alpha-tilde) by the defining equation of F-hat";
    case Rule::Conjugate: return "interchange in Ho with an invertible i(mu)";
    case Rule::ExchangeForward: return "interchange in Ho with i(mu)";
    case Rule::ExchangeBackward: return "interchange in Ho with i(mu)";
  }
  return "?";
}

inline std::optional<Rule> rule_from_name(const std::string& n) {
  for (Rule r : {Rule::Decompose, Rule::DropIdentity, Rule::MergeI, Rule::MergeP, Rule::TrivialP, Rule::HatCollapse,
                 Rule::SigmaWhisker, Rule::Conjugate, Rule::ExchangeForward, Rule::ExchangeBackward})
    if (n == rule_name(r)) return r;
  return std::nullopt;
}

struct Step {
  Rule rule = Rule::DropIdentity;
  int pos = 0;
  std::vector<int> args;
  bool backward = false;  // the rule rewrites `after` into the previous state
  AtomSeq after;
  bool operator==(const Step&) const = default;
};

struct Derivation {
  HoCell lhs, rhs;
  std::vector<Step> steps;
};

struct EqVerdict {
  enum class Kind { Equal, Distinct, Unknown };
  Kind kind = Kind::Unknown;
  Derivation derivation;       // Equal
  std::string probe;           // Distinct
  CellId lhs_value = kNone;    // Distinct
  CellId rhs_value = kNone;    // Distinct
  std::size_t explored = 0;    // states visited by the search
};

inline const char* verdict_name(EqVerdict::Kind k) {
  switch (k) {
    case EqVerdict::Kind::Equal: return "Equal";
    case EqVerdict::Kind::Distinct: return "Distinct";
    case EqVerdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

inline constexpr int kDefaultBudget = 8;
inline constexpr std::size_t kHoStateCap = 20000;

// Rewriting context for one (C, Σ).
class HoRewriter {
 public:
  explicit HoRewriter(const SigmaClass& S) : S_(S), B_(S.bicat()) {
    detail::require_strict(B_, "Ho");
    for (ArrId s : S.members()) qe_[s] = is_quasiequivalence(B_, s);
  }

  const Bicategory& bicat() const { return B_; }
  const SigmaClass& sigma() const { return S_; }

  ArrId atom_from(const Atom& a) const { return a.kind == Atom::Kind::I ? B_.csrc(a.mu) : B_.comp(a.h, a.d0); }
  ArrId atom_to(const Atom& a) const { return a.kind == Atom::Kind::I ? B_.cdst(a.mu) : B_.comp(a.h, a.d1); }

  // Atoms of one term, with the steps that justify them.
  AtomSeq expand(const HoCell& k) const {
    check_hocell(B_, k);
    AtomSeq out;
    for (const auto& t : k.seq) {
      if (t.kind == HoTerm::Kind::I) {
        out.push_back(Atom::I(t.mu));
      } else {
        const Homotopy& H = t.H;
        if (!S_.contains(H.C.s)) throw Error("ho cell: cylinder arrow " + B_.arr_name(H.C.s) + " is not in sigma");
        out.push_back(Atom::I(H.eta));
        out.push_back(Atom::P(H.h, H.C.s, H.C.d0, H.C.d1, alpha_tilde(B_, H.C)));
        out.push_back(Atom::I(H.eps));
      }
    }
    return out;
  }

  // One rule application; nullopt when the rule does not apply as stated.
  std::optional<AtomSeq> apply(const AtomSeq& q, Rule r, int pos, const std::vector<int>& args) const {
    if (pos < 0 || pos >= static_cast<int>(q.size())) return std::nullopt;
    const auto p = static_cast<std::size_t>(pos);
    const Atom& a = q[p];
    const Atom* b = p + 1 < q.size() ? &q[p + 1] : nullptr;
    auto splice = [&](std::size_t n, AtomSeq with) {
      AtomSeq out(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(p));
      out.insert(out.end(), with.begin(), with.end());
      out.insert(out.end(), q.begin() + static_cast<std::ptrdiff_t>(p + n), q.end());
      return out;
    };
    auto arg = [&](std::size_t i) { return i < args.size() ? args[i] : kNone; };
    switch (r) {
      case Rule::Decompose: return std::nullopt;
      case Rule::DropIdentity:
        if (a.kind != Atom::Kind::I || !B_.is_identity(a.mu)) return std::nullopt;
        return splice(1, {});
      case Rule::MergeI: {
        if (a.kind != Atom::Kind::I || !b || b->kind != Atom::Kind::I) return std::nullopt;
        const CellId c = B_.vc(b->mu, a.mu);
        if (c == kNone) return std::nullopt;
        return splice(2, {Atom::I(c)});
      }
      case Rule::MergeP: {
        if (a.kind != Atom::Kind::P || !b || b->kind != Atom::Kind::P || a.h != b->h || a.s != b->s || a.d1 != b->d0)
          return std::nullopt;
        const CellId c = B_.vc(b->t, a.t);
        if (c == kNone) return std::nullopt;
        return splice(2, {Atom::P(a.h, a.s, a.d0, b->d1, c)});
      }
      case Rule::TrivialP:
        if (a.kind != Atom::Kind::P || a.d0 != a.d1 || !B_.is_identity(a.t)) return std::nullopt;
        return splice(1, {Atom::I(B_.id_cell(B_.comp(a.h, a.d0)))});
      case Rule::HatCollapse: {
        auto it = qe_.find(a.s);
        if (a.kind != Atom::Kind::P || it == qe_.end() || !it->second) return std::nullopt;
        const CellId x = solve_lw(B_, a.s, a.d0, a.d1, a.t);
        return splice(1, {Atom::I(B_.lw(a.h, x))});
      }
      case Rule::SigmaWhisker: {
        if (a.kind != Atom::Kind::P) return std::nullopt;
        const ArrId k = arg(0);
        const CellId beta = arg(1);
        if (!B_.valid_arr(k) || B_.src(k) != B_.dst(a.s) || !B_.valid_cell(beta) || B_.csrc(beta) != B_.comp(k, a.s) ||
            B_.cdst(beta) != a.h || !B_.invertible(beta))
          return std::nullopt;
        const CellId c = vcomp_chain(B_, {B_.rw(B_.inverse(beta), a.d0), B_.lw(k, a.t), B_.rw(beta, a.d1)});
        if (c == kNone) return std::nullopt;
        return splice(1, {Atom::I(c)});
      }
      case Rule::Conjugate: {
        const CellId mu = arg(0);
        if (a.kind != Atom::Kind::P || !B_.valid_cell(mu) || B_.cdst(mu) != a.h || !B_.invertible(mu)) return std::nullopt;
        return splice(1, {Atom::I(B_.rw(B_.inverse(mu), a.d0)), Atom::P(B_.csrc(mu), a.s, a.d0, a.d1, a.t),
                          Atom::I(B_.rw(mu, a.d1))});
      }
      case Rule::ExchangeForward: {
        const CellId mu = arg(0), nu1 = arg(1);
        if (a.kind != Atom::Kind::I || !b || b->kind != Atom::Kind::P || !B_.valid_cell(mu) || !B_.valid_cell(nu1) ||
            B_.cdst(mu) != b->h)
          return std::nullopt;
        if (B_.vc(B_.rw(mu, b->d0), nu1) != a.mu) return std::nullopt;
        return splice(2, {Atom::I(nu1), Atom::P(B_.csrc(mu), b->s, b->d0, b->d1, b->t), Atom::I(B_.rw(mu, b->d1))});
      }
      case Rule::ExchangeBackward: {
        const CellId mu = arg(0), nu2 = arg(1);
        if (a.kind != Atom::Kind::P || !b || b->kind != Atom::Kind::I || !B_.valid_cell(mu) || !B_.valid_cell(nu2) ||
            B_.csrc(mu) != a.h)
          return std::nullopt;
        if (B_.vc(nu2, B_.rw(mu, a.d1)) != b->mu) return std::nullopt;
        return splice(2, {Atom::I(B_.rw(mu, a.d0)), Atom::P(B_.cdst(mu), a.s, a.d0, a.d1, a.t), Atom::I(nu2)});
      }
    }
    return std::nullopt;
  }

  // Greedy normalization; appends the steps taken.
  AtomSeq normalize(AtomSeq q, std::vector<Step>& steps) const {
    for (;;) {
      std::optional<Step> st = first_simplification(q);
      if (!st) return q;
      q = st->after;
      steps.push_back(std::move(*st));
    }
  }

  // Exchange-type moves out of a state, each followed by normalization.
  std::vector<std::pair<AtomSeq, std::vector<Step>>> moves(const AtomSeq& q) const {
    std::vector<std::pair<AtomSeq, std::vector<Step>>> out;
    auto push = [&](Rule r, int pos, std::vector<int> args) {
      auto n = apply(q, r, pos, args);
      if (!n) return;
      std::vector<Step> steps{Step{r, pos, std::move(args), false, *n}};
      AtomSeq m = normalize(*n, steps);
      out.emplace_back(std::move(m), std::move(steps));
    };
    for (int pos = 0; pos < static_cast<int>(q.size()); ++pos) {
      const Atom& a = q[static_cast<std::size_t>(pos)];
      const Atom* b = pos + 1 < static_cast<int>(q.size()) ? &q[static_cast<std::size_t>(pos) + 1] : nullptr;
      if (a.kind == Atom::Kind::P) {
        for (ArrId h : B_.arrows(B_.src(a.h), B_.dst(a.h)))
          for (CellId mu : B_.hom(h, a.h))
            if (!B_.is_identity(mu) && B_.invertible(mu)) push(Rule::Conjugate, pos, {mu});
        if (b && b->kind == Atom::Kind::I)
          for (ArrId h2 : B_.arrows(B_.src(a.h), B_.dst(a.h)))
            for (CellId mu : B_.hom(a.h, h2)) {
              if (B_.is_identity(mu)) continue;
              for (CellId nu2 : B_.hom(B_.comp(h2, a.d1), B_.cdst(b->mu))) push(Rule::ExchangeBackward, pos, {mu, nu2});
            }
      } else if (b && b->kind == Atom::Kind::P) {
        for (ArrId h : B_.arrows(B_.src(b->h), B_.dst(b->h)))
          for (CellId mu : B_.hom(h, b->h)) {
            if (B_.is_identity(mu)) continue;
            for (CellId nu1 : B_.hom(B_.csrc(a.mu), B_.comp(h, b->d0))) push(Rule::ExchangeForward, pos, {mu, nu1});
          }
      }
    }
    return out;
  }

 private:
  std::optional<Step> first_simplification(const AtomSeq& q) const {
    for (Rule r : {Rule::DropIdentity, Rule::MergeI, Rule::TrivialP, Rule::MergeP, Rule::HatCollapse})
      for (int pos = 0; pos < static_cast<int>(q.size()); ++pos)
        if (auto n = apply(q, r, pos, {})) return Step{r, pos, {}, false, std::move(*n)};
    for (int pos = 0; pos < static_cast<int>(q.size()); ++pos) {
      const Atom& a = q[static_cast<std::size_t>(pos)];
      if (a.kind != Atom::Kind::P) continue;
      for (ArrId k : B_.arrows(B_.dst(a.s), B_.dst(a.h)))
        for (CellId beta : B_.hom(B_.comp(k, a.s), a.h))
          if (B_.invertible(beta))
            if (auto n = apply(q, Rule::SigmaWhisker, pos, {k, beta})) return Step{Rule::SigmaWhisker, pos, {k, beta}, false, std::move(*n)};
    }
    return std::nullopt;
  }

  const SigmaClass& S_;
  const Bicategory& B_;
  std::map<ArrId, bool> qe_;
};

namespace detail {

struct SearchNode {
  AtomSeq state;
  int parent = -1;
  std::vector<Step> steps;  // from the parent's state to this one
  int depth = 0;
};

class Search {
 public:
  Search(const HoRewriter& R, AtomSeq start, std::vector<Step> initial) : R_(R) {
    nodes_.push_back({std::move(start), -1, std::move(initial), 0});
    index_[nodes_.back().state] = 0;
  }

  // Expands one more layer; false when nothing new was added.
  bool grow(int max_depth, std::size_t cap) {
    std::vector<int> frontier;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
      if (nodes_[static_cast<std::size_t>(i)].depth == depth_) frontier.push_back(i);
    if (depth_ >= max_depth || frontier.empty()) return false;
    bool added = false;
    for (int i : frontier) {
      const AtomSeq cur = nodes_[static_cast<std::size_t>(i)].state;
      for (auto& [next, steps] : R_.moves(cur)) {
        if (nodes_.size() >= cap) return false;
        if (index_.count(next)) continue;
        index_[next] = static_cast<int>(nodes_.size());
        nodes_.push_back({next, i, std::move(steps), depth_ + 1});
        added = true;
      }
    }
    ++depth_;
    return added;
  }

  std::optional<int> find(const AtomSeq& q) const {
    auto it = index_.find(q);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const std::vector<SearchNode>& nodes() const { return nodes_; }

  // Steps from the root's origin to node i, forward.
  std::vector<Step> path(int i) const {
    std::vector<std::vector<Step>> rev;
    for (int n = i; n >= 0; n = nodes_[static_cast<std::size_t>(n)].parent) rev.push_back(nodes_[static_cast<std::size_t>(n)].steps);
    std::vector<Step> out;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) out.insert(out.end(), it->begin(), it->end());
    return out;
  }

 private:
  const HoRewriter& R_;
  std::vector<SearchNode> nodes_;
  std::map<AtomSeq, int> index_;
  int depth_ = 0;
};

// Reverses a forward chain origin → … → end into a chain end → … → origin.
inline std::vector<Step> reverse_chain(const AtomSeq& origin, const std::vector<Step>& fwd) {
  std::vector<Step> out;
  for (std::size_t i = fwd.size(); i-- > 0;) {
    Step s = fwd[i];
    s.backward = !s.backward;
    s.after = i == 0 ? origin : fwd[i - 1].after;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

struct DecideOptions {
  int budget = kDefaultBudget;
  std::size_t state_cap = kHoStateCap;
};

// Congruence first, then probe separation, then bounded exchange search.
inline EqVerdict ho_eq(const HoRewriter& R, const HoCell& k1, const HoCell& k2, const ProbeSet& probes,
                       const DecideOptions& opt = {}) {
  const Bicategory& B = R.bicat();
  if (k1.f != k2.f || k1.g != k2.g) throw Error("ho_eq: boundary mismatch");
  if (opt.budget < 1) throw Error("budget must be at least 1");
  EqVerdict v;
  v.derivation.lhs = k1;
  v.derivation.rhs = k2;
  const AtomSeq e1 = R.expand(k1), e2 = R.expand(k2);
  std::vector<Step> s1, s2;
  const AtomSeq n1 = R.normalize(e1, s1), n2 = R.normalize(e2, s2);
  auto finish_equal = [&](const std::vector<Step>& left, const std::vector<Step>& right_fwd) {
    v.kind = EqVerdict::Kind::Equal;
    v.derivation.steps = left;
    auto back = detail::reverse_chain(e2, right_fwd);
    v.derivation.steps.insert(v.derivation.steps.end(), back.begin(), back.end());
    return v;
  };
  if (n1 == n2) return finish_equal(s1, s2);
  for (const auto& p : probes) {
    if (p.F.source.get() != &B) throw Error("ho_eq: probe '" + p.name + "' has a different source");
    const CellId a = evaluate(p.F, k1), b = evaluate(p.F, k2);
    if (a != b) {
      v.kind = EqVerdict::Kind::Distinct;
      v.probe = p.name;
      v.lhs_value = a;
      v.rhs_value = b;
      return v;
    }
  }
  detail::Search L(R, n1, s1), Rt(R, n2, s2);
  for (int d = 0; d < opt.budget; ++d) {
    const bool gl = L.grow(opt.budget, opt.state_cap);
    for (const auto& n : L.nodes())
      if (auto j = Rt.find(n.state)) return finish_equal(L.path(static_cast<int>(&n - L.nodes().data())), Rt.path(*j));
    const bool gr = Rt.grow(opt.budget, opt.state_cap);
    for (const auto& n : Rt.nodes())
      if (auto j = L.find(n.state)) return finish_equal(L.path(*j), Rt.path(static_cast<int>(&n - Rt.nodes().data())));
    v.explored = L.nodes().size() + Rt.nodes().size();
    if (!gl && !gr) break;
  }
  v.kind = EqVerdict::Kind::Unknown;
  return v;
}

inline EqVerdict ho_eq(const SigmaClass& S, const HoCell& k1, const HoCell& k2, const ProbeSet& probes,
                       const DecideOptions& opt = {}) {
  return ho_eq(HoRewriter(S), k1, k2, probes, opt);
}

// Re-checks every step of an Equal derivation; returns an error message or "".
inline std::string replay(const HoRewriter& R, const Derivation& d) {
  try {
    if (d.lhs.f != d.rhs.f || d.lhs.g != d.rhs.g) return "boundary mismatch";
    AtomSeq cur = R.expand(d.lhs);
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
      const Step& s = d.steps[i];
      const AtomSeq& from = s.backward ? s.after : cur;
      const AtomSeq& to = s.backward ? cur : s.after;
      auto got = R.apply(from, s.rule, s.pos, s.args);
      if (!got || *got != to) return "step " + std::to_string(i) + " (" + rule_name(s.rule) + ") does not apply";
      cur = s.after;
    }
    if (cur != R.expand(d.rhs)) return "derivation does not end at the right-hand side";
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

// Value of an atom sequence under a 2-functor probe.
inline CellId evaluate_atoms(const PseudofunctorData& F, const HoRewriter& R, ArrId f, const AtomSeq& q) {
  const Bicategory& B = R.bicat();
  const Bicategory& D = *F.target;
  CellId acc = D.id_cell(F.arr(f));
  for (const Atom& a : q) {
    CellId v;
    if (a.kind == Atom::Kind::I) {
      v = F.cell(a.mu);
    } else {
      const CellId x = solve_lw(D, F.arr(a.s), F.arr(a.d0), F.arr(a.d1), F.cell(a.t));
      v = D.lw(F.arr(a.h), x);
    }
    acc = D.vc(v, acc);
    if (acc == kNone) throw Error("evaluate_atoms: composite undefined in " + B.arr_name(f));
  }
  return acc;
}

}  // namespace bicat
