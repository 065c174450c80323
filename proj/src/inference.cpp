#include "bns/inference.hpp"

#include <algorithm>
#include <set>

#include "bns/error.hpp"

namespace bns {

std::string_view to_string(SigmaStatus s) {
  return s == SigmaStatus::InSigma ? "IN_SIGMA" : "NOT_IN_SIGMA";
}

std::string_view to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::DescendingFgHNN: return "DescendingFgHNN";
    case CertificateKind::AscendingStructure: return "AscendingStructure";
    case CertificateKind::ValuationWitness: return "ValuationWitness";
    case CertificateKind::AbelianQuotientRule: return "AbelianQuotientRule";
    case CertificateKind::UserAxiom: return "UserAxiom";
  }
  return "UserAxiom";
}

void validate_fact(const SigmaFact& fact) {
  const auto& c = fact.certificate;
  auto bad = [&](const std::string& why) {
    return Error(ErrorKind::MalformedCertificate,
                 std::string(to_string(c.kind)) + " certificate: " + why);
  };
  if (fact.ray.dimension() == 0) throw bad("fact has no ray");
  switch (c.kind) {
    case CertificateKind::DescendingFgHNN:
      if (fact.status != SigmaStatus::InSigma) throw bad("only certifies IN_SIGMA");
      if (c.family.empty() || (c.orientation != 1 && c.orientation != -1))
        throw bad("needs a decomposition reference");
      break;
    case CertificateKind::AscendingStructure:
      if (fact.status != SigmaStatus::NotInSigma) throw bad("only certifies NOT_IN_SIGMA");
      if (c.family.empty() || (c.orientation != 1 && c.orientation != -1))
        throw bad("needs a decomposition reference");
      break;
    case CertificateKind::ValuationWitness:
      if (fact.status != SigmaStatus::NotInSigma) throw bad("only certifies NOT_IN_SIGMA");
      if (!c.axiom_report) throw bad("missing axiom report");
      if (!c.axiom_report->pass) throw bad("axiom report did not pass");
      break;
    case CertificateKind::AbelianQuotientRule:
      if (fact.status != SigmaStatus::InSigma) throw bad("only certifies IN_SIGMA");
      break;
    case CertificateKind::UserAxiom:
      if (c.label.empty()) throw bad("needs a label");
      break;
  }
}

std::string describe(const SigmaFact& fact) {
  const auto& c = fact.certificate;
  std::string out = std::string(to_string(fact.status)) + " " + fact.ray.to_string() + " via " +
                    std::string(to_string(c.kind));
  switch (c.kind) {
    case CertificateKind::DescendingFgHNN:
    case CertificateKind::AscendingStructure:
      out += "(" + c.family + ", stable letter " + (c.orientation > 0 ? "t" : "s = t^-1") + ")";
      break;
    case CertificateKind::ValuationWitness:
      out += "(" + c.label + ", axiom report " + (c.axiom_report && c.axiom_report->pass ? "PASS" : "FAIL") + ")";
      break;
    case CertificateKind::UserAxiom:
      out += "(" + c.label + ")";
      break;
    case CertificateKind::AbelianQuotientRule:
      break;
  }
  return out;
}

FactStore FactStore::add_fact(const SigmaFact& fact) const {
  validate_fact(fact);
  FactStore next = *this;
  for (const auto& f : facts_)
    if (f.same_claim(fact)) return next;
  next.facts_.push_back(fact);
  return next;
}

FactStore FactStore::register_decomposition(const RegisteredDecomposition& d) const {
  FactStore next = *this;
  if (std::find(decompositions_.begin(), decompositions_.end(), d) == decompositions_.end())
    next.decompositions_.push_back(d);
  return next;
}

FactStore FactStore::add_query(const RayClass& ray) const {
  FactStore next = *this;
  if (std::find(queries_.begin(), queries_.end(), ray) == queries_.end())
    next.queries_.push_back(ray);
  return next;
}

std::vector<RayClass> FactStore::pending_conflicts() const {
  std::set<RayClass> in, out;
  for (const auto& f : facts_) (f.status == SigmaStatus::InSigma ? in : out).insert(f.ray);
  std::vector<RayClass> both;
  std::set_intersection(in.begin(), in.end(), out.begin(), out.end(), std::back_inserter(both));
  return both;
}

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::NotKahler: return "NotKahler";
    case VerdictKind::FibersOverHyperbolicOrbifold: return "FibersOverHyperbolicOrbifold";
    case VerdictKind::Contradiction: return "Contradiction";
    case VerdictKind::Consistent: return "Consistent";
  }
  return "Consistent";
}

std::string_view rule_id(Rule r) {
  static constexpr std::string_view ids[] = {"R1", "R2", "R3", "R4", "R5", "R6", "R7"};
  return ids[static_cast<int>(r)];
}

const RuleSource& rule_source(Rule r) {
  static const RuleSource sources[] = {
      {"Bieri-Neumann-Strebel, Theorem C", {"no nonabelian free subgroups"}},
      {"symmetry of Sigma for Kaehler groups (corollary of Delzant's theorem)",
       {"has symmetric BNS invariant"}},
      {"Bieri-Neumann-Strebel, Theorem B1", {"is finitely generated if and only if"}},
      {"Napier-Ramachandran, Theorem 0.3(b)",
       {"is not a Kähler group",
        "admits a descending HNN decomposition with finitely generated base group",
        "taking the stable letter s=t⁻¹ instead", "has symmetric BNS invariant"}},
      {"Napier-Ramachandran, Theorem 0.2(b) via Delzant's theorem",
       {"admits a properly ascending HNN decomposition", "holomorphic map with connected fibers"}},
      {"amenable Kaehler groups (Friedl-Vidussi)", {"does not contain any free nonabelian subgroup"}},
      {"Brown, Proposition 3.1 (moreover clause)",
       {"every HNN decomposition of G with χ as associated homomorphism is descending"}},
  };
  return sources[static_cast<int>(r)];
}

namespace {

bool is_true(Tristate t) { return t == Tristate::True; }

struct Builder {
  Verdict v;

  Builder(VerdictKind kind, Rule rule) {
    v.kind = kind;
    v.concluding_rule = rule;
  }
  std::size_t cite(const SigmaFact& f) {
    for (std::size_t i = 0; i < v.cited_facts.size(); ++i)
      if (v.cited_facts[i].same_claim(f)) return i;
    v.cited_facts.push_back(f);
    return v.cited_facts.size() - 1;
  }
  Builder& step(Rule rule, std::vector<std::size_t> facts, std::string claim,
                std::size_t anchor = 0) {
    v.proof_chain.push_back(
        ProofStep{rule, std::move(facts), std::move(claim), rule_source(rule).anchors.at(anchor)});
    return *this;
  }
  Builder& assume(std::string flag) {
    v.assumed_flags.push_back(std::move(flag));
    return *this;
  }
};

class Engine {
 public:
  Engine(const FactStore& store, const GroupFlags& flags)
      : store_(store), flags_(flags.normalized()) {}

  std::vector<Verdict> run() {
    r1();
    r2();
    r3();
    r4();
    r5();
    r6();
    r7();
    if (out_.empty()) out_.push_back(Verdict{});
    return std::move(out_);
  }

 private:
  const std::vector<SigmaFact>& facts() const { return store_.facts(); }

  template <typename Pred>
  std::vector<std::size_t> select(Pred pred) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < facts().size(); ++i)
      if (pred(facts()[i])) idx.push_back(i);
    return idx;
  }

  static bool is_in(const SigmaFact& f) { return f.status == SigmaStatus::InSigma; }
  static bool is_out(const SigmaFact& f) { return f.status == SigmaStatus::NotInSigma; }

  void r1() {
    if (!is_true(flags_.no_nonabelian_free_subgroups)) return;
    std::set<RayClass> done;
    for (auto i : select(is_out)) {
      for (auto j : select(is_out)) {
        const auto& a = facts()[i];
        const auto& b = facts()[j];
        if (!(b.ray == antipode(a.ray)) || !(a.ray < b.ray) || done.count(a.ray)) continue;
        done.insert(a.ray);
        Builder v(VerdictKind::Contradiction, Rule::R1);
        auto fa = v.cite(a), fb = v.cite(b);
        v.assume("no_nonabelian_free_subgroups = true");
        v.step(Rule::R1, {fa}, describe(a))
            .step(Rule::R1, {fb}, describe(b))
            .step(Rule::R1, {fa, fb},
                  "neither " + a.ray.to_string() + " nor its antipode lies in Sigma, so "
                  "Sigma u -Sigma != S(G), contradicting the absence of nonabelian free subgroups");
        out_.push_back(std::move(v.v));
      }
    }
  }

  void r2() {
    if (!is_true(flags_.claimed_kahler)) return;
    std::set<RayClass> done;
    for (auto i : select(is_in)) {
      for (auto j : select(is_out)) {
        const auto& a = facts()[i];
        const auto& b = facts()[j];
        if (!(b.ray == antipode(a.ray)) || done.count(a.ray)) continue;
        done.insert(a.ray);
        Builder v(VerdictKind::NotKahler, Rule::R2);
        auto fa = v.cite(a), fb = v.cite(b);
        v.assume("claimed_kahler = true");
        v.step(Rule::R2, {fa}, describe(a))
            .step(Rule::R2, {fb}, describe(b))
            .step(Rule::R2, {fa, fb},
                  "Sigma(G) != -Sigma(G) at " + a.ray.to_string() +
                      "; a Kaehler group has symmetric Sigma, so the Kaehler claim is refuted");
        out_.push_back(std::move(v.v));
      }
    }
  }

  void r3() {
    if (!is_true(flags_.commutator_fg)) return;
    std::set<RayClass> done;
    for (auto j : select(is_out)) {
      const auto& b = facts()[j];
      if (done.count(b.ray)) continue;
      done.insert(b.ray);
      Builder v(VerdictKind::Contradiction, Rule::R3);
      auto fb = v.cite(b);
      v.assume("commutator_fg = true");
      v.step(Rule::R3, {}, "G' finitely generated, so Sigma(G) = S(G)")
          .step(Rule::R3, {fb}, describe(b) + " contradicts Sigma(G) = S(G)");
      out_.push_back(std::move(v.v));
    }
  }

  void r4() {
    std::set<std::pair<std::string, RayClass>> done;
    for (auto i : select(is_in)) {
      const auto& a = facts()[i];
      if (a.certificate.kind != CertificateKind::DescendingFgHNN) continue;
      for (auto j : select(is_out)) {
        const auto& b = facts()[j];
        if (b.certificate.kind != CertificateKind::AscendingStructure) continue;
        if (b.certificate.family != a.certificate.family ||
            b.certificate.orientation != -a.certificate.orientation)
          continue;
        if (!(b.ray == antipode(a.ray))) continue;
        if (!done.insert({a.certificate.family, a.ray}).second) continue;
        Builder v(VerdictKind::NotKahler, Rule::R4);
        auto fa = v.cite(a), fb = v.cite(b);
        v.step(Rule::R4, {fa}, describe(a), 1)
            .step(Rule::R4, {fb}, describe(b) + " (same group read with the inverted stable letter)", 2)
            .step(Rule::R4, {fa, fb},
                  "Sigma contains " + a.ray.to_string() + " but not " + b.ray.to_string() +
                      "; asymmetric Sigma, so G is not a Kaehler group",
                  3);
        out_.push_back(std::move(v.v));
      }
    }
  }

  void r5() {
    if (!is_true(flags_.claimed_kahler)) return;
    std::set<RayClass> done;
    for (auto j : select(is_out)) {
      const auto& b = facts()[j];
      if (b.certificate.kind != CertificateKind::AscendingStructure) continue;
      if (!done.insert(b.ray).second) continue;
      Builder v(VerdictKind::FibersOverHyperbolicOrbifold, Rule::R5);
      auto fb = v.cite(b);
      v.assume("claimed_kahler = true");
      v.step(Rule::R5, {fb}, describe(b) + " from a properly ascending decomposition")
          .step(Rule::R5, {fb},
                "an exceptional character of a Kaehler group comes from a fibration onto a "
                "hyperbolic Riemann orbifold (recorded consequence; no geometry computed)",
                1);
      out_.push_back(std::move(v.v));
    }
  }

  void r6() {
    if (!is_true(flags_.amenable) || !is_true(flags_.claimed_kahler)) return;
    std::set<RayClass> done;
    for (auto j : select(is_out)) {
      const auto& b = facts()[j];
      if (!done.insert(b.ray).second) continue;
      Builder v(VerdictKind::NotKahler, Rule::R6);
      auto fb = v.cite(b);
      v.assume("amenable = true").assume("claimed_kahler = true");
      v.step(Rule::R6, {}, "an amenable Kaehler group has Sigma(G) = S(G)")
          .step(Rule::R6, {fb}, describe(b) + " shows Sigma(G) != S(G); the Kaehler claim fails");
      out_.push_back(std::move(v.v));
    }
  }

  void r7() {
    std::set<RayClass> done;
    for (auto i : select(is_in)) {
      const auto& a = facts()[i];
      if (a.certificate.kind != CertificateKind::DescendingFgHNN || done.count(a.ray)) continue;
      for (const auto& d : store_.decompositions()) {
        if (d.hnn_class != HnnClass::ProperlyAscending || !(d.ray == a.ray)) continue;
        done.insert(a.ray);
        Builder v(VerdictKind::Contradiction, Rule::R7);
        auto fa = v.cite(a);
        v.step(Rule::R7, {fa}, describe(a))
            .step(Rule::R7, {fa},
                  "decomposition '" + d.family + "' (stable letter " +
                      (d.orientation > 0 ? "t" : "s = t^-1") +
                      ") is properly ascending with the same associated ray " + a.ray.to_string());
        out_.push_back(std::move(v.v));
        break;
      }
      if (done.count(a.ray)) continue;
      for (auto j : select(is_out)) {
        const auto& b = facts()[j];
        if (!(b.ray == a.ray)) continue;
        done.insert(a.ray);
        Builder v(VerdictKind::Contradiction, Rule::R7);
        auto fa = v.cite(a), fb = v.cite(b);
        v.step(Rule::R7, {fa}, describe(a))
            .step(Rule::R7, {fa, fb},
                  describe(b) + " contradicts the descending certificate for the same ray");
        out_.push_back(std::move(v.v));
        break;
      }
    }
  }

  const FactStore& store_;
  GroupFlags flags_;
  std::vector<Verdict> out_;
};

}  // namespace

FactStore saturate(const FactStore& store, const GroupFlags& flags) {
  FactStore current = store;
  if (!is_true(flags.commutator_fg)) return current;
  for (;;) {
    std::size_t before = current.facts().size();
    const std::vector<RayClass> queries = current.queries();
    for (const auto& q : queries) {
      Certificate cert;
      cert.kind = CertificateKind::AbelianQuotientRule;
      cert.note = "commutator subgroup declared finitely generated";
      current = current.add_fact(SigmaFact{q, SigmaStatus::InSigma, cert,
                                           "R3: G' finitely generated gives Sigma(G) = S(G)"});
    }
    if (current.facts().size() == before) break;
  }
  return current;
}

std::vector<Verdict> run_inference(const FactStore& store, const GroupFlags& flags) {
  FactStore closed = saturate(store, flags);
  return Engine(closed, flags).run();
}

std::string render_proof(const Verdict& verdict) {
  std::string out = "verdict: " + std::string(to_string(verdict.kind)) + "\n";
  if (!verdict.concluding_rule) {
    out += "  no rule fired (0 steps)\n";
    return out;
  }
  const auto& src = rule_source(*verdict.concluding_rule);
  out += "  rule: " + std::string(rule_id(*verdict.concluding_rule)) + " - " +
         std::string(src.source) + ": \"" + std::string(src.anchors.front()) + "\"\n";
  out += "  assumed flags: ";
  if (verdict.assumed_flags.empty()) out += "none";
  for (std::size_t i = 0; i < verdict.assumed_flags.size(); ++i)
    out += (i ? ", " : "") + verdict.assumed_flags[i];
  out += "\n";
  for (std::size_t s = 0; s < verdict.proof_chain.size(); ++s) {
    const auto& step = verdict.proof_chain[s];
    out += "  step " + std::to_string(s + 1) + " [" + std::string(rule_id(step.rule)) + "] " +
           step.claim + "\n";
    for (auto f : step.facts) {
      const auto& fact = verdict.cited_facts.at(f);
      out += "      fact: " + describe(fact) + "\n";
      if (!fact.provenance.empty()) out += "      provenance: " + fact.provenance + "\n";
    }
    out += "      cites: " + std::string(rule_source(step.rule).source) + ": \"" +
           std::string(step.anchor) + "\"\n";
  }
  return out;
}

int exit_code_for(const std::vector<Verdict>& verdicts) {
  bool not_kahler = false;
  for (const auto& v : verdicts) {
    if (v.kind == VerdictKind::Contradiction) return 11;
    if (v.kind == VerdictKind::NotKahler) not_kahler = true;
  }
  return not_kahler ? 10 : 0;
}

FactStore add_criterion(const FactStore& store, const HnnDecomposition& h,
                        const CriterionResult& result) {
  FactStore next = store.register_decomposition(
      RegisteredDecomposition{h.family, h.orientation, result.ray, result.classification.hnn_class});
  for (const auto& f : result.facts) next = next.add_fact(f);
  return next;
}

}  // namespace bns
