#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bns/facts.hpp"
#include "bns/hnn.hpp"
#include "bns/presentation.hpp"

namespace bns {

// A decomposition registered with the store, for the "every decomposition
// is descending" consistency rule.
struct RegisteredDecomposition {
  std::string family;
  int orientation = 1;
  RayClass ray;
  HnnClass hnn_class = HnnClass::Neither;

  friend bool operator==(const RegisteredDecomposition&, const RegisteredDecomposition&) = default;
};

// Immutable value; every mutation returns a new store.
class FactStore {
 public:
  // Identical claims are stored once; conflicting statuses for one ray are
  // both kept. Throws MalformedCertificate for ill-formed facts.
  FactStore add_fact(const SigmaFact& fact) const;
  FactStore register_decomposition(const RegisteredDecomposition& d) const;
  FactStore add_query(const RayClass& ray) const;

  const std::vector<SigmaFact>& facts() const noexcept { return facts_; }
  const std::vector<RegisteredDecomposition>& decompositions() const noexcept {
    return decompositions_;
  }
  const std::vector<RayClass>& queries() const noexcept { return queries_; }

  // Rays carrying both an IN and a NOT fact.
  std::vector<RayClass> pending_conflicts() const;

 private:
  std::vector<SigmaFact> facts_;
  std::vector<RegisteredDecomposition> decompositions_;
  std::vector<RayClass> queries_;
};

inline FactStore add_fact(const FactStore& store, const SigmaFact& fact) {
  return store.add_fact(fact);
}

enum class VerdictKind { NotKahler, FibersOverHyperbolicOrbifold, Contradiction, Consistent };
std::string_view to_string(VerdictKind k);

enum class Rule { R1, R2, R3, R4, R5, R6, R7 };
std::string_view rule_id(Rule r);

struct RuleSource {
  std::string_view source;                // literature reference
  std::vector<std::string_view> anchors;  // quote anchors; [0] is the rule's own
};
const RuleSource& rule_source(Rule r);

struct ProofStep {
  Rule rule = Rule::R1;
  std::vector<std::size_t> facts;  // indices into Verdict::cited_facts
  std::string claim;
  std::string_view anchor;  // one of rule_source(rule).anchors
};

struct Verdict {
  VerdictKind kind = VerdictKind::Consistent;
  std::vector<ProofStep> proof_chain;
  std::vector<std::string> assumed_flags;  // e.g. "claimed_kahler = true"
  // Facts the chain refers to, copied so the verdict renders standalone.
  std::vector<SigmaFact> cited_facts;
  // Rule whose conclusion this verdict is (unset for Consistent).
  std::optional<Rule> concluding_rule;
};

// R3 closure: with commutator_fg = true every queried ray becomes IN_SIGMA.
// Only this rule creates facts.
FactStore saturate(const FactStore& store, const GroupFlags& flags);

// Applies R1..R7 in order to the saturated store. Returns at least one
// verdict: Consistent (with an empty chain) when nothing fires.
std::vector<Verdict> run_inference(const FactStore& store, const GroupFlags& flags);

std::string render_proof(const Verdict& verdict);

// 0 Consistent, 10 NotKahler, 11 Contradiction (Contradiction dominates).
int exit_code_for(const std::vector<Verdict>& verdicts);

// Registers a decomposition and its Brown-criterion facts.
FactStore add_criterion(const FactStore& store, const HnnDecomposition& h,
                        const CriterionResult& result);

}  // namespace bns
