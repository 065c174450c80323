#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bns/error.hpp"
#include "bns/inference.hpp"
#include "bns/valuation.hpp"
#include "fixtures.hpp"

using namespace bns;

namespace {

RayClass ray(long x, long y) { return RayClass({x, y}); }

SigmaFact user(const RayClass& r, SigmaStatus s, std::string label = "axiom") {
  Certificate c;
  c.kind = CertificateKind::UserAxiom;
  c.label = std::move(label);
  return SigmaFact{r, s, c, "test"};
}

SigmaFact hnn_fact(const RayClass& r, SigmaStatus s, std::string family, int orientation) {
  Certificate c;
  c.kind = s == SigmaStatus::InSigma ? CertificateKind::DescendingFgHNN
                                     : CertificateKind::AscendingStructure;
  c.family = std::move(family);
  c.orientation = orientation;
  return SigmaFact{r, s, c, "test"};
}

GroupFlags flags_with(Tristate GroupFlags::*field) {
  GroupFlags f;
  f.*field = Tristate::True;
  return f;
}

std::set<std::pair<VerdictKind, Rule>> fired(const std::vector<Verdict>& vs) {
  std::set<std::pair<VerdictKind, Rule>> out;
  for (const auto& v : vs)
    if (v.concluding_rule) out.insert({v.kind, *v.concluding_rule});
  return out;
}

bool fires(const std::vector<Verdict>& vs, Rule r) {
  return std::any_of(vs.begin(), vs.end(),
                     [r](const Verdict& v) { return v.concluding_rule == r; });
}

FactStore criterion_store(const HnnDecomposition& h) {
  FactStore s;
  s = add_criterion(s, h, brown_criterion(h));
  auto inv = stable_letter_inverse(h);
  return add_criterion(s, inv, brown_criterion(inv));
}

}  // namespace

TEST_CASE("fact store: idempotent add, conflicts, validation") {
  FactStore s;
  s = s.add_fact(user(ray(0, 1), SigmaStatus::NotInSigma));
  s = s.add_fact(user(ray(0, 1), SigmaStatus::NotInSigma));
  CHECK(s.facts().size() == 1);
  // Provenance text does not make a new claim.
  SigmaFact other = user(ray(0, 1), SigmaStatus::NotInSigma);
  other.provenance = "elsewhere";
  CHECK(s.add_fact(other).facts().size() == 1);
  CHECK(s.pending_conflicts().empty());
  s = s.add_fact(user(ray(0, 1), SigmaStatus::InSigma));
  CHECK(s.facts().size() == 2);
  CHECK(s.pending_conflicts() == std::vector<RayClass>{ray(0, 1)});

  SigmaFact bad = user(ray(1, 0), SigmaStatus::NotInSigma);
  bad.certificate.kind = CertificateKind::ValuationWitness;
  bad.certificate.axiom_report = AxiomSummary{false, 10, 10, 3, 5};
  CHECK_THROWS_AS(s.add_fact(bad), Error);
  bad.certificate.axiom_report.reset();
  CHECK_THROWS_AS(s.add_fact(bad), Error);
  CHECK_THROWS_AS(s.add_fact(hnn_fact(ray(1, 0), SigmaStatus::InSigma, "", 1)), Error);
  SigmaFact wrong = hnn_fact(ray(1, 0), SigmaStatus::InSigma, "x", 1);
  wrong.status = SigmaStatus::NotInSigma;
  CHECK_THROWS_AS(s.add_fact(wrong), Error);
  CHECK_THROWS_AS(s.add_fact(user(ray(1, 0), SigmaStatus::InSigma, "")), Error);
  CHECK(s.facts().size() == 2);
}

TEST_CASE("no facts: Consistent with an empty chain") {
  auto v = run_inference(FactStore{}, GroupFlags{});
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == VerdictKind::Consistent);
  CHECK(v[0].proof_chain.empty());
  CHECK(exit_code_for(v) == 0);
  CHECK(render_proof(v[0]).find("0 steps") != std::string::npos);
}

TEST_CASE("R1: antipodal NOT facts without free subgroups") {
  FactStore s;
  s = s.add_fact(user(ray(0, 1), SigmaStatus::NotInSigma, "u1"));
  s = s.add_fact(user(ray(0, -1), SigmaStatus::NotInSigma, "u2"));
  auto v = run_inference(s, flags_with(&GroupFlags::no_nonabelian_free_subgroups));
  CHECK(fires(v, Rule::R1));
  CHECK(exit_code_for(v) == 11);
  const auto& r1 = *std::find_if(v.begin(), v.end(), [](const Verdict& x) { return x.concluding_rule == Rule::R1; });
  CHECK(r1.kind == VerdictKind::Contradiction);
  CHECK(r1.cited_facts.size() == 2);
  CHECK(r1.proof_chain.size() == 3);
  CHECK(r1.assumed_flags == std::vector<std::string>{"no_nonabelian_free_subgroups = true"});
  // amenable implies the flag.
  CHECK(fires(run_inference(s, flags_with(&GroupFlags::amenable)), Rule::R1));
  auto plain = run_inference(s, GroupFlags{});
  CHECK(plain.size() == 1);
  CHECK(plain[0].kind == VerdictKind::Consistent);
  // Non-antipodal pair: nothing.
  FactStore t = FactStore{}.add_fact(user(ray(0, 1), SigmaStatus::NotInSigma))
                    .add_fact(user(ray(1, 0), SigmaStatus::NotInSigma));
  CHECK_FALSE(fires(run_inference(t, flags_with(&GroupFlags::no_nonabelian_free_subgroups)), Rule::R1));
}

TEST_CASE("R2: asymmetric facts refute a Kahler claim") {
  FactStore s = FactStore{}.add_fact(user(ray(1, 2), SigmaStatus::InSigma))
                    .add_fact(user(ray(-1, -2), SigmaStatus::NotInSigma));
  auto v = run_inference(s, flags_with(&GroupFlags::claimed_kahler));
  CHECK(fires(v, Rule::R2));
  CHECK(exit_code_for(v) == 10);
  CHECK_FALSE(fires(run_inference(s, GroupFlags{}), Rule::R2));
}

TEST_CASE("R3: finitely generated commutator subgroup") {
  FactStore s = FactStore{}.add_query(ray(0, 1)).add_query(ray(1, 0));
  GroupFlags f = flags_with(&GroupFlags::commutator_fg);
  FactStore closed = saturate(s, f);
  CHECK(closed.facts().size() == 2);
  for (const auto& fact : closed.facts()) {
    CHECK(fact.status == SigmaStatus::InSigma);
    CHECK(fact.certificate.kind == CertificateKind::AbelianQuotientRule);
  }
  CHECK(saturate(closed, f).facts().size() == 2);
  CHECK(saturate(s, GroupFlags{}).facts().empty());
  CHECK(exit_code_for(run_inference(s, f)) == 0);
  auto v = run_inference(s.add_fact(user(ray(0, 1), SigmaStatus::NotInSigma)), f);
  CHECK(fires(v, Rule::R3));
  CHECK(exit_code_for(v) == 11);
}

TEST_CASE("R4 fires for BS(1,n) from the two readings, never for Z^2") {
  for (long n = 2; n <= 6; ++n) {
    auto h = testing::bs_decomposition(n);
    FactStore s = criterion_store(h);
    CHECK(s.facts().size() == 2);
    CHECK(s.decompositions().size() == 2);
    auto v = run_inference(s, GroupFlags{});
    REQUIRE(fires(v, Rule::R4));
    CHECK(exit_code_for(v) == 10);
    const auto& r4 = *std::find_if(v.begin(), v.end(), [](const Verdict& x) { return x.concluding_rule == Rule::R4; });
    CHECK(r4.kind == VerdictKind::NotKahler);
    REQUIRE(r4.proof_chain.size() == 3);
    const auto& anchors = rule_source(Rule::R4).anchors;
    CHECK(r4.proof_chain[0].anchor == anchors[1]);
    CHECK(r4.proof_chain[1].anchor == anchors[2]);
    CHECK(r4.proof_chain[2].anchor == anchors[3]);
    std::string text = render_proof(r4);
    CHECK(text.find("taking the stable letter s=t⁻¹ instead") != std::string::npos);
    CHECK(text.find("has symmetric BNS invariant") != std::string::npos);
    CHECK(text.find("R4") != std::string::npos);
  }
  FactStore z = criterion_store(testing::z2_decomposition());
  auto v = run_inference(z, GroupFlags{});
  CHECK_FALSE(fires(v, Rule::R4));
  CHECK(exit_code_for(v) == 0);
}

TEST_CASE("R4 needs matching family and opposite orientation") {
  FactStore s = FactStore{}.add_fact(hnn_fact(ray(0, 1), SigmaStatus::InSigma, "x", 1))
                    .add_fact(hnn_fact(ray(0, -1), SigmaStatus::NotInSigma, "y", -1));
  CHECK_FALSE(fires(run_inference(s, GroupFlags{}), Rule::R4));
  FactStore t = FactStore{}.add_fact(hnn_fact(ray(0, 1), SigmaStatus::InSigma, "x", 1))
                    .add_fact(hnn_fact(ray(0, -1), SigmaStatus::NotInSigma, "x", 1));
  CHECK_FALSE(fires(run_inference(t, GroupFlags{}), Rule::R4));
}

TEST_CASE("R5 and R6 need a Kahler claim") {
  FactStore s = FactStore{}.add_fact(hnn_fact(ray(0, -1), SigmaStatus::NotInSigma, "x", -1));
  CHECK_FALSE(fires(run_inference(s, GroupFlags{}), Rule::R5));
  auto v = run_inference(s, flags_with(&GroupFlags::claimed_kahler));
  CHECK(fires(v, Rule::R5));
  CHECK(exit_code_for(v) == 0);  // a recorded consequence, not a refutation

  GroupFlags both;
  both.amenable = Tristate::True;
  both.claimed_kahler = Tristate::True;
  auto w = run_inference(FactStore{}.add_fact(user(ray(2, 1), SigmaStatus::NotInSigma)), both);
  CHECK(fires(w, Rule::R6));
  CHECK(exit_code_for(w) == 10);
  CHECK_FALSE(fires(run_inference(FactStore{}.add_fact(user(ray(2, 1), SigmaStatus::NotInSigma)),
                                  flags_with(&GroupFlags::amenable)),
                    Rule::R6));
}

TEST_CASE("R7: descending certificate against an ascending decomposition") {
  FactStore s = FactStore{}.add_fact(hnn_fact(ray(0, 1), SigmaStatus::InSigma, "x", 1));
  CHECK_FALSE(fires(run_inference(s, GroupFlags{}), Rule::R7));
  FactStore t = s.register_decomposition({"y", 1, ray(0, 1), HnnClass::ProperlyAscending});
  auto v = run_inference(t, GroupFlags{});
  CHECK(fires(v, Rule::R7));
  CHECK(exit_code_for(v) == 11);
  FactStore u = s.add_fact(user(ray(0, 1), SigmaStatus::NotInSigma));
  CHECK(fires(run_inference(u, GroupFlags{}), Rule::R7));
}

TEST_CASE("exit codes: Contradiction dominates") {
  Verdict nk;
  nk.kind = VerdictKind::NotKahler;
  Verdict c;
  c.kind = VerdictKind::Contradiction;
  Verdict f;
  f.kind = VerdictKind::FibersOverHyperbolicOrbifold;
  CHECK(exit_code_for({nk}) == 10);
  CHECK(exit_code_for({nk, c}) == 11);
  CHECK(exit_code_for({c, nk}) == 11);
  CHECK(exit_code_for({f}) == 0);
  CHECK(exit_code_for({Verdict{}}) == 0);
}

TEST_CASE("render_proof lists flags, facts and anchors") {
  FactStore s = FactStore{}.add_fact(user(ray(0, 1), SigmaStatus::NotInSigma, "u1"))
                    .add_fact(user(ray(0, -1), SigmaStatus::NotInSigma, "u2"));
  auto v = run_inference(s, flags_with(&GroupFlags::no_nonabelian_free_subgroups));
  std::string text = render_proof(v[0]);
  CHECK(text.find("verdict: Contradiction") != std::string::npos);
  CHECK(text.find("no nonabelian free subgroups") != std::string::npos);
  CHECK(text.find("assumed flags: no_nonabelian_free_subgroups = true") != std::string::npos);
  CHECK(text.find("NOT_IN_SIGMA (0, 1) via UserAxiom(u1)") != std::string::npos);
  CHECK(text.find("step 3 [R1]") != std::string::npos);
}

TEST_CASE("valuation facts join the chain") {
  auto h = testing::bs_decomposition(2);
  FactStore s = criterion_store(h);
  HnnValuation val = bs_valuation(2);
  auto sample = all_reduced_words(2, 3);
  auto report = check_valuation_axioms(val, sample, 5000, 20);
  s = s.add_fact(valuation_fact(val, report));
  CHECK(s.facts().size() == 3);
  auto v = run_inference(s, GroupFlags{});
  CHECK(fires(v, Rule::R4));
  CHECK(exit_code_for(v) == 10);
}

TEST_CASE("inference is monotone and idempotent (property)") {
  std::mt19937_64 rng(8);
  const std::vector<RayClass> rays = {ray(0, 1), ray(0, -1), ray(1, 0), ray(-1, 0), ray(1, 1), ray(-1, -1)};
  std::uniform_int_distribution<std::size_t> pick(0, rays.size() - 1), kind(0, 2), count(0, 6);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 300; ++trial) {
    GroupFlags flags;
    flags.no_nonabelian_free_subgroups = coin(rng) ? Tristate::True : Tristate::Unknown;
    flags.claimed_kahler = coin(rng) ? Tristate::True : Tristate::Unknown;
    flags.amenable = coin(rng) ? Tristate::True : Tristate::Unknown;
    flags.commutator_fg = coin(rng) ? Tristate::True : Tristate::Unknown;
    auto random_fact = [&] {
      const RayClass& r = rays[pick(rng)];
      switch (kind(rng)) {
        case 0: return user(r, coin(rng) ? SigmaStatus::InSigma : SigmaStatus::NotInSigma, "u");
        case 1: return hnn_fact(r, SigmaStatus::InSigma, "f", 1);
        default: return hnn_fact(r, SigmaStatus::NotInSigma, "f", -1);
      }
    };
    FactStore small;
    for (std::size_t i = count(rng); i > 0; --i) small = small.add_fact(random_fact());
    if (coin(rng)) small = small.add_query(rays[pick(rng)]);
    FactStore big = small;
    for (std::size_t i = count(rng); i > 0; --i) big = big.add_fact(random_fact());

    auto a = fired(run_inference(small, flags));
    auto b = fired(run_inference(big, flags));
    CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    CHECK(exit_code_for(run_inference(big, flags)) >= exit_code_for(run_inference(small, flags)));

    FactStore twice = small;
    for (const auto& f : small.facts()) twice = twice.add_fact(f);
    CHECK(twice.facts().size() == small.facts().size());
    CHECK(fired(run_inference(twice, flags)) == a);
    CHECK(fired(run_inference(saturate(small, flags), flags)) == a);
  }
}
