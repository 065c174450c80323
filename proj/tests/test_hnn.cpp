#include <doctest.h>

#include <random>

#include "bns/error.hpp"
#include "bns/hnn.hpp"
#include "fixtures.hpp"

using namespace bns;

namespace {

ErrorKind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("build_group and the associated character") {
  auto h = testing::bs_decomposition(2);
  GroupPresentation g = build_group(h);
  CHECK(g.generators() == std::vector<std::string>{"a", "t"});
  REQUIRE(g.relators().size() == 1);
  CHECK(g.print(g.relators()[0]) == "t a t^-1 a^-2");
  Character chi = associated_character(h);
  CHECK(canonical_ray(chi).to_string() == "(0, 1)");
  CHECK(describe(h) == "<a, t | t a t^-1 = a^2>");

  // ℤ² has no relator from φ = id beyond the commutator.
  auto z = testing::z2_decomposition();
  CHECK(build_group(z).print(build_group(z).relators()[0]) == "t a t^-1 a^-1");
  CHECK(build_group(testing::f2_decomposition()).relators().empty());
}

TEST_CASE("classify examples") {
  auto bs = classify(testing::bs_decomposition(2));
  CHECK(bs.hnn_class == HnnClass::ProperlyDescending);
  CHECK(bs.b1.evidence == SubgroupEvidence::LatticeExact);
  CHECK(classify(testing::z2_decomposition()).hnn_class == HnnClass::NonProper);
  CHECK(classify(testing::f2_decomposition()).hnn_class == HnnClass::Neither);
  for (long n = 2; n <= 6; ++n)
    CHECK(classify(testing::bs_decomposition(n)).hnn_class == HnnClass::ProperlyDescending);
}

TEST_CASE("classify without oracles uses declarations") {
  auto h = testing::bs_decomposition(3, false);
  auto c = classify(h);
  CHECK(c.hnn_class == HnnClass::ProperlyDescending);
  CHECK(c.b1.evidence == SubgroupEvidence::Declared);
  h.declared_b2_equals_base = Tristate::Unknown;
  CHECK(error_kind([&] { classify(h); }) == ErrorKind::UnderdeterminedClassification);
}

TEST_CASE("classification errors") {
  auto h = testing::bs_decomposition(2);
  h.declared_b2_equals_base = Tristate::True;
  CHECK(error_kind([&] { classify(h); }) == ErrorKind::DeclarationMismatch);

  auto bad = testing::bs_decomposition(2);
  bad.b2_generators = {Word::generator(0)};  // a is not in φ(B1) = <a^2>
  bad.declared_b2_equals_base = Tristate::True;
  CHECK(error_kind([&] { classify(bad); }) == ErrorKind::NonInvertiblePhi);
  CHECK(error_kind([&] { stable_letter_inverse(bad); }) == ErrorKind::NonInvertiblePhi);

  auto collide = testing::bs_decomposition(2);
  collide.stable_letter = "a";
  CHECK(error_kind([&] { validate(collide); }) == ErrorKind::SymbolCollision);

  auto uneven = testing::bs_decomposition(2);
  uneven.phi.clear();
  CHECK(error_kind([&] { validate(uneven); }) == ErrorKind::InvalidArgument);

  auto range = testing::bs_decomposition(2);
  range.b1_generators = {Word::generator(4)};
  CHECK(error_kind([&] { validate(range); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("bounded search over a free base") {
  HnnDecomposition h;
  h.base = GroupPresentation({"a", "b"}, {});
  h.base_oracle = oracle_free({"a", "b"});
  h.b1_generators = {Word::generator(0), Word::generator(1)};
  h.b2_generators = {Word::generator(0, 2), Word::generator(1)};
  h.phi = h.b2_generators;
  h.declared_b2_equals_base = Tristate::False;
  auto c = classify(h);
  CHECK(c.b1.evidence == SubgroupEvidence::BoundedSearch);
  CHECK(c.b2.evidence == SubgroupEvidence::Inconclusive);
  CHECK(c.hnn_class == HnnClass::ProperlyDescending);
  h.declared_b2_equals_base = Tristate::Unknown;
  CHECK(error_kind([&] { classify(h); }) == ErrorKind::UnderdeterminedClassification);
  h.declared_b1_equals_base = Tristate::False;
  h.declared_b2_equals_base = Tristate::False;
  CHECK(error_kind([&] { classify(h); }) == ErrorKind::DeclarationMismatch);
}

TEST_CASE("express_in_subgroup") {
  auto o = oracle_free({"a", "b"});
  std::vector<Word> gens = {Word::generator(0), parse_word("b a b^-1", o->alphabet())};
  auto target = parse_word("a b a^2 b^-1", o->alphabet());
  auto x = express_in_subgroup(*o, gens, target, 4, 10000);
  REQUIRE(x);
  Word rebuilt;
  for (const auto& l : x->letters()) rebuilt = rebuilt * gens[l.generator].power(l.exponent);
  CHECK(o->normal_form(rebuilt) == o->normal_form(target));
  CHECK_FALSE(express_in_subgroup(*o, gens, Word::generator(1), 4, 10000));
  CHECK(express_in_subgroup(*o, gens, Word{}, 0, 1)->empty());
}

TEST_CASE("inverse reading of BS(1,2)") {
  auto h = testing::bs_decomposition(2);
  auto inv = stable_letter_inverse(h);
  CHECK(inv.orientation == -1);
  CHECK(inv.stable_label() == "s");
  CHECK(describe(inv) == "<a, s | s a^2 s^-1 = a> with s = t^-1");
  CHECK(classify(inv).hnn_class == HnnClass::ProperlyAscending);
  CHECK(canonical_ray(associated_character(inv)) == antipode(canonical_ray(associated_character(h))));
  // Same group: relators agree up to inversion and conjugation, so the
  // BS oracle kills the inverse reading's relator.
  auto g = build_group(inv);
  for (const auto& r : g.relators()) CHECK(h.group_oracle->is_identity(r));

  auto back = stable_letter_inverse(inv);
  CHECK(back.orientation == 1);
  CHECK(back.b1_generators == h.b1_generators);
  CHECK(back.b2_generators == h.b2_generators);
  CHECK(back.phi == h.phi);
}

TEST_CASE("stable_label avoids base generators") {
  HnnDecomposition h;
  h.base = GroupPresentation({"s", "s1"}, {});
  h.orientation = -1;
  CHECK(h.stable_label() == "s2");
}

TEST_CASE("kernel elements lie in ker χ") {
  for (long n : {2, 3, 5}) {
    auto h = testing::bs_decomposition(n);
    Character chi = associated_character(h);
    for (std::int64_t k = -5; k <= 5; ++k) {
      Word w = kernel_element(h, k, Word::generator(0));
      CHECK(chi(w) == 0);
      AffineElement x = affine_eval(n, w);
      CHECK(x.scale_exponent == 0);
      CHECK(x.translation == rational_power(n, k));
    }
    auto inv = stable_letter_inverse(h);
    CHECK(kernel_element(inv, 1, Word::generator(0)) == kernel_element(h, -1, Word::generator(0)));
  }
  auto h = testing::bs_decomposition(2);
  CHECK_THROWS_AS(kernel_element(h, 1, Word::generator(1)), Error);
}

TEST_CASE("brown_criterion examples") {
  auto h = testing::bs_decomposition(2);
  auto r = brown_criterion(h);
  CHECK(r.ray.to_string() == "(0, 1)");
  REQUIRE(r.facts.size() == 1);
  CHECK(r.facts[0].status == SigmaStatus::InSigma);
  CHECK(r.facts[0].certificate.kind == CertificateKind::DescendingFgHNN);
  CHECK(r.facts[0].certificate.orientation == 1);

  auto ri = brown_criterion(stable_letter_inverse(h));
  CHECK(ri.ray.to_string() == "(0, -1)");
  REQUIRE(ri.facts.size() == 1);
  CHECK(ri.facts[0].status == SigmaStatus::NotInSigma);
  CHECK(ri.facts[0].certificate.kind == CertificateKind::AscendingStructure);
  CHECK(ri.facts[0].certificate.orientation == -1);

  auto z = brown_criterion(testing::z2_decomposition());
  REQUIRE(z.facts.size() == 1);
  CHECK(z.facts[0].status == SigmaStatus::InSigma);
  CHECK(brown_criterion(testing::f2_decomposition()).facts.empty());

  auto infinite = testing::z2_decomposition();
  infinite.base_finitely_generated = false;
  CHECK(brown_criterion(infinite).facts.empty());
}

TEST_CASE("random decompositions: classes and inverse readings (property)") {
  std::mt19937_64 rng(31337);
  int seen[4] = {0, 0, 0, 0};
  for (int i = 0; i < 200; ++i) {
    auto [h, expected] = testing::random_decomposition(rng);
    auto c = classify(h);
    CHECK(c.hnn_class == expected);
    ++seen[static_cast<int>(c.hnn_class)];
    auto inv = stable_letter_inverse(h);
    CHECK(classify(inv).hnn_class == testing::flipped(expected));
    CHECK(canonical_ray(associated_character(inv)) ==
          antipode(canonical_ray(associated_character(h))));
    auto back = stable_letter_inverse(inv);
    CHECK(back.orientation == h.orientation);
    CHECK(classify(back).hnn_class == expected);
    // φ' ∘ φ = id on B1 up to the base relations.
    for (std::size_t j = 0; j < h.b1_generators.size(); ++j)
      CHECK(h.base_oracle->normal_form(back.phi[j]) == h.base_oracle->normal_form(h.phi[j]));
  }
  for (int k = 0; k < 4; ++k) CHECK(seen[k] > 0);
}
