#include <doctest.h>

#include "bns/error.hpp"
#include "bns/io.hpp"

using namespace bns;
using namespace bns::io;

namespace {

const char* BS12_PRES = R"(# BS(1,2)
generators = ["a", "t"]
relators = ["t a t^-1 a^-2"]
flags = { amenable = "true" }
family = "bs"
n = 2
)";

const char* BS12_HNN = R"(name = "bs12"
stable_letter = "t"
b1 = ["a"]
b2 = ["a^2"]
b1_equals_base = "true"
b2_equals_base = "false"
group_family = { kind = "bs", n = 2 }

[base]
generators = ["a"]
relators = []
family = "free_abelian"

[phi]
a -> a^2
)";

template <typename F>
ParseError parse_error(F f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a ParseError");
  return ParseError(ErrorKind::Parse, "", 0, 0);
}

}  // namespace

TEST_CASE("parse_kv") {
  auto doc = parse_kv(R"(# top
x = 3
name = "hello"  # trailing comment
list = [1,
        2, "three"]
table = { a = 1, b = { c = bare } }

[section]
y = -7
[raw]
a -> b
)", {"raw"});
  const KvSection* top = doc.section("");
  REQUIRE(top);
  CHECK(top->find("x")->as_integer("x") == 3);
  CHECK(top->find("name")->as_string("name") == "hello");
  CHECK(top->find("list")->as_array("list").size() == 3);
  CHECK(top->find("list")->line == 4);
  const auto& t = *top->find("table");
  CHECK(t.find("b")->find("c")->as_string("c") == "bare");
  CHECK(doc.section("section")->find("y")->as_integer("y") == -7);
  REQUIRE(doc.section("raw")->raw_lines.size() == 1);
  CHECK(doc.section("raw")->raw_lines[0].second == "a -> b");
  CHECK(doc.section("missing") == nullptr);

  CHECK(parse_error([] { parse_kv("x = [1, 2"); }).line() == 1);
  CHECK(parse_error([] { parse_kv("x = 1\ny 2"); }).line() == 2);
  CHECK(parse_error([] { parse_kv("x = \"open"); }).column() > 0);
  CHECK_THROWS_AS(parse_kv("x = 1\nx = 2"), ParseError);
  CHECK_THROWS_AS(parse_kv("[a]\n[a]"), ParseError);
  CHECK_THROWS_AS(parse_kv("a -> b"), ParseError);
}

TEST_CASE("presentation files") {
  auto p = parse_presentation(BS12_PRES);
  CHECK(p.presentation->generators() == std::vector<std::string>{"a", "t"});
  CHECK(p.presentation->flags().amenable == Tristate::True);
  CHECK(p.presentation->flags().no_nonabelian_free_subgroups == Tristate::True);
  CHECK(p.family.kind == "bs");
  CHECK(p.family.n == 2);
  REQUIRE(p.oracle);
  CHECK(p.oracle->is_identity(p.presentation->parse("t a t^-1 a^-2")));

  auto none = parse_presentation("generators = [\"x\", \"y\"]\nrelators = [\"x y x^-1 y^-1\"]\nfamily = \"none\"\n");
  CHECK_FALSE(none.oracle);

  auto bad_gen = parse_error([] { parse_presentation("generators = [\"a\"]\nrelators = [\"a b\"]\n"); });
  CHECK(bad_gen.kind() == ErrorKind::UnknownGenerator);
  CHECK(bad_gen.line() == 2);
  CHECK(bad_gen.column() > 13);
  CHECK(parse_error([] { parse_presentation("generators = [\"a\"]\ncolour = 1\n"); }).line() == 2);
  // The oracle must actually satisfy the relators.
  CHECK_THROWS_AS(parse_presentation("generators = [\"a\", \"t\"]\nrelators = [\"t a t^-1 a^-3\"]\nfamily = \"bs\"\nn = 2\n"),
                  Error);
  CHECK_THROWS_AS(parse_presentation("generators = [\"a\"]\nfamily = \"mystery\"\n"), Error);
}

TEST_CASE("product families") {
  auto p = parse_presentation(R"(generators = ["a", "b", "z"]
relators = ["a z a^-1 z^-1", "b z b^-1 z^-1"]
family = { kind = "product", first = { kind = "free", generators = ["a", "b"] }, second = { kind = "free_abelian", generators = ["z"] } }
)");
  REQUIRE(p.oracle);
  CHECK(p.oracle->is_identity(p.presentation->parse("z a b z^-1 b^-1 a^-1")));
  CHECK_FALSE(p.oracle->is_identity(p.presentation->parse("a b a^-1 b^-1")));
  CHECK(format_oracle_spec(p.family).find("product") != std::string::npos);
}

TEST_CASE("character files") {
  auto p = parse_presentation(BS12_PRES).presentation;
  Character chi = parse_character("a = 0\nt = 3/2\n", p);
  CHECK(canonical_ray(chi).to_string() == "(0, 1)");
  CHECK(chi(p->parse("t")) == Rational(3, 2));
  auto missing = parse_error([&] { parse_character("a = 0\n", p); });
  CHECK(missing.kind() == ErrorKind::Parse);
  auto unknown = parse_error([&] { parse_character("a = 0\nt = 1\nb = 2\n", p); });
  CHECK(unknown.kind() == ErrorKind::UnknownGenerator);
  CHECK(unknown.line() == 3);
  CHECK_THROWS_AS(parse_character("a = 0\nt = x\n", p), ParseError);
  CHECK_THROWS_AS(parse_character("a = 0\na = 1\nt = 1\n", p), ParseError);
  try {
    parse_character("a = 1\nt = 0\n", p);
    FAIL("expected RelatorNonVanishing");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RelatorNonVanishing);
  }
}

TEST_CASE("decomposition files") {
  auto d = parse_decomposition(BS12_HNN);
  const auto& h = d.decomposition;
  CHECK(h.family == "bs12");
  CHECK(h.stable_letter == "t");
  CHECK(h.orientation == 1);
  CHECK(h.declared_b1_equals_base == Tristate::True);
  CHECK(h.declared_b2_equals_base == Tristate::False);
  CHECK(h.phi == std::vector<Word>{Word::generator(0, 2)});
  REQUIRE(h.base_oracle);
  REQUIRE(h.group_oracle);
  CHECK(classify(h).hnn_class == HnnClass::ProperlyDescending);
  CHECK(d.group_family.kind == "bs");

  CHECK(parse_decomposition(std::string(BS12_HNN).substr(std::string(BS12_HNN).find('\n') + 1), "fallback")
            .decomposition.family == "fallback");

  std::string bad_phi = BS12_HNN;
  bad_phi.replace(bad_phi.find("a -> a^2"), 8, "b -> a^2");
  auto e = parse_error([&] { parse_decomposition(bad_phi); });
  CHECK(e.kind() == ErrorKind::UnknownGenerator);
  CHECK(e.line() == 15);

  std::string collide = BS12_HNN;
  collide.replace(collide.find("stable_letter = \"t\""), 19, "stable_letter = \"a\"");
  CHECK_THROWS_AS(parse_decomposition(collide), Error);
}

TEST_CASE("decomposition round trip and inversion") {
  auto d = parse_decomposition(BS12_HNN);
  std::string text = format_decomposition(d);
  auto again = parse_decomposition(text);
  CHECK(format_decomposition(again) == text);
  CHECK(again.decomposition.phi == d.decomposition.phi);
  CHECK(again.decomposition.b2_generators == d.decomposition.b2_generators);

  auto inv = invert(d);
  CHECK(inv.decomposition.orientation == -1);
  std::string inv_text = format_decomposition(inv);
  CHECK(inv_text.find("a^2 -> a") != std::string::npos);
  auto reread = parse_decomposition(inv_text);
  CHECK(reread.decomposition.orientation == -1);
  CHECK(classify(reread.decomposition).hnn_class == HnnClass::ProperlyAscending);
  CHECK(format_decomposition(invert(reread)) == text);
}

TEST_CASE("facts files") {
  auto f = parse_facts(R"(# comment
flags = { no_free_subgroups = "true" }
query = (1, 0)
decomposition = "bs12"; ray = (0, -1); class = ascending; orientation = -1
ray = (0, 1); status = in; certificate = descending_fg_hnn; family = "bs12"; orientation = 1
ray = (0, -2); status = out; certificate = valuation_witness; label = "v"; report = pass; words_checked = 5; pairs_checked = 25; violations = 0; witness_depth = 20
ray = (1, 1); status = out; certificate = user_axiom; label = "assumed"; note = "n"; provenance = "p"
)");
  CHECK(f.flags.no_nonabelian_free_subgroups == Tristate::True);
  CHECK(f.store.queries() == std::vector<RayClass>{RayClass({1, 0})});
  REQUIRE(f.store.decompositions().size() == 1);
  CHECK(f.store.decompositions()[0].hnn_class == HnnClass::ProperlyAscending);
  REQUIRE(f.store.facts().size() == 3);
  CHECK(f.store.facts()[1].ray.to_string() == "(0, -1)");
  CHECK(f.store.facts()[1].certificate.axiom_report->pairs_checked == 25);
  CHECK(f.store.facts()[2].provenance == "p");

  for (const auto& fact : f.store.facts()) {
    auto back = parse_facts(format_fact(fact));
    REQUIRE(back.store.facts().size() == 1);
    CHECK(back.store.facts()[0].same_claim(fact));
    CHECK(back.store.facts()[0].provenance == fact.provenance);
  }

  auto e = parse_error([] { parse_facts("ray = (0, 1); status = maybe; certificate = user_axiom; label = \"x\"\n"); });
  CHECK(e.line() == 1);
  CHECK(parse_error([] { parse_facts("\nray = (0, 1); certificate = user_axiom\n"); }).line() == 2);
  CHECK_THROWS_AS(parse_facts("ray = (0, 0); status = in; certificate = user_axiom; label = \"x\"\n"), Error);
  // A failing report cannot back a valuation certificate.
  CHECK_THROWS_AS(parse_facts("ray = (0, 1); status = out; certificate = valuation_witness; label = \"v\"; report = fail\n"),
                  Error);
}

TEST_CASE("flags round trip") {
  GroupFlags f;
  f.amenable = Tristate::True;
  f.claimed_kahler = Tristate::False;
  auto doc = parse_kv("flags = " + format_flags(f));
  GroupFlags back = parse_flags(*doc.section("")->find("flags"));
  CHECK(back == f.normalized());
  CHECK_THROWS_AS(parse_flags(*parse_kv("flags = { shiny = \"true\" }").section("")->find("flags")), ParseError);
}

TEST_CASE("file helpers") {
  CHECK(looks_like_decomposition(BS12_HNN));
  CHECK_FALSE(looks_like_decomposition(BS12_PRES));
  CHECK_THROWS_AS(read_file("/nonexistent/file.pres"), ParseError);
}
