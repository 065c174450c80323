#include <doctest.h>

#include <random>

#include "bns/error.hpp"
#include "bns/word.hpp"
#include "support.hpp"

using namespace bns;

namespace {
const std::vector<std::string> AT = {"a", "t"};

Word w(std::vector<Letter> letters) { return Word(std::move(letters)); }
}  // namespace

TEST_CASE("parse_word examples") {
  Word x = parse_word("t a t^-1 a^-2", AT);
  std::vector<Letter> expect = {{1, 1}, {0, 1}, {1, -1}, {0, -2}};
  CHECK(std::vector<Letter>(x.letters().begin(), x.letters().end()) == expect);
  CHECK(parse_word("a a^-1", AT).empty());
  Word merged = parse_word("a^2 a^3 t", AT);
  CHECK(merged == w({{0, 5}, {1, 1}}));
  CHECK(parse_word("", AT).empty());
  CHECK(parse_word("  a   t  ", AT) == w({{0, 1}, {1, 1}}));
  CHECK(parse_word("a^0 t", AT) == Word::generator(1));
}

TEST_CASE("parse_word rejects bad input with a column") {
  try {
    parse_word("a b", AT);
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ErrorKind::UnknownGenerator);
    CHECK(e.column() == 3);
  }
  try {
    parse_word("t a^x", AT);
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ErrorKind::MalformedExponent);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_word("a^", AT), ParseError);
  CHECK_THROWS_AS(parse_word("a^-", AT), ParseError);
  CHECK_THROWS_AS(parse_word("1a", AT), ParseError);
}

TEST_CASE("free_reduce examples") {
  CHECK(free_reduce(std::vector<Letter>{{0, 1}, {0, -1}}).empty());
  CHECK(free_reduce(std::vector<Letter>{{0, 2}, {1, 1}, {1, -1}, {0, -2}}).empty());
  CHECK(free_reduce(std::vector<Letter>{{0, 1}, {1, 2}, {1, 1}}) ==
        std::vector<Letter>{{0, 1}, {1, 3}});
  CHECK(free_reduce(std::vector<Letter>{{0, 0}, {1, 1}}) == std::vector<Letter>{{1, 1}});
}

TEST_CASE("free_reduce is idempotent and yields reduced words") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> gen(0, 2), ex(-3, 3);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Letter> raw;
    for (int j = gen(rng) * 4; j > 0; --j) raw.push_back({static_cast<std::size_t>(gen(rng)), ex(rng)});
    auto once = free_reduce(raw);
    CHECK(free_reduce(once) == once);
    for (std::size_t k = 0; k < once.size(); ++k) {
      CHECK(once[k].exponent != 0);
      if (k) CHECK(once[k].generator != once[k - 1].generator);
    }
  }
}

TEST_CASE("concatenation is associative with identity the empty word") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) {
    Word u = testing::random_word(rng, 3, 6), v = testing::random_word(rng, 3, 6),
         x = testing::random_word(rng, 3, 6);
    CHECK((u * v) * x == u * (v * x));
    CHECK(u * Word{} == u);
    CHECK(Word{} * u == u);
    CHECK((u * u.inverse()).empty());
    CHECK(u.length() == testing::spelled(u).size());
  }
}

TEST_CASE("print / parse round trip") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> syms = {"a", "t", "x_1"};
  for (int i = 0; i < 3000; ++i) {
    Word u = testing::random_word(rng, 3, 10);
    std::string text = print_word(u, syms);
    CHECK(parse_word(text, syms) == u);
    CHECK(print_word(parse_word(text, syms), syms) == text);
  }
  CHECK(print_word(Word{}, syms) == "");
  CHECK(display_word(Word{}, syms) == "1");
  CHECK(print_word(parse_word("t a t^-1 a^-2", AT), AT) == "t a t^-1 a^-2");
}

TEST_CASE("symbols") {
  CHECK(is_valid_symbol("a"));
  CHECK(is_valid_symbol("x_12"));
  CHECK_FALSE(is_valid_symbol("1a"));
  CHECK_FALSE(is_valid_symbol(""));
  CHECK_FALSE(is_valid_symbol("a-b"));
}

TEST_CASE("all_reduced_words counts and order") {
  // 1 + 2r + 2r(2r-1) + ... reduced words in the free group of rank r.
  CHECK(all_reduced_words(2, 0).size() == 1);
  CHECK(all_reduced_words(2, 1).size() == 5);
  CHECK(all_reduced_words(2, 2).size() == 17);
  CHECK(all_reduced_words(2, 5).size() == 1 + 4 + 12 + 36 + 108 + 324);
  CHECK(all_reduced_words(3, 3).size() == 1 + 6 + 30 + 150);
  auto words = all_reduced_words(2, 4);
  for (std::size_t i = 1; i < words.size(); ++i) CHECK(shortlex_less(words[i - 1], words[i]));
}

TEST_CASE("power and exponent sums") {
  Word x = parse_word("t a t^-1", AT);
  CHECK(x.power(3) == parse_word("t a^3 t^-1", AT));
  CHECK(x.power(-2) == parse_word("t a^-2 t^-1", AT));
  CHECK(x.power(0).empty());
  CHECK(parse_word("t a t^-1 a^-2", AT).exponent_sums(2) == std::vector<std::int64_t>{-1, 0});
}
