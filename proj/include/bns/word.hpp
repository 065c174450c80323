#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bns {

struct Letter {
  std::size_t generator = 0;
  std::int64_t exponent = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// A word in the free group on indexed generators, stored as syllables
// (generator, nonzero exponent). Constructed words are always freely
// reduced: adjacent syllables use distinct generators.
class Word {
 public:
  Word() = default;
  // Reduces `letters` on construction.
  explicit Word(std::vector<Letter> letters);

  static Word generator(std::size_t index, std::int64_t exponent = 1);

  std::span<const Letter> letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t syllable_count() const noexcept { return letters_.size(); }
  // Word length over S ∪ S⁻¹, i.e. the sum of |exponent|.
  std::size_t length() const noexcept;

  Word inverse() const;
  Word operator*(const Word& rhs) const;
  Word power(std::int64_t k) const;

  // Total exponent of each generator; `rank` sets the result length.
  std::vector<std::int64_t> exponent_sums(std::size_t rank) const;

  friend bool operator==(const Word&, const Word&) = default;
  // Shortlex: by length, then syllable sequence.
  friend bool shortlex_less(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
};

// Free reduction of an arbitrary syllable list (merges equal neighbours,
// drops zero exponents, cancels). Idempotent.
std::vector<Letter> free_reduce(std::vector<Letter> letters);
inline Word free_reduce(const Word& w) { return w; }

// Word grammar: atoms separated by whitespace; atom := symbol ["^" integer];
// symbol := [A-Za-z][A-Za-z0-9_]*. Throws ParseError with the 1-based
// column of the offending atom.
Word parse_word(std::string_view text, std::span<const std::string> symbols);

// Canonical rendering "t a t^-1 a^-2"; the empty word renders as "".
std::string print_word(const Word& w, std::span<const std::string> symbols);

// Renders with "1" for the empty word, for labels and reports.
std::string display_word(const Word& w, std::span<const std::string> symbols);

bool is_valid_symbol(std::string_view s);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

// All freely reduced words of length ≤ max_length over `rank` generators,
// in shortlex order.
std::vector<Word> all_reduced_words(std::size_t rank, std::size_t max_length);

}  // namespace bns
