#include "bns/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "bns/error.hpp"

namespace bns {

std::vector<Letter> free_reduce(std::vector<Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (const auto& l : letters) {
    if (l.exponent == 0) continue;
    if (!out.empty() && out.back().generator == l.generator) {
      out.back().exponent += l.exponent;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word::Word(std::vector<Letter> letters) : letters_(free_reduce(std::move(letters))) {}

Word Word::generator(std::size_t index, std::int64_t exponent) {
  return Word({Letter{index, exponent}});
}

std::size_t Word::length() const noexcept {
  std::size_t n = 0;
  for (const auto& l : letters_) n += static_cast<std::size_t>(std::llabs(l.exponent));
  return n;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(Letter{it->generator, -it->exponent});
  return w;
}

Word Word::operator*(const Word& rhs) const {
  // Cancellation only happens at the seam.
  Word w;
  w.letters_ = letters_;
  for (const auto& l : rhs.letters_) {
    if (!w.letters_.empty() && w.letters_.back().generator == l.generator) {
      w.letters_.back().exponent += l.exponent;
      if (w.letters_.back().exponent == 0) w.letters_.pop_back();
    } else {
      w.letters_.push_back(l);
    }
  }
  return w;
}

Word Word::power(std::int64_t k) const {
  Word base = k < 0 ? inverse() : *this;
  Word out;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
  return out;
}

std::vector<std::int64_t> Word::exponent_sums(std::size_t rank) const {
  std::vector<std::int64_t> sums(rank, 0);
  for (const auto& l : letters_)
    if (l.generator < rank) sums[l.generator] += l.exponent;
  return sums;
}

bool shortlex_less(const Word& a, const Word& b) {
  auto la = a.length(), lb = b.length();
  if (la != lb) return la < lb;
  return std::lexicographical_compare(a.letters_.begin(), a.letters_.end(),
                                      b.letters_.begin(), b.letters_.end());
}

bool is_valid_symbol(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Word parse_word(std::string_view text, std::span<const std::string> symbols) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i == text.size()) break;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    std::string_view atom = text.substr(start, i - start);
    auto caret = atom.find('^');
    std::string_view sym = atom.substr(0, caret);
    if (!is_valid_symbol(sym))
      throw ParseError(ErrorKind::Parse,
                       "malformed symbol '" + std::string(sym) + "'", 0, start + 1);
    auto found = std::find(symbols.begin(), symbols.end(), sym);
    if (found == symbols.end())
      throw ParseError(ErrorKind::UnknownGenerator,
                       "unknown generator '" + std::string(sym) + "'", 0, start + 1);
    std::int64_t exponent = 1;
    if (caret != std::string_view::npos) {
      std::string_view num = atom.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), exponent);
      if (num.empty() || ec != std::errc{} || ptr != num.data() + num.size())
        throw ParseError(ErrorKind::MalformedExponent,
                         "malformed exponent in '" + std::string(atom) + "'", 0,
                         start + caret + 2);
    }
    letters.push_back(
        Letter{static_cast<std::size_t>(found - symbols.begin()), exponent});
  }
  return Word(std::move(letters));
}

std::string print_word(const Word& w, std::span<const std::string> symbols) {
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += l.generator < symbols.size() ? symbols[l.generator]
                                        : "g" + std::to_string(l.generator);
    if (l.exponent != 1) out += "^" + std::to_string(l.exponent);
  }
  return out;
}

std::string display_word(const Word& w, std::span<const std::string> symbols) {
  return w.empty() ? std::string("1") : print_word(w, symbols);
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& l : w.letters()) {
    h ^= std::hash<std::size_t>{}(l.generator) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::int64_t>{}(l.exponent) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<Word> all_reduced_words(std::size_t rank, std::size_t max_length) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (std::size_t g = 0; g < rank; ++g) {
        for (std::int64_t e : {1, -1}) {
          Word x = w * Word::generator(g, e);
          if (x.length() == len) next.push_back(std::move(x));
        }
      }
    }
    std::sort(next.begin(), next.end(), shortlex_less);
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace bns
