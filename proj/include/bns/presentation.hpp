#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bns/word.hpp"

namespace bns {

enum class Tristate { Unknown, True, False };

std::string_view to_string(Tristate t);
// Accepts "true"/"false"/"unknown" (case-sensitive); nullopt otherwise.
std::optional<Tristate> parse_tristate(std::string_view text);

// User-declared structural hypotheses. None of these are decidable, so they
// only ever enter as declarations.
struct GroupFlags {
  Tristate no_nonabelian_free_subgroups = Tristate::Unknown;
  Tristate amenable = Tristate::Unknown;
  Tristate claimed_kahler = Tristate::Unknown;
  Tristate commutator_fg = Tristate::Unknown;

  // Amenable groups contain no nonabelian free subgroups.
  GroupFlags normalized() const;

  friend bool operator==(const GroupFlags&, const GroupFlags&) = default;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

class GroupPresentation {
 public:
  GroupPresentation() = default;
  // Validates symbols (distinct, well-formed) and relators (non-empty,
  // within range). Throws Error(InvalidPresentation).
  GroupPresentation(std::vector<std::string> generators, std::vector<Word> relators,
                    GroupFlags flags = {});

  // Convenience: relators given as text in the word grammar.
  static GroupPresentation from_text(std::vector<std::string> generators,
                                     const std::vector<std::string>& relators,
                                     GroupFlags flags = {});

  const std::vector<std::string>& generators() const noexcept { return generators_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }
  const GroupFlags& flags() const noexcept { return flags_; }
  std::size_t rank() const noexcept { return generators_.size(); }

  std::optional<std::size_t> index_of(std::string_view symbol) const;

  Word parse(std::string_view text) const { return parse_word(text, generators_); }
  std::string print(const Word& w) const { return print_word(w, generators_); }
  std::string display(const Word& w) const { return display_word(w, generators_); }

  GroupPresentation with_flags(GroupFlags flags) const;

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
  GroupFlags flags_;
};

// Rows are relators, columns generators; entry = total exponent.
IntMatrix exponent_matrix(const GroupPresentation& presentation);

}  // namespace bns
