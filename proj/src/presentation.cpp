#include "bns/presentation.hpp"

#include <algorithm>
#include <set>

#include "bns/error.hpp"

namespace bns {

std::string_view to_string(Tristate t) {
  switch (t) {
    case Tristate::True: return "true";
    case Tristate::False: return "false";
    case Tristate::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<Tristate> parse_tristate(std::string_view text) {
  if (text == "true") return Tristate::True;
  if (text == "false") return Tristate::False;
  if (text == "unknown") return Tristate::Unknown;
  return std::nullopt;
}

GroupFlags GroupFlags::normalized() const {
  GroupFlags f = *this;
  if (f.amenable == Tristate::True) f.no_nonabelian_free_subgroups = Tristate::True;
  return f;
}

GroupPresentation::GroupPresentation(std::vector<std::string> generators,
                                     std::vector<Word> relators, GroupFlags flags)
    : generators_(std::move(generators)),
      relators_(std::move(relators)),
      flags_(flags.normalized()) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (!is_valid_symbol(g))
      throw Error(ErrorKind::InvalidPresentation, "malformed generator symbol '" + g + "'");
    if (!seen.insert(g).second)
      throw Error(ErrorKind::InvalidPresentation, "duplicate generator symbol '" + g + "'");
  }
  for (std::size_t i = 0; i < relators_.size(); ++i) {
    if (relators_[i].empty())
      throw Error(ErrorKind::InvalidPresentation,
                  "relator " + std::to_string(i + 1) + " reduces to the empty word");
    for (const auto& l : relators_[i].letters())
      if (l.generator >= generators_.size())
        throw Error(ErrorKind::InvalidPresentation,
                    "relator " + std::to_string(i + 1) + " uses an undeclared generator");
  }
}

GroupPresentation GroupPresentation::from_text(std::vector<std::string> generators,
                                               const std::vector<std::string>& relators,
                                               GroupFlags flags) {
  std::vector<Word> words;
  words.reserve(relators.size());
  for (const auto& r : relators) words.push_back(parse_word(r, generators));
  return GroupPresentation(std::move(generators), std::move(words), flags);
}

std::optional<std::size_t> GroupPresentation::index_of(std::string_view symbol) const {
  auto it = std::find(generators_.begin(), generators_.end(), symbol);
  if (it == generators_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - generators_.begin());
}

GroupPresentation GroupPresentation::with_flags(GroupFlags flags) const {
  GroupPresentation p = *this;
  p.flags_ = flags.normalized();
  return p;
}

IntMatrix exponent_matrix(const GroupPresentation& presentation) {
  IntMatrix m;
  m.reserve(presentation.relators().size());
  for (const auto& r : presentation.relators())
    m.push_back(r.exponent_sums(presentation.rank()));
  return m;
}

}  // namespace bns
