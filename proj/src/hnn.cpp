#include "bns/hnn.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "bns/error.hpp"
#include "bns/smith.hpp"

namespace bns {

std::string_view to_string(HnnClass c) {
  switch (c) {
    case HnnClass::ProperlyDescending: return "ProperlyDescending";
    case HnnClass::ProperlyAscending: return "ProperlyAscending";
    case HnnClass::NonProper: return "NonProper";
    case HnnClass::Neither: return "Neither";
  }
  return "Neither";
}

std::string_view to_string(SubgroupEvidence e) {
  switch (e) {
    case SubgroupEvidence::Declared: return "declared";
    case SubgroupEvidence::LatticeExact: return "lattice-exact";
    case SubgroupEvidence::BoundedSearch: return "bounded-search";
    case SubgroupEvidence::Inconclusive: return "inconclusive";
  }
  return "declared";
}

std::string HnnDecomposition::stable_label() const {
  if (orientation > 0) return stable_letter;
  std::string label = "s";
  for (int i = 1; base.index_of(label) || label == stable_letter; ++i) label = "s" + std::to_string(i);
  return label;
}

namespace {

void check_base_word(const HnnDecomposition& h, const Word& w, const char* what) {
  for (const auto& l : w.letters())
    if (l.generator >= h.base.rank())
      throw Error(ErrorKind::InvalidArgument,
                  std::string(what) + " uses a letter outside the base group");
}

// Substitutes gens[i] for generator i of `expression`.
Word substitute(const Word& expression, const std::vector<Word>& gens) {
  Word out;
  for (const auto& l : expression.letters()) out = out * gens.at(l.generator).power(l.exponent);
  return out;
}

std::vector<Integer> exponent_vector(const Word& w, std::size_t rank) {
  auto sums = w.exponent_sums(rank);
  return {sums.begin(), sums.end()};
}

BigMatrix lattice_rows(const std::vector<Word>& gens, std::size_t rank) {
  BigMatrix m;
  for (const auto& g : gens) m.push_back(exponent_vector(g, rank));
  return m;
}

Word word_from_coefficients(const std::vector<Integer>& x) {
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) letters.push_back(Letter{i, x[i].get_si()});
  return Word(std::move(letters));
}

// Free reduction as a sound (incomplete) oracle for bases without one.
class FreeReduction final : public WordOracle {
 public:
  explicit FreeReduction(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {}
  const std::vector<std::string>& alphabet() const override { return symbols_; }
  Word normal_form(const Word& w) const override { return w; }
  std::string family() const override { return "free-reduction"; }

 private:
  std::vector<std::string> symbols_;
};

struct Membership {
  std::optional<Word> expression;  // over generator indices
  bool decided = false;            // true when a negative answer is proof
};

Membership membership(const HnnDecomposition& h, const std::vector<Word>& gens, const Word& target,
                      const ClassifyOptions& options) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i] == target) return {Word::generator(i), true};
  if (h.base_oracle && h.base_oracle->is_free_abelian()) {
    const std::size_t rank = h.base.rank();
    if (gens.empty()) {
      bool trivial = target.exponent_sums(rank) == std::vector<std::int64_t>(rank, 0);
      return {trivial ? std::optional<Word>(Word{}) : std::nullopt, true};
    }
    auto x = solve_in_row_lattice(lattice_rows(gens, rank), rank, exponent_vector(target, rank));
    if (!x) return {std::nullopt, true};
    return {word_from_coefficients(*x), true};
  }
  if (h.base_oracle)
    return {express_in_subgroup(*h.base_oracle, gens, target, options.search_length,
                                options.search_budget),
            false};
  FreeReduction fr(h.base.generators());
  return {express_in_subgroup(fr, gens, target, options.search_length, options.search_budget),
          false};
}

SideCheck check_side(const HnnDecomposition& h, const std::vector<Word>& gens, Tristate declared,
                     const char* side, const ClassifyOptions& options) {
  if (!h.base_oracle) {
    if (declared == Tristate::Unknown)
      throw Error(ErrorKind::UnderdeterminedClassification,
                  std::string("whether ") + side +
                      " equals the base is undeclared and no base oracle is available");
    return {declared == Tristate::True, SubgroupEvidence::Declared};
  }
  const bool exact = h.base_oracle->is_free_abelian();
  bool all_found = true;
  for (std::size_t g = 0; g < h.base.rank() && all_found; ++g)
    all_found = membership(h, gens, Word::generator(g), options).expression.has_value();

  auto mismatch = [&](bool actual) {
    return Error(ErrorKind::DeclarationMismatch,
                 std::string(side) + " = base declared " + std::string(to_string(declared)) +
                     " but the " + h.base_oracle->family() + " oracle shows it is " +
                     (actual ? "true" : "false"));
  };
  if (exact) {
    if (declared != Tristate::Unknown && (declared == Tristate::True) != all_found)
      throw mismatch(all_found);
    return {all_found, SubgroupEvidence::LatticeExact};
  }
  if (all_found) {
    if (declared == Tristate::False) throw mismatch(true);
    return {true, SubgroupEvidence::BoundedSearch};
  }
  if (declared == Tristate::Unknown)
    throw Error(ErrorKind::UnderdeterminedClassification,
                std::string("bounded search could not decide whether ") + side +
                    " equals the base and nothing is declared");
  return {declared == Tristate::True, SubgroupEvidence::Inconclusive};
}

// φ must be a well-defined injective map onto ⟨b2⟩. Exact over free
// abelian bases, sampled otherwise.
void check_phi(const HnnDecomposition& h, const ClassifyOptions& options) {
  if (!h.base_oracle) return;
  const std::size_t rank = h.base.rank();
  auto fail = [](const std::string& why) {
    return Error(ErrorKind::NonInvertiblePhi, "phi is not an isomorphism B1 -> B2: " + why);
  };
  if (h.base_oracle->is_free_abelian()) {
    BigMatrix m1 = lattice_rows(h.b1_generators, rank);
    BigMatrix p = lattice_rows(h.phi, rank);
    if (!m1.empty()) {
      for (const auto& x : integer_left_kernel(m1, rank)) {
        for (std::size_t j = 0; j < rank; ++j) {
          Integer s = 0;
          for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * p[i][j];
          if (s != 0) throw fail("a relation among B1 generators is not preserved");
        }
      }
      for (const auto& y : integer_left_kernel(p, rank)) {
        for (std::size_t j = 0; j < rank; ++j) {
          Integer s = 0;
          for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * m1[i][j];
          if (s != 0) throw fail("not injective");
        }
      }
    }
    for (const auto& b : h.b2_generators)
      if (!membership(h, h.phi, b, options).expression)
        throw fail("a B2 generator is not in the image of phi");
    for (const auto& img : h.phi)
      if (!membership(h, h.b2_generators, img, options).expression)
        throw fail("an image of phi lies outside B2");
    return;
  }
  // Sampled: short words in the B1 generators and their images must be
  // trivial together.
  const auto samples = all_reduced_words(h.b1_generators.size(), 4);
  for (const auto& w : samples) {
    bool source_trivial = h.base_oracle->is_identity(substitute(w, h.b1_generators));
    bool image_trivial = h.base_oracle->is_identity(substitute(w, h.phi));
    if (source_trivial != image_trivial)
      throw fail(source_trivial ? "a relation among B1 generators is not preserved"
                                : "not injective");
  }
}

}  // namespace

void validate(const HnnDecomposition& h) {
  if (h.orientation != 1 && h.orientation != -1)
    throw Error(ErrorKind::InvalidArgument, "orientation must be +1 or -1");
  if (!is_valid_symbol(h.stable_letter))
    throw Error(ErrorKind::InvalidArgument, "malformed stable letter '" + h.stable_letter + "'");
  if (h.base.index_of(h.stable_letter))
    throw Error(ErrorKind::SymbolCollision,
                "stable letter '" + h.stable_letter + "' is also a base generator");
  if (h.phi.size() != h.b1_generators.size())
    throw Error(ErrorKind::InvalidArgument, "phi must be given on exactly the B1 generators");
  for (const auto& w : h.b1_generators) check_base_word(h, w, "a B1 generator");
  for (const auto& w : h.b2_generators) check_base_word(h, w, "a B2 generator");
  for (const auto& w : h.phi) check_base_word(h, w, "an image of phi");
  if (h.base_oracle && h.base_oracle->alphabet() != h.base.generators())
    throw Error(ErrorKind::InvalidArgument, "base oracle is not bound to the base generators");
}

GroupPresentation build_group(const HnnDecomposition& h) {
  validate(h);
  std::vector<std::string> gens = h.base.generators();
  gens.push_back(h.stable_letter);
  const std::size_t t = h.base.rank();
  std::vector<Word> relators = h.base.relators();
  Word stable = Word::generator(t, h.orientation);
  for (std::size_t i = 0; i < h.b1_generators.size(); ++i) {
    Word r = stable * h.b1_generators[i] * stable.inverse() * h.phi[i].inverse();
    if (!r.empty()) relators.push_back(std::move(r));
  }
  return GroupPresentation(std::move(gens), std::move(relators), h.flags);
}

std::shared_ptr<const GroupPresentation> build_group_ptr(const HnnDecomposition& h) {
  return std::make_shared<const GroupPresentation>(build_group(h));
}

Character associated_character(const HnnDecomposition& h) {
  auto g = build_group_ptr(h);
  std::vector<Rational> values(g->rank(), Rational(0));
  values.back() = h.orientation;
  return Character(g, std::move(values));
}

std::optional<Word> express_in_subgroup(const WordOracle& oracle, const std::vector<Word>& gens,
                                        const Word& target, std::size_t max_length,
                                        std::size_t budget) {
  const Word goal = oracle.normal_form(target);
  if (goal.empty()) return Word{};
  std::unordered_map<Word, Word, WordHash> seen;  // normal form -> expression
  std::deque<std::pair<Word, std::size_t>> queue;
  seen.emplace(Word{}, Word{});
  queue.emplace_back(Word{}, 0);
  while (!queue.empty()) {
    auto [element, depth] = queue.front();
    queue.pop_front();
    if (depth == max_length) continue;
    const Word expr = seen.at(element);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::int64_t e : {1, -1}) {
        Word next = oracle.normal_form(element * gens[i].power(e));
        if (seen.count(next)) continue;
        Word next_expr = expr * Word::generator(i, e);
        if (next == goal) return next_expr;
        if (seen.size() >= budget) return std::nullopt;
        seen.emplace(next, next_expr);
        queue.emplace_back(std::move(next), depth + 1);
      }
    }
  }
  return std::nullopt;
}

Classification classify(const HnnDecomposition& h, const ClassifyOptions& options) {
  validate(h);
  check_phi(h, options);
  Classification c;
  c.b1 = check_side(h, h.b1_generators, h.declared_b1_equals_base, "B1", options);
  c.b2 = check_side(h, h.b2_generators, h.declared_b2_equals_base, "B2", options);
  if (c.b1.equals_base && c.b2.equals_base)
    c.hnn_class = HnnClass::NonProper;
  else if (c.b1.equals_base)
    c.hnn_class = HnnClass::ProperlyDescending;
  else if (c.b2.equals_base)
    c.hnn_class = HnnClass::ProperlyAscending;
  else
    c.hnn_class = HnnClass::Neither;
  return c;
}

HnnDecomposition stable_letter_inverse(const HnnDecomposition& h, const ClassifyOptions& options) {
  validate(h);
  check_phi(h, options);
  HnnDecomposition inv = h;
  inv.orientation = -h.orientation;
  inv.b1_generators = h.b2_generators;
  inv.b2_generators = h.b1_generators;
  inv.declared_b1_equals_base = h.declared_b2_equals_base;
  inv.declared_b2_equals_base = h.declared_b1_equals_base;
  inv.phi.clear();
  for (const auto& b : h.b2_generators) {
    auto m = membership(h, h.phi, b, options);
    if (!m.expression)
      throw Error(ErrorKind::NonInvertiblePhi,
                  "B2 generator '" + h.base.print(b) + "' was not found in the image of phi");
    inv.phi.push_back(substitute(*m.expression, h.b1_generators));
  }
  return inv;
}

Word kernel_element(const HnnDecomposition& h, std::int64_t k, const Word& base_word) {
  check_base_word(h, base_word, "kernel_element base word");
  Word stable = Word::generator(h.base.rank(), h.orientation).power(k);
  return stable * base_word * stable.inverse();
}

std::string describe(const HnnDecomposition& h) {
  const std::string s = h.stable_label();
  std::string out = "<";
  for (const auto& g : h.base.generators()) out += g + ", ";
  out += s + " | ";
  bool first = true;
  for (const auto& r : h.base.relators()) {
    out += (first ? "" : ", ") + h.base.print(r);
    first = false;
  }
  for (std::size_t i = 0; i < h.b1_generators.size(); ++i) {
    out += (first ? "" : ", ") + s + " " + h.base.display(h.b1_generators[i]) + " " + s + "^-1 = " +
           h.base.display(h.phi[i]);
    first = false;
  }
  out += ">";
  if (h.orientation < 0) out += " with " + s + " = " + h.stable_letter + "^-1";
  return out;
}

CriterionResult brown_criterion(const HnnDecomposition& h, const ClassifyOptions& options) {
  CriterionResult r;
  r.classification = classify(h, options);
  r.ray = canonical_ray(associated_character(h));
  Certificate cert;
  cert.family = h.family;
  cert.orientation = h.orientation;
  cert.note = "associated character is integral (stable letter -> 1), no normalization needed";
  switch (r.classification.hnn_class) {
    case HnnClass::ProperlyDescending:
    case HnnClass::NonProper:
      if (!h.base_finitely_generated) break;
      cert.kind = CertificateKind::DescendingFgHNN;
      r.facts.push_back(SigmaFact{r.ray, SigmaStatus::InSigma, cert,
                                  "Brown's criterion (1)=>(3): descending HNN decomposition with "
                                  "finitely generated base, reading " + describe(h)});
      break;
    case HnnClass::ProperlyAscending:
      cert.kind = CertificateKind::AscendingStructure;
      r.facts.push_back(SigmaFact{r.ray, SigmaStatus::NotInSigma, cert,
                                  "Brown's criterion: condition (2) fails, so (3) fails; reading " +
                                      describe(h)});
      break;
    case HnnClass::Neither:
      break;
  }
  return r;
}

}  // namespace bns
