#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bns/character.hpp"
#include "bns/facts.hpp"
#include "bns/oracle.hpp"
#include "bns/presentation.hpp"

namespace bns {

// G = ⟨B, t | t h t⁻¹ = φ(h), h ∈ B₁⟩ with φ: B₁ → B₂ given on generators.
//
// Convention: B₁ = B ≠ B₂ is properly *descending*, B₂ = B ≠ B₁ properly
// *ascending*. Brown uses the opposite naming.
//
// The stable letter is stored against a fixed ambient symbol (normally "t"):
// `orientation` = -1 means this reading's stable letter is s = t⁻¹, so all
// readings of one group share generator coordinates.
struct HnnDecomposition {
  std::string family = "hnn";
  GroupPresentation base;
  OraclePtr base_oracle;  // over base.generators(), optional
  std::string stable_letter = "t";
  int orientation = 1;
  std::vector<Word> b1_generators;
  std::vector<Word> b2_generators;
  std::vector<Word> phi;  // phi[i] = φ(b1_generators[i])
  Tristate declared_b1_equals_base = Tristate::Unknown;
  Tristate declared_b2_equals_base = Tristate::Unknown;
  // Oracle for the whole group over build_group(...).generators(), optional.
  OraclePtr group_oracle;
  GroupFlags flags;
  // Base groups are given by finitely many generators here.
  bool base_finitely_generated = true;

  // Display name of the stable letter: the ambient symbol, or "s" (made
  // unique against the base) for the inverted reading.
  std::string stable_label() const;
};

// Structural checks: word ranges, |phi| = |b1|, no symbol collision.
// Throws InvalidArgument / SymbolCollision.
void validate(const HnnDecomposition& h);

GroupPresentation build_group(const HnnDecomposition& h);
std::shared_ptr<const GroupPresentation> build_group_ptr(const HnnDecomposition& h);

// χ(stable letter) = 1, χ(base) = 0, written in ambient coordinates (so the
// value on t is the orientation). Validated against the relators.
Character associated_character(const HnnDecomposition& h);

enum class HnnClass { ProperlyDescending, ProperlyAscending, NonProper, Neither };
std::string_view to_string(HnnClass c);

enum class SubgroupEvidence {
  Declared,       // no oracle, declaration taken as given
  LatticeExact,   // decided exactly over a free abelian base
  BoundedSearch,  // all base generators found as short products
  Inconclusive,   // oracle present, bounded search did not decide
};
std::string_view to_string(SubgroupEvidence e);

struct SideCheck {
  bool equals_base = false;
  SubgroupEvidence evidence = SubgroupEvidence::Declared;
};

struct Classification {
  HnnClass hnn_class = HnnClass::Neither;
  SideCheck b1;
  SideCheck b2;
};

struct ClassifyOptions {
  std::size_t search_length = 10;
  std::size_t search_budget = 200000;
};

// Throws UnderdeterminedClassification when a side has no declaration and
// cannot be decided, DeclarationMismatch when an oracle refutes a
// declaration, NonInvertiblePhi when φ provably fails to be an isomorphism
// onto ⟨b2⟩.
Classification classify(const HnnDecomposition& h, const ClassifyOptions& options = {});

// The reading with stable letter s = t⁻¹: b1' = b2, b2' = b1, φ' = φ⁻¹.
HnnDecomposition stable_letter_inverse(const HnnDecomposition& h,
                                       const ClassifyOptions& options = {});

// t^k · w · t^{-k} for this reading's stable letter, over build_group(h).
Word kernel_element(const HnnDecomposition& h, std::int64_t k, const Word& base_word);

// Renders ⟨gens | s h s⁻¹ = φ(h), ...⟩ in the reading's own stable letter.
std::string describe(const HnnDecomposition& h);

struct CriterionResult {
  Classification classification;
  RayClass ray;
  std::vector<SigmaFact> facts;
};

// Brown's criterion for the associated character:
//   descending (proper or not), f.g. base  → IN_SIGMA via DescendingFgHNN
//   properly ascending                     → NOT_IN_SIGMA via AscendingStructure
//   neither                                → no facts
CriterionResult brown_criterion(const HnnDecomposition& h, const ClassifyOptions& options = {});

// Element of ⟨gens⟩ expressed as a word over generator indices; the
// bounded search behind classification, exposed for tests.
std::optional<Word> express_in_subgroup(const WordOracle& oracle, const std::vector<Word>& gens,
                                        const Word& target, std::size_t max_length,
                                        std::size_t budget);

}  // namespace bns
