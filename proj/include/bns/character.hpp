#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "bns/numeric.hpp"
#include "bns/presentation.hpp"

namespace bns {

// A homomorphism G → ℚ ⊂ ℝ given by its values on generators. Validated on
// construction: every relator has exponent-weighted sum exactly 0.
class Character {
 public:
  // Throws RelatorNonVanishing, ZeroCharacter (when `allow_zero` is false) or
  // InvalidArgument on a length mismatch.
  Character(std::shared_ptr<const GroupPresentation> presentation,
            std::vector<Rational> values, bool allow_zero = false);

  const GroupPresentation& presentation() const noexcept { return *presentation_; }
  const std::shared_ptr<const GroupPresentation>& presentation_ptr() const noexcept {
    return presentation_;
  }
  const std::vector<Rational>& values() const noexcept { return values_; }
  bool is_zero() const;

  Rational operator()(const Word& w) const;

  Character scaled(const Rational& lambda) const;
  Character negated() const { return scaled(Rational(-1)); }

  std::string describe() const;  // "(a↦0, t↦1)"

 private:
  std::shared_ptr<const GroupPresentation> presentation_;
  std::vector<Rational> values_;
};

Character character_from_values(std::shared_ptr<const GroupPresentation> presentation,
                                std::vector<Rational> values);

inline Rational evaluate(const Character& chi, const Word& w) { return chi(w); }

// [χ] ∈ S(G): values cleared to coprime integers. The sign is kept, so χ and
// −χ give distinct classes.
class RayClass {
 public:
  RayClass() = default;
  explicit RayClass(std::vector<Integer> coordinates);  // normalizes

  const std::vector<Integer>& coordinates() const noexcept { return coords_; }
  std::size_t dimension() const noexcept { return coords_.size(); }

  std::string to_string() const;  // "(0, -1)"

  friend bool operator==(const RayClass& a, const RayClass& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const RayClass& a, const RayClass& b);

 private:
  std::vector<Integer> coords_;
};

RayClass canonical_ray(const Character& chi);
RayClass canonical_ray(const std::vector<Rational>& values);
RayClass antipode(const RayClass& r);

}  // namespace bns
