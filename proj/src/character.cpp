#include "bns/character.hpp"

#include <algorithm>

#include "bns/error.hpp"

namespace bns {

Character::Character(std::shared_ptr<const GroupPresentation> presentation,
                     std::vector<Rational> values, bool allow_zero)
    : presentation_(std::move(presentation)), values_(std::move(values)) {
  if (!presentation_) throw Error(ErrorKind::InvalidArgument, "character without presentation");
  if (values_.size() != presentation_->rank())
    throw Error(ErrorKind::InvalidArgument,
                "character has " + std::to_string(values_.size()) + " values but the group has " +
                    std::to_string(presentation_->rank()) + " generators");
  for (auto& v : values_) v.canonicalize();
  const auto& rels = presentation_->relators();
  for (std::size_t i = 0; i < rels.size(); ++i) {
    Rational sum = (*this)(rels[i]);
    if (sum != 0)
      throw Error(ErrorKind::RelatorNonVanishing,
                  "relator '" + presentation_->print(rels[i]) + "' has weighted sum " +
                      bns::to_string(sum) + ", not 0");
  }
  if (!allow_zero && is_zero())
    throw Error(ErrorKind::ZeroCharacter, "the zero character is not allowed here");
}

bool Character::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; });
}

Rational Character::operator()(const Word& w) const {
  Rational sum = 0;
  for (const auto& l : w.letters()) sum += values_.at(l.generator) * Rational(static_cast<long>(l.exponent));
  return sum;
}

Character Character::scaled(const Rational& lambda) const {
  std::vector<Rational> v = values_;
  for (auto& x : v) x *= lambda;
  return Character(presentation_, std::move(v), /*allow_zero=*/true);
}

std::string Character::describe() const {
  std::string out = "(";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ", ";
    out += presentation_->generators()[i] + "->" + bns::to_string(values_[i]);
  }
  return out + ")";
}

Character character_from_values(std::shared_ptr<const GroupPresentation> presentation,
                                std::vector<Rational> values) {
  return Character(std::move(presentation), std::move(values));
}

RayClass::RayClass(std::vector<Integer> coordinates) : coords_(std::move(coordinates)) {
  Integer g = gcd_of(coords_);
  if (g == 0) throw Error(ErrorKind::ZeroCharacter, "a ray needs a nonzero character");
  if (g != 1)
    for (auto& c : coords_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

std::string RayClass::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ", ";
    out += coords_[i].get_str();
  }
  return out + ")";
}

bool operator<(const RayClass& a, const RayClass& b) {
  if (a.coords_.size() != b.coords_.size()) return a.coords_.size() < b.coords_.size();
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                      b.coords_.end());
}

RayClass canonical_ray(const std::vector<Rational>& values) {
  Integer l = lcm_of_denominators(values);
  std::vector<Integer> ints;
  ints.reserve(values.size());
  for (const auto& v : values) {
    Rational scaled = v * l;
    ints.push_back(scaled.get_num());
  }
  return RayClass(std::move(ints));
}

RayClass canonical_ray(const Character& chi) { return canonical_ray(chi.values()); }

RayClass antipode(const RayClass& r) {
  std::vector<Integer> c = r.coordinates();
  for (auto& x : c) x = -x;
  return RayClass(std::move(c));
}

}  // namespace bns
