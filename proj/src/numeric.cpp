#include "bns/numeric.hpp"

#include <cctype>

#include "bns/error.hpp"

namespace bns {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::MalformedExponent: return "MalformedExponent";
    case ErrorKind::InvalidPresentation: return "InvalidPresentation";
    case ErrorKind::RelatorNonVanishing: return "RelatorNonVanishing";
    case ErrorKind::ZeroCharacter: return "ZeroCharacter";
    case ErrorKind::NotInRing: return "NotInRing";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::AlphabetCollision: return "AlphabetCollision";
    case ErrorKind::SymbolCollision: return "SymbolCollision";
    case ErrorKind::NoOracle: return "NoOracle";
    case ErrorKind::UnderdeterminedClassification:
      return "UnderdeterminedClassification";
    case ErrorKind::DeclarationMismatch: return "DeclarationMismatch";
    case ErrorKind::NonInvertiblePhi: return "NonInvertiblePhi";
    case ErrorKind::EvaluatorUndefined: return "EvaluatorUndefined";
    case ErrorKind::BallTooLarge: return "BallTooLarge";
    case ErrorKind::UnknownFormat: return "UnknownFormat";
    case ErrorKind::MalformedCertificate: return "MalformedCertificate";
  }
  return "Unknown";
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer integer_from(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-')
    throw Error(ErrorKind::Parse,
                "malformed rational '" + std::string(text) + "'");
  Integer d = integer_from(den);
  if (d == 0)
    throw Error(ErrorKind::Parse,
                "zero denominator in '" + std::string(text) + "'");
  Rational r(integer_from(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) { return value.get_str(); }

Rational rational_power(long base, long exponent) {
  Integer p;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                 : static_cast<unsigned long>(exponent);
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), e);
  if (base < 0 && (e % 2 == 1)) p = -p;
  if (exponent >= 0) return Rational(p);
  Rational r(Integer(1), p);
  r.canonicalize();
  return r;
}

Integer lcm_of_denominators(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

Integer gcd_of(const std::vector<Integer>& values) {
  Integer g = 0;
  for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

}  // namespace bns
