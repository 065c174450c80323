#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bns/character.hpp"

namespace bns {

enum class SigmaStatus { InSigma, NotInSigma };

enum class CertificateKind {
  DescendingFgHNN,
  AscendingStructure,
  ValuationWitness,
  AbelianQuotientRule,
  UserAxiom,
};

std::string_view to_string(SigmaStatus s);
std::string_view to_string(CertificateKind k);

// Condensed axiom report carried by a ValuationWitness certificate.
struct AxiomSummary {
  bool pass = false;
  std::size_t words_checked = 0;
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  std::size_t witness_depth = 0;

  friend bool operator==(const AxiomSummary&, const AxiomSummary&) = default;
};

struct Certificate {
  CertificateKind kind = CertificateKind::UserAxiom;
  // Decomposition family and the orientation of its stable letter (+1 for
  // t, -1 for s = t⁻¹); used by DescendingFgHNN / AscendingStructure.
  std::string family;
  int orientation = 0;
  // Valuation or user-axiom label.
  std::string label;
  std::optional<AxiomSummary> axiom_report;
  // Free-form note, e.g. the integral normalization of a rational character.
  std::string note;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct SigmaFact {
  RayClass ray;
  SigmaStatus status = SigmaStatus::InSigma;
  Certificate certificate;
  std::string provenance;

  // Identity ignores provenance text.
  bool same_claim(const SigmaFact& other) const {
    return ray == other.ray && status == other.status && certificate == other.certificate;
  }
};

// Throws MalformedCertificate when the certificate type does not fit the
// status or a valuation witness lacks a passing report.
void validate_fact(const SigmaFact& fact);

std::string describe(const SigmaFact& fact);

}  // namespace bns
