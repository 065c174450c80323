#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bns/character.hpp"
#include "bns/hnn.hpp"
#include "bns/inference.hpp"
#include "bns/oracle.hpp"
#include "bns/presentation.hpp"

namespace bns::io {

// Key-value text format shared by presentation and decomposition files:
//
//   # comment
//   key = "string" | integer | bare_word | [v, v, ...] | { k = v, ... }
//   [section]
//
// Arrays may span lines. Sections that accept raw lines (e.g. [phi]) keep
// lines without '=' verbatim.
struct KvValue {
  using Array = std::vector<KvValue>;
  using Table = std::vector<std::pair<std::string, KvValue>>;
  std::variant<std::string, long long, Array, Table> data;
  std::size_t line = 0;
  std::size_t column = 0;

  const std::string& as_string(std::string_view what) const;
  long long as_integer(std::string_view what) const;
  const Array& as_array(std::string_view what) const;
  const Table& as_table(std::string_view what) const;
  std::vector<std::string> as_string_list(std::string_view what) const;
  const KvValue* find(std::string_view key) const;  // tables only
};

struct KvSection {
  std::string name;  // "" for the top level
  std::size_t line = 0;
  KvValue::Table entries;
  std::vector<std::pair<std::size_t, std::string>> raw_lines;

  const KvValue* find(std::string_view key) const;
};

struct KvDocument {
  std::vector<KvSection> sections;
  const KvSection* section(std::string_view name) const;
};

// Throws ParseError with line/column.
KvDocument parse_kv(std::string_view text, const std::vector<std::string>& raw_sections = {});

// Oracle family as written in a file:
//   family = "free" | "free_abelian" | "none"
//   family = "bs" (with n = ... at the same level) or
//   family = { kind = "bs", n = 2, a = "a", t = "t" }
//   family = { kind = "product", first = {...}, second = {...} }
// Factor blocks of a product name their generators explicitly.
struct OracleSpec {
  std::string kind = "none";
  long n = 0;
  std::string a_symbol;
  std::string t_symbol;
  std::vector<std::string> generators;  // empty: take the presentation's
  std::vector<OracleSpec> factors;
};

OracleSpec parse_oracle_spec(const KvValue& value, const KvSection& scope);
std::string format_oracle_spec(const OracleSpec& spec);
// nullptr for kind "none".
OraclePtr make_oracle(const OracleSpec& spec, const std::vector<std::string>& generators);

GroupFlags parse_flags(const KvValue& table);
std::string format_flags(const GroupFlags& flags);

struct PresentationFile {
  std::shared_ptr<const GroupPresentation> presentation;
  OracleSpec family;
  OraclePtr oracle;  // bound to the presentation; null for "none"
};

PresentationFile parse_presentation(std::string_view text);
PresentationFile read_presentation(const std::string& path);

// "symbol = rational" lines; every generator exactly once.
Character parse_character(std::string_view text, std::shared_ptr<const GroupPresentation> presentation);
Character read_character(const std::string& path, std::shared_ptr<const GroupPresentation> presentation);

struct DecompositionFile {
  HnnDecomposition decomposition;
  OracleSpec base_family;
  OracleSpec group_family;
};

DecompositionFile parse_decomposition(std::string_view text, std::string default_name = "hnn");
DecompositionFile read_decomposition(const std::string& path);
std::string format_decomposition(const DecompositionFile& file);
// Same file with the stable letter inverted.
DecompositionFile invert(const DecompositionFile& file, const ClassifyOptions& options = {});

struct FactsFile {
  FactStore store;
  GroupFlags flags;
};

// Lines:  ray = (p, q, ...); status = in|out; certificate = <kind>; ...
//         query = (p, q, ...)
//         decomposition = <name>; ray = (...); class = ascending|...; orientation = 1
//         flags = { ... }
FactsFile parse_facts(std::string_view text);
FactsFile read_facts(const std::string& path);
std::string format_fact(const SigmaFact& fact);

std::string read_file(const std::string& path);
bool looks_like_decomposition(std::string_view text);

}  // namespace bns::io
