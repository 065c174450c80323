#include "bns/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "bns/error.hpp"
#include "bns/numeric.hpp"

namespace bns::io {

namespace {

[[noreturn]] void fail(const std::string& msg, std::size_t line, std::size_t col,
                       ErrorKind kind = ErrorKind::Parse) {
  throw ParseError(kind, msg, line, col);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line = 1, std::size_t col = 1)
      : s_(text), line_(line), col_(col) {}

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

  char get() {
    char c = s_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  // Spaces, tabs and comments; newlines too when `newlines`.
  void skip(bool newlines) {
    while (!done()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        get();
      } else if (c == '#') {
        while (!done() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  void expect(char c, const char* what) {
    if (peek() != c) fail(std::string("expected ") + what, line_, col_);
    get();
  }

  std::string identifier() {
    if (!ident_start(peek())) fail("expected a key", line_, col_);
    std::string out;
    while (!done() && ident_char(peek())) out += get();
    return out;
  }

  KvValue value() {
    KvValue v;
    v.line = line_;
    v.column = col_;
    char c = peek();
    if (c == '"') {
      get();
      std::string out;
      for (;;) {
        if (done() || peek() == '\n') fail("unterminated string", v.line, v.column);
        char d = get();
        if (d == '"') break;
        if (d == '\\') {
          if (done()) fail("unterminated string", v.line, v.column);
          char e = get();
          out += e == 'n' ? '\n' : e;
        } else {
          out += d;
        }
      }
      v.data = std::move(out);
    } else if (c == '[') {
      get();
      KvValue::Array items;
      skip(true);
      while (peek() != ']') {
        if (done()) fail("unterminated array", v.line, v.column);
        items.push_back(value());
        skip(true);
        if (peek() == ',') {
          get();
          skip(true);
        } else if (peek() != ']') {
          fail("expected ',' or ']'", line_, col_);
        }
      }
      get();
      v.data = std::move(items);
    } else if (c == '{') {
      get();
      KvValue::Table entries;
      skip(true);
      while (peek() != '}') {
        if (done()) fail("unterminated table", v.line, v.column);
        std::size_t kl = line_, kc = col_;
        std::string key = identifier();
        for (const auto& e : entries)
          if (e.first == key) fail("duplicate key '" + key + "'", kl, kc);
        skip(false);
        expect('=', "'='");
        skip(false);
        entries.emplace_back(key, value());
        skip(true);
        if (peek() == ',') {
          get();
          skip(true);
        } else if (peek() != '}') {
          fail("expected ',' or '}'", line_, col_);
        }
      }
      get();
      v.data = std::move(entries);
    } else if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      digits += get();
      while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) digits += get();
      if (digits == "-" || digits == "+") fail("malformed integer", v.line, v.column);
      try {
        v.data = std::stoll(digits);
      } catch (const std::exception&) {
        fail("integer out of range", v.line, v.column);
      }
    } else if (ident_start(c)) {
      v.data = identifier();
    } else {
      fail("expected a value", line_, col_);
    }
    return v;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col_;
};

const char* type_name(const KvValue& v) {
  switch (v.data.index()) {
    case 0: return "string";
    case 1: return "integer";
    case 2: return "array";
    default: return "table";
  }
}

[[noreturn]] void type_error(const KvValue& v, std::string_view what, const char* expected) {
  fail(std::string(what) + ": expected " + expected + ", found " + type_name(v), v.line, v.column);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

// Parses a word; errors are reported at the position of the word text.
Word parse_word_at(std::string_view text, const std::vector<std::string>& symbols,
                   std::size_t line, std::size_t column) {
  try {
    return parse_word(text, symbols);
  } catch (const ParseError& e) {
    std::size_t col = column == 0 ? 0 : column + (e.column() ? e.column() - 1 : 0);
    throw ParseError(e.kind(), e.message(), line, col);
  }
}

Word parse_word_value(const KvValue& v, const std::vector<std::string>& symbols,
                      std::string_view what) {
  // +1 skips the opening quote.
  return parse_word_at(v.as_string(what), symbols, v.line, v.column + 1);
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string format_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + quote(items[i]);
  return out + "]";
}

Tristate tristate_value(const KvValue& v, std::string_view key) {
  auto t = parse_tristate(v.as_string(key));
  if (!t) fail(std::string(key) + ": expected true, false or unknown", v.line, v.column);
  return *t;
}

}  // namespace

const std::string& KvValue::as_string(std::string_view what) const {
  if (auto p = std::get_if<std::string>(&data)) return *p;
  type_error(*this, what, "string");
}

long long KvValue::as_integer(std::string_view what) const {
  if (auto p = std::get_if<long long>(&data)) return *p;
  type_error(*this, what, "integer");
}

const KvValue::Array& KvValue::as_array(std::string_view what) const {
  if (auto p = std::get_if<Array>(&data)) return *p;
  type_error(*this, what, "array");
}

const KvValue::Table& KvValue::as_table(std::string_view what) const {
  if (auto p = std::get_if<Table>(&data)) return *p;
  type_error(*this, what, "table");
}

std::vector<std::string> KvValue::as_string_list(std::string_view what) const {
  std::vector<std::string> out;
  for (const auto& item : as_array(what)) out.push_back(item.as_string(what));
  return out;
}

const KvValue* KvValue::find(std::string_view key) const {
  if (auto p = std::get_if<Table>(&data))
    for (const auto& [k, v] : *p)
      if (k == key) return &v;
  return nullptr;
}

const KvValue* KvSection::find(std::string_view key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return &v;
  return nullptr;
}

const KvSection* KvDocument::section(std::string_view name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

KvDocument parse_kv(std::string_view text, const std::vector<std::string>& raw_sections) {
  KvDocument doc;
  doc.sections.push_back(KvSection{"", 1, {}, {}});
  Cursor cur(text);
  auto is_raw = [&](const std::string& name) {
    return std::find(raw_sections.begin(), raw_sections.end(), name) != raw_sections.end();
  };
  for (;;) {
    cur.skip(true);
    if (cur.done()) break;
    std::size_t line = cur.line(), col = cur.col();
    KvSection& section = doc.sections.back();
    if (cur.peek() == '[') {
      cur.get();
      cur.skip(false);
      std::string name = cur.identifier();
      cur.skip(false);
      cur.expect(']', "']'");
      cur.skip(false);
      if (!cur.done() && cur.peek() != '\n') fail("unexpected text after section header", cur.line(), cur.col());
      if (doc.section(name)) fail("duplicate section [" + name + "]", line, col);
      doc.sections.push_back(KvSection{name, line, {}, {}});
      continue;
    }
    if (is_raw(section.name)) {
      // Raw lines are taken verbatim up to a comment.
      std::string raw;
      while (!cur.done() && cur.peek() != '\n') raw += cur.get();
      std::string body = trim(strip_comment(raw));
      if (body.find('=') == std::string::npos || body.find("->") != std::string::npos) {
        section.raw_lines.emplace_back(line, body);
        continue;
      }
      fail("section [" + section.name + "] expects 'word -> word' lines", line, col);
    }
    std::string key = cur.identifier();
    if (section.find(key)) fail("duplicate key '" + key + "'", line, col);
    cur.skip(false);
    cur.expect('=', "'=' after key");
    cur.skip(false);
    KvValue v = cur.value();
    cur.skip(false);
    if (!cur.done() && cur.peek() != '\n') fail("unexpected text after value", cur.line(), cur.col());
    section.entries.emplace_back(key, std::move(v));
  }
  return doc;
}

// ---------------------------------------------------------------- oracles

OracleSpec parse_oracle_spec(const KvValue& value, const KvSection& scope) {
  OracleSpec spec;
  if (std::holds_alternative<std::string>(value.data)) {
    spec.kind = value.as_string("family");
    if (spec.kind == "bs") {
      const KvValue* n = scope.find("n");
      if (!n) fail("family \"bs\" needs n", value.line, value.column);
      spec.n = n->as_integer("n");
    }
  } else {
    const KvValue* kind = value.find("kind");
    if (!kind) fail("family table needs kind", value.line, value.column);
    spec.kind = kind->as_string("kind");
    for (const auto& [k, v] : value.as_table("family")) {
      if (k == "kind") continue;
      if (k == "n") spec.n = v.as_integer("n");
      else if (k == "a") spec.a_symbol = v.as_string("a");
      else if (k == "t") spec.t_symbol = v.as_string("t");
      else if (k == "generators") spec.generators = v.as_string_list("generators");
      else if (k == "first" || k == "second") continue;
      else fail("unknown family key '" + k + "'", v.line, v.column);
    }
    if (spec.kind == "product") {
      const KvValue* first = value.find("first");
      const KvValue* second = value.find("second");
      if (!first || !second) fail("family \"product\" needs first and second", value.line, value.column);
      spec.factors = {parse_oracle_spec(*first, scope), parse_oracle_spec(*second, scope)};
      for (const auto& f : spec.factors)
        if (f.generators.empty() && f.kind != "bs")
          fail("product factors must list their generators", value.line, value.column);
    }
  }
  static const std::vector<std::string> kinds = {"free", "free_abelian", "bs", "product", "none"};
  if (std::find(kinds.begin(), kinds.end(), spec.kind) == kinds.end())
    fail("unknown family \"" + spec.kind + "\"", value.line, value.column, ErrorKind::UnknownFormat);
  if (spec.kind == "bs" && spec.n < 2)
    fail("family \"bs\" needs n >= 2", value.line, value.column, ErrorKind::InvalidArgument);
  return spec;
}

std::string format_oracle_spec(const OracleSpec& spec) {
  if (spec.kind == "none" || ((spec.kind == "free" || spec.kind == "free_abelian") &&
                              spec.generators.empty()))
    return quote(spec.kind);
  std::string out = "{ kind = " + quote(spec.kind);
  if (spec.kind == "bs") {
    out += ", n = " + std::to_string(spec.n);
    if (!spec.a_symbol.empty()) out += ", a = " + quote(spec.a_symbol);
    if (!spec.t_symbol.empty()) out += ", t = " + quote(spec.t_symbol);
  }
  if (!spec.generators.empty()) out += ", generators = " + format_list(spec.generators);
  if (spec.kind == "product") {
    out += ", first = " + format_oracle_spec(spec.factors.at(0));
    out += ", second = " + format_oracle_spec(spec.factors.at(1));
  }
  return out + " }";
}

OraclePtr make_oracle(const OracleSpec& spec, const std::vector<std::string>& generators) {
  const auto& gens = spec.generators.empty() ? generators : spec.generators;
  if (spec.kind == "none") return nullptr;
  if (spec.kind == "free") return oracle_free(gens);
  if (spec.kind == "free_abelian") return oracle_free_abelian(gens);
  if (spec.kind == "bs") {
    std::string a = spec.a_symbol, t = spec.t_symbol;
    if (a.empty() || t.empty()) {
      if (gens.empty()) {
        if (a.empty()) a = "a";
        if (t.empty()) t = "t";
      } else if (gens.size() != 2) {
        throw Error(ErrorKind::InvalidArgument, "family \"bs\" needs exactly two generators");
      }
      if (a.empty()) a = gens[0] == t ? gens[1] : gens[0];
      if (t.empty()) t = gens[0] == a ? gens[1] : gens[0];
    }
    return oracle_bs(spec.n, a, t);
  }
  if (spec.kind == "product")
    return oracle_direct_product(make_oracle(spec.factors.at(0), {}),
                                 make_oracle(spec.factors.at(1), {}));
  throw Error(ErrorKind::UnknownFormat, "unknown family \"" + spec.kind + "\"");
}

GroupFlags parse_flags(const KvValue& table) {
  GroupFlags f;
  for (const auto& [k, v] : table.as_table("flags")) {
    Tristate t = tristate_value(v, k);
    if (k == "no_free_subgroups" || k == "no_nonabelian_free_subgroups")
      f.no_nonabelian_free_subgroups = t;
    else if (k == "amenable") f.amenable = t;
    else if (k == "claimed_kahler") f.claimed_kahler = t;
    else if (k == "commutator_fg") f.commutator_fg = t;
    else fail("unknown flag '" + k + "'", v.line, v.column);
  }
  return f.normalized();
}

std::string format_flags(const GroupFlags& flags) {
  auto q = [](Tristate t) { return quote(to_string(t)); };
  return "{ no_free_subgroups = " + q(flags.no_nonabelian_free_subgroups) +
         ", amenable = " + q(flags.amenable) + ", claimed_kahler = " + q(flags.claimed_kahler) +
         ", commutator_fg = " + q(flags.commutator_fg) + " }";
}

// ----------------------------------------------------------- presentations

namespace {

std::shared_ptr<const GroupPresentation> presentation_from(const KvSection& s, const char* where) {
  const KvValue* gens = s.find("generators");
  if (!gens) fail(std::string(where) + ": missing generators", s.line, 0);
  auto symbols = gens->as_string_list("generators");
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    const auto& item = gens->as_array("generators")[i];
    if (!is_valid_symbol(symbols[i]))
      fail("invalid generator symbol \"" + symbols[i] + "\"", item.line, item.column);
    for (std::size_t j = 0; j < i; ++j)
      if (symbols[j] == symbols[i])
        fail("duplicate generator \"" + symbols[i] + "\"", item.line, item.column);
  }
  std::vector<Word> relators;
  if (const KvValue* rels = s.find("relators")) {
    for (const auto& r : rels->as_array("relators")) {
      Word w = parse_word_value(r, symbols, "relators");
      if (w.empty()) fail("relator reduces to the empty word", r.line, r.column, ErrorKind::InvalidPresentation);
      relators.push_back(std::move(w));
    }
  }
  GroupFlags flags;
  if (const KvValue* f = s.find("flags")) flags = parse_flags(*f);
  return std::make_shared<const GroupPresentation>(symbols, relators, flags);
}

OracleSpec family_from(const KvSection& s, const char* key) {
  if (const KvValue* f = s.find(key)) return parse_oracle_spec(*f, s);
  return OracleSpec{};
}

void reject_unknown_keys(const KvSection& s, const std::vector<std::string>& known) {
  for (const auto& [k, v] : s.entries)
    if (std::find(known.begin(), known.end(), k) == known.end())
      fail("unknown key '" + k + "'", v.line, v.column);
}

}  // namespace

PresentationFile parse_presentation(std::string_view text) {
  KvDocument doc = parse_kv(text);
  if (doc.sections.size() > 1)
    fail("unexpected section [" + doc.sections[1].name + "]", doc.sections[1].line, 0);
  const KvSection& top = doc.sections.front();
  reject_unknown_keys(top, {"generators", "relators", "flags", "family", "n"});
  PresentationFile file;
  file.presentation = presentation_from(top, "presentation");
  file.family = family_from(top, "family");
  if (auto o = make_oracle(file.family, file.presentation->generators()))
    file.oracle = bind_oracle(o, *file.presentation);
  return file;
}

PresentationFile read_presentation(const std::string& path) {
  return parse_presentation(read_file(path));
}

// -------------------------------------------------------------- characters

Character parse_character(std::string_view text,
                          std::shared_ptr<const GroupPresentation> presentation) {
  const auto& gens = presentation->generators();
  std::vector<std::optional<Rational>> values(gens.size());
  auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string body = strip_comment(lines[ln]);
    if (trim(body).empty()) continue;
    auto eq = body.find('=');
    std::size_t first = body.find_first_not_of(" \t");
    if (eq == std::string::npos) fail("expected 'symbol = rational'", ln + 1, first + 1);
    std::string symbol = trim(body.substr(0, eq));
    auto idx = presentation->index_of(symbol);
    if (!idx) fail("unknown generator '" + symbol + "'", ln + 1, first + 1, ErrorKind::UnknownGenerator);
    if (values[*idx]) fail("duplicate value for '" + symbol + "'", ln + 1, first + 1);
    std::string rhs = trim(body.substr(eq + 1));
    std::size_t rcol = body.find_first_not_of(" \t", eq + 1);
    try {
      values[*idx] = parse_rational(rhs);
    } catch (const Error&) {
      fail("malformed rational '" + rhs + "'", ln + 1, rcol == std::string::npos ? eq + 2 : rcol + 1);
    }
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!values[i]) fail("missing value for generator '" + gens[i] + "'", lines.size() + 1, 0);
    out.push_back(*values[i]);
  }
  return Character(std::move(presentation), std::move(out));
}

Character read_character(const std::string& path,
                         std::shared_ptr<const GroupPresentation> presentation) {
  return parse_character(read_file(path), std::move(presentation));
}

// ---------------------------------------------------------- decompositions

DecompositionFile parse_decomposition(std::string_view text, std::string default_name) {
  KvDocument doc = parse_kv(text, {"phi"});
  for (const auto& s : doc.sections)
    if (s.name != "" && s.name != "base" && s.name != "phi")
      fail("unexpected section [" + s.name + "]", s.line, 0);
  const KvSection& top = doc.sections.front();
  reject_unknown_keys(top, {"name", "stable_letter", "orientation", "b1", "b2", "b1_equals_base",
                            "b2_equals_base", "flags", "group_family"});
  const KvSection* base = doc.section("base");
  if (!base) fail("missing [base] section", 0, 0);
  reject_unknown_keys(*base, {"generators", "relators", "family", "n"});

  DecompositionFile file;
  HnnDecomposition& h = file.decomposition;
  h.family = std::move(default_name);
  if (const KvValue* v = top.find("name")) h.family = v->as_string("name");
  auto base_pres = presentation_from(*base, "[base]");
  h.base = *base_pres;
  file.base_family = family_from(*base, "family");
  if (auto o = make_oracle(file.base_family, h.base.generators()))
    h.base_oracle = bind_oracle(o, h.base);

  if (const KvValue* v = top.find("stable_letter")) {
    h.stable_letter = v->as_string("stable_letter");
    if (!is_valid_symbol(h.stable_letter))
      fail("invalid stable letter \"" + h.stable_letter + "\"", v->line, v->column);
  }
  if (h.base.index_of(h.stable_letter)) {
    const KvValue* v = top.find("stable_letter");
    fail("stable letter collides with a base generator", v ? v->line : 0, v ? v->column : 0,
         ErrorKind::SymbolCollision);
  }
  if (const KvValue* v = top.find("orientation")) {
    long long o = v->as_integer("orientation");
    if (o != 1 && o != -1) fail("orientation must be 1 or -1", v->line, v->column);
    h.orientation = static_cast<int>(o);
  }
  const auto& bgens = h.base.generators();
  auto word_list = [&](const char* key) {
    std::vector<Word> out;
    if (const KvValue* v = top.find(key))
      for (const auto& item : v->as_array(key)) out.push_back(parse_word_value(item, bgens, key));
    return out;
  };
  h.b1_generators = word_list("b1");
  h.b2_generators = word_list("b2");
  if (const KvValue* v = top.find("b1_equals_base")) h.declared_b1_equals_base = tristate_value(*v, "b1_equals_base");
  if (const KvValue* v = top.find("b2_equals_base")) h.declared_b2_equals_base = tristate_value(*v, "b2_equals_base");
  if (const KvValue* v = top.find("flags")) h.flags = parse_flags(*v);

  // phi lines: "w -> phi(w)", one per b1 generator, any order.
  std::vector<std::optional<Word>> phi(h.b1_generators.size());
  if (const KvSection* ps = doc.section("phi")) {
    for (const auto& [line, body] : ps->raw_lines) {
      auto arrow = body.find("->");
      if (arrow == std::string::npos) fail("expected 'word -> word'", line, 1);
      Word lhs = parse_word_at(trim(body.substr(0, arrow)), bgens, line, 0);
      Word rhs = parse_word_at(trim(body.substr(arrow + 2)), bgens, line, 0);
      auto it = std::find(h.b1_generators.begin(), h.b1_generators.end(), lhs);
      if (it == h.b1_generators.end())
        fail("phi is defined on a word that is not a b1 generator", line, 1);
      auto i = static_cast<std::size_t>(it - h.b1_generators.begin());
      if (phi[i]) fail("phi defined twice on the same generator", line, 1);
      phi[i] = std::move(rhs);
    }
  }
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (!phi[i])
      fail("phi is not given on b1 generator " + h.base.display(h.b1_generators[i]), 0, 0);
    h.phi.push_back(*phi[i]);
  }
  validate(h);

  file.group_family = family_from(top, "group_family");
  auto group = build_group(h);
  if (auto o = make_oracle(file.group_family, group.generators()))
    h.group_oracle = bind_oracle(o, group);
  return file;
}

DecompositionFile read_decomposition(const std::string& path) {
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.find('.'); dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return parse_decomposition(read_file(path), name);
}

std::string format_decomposition(const DecompositionFile& file) {
  const HnnDecomposition& h = file.decomposition;
  auto words = [&](const std::vector<Word>& ws) {
    std::vector<std::string> out;
    for (const auto& w : ws) out.push_back(h.base.print(w));
    return format_list(out);
  };
  std::string out;
  out += "name = " + quote(h.family) + "\n";
  out += "stable_letter = " + quote(h.stable_letter) + "\n";
  out += "orientation = " + std::to_string(h.orientation) + "\n";
  out += "b1 = " + words(h.b1_generators) + "\n";
  out += "b2 = " + words(h.b2_generators) + "\n";
  out += "b1_equals_base = " + quote(to_string(h.declared_b1_equals_base)) + "\n";
  out += "b2_equals_base = " + quote(to_string(h.declared_b2_equals_base)) + "\n";
  out += "flags = " + format_flags(h.flags) + "\n";
  if (file.group_family.kind != "none")
    out += "group_family = " + format_oracle_spec(file.group_family) + "\n";
  out += "\n[base]\n";
  out += "generators = " + format_list(h.base.generators()) + "\n";
  out += "relators = " + words(h.base.relators()) + "\n";
  if (file.base_family.kind != "none")
    out += "family = " + format_oracle_spec(file.base_family) + "\n";
  out += "\n[phi]\n";
  for (std::size_t i = 0; i < h.b1_generators.size(); ++i)
    out += h.base.display(h.b1_generators[i]) + " -> " + h.base.display(h.phi[i]) + "\n";
  return out;
}

DecompositionFile invert(const DecompositionFile& file, const ClassifyOptions& options) {
  DecompositionFile out = file;
  out.decomposition = stable_letter_inverse(file.decomposition, options);
  return out;
}

// ------------------------------------------------------------------- facts

namespace {

struct Field {
  std::string key;
  std::string value;
  std::size_t column = 0;
};

std::vector<Field> split_fields(const std::string& body, std::size_t line) {
  std::vector<Field> out;
  std::size_t start = 0;
  int depth = 0;
  bool quoted = false;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    char c = i < body.size() ? body[i] : ';';
    if (c == '"') quoted = !quoted;
    if (quoted) continue;
    if (c == '(' || c == '{' || c == '[') ++depth;
    if (c == ')' || c == '}' || c == ']') --depth;
    if (c != ';' || depth > 0) continue;
    std::string part = body.substr(start, i - start);
    std::size_t first = part.find_first_not_of(" \t");
    if (first != std::string::npos) {
      auto eq = part.find('=');
      if (eq == std::string::npos) fail("expected 'key = value'", line, start + first + 1);
      Field f{trim(part.substr(0, eq)), trim(part.substr(eq + 1)), start + first + 1};
      for (const auto& g : out)
        if (g.key == f.key) fail("duplicate key '" + f.key + "'", line, f.column);
      out.push_back(std::move(f));
    }
    start = i + 1;
  }
  return out;
}

const Field* find_field(const std::vector<Field>& fields, std::string_view key) {
  for (const auto& f : fields)
    if (f.key == key) return &f;
  return nullptr;
}

std::string unquote(const Field& f, std::size_t line) {
  const std::string& v = f.value;
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] == '\\' && i + 2 < v.size()) ++i;
      out += v[i];
    }
    return out;
  }
  if (!v.empty() && v.front() == '"') fail("unterminated string", line, f.column);
  return v;
}

RayClass parse_ray(const Field& f, std::size_t line) {
  const std::string& v = f.value;
  if (v.size() < 2 || v.front() != '(' || v.back() != ')')
    fail("ray must be written as (p, q, ...)", line, f.column);
  std::vector<Rational> values;
  std::string inner = v.substr(1, v.size() - 2);
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(parse_rational(trim(item)));
    } catch (const Error&) {
      fail("malformed ray coordinate '" + trim(item) + "'", line, f.column);
    }
  }
  try {
    return canonical_ray(values);
  } catch (const Error& e) {
    fail(e.what(), line, f.column, e.kind());
  }
}

long long parse_int_field(const Field& f, std::size_t line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(f.value, &used);
    if (used == f.value.size()) return v;
  } catch (const std::exception&) {
  }
  fail("expected an integer for '" + f.key + "'", line, f.column);
}

std::optional<HnnClass> parse_hnn_class(std::string_view s) {
  for (HnnClass c : {HnnClass::ProperlyDescending, HnnClass::ProperlyAscending,
                     HnnClass::NonProper, HnnClass::Neither})
    if (to_string(c) == s) return c;
  if (s == "properly_descending" || s == "descending") return HnnClass::ProperlyDescending;
  if (s == "properly_ascending" || s == "ascending") return HnnClass::ProperlyAscending;
  if (s == "non_proper") return HnnClass::NonProper;
  if (s == "neither") return HnnClass::Neither;
  return std::nullopt;
}

struct CertificateName {
  std::string_view name;
  CertificateKind kind;
};
constexpr CertificateName certificate_names[] = {
    {"descending_fg_hnn", CertificateKind::DescendingFgHNN},
    {"ascending_structure", CertificateKind::AscendingStructure},
    {"valuation_witness", CertificateKind::ValuationWitness},
    {"abelian_quotient", CertificateKind::AbelianQuotientRule},
    {"user_axiom", CertificateKind::UserAxiom},
};

void check_keys(const std::vector<Field>& fields, const std::vector<std::string>& known,
                std::size_t line) {
  for (const auto& f : fields)
    if (std::find(known.begin(), known.end(), f.key) == known.end())
      fail("unknown key '" + f.key + "'", line, f.column);
}

SigmaFact parse_fact_line(const std::vector<Field>& fields, std::size_t line) {
  check_keys(fields,
             {"ray", "status", "certificate", "family", "orientation", "label", "report",
              "words_checked", "pairs_checked", "violations", "witness_depth", "note",
              "provenance"},
             line);
  auto need = [&](const char* key) -> const Field& {
    const Field* f = find_field(fields, key);
    if (!f) fail(std::string("fact line needs '") + key + "'", line, 1);
    return *f;
  };
  SigmaFact fact;
  fact.ray = parse_ray(need("ray"), line);
  const Field& status = need("status");
  if (status.value == "in") fact.status = SigmaStatus::InSigma;
  else if (status.value == "out") fact.status = SigmaStatus::NotInSigma;
  else fail("status must be 'in' or 'out'", line, status.column);

  const Field& cert = need("certificate");
  Certificate& c = fact.certificate;
  bool known = false;
  for (const auto& cn : certificate_names)
    if (cn.name == cert.value) {
      c.kind = cn.kind;
      known = true;
    }
  if (!known) fail("unknown certificate '" + cert.value + "'", line, cert.column, ErrorKind::MalformedCertificate);
  if (const Field* f = find_field(fields, "family")) c.family = unquote(*f, line);
  if (const Field* f = find_field(fields, "orientation")) c.orientation = static_cast<int>(parse_int_field(*f, line));
  if (const Field* f = find_field(fields, "label")) c.label = unquote(*f, line);
  if (const Field* f = find_field(fields, "note")) c.note = unquote(*f, line);
  if (const Field* f = find_field(fields, "provenance")) fact.provenance = unquote(*f, line);
  if (const Field* f = find_field(fields, "report")) {
    AxiomSummary s;
    if (f->value == "pass") s.pass = true;
    else if (f->value != "fail") fail("report must be 'pass' or 'fail'", line, f->column);
    auto count = [&](const char* key) -> std::size_t {
      const Field* g = find_field(fields, key);
      return g ? static_cast<std::size_t>(parse_int_field(*g, line)) : 0;
    };
    s.words_checked = count("words_checked");
    s.pairs_checked = count("pairs_checked");
    s.violations = count("violations");
    s.witness_depth = count("witness_depth");
    if (s.violations > 0) s.pass = false;
    c.axiom_report = s;
  }
  try {
    validate_fact(fact);
  } catch (const Error& e) {
    fail(e.what(), line, cert.column, ErrorKind::MalformedCertificate);
  }
  return fact;
}

}  // namespace

FactsFile parse_facts(std::string_view text) {
  FactsFile file;
  auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::size_t line = ln + 1;
    std::string body = strip_comment(lines[ln]);
    if (trim(body).empty()) continue;
    auto fields = split_fields(body, line);
    const Field& head = fields.front();
    if (head.key == "flags") {
      if (fields.size() != 1) fail("flags must stand on their own line", line, fields[1].column);
      std::size_t off = body.find('=', head.column - 1) + 1;
      while (off < body.size() && (body[off] == ' ' || body[off] == '\t')) ++off;
      Cursor cur(std::string_view(body).substr(off), line, off + 1);
      KvValue v = cur.value();
      file.flags = parse_flags(v);
    } else if (head.key == "query") {
      check_keys(fields, {"query"}, line);
      file.store = file.store.add_query(parse_ray(head, line));
    } else if (head.key == "decomposition") {
      check_keys(fields, {"decomposition", "ray", "class", "orientation"}, line);
      RegisteredDecomposition d;
      d.family = unquote(head, line);
      const Field* ray = find_field(fields, "ray");
      const Field* cls = find_field(fields, "class");
      if (!ray || !cls) fail("decomposition line needs ray and class", line, 1);
      d.ray = parse_ray(*ray, line);
      auto c = parse_hnn_class(cls->value);
      if (!c) fail("unknown class '" + cls->value + "'", line, cls->column);
      d.hnn_class = *c;
      if (const Field* o = find_field(fields, "orientation")) d.orientation = static_cast<int>(parse_int_field(*o, line));
      file.store = file.store.register_decomposition(d);
    } else {
      file.store = file.store.add_fact(parse_fact_line(fields, line));
    }
  }
  return file;
}

FactsFile read_facts(const std::string& path) { return parse_facts(read_file(path)); }

std::string format_fact(const SigmaFact& fact) {
  const Certificate& c = fact.certificate;
  std::string out = "ray = " + fact.ray.to_string() + "; status = " +
                    (fact.status == SigmaStatus::InSigma ? "in" : "out") + "; certificate = ";
  for (const auto& cn : certificate_names)
    if (cn.kind == c.kind) out += cn.name;
  if (!c.family.empty()) out += "; family = " + quote(c.family);
  if (c.orientation != 0) out += "; orientation = " + std::to_string(c.orientation);
  if (!c.label.empty()) out += "; label = " + quote(c.label);
  if (c.axiom_report) {
    const auto& s = *c.axiom_report;
    out += std::string("; report = ") + (s.pass ? "pass" : "fail") +
           "; words_checked = " + std::to_string(s.words_checked) +
           "; pairs_checked = " + std::to_string(s.pairs_checked) +
           "; violations = " + std::to_string(s.violations) +
           "; witness_depth = " + std::to_string(s.witness_depth);
  }
  if (!c.note.empty()) out += "; note = " + quote(c.note);
  if (!fact.provenance.empty()) out += "; provenance = " + quote(fact.provenance);
  return out;
}

// -------------------------------------------------------------------- files

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(ErrorKind::Parse, "cannot read " + path, 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_decomposition(std::string_view text) {
  for (const auto& line : split_lines(text))
    if (trim(strip_comment(line)) == "[base]") return true;
  return false;
}

}  // namespace bns::io
