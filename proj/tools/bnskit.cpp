// bnskit command-line tool.
//
// Exit codes: 0 ok, 2 input rejected, 3 no word-problem engine,
// 4 declaration refuted by an oracle, 10 NotKahler, 11 Contradiction.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "bns/cayley.hpp"
#include "bns/error.hpp"
#include "bns/hnn.hpp"
#include "bns/inference.hpp"
#include "bns/io.hpp"
#include "bns/pipeline.hpp"
#include "bns/smith.hpp"
#include "bns/valuation.hpp"

namespace {

using namespace bns;

constexpr int kOk = 0;
constexpr int kInput = 2;
constexpr int kNoOracle = 3;
constexpr int kMismatch = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoOracle: return kNoOracle;
    case ErrorKind::DeclarationMismatch: return kMismatch;
    default: return kInput;
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string join(const std::vector<Integer>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + to_string(xs[i]);
  return out + "]";
}

struct Options {
  std::string presentation;
  std::string character;
  std::string decomposition;
  std::string input;
  std::string output;
  std::string format;
  std::size_t radius = 4;
  std::size_t margin = 1;
  std::size_t depth = 5;
  std::size_t budget = 250000;
  std::size_t random_pairs = 10000;
  std::size_t witness_depth = 20;
  std::size_t search_length = 10;
  std::uint64_t seed = 1;
  bool include_dropped = false;
  std::string no_free, amenable, claimed_kahler, commutator_fg;
};

Character load_character(const io::PresentationFile& pf, const std::string& path) {
  return io::read_character(path, pf.presentation);
}

int cmd_betti(const Options& o) {
  auto pf = io::read_presentation(o.presentation);
  auto ab = abelianization(*pf.presentation);
  std::cout << "b1 = " << ab.betti_number << ", torsion = " << join(ab.torsion_invariants) << "\n";
  return kOk;
}

int cmd_chi_validate(const Options& o) {
  auto pf = io::read_presentation(o.presentation);
  Character chi = load_character(pf, o.character);
  std::cout << "character " << chi.describe() << " vanishes on every relator\n";
  std::cout << "ray = " << canonical_ray(chi).to_string() << "\n";
  return kOk;
}

void require_oracle(const io::PresentationFile& pf) {
  if (!pf.oracle)
    throw Error(ErrorKind::NoOracle,
                "no word-problem engine for this presentation (family = \"none\")");
}

int cmd_sigma_ball(const Options& o) {
  auto pf = io::read_presentation(o.presentation);
  require_oracle(pf);
  Character chi = load_character(pf, o.character);
  std::optional<GraphFormat> format;
  if (!o.format.empty()) format = parse_graph_format(o.format);
  CayleyBall ball = build_ball(pf.oracle, pf.presentation, o.radius);
  ChiSubgraph sub = chi_subgraph(ball, chi);
  ConnectivityReport report = connectivity_evidence(sub, o.margin);
  std::cout << "character: " << chi.describe() << "\n";
  std::cout << render_report(report, sub);
  if (format) {
    ExportOptions eo;
    eo.include_dropped = o.include_dropped;
    write_output(o.output, export_graph(sub, *format, eo));
  }
  return kOk;
}

int cmd_export(const Options& o, GraphFormat format) {
  auto pf = io::read_presentation(o.presentation);
  require_oracle(pf);
  Character chi = load_character(pf, o.character);
  CayleyBall ball = build_ball(pf.oracle, pf.presentation, o.radius);
  ChiSubgraph sub = chi_subgraph(ball, chi);
  ExportOptions eo;
  eo.include_dropped = o.include_dropped;
  write_output(o.output, export_graph(sub, format, eo));
  return kOk;
}

ClassifyOptions classify_options(const Options& o) {
  ClassifyOptions c;
  c.search_length = o.search_length;
  c.search_budget = o.budget;
  return c;
}

void print_classification(const HnnDecomposition& h, const Classification& c) {
  std::cout << "reading: " << describe(h) << "\n";
  std::cout << "  B1 = B: " << (c.b1.equals_base ? "true" : "false") << " ("
            << to_string(c.b1.evidence) << ")\n";
  std::cout << "  B2 = B: " << (c.b2.equals_base ? "true" : "false") << " ("
            << to_string(c.b2.evidence) << ")\n";
  std::cout << "  class: " << to_string(c.hnn_class) << "\n";
}

int cmd_hnn_classify(const Options& o) {
  auto file = io::read_decomposition(o.decomposition);
  const auto& h = file.decomposition;
  print_classification(h, classify(h, classify_options(o)));
  std::cout << "associated character: " << associated_character(h).describe() << "\n";
  return kOk;
}

int cmd_hnn_invert(const Options& o) {
  auto file = io::read_decomposition(o.decomposition);
  write_output(o.output, io::format_decomposition(io::invert(file, classify_options(o))));
  return kOk;
}

int cmd_hnn_criterion(const Options& o) {
  auto file = io::read_decomposition(o.decomposition);
  const auto& h = file.decomposition;
  const HnnDecomposition inverse = stable_letter_inverse(h, classify_options(o));
  std::string facts;
  for (const auto* reading : {&h, &inverse}) {
    auto r = brown_criterion(*reading, classify_options(o));
    facts += "# " + describe(*reading) + ": " + std::string(to_string(r.classification.hnn_class)) +
             ", associated ray " + r.ray.to_string() + "\n";
    facts += "decomposition = " + reading->family + "; ray = " + r.ray.to_string() + "; class = " +
             std::string(to_string(r.classification.hnn_class)) +
             "; orientation = " + std::to_string(reading->orientation) + "\n";
    if (r.facts.empty()) facts += "# no Brown-criterion fact for this reading\n";
    for (const auto& f : r.facts) facts += io::format_fact(f) + "\n";
  }
  write_output(o.output, facts);
  return kOk;
}

AnalysisOptions analysis_options(const Options& o) {
  AnalysisOptions a;
  a.classify = classify_options(o);
  a.sample_length = o.depth;
  a.pair_budget = o.budget;
  a.random_pairs = o.random_pairs;
  a.seed = o.seed;
  a.witness_depth = o.witness_depth;
  return a;
}

int cmd_hnn_valuation_check(const Options& o) {
  auto file = io::read_decomposition(o.decomposition);
  const auto& h = file.decomposition;
  auto shape = recognize_bs(h);
  if (!shape)
    throw Error(ErrorKind::NoOracle,
                "no built-in HNN valuation for this decomposition (only BS(1,n) is modelled)");
  HnnValuation v =
      bs_valuation(shape->n, build_group_ptr(h), shape->a_index, shape->t_index, shape->t_sign);
  AxiomReport report = check_valuation(v, analysis_options(o));
  std::cout << "valuation: " << v.label << "\n";
  std::cout << "relative character: " << v.relative_character.describe() << "\n";
  std::cout << "words_checked: " << report.words_checked << "\n";
  std::cout << "pairs_checked: " << report.pairs_checked << "\n";
  std::cout << "axiom_a_violations: " << report.violations_of('a') << "\n";
  std::cout << "axiom_b_violations: " << report.violations_of('b') << "\n";
  const auto& p = v.relative_character.presentation();
  std::size_t shown = 0;
  for (const auto& viol : report.violations) {
    if (++shown > 10) break;
    std::cout << "  (" << viol.axiom << ") g = " << p.display(viol.g);
    if (viol.axiom == 'b') std::cout << ", h = " << p.display(viol.h);
    std::cout << ": " << viol.lhs << " vs " << viol.rhs << "\n";
  }
  std::cout << "witness_trace:";
  for (const auto& x : report.witness_trace) std::cout << " " << x.to_string();
  std::cout << "\n";
  std::cout << "witnesses_in_kernel: " << (report.witnesses_in_kernel ? "true" : "false") << "\n";
  std::cout << "result: " << (report.pass() ? "PASS" : "FAIL") << "\n";
  if (report.pass()) std::cout << io::format_fact(valuation_fact(v, report)) << "\n";
  return kOk;
}

void override_flag(Tristate& slot, const std::string& value, const char* name) {
  if (value.empty()) return;
  auto t = parse_tristate(value);
  if (!t) throw Error(ErrorKind::InvalidArgument, std::string("--") + name + " expects true, false or unknown");
  slot = *t;
}

GroupFlags apply_overrides(GroupFlags flags, const Options& o) {
  override_flag(flags.no_nonabelian_free_subgroups, o.no_free, "no-free-subgroups");
  override_flag(flags.amenable, o.amenable, "amenable");
  override_flag(flags.claimed_kahler, o.claimed_kahler, "claimed-kahler");
  override_flag(flags.commutator_fg, o.commutator_fg, "commutator-fg");
  return flags.normalized();
}

std::string flags_line(const GroupFlags& f) {
  return "flags: no_free_subgroups = " + std::string(to_string(f.no_nonabelian_free_subgroups)) +
         ", amenable = " + std::string(to_string(f.amenable)) +
         ", claimed_kahler = " + std::string(to_string(f.claimed_kahler)) +
         ", commutator_fg = " + std::string(to_string(f.commutator_fg));
}

int cmd_kahler(const Options& o) {
  std::string text = io::read_file(o.input);
  std::vector<Verdict> verdicts;
  if (io::looks_like_decomposition(text)) {
    auto file = io::read_decomposition(o.input);
    GroupFlags flags = apply_overrides(file.decomposition.flags, o);
    Analysis a = analyze_decomposition(file.decomposition, flags, analysis_options(o));
    std::cout << flags_line(a.flags) << "\n";
    for (const auto& r : a.readings)
      std::cout << "reading: " << describe(r.decomposition) << " -> "
                << to_string(r.criterion.classification.hnn_class) << "\n";
    if (a.valuation_report)
      std::cout << "valuation check: " << (a.valuation_report->pass() ? "PASS" : "FAIL") << " ("
                << a.valuation_report->words_checked << " words, "
                << a.valuation_report->pairs_checked << " pairs)\n";
    std::cout << "facts:\n";
    for (const auto& f : a.store.facts()) std::cout << "  " << describe(f) << "\n";
    verdicts = a.verdicts;
  } else {
    auto file = io::parse_facts(text);
    GroupFlags flags = apply_overrides(file.flags, o);
    std::cout << flags_line(flags) << "\n";
    FactStore closed = saturate(file.store, flags);
    std::cout << "facts:\n";
    for (const auto& f : closed.facts()) std::cout << "  " << describe(f) << "\n";
    verdicts = run_inference(file.store, flags);
  }
  for (const auto& v : verdicts) std::cout << render_proof(v);
  return exit_code_for(verdicts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bnskit: BNS invariants, HNN decompositions and Kahler obstructions"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto flags_opts = [&](CLI::App* sub) {
    sub->add_option("--no-free-subgroups", o.no_free, "override flag: true|false|unknown");
    sub->add_option("--amenable", o.amenable, "override flag: true|false|unknown");
    sub->add_option("--claimed-kahler", o.claimed_kahler, "override flag: true|false|unknown");
    sub->add_option("--commutator-fg", o.commutator_fg, "override flag: true|false|unknown");
  };
  auto valuation_opts = [&](CLI::App* sub) {
    sub->add_option("--depth", o.depth, "exhaustive sample: all words up to this length")
        ->capture_default_str();
    sub->add_option("--budget", o.budget, "ordered pairs checked (also the subgroup search budget)")
        ->capture_default_str();
    sub->add_option("--random-pairs", o.random_pairs, "extra random pairs of length <= 8")
        ->capture_default_str();
    sub->add_option("--witness-depth", o.witness_depth, "witness trace length")->capture_default_str();
    sub->add_option("--seed", o.seed, "seed for random pairs")->capture_default_str();
  };

  auto* betti = app.add_subcommand("betti", "first Betti number and torsion");
  betti->add_option("presentation", o.presentation)->required();
  betti->callback([&] { action = [&] { return cmd_betti(o); }; });

  auto* chi = app.add_subcommand("chi", "character operations");
  chi->require_subcommand(1);
  auto* chi_validate = chi->add_subcommand("validate", "check a character vanishes on relators");
  chi_validate->add_option("presentation", o.presentation)->required();
  chi_validate->add_option("character", o.character)->required();
  chi_validate->callback([&] { action = [&] { return cmd_chi_validate(o); }; });

  auto* sigma = app.add_subcommand("sigma", "finite-ball evidence about C_chi");
  sigma->require_subcommand(1);
  auto* ball = sigma->add_subcommand("ball", "connectivity evidence in the ball of radius R");
  ball->add_option("presentation", o.presentation)->required();
  ball->add_option("character", o.character)->required();
  ball->add_option("--radius", o.radius, "ball radius")->capture_default_str();
  ball->add_option("--margin", o.margin, "outer shell excluded from component counts")
      ->capture_default_str();
  ball->add_option("--format", o.format, "also export the subgraph: dot|svg");
  ball->add_option("--output", o.output, "graph output file (default stdout)");
  ball->add_flag("--include-dropped", o.include_dropped, "draw vertices with chi < 0 greyed");
  ball->callback([&] { action = [&] { return cmd_sigma_ball(o); }; });

  auto* exp = app.add_subcommand("export", "export C_chi restricted to a ball");
  exp->require_subcommand(1);
  for (const char* fmt : {"dot", "svg"}) {
    auto* sub = exp->add_subcommand(fmt, std::string("write ") + fmt);
    sub->add_option("presentation", o.presentation)->required();
    sub->add_option("character", o.character)->required();
    sub->add_option("--radius", o.radius, "ball radius")->capture_default_str();
    sub->add_option("--output", o.output, "output file (default stdout)");
    sub->add_flag("--include-dropped", o.include_dropped, "draw vertices with chi < 0 greyed");
    GraphFormat gf = parse_graph_format(fmt);
    sub->callback([&, gf] { action = [&, gf] { return cmd_export(o, gf); }; });
  }

  auto* hnn = app.add_subcommand("hnn", "HNN decompositions");
  hnn->require_subcommand(1);
  auto hnn_sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    auto* sub = hnn->add_subcommand(name, help);
    sub->add_option("decomposition", o.decomposition)->required();
    sub->add_option("--length", o.search_length, "subgroup search word length")->capture_default_str();
    sub->callback([&, fn] { action = [&, fn] { return fn(o); }; });
    return sub;
  };
  auto* classify_cmd = hnn_sub("classify", "ascending / descending classification", cmd_hnn_classify);
  classify_cmd->add_option("--budget", o.budget, "subgroup search budget")->capture_default_str();
  auto* invert_cmd = hnn_sub("invert", "rewrite with stable letter s = t^-1", cmd_hnn_invert);
  invert_cmd->add_option("--output", o.output, "output file (default stdout)");
  auto* criterion_cmd = hnn_sub("criterion", "Brown's criterion on both readings", cmd_hnn_criterion);
  criterion_cmd->add_option("--output", o.output, "facts output file (default stdout)");
  auto* valuation_cmd = hnn_sub("valuation-check", "check the built-in HNN valuation", cmd_hnn_valuation_check);
  valuation_opts(valuation_cmd);

  auto* kahler = app.add_subcommand("kahler", "Kahler obstructions");
  kahler->require_subcommand(1);
  auto* verdict = kahler->add_subcommand("verdict", "run inference on a facts or decomposition file");
  verdict->add_option("input", o.input)->required();
  flags_opts(verdict);
  valuation_opts(verdict);
  verdict->callback([&] { action = [&] { return cmd_kahler(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    return action();
  } catch (const Error& e) {
    std::cout.flush();
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  }
}
