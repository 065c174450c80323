// Python bindings: text in (file contents), plain Python values out.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bns/cayley.hpp"
#include "bns/error.hpp"
#include "bns/io.hpp"
#include "bns/pipeline.hpp"
#include "bns/smith.hpp"

namespace py = pybind11;
using namespace bns;

namespace {

py::int_ to_py(const Integer& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

py::tuple ray_tuple(const RayClass& r) {
  py::tuple t(r.dimension());
  for (std::size_t i = 0; i < r.dimension(); ++i) t[i] = to_py(r.coordinates()[i]);
  return t;
}

RayClass ray_from(const std::vector<py::int_>& coords) {
  std::vector<Integer> v;
  for (const auto& c : coords) v.emplace_back(py::str(c).cast<std::string>());
  return RayClass(std::move(v));
}

std::vector<std::vector<py::int_>> to_py(const BigMatrix& m) {
  std::vector<std::vector<py::int_>> out;
  for (const auto& row : m) {
    out.emplace_back();
    for (const auto& x : row) out.back().push_back(to_py(x));
  }
  return out;
}

GroupFlags with_overrides(GroupFlags flags, const std::map<std::string, std::string>& overrides) {
  for (const auto& [key, value] : overrides) {
    auto t = parse_tristate(value);
    if (!t) throw Error(ErrorKind::InvalidArgument, "flag '" + key + "' expects true, false or unknown");
    if (key == "no_free_subgroups" || key == "no_nonabelian_free_subgroups")
      flags.no_nonabelian_free_subgroups = *t;
    else if (key == "amenable")
      flags.amenable = *t;
    else if (key == "claimed_kahler")
      flags.claimed_kahler = *t;
    else if (key == "commutator_fg")
      flags.commutator_fg = *t;
    else
      throw Error(ErrorKind::InvalidArgument, "unknown flag '" + key + "'");
  }
  return flags.normalized();
}

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["kind"] = std::string(to_string(v.kind));
  d["rule"] = v.concluding_rule ? py::object(py::str(std::string(rule_id(*v.concluding_rule))))
                                : py::object(py::none());
  d["assumed_flags"] = v.assumed_flags;
  d["steps"] = v.proof_chain.size();
  d["proof"] = render_proof(v);
  return d;
}

AnalysisOptions analysis_options(std::size_t depth, std::size_t budget, std::size_t random_pairs,
                                 std::size_t witness_depth, std::uint64_t seed) {
  AnalysisOptions o;
  o.sample_length = depth;
  o.pair_budget = budget;
  o.random_pairs = random_pairs;
  o.witness_depth = witness_depth;
  o.seed = seed;
  return o;
}

}  // namespace

PYBIND11_MODULE(_bnskit, m) {
  m.doc() = "BNS invariants, HNN decompositions and Kahler obstructions";

  static py::exception<Error> bns_error(m, "BnsError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(bns_error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("abelianization", [](const std::string& presentation) {
    auto p = io::parse_presentation(presentation);
    auto ab = bns::abelianization(*p.presentation);
    py::dict d;
    d["betti"] = ab.betti_number;
    py::list torsion;
    for (const auto& t : ab.torsion_invariants) torsion.append(to_py(t));
    d["torsion"] = torsion;
    return d;
  }, py::arg("presentation"));

  m.def("smith_normal_form", [](const std::vector<std::vector<long long>>& matrix, std::size_t cols) {
    BigMatrix big;
    for (const auto& row : matrix) {
      if (row.size() != cols) throw Error(ErrorKind::InvalidArgument, "ragged matrix");
      big.emplace_back();
      for (auto x : row) big.back().emplace_back(static_cast<long>(x));
    }
    SmithForm s = bns::smith_normal_form(big, cols);
    py::dict d;
    d["left"] = to_py(s.left);
    d["diagonal"] = to_py(s.diagonal);
    d["right"] = to_py(s.right);
    d["rank"] = s.rank;
    return d;
  }, py::arg("matrix"), py::arg("cols"));

  m.def("character_ray", [](const std::string& presentation, const std::string& character) {
    auto p = io::parse_presentation(presentation);
    return ray_tuple(canonical_ray(io::parse_character(character, p.presentation)));
  }, py::arg("presentation"), py::arg("character"));

  m.def("canonical_ray", [](const std::vector<std::string>& values) {
    std::vector<Rational> v;
    for (const auto& s : values) v.push_back(parse_rational(s));
    return ray_tuple(bns::canonical_ray(v));
  }, py::arg("values"));

  m.def("antipode", [](const std::vector<py::int_>& ray) { return ray_tuple(bns::antipode(ray_from(ray))); },
        py::arg("ray"));

  m.def("sigma_ball", [](const std::string& presentation, const std::string& character,
                         std::size_t radius, std::size_t margin) {
    auto p = io::parse_presentation(presentation);
    if (!p.oracle) throw Error(ErrorKind::NoOracle, "no word-problem engine for this group");
    Character chi = io::parse_character(character, p.presentation);
    CayleyBall ball = build_ball(p.oracle, p.presentation, radius);
    ChiSubgraph sub = chi_subgraph(ball, chi);
    ConnectivityReport r = connectivity_evidence(sub, margin);
    py::dict d;
    d["ball_vertices"] = ball.vertices.size();
    d["retained_vertices"] = r.retained_vertices;
    d["inner_retained_vertices"] = r.inner_retained_vertices;
    d["components"] = r.components;
    d["verdict"] = std::string(to_string(r.verdict));
    d["report"] = render_report(r, sub);
    return d;
  }, py::arg("presentation"), py::arg("character"), py::arg("radius") = 4, py::arg("margin") = 1);

  m.def("export_graph", [](const std::string& presentation, const std::string& character,
                           const std::string& format, std::size_t radius, bool include_dropped) {
    GraphFormat f = parse_graph_format(format);
    auto p = io::parse_presentation(presentation);
    if (!p.oracle) throw Error(ErrorKind::NoOracle, "no word-problem engine for this group");
    Character chi = io::parse_character(character, p.presentation);
    CayleyBall ball = build_ball(p.oracle, p.presentation, radius);
    return bns::export_graph(chi_subgraph(ball, chi), f, ExportOptions{include_dropped});
  }, py::arg("presentation"), py::arg("character"), py::arg("format") = "dot",
     py::arg("radius") = 4, py::arg("include_dropped") = false);

  m.def("classify", [](const std::string& decomposition) {
    auto file = io::parse_decomposition(decomposition);
    Classification c = bns::classify(file.decomposition);
    py::dict d;
    d["class"] = std::string(to_string(c.hnn_class));
    d["b1_equals_base"] = c.b1.equals_base;
    d["b2_equals_base"] = c.b2.equals_base;
    d["b1_evidence"] = std::string(to_string(c.b1.evidence));
    d["b2_evidence"] = std::string(to_string(c.b2.evidence));
    d["ray"] = ray_tuple(canonical_ray(associated_character(file.decomposition)));
    d["reading"] = describe(file.decomposition);
    return d;
  }, py::arg("decomposition"));

  m.def("invert", [](const std::string& decomposition) {
    return io::format_decomposition(io::invert(io::parse_decomposition(decomposition)));
  }, py::arg("decomposition"));

  m.def("criterion", [](const std::string& decomposition) {
    auto file = io::parse_decomposition(decomposition);
    std::vector<std::string> lines;
    CriterionResult r = brown_criterion(file.decomposition);
    for (const auto& f : r.facts) lines.push_back(io::format_fact(f));
    return lines;
  }, py::arg("decomposition"));

  m.def("valuation_check", [](const std::string& decomposition, std::size_t depth, std::size_t budget,
                              std::size_t random_pairs, std::size_t witness_depth, std::uint64_t seed) {
    auto file = io::parse_decomposition(decomposition);
    const auto& h = file.decomposition;
    auto shape = recognize_bs(h);
    if (!shape) throw Error(ErrorKind::NoOracle, "no valuation witness is known for this decomposition");
    HnnValuation v = bs_valuation(shape->n, build_group_ptr(h), shape->a_index, shape->t_index, shape->t_sign);
    AxiomReport r = check_valuation(v, analysis_options(depth, budget, random_pairs, witness_depth, seed));
    py::dict d;
    d["pass"] = r.pass();
    d["words_checked"] = r.words_checked;
    d["pairs_checked"] = r.pairs_checked;
    d["violations"] = r.violations.size();
    std::vector<std::string> trace;
    for (const auto& x : r.witness_trace) trace.push_back(x.to_string());
    d["witness_trace"] = trace;
    d["ray"] = ray_tuple(canonical_ray(v.relative_character));
    return d;
  }, py::arg("decomposition"), py::arg("depth") = 5, py::arg("budget") = 250000,
     py::arg("random_pairs") = 10000, py::arg("witness_depth") = 20, py::arg("seed") = 1);

  m.def("kahler_verdict", [](const std::string& text, const std::map<std::string, std::string>& flags,
                             std::size_t depth, std::size_t budget, std::size_t random_pairs,
                             std::size_t witness_depth, std::uint64_t seed) {
    std::vector<Verdict> verdicts;
    std::vector<std::string> facts;
    if (io::looks_like_decomposition(text)) {
      auto file = io::parse_decomposition(text);
      Analysis a = analyze_decomposition(file.decomposition,
                                         with_overrides(file.decomposition.flags, flags),
                                         analysis_options(depth, budget, random_pairs, witness_depth, seed));
      for (const auto& f : a.store.facts()) facts.push_back(describe(f));
      verdicts = a.verdicts;
    } else {
      auto file = io::parse_facts(text);
      GroupFlags g = with_overrides(file.flags, flags);
      FactStore closed = saturate(file.store, g);
      for (const auto& f : closed.facts()) facts.push_back(describe(f));
      verdicts = run_inference(file.store, g);
    }
    py::dict d;
    d["exit_code"] = exit_code_for(verdicts);
    d["facts"] = facts;
    py::list vs;
    for (const auto& v : verdicts) vs.append(verdict_dict(v));
    d["verdicts"] = vs;
    return d;
  }, py::arg("text"), py::arg("flags") = std::map<std::string, std::string>{}, py::arg("depth") = 5,
     py::arg("budget") = 250000, py::arg("random_pairs") = 10000, py::arg("witness_depth") = 20,
     py::arg("seed") = 1);
}
