#include "bns/cayley.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "bns/error.hpp"

namespace bns {

CayleyBall build_ball(const OraclePtr& oracle, std::shared_ptr<const GroupPresentation> presentation,
                      std::size_t radius, const BallOptions& options) {
  if (!oracle) throw Error(ErrorKind::NoOracle, "no word-problem engine for this group");
  if (!presentation || oracle->alphabet() != presentation->generators())
    throw Error(ErrorKind::InvalidArgument, "oracle is not bound to the presentation's generators");
  CayleyBall ball;
  ball.radius = radius;
  ball.presentation = std::move(presentation);
  const std::size_t rank = oracle->rank();

  auto add_vertex = [&](Word w, std::size_t length) {
    if (ball.vertices.size() >= options.vertex_budget)
      throw Error(ErrorKind::BallTooLarge,
                  "ball of radius " + std::to_string(radius) + " exceeds the vertex budget of " +
                      std::to_string(options.vertex_budget));
    ball.index.emplace(w, ball.vertices.size());
    ball.vertices.push_back(std::move(w));
    ball.lengths.push_back(length);
  };
  add_vertex(Word{}, 0);
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    if (ball.lengths[i] == radius) continue;
    for (std::size_t g = 0; g < rank; ++g) {
      for (std::int64_t e : {1, -1}) {
        Word v = oracle->normal_form(Word::generator(g, e) * ball.vertices[i]);
        if (!ball.index.count(v)) add_vertex(std::move(v), ball.lengths[i] + 1);
      }
    }
  }
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    for (std::size_t g = 0; g < rank; ++g) {
      for (std::int64_t e : {1, -1}) {
        Word v = oracle->normal_form(Word::generator(g, e) * ball.vertices[i]);
        auto it = ball.index.find(v);
        if (it != ball.index.end()) ball.edges.push_back(CayleyEdge{i, it->second, Letter{g, e}});
      }
    }
  }
  return ball;
}

std::size_t ChiSubgraph::retained_vertex_count() const {
  return static_cast<std::size_t>(std::count(retained.begin(), retained.end(), true));
}

ChiSubgraph chi_subgraph(const CayleyBall& ball, const Character& chi) {
  if (chi.is_zero()) throw Error(ErrorKind::ZeroCharacter, "C_chi needs a nonzero character");
  if (chi.presentation().rank() != ball.presentation->rank())
    throw Error(ErrorKind::InvalidArgument, "character and ball use different generators");
  ChiSubgraph sub;
  sub.ball = &ball;
  sub.chi_values.reserve(ball.vertices.size());
  sub.retained.reserve(ball.vertices.size());
  for (const auto& v : ball.vertices) {
    sub.chi_values.push_back(chi(v));
    sub.retained.push_back(sub.chi_values.back() >= 0);
  }
  for (std::size_t e = 0; e < ball.edges.size(); ++e)
    if (sub.retained[ball.edges[e].from] && sub.retained[ball.edges[e].to])
      sub.retained_edges.push_back(e);
  return sub;
}

std::string_view to_string(ConnectivityVerdict v) {
  return v == ConnectivityVerdict::ConnectedAtScale ? "CONNECTED_AT_SCALE"
                                                    : "DISCONNECTED_AT_SCALE";
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

}  // namespace

ConnectivityReport connectivity_evidence(const ChiSubgraph& sub, std::size_t margin,
                                         const EvidenceOptions& options) {
  const CayleyBall& ball = *sub.ball;
  if (margin >= ball.radius)
    throw Error(ErrorKind::InvalidArgument, "margin must be smaller than the radius");
  ConnectivityReport report;
  report.radius = ball.radius;
  report.margin = margin;
  report.inner_radius = ball.radius - margin;
  report.retained_vertices = sub.retained_vertex_count();

  const std::size_t n = ball.vertices.size();
  DisjointSets sets(n);
  std::vector<std::vector<std::size_t>> adjacency(n);  // edge indices
  for (auto e : sub.retained_edges) {
    sets.unite(ball.edges[e].from, ball.edges[e].to);
    adjacency[ball.edges[e].from].push_back(e);
  }

  auto inner = [&](std::size_t v) { return sub.retained[v] && ball.lengths[v] <= report.inner_radius; };
  std::vector<std::size_t> root_rep(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!inner(v)) continue;
    ++report.inner_retained_vertices;
    std::size_t root = sets.find(v);
    if (root_rep[root] == n) {
      root_rep[root] = v;
      report.representatives.push_back(v);
    }
  }
  report.components = report.representatives.size();
  report.verdict = report.components <= 1 ? ConnectivityVerdict::ConnectedAtScale
                                          : ConnectivityVerdict::DisconnectedAtScale;

  // BFS forest from each representative over retained edges.
  std::vector<std::size_t> parent_edge(n, ball.edges.size());
  std::vector<bool> seen(n, false);
  for (auto rep : report.representatives) {
    std::vector<std::size_t> order;
    std::deque<std::size_t> queue{rep};
    seen[rep] = true;
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      order.push_back(u);
      for (auto e : adjacency[u]) {
        auto v = ball.edges[e].to;
        if (seen[v]) continue;
        seen[v] = true;
        parent_edge[v] = e;
        queue.push_back(v);
      }
    }
    std::size_t taken = 0;
    for (auto it = order.rbegin(); it != order.rend() && taken < options.witnesses_per_component; ++it) {
      if (*it == rep || !inner(*it)) continue;
      WitnessPath path;
      path.from = rep;
      path.to = *it;
      std::vector<Letter> letters;
      for (std::size_t v = *it; v != rep; v = ball.edges[parent_edge[v]].from) {
        path.vertices.push_back(v);
        letters.push_back(ball.edges[parent_edge[v]].generator);
      }
      path.vertices.push_back(rep);
      std::reverse(path.vertices.begin(), path.vertices.end());
      std::reverse(letters.begin(), letters.end());
      path.word = Word(std::vector<Letter>(letters));
      report.max_witness_length = std::max(report.max_witness_length, path.vertices.size() - 1);
      report.witnesses.push_back(std::move(path));
      ++taken;
    }
  }
  return report;
}

std::string render_report(const ConnectivityReport& report, const ChiSubgraph& sub) {
  const auto& p = *sub.ball->presentation;
  std::ostringstream out;
  out << "kind: " << ConnectivityReport::label << " (finite-ball observation, not a certificate)\n";
  out << "radius: " << report.radius << "\n";
  out << "margin: " << report.margin << "\n";
  out << "inner_radius: " << report.inner_radius << "\n";
  out << "ball_vertices: " << sub.ball->vertices.size() << "\n";
  out << "retained_vertices: " << report.retained_vertices << "\n";
  out << "inner_retained_vertices: " << report.inner_retained_vertices << "\n";
  out << "components: " << report.components << "\n";
  out << "verdict: " << to_string(report.verdict) << "\n";
  out << "representatives:\n";
  for (auto r : report.representatives)
    out << "  - " << p.display(sub.ball->vertices[r]) << " (chi = " << to_string(sub.chi_values[r])
        << ")\n";
  out << "witnesses:\n";
  for (const auto& w : report.witnesses) {
    out << "  - from: " << p.display(sub.ball->vertices[w.from])
        << "\n    to: " << p.display(sub.ball->vertices[w.to])
        << "\n    length: " << w.vertices.size() - 1 << "\n    path:";
    for (auto v : w.vertices) out << " [" << p.display(sub.ball->vertices[v]) << "]";
    out << "\n";
  }
  out << "max_witness_length: " << report.max_witness_length << "\n";
  return out.str();
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "dot") return GraphFormat::Dot;
  if (name == "svg") return GraphFormat::Svg;
  throw Error(ErrorKind::UnknownFormat, "unknown graph format '" + std::string(name) + "'");
}

namespace {

std::string letter_label(const Letter& l, const GroupPresentation& p) {
  std::string s = p.generators().at(l.generator);
  return l.exponent < 0 ? s + "^-1" : s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Undirected edges to draw: one per stored pair with from < to.
std::vector<std::size_t> drawn_edges(const ChiSubgraph& sub, bool include_dropped) {
  std::vector<std::size_t> out;
  const auto& edges = sub.ball->edges;
  auto keep = [&](std::size_t e) {
    return edges[e].from < edges[e].to;
  };
  if (include_dropped) {
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (keep(e)) out.push_back(e);
  } else {
    for (auto e : sub.retained_edges)
      if (keep(e)) out.push_back(e);
  }
  return out;
}

std::string export_dot(const ChiSubgraph& sub, const ExportOptions& options) {
  const CayleyBall& ball = *sub.ball;
  const auto& p = *ball.presentation;
  std::vector<bool> is_retained_edge(ball.edges.size(), false);
  for (auto e : sub.retained_edges) is_retained_edge[e] = true;
  std::ostringstream out;
  out << "graph C_chi {\n";
  out << "  graph [label=\"C_chi in the ball of radius " << ball.radius << "\"];\n";
  out << "  node [shape=ellipse];\n";
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    if (!sub.retained[v] && !options.include_dropped) continue;
    out << "  v" << v << " [label=\"" << p.display(ball.vertices[v]) << "\\nchi=" << to_string(sub.chi_values[v])
        << "\"";
    if (!sub.retained[v]) out << ", color=grey, fontcolor=grey, style=dashed";
    out << "];\n";
  }
  for (auto e : drawn_edges(sub, options.include_dropped)) {
    const auto& edge = ball.edges[e];
    out << "  v" << edge.from << " -- v" << edge.to << " [label=\"" << letter_label(edge.generator, p) << "\"";
    if (!is_retained_edge[e]) out << ", color=grey, style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_svg(const ChiSubgraph& sub, const ExportOptions& options) {
  const CayleyBall& ball = *sub.ball;
  const auto& p = *ball.presentation;
  std::vector<bool> is_retained_edge(ball.edges.size(), false);
  for (auto e : sub.retained_edges) is_retained_edge[e] = true;

  // Layered layout: row = word length, column = order within the row.
  std::vector<std::size_t> column(ball.vertices.size(), 0);
  std::vector<std::size_t> row_size(ball.radius + 1, 0);
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    if (!sub.retained[v] && !options.include_dropped) continue;
    column[v] = row_size[ball.lengths[v]]++;
  }
  const std::size_t widest = std::max<std::size_t>(1, *std::max_element(row_size.begin(), row_size.end()));
  const std::size_t dx = 90, dy = 80, pad = 50;
  const std::size_t width = widest * dx + 2 * pad;
  const std::size_t height = (ball.radius + 1) * dy + 2 * pad;
  auto x_of = [&](std::size_t v) {
    std::size_t row = ball.lengths[v];
    double offset = (static_cast<double>(widest) - static_cast<double>(row_size[row])) * dx / 2.0;
    return static_cast<double>(pad) + offset + static_cast<double>(column[v] * dx) + dx / 2.0;
  };
  auto y_of = [&](std::size_t v) { return static_cast<double>(pad + ball.lengths[v] * dy); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "  <title>C_chi in the ball of radius " << ball.radius << "</title>\n";
  for (auto e : drawn_edges(sub, options.include_dropped)) {
    const auto& edge = ball.edges[e];
    out << "  <line class=\"edge\" x1=\"" << x_of(edge.from) << "\" y1=\"" << y_of(edge.from)
        << "\" x2=\"" << x_of(edge.to) << "\" y2=\"" << y_of(edge.to) << "\" stroke=\""
        << (is_retained_edge[e] ? "black" : "grey") << "\"/>\n";
  }
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    if (!sub.retained[v] && !options.include_dropped) continue;
    const char* colour = sub.retained[v] ? "black" : "grey";
    out << "  <g class=\"vertex\">\n";
    out << "    <circle cx=\"" << x_of(v) << "\" cy=\"" << y_of(v) << "\" r=\"6\" fill=\"" << colour << "\"/>\n";
    out << "    <text x=\"" << x_of(v) << "\" y=\"" << y_of(v) - 10
        << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"" << colour << "\">"
        << xml_escape(p.display(ball.vertices[v]) + " (" + to_string(sub.chi_values[v]) + ")")
        << "</text>\n";
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string export_graph(const ChiSubgraph& sub, GraphFormat format, const ExportOptions& options) {
  return format == GraphFormat::Dot ? export_dot(sub, options) : export_svg(sub, options);
}

}  // namespace bns
