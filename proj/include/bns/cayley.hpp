#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bns/character.hpp"
#include "bns/oracle.hpp"
#include "bns/presentation.hpp"

namespace bns {

// Finite ball of radius R in the Cayley graph. Edges are stored in both
// directions; edge (u, s, v) means v = s·u, i.e. the generator acts on the
// left. Vertex 0 is the identity; vertices are in BFS order.
struct CayleyEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  Letter generator;  // exponent ±1

  friend bool operator==(const CayleyEdge&, const CayleyEdge&) = default;
};

struct CayleyBall {
  std::size_t radius = 0;
  std::vector<Word> vertices;        // normal forms
  std::vector<std::size_t> lengths;  // word length (BFS depth)
  std::vector<CayleyEdge> edges;
  std::unordered_map<Word, std::size_t, WordHash> index;
  std::shared_ptr<const GroupPresentation> presentation;
};

struct BallOptions {
  std::size_t vertex_budget = 1000000;
};

// Throws BallTooLarge past the vertex budget, NoOracle when `oracle` is null,
// InvalidArgument when the oracle alphabet differs from the presentation.
CayleyBall build_ball(const OraclePtr& oracle, std::shared_ptr<const GroupPresentation> presentation,
                      std::size_t radius, const BallOptions& options = {});

// C_χ restricted to the ball: vertices with χ ≥ 0 and edges between them.
struct ChiSubgraph {
  const CayleyBall* ball = nullptr;
  std::vector<Rational> chi_values;      // per ball vertex
  std::vector<bool> retained;            // per ball vertex
  std::vector<std::size_t> retained_edges;  // indices into ball->edges

  std::size_t retained_vertex_count() const;
  friend bool operator==(const ChiSubgraph& a, const ChiSubgraph& b) {
    return a.ball == b.ball && a.retained == b.retained && a.retained_edges == b.retained_edges;
  }
};

// Throws ZeroCharacter for χ = 0.
ChiSubgraph chi_subgraph(const CayleyBall& ball, const Character& chi);

enum class ConnectivityVerdict { ConnectedAtScale, DisconnectedAtScale };
std::string_view to_string(ConnectivityVerdict v);

struct WitnessPath {
  std::size_t from = 0;  // component representative
  std::size_t to = 0;
  std::vector<std::size_t> vertices;  // from ... to, through retained vertices
  Word word;                           // generators applied along the path
};

// Always evidence about one finite ball, never a Sigma certificate.
struct ConnectivityReport {
  static constexpr std::string_view label = "EVIDENCE";
  std::size_t radius = 0;
  std::size_t margin = 0;
  std::size_t inner_radius = 0;
  std::size_t retained_vertices = 0;        // in the whole ball
  std::size_t inner_retained_vertices = 0;  // counted in components
  std::size_t components = 0;
  std::vector<std::size_t> representatives;  // one per component, ball order
  std::vector<WitnessPath> witnesses;
  std::size_t max_witness_length = 0;
  ConnectivityVerdict verdict = ConnectivityVerdict::ConnectedAtScale;
};

struct EvidenceOptions {
  std::size_t witnesses_per_component = 2;
};

// Union-find over retained edges of the full ball; components are counted
// among retained vertices of length ≤ R − margin. Throws InvalidArgument
// unless margin < R.
ConnectivityReport connectivity_evidence(const ChiSubgraph& sub, std::size_t margin,
                                         const EvidenceOptions& options = {});

std::string render_report(const ConnectivityReport& report, const ChiSubgraph& sub);

enum class GraphFormat { Dot, Svg };
// Throws UnknownFormat.
GraphFormat parse_graph_format(std::string_view name);

struct ExportOptions {
  bool include_dropped = false;  // grey out vertices with χ < 0
};

std::string export_graph(const ChiSubgraph& sub, GraphFormat format,
                         const ExportOptions& options = {});

}  // namespace bns
