#pragma once

// Data model for ideally triangulated compact 3-manifolds with boundary:
// vertices, explicit edge records, and tetrahedra referencing edge ids per
// slot. Edges are explicit because gluings identify them: distinct edge
// classes may share endpoint labels, and one tetrahedron may meet the same
// edge class through several slots (self-gluing).

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hyperpack {

struct EdgeRecord {
  int v = 0;
  int w = 0;
};

struct TetRecord {
  std::array<int, 4> vertices{};
  std::array<int, 6> edge_refs{};  // edge id per slot, slot order (01..23)
};

struct Triangulation {
  int vertex_count = 0;
  std::vector<EdgeRecord> edges;  // index = edge id
  std::vector<TetRecord> tets;    // index = tet id
  // Gates coincident edge endpoints and repeated vertices within a tet.
  bool allow_self_gluing = false;
  // Optional per-vertex Euler characteristic of the vertex link, supplied as
  // fixture metadata (not derivable from edge data alone).
  std::optional<std::vector<int>> vertex_link_euler;
};

// Structure counts reported by the validator.
struct ValidationReport {
  std::vector<int> edge_star_sizes;  // slot references per edge
  std::vector<int> vertex_degrees;   // edge ends per vertex
};

// Parse a JSON triangulation document (see README for the format) and
// validate it. Throws ParseError on malformed input, ValidationError on
// invariant violations.
Triangulation parse_triangulation(const std::string& text);

// Inverse of parse_triangulation (parse(serialize(t)) reproduces t).
std::string serialize_triangulation(const Triangulation& t);

// Check all structural invariants; returns per-edge star sizes and
// per-vertex degrees. Aggregates every violation into one ValidationError.
// Does not attempt manifold-topology verification.
ValidationReport validate_triangulation(const Triangulation& t);

// All (tet id, slot) pairs referencing the edge, with multiplicity, in tet
// order. Throws UnknownId.
std::vector<std::pair<int, int>> edge_star(const Triangulation& t, int edge_id);

// Embedded copies of the bundled example triangulations ("double4", "fan6",
// "self_glued"), identical to the documents shipped under fixtures/.
// Throws UnknownId for other names.
const char* builtin_triangulation(const std::string& name);

}  // namespace hyperpack
