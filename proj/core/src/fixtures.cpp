#include <string>

#include "hyperpack/complex.hpp"
#include "hyperpack/errors.hpp"

namespace hyperpack {

namespace {

// Two tetrahedra glued along all four faces: 4 vertices, 6 edges, every edge
// star has size 2. Each vertex link is a doubled triangle, i.e. a sphere.
constexpr const char* kDouble4 = R"({
  "version": 1,
  "vertex_count": 4,
  "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
  "tets": [
    {"vertices": [0, 1, 2, 3], "edge_refs": [0, 1, 2, 3, 4, 5]},
    {"vertices": [0, 1, 2, 3], "edge_refs": [0, 1, 2, 3, 4, 5]}
  ],
  "vertex_link_euler": [2, 2, 2, 2]
}
)";

// Six tetrahedra forming a cycle around one central edge (star size 6).
// Vertices 0 and 1 span the axis, vertices 2..7 form the surrounding ring.
constexpr const char* kFan6 = R"({
  "version": 1,
  "vertex_count": 8,
  "edges": [
    [0, 1],
    [0, 2], [0, 3], [0, 4], [0, 5], [0, 6], [0, 7],
    [1, 2], [1, 3], [1, 4], [1, 5], [1, 6], [1, 7],
    [2, 3], [3, 4], [4, 5], [5, 6], [6, 7], [7, 2]
  ],
  "tets": [
    {"vertices": [0, 1, 2, 3], "edge_refs": [0, 1, 2, 7, 8, 13]},
    {"vertices": [0, 1, 3, 4], "edge_refs": [0, 2, 3, 8, 9, 14]},
    {"vertices": [0, 1, 4, 5], "edge_refs": [0, 3, 4, 9, 10, 15]},
    {"vertices": [0, 1, 5, 6], "edge_refs": [0, 4, 5, 10, 11, 16]},
    {"vertices": [0, 1, 6, 7], "edge_refs": [0, 5, 6, 11, 12, 17]},
    {"vertices": [0, 1, 7, 2], "edge_refs": [0, 6, 1, 12, 7, 18]}
  ]
}
)";

// One tetrahedron with two vertex identifications: vertices (0, 1, 0, 1).
// Four of its six edge slots collapse onto the single edge joining 0 and 1,
// the other two become loops. Only loads with allow_self_gluing.
constexpr const char* kSelfGlued = R"({
  "version": 1,
  "vertex_count": 2,
  "allow_self_gluing": true,
  "edges": [[0, 1], [0, 0], [1, 1]],
  "tets": [
    {"vertices": [0, 1, 0, 1], "edge_refs": [0, 1, 0, 0, 2, 0]}
  ]
}
)";

}  // namespace

const char* builtin_triangulation(const std::string& name) {
  if (name == "double4") return kDouble4;
  if (name == "fan6") return kFan6;
  if (name == "self_glued") return kSelfGlued;
  throw UnknownId("no builtin triangulation named '" + name + "'");
}

}  // namespace hyperpack
