#include "hyperpack/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hyperpack/errors.hpp"

namespace hyperpack {

namespace {

using nlohmann::json;

int require_int(const json& j, const char* what) {
  if (!j.is_number_integer()) {
    throw ParseError(std::string(what) + " must be an integer");
  }
  return j.get<int>();
}

EdgeRecord parse_edge_entry(const json& entry, int index, std::vector<int>& explicit_ids) {
  EdgeRecord e;
  if (entry.is_array()) {
    if (entry.size() != 2) {
      throw ParseError("edge " + std::to_string(index) + " must be a [v, w] pair");
    }
    e.v = require_int(entry[0], "edge endpoint");
    e.w = require_int(entry[1], "edge endpoint");
  } else if (entry.is_object()) {
    if (!entry.contains("id") || !entry.contains("endpoints")) {
      throw ParseError("edge object " + std::to_string(index) +
                       " needs 'id' and 'endpoints'");
    }
    explicit_ids.push_back(require_int(entry["id"], "edge id"));
    const json& ep = entry["endpoints"];
    if (!ep.is_array() || ep.size() != 2) {
      throw ParseError("edge " + std::to_string(index) + " endpoints must be [v, w]");
    }
    e.v = require_int(ep[0], "edge endpoint");
    e.w = require_int(ep[1], "edge endpoint");
  } else {
    throw ParseError("edge " + std::to_string(index) + " must be a pair or an object");
  }
  return e;
}

}  // namespace

Triangulation parse_triangulation(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string("invalid JSON: ") + err.what());
  }
  if (!doc.is_object()) {
    throw ParseError("triangulation document must be a JSON object");
  }
  for (const char* key : {"version", "vertex_count", "edges", "tets"}) {
    if (!doc.contains(key)) {
      throw ParseError(std::string("missing field '") + key + "'");
    }
  }
  if (require_int(doc["version"], "version") != 1) {
    throw ParseError("unsupported version " + doc["version"].dump());
  }

  Triangulation t;
  t.vertex_count = require_int(doc["vertex_count"], "vertex_count");
  if (doc.contains("allow_self_gluing")) {
    if (!doc["allow_self_gluing"].is_boolean()) {
      throw ParseError("allow_self_gluing must be a boolean");
    }
    t.allow_self_gluing = doc["allow_self_gluing"].get<bool>();
  }

  if (!doc["edges"].is_array()) {
    throw ParseError("edges must be an array");
  }
  std::vector<int> explicit_ids;
  int index = 0;
  for (const json& entry : doc["edges"]) {
    t.edges.push_back(parse_edge_entry(entry, index, explicit_ids));
    ++index;
  }
  if (!explicit_ids.empty()) {
    // Explicit ids must be a permutation of 0..E-1; reorder records by id.
    if (explicit_ids.size() != t.edges.size()) {
      throw ParseError("either all or no edge entries may carry explicit ids");
    }
    std::vector<EdgeRecord> by_id(t.edges.size());
    std::vector<bool> seen(t.edges.size(), false);
    for (std::size_t i = 0; i < explicit_ids.size(); ++i) {
      const int id = explicit_ids[i];
      if (id < 0 || id >= static_cast<int>(t.edges.size()) || seen[id]) {
        throw ValidationError("duplicate or out-of-range edge id " + std::to_string(id));
      }
      seen[id] = true;
      by_id[id] = t.edges[i];
    }
    t.edges = std::move(by_id);
  }

  if (!doc["tets"].is_array()) {
    throw ParseError("tets must be an array");
  }
  for (const json& entry : doc["tets"]) {
    if (!entry.is_object() || !entry.contains("vertices") || !entry.contains("edge_refs")) {
      throw ParseError("each tet needs 'vertices' and 'edge_refs'");
    }
    const json& vs = entry["vertices"];
    const json& es = entry["edge_refs"];
    if (!vs.is_array() || vs.size() != 4) {
      throw ParseError("tet vertices must be an array of 4 ints");
    }
    if (!es.is_array() || es.size() != 6) {
      throw ParseError("tet edge_refs must be an array of 6 ints");
    }
    TetRecord rec;
    for (int p = 0; p < 4; ++p) rec.vertices[p] = require_int(vs[p], "tet vertex");
    for (int s = 0; s < 6; ++s) rec.edge_refs[s] = require_int(es[s], "tet edge ref");
    t.tets.push_back(rec);
  }

  if (doc.contains("vertex_link_euler")) {
    const json& vle = doc["vertex_link_euler"];
    if (!vle.is_array()) {
      throw ParseError("vertex_link_euler must be an array of integers");
    }
    std::vector<int> chi;
    for (const json& x : vle) chi.push_back(require_int(x, "vertex_link_euler entry"));
    t.vertex_link_euler = std::move(chi);
  }

  validate_triangulation(t);
  return t;
}

std::string serialize_triangulation(const Triangulation& t) {
  json doc;
  doc["version"] = 1;
  doc["vertex_count"] = t.vertex_count;
  json edges = json::array();
  for (const EdgeRecord& e : t.edges) edges.push_back({e.v, e.w});
  doc["edges"] = edges;
  json tets = json::array();
  for (const TetRecord& rec : t.tets) {
    json jt;
    jt["vertices"] = rec.vertices;
    jt["edge_refs"] = rec.edge_refs;
    tets.push_back(jt);
  }
  doc["tets"] = tets;
  if (t.allow_self_gluing) doc["allow_self_gluing"] = true;
  if (t.vertex_link_euler) doc["vertex_link_euler"] = *t.vertex_link_euler;
  return doc.dump(2) + "\n";
}

ValidationReport validate_triangulation(const Triangulation& t) {
  std::vector<std::string> problems;
  auto complain = [&problems](std::string msg) { problems.push_back(std::move(msg)); };

  if (t.vertex_count < 1) {
    complain("vertex_count must be >= 1");
  }

  ValidationReport report;
  report.edge_star_sizes.assign(t.edges.size(), 0);
  report.vertex_degrees.assign(std::max(t.vertex_count, 0), 0);

  for (std::size_t eid = 0; eid < t.edges.size(); ++eid) {
    const EdgeRecord& e = t.edges[eid];
    if (e.v < 0 || e.v >= t.vertex_count || e.w < 0 || e.w >= t.vertex_count) {
      complain("edge " + std::to_string(eid) + " has out-of-range endpoints");
      continue;
    }
    if (e.v == e.w && !t.allow_self_gluing) {
      complain("edge " + std::to_string(eid) +
               " has coincident endpoints but self-gluing is not enabled");
    }
    report.vertex_degrees[e.v] += 1;
    report.vertex_degrees[e.w] += 1;
  }

  for (std::size_t tid = 0; tid < t.tets.size(); ++tid) {
    const TetRecord& rec = t.tets[tid];
    bool vertices_ok = true;
    for (int v : rec.vertices) {
      if (v < 0 || v >= t.vertex_count) {
        complain("tet " + std::to_string(tid) + " has out-of-range vertex " +
                 std::to_string(v));
        vertices_ok = false;
      }
    }
    {
      std::set<int> distinct(rec.vertices.begin(), rec.vertices.end());
      if (distinct.size() != 4 && !t.allow_self_gluing) {
        complain("tet " + std::to_string(tid) +
                 " repeats a vertex but self-gluing is not enabled");
      }
    }
    static constexpr std::pair<int, int> kSlotPairs[6] = {
        {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (int s = 0; s < 6; ++s) {
      const int eid = rec.edge_refs[s];
      if (eid < 0 || eid >= static_cast<int>(t.edges.size())) {
        complain("tet " + std::to_string(tid) + " slot " + std::to_string(s) +
                 " references unknown edge " + std::to_string(eid));
        continue;
      }
      report.edge_star_sizes[eid] += 1;
      if (!vertices_ok) continue;
      const auto [a, b] = kSlotPairs[s];
      const int va = rec.vertices[a];
      const int vb = rec.vertices[b];
      const EdgeRecord& e = t.edges[eid];
      const bool match = (e.v == va && e.w == vb) || (e.v == vb && e.w == va);
      if (!match) {
        complain("tet " + std::to_string(tid) + " slot " + std::to_string(s) +
                 " expects endpoints {" + std::to_string(va) + ", " + std::to_string(vb) +
                 "} but edge " + std::to_string(eid) + " joins {" + std::to_string(e.v) +
                 ", " + std::to_string(e.w) + "}");
      }
    }
  }

  for (std::size_t eid = 0; eid < t.edges.size(); ++eid) {
    if (report.edge_star_sizes[eid] == 0) {
      complain("edge " + std::to_string(eid) + " is referenced by no tet slot");
    }
  }

  if (t.vertex_link_euler &&
      static_cast<int>(t.vertex_link_euler->size()) != t.vertex_count) {
    complain("vertex_link_euler length does not match vertex_count");
  }

  if (!problems.empty()) {
    std::ostringstream msg;
    msg << problems.size() << " validation problem(s):";
    for (const std::string& p : problems) msg << "\n  - " << p;
    throw ValidationError(msg.str());
  }
  return report;
}

std::vector<std::pair<int, int>> edge_star(const Triangulation& t, int edge_id) {
  if (edge_id < 0 || edge_id >= static_cast<int>(t.edges.size())) {
    throw UnknownId("no edge with id " + std::to_string(edge_id));
  }
  std::vector<std::pair<int, int>> star;
  for (std::size_t tid = 0; tid < t.tets.size(); ++tid) {
    for (int s = 0; s < 6; ++s) {
      if (t.tets[tid].edge_refs[s] == edge_id) {
        star.emplace_back(static_cast<int>(tid), s);
      }
    }
  }
  return star;
}

}  // namespace hyperpack
