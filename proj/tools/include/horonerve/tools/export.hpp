#pragma once
// Interchange formats: graphs as JSON and DOT, complexes as face lists,
// simplicial maps and matrices as CSV, groups as {rank, torsion}.

#include "horonerve/abelian.hpp"
#include "horonerve/horoball.hpp"
#include "horonerve/metric_graph.hpp"
#include "horonerve/simplicial.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace horonerve::tools {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Machine integers when they fit, decimal strings otherwise.
Json to_json(const Integer& v);
Json to_json(const AbelianGroup& g);
/// Sparse triplets {rows, cols, entries: [[r, c, v], ...]}.
Json to_json(const IntMatrix& m);
Json to_json(const VertexId& v);

/// {vertices: [{id, kind, coset, point, level, label}], edges: [[u, v]]}.
Json graph_json(const MetricGraph& g);
std::string graph_dot(const MetricGraph& g, const std::string& name = "G");

/// {dimension, dim_cap, truncated, faces: [[v0, v1, ...], ...]}, faces by
/// dimension then lexicographically.
Json face_list_json(const SimplicialComplex& c);
/// 1-skeleton of a complex.
std::string complex_dot(const SimplicialComplex& c, const std::string& name = "K");

/// "source,target" per line after a header.
std::string vertex_map_csv(const std::map<int, int>& map);
/// Dense rows of comma-separated entries.
std::string matrix_csv(const IntMatrix& m);

} // namespace horonerve::tools
