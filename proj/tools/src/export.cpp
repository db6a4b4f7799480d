#include "horonerve/tools/export.hpp"

#include <sstream>

namespace horonerve::tools {

Json to_json(const Integer& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

Json to_json(const AbelianGroup& g) {
    Json torsion = Json::array();
    for (const auto& t : g.torsion) torsion.push_back(to_json(t));
    return Json{{"rank", g.rank}, {"torsion", torsion}, {"text", g.to_string()}};
}

Json to_json(const IntMatrix& m) {
    Json entries = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0) entries.push_back(Json::array({r, c, to_json(m(r, c))}));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Json to_json(const VertexId& v) {
    return Json{{"kind", v.kind == VertexKind::Cayley ? "cayley" : "horoball"},
                {"coset", v.coset},
                {"point", v.point},
                {"level", v.level}};
}

Json graph_json(const MetricGraph& g) {
    Json vertices = Json::array();
    for (int i = 0; i < g.size(); ++i) {
        Json v{{"id", i}};
        v.update(to_json(g.vertex(i)));
        v["label"] = g.label(i);
        vertices.push_back(std::move(v));
    }
    Json edges = Json::array();
    for (const auto& [u, v] : g.edges()) edges.push_back(Json::array({u, v}));
    return Json{{"vertex_count", g.size()}, {"edge_count", g.edge_count()}, {"vertices", vertices}, {"edges", edges}};
}

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

} // namespace

std::string graph_dot(const MetricGraph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << quoted(name) << " {\n";
    for (int i = 0; i < g.size(); ++i) {
        const auto& v = g.vertex(i);
        out << "  " << i << " [label=" << quoted(g.label(i)) << ", level=" << v.level << ", coset=" << v.coset
            << (v.kind == VertexKind::Cayley ? ", shape=box" : "") << "];\n";
    }
    for (const auto& [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

Json face_list_json(const SimplicialComplex& c) {
    Json faces = Json::array();
    for (int d = 0; d <= c.dimension(); ++d)
        for (const auto& s : c.simplices(d)) faces.push_back(s);
    Json counts = Json::array();
    for (int d = 0; d <= c.dimension(); ++d) counts.push_back(c.count(d));
    return Json{{"dimension", c.dimension()},
                {"dim_cap", c.dim_cap()},
                {"truncated", c.truncated()},
                {"face_counts", counts},
                {"faces", faces}};
}

std::string complex_dot(const SimplicialComplex& c, const std::string& name) {
    std::ostringstream out;
    out << "graph " << quoted(name) << " {\n";
    for (const int v : c.vertices()) out << "  " << v << ";\n";
    if (c.dimension() >= 1)
        for (const auto& e : c.simplices(1)) out << "  " << e[0] << " -- " << e[1] << ";\n";
    out << "}\n";
    return out.str();
}

std::string vertex_map_csv(const std::map<int, int>& map) {
    std::ostringstream out;
    out << "source,target\n";
    for (const auto& [s, t] : map) out << s << ',' << t << '\n';
    return out.str();
}

std::string matrix_csv(const IntMatrix& m) {
    std::ostringstream out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? "," : "") << m(r, c);
        out << '\n';
    }
    return out.str();
}

} // namespace horonerve::tools
