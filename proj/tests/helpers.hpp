#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rigikit/field.hpp"
#include "rigikit/graph.hpp"

namespace rigikit::testing {

using VertexList = std::vector<std::pair<std::string, VertexKind>>;
using EdgeList = std::vector<std::pair<std::string, std::string>>;

inline Multigraph make_graph(const VertexList& vs, const EdgeList& es) {
    GraphSpec spec;
    for (const auto& [id, k] : vs) spec.vertices.push_back({id, k});
    for (const auto& [u, v] : es) spec.edges.push_back({u, v, ""});
    return build_graph(spec);
}

/// Two vertices joined by k parallel edges.
inline Multigraph parallel_pair(VertexKind a, VertexKind b, int k) {
    EdgeList es(static_cast<std::size_t>(k), {"a", "b"});
    return make_graph({{"a", a}, {"b", b}}, es);
}

inline Multigraph triangle(VertexKind k) {
    return make_graph({{"a", k}, {"b", k}, {"c", k}}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
}

/// The 3-cube graph Q3 with every vertex of kind k.
inline Multigraph cube_graph(VertexKind k) {
    VertexList vs;
    for (int i = 0; i < 8; ++i) vs.push_back({"c" + std::to_string(i), k});
    EdgeList es;
    for (int i = 0; i < 8; ++i)
        for (int b = 0; b < 3; ++b) {
            const int j = i ^ (1 << b);
            if (i < j) es.push_back({"c" + std::to_string(i), "c" + std::to_string(j)});
        }
    return make_graph(vs, es);
}

}  // namespace rigikit::testing
