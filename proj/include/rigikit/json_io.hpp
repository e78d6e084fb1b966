#pragma once

// JSON schema shared by graph input, analysis reports and fuzz dumps.
//
// Graph document (schema 1):
//   {
//     "schema": 1,
//     "dimension": 3,                       // optional if given on the command line
//     "model": "rod-bar",                   // body-bar | rod-bar | body-rod-bar | body-hinge | direction
//     "vertices": [{"id": "a", "kind": "rod"}, ...],
//     "edges": [["a", "b"], ...],           // edge k gets id "e<k>"
//     "joints": {"a": [0, 1], ...},         // optional, direction model only
//     "seed": 7                             // optional default for --seed
//   }
// "kind" may be omitted: it defaults to rod for rod-bar and body otherwise.

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rigikit/analysis.hpp"
#include "rigikit/error.hpp"
#include "rigikit/graph.hpp"

namespace rigikit {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct GraphDocument {
    std::optional<int> dimension;
    Model model = Model::BodyRodBar;
    std::vector<Vertex> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    std::optional<std::map<std::string, std::vector<std::int64_t>>> joints;
    std::optional<std::uint64_t> seed;

    bool operator==(const GraphDocument&) const = default;
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
    throw InputError("schema error at " + where + ": " + what);
}

inline const Json& require_field(const Json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(where, std::string("missing \"") + key + "\"");
    return *it;
}

inline std::string require_string(const Json& j, const std::string& where) {
    if (!j.is_string()) schema_error(where, "expected a string");
    return j.get<std::string>();
}

inline std::int64_t require_integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) schema_error(where, "expected an integer");
    return j.get<std::int64_t>();
}

inline std::uint64_t require_unsigned(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned()) schema_error(where, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

inline bool require_bool(const Json& j, const std::string& where) {
    if (!j.is_boolean()) schema_error(where, "expected a boolean");
    return j.get<bool>();
}

inline VertexKind default_kind(Model m) { return m == Model::RodBar ? VertexKind::Rod : VertexKind::Body; }

inline void check_schema(const Json& j, const std::string& where) {
    if (!j.is_object()) schema_error(where, "expected an object");
    if (require_integer(require_field(j, "schema", where), where + ".schema") != kSchemaVersion)
        schema_error(where + ".schema", "unsupported version");
}

}  // namespace detail

inline GraphDocument parse_document(const Json& j) {
    using namespace detail;
    check_schema(j, "$");
    static const char* known[] = {"schema", "dimension", "model", "vertices", "edges", "joints", "seed"};
    for (const auto& [key, _] : j.items())
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
            schema_error("$." + key, "unknown field");
    GraphDocument doc;
    if (j.contains("dimension")) doc.dimension = static_cast<int>(require_integer(j["dimension"], "$.dimension"));
    try {
        doc.model = parse_model(require_string(require_field(j, "model", "$"), "$.model"));
    } catch (const InputError& e) {
        schema_error("$.model", e.what());
    }
    const auto& vs = require_field(j, "vertices", "$");
    if (!vs.is_array()) schema_error("$.vertices", "expected an array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string where = "$.vertices[" + std::to_string(i) + "]";
        const auto& v = vs[i];
        if (!v.is_object()) schema_error(where, "expected an object");
        Vertex vert{require_string(require_field(v, "id", where), where + ".id"), default_kind(doc.model)};
        if (v.contains("kind")) {
            try {
                vert.kind = parse_vertex_kind(require_string(v["kind"], where + ".kind"));
            } catch (const InputError& e) {
                schema_error(where + ".kind", e.what());
            }
        }
        if (vert.kind == VertexKind::Hinge && doc.model != Model::BodyHinge)
            schema_error(where + ".kind", "hinge vertices need the body-hinge model");
        doc.vertices.push_back(std::move(vert));
    }
    const auto& es = require_field(j, "edges", "$");
    if (!es.is_array()) schema_error("$.edges", "expected an array");
    for (std::size_t i = 0; i < es.size(); ++i) {
        const std::string where = "$.edges[" + std::to_string(i) + "]";
        if (!es[i].is_array() || es[i].size() != 2) schema_error(where, "expected [u, v]");
        doc.edges.emplace_back(require_string(es[i][0], where + "[0]"), require_string(es[i][1], where + "[1]"));
    }
    if (j.contains("joints")) {
        if (doc.model != Model::Direction) schema_error("$.joints", "joints are only used by the direction model");
        const auto& js = j["joints"];
        if (!js.is_object()) schema_error("$.joints", "expected an object");
        std::map<std::string, std::vector<std::int64_t>> joints;
        for (const auto& [id, coords] : js.items()) {
            const std::string where = "$.joints." + id;
            if (!coords.is_array()) schema_error(where, "expected an array of integers");
            std::vector<std::int64_t> c;
            for (std::size_t k = 0; k < coords.size(); ++k) c.push_back(require_integer(coords[k], where));
            joints.emplace(id, std::move(c));
        }
        doc.joints = std::move(joints);
    }
    if (j.contains("seed")) doc.seed = require_unsigned(j["seed"], "$.seed");
    return doc;
}

inline Json to_json(const GraphDocument& doc) {
    Json j;
    j["schema"] = kSchemaVersion;
    if (doc.dimension) j["dimension"] = *doc.dimension;
    j["model"] = std::string(to_string(doc.model));
    j["vertices"] = Json::array();
    for (const auto& v : doc.vertices) j["vertices"].push_back({{"id", v.id}, {"kind", std::string(to_string(v.kind))}});
    j["edges"] = Json::array();
    for (const auto& [u, v] : doc.edges) j["edges"].push_back(Json::array({u, v}));
    if (doc.joints) {
        Json js = Json::object();
        for (const auto& [id, c] : *doc.joints) js[id] = c;
        j["joints"] = std::move(js);
    }
    if (doc.seed) j["seed"] = *doc.seed;
    return j;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline GraphDocument load_document(const std::string& path) { return parse_document(read_json_file(path)); }

/// The multigraph of a document; edge k is named "e<k>".
inline Multigraph to_graph(const GraphDocument& doc) {
    GraphSpec spec;
    spec.vertices = doc.vertices;
    for (const auto& [u, v] : doc.edges) spec.edges.push_back({u, v, ""});
    return build_graph(spec);
}

/// Document describing a graph under a model (edge ids are not preserved).
inline GraphDocument document_from_graph(const Multigraph& g, Model model, int d) {
    GraphDocument doc;
    doc.dimension = d;
    doc.model = model;
    doc.vertices = g.vertices();
    for (const auto& e : g.edges()) doc.edges.emplace_back(g.vertex(e.u).id, g.vertex(e.v).id);
    return doc;
}

/// Joint positions in vertex order, reduced into the field.
inline JointConfig<PrimeField> joints_of(const GraphDocument& doc, const Multigraph& g, int d, const PrimeField& f) {
    if (!doc.joints) throw InputError("document has no joints");
    JointConfig<PrimeField> p;
    for (const auto& v : g.vertices()) {
        auto it = doc.joints->find(v.id);
        if (it == doc.joints->end()) throw InputError("schema error at $.joints: no joint for vertex '" + v.id + "'");
        if (it->second.size() != static_cast<std::size_t>(d))
            throw InputError("schema error at $.joints." + v.id + ": expected " + std::to_string(d) + " coordinates");
        Vec<PrimeField> x;
        for (auto c : it->second) x.push_back(f.from_int(c));
        p.push_back(std::move(x));
    }
    for (const auto& [id, _] : *doc.joints)
        if (!g.find_vertex(id)) throw InputError("schema error at $.joints." + id + ": unknown vertex");
    return p;
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const Report& r) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "report";
    j["model"] = std::string(to_string(r.model));
    j["dimension"] = r.d;
    j["D"] = r.D;
    j["prime"] = r.prime;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["graph"] = {{"vertices", r.graph.vertices}, {"edges", r.graph.edges}, {"bodies", r.graph.bodies},
                  {"rods", r.graph.rods},         {"hinges", r.graph.hinges}};
    j["combinatorial"] = {{"rank", r.combinatorial_rank},
                          {"target", r.target},
                          {"independent", r.independent},
                          {"certificate",
                           {{"value", r.certificate.value},
                            {"free", r.certificate.free_part},
                            {"parts", r.certificate.parts}}}};
    j["linear"] = {{"seeds", r.trial_seeds},
                   {"ranks", r.linear_ranks},
                   {"max_rank", r.max_linear_rank},
                   {"columns", r.columns},
                   {"kernel_dimension", r.kernel_dimension},
                   {"trivial_dimension", r.trivial_dimension},
                   {"trivial_in_kernel", r.trivial_in_kernel},
                   {"bound_ok", r.bound_ok},
                   {"fixed_configuration", r.fixed_configuration}};
    j["verdict"] = {{"label", r.verdict},
                    {"rigid", r.rigid},
                    {"minimally_rigid", r.minimally_rigid},
                    {"flexible", r.flexible}};
    j["agreement"] = r.agreement;
    j["p_components"] = r.p_components;
    return j;
}

inline Report report_from_json(const Json& j) {
    using namespace detail;
    check_schema(j, "$");
    if (require_string(require_field(j, "type", "$"), "$.type") != "report") schema_error("$.type", "not a report");
    auto get = [](const Json& obj, const char* key, const std::string& where) -> const Json& {
        if (!obj.is_object()) schema_error(where, "expected an object");
        return require_field(obj, key, where);
    };
    auto strings = [](const Json& a, const std::string& where) {
        if (!a.is_array()) schema_error(where, "expected an array");
        std::vector<std::string> out;
        for (const auto& s : a) out.push_back(require_string(s, where));
        return out;
    };
    auto string_lists = [&](const Json& a, const std::string& where) {
        if (!a.is_array()) schema_error(where, "expected an array");
        std::vector<std::vector<std::string>> out;
        for (const auto& s : a) out.push_back(strings(s, where));
        return out;
    };
    Report r;
    r.model = parse_model(require_string(get(j, "model", "$"), "$.model"));
    r.d = static_cast<int>(require_integer(get(j, "dimension", "$"), "$.dimension"));
    r.D = static_cast<int>(require_integer(get(j, "D", "$"), "$.D"));
    r.prime = require_unsigned(get(j, "prime", "$"), "$.prime");
    r.seed = require_unsigned(get(j, "seed", "$"), "$.seed");
    r.trials = static_cast<int>(require_integer(get(j, "trials", "$"), "$.trials"));
    const auto& g = get(j, "graph", "$");
    r.graph.vertices = require_unsigned(get(g, "vertices", "$.graph"), "$.graph.vertices");
    r.graph.edges = require_unsigned(get(g, "edges", "$.graph"), "$.graph.edges");
    r.graph.bodies = require_unsigned(get(g, "bodies", "$.graph"), "$.graph.bodies");
    r.graph.rods = require_unsigned(get(g, "rods", "$.graph"), "$.graph.rods");
    r.graph.hinges = require_unsigned(get(g, "hinges", "$.graph"), "$.graph.hinges");
    const auto& c = get(j, "combinatorial", "$");
    r.combinatorial_rank = require_integer(get(c, "rank", "$.combinatorial"), "$.combinatorial.rank");
    r.target = require_integer(get(c, "target", "$.combinatorial"), "$.combinatorial.target");
    r.independent = require_bool(get(c, "independent", "$.combinatorial"), "$.combinatorial.independent");
    const auto& cert = get(c, "certificate", "$.combinatorial");
    r.certificate.value = require_integer(get(cert, "value", "$.certificate"), "$.certificate.value");
    r.certificate.free_part = strings(get(cert, "free", "$.certificate"), "$.certificate.free");
    r.certificate.parts = string_lists(get(cert, "parts", "$.certificate"), "$.certificate.parts");
    const auto& l = get(j, "linear", "$");
    for (const auto& s : get(l, "seeds", "$.linear")) r.trial_seeds.push_back(require_unsigned(s, "$.linear.seeds"));
    for (const auto& s : get(l, "ranks", "$.linear")) r.linear_ranks.push_back(require_integer(s, "$.linear.ranks"));
    r.max_linear_rank = require_integer(get(l, "max_rank", "$.linear"), "$.linear.max_rank");
    r.columns = require_integer(get(l, "columns", "$.linear"), "$.linear.columns");
    r.kernel_dimension = require_integer(get(l, "kernel_dimension", "$.linear"), "$.linear.kernel_dimension");
    r.trivial_dimension = require_integer(get(l, "trivial_dimension", "$.linear"), "$.linear.trivial_dimension");
    r.trivial_in_kernel = require_bool(get(l, "trivial_in_kernel", "$.linear"), "$.linear.trivial_in_kernel");
    r.bound_ok = require_bool(get(l, "bound_ok", "$.linear"), "$.linear.bound_ok");
    r.fixed_configuration = require_bool(get(l, "fixed_configuration", "$.linear"), "$.linear.fixed_configuration");
    const auto& v = get(j, "verdict", "$");
    r.verdict = require_string(get(v, "label", "$.verdict"), "$.verdict.label");
    r.rigid = require_bool(get(v, "rigid", "$.verdict"), "$.verdict.rigid");
    r.minimally_rigid = require_bool(get(v, "minimally_rigid", "$.verdict"), "$.verdict.minimally_rigid");
    r.flexible = require_bool(get(v, "flexible", "$.verdict"), "$.verdict.flexible");
    r.agreement = require_bool(get(j, "agreement", "$"), "$.agreement");
    r.p_components = string_lists(get(j, "p_components", "$"), "$.p_components");
    return r;
}

// ---------------------------------------------------------------------------
// Fuzz summaries and decompositions

inline Json to_json(const Counterexample& c, Model model, int d) {
    auto doc = document_from_graph(c.graph, model, d);
    doc.seed = c.analysis_seed;
    return {{"index", c.index},
            {"case_seed", c.case_seed},
            {"analysis_seed", c.analysis_seed},
            {"reason", c.reason},
            {"document", to_json(doc)},
            {"report", to_json(c.report)}};
}

inline Json to_json(const FuzzSummary& s) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "fuzz-summary";
    j["model"] = std::string(to_string(s.model));
    j["dimension"] = s.d;
    j["prime"] = s.prime;
    j["seed"] = s.seed;
    j["cases"] = s.cases;
    j["agree"] = s.agree;
    j["summary"] = s.headline();
    j["escalated"] = s.escalated;
    j["bound_violations"] = s.bound_violations;
    j["trivial_violations"] = s.trivial_violations;
    j["oracle"] = {{"cases", s.oracle_cases}, {"subsets", s.oracle_subsets}, {"mismatches", s.oracle_mismatches}};
    j["counterexamples"] = Json::array();
    for (const auto& c : s.counterexamples) j["counterexamples"].push_back(to_json(c, s.model, s.d));
    return j;
}

inline Json components_json(const Multigraph& g, const std::vector<EdgeSet>& comps) {
    Json a = Json::array();
    for (const auto& c : comps) {
        Json ids = Json::array();
        for (auto e : c) ids.push_back(g.edge(e).id);
        a.push_back(std::move(ids));
    }
    return a;
}

}  // namespace rigikit
