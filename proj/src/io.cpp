#include "mlncraft/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "mlncraft/errors.hpp"

namespace mlncraft {

using json = nlohmann::json;

namespace {

std::string dump_canonical(const json& j) {
    return j.dump(2) + "\n";
}

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& what) {
    throw MlnError(ErrorCode::ParseError,
                   origin + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) tokens.push_back(tok);
    return tokens;
}

json require_object(const std::string& text, const char* expected_type) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw MlnError(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("schema", "") != kSchemaVersion ||
        j.value("type", "") != expected_type) {
        throw MlnError(ErrorCode::ParseError,
                       std::string("expected a ") + kSchemaVersion + " '" + expected_type +
                           "' document");
    }
    return j;
}

// Wraps nlohmann lookup errors (missing keys, wrong types) as ParseError.
template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const json::exception& e) {
        throw MlnError(ErrorCode::ParseError, std::string("malformed document: ") + e.what());
    }
}

std::string vertex_token(const Layer& layer, VertexId v) {
    if (!layer.labels.empty()) return layer.labels[static_cast<size_t>(v)];
    return std::to_string(v);
}

// Shortest round-trip double rendering, shared with the JSON form so the two
// outputs of one value can never disagree.
std::string fmt_double(double x) {
    return json(x).dump();
}

const char* status_name(ElementStatus s) {
    return s == ElementStatus::Total ? "total" : "partial";
}

const char* failure_name(FailureKind f) {
    switch (f) {
    case FailureKind::None: return "none";
    case FailureKind::NoMatch: return "no_match";
    case FailureKind::Inconsistent: return "inconsistent";
    }
    return "none";
}

ElementStatus parse_status(const std::string& s) {
    if (s == "total") return ElementStatus::Total;
    if (s == "partial") return ElementStatus::Partial;
    throw MlnError(ErrorCode::ParseError, "unknown element status '" + s + "'");
}

FailureKind parse_failure(const std::string& s) {
    if (s == "none") return FailureKind::None;
    if (s == "no_match") return FailureKind::NoMatch;
    if (s == "inconsistent") return FailureKind::Inconsistent;
    throw MlnError(ErrorCode::ParseError, "unknown failure kind '" + s + "'");
}

const char* hub_rule_name(HubRule rule) {
    return rule == HubRule::AboveMean ? "above_mean" : "top_k";
}

HubRule parse_hub_rule(const std::string& s) {
    if (s == "above_mean") return HubRule::AboveMean;
    if (s == "top_k") return HubRule::TopK;
    throw MlnError(ErrorCode::ParseError, "unknown hub rule '" + s + "'");
}

} // namespace

// ---- MLN text format --------------------------------------------------------

MultilayerNetwork parse_mln(std::istream& in, const std::string& origin) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        lines.push_back(line);
    }

    enum class Section { None, Layers, Intra, Inter };

    struct LayerDecl {
        std::string name;
        std::string entity;
        int line = 0;
    };
    std::vector<LayerDecl> decls;
    std::map<std::string, int> layer_index;

    // Pass 1: layer declarations only, so edge sections may precede [layers].
    Section section = Section::None;
    for (size_t i = 0; i < lines.size(); ++i) {
        const int lineno = static_cast<int>(i) + 1;
        std::vector<std::string> tokens = split_ws(lines[i]);
        if (tokens.empty()) continue;
        if (tokens[0].front() == '[') {
            const std::string& header = tokens[0];
            if (tokens.size() != 1) parse_fail(origin, lineno, "unexpected text after section header");
            if (header == "[layers]") section = Section::Layers;
            else if (header == "[intra]") section = Section::Intra;
            else if (header == "[inter]") section = Section::Inter;
            else parse_fail(origin, lineno, "unknown section '" + header + "'");
            continue;
        }
        if (section == Section::None)
            parse_fail(origin, lineno, "content before any section header");
        if (section != Section::Layers) continue;

        LayerDecl decl;
        decl.name = tokens[0];
        decl.line = lineno;
        if (tokens.size() == 2) {
            if (tokens[1].rfind("entity=", 0) != 0)
                parse_fail(origin, lineno, "expected 'entity=<type>', got '" + tokens[1] + "'");
            decl.entity = tokens[1].substr(7);
            if (decl.entity.empty())
                parse_fail(origin, lineno, "empty entity type");
        } else if (tokens.size() > 2) {
            parse_fail(origin, lineno, "layer line takes a name and an optional entity=<type>");
        }
        if (!layer_index.emplace(decl.name, static_cast<int>(decls.size())).second) {
            throw MlnError(ErrorCode::DuplicateLayerName,
                           origin + ":" + std::to_string(lineno) + ": layer '" + decl.name +
                               "' declared twice");
        }
        decls.push_back(std::move(decl));
    }
    if (decls.empty())
        throw MlnError(ErrorCode::ParseError, origin + ": no layers declared");

    // Pass 2: map vertex tokens to dense per-layer ids in order of first
    // appearance, collecting edges for later insertion.
    std::vector<std::map<std::string, VertexId>> token_ids(decls.size());
    std::vector<std::vector<std::string>> tokens_in_order(decls.size());
    struct IntraEdge { int layer; VertexId u, v; int line; };
    struct InterEdge { int layer_a; VertexId u; int layer_b; VertexId v; int line; };
    std::vector<IntraEdge> intra;
    std::vector<InterEdge> inter;

    auto resolve_layer = [&](const std::string& name, int lineno) {
        auto it = layer_index.find(name);
        if (it == layer_index.end()) {
            throw MlnError(ErrorCode::UnknownLayer,
                           origin + ":" + std::to_string(lineno) + ": unknown layer '" + name +
                               "'");
        }
        return it->second;
    };
    auto vertex_id = [&](int layer, const std::string& token) {
        auto [it, fresh] = token_ids[static_cast<size_t>(layer)].emplace(
            token, static_cast<VertexId>(tokens_in_order[static_cast<size_t>(layer)].size()));
        if (fresh) tokens_in_order[static_cast<size_t>(layer)].push_back(token);
        return it->second;
    };

    section = Section::None;
    for (size_t i = 0; i < lines.size(); ++i) {
        const int lineno = static_cast<int>(i) + 1;
        std::vector<std::string> tokens = split_ws(lines[i]);
        if (tokens.empty()) continue;
        if (tokens[0].front() == '[') {
            if (tokens[0] == "[layers]") section = Section::Layers;
            else if (tokens[0] == "[intra]") section = Section::Intra;
            else section = Section::Inter;
            continue;
        }
        if (section == Section::Intra) {
            if (tokens.size() != 3)
                parse_fail(origin, lineno, "intra line is '<layer> <u> <v>'");
            int layer = resolve_layer(tokens[0], lineno);
            IntraEdge e;
            e.layer = layer;
            e.u = vertex_id(layer, tokens[1]);
            e.v = vertex_id(layer, tokens[2]);
            e.line = lineno;
            intra.push_back(e);
        } else if (section == Section::Inter) {
            if (tokens.size() != 4)
                parse_fail(origin, lineno, "inter line is '<layer> <u> <layer> <v>'");
            int la = resolve_layer(tokens[0], lineno);
            int lb = resolve_layer(tokens[2], lineno);
            if (la == lb)
                parse_fail(origin, lineno, "inter edge endpoints must be in different layers");
            InterEdge e;
            e.layer_a = la;
            e.u = vertex_id(la, tokens[1]);
            e.layer_b = lb;
            e.v = vertex_id(lb, tokens[3]);
            e.line = lineno;
            inter.push_back(e);
        }
    }

    std::vector<Layer> layers(decls.size());
    for (size_t i = 0; i < decls.size(); ++i) {
        layers[i].id = static_cast<LayerId>(i);
        layers[i].name = decls[i].name;
        layers[i].entity_type = decls[i].entity;
        layers[i].graph = Graph(static_cast<int>(tokens_in_order[i].size()));
        layers[i].labels = tokens_in_order[i];
    }
    for (const IntraEdge& e : intra) {
        try {
            layers[static_cast<size_t>(e.layer)].graph.add_edge(e.u, e.v);
        } catch (const MlnError& err) {
            throw MlnError(err.code(), origin + ":" + std::to_string(e.line) + ": " +
                                           err.what());
        }
    }

    std::map<std::pair<int, int>, InterLayerEdgeSet> coupling_map;
    for (const InterEdge& e : inter) {
        int la = e.layer_a, lb = e.layer_b;
        VertexId u = e.u, v = e.v;
        if (lb < la) {
            std::swap(la, lb);
            std::swap(u, v);
        }
        auto& set = coupling_map[{la, lb}];
        set.layer_a = la;
        set.layer_b = lb;
        set.edges.emplace_back(u, v);
    }
    std::vector<InterLayerEdgeSet> couplings;
    couplings.reserve(coupling_map.size());
    for (auto& [key, set] : coupling_map) couplings.push_back(std::move(set));

    return build_network(std::move(layers), std::move(couplings));
}

MultilayerNetwork load_mln(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MlnError(ErrorCode::IoError, "cannot open '" + path + "' for reading");
    return parse_mln(in, path);
}

std::string format_mln(const MultilayerNetwork& net) {
    std::ostringstream out;
    out << "[layers]\n";
    for (const Layer& layer : net.layers) {
        out << layer.name;
        if (!layer.entity_type.empty()) out << " entity=" << layer.entity_type;
        out << "\n";
    }
    out << "\n[intra]\n";
    for (const Layer& layer : net.layers) {
        for (auto [u, v] : layer.graph.edges()) {
            out << layer.name << ' ' << vertex_token(layer, u) << ' ' << vertex_token(layer, v)
                << "\n";
        }
    }
    out << "\n[inter]\n";
    for (const InterLayerEdgeSet& coupling : net.couplings) {
        const Layer& a = net.layer(coupling.layer_a);
        const Layer& b = net.layer(coupling.layer_b);
        for (auto [u, v] : coupling.edges) {
            out << a.name << ' ' << vertex_token(a, u) << ' ' << b.name << ' '
                << vertex_token(b, v) << "\n";
        }
    }
    return out.str();
}

void save_mln(const MultilayerNetwork& net, const std::string& path) {
    write_text_file(path, format_mln(net));
}

// ---- canonical JSON ---------------------------------------------------------

std::string community_set_to_json(const MultilayerNetwork& net, const CommunitySet& cset) {
    json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "community_set";
    j["layer"] = net.layer(cset.layer).name;
    j["assignment"] = cset.assignment;
    json comms = json::array();
    for (const Community& c : cset.communities) {
        json jc;
        jc["id"] = c.id;
        jc["members"] = c.members;
        jc["internal_edges"] = c.internal_edges;
        jc["density"] = c.density;
        comms.push_back(std::move(jc));
    }
    j["communities"] = std::move(comms);
    return dump_canonical(j);
}

CommunitySet community_set_from_json(const MultilayerNetwork& net, const std::string& text) {
    json j = require_object(text, "community_set");
    return guarded([&] {
        LayerId layer = net.layer_id_by_name(j.at("layer").get<std::string>());
        std::vector<CommunityId> assignment =
            j.at("assignment").get<std::vector<CommunityId>>();
        return load_communities(net.layer(layer), assignment);
    });
}

std::string hub_set_to_json(const MultilayerNetwork& net, const HubSet& hubs) {
    json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "hub_set";
    j["layer"] = net.layer(hubs.layer).name;
    j["metric"] = centrality_metric_name(hubs.metric);
    j["rule"] = hub_rule_name(hubs.rule);
    j["k"] = hubs.k;
    j["hubs"] = hubs.hubs;
    return dump_canonical(j);
}

HubSet hub_set_from_json(const MultilayerNetwork& net, const std::string& text) {
    json j = require_object(text, "hub_set");
    return guarded([&] {
        HubSet hubs;
        hubs.layer = net.layer_id_by_name(j.at("layer").get<std::string>());
        hubs.metric = parse_centrality_metric(j.at("metric").get<std::string>());
        hubs.rule = parse_hub_rule(j.at("rule").get<std::string>());
        hubs.k = j.at("k").get<int>();
        hubs.hubs = j.at("hubs").get<std::vector<VertexId>>();
        return hubs;
    });
}

std::string k_community_result_to_json(const MultilayerNetwork& net,
                                       const KCommunityResult& result) {
    json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "k_community_result";
    json ordering;
    json layer_names = json::array();
    for (LayerId id : result.ordering.layers) layer_names.push_back(net.layer(id).name);
    ordering["layers"] = std::move(layer_names);
    ordering["cyclic"] = result.ordering.cyclic;
    j["ordering"] = std::move(ordering);
    j["metric"] = weight_metric_name(result.metric);
    j["per_step_match_counts"] = result.per_step_match_counts;

    json elements = json::array();
    for (const KCommunityElement& el : result.elements) {
        json je;
        json tuple = json::array();
        for (auto [layer, comm] : el.tuple) {
            json entry;
            entry["layer"] = net.layer(layer).name;
            entry["community"] = comm;
            tuple.push_back(std::move(entry));
        }
        je["tuple"] = std::move(tuple);
        json links = json::array();
        for (const ElementLink& link : el.links) {
            json jl;
            jl["left_layer"] = net.layer(link.left_layer).name;
            jl["left_community"] = link.left_community;
            jl["right_layer"] = net.layer(link.right_layer).name;
            jl["right_community"] = link.right_community;
            jl["inter_edge_count"] = link.inter_edge_count;
            jl["weight"] = link.weight;
            links.push_back(std::move(jl));
        }
        je["links"] = std::move(links);
        je["status"] = status_name(el.status);
        je["failure"] = failure_name(el.failure);
        je["truncation_point"] = el.truncation_point;
        je["strength"] = el.strength();
        elements.push_back(std::move(je));
    }
    j["elements"] = std::move(elements);
    return dump_canonical(j);
}

KCommunityResult k_community_result_from_json(const MultilayerNetwork& net,
                                              const std::string& text) {
    json j = require_object(text, "k_community_result");
    return guarded([&] {
        KCommunityResult result;
        const json& ordering = j.at("ordering");
        for (const json& name : ordering.at("layers"))
            result.ordering.layers.push_back(net.layer_id_by_name(name.get<std::string>()));
        result.ordering.cyclic = ordering.at("cyclic").get<bool>();
        result.metric = parse_weight_metric(j.at("metric").get<std::string>());
        result.per_step_match_counts =
            j.at("per_step_match_counts").get<std::vector<int>>();
        for (const json& je : j.at("elements")) {
            KCommunityElement el;
            for (const json& entry : je.at("tuple")) {
                el.tuple.emplace_back(
                    net.layer_id_by_name(entry.at("layer").get<std::string>()),
                    entry.at("community").get<CommunityId>());
            }
            for (const json& jl : je.at("links")) {
                ElementLink link;
                link.left_layer = net.layer_id_by_name(jl.at("left_layer").get<std::string>());
                link.left_community = jl.at("left_community").get<CommunityId>();
                link.right_layer =
                    net.layer_id_by_name(jl.at("right_layer").get<std::string>());
                link.right_community = jl.at("right_community").get<CommunityId>();
                link.inter_edge_count = jl.at("inter_edge_count").get<std::int64_t>();
                link.weight = jl.at("weight").get<double>();
                el.links.push_back(link);
            }
            el.status = parse_status(je.at("status").get<std::string>());
            el.failure = parse_failure(je.at("failure").get<std::string>());
            el.truncation_point = je.at("truncation_point").get<int>();
            result.elements.push_back(std::move(el));
        }
        return result;
    });
}

std::string bench_report_to_json(const BenchReport& report) {
    json j;
    j["schema"] = kSchemaVersion;
    j["type"] = "bench_report";
    j["ordering_layers"] = report.ordering_layers;
    j["cyclic"] = report.cyclic;
    j["metric"] = report.metric;
    j["repetitions"] = report.repetitions;
    j["layer_seconds"] = report.layer_seconds;
    j["step_seconds"] = report.step_seconds;
    j["composition_total_seconds"] = report.composition_total_seconds;
    j["baseline_kind"] = report.baseline_kind;
    j["baseline_seconds"] = report.baseline_seconds;
    j["max_layer_seconds"] = report.max_layer_seconds;
    j["composition_to_max_layer_ratio"] = report.composition_to_max_layer_ratio;
    return dump_canonical(j);
}

BenchReport bench_report_from_json(const std::string& text) {
    json j = require_object(text, "bench_report");
    return guarded([&] {
        BenchReport report;
        report.ordering_layers = j.at("ordering_layers").get<std::vector<std::string>>();
        report.cyclic = j.at("cyclic").get<bool>();
        report.metric = j.at("metric").get<std::string>();
        report.repetitions = j.at("repetitions").get<int>();
        report.layer_seconds = j.at("layer_seconds").get<std::map<std::string, double>>();
        report.step_seconds = j.at("step_seconds").get<std::vector<double>>();
        report.composition_total_seconds = j.at("composition_total_seconds").get<double>();
        report.baseline_kind = j.at("baseline_kind").get<std::string>();
        report.baseline_seconds = j.at("baseline_seconds").get<double>();
        report.max_layer_seconds = j.at("max_layer_seconds").get<double>();
        report.composition_to_max_layer_ratio =
            j.at("composition_to_max_layer_ratio").get<double>();
        return report;
    });
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MlnError(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw MlnError(ErrorCode::IoError, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MlnError(ErrorCode::IoError, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw MlnError(ErrorCode::IoError, "failed reading '" + path + "'");
    return buf.str();
}

// ---- DOT export -------------------------------------------------------------

std::string cbg_to_dot(const MultilayerNetwork& net, const CommunityBipartiteGraph& cbg) {
    const std::string& left = net.layer(cbg.left_layer).name;
    const std::string& right = net.layer(cbg.right_layer).name;
    std::ostringstream out;
    out << "graph cbg {\n  rankdir=LR;\n  node [shape=box];\n";
    out << "  subgraph cluster_left {\n    label=\"" << left << "\";\n";
    for (CommunityId c : cbg.left_communities)
        out << "    \"" << left << "." << c << "\";\n";
    out << "  }\n";
    out << "  subgraph cluster_right {\n    label=\"" << right << "\";\n";
    for (CommunityId c : cbg.right_communities)
        out << "    \"" << right << "." << c << "\";\n";
    out << "  }\n";
    for (const MetaEdge& e : cbg.edges) {
        out << "  \"" << left << "." << e.left << "\" -- \"" << right << "." << e.right
            << "\" [label=\"";
        if (cbg.metric_applied) out << fmt_double(e.weight);
        else out << e.inter_edge_count;
        out << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string elements_to_dot(const MultilayerNetwork& net, const KCommunityResult& result) {
    std::ostringstream out;
    out << "graph elements {\n  rankdir=LR;\n  node [shape=box];\n";
    for (size_t i = 0; i < result.elements.size(); ++i) {
        const KCommunityElement& el = result.elements[i];
        out << "  subgraph cluster_e" << i << " {\n    label=\"" << status_name(el.status);
        if (el.failure != FailureKind::None) out << " (" << failure_name(el.failure) << ")";
        out << "\";\n";
        for (auto [layer, comm] : el.tuple) {
            out << "    \"e" << i << "." << net.layer(layer).name << "." << comm
                << "\" [label=\"" << net.layer(layer).name << ":" << comm << "\"];\n";
        }
        out << "  }\n";
        for (const ElementLink& link : el.links) {
            out << "  \"e" << i << "." << net.layer(link.left_layer).name << "."
                << link.left_community << "\" -- \"e" << i << "."
                << net.layer(link.right_layer).name << "." << link.right_community
                << "\" [label=\"" << fmt_double(link.weight) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace mlncraft
