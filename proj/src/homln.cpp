#include "mlncraft/homln.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_set>

#include "mlncraft/errors.hpp"

namespace mlncraft {

namespace {

struct Token {
    enum class Kind { Name, And, Or, Not, LParen, RParen, End };
    Kind kind;
    std::string text;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '(') {
            out.push_back({Token::Kind::LParen, "("});
            ++i;
            continue;
        }
        if (c == ')') {
            out.push_back({Token::Kind::RParen, ")"});
            ++i;
            continue;
        }
        size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
               text[j] != '(' && text[j] != ')')
            ++j;
        std::string word = text.substr(i, j - i);
        if (word == "AND") {
            out.push_back({Token::Kind::And, word});
        } else if (word == "OR") {
            out.push_back({Token::Kind::Or, word});
        } else if (word == "NOT") {
            out.push_back({Token::Kind::Not, word});
        } else {
            out.push_back({Token::Kind::Name, word});
        }
        i = j;
    }
    out.push_back({Token::Kind::End, ""});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    LayerExpr parse() {
        LayerExpr e = expr();
        if (peek().kind != Token::Kind::End) {
            throw MlnError(ErrorCode::ParseError,
                           "unexpected '" + peek().text + "' in layer expression");
        }
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_++]; }

    LayerExpr expr() {
        LayerExpr left = term();
        while (peek().kind == Token::Kind::And || peek().kind == Token::Kind::Or) {
            Token op = take();
            LayerExpr right = term();
            LayerExpr combined;
            combined.op = (op.kind == Token::Kind::And) ? LayerExpr::Op::And
                                                        : LayerExpr::Op::Or;
            combined.lhs = std::make_unique<LayerExpr>(std::move(left));
            combined.rhs = std::make_unique<LayerExpr>(std::move(right));
            left = std::move(combined);
        }
        return left;
    }

    LayerExpr term() {
        if (peek().kind == Token::Kind::Not) {
            take();
            LayerExpr inner = term();
            LayerExpr e;
            e.op = LayerExpr::Op::Not;
            e.lhs = std::make_unique<LayerExpr>(std::move(inner));
            return e;
        }
        if (peek().kind == Token::Kind::LParen) {
            take();
            LayerExpr inner = expr();
            if (peek().kind != Token::Kind::RParen) {
                throw MlnError(ErrorCode::ParseError,
                               "missing ')' in layer expression");
            }
            take();
            return inner;
        }
        if (peek().kind == Token::Kind::Name) {
            LayerExpr e;
            e.op = LayerExpr::Op::Layer;
            e.layer_name = take().text;
            return e;
        }
        throw MlnError(ErrorCode::ParseError,
                       peek().kind == Token::Kind::End
                           ? "layer expression ends unexpectedly"
                           : "unexpected '" + peek().text + "' in layer expression");
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

using EdgeKey = std::uint64_t;

EdgeKey edge_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<EdgeKey>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

std::unordered_set<EdgeKey> evaluate(const MultilayerNetwork& net,
                                     const LayerExpr& expr, int n,
                                     int complement_cap) {
    switch (expr.op) {
        case LayerExpr::Op::Layer: {
            const Layer& l = net.layer(net.layer_id_by_name(expr.layer_name));
            std::unordered_set<EdgeKey> out;
            for (const auto& [u, v] : l.graph.edges()) out.insert(edge_key(u, v));
            return out;
        }
        case LayerExpr::Op::And: {
            auto a = evaluate(net, *expr.lhs, n, complement_cap);
            auto b = evaluate(net, *expr.rhs, n, complement_cap);
            std::unordered_set<EdgeKey> out;
            const auto& small = a.size() <= b.size() ? a : b;
            const auto& big = a.size() <= b.size() ? b : a;
            for (EdgeKey k : small) {
                if (big.count(k)) out.insert(k);
            }
            return out;
        }
        case LayerExpr::Op::Or: {
            auto a = evaluate(net, *expr.lhs, n, complement_cap);
            auto b = evaluate(net, *expr.rhs, n, complement_cap);
            for (EdgeKey k : b) a.insert(k);
            return a;
        }
        case LayerExpr::Op::Not: {
            if (n > complement_cap) {
                throw MlnError(ErrorCode::ComplementTooLarge,
                               "complement over " + std::to_string(n) +
                                   " vertices exceeds the cap of " +
                                   std::to_string(complement_cap));
            }
            auto a = evaluate(net, *expr.lhs, n, complement_cap);
            std::unordered_set<EdgeKey> out;
            for (VertexId u = 0; u < n; ++u) {
                for (VertexId v = u + 1; v < n; ++v) {
                    EdgeKey k = edge_key(u, v);
                    if (!a.count(k)) out.insert(k);
                }
            }
            return out;
        }
    }
    return {};
}

} // namespace

std::string LayerExpr::to_string() const {
    switch (op) {
        case Op::Layer:
            return layer_name;
        case Op::Not:
            return "NOT (" + lhs->to_string() + ")";
        case Op::And:
            return "(" + lhs->to_string() + " AND " + rhs->to_string() + ")";
        case Op::Or:
            return "(" + lhs->to_string() + " OR " + rhs->to_string() + ")";
    }
    return "";
}

LayerExpr parse_layer_expr(const std::string& text) {
    return Parser(tokenize(text)).parse();
}

Layer compose_layers(const MultilayerNetwork& net, const LayerExpr& expr,
                     const std::string& derived_name, int complement_cap) {
    if (net.kind != NetworkKind::Homogeneous) {
        throw MlnError(ErrorCode::HeterogeneousNetwork,
                       "layer composition needs a homogeneous network");
    }
    if (net.layers.empty()) {
        throw MlnError(ErrorCode::UnknownLayer, "network has no layers");
    }
    const int n = net.layers.front().graph.num_vertices();
    auto keys = evaluate(net, expr, n, complement_cap);

    Layer out;
    out.name = derived_name;
    out.entity_type = net.layers.front().entity_type;
    out.labels = net.layers.front().labels;
    out.graph = Graph(n);
    std::vector<EdgeKey> sorted(keys.begin(), keys.end());
    std::sort(sorted.begin(), sorted.end());
    for (EdgeKey k : sorted) {
        out.graph.add_edge(static_cast<VertexId>(k >> 32),
                           static_cast<VertexId>(k & 0xffffffffu));
    }
    return out;
}

CommunitySet compose_communities_and(const Layer& layer_a, const CommunitySet& cset_a,
                                     const Layer& layer_b, const CommunitySet& cset_b) {
    const int n = layer_a.graph.num_vertices();
    if (layer_b.graph.num_vertices() != n ||
        static_cast<int>(cset_a.assignment.size()) != n ||
        static_cast<int>(cset_b.assignment.size()) != n) {
        throw MlnError(ErrorCode::VertexUniverseMismatch,
                       "community AND-composition needs one shared vertex universe");
    }
    // H has an edge where both layers agree the pair is intra-community.
    Graph h(n);
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v : layer_a.graph.neighbors(u)) {
            if (u >= v) continue;
            if (cset_a.assignment[static_cast<size_t>(u)] !=
                cset_a.assignment[static_cast<size_t>(v)])
                continue;
            if (!layer_b.graph.has_edge(u, v)) continue;
            if (cset_b.assignment[static_cast<size_t>(u)] !=
                cset_b.assignment[static_cast<size_t>(v)])
                continue;
            h.add_edge(u, v);
        }
    }
    // Connected components of H, singletons included; component ids follow
    // ascending smallest-member order because the scan is ascending.
    std::vector<CommunityId> assignment(static_cast<size_t>(n), -1);
    CommunityId next = 0;
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
        if (assignment[static_cast<size_t>(s)] >= 0) continue;
        assignment[static_cast<size_t>(s)] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            for (VertexId v : h.neighbors(u)) {
                if (assignment[static_cast<size_t>(v)] < 0) {
                    assignment[static_cast<size_t>(v)] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    // Community stats (internal edges, density) describe H itself: only the
    // edges both layers agree on are edges of the composed structure.
    Layer h_layer;
    h_layer.id = layer_a.id;
    h_layer.name = layer_a.name;
    h_layer.entity_type = layer_a.entity_type;
    h_layer.graph = std::move(h);
    return make_community_set(h_layer, std::move(assignment));
}

std::vector<VertexId> compose_hub_sets(const std::vector<VertexId>& a,
                                       const std::vector<VertexId>& b,
                                       HubSetOp op) {
    std::vector<VertexId> sa(a), sb(b), out;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    switch (op) {
        case HubSetOp::And:
            std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                  std::back_inserter(out));
            break;
        case HubSetOp::Or:
            std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(),
                           std::back_inserter(out));
            break;
        case HubSetOp::Minus:
            std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                std::back_inserter(out));
            break;
    }
    return out;
}

std::vector<std::pair<LayerId, double>>
rank_layers_by_avg_degree(const MultilayerNetwork& net) {
    if (net.kind != NetworkKind::Homogeneous) {
        throw MlnError(ErrorCode::HeterogeneousNetwork,
                       "layer ranking needs a homogeneous network");
    }
    std::vector<std::pair<LayerId, double>> out;
    for (const Layer& l : net.layers) out.emplace_back(l.id, l.graph.average_degree());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

} // namespace mlncraft
