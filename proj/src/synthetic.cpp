#include "mlncraft/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "mlncraft/errors.hpp"
#include "mlncraft/rng.hpp"

namespace mlncraft {

namespace {

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Visits the indices of a Bernoulli(p) sample over [0, count) in ascending
// order, jumping geometrically between successes so sparse scans cost
// O(successes) instead of O(count).
template <typename Fn>
void bernoulli_scan(std::mt19937_64& rng, std::int64_t count, double p, Fn&& hit) {
    if (count <= 0 || p <= 0.0) return;
    if (p >= 1.0) {
        for (std::int64_t i = 0; i < count; ++i) hit(i);
        return;
    }
    const double log1mp = std::log1p(-p);
    std::int64_t i = 0;
    while (i < count) {
        double gap = std::floor(std::log1p(-u01(rng)) / log1mp);
        if (gap >= static_cast<double>(count - i)) break;
        i += static_cast<std::int64_t>(gap);
        hit(i);
        ++i;
    }
}

struct Blocks {
    std::vector<int> start; // start[b]..start[b]+size[b)
    std::vector<int> size;
};

Blocks make_blocks(int vertices, int blocks) {
    Blocks out;
    int base = vertices / blocks, extra = vertices % blocks, at = 0;
    for (int b = 0; b < blocks; ++b) {
        int s = base + (b < extra ? 1 : 0);
        out.start.push_back(at);
        out.size.push_back(s);
        at += s;
    }
    return out;
}

double parse_prob(const std::string& field, const std::string& digits) {
    try {
        size_t used = 0;
        double p = std::stod(digits, &used);
        if (used != digits.size() || !(p >= 0.0) || !(p <= 1.0))
            throw std::invalid_argument("range");
        return p;
    } catch (const std::exception&) {
        throw MlnError(ErrorCode::ParseError,
                       "bad probability in spec field '" + field + "'");
    }
}

int parse_int(const std::string& field, const std::string& digits) {
    try {
        size_t used = 0;
        int v = std::stoi(digits, &used);
        if (used != digits.size() || v <= 0) throw std::invalid_argument("range");
        return v;
    } catch (const std::exception&) {
        throw MlnError(ErrorCode::ParseError, "bad integer in spec field '" + field + "'");
    }
}

} // namespace

void SyntheticSpec::set_average_degree(double deg) {
    if (deg < 0.0) deg = 0.0;
    const double n = vertices;
    const double mean_block = n / std::max(1, blocks);
    const double cross = n - mean_block;      // expected cross-block partners
    const double within = mean_block - 1.0;   // expected same-block partners
    // If the cross-block term alone would exceed half the target, shrink
    // p_out so it contributes exactly half; the planted signal survives.
    if (cross > 0.0 && p_out * cross > deg / 2.0) p_out = (deg / 2.0) / cross;
    double p = within > 0.0 ? (deg - p_out * cross) / within : 0.0;
    p_in = std::clamp(p, 0.0, 1.0);
}

SyntheticSpec parse_synthetic_spec(const std::string& text) {
    std::vector<std::string> fields;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) fields.push_back(part);
    if (fields.empty())
        throw MlnError(ErrorCode::ParseError, "empty synthetic spec");

    SyntheticSpec spec;
    size_t x = fields[0].find('x');
    if (x == std::string::npos)
        throw MlnError(ErrorCode::ParseError,
                       "spec must start with '<layers>x<vertices>', got '" + fields[0] + "'");
    spec.layers = parse_int(fields[0], fields[0].substr(0, x));
    spec.vertices = parse_int(fields[0], fields[0].substr(x + 1));

    bool has_deg = false;
    double deg = 0.0;
    for (size_t i = 1; i < fields.size(); ++i) {
        const std::string& f = fields[i];
        auto value = [&](const char* prefix) {
            return f.substr(std::string(prefix).size());
        };
        if (f == "acyclic") spec.cyclic_coupling = false;
        else if (f.rfind("deg", 0) == 0) {
            has_deg = true;
            try {
                size_t used = 0;
                deg = std::stod(value("deg"), &used);
                if (used != value("deg").size() || deg < 0.0)
                    throw std::invalid_argument("range");
            } catch (const std::exception&) {
                throw MlnError(ErrorCode::ParseError, "bad degree in spec field '" + f + "'");
            }
        } else if (f.rfind("pin", 0) == 0) spec.p_in = parse_prob(f, value("pin"));
        else if (f.rfind("pout", 0) == 0) spec.p_out = parse_prob(f, value("pout"));
        else if (f.rfind("pmatch", 0) == 0) spec.p_match = parse_prob(f, value("pmatch"));
        else if (f.rfind("pcross", 0) == 0) spec.p_cross = parse_prob(f, value("pcross"));
        else if (f.rfind("blocks", 0) == 0) spec.blocks = parse_int(f, value("blocks"));
        else throw MlnError(ErrorCode::ParseError, "unknown spec field '" + f + "'");
    }
    if (spec.blocks > spec.vertices)
        throw MlnError(ErrorCode::ParseError, "more blocks than vertices");
    if (has_deg) spec.set_average_degree(deg);
    return spec;
}

SyntheticNetwork generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
    if (spec.layers < 1 || spec.vertices < 1 || spec.blocks < 1 ||
        spec.blocks > spec.vertices) {
        throw MlnError(ErrorCode::ParseError, "degenerate synthetic spec");
    }

    const Blocks blocks = make_blocks(spec.vertices, spec.blocks);
    std::vector<int> planted_one(static_cast<size_t>(spec.vertices));
    for (int b = 0; b < spec.blocks; ++b)
        for (int i = 0; i < blocks.size[static_cast<size_t>(b)]; ++i)
            planted_one[static_cast<size_t>(blocks.start[static_cast<size_t>(b)] + i)] = b;

    SyntheticNetwork out;
    out.planted.assign(static_cast<size_t>(spec.layers), planted_one);

    std::vector<Layer> layers(static_cast<size_t>(spec.layers));
    for (int l = 0; l < spec.layers; ++l) {
        Layer& layer = layers[static_cast<size_t>(l)];
        layer.id = l;
        layer.name = "L" + std::to_string(l);
        layer.entity_type = "E" + std::to_string(l);
        layer.graph = Graph(spec.vertices);

        std::mt19937_64 rng(splitmix64(seed ^ (0x10000ULL + static_cast<std::uint64_t>(l))));

        // Same-block pairs: rows i of the upper triangle, walked with a
        // forward cursor since sampled indices ascend.
        for (int b = 0; b < spec.blocks; ++b) {
            const int start = blocks.start[static_cast<size_t>(b)];
            const int size = blocks.size[static_cast<size_t>(b)];
            const std::int64_t count =
                static_cast<std::int64_t>(size) * (size - 1) / 2;
            std::int64_t row_start = 0;
            int row = 0;
            bernoulli_scan(rng, count, spec.p_in, [&](std::int64_t idx) {
                while (idx >= row_start + (size - 1 - row)) {
                    row_start += size - 1 - row;
                    ++row;
                }
                int offset = static_cast<int>(idx - row_start);
                layer.graph.add_edge(start + row, start + row + 1 + offset);
            });
        }
        // Cross-block pairs, one rectangle per block pair.
        for (int b1 = 0; b1 < spec.blocks; ++b1) {
            for (int b2 = b1 + 1; b2 < spec.blocks; ++b2) {
                const int s1 = blocks.start[static_cast<size_t>(b1)];
                const int n1 = blocks.size[static_cast<size_t>(b1)];
                const int s2 = blocks.start[static_cast<size_t>(b2)];
                const int n2 = blocks.size[static_cast<size_t>(b2)];
                bernoulli_scan(rng, static_cast<std::int64_t>(n1) * n2, spec.p_out,
                               [&](std::int64_t idx) {
                                   layer.graph.add_edge(
                                       s1 + static_cast<int>(idx / n2),
                                       s2 + static_cast<int>(idx % n2));
                               });
            }
        }
    }

    std::vector<std::pair<int, int>> chain;
    for (int l = 0; l + 1 < spec.layers; ++l) chain.emplace_back(l, l + 1);
    if (spec.cyclic_coupling && spec.layers > 2) chain.emplace_back(spec.layers - 1, 0);

    std::vector<InterLayerEdgeSet> couplings;
    for (size_t c = 0; c < chain.size(); ++c) {
        auto [la, lb] = chain[c];
        InterLayerEdgeSet set;
        set.layer_a = std::min(la, lb);
        set.layer_b = std::max(la, lb);
        std::mt19937_64 rng(splitmix64(seed ^ (0x20000ULL + static_cast<std::uint64_t>(c))));

        // Corresponding blocks (identity bijection).
        for (int b = 0; b < spec.blocks; ++b) {
            const int start = blocks.start[static_cast<size_t>(b)];
            const int size = blocks.size[static_cast<size_t>(b)];
            bernoulli_scan(rng, static_cast<std::int64_t>(size) * size, spec.p_match,
                           [&](std::int64_t idx) {
                               set.edges.emplace_back(start + static_cast<int>(idx / size),
                                                      start + static_cast<int>(idx % size));
                           });
        }
        // Non-corresponding blocks.
        if (spec.p_cross > 0.0) {
            for (int b1 = 0; b1 < spec.blocks; ++b1) {
                for (int b2 = 0; b2 < spec.blocks; ++b2) {
                    if (b1 == b2) continue;
                    const int s1 = blocks.start[static_cast<size_t>(b1)];
                    const int n1 = blocks.size[static_cast<size_t>(b1)];
                    const int s2 = blocks.start[static_cast<size_t>(b2)];
                    const int n2 = blocks.size[static_cast<size_t>(b2)];
                    bernoulli_scan(rng, static_cast<std::int64_t>(n1) * n2, spec.p_cross,
                                   [&](std::int64_t idx) {
                                       set.edges.emplace_back(s1 + static_cast<int>(idx / n2),
                                                              s2 + static_cast<int>(idx % n2));
                                   });
                }
            }
        }
        couplings.push_back(std::move(set));
    }

    out.net = build_network(std::move(layers), std::move(couplings));
    return out;
}

double normalized_mutual_information(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size() || a.empty()) {
        throw MlnError(ErrorCode::VertexUniverseMismatch,
                       "assignments must cover the same non-empty vertex set");
    }
    const double n = static_cast<double>(a.size());
    std::map<int, std::int64_t> count_a, count_b;
    std::map<std::pair<int, int>, std::int64_t> joint;
    for (size_t i = 0; i < a.size(); ++i) {
        ++count_a[a[i]];
        ++count_b[b[i]];
        ++joint[{a[i], b[i]}];
    }
    double h_a = 0.0, h_b = 0.0, info = 0.0;
    for (const auto& [label, c] : count_a) {
        double p = c / n;
        h_a -= p * std::log(p);
    }
    for (const auto& [label, c] : count_b) {
        double p = c / n;
        h_b -= p * std::log(p);
    }
    for (const auto& [labels, c] : joint) {
        double pij = c / n;
        double pi = count_a[labels.first] / n;
        double pj = count_b[labels.second] / n;
        info += pij * std::log(pij / (pi * pj));
    }
    if (h_a + h_b == 0.0) return 1.0; // both single-cluster: identical partitions
    return 2.0 * info / (h_a + h_b);
}

} // namespace mlncraft
