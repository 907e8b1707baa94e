#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlncraft/mln.hpp"

namespace mlncraft {

// Planted-partition multilayer generator. Every layer gets `vertices`
// vertices split into `blocks` near-equal planted blocks; intra-layer edges
// appear with p_in inside a block and p_out across blocks. Couplings follow
// the chain L0-L1-...-L(k-1) plus Lk-1..L0 closure when `cyclic_coupling`;
// an inter edge (u,v) appears with p_match when u and v lie in corresponding
// planted blocks (identity bijection) and p_cross otherwise.
struct SyntheticSpec {
    int layers = 2;
    int vertices = 100;
    int blocks = 4;
    double p_in = 0.9;
    double p_out = 0.01;
    double p_match = 0.05;
    double p_cross = 0.0;
    bool cyclic_coupling = true;

    // Convenience: choose p_in so the expected average degree is `deg`,
    // given p_out, blocks and vertices. When the cross-block term alone
    // would exceed deg/2, p_out is first lowered so it contributes exactly
    // half, keeping the planted blocks recoverable at any scale.
    void set_average_degree(double deg);
};

// Compact spec strings, e.g. "3x10000,deg20,blocks32,pmatch0.01".
// Fields: "<L>x<N>" then comma options: deg<d> | pin<p>, pout<p>, blocks<k>,
// pmatch<p>, pcross<p>, acyclic. Throws ParseError.
SyntheticSpec parse_synthetic_spec(const std::string& text);

struct SyntheticNetwork {
    MultilayerNetwork net;
    // planted[layer][vertex] = planted block id; ground truth for recovery
    // experiments.
    std::vector<std::vector<int>> planted;
};

// Deterministic for a fixed seed (per-layer and per-coupling substreams, so
// results do not depend on generation order).
SyntheticNetwork generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

// Normalized mutual information between two assignments over the same vertex
// set, 2I/(H1+H2); 1.0 when both partitions are identical up to relabeling,
// and defined as 1.0 when both are single-cluster.
double normalized_mutual_information(const std::vector<int>& a,
                                     const std::vector<int>& b);

} // namespace mlncraft
