#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mlncraft/analysis.hpp"
#include "mlncraft/bench.hpp"
#include "mlncraft/kcommunity.hpp"
#include "mlncraft/mln.hpp"

namespace mlncraft {

inline constexpr const char* kSchemaVersion = "mlncraft/1";

// ---- MLN text format ------------------------------------------------------
//
//   # comment
//   [layers]
//   A entity=person
//   [intra]
//   A u v
//   [inter]
//   A u B v
//
// Vertex tokens are arbitrary strings, mapped to dense ids per layer in order
// of first appearance. Parse failures throw ParseError with the line number;
// unreadable files throw IoError.
MultilayerNetwork load_mln(const std::string& path);
MultilayerNetwork parse_mln(std::istream& in, const std::string& origin);

// Writes the same format, labels as tokens when present. Deterministic.
void save_mln(const MultilayerNetwork& net, const std::string& path);
std::string format_mln(const MultilayerNetwork& net);

// ---- canonical JSON -------------------------------------------------------
// Object keys sorted, 2-space indent, one trailing newline; doubles printed
// shortest-round-trip. Byte-identical for equal values, and load(save(x)) == x
// for every result type below.

std::string community_set_to_json(const MultilayerNetwork& net, const CommunitySet& cset);
CommunitySet community_set_from_json(const MultilayerNetwork& net, const std::string& text);

std::string hub_set_to_json(const MultilayerNetwork& net, const HubSet& hubs);
HubSet hub_set_from_json(const MultilayerNetwork& net, const std::string& text);

std::string k_community_result_to_json(const MultilayerNetwork& net, const KCommunityResult& result);
KCommunityResult k_community_result_from_json(const MultilayerNetwork& net, const std::string& text);

std::string bench_report_to_json(const BenchReport& report);
BenchReport bench_report_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& content); // throws IoError
std::string read_text_file(const std::string& path);                       // throws IoError

// ---- DOT export -----------------------------------------------------------
std::string cbg_to_dot(const MultilayerNetwork& net, const CommunityBipartiteGraph& cbg);
std::string elements_to_dot(const MultilayerNetwork& net, const KCommunityResult& result);

} // namespace mlncraft
