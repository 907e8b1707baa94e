// mlncraft — multilayer-network community & hub workbench.
//
// Exit codes: 0 success, 1 usage problem, 2 data error (any MlnError).
// Results are canonical JSON on stdout unless --out is given; diagnostics go
// to stderr only.

#include <cstdint>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mlncraft/analysis.hpp"
#include "mlncraft/bench.hpp"
#include "mlncraft/cbg.hpp"
#include "mlncraft/errors.hpp"
#include "mlncraft/homln.hpp"
#include "mlncraft/io.hpp"
#include "mlncraft/kcommunity.hpp"
#include "mlncraft/matching.hpp"
#include "mlncraft/mln.hpp"
#include "mlncraft/rng.hpp"
#include "mlncraft/synthetic.hpp"

namespace {

using namespace mlncraft;
using json = nlohmann::json;

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_text_file(out_path, content);
    }
}

std::string dump_canonical(const json& j) {
    return j.dump(2) + "\n";
}

// Community sets for every interior layer of `ordering`: loaded from the
// given JSON files where provided, detected otherwise. Detection seeds come
// from layer_seed(seed, layer), so --parallel cannot change any result.
std::map<LayerId, CommunitySet> gather_csets(const MultilayerNetwork& net,
                                             const LayerOrdering& ordering,
                                             const std::vector<std::string>& community_files,
                                             std::uint64_t seed, double resolution,
                                             bool parallel) {
    std::map<LayerId, CommunitySet> csets;
    for (const std::string& path : community_files) {
        CommunitySet cset = community_set_from_json(net, read_text_file(path));
        LayerId layer = cset.layer;
        csets.insert_or_assign(layer, std::move(cset));
    }
    std::vector<LayerId> missing;
    for (int i = 0; i < ordering.interior_size(); ++i) {
        LayerId id = ordering.layers[static_cast<size_t>(i)];
        if (!csets.count(id)) missing.push_back(id);
    }
    if (parallel) {
        std::vector<std::future<CommunitySet>> futures;
        futures.reserve(missing.size());
        for (LayerId id : missing) {
            futures.push_back(std::async(std::launch::async, [&net, id, seed, resolution] {
                return detect_communities(net.layer(id), layer_seed(seed, id), resolution);
            }));
        }
        for (size_t i = 0; i < missing.size(); ++i)
            csets.insert_or_assign(missing[i], futures[i].get());
    } else {
        for (LayerId id : missing) {
            csets.insert_or_assign(
                id, detect_communities(net.layer(id), layer_seed(seed, id), resolution));
        }
    }
    return csets;
}

struct PipelineOpts {
    std::string file;
    std::string ordering_text;
    std::string metric_name = "we";
    std::vector<std::string> community_files;
    std::uint64_t seed = 1;
    double resolution = 1.0;
    bool parallel = false;
    bool literal_denominator = false;
    std::string out;
    std::string dot;

    DenominatorMode mode() const {
        return literal_denominator ? DenominatorMode::LeftLayerLiteral
                                   : DenominatorMode::CrossLayer;
    }
};

void add_pipeline_options(CLI::App* cmd, PipelineOpts& opts, const char* ordering_help) {
    cmd->add_option("file", opts.file, "input network (.mln)")->required();
    cmd->add_option("--ordering", opts.ordering_text, ordering_help)->required();
    cmd->add_option("--metric", opts.metric_name, "weight metric: we | wd | wh")
        ->default_val("we");
    cmd->add_option("--communities", opts.community_files,
                    "community_set JSON files to use instead of detection");
    cmd->add_option("--seed", opts.seed, "base seed for community detection")
        ->default_val(1);
    cmd->add_option("--resolution", opts.resolution, "Louvain resolution")
        ->default_val(1.0);
    cmd->add_flag("--parallel", opts.parallel, "detect layer communities in parallel");
    cmd->add_flag("--literal-denominator", opts.literal_denominator,
                  "use the left-layer-literal coupling denominator");
    cmd->add_option("--out", opts.out, "write the JSON result to this file");
    cmd->add_option("--dot", opts.dot, "also write a Graphviz view to this file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multilayer-network community and hub workbench"};
    app.require_subcommand(1);

    // ---- info ---------------------------------------------------------------
    struct {
        std::string file, out;
    } info_opts;
    CLI::App* info = app.add_subcommand("info", "summarize a network file");
    info->add_option("file", info_opts.file, "input network (.mln)")->required();
    info->add_option("--out", info_opts.out, "write the JSON result to this file");
    info->callback([&] {
        MultilayerNetwork net = load_mln(info_opts.file);
        json j;
        j["schema"] = kSchemaVersion;
        j["type"] = "network_info";
        j["kind"] = net.kind == NetworkKind::Homogeneous ? "homogeneous" : "heterogeneous";
        json layers = json::array();
        for (const Layer& layer : net.layers) {
            json jl;
            jl["name"] = layer.name;
            jl["entity_type"] = layer.entity_type;
            jl["vertices"] = layer.graph.num_vertices();
            jl["edges"] = layer.graph.num_edges();
            jl["average_degree"] = layer.graph.average_degree();
            layers.push_back(std::move(jl));
        }
        j["layers"] = std::move(layers);
        json couplings = json::array();
        for (const InterLayerEdgeSet& c : net.couplings) {
            json jc;
            jc["layer_a"] = net.layer(c.layer_a).name;
            jc["layer_b"] = net.layer(c.layer_b).name;
            jc["edges"] = c.edges.size();
            couplings.push_back(std::move(jc));
        }
        j["couplings"] = std::move(couplings);
        emit(dump_canonical(j), info_opts.out);
    });

    // ---- communities ---------------------------------------------------------
    struct {
        std::string file, layer, out;
        std::uint64_t seed = 1;
        double resolution = 1.0;
    } comm_opts;
    CLI::App* communities =
        app.add_subcommand("communities", "detect communities in one layer");
    communities->add_option("file", comm_opts.file, "input network (.mln)")->required();
    communities->add_option("--layer", comm_opts.layer, "layer name")->required();
    communities->add_option("--seed", comm_opts.seed, "base seed")->default_val(1);
    communities->add_option("--resolution", comm_opts.resolution, "Louvain resolution")
        ->default_val(1.0);
    communities->add_option("--out", comm_opts.out, "write the JSON result to this file");
    communities->callback([&] {
        MultilayerNetwork net = load_mln(comm_opts.file);
        LayerId id = net.layer_id_by_name(comm_opts.layer);
        CommunitySet cset = detect_communities(net.layer(id), layer_seed(comm_opts.seed, id),
                                               comm_opts.resolution);
        emit(community_set_to_json(net, cset), comm_opts.out);
    });

    // ---- hubs -----------------------------------------------------------------
    struct {
        std::string file, layer, metric = "degree", rule = "above_mean", out;
        int k = 0;
    } hub_opts;
    CLI::App* hubs = app.add_subcommand("hubs", "layer hubs by centrality");
    hubs->add_option("file", hub_opts.file, "input network (.mln)")->required();
    hubs->add_option("--layer", hub_opts.layer, "layer name")->required();
    hubs->add_option("--metric", hub_opts.metric, "degree | closeness")
        ->default_val("degree");
    hubs->add_option("--rule", hub_opts.rule, "above_mean | top_k")
        ->default_val("above_mean");
    hubs->add_option("--k", hub_opts.k, "k for top_k")->default_val(0);
    hubs->add_option("--out", hub_opts.out, "write the JSON result to this file");
    hubs->callback([&] {
        MultilayerNetwork net = load_mln(hub_opts.file);
        LayerId id = net.layer_id_by_name(hub_opts.layer);
        CentralityMetric metric = parse_centrality_metric(hub_opts.metric);
        HubRule rule;
        if (hub_opts.rule == "above_mean") rule = HubRule::AboveMean;
        else if (hub_opts.rule == "top_k") rule = HubRule::TopK;
        else throw MlnError(ErrorCode::ParseError, "unknown hub rule '" + hub_opts.rule + "'");
        HubSet set = layer_hubs(net.layer(id), metric, rule, hub_opts.k);
        emit(hub_set_to_json(net, set), hub_opts.out);
    });

    // ---- compose ---------------------------------------------------------------
    struct {
        std::string file, expr, name = "derived", out;
        std::uint64_t seed = 1;
        double resolution = 1.0;
        int complement_cap = 20000;
        bool with_communities = false;
    } compose_opts;
    CLI::App* compose =
        app.add_subcommand("compose", "Boolean layer composition (homogeneous networks)");
    compose->add_option("file", compose_opts.file, "input network (.mln)")->required();
    compose->add_option("--expr", compose_opts.expr,
                        "expression, e.g. \"A AND (B OR NOT C)\"")
        ->required();
    compose->add_option("--name", compose_opts.name, "name for the derived layer")
        ->default_val("derived");
    compose->add_option("--complement-cap", compose_opts.complement_cap,
                        "largest universe NOT will complement")
        ->default_val(20000);
    compose->add_flag("--communities", compose_opts.with_communities,
                      "include a community assignment for the derived layer");
    compose->add_option("--seed", compose_opts.seed, "base seed")->default_val(1);
    compose->add_option("--resolution", compose_opts.resolution, "Louvain resolution")
        ->default_val(1.0);
    compose->add_option("--out", compose_opts.out, "write the JSON result to this file");
    compose->callback([&] {
        MultilayerNetwork net = load_mln(compose_opts.file);
        LayerExpr expr = parse_layer_expr(compose_opts.expr);
        Layer derived =
            compose_layers(net, expr, compose_opts.name, compose_opts.complement_cap);
        derived.id = static_cast<LayerId>(net.layers.size());
        json j;
        j["schema"] = kSchemaVersion;
        j["type"] = "derived_layer";
        j["name"] = derived.name;
        j["expression"] = expr.to_string();
        j["vertices"] = derived.graph.num_vertices();
        j["edges"] = derived.graph.num_edges();
        j["average_degree"] = derived.graph.average_degree();
        if (compose_opts.with_communities) {
            CommunitySet cset =
                detect_communities(derived, layer_seed(compose_opts.seed, derived.id),
                                   compose_opts.resolution);
            j["assignment"] = cset.assignment;
            j["community_count"] = cset.communities.size();
        }
        emit(dump_canonical(j), compose_opts.out);
    });

    // ---- two-community -----------------------------------------------------------
    PipelineOpts two_opts;
    CLI::App* two =
        app.add_subcommand("two-community", "match the communities of two coupled layers");
    add_pipeline_options(two, two_opts, "the two layers, e.g. \"A,B\"");
    two->callback([&] {
        MultilayerNetwork net = load_mln(two_opts.file);
        LayerOrdering ordering = parse_ordering(net, two_opts.ordering_text);
        if (ordering.layers.size() != 2) {
            throw MlnError(ErrorCode::ParseError,
                           "two-community takes exactly two layers; use kcommunity for more");
        }
        WeightMetric metric = parse_weight_metric(two_opts.metric_name);
        auto csets = gather_csets(net, ordering, two_opts.community_files, two_opts.seed,
                                  two_opts.resolution, two_opts.parallel);
        KCommunityResult result =
            two_community(net, csets.at(ordering.layers[0]), csets.at(ordering.layers[1]),
                          metric, two_opts.mode());
        emit(k_community_result_to_json(net, result), two_opts.out);
        if (!two_opts.dot.empty()) {
            const CommunitySet& a = csets.at(ordering.layers[0]);
            const CommunitySet& b = csets.at(ordering.layers[1]);
            const CommunitySet& left = a.layer <= b.layer ? a : b;
            const CommunitySet& right = a.layer <= b.layer ? b : a;
            CommunityBipartiteGraph cbg = build_cbg(net, left, right);
            apply_weight_metric(net, left, right, cbg, metric, two_opts.mode());
            write_text_file(two_opts.dot, cbg_to_dot(net, cbg));
        }
    });

    // ---- kcommunity ---------------------------------------------------------------
    PipelineOpts k_opts;
    CLI::App* kcommunity_cmd =
        app.add_subcommand("kcommunity", "recursive composition along a layer ordering");
    add_pipeline_options(kcommunity_cmd, k_opts,
                         "layer ordering, e.g. \"A,B,C\" or cyclic \"A,B,C,A\"");
    kcommunity_cmd->callback([&] {
        MultilayerNetwork net = load_mln(k_opts.file);
        LayerOrdering ordering = parse_ordering(net, k_opts.ordering_text);
        WeightMetric metric = parse_weight_metric(k_opts.metric_name);
        auto csets = gather_csets(net, ordering, k_opts.community_files, k_opts.seed,
                                  k_opts.resolution, k_opts.parallel);
        KCommunityResult result = k_community(net, ordering, csets, metric, k_opts.mode());
        emit(k_community_result_to_json(net, result), k_opts.out);
        if (!k_opts.dot.empty())
            write_text_file(k_opts.dot, elements_to_dot(net, result));
    });

    // ---- rank -----------------------------------------------------------------------
    struct {
        std::string file, result, out;
    } rank_opts;
    CLI::App* rank = app.add_subcommand(
        "rank", "rank a k-community result's elements by bottleneck strength");
    rank->add_option("file", rank_opts.file, "input network (.mln)")->required();
    rank->add_option("--result", rank_opts.result, "k_community_result JSON file")
        ->required();
    rank->add_option("--out", rank_opts.out, "write the JSON result to this file");
    rank->callback([&] {
        MultilayerNetwork net = load_mln(rank_opts.file);
        KCommunityResult result =
            k_community_result_from_json(net, read_text_file(rank_opts.result));
        result.elements = rank_elements(result);
        emit(k_community_result_to_json(net, result), rank_opts.out);
    });

    // ---- generate ----------------------------------------------------------------------
    struct {
        std::string spec, out, planted;
        std::uint64_t seed = 1;
    } gen_opts;
    CLI::App* generate =
        app.add_subcommand("generate", "planted-partition synthetic network");
    generate->add_option("--spec", gen_opts.spec,
                         "e.g. \"3x1000,deg8,blocks16,pmatch0.05\"")
        ->required();
    generate->add_option("--seed", gen_opts.seed, "generator seed")->default_val(1);
    generate->add_option("--out", gen_opts.out, "write the .mln text to this file");
    generate->add_option("--planted", gen_opts.planted,
                         "also write the planted blocks as JSON to this file");
    generate->callback([&] {
        SyntheticSpec spec = parse_synthetic_spec(gen_opts.spec);
        SyntheticNetwork synth = generate_synthetic(spec, gen_opts.seed);
        emit(format_mln(synth.net), gen_opts.out);
        if (!gen_opts.planted.empty()) {
            json j;
            j["schema"] = kSchemaVersion;
            j["type"] = "planted_blocks";
            j["spec"] = gen_opts.spec;
            j["seed"] = gen_opts.seed;
            json blocks = json::array();
            for (const auto& layer_blocks : synth.planted) blocks.push_back(layer_blocks);
            j["planted"] = std::move(blocks);
            write_text_file(gen_opts.planted, dump_canonical(j));
        }
    });

    // ---- bench ---------------------------------------------------------------------------
    struct {
        std::string file, spec, ordering, metric = "we", out;
        int reps = 5;
        std::uint64_t seed = 1;
        double resolution = 1.0;
        bool literal_denominator = false;
    } bench_opts;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "time decoupled composition against recomputation");
    auto* bench_file =
        bench_cmd->add_option("file", bench_opts.file, "input network (.mln)");
    auto* bench_spec = bench_cmd->add_option(
        "--spec", bench_opts.spec, "generate the input instead of reading a file");
    bench_file->excludes(bench_spec);
    bench_cmd
        ->add_option("--ordering", bench_opts.ordering,
                     "layer ordering, e.g. \"L0,L1,L2,L0\"")
        ->required();
    bench_cmd->add_option("--metric", bench_opts.metric, "we | wd | wh")->default_val("we");
    bench_cmd->add_option("--reps", bench_opts.reps, "repetitions (median is reported)")
        ->default_val(5);
    bench_cmd->add_option("--seed", bench_opts.seed, "base seed")->default_val(1);
    bench_cmd->add_option("--resolution", bench_opts.resolution, "Louvain resolution")
        ->default_val(1.0);
    bench_cmd->add_flag("--literal-denominator", bench_opts.literal_denominator,
                        "use the left-layer-literal coupling denominator");
    bench_cmd->add_option("--out", bench_opts.out, "write the JSON report to this file");
    bench_cmd->callback([&] {
        MultilayerNetwork net;
        if (!bench_opts.spec.empty()) {
            net = generate_synthetic(parse_synthetic_spec(bench_opts.spec), bench_opts.seed)
                      .net;
        } else if (!bench_opts.file.empty()) {
            net = load_mln(bench_opts.file);
        } else {
            throw CLI::RequiredError("bench needs a file or --spec");
        }
        LayerOrdering ordering = parse_ordering(net, bench_opts.ordering);
        BenchReport report =
            bench(net, ordering, parse_weight_metric(bench_opts.metric), bench_opts.reps,
                  bench_opts.seed, bench_opts.resolution,
                  bench_opts.literal_denominator ? DenominatorMode::LeftLayerLiteral
                                                 : DenominatorMode::CrossLayer);
        emit(bench_report_to_json(report), bench_opts.out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const mlncraft::MlnError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
