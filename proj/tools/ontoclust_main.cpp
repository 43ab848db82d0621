#include "ontoclust/clustering.hpp"
#include "ontoclust/errors.hpp"
#include "ontoclust/export.hpp"
#include "ontoclust/graph.hpp"
#include "ontoclust/ontology.hpp"
#include "ontoclust/similarity.hpp"
#include "ontoclust/store.hpp"
#include "ontoclust/sweep.hpp"
#include "ontoclust/text.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

using namespace ontoclust;

std::string read_file(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(std::string(what) + " not found: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
    out.flush();
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

struct PipelineOptions {
    std::string ontology_path;
    std::string requests_path;
    std::string language = "en";
    std::string stopwords_path;
    std::string units_path;
    double class_threshold = 0.3;
    int max_edit_distance = 2;
};

TextOptions make_text_options(const PipelineOptions& o) {
    TextOptions opt;
    if (o.stopwords_path.empty() || o.units_path.empty())
        opt = default_text_options(o.language);
    opt.language = o.language;
    if (!o.stopwords_path.empty())
        opt.stopwords = load_lexicon_file(o.stopwords_path);
    if (!o.units_path.empty())
        opt.units = load_lexicon_file(o.units_path);
    opt.max_correction_distance = o.max_edit_distance;
    return opt;
}

RequestLog open_request_log(const PipelineOptions& o) {
    if (!std::filesystem::exists(o.requests_path))
        throw IoError("requests file not found: " + o.requests_path);
    return RequestLog(o.requests_path);
}

void add_pipeline_options(CLI::App* cmd, PipelineOptions& o) {
    cmd->add_option("--ontology", o.ontology_path, "Ontology JSON document")->required();
    cmd->add_option("--requests", o.requests_path, "Request log (JSON lines)")->required();
    cmd->add_option("--language", o.language, "Request language tag (default en)");
    cmd->add_option("--stopwords", o.stopwords_path, "Stop-word file, one term per line");
    cmd->add_option("--units", o.units_path, "Unit lexicon file, one term per line");
    cmd->add_option("--class-threshold", o.class_threshold,
                    "Clamp class similarities below this value to 0");
    cmd->add_option("--max-edit-distance", o.max_edit_distance,
                    "Spell-correction edit distance budget");
}

int run_match(const PipelineOptions& o, const std::string& output) {
    auto ontology = load_ontology_file(o.ontology_path);
    auto topt = make_text_options(o);
    SimilarityOptions sopt{o.class_threshold};
    auto records = open_request_log(o).load();
    std::vector<SimilarityReport> reports;
    reports.reserve(records.size());
    for (const auto& record : records) {
        auto processed = preprocess(record.text, ontology, topt);
        reports.push_back(match_request(processed, record.request_id, ontology, topt, sopt));
    }
    write_file(output, emit_similarity_xml(reports));
    std::cout << "matched " << reports.size() << " request(s) against "
              << ontology.classes().size() << " classes, " << ontology.attributes().size()
              << " attributes -> " << output << "\n";
    return 0;
}

struct ClusterOptions {
    PipelineOptions pipeline;
    double d_max = 0.6;
    GraphParams params;
    std::string mode = "users";
    std::string output;
    std::string profiles_path;
    std::string dot_clusters_path;
    std::string dot_g0_path;
    std::string distances_csv_path;
};

int run_cluster(const ClusterOptions& o) {
    o.params.validate();
    if (!(o.d_max > 0.0))
        throw DomainError("--d-max must be > 0");
    auto ontology = load_ontology_file(o.pipeline.ontology_path);
    auto topt = make_text_options(o.pipeline);
    SimilarityOptions sopt{o.pipeline.class_threshold};
    auto log = open_request_log(o.pipeline);
    auto profiles = o.mode == "requests" ? load_request_profiles(log, ontology, topt, sopt)
                                         : load_profiles(log, ontology, topt, sopt);
    if (!o.profiles_path.empty() && o.mode == "users") {
        auto personal = load_personal_data(o.profiles_path);
        for (auto& p : profiles) {
            auto it = personal.find(p.user_id);
            if (it != personal.end())
                p.personal = it->second;
        }
    }

    auto g0 = build_user_ontology_graph(profiles, ontology, o.params);
    auto table = all_pairs_user_distances(g0);
    auto clustering = cluster_users(table, o.d_max);

    write_file(o.output, clustering_to_json(clustering));
    if (!o.dot_clusters_path.empty())
        write_file(o.dot_clusters_path, dot_of_clustering(clustering, &table));
    if (!o.dot_g0_path.empty())
        write_file(o.dot_g0_path, dot_of_graph(g0, &ontology));
    if (!o.distances_csv_path.empty())
        write_file(o.distances_csv_path, table.to_csv());

    std::cout << "clusters: " << clustering.clusters.size() << " (mode " << o.mode << ", d_max "
              << o.d_max << ")\n";
    for (std::size_t i = 0; i < clustering.clusters.size(); ++i) {
        const auto& c = clustering.clusters[i];
        std::cout << "  cluster " << i + 1 << ": " << c.members.size() << " member(s), mass "
                  << c.mass << " {";
        for (std::size_t m = 0; m < c.members.size(); ++m)
            std::cout << (m ? " " : "") << c.members[m];
        std::cout << "}\n";
    }
    return 0;
}

struct SweepOptions {
    PipelineOptions pipeline;
    std::vector<double> cc_weights;
    std::vector<double> d_max_values;
    double d_max_from = 0.0;
    double d_max_to = 0.0;
    std::size_t d_max_steps = 0;
    double ca_weight = 0.2;
    double epsilon = 0.001;
    std::string mode = "users";
    std::string output;
};

int run_sweep_cmd(const SweepOptions& o) {
    SweepGrid grid;
    grid.cc_weight_values = o.cc_weights;
    grid.ca_weight = o.ca_weight;
    grid.epsilon = o.epsilon;
    if (!o.d_max_values.empty()) {
        grid.d_max_values = o.d_max_values;
    } else if (o.d_max_steps >= 2) {
        for (std::size_t i = 0; i < o.d_max_steps; ++i)
            grid.d_max_values.push_back(o.d_max_from + (o.d_max_to - o.d_max_from) *
                                                           static_cast<double>(i) /
                                                           static_cast<double>(o.d_max_steps - 1));
    } else {
        throw DomainError("supply --d-max-values or --d-max-from/--d-max-to/--d-max-steps");
    }
    grid.validate();

    auto ontology = load_ontology_file(o.pipeline.ontology_path);
    auto topt = make_text_options(o.pipeline);
    SimilarityOptions sopt{o.pipeline.class_threshold};
    auto log = open_request_log(o.pipeline);
    auto profiles = o.mode == "requests" ? load_request_profiles(log, ontology, topt, sopt)
                                         : load_profiles(log, ontology, topt, sopt);

    auto result = run_sweep(profiles, ontology, grid);
    write_file(o.output, sweep_to_csv(result));
    std::cout << "swept " << grid.cc_weight_values.size() << " cc_weight value(s) x "
              << grid.d_max_values.size() << " d_max value(s) over " << result.user_count
              << " user(s); " << result.plateaus.size() << " plateau(s) -> " << o.output << "\n";
    return 0;
}

struct ExportOptions {
    std::string clustering_path;
    std::string distances_path;
    std::string output;
};

int run_export_dot(const ExportOptions& o) {
    if (o.clustering_path.empty() && o.distances_path.empty())
        throw DomainError("supply --clustering and/or --distances");
    std::optional<DistanceTable> table;
    if (!o.distances_path.empty())
        table = DistanceTable::from_csv(read_file(o.distances_path, "distance table"));
    std::string dot;
    if (!o.clustering_path.empty()) {
        auto clustering = clustering_from_json(read_file(o.clustering_path, "clustering"));
        dot = dot_of_clustering(clustering, table ? &*table : nullptr);
    } else {
        dot = dot_of_distances(*table);
    }
    write_file(o.output, dot);
    std::cout << "wrote " << o.output << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ontology-based clustering of customers and their free-text requests"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file (flags override it)");

    PipelineOptions match_pipeline;
    std::string match_output;
    auto* match_cmd =
        app.add_subcommand("match", "Match requests against the ontology, emit the XML report");
    add_pipeline_options(match_cmd, match_pipeline);
    match_cmd->add_option("--output,-o", match_output, "Output XML path")->required();

    ClusterOptions cluster_opts;
    auto* cluster_cmd = app.add_subcommand("cluster", "Build the user graph and cluster it");
    add_pipeline_options(cluster_cmd, cluster_opts.pipeline);
    cluster_cmd->add_option("--d-max", cluster_opts.d_max, "Maximum cluster mass");
    cluster_cmd->add_option("--cc-weight", cluster_opts.params.cc_weight,
                            "Class-class arc weight");
    cluster_cmd->add_option("--ca-weight", cluster_opts.params.ca_weight,
                            "Class-attribute arc weight");
    cluster_cmd->add_option("--epsilon", cluster_opts.params.epsilon,
                            "Positive floor replacing zero arc weights");
    cluster_cmd->add_option("--mode", cluster_opts.mode, "users | requests")
        ->check(CLI::IsMember({"users", "requests"}));
    cluster_cmd->add_option("--output,-o", cluster_opts.output, "Clustering JSON path")
        ->required();
    cluster_cmd->add_option("--profiles", cluster_opts.profiles_path,
                            "Optional personal-data sidecar JSON");
    cluster_cmd->add_option("--dot", cluster_opts.dot_clusters_path,
                            "Write cluster DOT (boxes around members)");
    cluster_cmd->add_option("--dot-g0", cluster_opts.dot_g0_path,
                            "Write the user-ontology graph as DOT");
    cluster_cmd->add_option("--distances-csv", cluster_opts.distances_csv_path,
                            "Write the user-user distance table as CSV");

    SweepOptions sweep_opts;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Cluster counts over a d_max x cc_weight grid");
    add_pipeline_options(sweep_cmd, sweep_opts.pipeline);
    sweep_cmd->add_option("--cc-weights", sweep_opts.cc_weights, "cc_weight values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--d-max-values", sweep_opts.d_max_values,
                          "Explicit ascending d_max values")
        ->delimiter(',');
    sweep_cmd->add_option("--d-max-from", sweep_opts.d_max_from, "Range start");
    sweep_cmd->add_option("--d-max-to", sweep_opts.d_max_to, "Range end");
    sweep_cmd->add_option("--d-max-steps", sweep_opts.d_max_steps, "Range point count");
    sweep_cmd->add_option("--ca-weight", sweep_opts.ca_weight, "Class-attribute arc weight");
    sweep_cmd->add_option("--epsilon", sweep_opts.epsilon, "Zero-weight floor");
    sweep_cmd->add_option("--mode", sweep_opts.mode, "users | requests")
        ->check(CLI::IsMember({"users", "requests"}));
    sweep_cmd->add_option("--output,-o", sweep_opts.output, "Output CSV path")->required();

    ExportOptions export_opts;
    auto* export_cmd = app.add_subcommand("export-dot", "Render saved artifacts as Graphviz DOT");
    export_cmd->add_option("--clustering", export_opts.clustering_path,
                           "Clustering JSON artifact");
    export_cmd->add_option("--distances", export_opts.distances_path,
                           "Distance table CSV artifact");
    export_cmd->add_option("--output,-o", export_opts.output, "Output DOT path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (match_cmd->parsed())
            return run_match(match_pipeline, match_output);
        if (cluster_cmd->parsed())
            return run_cluster(cluster_opts);
        if (sweep_cmd->parsed())
            return run_sweep_cmd(sweep_opts);
        if (export_cmd->parsed())
            return run_export_dot(export_opts);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
