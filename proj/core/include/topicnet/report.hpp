#ifndef TOPICNET_REPORT_HPP
#define TOPICNET_REPORT_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "topicnet/corpus.hpp"
#include "topicnet/dtm.hpp"
#include "topicnet/graphalg.hpp"
#include "topicnet/netbuild.hpp"
#include "topicnet/nmf.hpp"
#include "topicnet/textprep.hpp"

namespace topicnet {

/// Everything the end-to-end run needs; CLI flags mirror these fields.
struct RunConfig {
    std::string manifest_path;
    std::string stopword_path;   ///< empty: bundled default list
    std::string synonym_path;    ///< empty: identity map
    std::string label_path;      ///< empty: grouping outputs skipped
    std::string exclusion_path;  ///< empty: no excluded topics

    int k = 100;
    double tau = 0.05;
    int min_df = 2;
    int max_iter = 500;
    double tol = 1e-5;
    std::string init = "nndsvd";  ///< "nndsvd" or "random"
    unsigned seed = 0;
    int top_terms = 10;
    double betweenness_threshold = 400.0;
    int top_n_keywords = 10;

    std::string output_dir;
    bool per_year_wordcloud = false;
    bool drop_isolates = false;   ///< drop isolated nodes in graph exports
    bool include_timings = false; ///< timings make outputs non-reproducible
};

/// (keyword, number of papers carrying it), descending count then
/// lexicographic.
using KeywordCounts = std::vector<std::pair<std::string, int>>;

KeywordCounts wordcloud_counts(const std::vector<ProcessedDocument>& docs);
std::map<int, KeywordCounts> wordcloud_counts_per_year(
    const std::vector<ProcessedDocument>& docs, const std::vector<int>& doc_years);

/// Runs every stage and writes all run artifacts under config.output_dir.
/// A stage failure aborts with the stage name in the message; files being
/// written at that moment keep their ".partial" suffix.
void run_pipeline(const RunConfig& config);

// Stage entry points used by the CLI subcommands. On-disk artifacts are the
// hand-off contract between stages.

/// preprocess: manifest -> processed.jsonl, vocabulary.csv, dtm.tsv.
void stage_preprocess(const RunConfig& config);

/// fit: dtm.tsv -> W.csv, H.csv, topics.csv, theta.csv, model_summary.json.
void stage_fit(const RunConfig& config, const std::filesystem::path& dtm_path);

/// networks: theta.csv + processed.jsonl -> edge CSVs and GraphML files.
void stage_networks(const RunConfig& config, const std::filesystem::path& theta_path,
                    const std::filesystem::path& processed_path);

/// metrics: edge CSVs -> metrics_summary.json, average_rank.csv.
void stage_metrics(const RunConfig& config,
                   const std::filesystem::path& topic_edges_path,
                   const std::filesystem::path& keyword_edges_path);

/// dynamics: theta.csv + processed.jsonl -> betweenness_series.csv,
/// alluvial.json.
void stage_dynamics(const RunConfig& config, const std::filesystem::path& theta_path,
                    const std::filesystem::path& processed_path);

// Stage hand-off readers/writers.

void write_processed_jsonl(const std::filesystem::path& path,
                           const std::vector<ProcessedDocument>& docs,
                           const std::vector<int>& doc_years);
std::pair<std::vector<ProcessedDocument>, std::vector<int>> read_processed_jsonl(
    const std::filesystem::path& path);

void write_theta_csv(const std::filesystem::path& path, const TopicProportions& theta,
                     const std::vector<int>& doc_years);
std::pair<TopicProportions, std::vector<int>> read_theta_csv(
    const std::filesystem::path& path);

/// Per-network summary mirroring every reported network statistic.
struct NetworkSummary {
    int n_nodes = 0;
    long long n_edges = 0;
    double avg_degree = 0.0;
    double avg_clustering = 0.0;
    double avg_path_length = 0.0;
    int n_components = 0;
    double giant_fraction = 0.0;
    double modularity = 0.0;
    int n_communities = 0;
};

NetworkSummary summarize_network(const WeightedGraph& g);

/// Formats an averaged rank with two decimals, as reported in rank tables.
std::string format_rank(double rank);

}  // namespace topicnet

#endif  // TOPICNET_REPORT_HPP
