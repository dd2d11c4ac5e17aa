// topicnet CLI: runs the corpus-analytics pipeline end to end or one stage at
// a time, with intermediate artifacts on disk as the hand-off between stages.

#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <string>

#include "topicnet/report.hpp"

namespace {

void add_common_options(CLI::App* cmd, topicnet::RunConfig& config) {
    cmd->add_option("-o,--out-dir", config.output_dir, "Output directory")
        ->required();
}

void add_corpus_options(CLI::App* cmd, topicnet::RunConfig& config) {
    cmd->add_option("-m,--manifest", config.manifest_path,
                    "Corpus manifest (one JSON record per line)")
        ->required();
    cmd->add_option("--stopwords", config.stopword_path,
                    "Stopword list (default: bundled English list)");
    cmd->add_option("--synonyms", config.synonym_path,
                    "Keyword synonym map (TSV: surface, canonical)");
}

void add_model_options(CLI::App* cmd, topicnet::RunConfig& config) {
    cmd->add_option("-k,--k", config.k, "Number of topics")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", config.max_iter, "Maximum solver iterations")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--tol", config.tol, "Relative objective tolerance");
    cmd->add_option("--init", config.init, "Initialization: nndsvd or random");
    cmd->add_option("--seed", config.seed, "Seed for random initialization");
    cmd->add_option("--exclude", config.exclusion_path,
                    "Topic exclusion list (one index per line)");
    cmd->add_option("--top-terms", config.top_terms, "Terms listed per topic");
}

void add_network_options(CLI::App* cmd, topicnet::RunConfig& config) {
    cmd->add_option("--tau", config.tau, "Topic-selection proportion threshold")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--drop-isolates", config.drop_isolates,
                  "Drop isolated nodes from graph exports");
}

void add_dynamics_options(CLI::App* cmd, topicnet::RunConfig& config) {
    cmd->add_option("--betweenness-threshold", config.betweenness_threshold,
                    "Keep topics whose peak raw betweenness reaches this value");
    cmd->add_option("--top-n-keywords", config.top_n_keywords,
                    "Keywords kept in the betweenness series");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topic modeling and co-occurrence network analysis of a "
                 "timestamped document corpus"};
    app.set_config("--config", "", "Config file (key = value), overridden by flags");
    app.require_subcommand(1);

    topicnet::RunConfig config;
    std::string dtm_path, theta_path, processed_path;
    std::string topic_edges_path, keyword_edges_path;

    auto* preprocess = app.add_subcommand(
        "preprocess", "Tokenize, filter, stem, and build the log-TF-IDF matrix");
    add_corpus_options(preprocess, config);
    add_common_options(preprocess, config);
    preprocess->add_option("--min-df", config.min_df,
                           "Minimum document frequency for vocabulary terms")
        ->check(CLI::PositiveNumber);

    auto* fit = app.add_subcommand("fit", "Factorize the document-term matrix");
    fit->add_option("--dtm", dtm_path, "Matrix dump from the preprocess stage")
        ->required();
    add_model_options(fit, config);
    add_common_options(fit, config);

    auto* networks = app.add_subcommand(
        "networks", "Build topic and keyword co-occurrence networks");
    networks->add_option("--theta", theta_path, "theta.csv from the fit stage")
        ->required();
    networks->add_option("--processed", processed_path,
                         "processed.jsonl from the preprocess stage")
        ->required();
    networks->add_option("--exclude", config.exclusion_path, "Topic exclusion list");
    add_network_options(networks, config);
    add_common_options(networks, config);

    auto* metrics = app.add_subcommand(
        "metrics", "Network statistics, communities, and centrality rankings");
    metrics->add_option("--topic-edges", topic_edges_path, "Topic edge list CSV")
        ->required();
    metrics->add_option("--keyword-edges", keyword_edges_path,
                        "Keyword edge list CSV")
        ->required();
    add_common_options(metrics, config);

    auto* dynamics = app.add_subcommand(
        "dynamics", "Yearly snapshot networks: betweenness series and flows");
    dynamics->add_option("--theta", theta_path, "theta.csv from the fit stage")
        ->required();
    dynamics->add_option("--processed", processed_path,
                         "processed.jsonl from the preprocess stage")
        ->required();
    dynamics->add_option("--exclude", config.exclusion_path, "Topic exclusion list");
    dynamics->add_option("--tau", config.tau, "Topic-selection proportion threshold")
        ->check(CLI::PositiveNumber);
    add_dynamics_options(dynamics, config);
    add_common_options(dynamics, config);

    auto* pipeline =
        app.add_subcommand("pipeline", "Run every stage and write all artifacts");
    add_corpus_options(pipeline, config);
    pipeline->add_option("--labels", config.label_path,
                         "Topic hierarchy labels (TSV: id, low, middle, high)");
    add_model_options(pipeline, config);
    pipeline->add_option("--min-df", config.min_df,
                         "Minimum document frequency for vocabulary terms")
        ->check(CLI::PositiveNumber);
    add_network_options(pipeline, config);
    add_dynamics_options(pipeline, config);
    pipeline->add_flag("--per-year-wordcloud", config.per_year_wordcloud,
                       "Also write per-year keyword counts");
    pipeline->add_flag("--timings", config.include_timings,
                       "Record stage timings in run_report.json (breaks "
                       "byte-reproducibility)");
    add_common_options(pipeline, config);

    CLI11_PARSE(app, argc, argv);

    try {
        if (preprocess->parsed()) {
            topicnet::stage_preprocess(config);
        } else if (fit->parsed()) {
            topicnet::stage_fit(config, dtm_path);
        } else if (networks->parsed()) {
            topicnet::stage_networks(config, theta_path, processed_path);
        } else if (metrics->parsed()) {
            topicnet::stage_metrics(config, topic_edges_path, keyword_edges_path);
        } else if (dynamics->parsed()) {
            topicnet::stage_dynamics(config, theta_path, processed_path);
        } else if (pipeline->parsed()) {
            topicnet::run_pipeline(config);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
