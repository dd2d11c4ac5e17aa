#include "topicnet/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "topicnet/io.hpp"

namespace topicnet {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

template <typename F>
void run_stage(const std::string& name, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        throw std::runtime_error("stage " + name + ": " + e.what());
    }
}

StopwordSet load_stopwords_or_default(const RunConfig& config) {
    if (config.stopword_path.empty()) return default_stopwords();
    return load_stopwords(config.stopword_path);
}

SynonymMap load_synonyms_or_empty(const RunConfig& config) {
    if (config.synonym_path.empty()) return {};
    return load_synonym_map(config.synonym_path);
}

std::set<int> load_exclusions_or_empty(const RunConfig& config) {
    if (config.exclusion_path.empty()) return {};
    return load_exclusion_list(config.exclusion_path);
}

void validate_exclusions(const std::set<int>& excluded, int k) {
    std::string bad;
    for (int j : excluded)
        if (j < 0 || j >= k) bad += (bad.empty() ? "" : ", ") + std::to_string(j);
    if (!bad.empty())
        throw std::runtime_error("excluded topic indices outside [0, " +
                                 std::to_string(k) + "): " + bad);
}

fs::path out_path(const RunConfig& config, const char* name) {
    return fs::path(config.output_dir) / name;
}

void ensure_output_dir(const RunConfig& config) {
    if (config.output_dir.empty())
        throw std::runtime_error("report: no output directory configured");
    fs::create_directories(config.output_dir);
}

// ---------------------------------------------------------------------------
// Exporters
// ---------------------------------------------------------------------------

void write_vocabulary_csv(const fs::path& path, const Vocabulary& vocab) {
    atomic_write(path, [&](std::ostream& out) {
        out << "term,doc_freq\n";
        for (int t = 0; t < vocab.size(); ++t)
            out << csv_field(vocab.terms[t]) << ',' << vocab.doc_freq[t] << '\n';
    });
}

void write_w_csv(const fs::path& path, const TopicModel& model,
                 const std::vector<std::string>& doc_ids) {
    atomic_write(path, [&](std::ostream& out) {
        out << "doc_id";
        for (int j = 0; j < model.k; ++j) out << ",topic_" << j;
        out << '\n';
        for (Eigen::Index d = 0; d < model.w.rows(); ++d) {
            out << csv_field(doc_ids[d]);
            for (int j = 0; j < model.k; ++j) out << ',' << format_number(model.w(d, j));
            out << '\n';
        }
    });
}

void write_h_csv(const fs::path& path, const TopicModel& model,
                 const Vocabulary& vocab) {
    atomic_write(path, [&](std::ostream& out) {
        out << "topic";
        for (const auto& term : vocab.terms) out << ',' << csv_field(term);
        out << '\n';
        for (int j = 0; j < model.k; ++j) {
            out << j;
            for (Eigen::Index t = 0; t < model.h.cols(); ++t)
                out << ',' << format_number(model.h(j, t));
            out << '\n';
        }
    });
}

void write_topics_csv(const fs::path& path, const TopicModel& model,
                      const Vocabulary& vocab, int n_terms) {
    atomic_write(path, [&](std::ostream& out) {
        out << "topic_id,rank,term,weight\n";
        for (int j = 0; j < model.k; ++j) {
            if (model.excluded_topics.count(j)) continue;
            auto terms = top_terms(model, vocab, j, n_terms);
            for (std::size_t r = 0; r < terms.size(); ++r)
                out << j << ',' << (r + 1) << ',' << csv_field(terms[r].first) << ','
                    << format_number(terms[r].second) << '\n';
        }
    });
}

void write_model_summary(const fs::path& path, const TopicModel& model,
                         const TopicProportions& theta, const RunConfig& config) {
    json summary;
    summary["k"] = model.k;
    summary["iterations"] = model.objective_history.size() - 1;
    summary["final_objective"] = model.objective_history.back();
    summary["converged"] = model.converged;
    summary["init"] = config.init;
    summary["tol"] = config.tol;
    summary["max_iter"] = config.max_iter;
    summary["excluded_topics"] = model.excluded_topics;
    json zero_docs = json::array();
    for (int d : theta.zero_rows) zero_docs.push_back(theta.doc_ids[d]);
    summary["zero_proportion_docs"] = zero_docs;
    atomic_write(path, [&](std::ostream& out) { out << summary.dump(2) << '\n'; });
}

void write_yearly_scores_csv(const fs::path& path, const YearlyTopicScores& yearly,
                             const std::set<int>& excluded, int k) {
    atomic_write(path, [&](std::ostream& out) {
        out << "topic,year,score\n";
        for (int j = 0; j < k; ++j) {
            if (excluded.count(j)) continue;
            for (const auto& [year, scores] : yearly.scores)
                out << j << ',' << year << ',' << format_number(scores[j]) << '\n';
        }
    });
}

void write_group_proportions_csv(const fs::path& path, const GroupedScores& grouped) {
    atomic_write(path, [&](std::ostream& out) {
        out << "level,group,proportion\n";
        for (const auto& [group, value] : grouped.high_proportion)
            out << "high," << csv_field(group) << ',' << format_number(value) << '\n';
        for (const auto& [group, value] : grouped.middle_proportion)
            out << "middle," << csv_field(group) << ',' << format_number(value) << '\n';
    });
}

void write_group_yearly_csv(const fs::path& path, const GroupedScores& grouped) {
    atomic_write(path, [&](std::ostream& out) {
        out << "level,group,year,score\n";
        for (const auto& [group, by_year] : grouped.high_yearly)
            for (const auto& [year, score] : by_year)
                out << "high," << csv_field(group) << ',' << year << ','
                    << format_number(score) << '\n';
        for (const auto& [group, by_year] : grouped.middle_yearly)
            for (const auto& [year, score] : by_year)
                out << "middle," << csv_field(group) << ',' << year << ','
                    << format_number(score) << '\n';
    });
}

void write_wordcloud_csv(const fs::path& path, const KeywordCounts& counts) {
    atomic_write(path, [&](std::ostream& out) {
        out << "keyword,count\n";
        for (const auto& [keyword, count] : counts)
            out << csv_field(keyword) << ',' << count << '\n';
    });
}

void write_wordcloud_per_year_csv(const fs::path& path,
                                  const std::map<int, KeywordCounts>& by_year) {
    atomic_write(path, [&](std::ostream& out) {
        out << "year,keyword,count\n";
        for (const auto& [year, counts] : by_year)
            for (const auto& [keyword, count] : counts)
                out << year << ',' << csv_field(keyword) << ',' << count << '\n';
    });
}

json network_summary_json(const NetworkSummary& s) {
    json out;
    out["n_nodes"] = s.n_nodes;
    out["n_edges"] = s.n_edges;
    out["avg_degree"] = s.avg_degree;
    out["avg_clustering"] = s.avg_clustering;
    out["avg_path_length"] = s.avg_path_length;
    out["n_components"] = s.n_components;
    out["giant_fraction"] = s.giant_fraction;
    out["modularity"] = s.modularity;
    out["n_communities"] = s.n_communities;
    return out;
}

struct RankTable {
    std::string network;
    const WeightedGraph* graph;
    AverageRanking ranking;
};

AverageRanking rank_graph(const WeightedGraph& g) {
    DegreeStats degrees = degree_stats(g);
    CentralityScores degree_scores;
    degree_scores.metric = "degree";
    degree_scores.scores.assign(degrees.degree.begin(), degrees.degree.end());
    CentralityScores betweenness_scores = betweenness(g, /*normalized=*/true);
    CentralityScores eigen_scores = eigenvector_centrality(g);
    return average_rank({degree_scores, betweenness_scores, eigen_scores});
}

void write_average_rank_csv(const fs::path& path, const std::vector<RankTable>& tables) {
    atomic_write(path, [&](std::ostream& out) {
        out << "network,node,degree_rank,betweenness_rank,eigenvector_rank,average_rank\n";
        for (const auto& table : tables)
            for (const auto& entry : table.ranking.entries)
                out << table.network << ',' << csv_field(table.graph->label(entry.node))
                    << ',' << format_number(entry.ranks[0]) << ','
                    << format_number(entry.ranks[1]) << ','
                    << format_number(entry.ranks[2]) << ',' << format_rank(entry.average)
                    << '\n';
    });
}

void write_betweenness_series_csv(const fs::path& path,
                                  const std::vector<SeriesPoint>& topic_points,
                                  const std::vector<SeriesPoint>& keyword_points) {
    atomic_write(path, [&](std::ostream& out) {
        out << "network,node,year,betweenness\n";
        for (const auto& p : topic_points)
            out << "topic," << csv_field(p.node) << ',' << p.year << ','
                << format_number(p.value) << '\n';
        for (const auto& p : keyword_points)
            out << "keyword," << csv_field(p.node) << ',' << p.year << ','
                << format_number(p.value) << '\n';
    });
}

void write_alluvial_json(const fs::path& path, const SnapshotSeries& series,
                         const AlluvialData& data) {
    json out;
    json years = json::array();
    for (const auto& [year, g] : series.by_year) years.push_back(year);
    out["years"] = years;
    json blocks = json::array();
    for (const auto& b : data.blocks)
        blocks.push_back({{"year", b.year}, {"community", b.community}, {"size", b.size}});
    out["blocks"] = blocks;
    json flows = json::array();
    for (const auto& f : data.flows)
        flows.push_back({{"year_from", f.year_from},
                         {"from", f.from_community},
                         {"to", f.to_community},
                         {"flow", f.count}});
    out["flows"] = flows;
    atomic_write(path, [&](std::ostream& out_stream) { out_stream << out.dump(2) << '\n'; });
}

json config_json(const RunConfig& config) {
    json p;
    p["manifest"] = config.manifest_path;
    p["stopwords"] = config.stopword_path;
    p["synonyms"] = config.synonym_path;
    p["labels"] = config.label_path;
    p["exclusions"] = config.exclusion_path;
    p["k"] = config.k;
    p["tau"] = config.tau;
    p["min_df"] = config.min_df;
    p["max_iter"] = config.max_iter;
    p["tol"] = config.tol;
    p["init"] = config.init;
    p["seed"] = config.seed;
    p["top_terms"] = config.top_terms;
    p["betweenness_threshold"] = config.betweenness_threshold;
    p["top_n_keywords"] = config.top_n_keywords;
    p["per_year_wordcloud"] = config.per_year_wordcloud;
    p["drop_isolates"] = config.drop_isolates;
    return p;
}

FitOptions fit_options(const RunConfig& config) {
    FitOptions options;
    options.max_iter = config.max_iter;
    options.tol = config.tol;
    options.seed = config.seed;
    if (config.init == "nndsvd") {
        options.init = FitOptions::Init::kNndsvd;
    } else if (config.init == "random") {
        options.init = FitOptions::Init::kRandom;
    } else {
        throw std::runtime_error("report: unknown init \"" + config.init +
                                 "\" (expected nndsvd or random)");
    }
    return options;
}

}  // namespace

KeywordCounts wordcloud_counts(const std::vector<ProcessedDocument>& docs) {
    std::map<std::string, int> counts;
    for (const auto& doc : docs)
        for (const auto& kw : doc.canonical_keywords) ++counts[kw];
    KeywordCounts out(counts.begin(), counts.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

std::map<int, KeywordCounts> wordcloud_counts_per_year(
    const std::vector<ProcessedDocument>& docs, const std::vector<int>& doc_years) {
    if (docs.size() != doc_years.size())
        throw std::invalid_argument("report: doc_years does not align with corpus");
    std::map<int, std::vector<ProcessedDocument>> grouped;
    for (std::size_t d = 0; d < docs.size(); ++d)
        grouped[doc_years[d]].push_back(docs[d]);
    std::map<int, KeywordCounts> out;
    for (const auto& [year, members] : grouped) out[year] = wordcloud_counts(members);
    return out;
}

NetworkSummary summarize_network(const WeightedGraph& g) {
    NetworkSummary s;
    s.n_nodes = g.num_nodes();
    s.n_edges = static_cast<long long>(g.num_edges());
    s.avg_degree = degree_stats(g).average;
    s.avg_clustering = clustering(g).average;
    s.avg_path_length = avg_path_length(g);
    ComponentInfo comp = components(g);
    s.n_components = comp.n_components;
    s.giant_fraction = comp.giant_fraction;
    Partition partition = louvain(g);
    s.modularity = modularity(g, partition);
    s.n_communities = partition.num_communities();
    return s;
}

std::string format_rank(double rank) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", rank);
    return buf;
}

void write_processed_jsonl(const fs::path& path,
                           const std::vector<ProcessedDocument>& docs,
                           const std::vector<int>& doc_years) {
    if (docs.size() != doc_years.size())
        throw std::invalid_argument("report: doc_years does not align with corpus");
    atomic_write(path, [&](std::ostream& out) {
        for (std::size_t d = 0; d < docs.size(); ++d) {
            json record;
            record["id"] = docs[d].doc_id;
            record["year"] = doc_years[d];
            record["stems"] = docs[d].stems;
            record["keywords"] = docs[d].canonical_keywords;
            out << record.dump() << '\n';
        }
    });
}

std::pair<std::vector<ProcessedDocument>, std::vector<int>> read_processed_jsonl(
    const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("report: cannot open processed corpus \"" +
                                 path.string() + "\"");
    std::vector<ProcessedDocument> docs;
    std::vector<int> years;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json record = json::parse(line);
        ProcessedDocument doc;
        doc.doc_id = record.at("id").get<std::string>();
        doc.stems = record.at("stems").get<std::vector<std::string>>();
        for (const auto& kw : record.at("keywords"))
            doc.canonical_keywords.insert(kw.get<std::string>());
        docs.push_back(std::move(doc));
        years.push_back(record.at("year").get<int>());
    }
    return {std::move(docs), std::move(years)};
}

void write_theta_csv(const fs::path& path, const TopicProportions& theta,
                     const std::vector<int>& doc_years) {
    atomic_write(path, [&](std::ostream& out) {
        const int k = static_cast<int>(theta.theta.cols());
        out << "doc_id,year";
        for (int j = 0; j < k; ++j) out << ",topic_" << j;
        out << '\n';
        for (Eigen::Index d = 0; d < theta.theta.rows(); ++d) {
            out << csv_field(theta.doc_ids[d]) << ','
                << (static_cast<std::size_t>(d) < doc_years.size() ? doc_years[d] : 0);
            for (int j = 0; j < k; ++j) out << ',' << format_number(theta.theta(d, j));
            out << '\n';
        }
    });
}

std::pair<TopicProportions, std::vector<int>> read_theta_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("report: cannot open theta matrix \"" + path.string() +
                                 "\"");
    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("report: theta matrix \"" + path.string() +
                                 "\" is empty");
    int k = -2;  // doc_id + year columns
    for (char c : header)
        if (c == ',') ++k;
    ++k;
    if (k < 1)
        throw std::runtime_error("report: theta matrix \"" + path.string() +
                                 "\" has no topic columns");

    std::vector<std::string> doc_ids;
    std::vector<int> years;
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string field;
        std::getline(fields, field, ',');
        doc_ids.push_back(field);
        std::getline(fields, field, ',');
        years.push_back(std::stoi(field));
        std::vector<double> row;
        row.reserve(k);
        while (std::getline(fields, field, ',')) row.push_back(std::stod(field));
        if (static_cast<int>(row.size()) != k)
            throw std::runtime_error("report: theta row for \"" + doc_ids.back() +
                                     "\" has the wrong column count");
        rows.push_back(std::move(row));
    }

    TopicProportions theta;
    theta.doc_ids = std::move(doc_ids);
    theta.theta.resize(static_cast<Eigen::Index>(rows.size()), k);
    for (std::size_t d = 0; d < rows.size(); ++d) {
        double sum = 0.0;
        for (int j = 0; j < k; ++j) {
            theta.theta(d, j) = rows[d][j];
            sum += rows[d][j];
        }
        if (sum == 0.0) theta.zero_rows.push_back(static_cast<int>(d));
    }
    return {std::move(theta), std::move(years)};
}

// ---------------------------------------------------------------------------
// Stages
// ---------------------------------------------------------------------------

namespace {

struct PipelineState {
    Corpus corpus;
    StopwordSet stopwords;
    SynonymMap synonyms;
    TopicLabelMap labels;
    std::set<int> excluded;
    std::vector<ProcessedDocument> processed;
    std::vector<std::string> empty_stem_docs;
    DocTermMatrix matrix;
    TopicModel model;
    TopicProportions theta;
    YearlyTopicScores yearly;
    WeightedGraph topic_net;
    WeightedGraph keyword_net;
    bool alluvial_skipped = false;
};

void preprocess_into(PipelineState& state) {
    state.processed =
        preprocess_corpus(state.corpus, state.stopwords, state.synonyms);
    for (const auto& doc : state.processed)
        if (doc.stems.empty()) state.empty_stem_docs.push_back(doc.doc_id);
}

void export_networks(const RunConfig& config, const WeightedGraph& topic_net,
                     const WeightedGraph& keyword_net) {
    WeightedGraph topic_copy, keyword_copy;
    if (config.drop_isolates) {
        topic_copy = drop_isolates(topic_net);
        keyword_copy = drop_isolates(keyword_net);
    }
    const WeightedGraph& tg = config.drop_isolates ? topic_copy : topic_net;
    const WeightedGraph& kg = config.drop_isolates ? keyword_copy : keyword_net;
    write_edge_csv(out_path(config, "topic_edges.csv"), tg);
    write_graphml(out_path(config, "topic_network.graphml"), tg);
    write_edge_csv(out_path(config, "keyword_edges.csv"), kg);
    write_graphml(out_path(config, "keyword_network.graphml"), kg);
}

void export_metrics(const RunConfig& config, const WeightedGraph& topic_net,
                    const WeightedGraph& keyword_net) {
    json summary;
    summary["topic_network"] = network_summary_json(summarize_network(topic_net));
    summary["keyword_network"] = network_summary_json(summarize_network(keyword_net));
    atomic_write(out_path(config, "metrics_summary.json"),
                 [&](std::ostream& out) { out << summary.dump(2) << '\n'; });

    std::vector<RankTable> tables;
    tables.push_back({"topic", &topic_net, rank_graph(topic_net)});
    tables.push_back({"keyword", &keyword_net, rank_graph(keyword_net)});
    write_average_rank_csv(out_path(config, "average_rank.csv"), tables);
}

void export_dynamics(const RunConfig& config, PipelineState& state) {
    SnapshotSeries topic_series =
        topic_snapshots(state.theta.theta, config.tau, state.excluded,
                        state.corpus.years());
    SnapshotSeries keyword_series =
        keyword_snapshots(state.processed, state.corpus.years());

    auto topic_points = betweenness_series(topic_series, config.betweenness_threshold);
    auto keyword_points = betweenness_series_top(keyword_series, config.top_n_keywords);
    write_betweenness_series_csv(out_path(config, "betweenness_series.csv"),
                                 topic_points, keyword_points);

    if (topic_series.by_year.size() >= 2) {
        std::map<int, Partition> partitions;
        for (const auto& [year, g] : topic_series.by_year)
            partitions.emplace(year, louvain(g));
        AlluvialData data = alluvial_flows(topic_series, partitions);
        write_alluvial_json(out_path(config, "alluvial.json"), topic_series, data);
    } else {
        state.alluvial_skipped = true;  // flows need at least two snapshots
    }
}

}  // namespace

void stage_preprocess(const RunConfig& config) {
    ensure_output_dir(config);
    PipelineState state;
    run_stage("load", [&] {
        state.corpus = load_corpus(config.manifest_path);
        state.stopwords = load_stopwords_or_default(config);
        state.synonyms = load_synonyms_or_empty(config);
    });
    run_stage("preprocess", [&] {
        preprocess_into(state);
        write_processed_jsonl(out_path(config, "processed.jsonl"), state.processed,
                              state.corpus.years());
    });
    run_stage("dtm", [&] {
        Vocabulary vocab = build_vocabulary(state.processed, config.min_df);
        CountMatrix counts = build_counts(state.processed, vocab, state.corpus.years());
        state.matrix = tfidf(counts);
        write_vocabulary_csv(out_path(config, "vocabulary.csv"), state.matrix.vocab);
        write_dtm_tsv(out_path(config, "dtm.tsv"), state.matrix);
    });
}

void stage_fit(const RunConfig& config, const fs::path& dtm_path) {
    ensure_output_dir(config);
    DocTermMatrix matrix;
    std::set<int> excluded;
    run_stage("load", [&] {
        matrix = read_dtm_tsv(dtm_path);
        excluded = load_exclusions_or_empty(config);
    });
    TopicModel model;
    TopicProportions theta;
    run_stage("fit", [&] {
        validate_exclusions(excluded, config.k);
        model = fit(matrix, config.k, fit_options(config));
        model.excluded_topics = excluded;
        theta = proportions(model, matrix.row_ids);
        write_w_csv(out_path(config, "W.csv"), model, matrix.row_ids);
        write_h_csv(out_path(config, "H.csv"), model, matrix.vocab);
        write_topics_csv(out_path(config, "topics.csv"), model, matrix.vocab,
                         config.top_terms);
        write_theta_csv(out_path(config, "theta.csv"), theta, matrix.row_years);
        write_model_summary(out_path(config, "model_summary.json"), model, theta,
                            config);
    });
}

void stage_networks(const RunConfig& config, const fs::path& theta_path,
                    const fs::path& processed_path) {
    ensure_output_dir(config);
    TopicProportions theta;
    std::vector<ProcessedDocument> processed;
    std::set<int> excluded;
    run_stage("load", [&] {
        theta = read_theta_csv(theta_path).first;
        processed = read_processed_jsonl(processed_path).first;
        excluded = load_exclusions_or_empty(config);
    });
    run_stage("networks", [&] {
        validate_exclusions(excluded, static_cast<int>(theta.theta.cols()));
        WeightedGraph topic_net = topic_network(theta.theta, config.tau, excluded);
        WeightedGraph keyword_net = keyword_network(processed);
        export_networks(config, topic_net, keyword_net);
    });
}

void stage_metrics(const RunConfig& config, const fs::path& topic_edges_path,
                   const fs::path& keyword_edges_path) {
    ensure_output_dir(config);
    WeightedGraph topic_net, keyword_net;
    run_stage("load", [&] {
        topic_net = read_edge_csv(topic_edges_path);
        keyword_net = read_edge_csv(keyword_edges_path);
    });
    run_stage("metrics", [&] { export_metrics(config, topic_net, keyword_net); });
}

void stage_dynamics(const RunConfig& config, const fs::path& theta_path,
                    const fs::path& processed_path) {
    ensure_output_dir(config);
    PipelineState state;
    run_stage("load", [&] {
        auto [theta, years] = read_theta_csv(theta_path);
        state.theta = std::move(theta);
        auto [processed, processed_years] = read_processed_jsonl(processed_path);
        state.processed = std::move(processed);
        state.excluded = load_exclusions_or_empty(config);
        state.corpus.documents.resize(years.size());
        for (std::size_t d = 0; d < years.size(); ++d)
            state.corpus.documents[d].year = years[d];
    });
    run_stage("dynamics", [&] {
        validate_exclusions(state.excluded, static_cast<int>(state.theta.theta.cols()));
        export_dynamics(config, state);
    });
}

void run_pipeline(const RunConfig& config) {
    using clock = std::chrono::steady_clock;
    ensure_output_dir(config);
    PipelineState state;
    std::map<std::string, double> timings;
    std::vector<std::string> stages;

    auto timed_stage = [&](const std::string& name, auto&& body) {
        auto start = clock::now();
        run_stage(name, body);
        timings[name] =
            std::chrono::duration<double, std::milli>(clock::now() - start).count();
        stages.push_back(name);
    };

    timed_stage("load", [&] {
        state.corpus = load_corpus(config.manifest_path);
        state.stopwords = load_stopwords_or_default(config);
        state.synonyms = load_synonyms_or_empty(config);
        if (!config.label_path.empty())
            state.labels = load_topic_labels(config.label_path);
        state.excluded = load_exclusions_or_empty(config);
    });

    timed_stage("preprocess", [&] {
        preprocess_into(state);
        write_processed_jsonl(out_path(config, "processed.jsonl"), state.processed,
                              state.corpus.years());
        write_wordcloud_csv(out_path(config, "wordcloud_counts.csv"),
                            wordcloud_counts(state.processed));
        if (config.per_year_wordcloud)
            write_wordcloud_per_year_csv(
                out_path(config, "wordcloud_counts_per_year.csv"),
                wordcloud_counts_per_year(state.processed, state.corpus.years()));
    });

    timed_stage("dtm", [&] {
        Vocabulary vocab = build_vocabulary(state.processed, config.min_df);
        CountMatrix counts = build_counts(state.processed, vocab, state.corpus.years());
        state.matrix = tfidf(counts);
        write_vocabulary_csv(out_path(config, "vocabulary.csv"), state.matrix.vocab);
        write_dtm_tsv(out_path(config, "dtm.tsv"), state.matrix);
    });

    timed_stage("fit", [&] {
        validate_exclusions(state.excluded, config.k);
        state.model = fit(state.matrix, config.k, fit_options(config));
        state.model.excluded_topics = state.excluded;
        state.theta = proportions(state.model, state.matrix.row_ids);
        write_w_csv(out_path(config, "W.csv"), state.model, state.matrix.row_ids);
        write_h_csv(out_path(config, "H.csv"), state.model, state.matrix.vocab);
        write_topics_csv(out_path(config, "topics.csv"), state.model,
                         state.matrix.vocab, config.top_terms);
        write_theta_csv(out_path(config, "theta.csv"), state.theta,
                        state.corpus.years());
        write_model_summary(out_path(config, "model_summary.json"), state.model,
                            state.theta, config);
    });

    timed_stage("scores", [&] {
        state.yearly = yearly_scores(state.theta, state.corpus.years());
        write_yearly_scores_csv(out_path(config, "yearly_scores.csv"), state.yearly,
                                state.excluded, state.model.k);
        if (!config.label_path.empty()) {
            GroupedScores grouped = group_scores(state.yearly, state.theta,
                                                 state.labels, state.excluded);
            write_group_proportions_csv(out_path(config, "group_proportions.csv"),
                                        grouped);
            write_group_yearly_csv(out_path(config, "group_yearly_scores.csv"),
                                   grouped);
        }
    });

    timed_stage("networks", [&] {
        state.topic_net = topic_network(state.theta.theta, config.tau, state.excluded);
        state.keyword_net = keyword_network(state.processed);
        export_networks(config, state.topic_net, state.keyword_net);
    });

    timed_stage("metrics", [&] {
        export_metrics(config, state.topic_net, state.keyword_net);
    });

    timed_stage("dynamics", [&] { export_dynamics(config, state); });

    timed_stage("report", [&] {
        json report;
        report["parameters"] = config_json(config);
        json flagged;
        flagged["empty_stem_docs"] = state.empty_stem_docs;
        json zero_docs = json::array();
        for (int d : state.theta.zero_rows) zero_docs.push_back(state.theta.doc_ids[d]);
        flagged["zero_theta_docs"] = zero_docs;
        report["flagged"] = flagged;
        report["stages"] = stages;
        report["alluvial_skipped"] = state.alluvial_skipped;
        report["n_documents"] = state.corpus.documents.size();
        report["year_range"] = {state.corpus.min_year, state.corpus.max_year};
        report["vocabulary_size"] = state.matrix.vocab.size();
        if (config.include_timings) report["timings_ms"] = timings;
        atomic_write(out_path(config, "run_report.json"),
                     [&](std::ostream& out) { out << report.dump(2) << '\n'; });
    });
}

}  // namespace topicnet
