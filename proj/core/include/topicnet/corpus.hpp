#ifndef TOPICNET_CORPUS_HPP
#define TOPICNET_CORPUS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace topicnet {

/// One corpus record: the unit of analysis.
struct Document {
    std::string id;
    int year = 0;
    std::optional<std::string> title;
    std::string body;
    std::vector<std::string> keywords;  ///< raw author keywords, possibly empty
};

/// Validated, immutable document collection. Iteration order equals manifest
/// order, so every downstream index is reproducible.
struct Corpus {
    std::vector<Document> documents;
    int min_year = 0;
    int max_year = 0;

    std::vector<int> years() const;
};

/// Surface keyword form -> canonical form. Canonical forms are fixed points,
/// so applying the map twice equals applying it once.
class SynonymMap {
public:
    SynonymMap() = default;
    explicit SynonymMap(std::map<std::string, std::string> entries);

    /// Canonical form of `key` (identity when unmapped).
    const std::string& canonical(const std::string& key) const;

    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

/// Per-topic hierarchy labels supplied by the user.
struct TopicLabel {
    std::string low;
    std::string middle;
    std::string high;
};

using TopicLabelMap = std::map<int, TopicLabel>;

/// Load a line-oriented manifest of JSON records
/// {id, year, title?, text | text_path, keywords: [...]}.
/// Relative text_path entries resolve against the manifest's directory.
Corpus load_corpus(const std::string& manifest_path);

/// Load a two-column TSV (surface, canonical); '#' starts a comment and both
/// columns are case-folded. Chained entries ("a"->"b" with "b"->"c") are
/// rejected; chains must be pre-resolved by the user.
SynonymMap load_synonym_map(const std::string& path);

/// One word per line, '#' comments allowed, case-folded.
std::unordered_set<std::string> load_stopwords(const std::string& path);

/// TSV with columns topic_id, low_label, middle_group, high_group;
/// '#' comments allowed.
TopicLabelMap load_topic_labels(const std::string& path);

/// One topic index per line, '#' comments allowed.
std::set<int> load_exclusion_list(const std::string& path);

}  // namespace topicnet

#endif  // TOPICNET_CORPUS_HPP
