#ifndef TOPICNET_TEXTPREP_HPP
#define TOPICNET_TEXTPREP_HPP

#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "topicnet/corpus.hpp"

namespace topicnet {

using StopwordSet = std::unordered_set<std::string>;

/// One document after text preprocessing: ordered word stems (duplicates
/// preserved) and the deduplicated set of canonical author keywords.
struct ProcessedDocument {
    std::string doc_id;
    std::vector<std::string> stems;
    std::set<std::string> canonical_keywords;
};

inline constexpr int kMinTokenLength = 3;
inline constexpr int kMaxTokenLength = 30;

/// Maximal runs of ASCII letters, lowercased. Digits, punctuation and
/// non-ASCII bytes act as separators and never appear in the output.
std::vector<std::string> tokenize(std::string_view text);

/// Order-preserving filter: drops stopwords and tokens outside
/// [min_len, max_len].
std::vector<std::string> filter_tokens(const std::vector<std::string>& tokens,
                                       const StopwordSet& stopwords,
                                       int min_len = kMinTokenLength,
                                       int max_len = kMaxTokenLength);

/// Lowercase, replace hyphens by single spaces, collapse whitespace runs,
/// trim. Shared by keyword normalization and synonym-map loading so map
/// entries live in the same normal form.
std::string clean_keyword(std::string_view raw);

/// clean_keyword, then apply the synonym map once. Idempotent for any valid
/// SynonymMap whose canonical forms are themselves clean.
std::string normalize_keyword(std::string_view raw, const SynonymMap& synonyms);

/// Full per-document pipeline: stems = stem . filter . tokenize(body),
/// keywords normalized and deduplicated. Stems that fall below the minimum
/// length after stemming are dropped so the length invariant holds.
ProcessedDocument preprocess_document(const Document& doc,
                                      const StopwordSet& stopwords,
                                      const SynonymMap& synonyms);

/// Preprocess every document of a corpus, in corpus order.
std::vector<ProcessedDocument> preprocess_corpus(const Corpus& corpus,
                                                 const StopwordSet& stopwords,
                                                 const SynonymMap& synonyms);

/// The bundled default English stopword list (~170 words).
const StopwordSet& default_stopwords();

}  // namespace topicnet

#endif  // TOPICNET_TEXTPREP_HPP
