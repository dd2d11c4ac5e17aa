#include "topicnet/textprep.hpp"

#include <cctype>

#include "topicnet/stemmer.hpp"

namespace topicnet {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (c >= 'A' && c <= 'Z') {
            current.push_back(static_cast<char>(c - 'A' + 'a'));
        } else if (c >= 'a' && c <= 'z') {
            current.push_back(static_cast<char>(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::vector<std::string> filter_tokens(const std::vector<std::string>& tokens,
                                       const StopwordSet& stopwords,
                                       int min_len, int max_len) {
    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    for (const auto& token : tokens) {
        auto len = static_cast<int>(token.size());
        if (len < min_len || len > max_len) continue;
        if (stopwords.count(token)) continue;
        kept.push_back(token);
    }
    return kept;
}

std::string clean_keyword(std::string_view raw) {
    std::string cleaned;
    cleaned.reserve(raw.size());
    bool pending_space = false;
    for (unsigned char c : raw) {
        char mapped;
        if (c == '-' || std::isspace(c))
            mapped = ' ';
        else
            mapped = static_cast<char>(std::tolower(c));
        if (mapped == ' ') {
            pending_space = !cleaned.empty();
        } else {
            if (pending_space) cleaned.push_back(' ');
            pending_space = false;
            cleaned.push_back(mapped);
        }
    }
    return cleaned;
}

std::string normalize_keyword(std::string_view raw, const SynonymMap& synonyms) {
    return synonyms.canonical(clean_keyword(raw));
}

ProcessedDocument preprocess_document(const Document& doc,
                                      const StopwordSet& stopwords,
                                      const SynonymMap& synonyms) {
    ProcessedDocument out;
    out.doc_id = doc.id;

    auto filtered = filter_tokens(tokenize(doc.body), stopwords);
    out.stems.reserve(filtered.size());
    for (const auto& token : filtered) {
        std::string stemmed = stem(token);
        // Stemming can shorten a token below the minimum length ("its" -> "it");
        // such stems violate the length invariant and are dropped.
        if (static_cast<int>(stemmed.size()) >= kMinTokenLength)
            out.stems.push_back(std::move(stemmed));
    }

    for (const auto& raw : doc.keywords) {
        std::string canonical = normalize_keyword(raw, synonyms);
        if (!canonical.empty()) out.canonical_keywords.insert(std::move(canonical));
    }
    return out;
}

std::vector<ProcessedDocument> preprocess_corpus(const Corpus& corpus,
                                                 const StopwordSet& stopwords,
                                                 const SynonymMap& synonyms) {
    std::vector<ProcessedDocument> out;
    out.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents)
        out.push_back(preprocess_document(doc, stopwords, synonyms));
    return out;
}

const StopwordSet& default_stopwords() {
    // Standard English list (the NLTK set, minus apostrophe forms).
    static const StopwordSet words = {
        "i",       "me",      "my",       "myself",   "we",       "our",
        "ours",    "ourselves", "you",    "your",     "yours",    "yourself",
        "yourselves", "he",   "him",      "his",      "himself",  "she",
        "her",     "hers",    "herself",  "it",       "its",      "itself",
        "they",    "them",    "their",    "theirs",   "themselves", "what",
        "which",   "who",     "whom",     "this",     "that",     "these",
        "those",   "am",      "is",       "are",      "was",      "were",
        "be",      "been",    "being",    "have",     "has",      "had",
        "having",  "do",      "does",     "did",      "doing",    "a",
        "an",      "the",     "and",      "but",      "if",       "or",
        "because", "as",      "until",    "while",    "of",       "at",
        "by",      "for",     "with",     "about",    "against",  "between",
        "into",    "through", "during",   "before",   "after",    "above",
        "below",   "to",      "from",     "up",       "down",     "in",
        "out",     "on",      "off",      "over",     "under",    "again",
        "further", "then",    "once",     "here",     "there",    "when",
        "where",   "why",     "how",      "all",      "any",      "both",
        "each",    "few",     "more",     "most",     "other",    "some",
        "such",    "no",      "nor",      "not",      "only",     "own",
        "same",    "so",      "than",     "too",      "very",     "s",
        "t",       "can",     "will",     "just",     "don",      "should",
        "now",     "d",       "ll",       "m",        "o",        "re",
        "ve",      "y",       "ain",      "aren",     "couldn",   "didn",
        "doesn",   "hadn",    "hasn",     "haven",    "isn",      "ma",
        "mightn",  "mustn",   "needn",    "shan",     "shouldn",  "wasn",
        "weren",   "won",     "wouldn",   "could",    "would",    "shall",
        "might",   "must",    "cannot",   "ought"};
    return words;
}

}  // namespace topicnet
