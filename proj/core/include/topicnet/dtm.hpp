#ifndef TOPICNET_DTM_HPP
#define TOPICNET_DTM_HPP

#include <Eigen/SparseCore>
#include <string>
#include <unordered_map>
#include <vector>

#include "topicnet/textprep.hpp"

namespace topicnet {

/// Deterministically ordered term dimension of the document-term matrix.
/// index is a bijection terms[i] <-> i; doc_freq counts documents, not
/// occurrences.
struct Vocabulary {
    std::vector<std::string> terms;
    std::unordered_map<std::string, int> index;
    std::vector<int> doc_freq;

    int size() const { return static_cast<int>(terms.size()); }
};

/// Per-document raw term occurrence counts over a fixed vocabulary.
struct CountMatrix {
    std::vector<std::string> row_ids;
    std::vector<int> row_years;
    Vocabulary vocab;
    /// rows[d] = (column, count) sorted by column; only nonzero counts stored.
    std::vector<std::vector<std::pair<int, double>>> rows;
};

/// Sparse log-TF-IDF matrix, rows in corpus order. All stored weights are
/// strictly positive; terms occurring in every document carry zero idf and
/// are dropped from storage.
struct DocTermMatrix {
    std::vector<std::string> row_ids;
    std::vector<int> row_years;
    Vocabulary vocab;
    Eigen::SparseMatrix<double> weights;  ///< n_docs x n_terms

    Eigen::Index n_docs() const { return weights.rows(); }
    Eigen::Index n_terms() const { return weights.cols(); }
};

/// All stems with document frequency >= min_df, sorted lexicographically.
/// Throws if no documents are given or no term passes the threshold.
Vocabulary build_vocabulary(const std::vector<ProcessedDocument>& processed,
                            int min_df = 2);

/// Raw counts of in-vocabulary stems per document. Documents whose stems all
/// fall outside the vocabulary yield an empty row.
CountMatrix build_counts(const std::vector<ProcessedDocument>& processed,
                         const Vocabulary& vocab,
                         const std::vector<int>& doc_years = {});

/// weight(d,t) = (1 + ln tf) * ln(N / df) for tf > 0; zero-weight entries
/// (df = N) are dropped.
DocTermMatrix tfidf(const CountMatrix& counts);

/// Document ids of empty matrix rows (no stored weights).
std::vector<std::string> empty_rows(const DocTermMatrix& matrix);

}  // namespace topicnet

#endif  // TOPICNET_DTM_HPP
