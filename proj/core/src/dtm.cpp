#include "topicnet/dtm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace topicnet {

Vocabulary build_vocabulary(const std::vector<ProcessedDocument>& processed,
                            int min_df) {
    if (min_df < 1) throw std::invalid_argument("dtm: min_df must be >= 1");
    if (processed.empty())
        throw std::runtime_error("dtm: cannot build a vocabulary from zero documents");

    std::map<std::string, int> df;
    for (const auto& doc : processed) {
        std::map<std::string, int> seen;
        for (const auto& s : doc.stems) seen.emplace(s, 1);
        for (const auto& [term, one] : seen) df[term] += one;
    }

    Vocabulary vocab;
    for (const auto& [term, count] : df) {
        if (count < min_df) continue;
        vocab.index.emplace(term, static_cast<int>(vocab.terms.size()));
        vocab.terms.push_back(term);
        vocab.doc_freq.push_back(count);
    }
    if (vocab.terms.empty())
        throw std::runtime_error("dtm: no term reaches min_df=" +
                                 std::to_string(min_df) + "; vocabulary is empty");
    return vocab;
}

CountMatrix build_counts(const std::vector<ProcessedDocument>& processed,
                         const Vocabulary& vocab,
                         const std::vector<int>& doc_years) {
    CountMatrix counts;
    counts.vocab = vocab;
    counts.rows.reserve(processed.size());
    for (const auto& doc : processed) {
        counts.row_ids.push_back(doc.doc_id);
        std::map<int, double> row;
        for (const auto& s : doc.stems) {
            auto it = vocab.index.find(s);
            if (it != vocab.index.end()) row[it->second] += 1.0;
        }
        counts.rows.emplace_back(row.begin(), row.end());
    }
    counts.row_years = doc_years;
    return counts;
}

DocTermMatrix tfidf(const CountMatrix& counts) {
    const auto n_docs = static_cast<int>(counts.rows.size());
    if (n_docs < 1) throw std::runtime_error("dtm: tfidf needs at least one document");
    const int n_terms = counts.vocab.size();

    // df recomputed from the counts so the matrix is self-consistent even if
    // the vocabulary came from a superset corpus.
    std::vector<int> df(n_terms, 0);
    for (const auto& row : counts.rows)
        for (const auto& [col, tf] : row) ++df[col];

    std::vector<Eigen::Triplet<double>> triplets;
    for (int d = 0; d < n_docs; ++d) {
        for (const auto& [col, tf] : counts.rows[d]) {
            if (df[col] == n_docs) continue;  // idf = ln(N/N) = 0
            double weight = (1.0 + std::log(tf)) * std::log(double(n_docs) / df[col]);
            triplets.emplace_back(d, col, weight);
        }
    }

    DocTermMatrix matrix;
    matrix.row_ids = counts.row_ids;
    matrix.row_years = counts.row_years;
    matrix.vocab = counts.vocab;
    matrix.weights.resize(n_docs, n_terms);
    matrix.weights.setFromTriplets(triplets.begin(), triplets.end());
    matrix.weights.makeCompressed();
    return matrix;
}

std::vector<std::string> empty_rows(const DocTermMatrix& matrix) {
    std::vector<int> nonzeros(matrix.n_docs(), 0);
    for (int k = 0; k < matrix.weights.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(matrix.weights, k); it; ++it)
            ++nonzeros[it.row()];
    std::vector<std::string> ids;
    for (Eigen::Index d = 0; d < matrix.n_docs(); ++d)
        if (nonzeros[d] == 0) ids.push_back(matrix.row_ids[d]);
    return ids;
}

}  // namespace topicnet
