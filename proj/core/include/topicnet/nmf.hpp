#ifndef TOPICNET_NMF_HPP
#define TOPICNET_NMF_HPP

#include <Eigen/Dense>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "topicnet/corpus.hpp"
#include "topicnet/dtm.hpp"

namespace topicnet {

/// Non-negative factor pair V ~ W * H with the per-iteration Frobenius
/// objective history. excluded_topics holds config-driven topic indices
/// removed from downstream analysis (the factors themselves keep all K rows).
struct TopicModel {
    int k = 0;
    Eigen::MatrixXd w;  ///< n_docs x k, document-topic loadings
    Eigen::MatrixXd h;  ///< k x n_terms, topic-term weights
    std::vector<double> objective_history;
    bool converged = false;
    std::set<int> excluded_topics;
};

struct FitOptions {
    int max_iter = 500;
    double tol = 1e-5;
    enum class Init { kNndsvd, kRandom } init = Init::kNndsvd;
    unsigned seed = 0;  ///< used by random init only
};

/// Row-stochastic topic proportions; rows of documents with an all-zero W row
/// stay zero and are listed in zero_rows.
struct TopicProportions {
    Eigen::MatrixXd theta;  ///< n_docs x k
    std::vector<std::string> doc_ids;
    std::vector<int> zero_rows;
};

/// Mean topic proportion per publication year.
struct YearlyTopicScores {
    /// year -> per-topic mean proportion (length K). Years without papers are
    /// absent, not zero.
    std::map<int, std::vector<double>> scores;
    std::map<int, int> paper_counts;
};

/// Per-group sums of topic scores at the middle and high hierarchy levels,
/// plus overall proportions (share of total theta mass).
struct GroupedScores {
    std::map<std::string, std::map<int, double>> middle_yearly;
    std::map<std::string, std::map<int, double>> high_yearly;
    std::map<std::string, double> middle_proportion;
    std::map<std::string, double> high_proportion;
};

/// Deterministic NNDSVD initialization from the K leading singular triplets:
/// each singular vector is split into its positive and negative parts, the
/// dominant-norm pair is kept and scaled by sqrt(sigma), and exact zeros are
/// replaced by 1e-9 so multiplicative updates are never blocked.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> init_nndsvd(const DocTermMatrix& v,
                                                        int k);

/// Alternating multiplicative updates minimizing 0.5 * ||V - WH||_F^2
/// (H-step then W-step, denominators floored at 1e-12). Stops when the
/// relative objective decrease falls below tol or after max_iter iterations.
TopicModel fit(const DocTermMatrix& v, int k, const FitOptions& options = {});

/// The n largest-weight terms of topic k, descending, ties broken
/// lexicographically. Throws for excluded or out-of-range topics.
std::vector<std::pair<std::string, double>> top_terms(const TopicModel& model,
                                                      const Vocabulary& vocab,
                                                      int topic, int n = 10);

/// theta[d,k] = W[d,k] / sum_j W[d,j] over non-excluded topics.
TopicProportions proportions(const TopicModel& model,
                             const std::vector<std::string>& doc_ids);

/// scores(k,y) = mean of theta[d,k] over documents published in year y.
YearlyTopicScores yearly_scores(const TopicProportions& theta,
                                const std::vector<int>& doc_years);

/// Aggregate per-topic scores by the user-supplied hierarchy. Every
/// non-excluded topic must be labeled; unlabeled topics raise an error that
/// lists their indices.
GroupedScores group_scores(const YearlyTopicScores& yearly,
                           const TopicProportions& theta,
                           const TopicLabelMap& labels,
                           const std::set<int>& excluded_topics);

/// 0.5 * ||V - WH||_F^2 evaluated without forming the dense product.
double frobenius_objective(const Eigen::SparseMatrix<double>& v,
                           const Eigen::MatrixXd& w, const Eigen::MatrixXd& h);

}  // namespace topicnet

#endif  // TOPICNET_NMF_HPP
