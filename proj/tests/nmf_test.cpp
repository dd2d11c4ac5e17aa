#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "topicnet/nmf.hpp"

using namespace topicnet;

namespace {

DocTermMatrix matrix_from_dense(const Eigen::MatrixXd& dense) {
    DocTermMatrix m;
    for (Eigen::Index d = 0; d < dense.rows(); ++d)
        m.row_ids.push_back("d" + std::to_string(d));
    m.row_years.assign(dense.rows(), 2000);
    for (Eigen::Index t = 0; t < dense.cols(); ++t) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "term%03d", static_cast<int>(t));
        m.vocab.index.emplace(buf, static_cast<int>(t));
        m.vocab.terms.push_back(buf);
        m.vocab.doc_freq.push_back(1);
    }
    std::vector<Eigen::Triplet<double>> triplets;
    for (Eigen::Index d = 0; d < dense.rows(); ++d)
        for (Eigen::Index t = 0; t < dense.cols(); ++t)
            if (dense(d, t) > 0.0) triplets.emplace_back(d, t, dense(d, t));
    m.weights.resize(dense.rows(), dense.cols());
    m.weights.setFromTriplets(triplets.begin(), triplets.end());
    return m;
}

Eigen::MatrixXd random_sparse_dense(std::mt19937& rng, int rows, int cols,
                                    double density) {
    std::uniform_real_distribution<double> value(0.1, 4.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (coin(rng) < density) dense(r, c) = value(rng);
    return dense;
}

double relative_reconstruction_error(const DocTermMatrix& v, const TopicModel& m) {
    Eigen::MatrixXd dense(v.weights);
    return (dense - m.w * m.h).norm() / dense.norm();
}

}  // namespace

TEST_CASE("nndsvd reconstructs a rank-1 matrix at K=1") {
    Eigen::MatrixXd dense(3, 2);
    dense << 2, 4, 1, 2, 3, 6;  // outer product of [2,1,3] and [1,2]
    DocTermMatrix v = matrix_from_dense(dense);
    auto [w0, h0] = init_nndsvd(v, 1);
    CHECK((dense - w0 * h0).norm() / dense.norm() < 1e-6);
    double objective = frobenius_objective(v.weights, w0, h0);
    CHECK(objective < 1e-10 * dense.squaredNorm());
}

TEST_CASE("nndsvd rejects K above the rank bound") {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Constant(3, 2, 1.0);
    DocTermMatrix v = matrix_from_dense(dense);
    CHECK_THROWS_AS(init_nndsvd(v, 3), std::invalid_argument);
    CHECK_THROWS_AS(init_nndsvd(v, 0), std::invalid_argument);
}

TEST_CASE("nndsvd factors are non-negative on random sparse matrices") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> dim(4, 18);
        int rows = dim(rng), cols = dim(rng);
        Eigen::MatrixXd dense = random_sparse_dense(rng, rows, cols, 0.4);
        if (dense.norm() == 0.0) dense(0, 0) = 1.0;
        DocTermMatrix v = matrix_from_dense(dense);
        int k = std::min({4, rows, cols});
        auto [w0, h0] = init_nndsvd(v, k);
        CHECK(w0.minCoeff() >= 0.0);
        CHECK(h0.minCoeff() >= 0.0);
    }
}

TEST_CASE("fit recovers an exact rank-1 factorization") {
    Eigen::MatrixXd dense(2, 2);
    dense << 2, 4, 1, 2;
    DocTermMatrix v = matrix_from_dense(dense);
    TopicModel model = fit(v, 1);
    CHECK(relative_reconstruction_error(v, model) < 1e-3);
}

TEST_CASE("zero iterations leave only the initial objective") {
    Eigen::MatrixXd dense(3, 3);
    dense << 1, 2, 0, 0, 1, 3, 2, 0, 1;
    DocTermMatrix v = matrix_from_dense(dense);
    FitOptions options;
    options.max_iter = 0;
    TopicModel model = fit(v, 2, options);
    CHECK(model.objective_history.size() == 1);
    CHECK(!model.converged);
}

TEST_CASE("planted 3-block corpus yields pure topics") {
    // Three disjoint 6-term groups; 10 documents per group.
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> value(0.5, 2.0);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(30, 18);
    for (int d = 0; d < 30; ++d) {
        int group = d / 10;
        for (int t = 0; t < 6; ++t) dense(d, group * 6 + t) = value(rng);
    }
    DocTermMatrix v = matrix_from_dense(dense);
    TopicModel model = fit(v, 3);

    for (int topic = 0; topic < 3; ++topic) {
        auto terms = top_terms(model, v.vocab, topic, 5);
        REQUIRE(terms.size() == 5);
        int group = v.vocab.index.at(terms[0].first) / 6;
        for (const auto& [term, weight] : terms) {
            CHECK(weight > 0.0);
            CHECK(v.vocab.index.at(term) / 6 == group);
        }
    }
}

TEST_CASE("objective history is non-increasing and factors stay non-negative") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_int_distribution<int> rows_dist(5, 40), cols_dist(5, 60),
            k_dist(1, 8);
        int rows = rows_dist(rng), cols = cols_dist(rng);
        Eigen::MatrixXd dense = random_sparse_dense(rng, rows, cols, 0.3);
        if (dense.norm() == 0.0) dense(0, 0) = 1.0;
        DocTermMatrix v = matrix_from_dense(dense);
        int k = std::min({k_dist(rng), rows, cols});
        FitOptions options;
        options.max_iter = 60;
        options.tol = 0.0;  // run all iterations
        TopicModel model = fit(v, k, options);
        for (std::size_t i = 1; i < model.objective_history.size(); ++i)
            CHECK(model.objective_history[i] <=
                  model.objective_history[i - 1] * (1.0 + 1e-9) + 1e-15);
        CHECK(model.w.minCoeff() >= 0.0);
        CHECK(model.h.minCoeff() >= 0.0);
    }
}

TEST_CASE("top_terms orders by weight then lexicographically") {
    TopicModel model;
    model.k = 1;
    model.w = Eigen::MatrixXd::Ones(1, 1);
    model.h = Eigen::MatrixXd::Zero(1, 6);
    Vocabulary vocab;
    for (const char* term : {"cpu", "cuda", "gpu", "kernel", "mesh", "zebra"}) {
        vocab.index.emplace(term, vocab.size());
        vocab.terms.push_back(term);
        vocab.doc_freq.push_back(1);
    }
    model.h(0, vocab.index.at("gpu")) = 5.0;
    model.h(0, vocab.index.at("cpu")) = 4.0;
    model.h(0, vocab.index.at("cuda")) = 3.0;

    auto terms = top_terms(model, vocab, 0, 10);
    REQUIRE(terms.size() == 6);
    CHECK(terms[0].first == "gpu");
    CHECK(terms[1].first == "cpu");
    CHECK(terms[2].first == "cuda");
    // zero-weight tail in lexicographic order
    CHECK(terms[3].first == "kernel");
    CHECK(terms[4].first == "mesh");
    CHECK(terms[5].first == "zebra");

    CHECK(top_terms(model, vocab, 0, 0).empty());
    CHECK_THROWS_AS(top_terms(model, vocab, 1, 10), std::invalid_argument);
    model.excluded_topics.insert(0);
    CHECK_THROWS_AS(top_terms(model, vocab, 0, 10), std::invalid_argument);
}

TEST_CASE("proportions normalize rows and flag zero rows") {
    TopicModel model;
    model.k = 2;
    model.w.resize(2, 2);
    model.w << 1, 3, 0, 0;
    model.h = Eigen::MatrixXd::Ones(2, 2);
    TopicProportions theta = proportions(model, {"d0", "d1"});
    CHECK(theta.theta(0, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(theta.theta(0, 1) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(theta.theta(1, 0) == 0.0);
    CHECK(theta.theta(1, 1) == 0.0);
    CHECK(theta.zero_rows == std::vector<int>{1});
}

TEST_CASE("excluded topics are zeroed and rows renormalized") {
    TopicModel model;
    model.k = 3;
    model.w.resize(1, 3);
    model.w << 1, 2, 1;
    model.h = Eigen::MatrixXd::Ones(3, 1);
    model.excluded_topics = {1};
    TopicProportions theta = proportions(model, {"d0"});
    CHECK(theta.theta(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(theta.theta(0, 1) == 0.0);
    CHECK(theta.theta(0, 2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("theta rows sum to one or zero") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> value(0.0, 2.0);
    TopicModel model;
    model.k = 5;
    model.w.resize(20, 5);
    for (int d = 0; d < 20; ++d)
        for (int j = 0; j < 5; ++j) model.w(d, j) = d % 4 == 3 ? 0.0 : value(rng);
    model.h = Eigen::MatrixXd::Ones(5, 1);
    std::vector<std::string> ids;
    for (int d = 0; d < 20; ++d) ids.push_back("d" + std::to_string(d));
    TopicProportions theta = proportions(model, ids);
    for (int d = 0; d < 20; ++d) {
        double sum = theta.theta.row(d).sum();
        CHECK((std::abs(sum - 1.0) < 1e-12 || sum == 0.0));
    }
}

TEST_CASE("yearly scores are per-year means") {
    TopicProportions theta;
    theta.doc_ids = {"a", "b", "c"};
    theta.theta.resize(3, 2);
    theta.theta << 0.2, 0.8, 0.4, 0.6, 1.0, 0.0;
    YearlyTopicScores yearly = yearly_scores(theta, {2005, 2005, 2007});
    CHECK(yearly.scores.at(2005)[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(yearly.scores.at(2005)[1] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(yearly.paper_counts.at(2005) == 2);
    CHECK(yearly.scores.count(2006) == 0);  // no papers: absent, not zero

    // single-document year: scores sum to the row sum (1)
    double sum = yearly.scores.at(2007)[0] + yearly.scores.at(2007)[1];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero proportions give zero yearly scores") {
    TopicProportions theta;
    theta.doc_ids = {"a", "b"};
    theta.theta = Eigen::MatrixXd::Zero(2, 2);
    YearlyTopicScores yearly = yearly_scores(theta, {2005, 2005});
    CHECK(yearly.scores.at(2005)[0] == 0.0);
}

TEST_CASE("group scores add member topics and cover all mass") {
    TopicProportions theta;
    theta.doc_ids = {"a", "b"};
    theta.theta.resize(2, 3);
    theta.theta << 0.2, 0.3, 0.5, 0.0, 0.1, 0.9;
    YearlyTopicScores yearly = yearly_scores(theta, {2005, 2005});

    TopicLabelMap labels;
    labels[0] = {"t0", "HPC", "Computing"};
    labels[1] = {"t1", "HPC", "Computing"};
    labels[2] = {"t2", "Sim", "Modeling"};
    GroupedScores grouped = group_scores(yearly, theta, labels, {});

    CHECK(grouped.middle_yearly.at("HPC").at(2005) ==
          doctest::Approx(0.3).epsilon(1e-12));
    // proportions over all theta mass sum to 1
    double total = 0.0;
    for (const auto& [group, p] : grouped.high_proportion) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // additivity: Computing = topics 0 and 1 mass over total
    CHECK(grouped.high_proportion.at("Computing") ==
          doctest::Approx((0.2 + 0.3 + 0.0 + 0.1) / 2.0).epsilon(1e-12));
}

TEST_CASE("group scores require a label for every non-excluded topic") {
    TopicProportions theta;
    theta.doc_ids = {"a"};
    theta.theta = Eigen::MatrixXd::Constant(1, 3, 1.0 / 3.0);
    YearlyTopicScores yearly = yearly_scores(theta, {2005});
    TopicLabelMap labels;
    labels[0] = {"t0", "m", "h"};
    labels[2] = {"t2", "m", "h"};
    CHECK_THROWS_WITH_AS(group_scores(yearly, theta, labels, {}),
                         doctest::Contains("1"), std::runtime_error);
    // excluding the unlabeled topic clears the error
    CHECK_NOTHROW(group_scores(yearly, theta, labels, {1}));
}

TEST_CASE("rescaling W and H by a positive diagonal keeps the objective") {
    std::mt19937 rng(17);
    Eigen::MatrixXd dense = random_sparse_dense(rng, 8, 10, 0.5);
    dense(0, 0) = 1.0;
    DocTermMatrix v = matrix_from_dense(dense);
    FitOptions options;
    options.max_iter = 20;
    TopicModel model = fit(v, 3, options);

    Eigen::VectorXd diag(3);
    diag << 0.5, 2.0, 3.5;
    Eigen::MatrixXd w_scaled = model.w * diag.asDiagonal();
    Eigen::MatrixXd h_scaled = diag.asDiagonal().inverse() * model.h;
    double a = frobenius_objective(v.weights, model.w, model.h);
    double b = frobenius_objective(v.weights, w_scaled, h_scaled);
    CHECK(b == doctest::Approx(a).epsilon(1e-9));
}

TEST_CASE("nndsvd-initialized fits are bit-identical across runs") {
    std::mt19937 rng(23);
    Eigen::MatrixXd dense = random_sparse_dense(rng, 12, 15, 0.4);
    dense(0, 0) = 1.0;
    DocTermMatrix v = matrix_from_dense(dense);
    FitOptions options;
    options.max_iter = 30;
    options.tol = 0.0;
    TopicModel a = fit(v, 4, options);
    TopicModel b = fit(v, 4, options);
    REQUIRE(a.objective_history.size() == b.objective_history.size());
    for (std::size_t i = 0; i < a.objective_history.size(); ++i)
        CHECK(a.objective_history[i] == b.objective_history[i]);
}
