#include "topicnet/nmf.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace topicnet {
namespace {

constexpr double kInitEps = 1e-9;    // replaces zeros after NNDSVD
constexpr double kDenomFloor = 1e-12;  // multiplicative-update denominators

struct SvdTriplets {
    Eigen::MatrixXd u;        // m x k
    Eigen::VectorXd sigma;    // k
    Eigen::MatrixXd v;        // n x k
};

// Leading k singular triplets of a sparse matrix. Small problems go through
// an exact dense SVD; larger ones through deterministic randomized subspace
// iteration (fixed seed, 8 power steps), which is accurate far beyond what an
// initializer needs.
SvdTriplets truncated_svd(const Eigen::SparseMatrix<double>& a, int k) {
    const auto m = a.rows();
    const auto n = a.cols();

    if (std::min(m, n) <= 512) {
        Eigen::MatrixXd dense(a);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(dense,
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
        SvdTriplets out;
        out.u = svd.matrixU().leftCols(k);
        out.sigma = svd.singularValues().head(k);
        out.v = svd.matrixV().leftCols(k);
        return out;
    }

    const auto r = std::min<Eigen::Index>(k + 8, std::min(m, n));
    std::mt19937_64 rng(0x5eedu);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd omega(n, r);
    for (Eigen::Index j = 0; j < r; ++j)
        for (Eigen::Index i = 0; i < n; ++i) omega(i, j) = gauss(rng);

    Eigen::MatrixXd y = a * omega;
    Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(y)
                            .householderQ() * Eigen::MatrixXd::Identity(m, r);
    for (int it = 0; it < 8; ++it) {
        Eigen::MatrixXd z = a.transpose() * q;
        Eigen::MatrixXd qz = Eigen::HouseholderQR<Eigen::MatrixXd>(z)
                                 .householderQ() * Eigen::MatrixXd::Identity(n, r);
        y = a * qz;
        q = Eigen::HouseholderQR<Eigen::MatrixXd>(y).householderQ() *
            Eigen::MatrixXd::Identity(m, r);
    }

    Eigen::MatrixXd b = q.transpose() * a;  // r x n
    Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdTriplets out;
    out.u = q * svd.matrixU().leftCols(k);
    out.sigma = svd.singularValues().head(k);
    out.v = svd.matrixV().leftCols(k);
    return out;
}

}  // namespace

double frobenius_objective(const Eigen::SparseMatrix<double>& v,
                           const Eigen::MatrixXd& w, const Eigen::MatrixXd& h) {
    // 0.5(||V||^2 - 2<V,WH> + <W'W, HH'>): nonzero scan plus K x K grams.
    double v_sq = 0.0;
    double cross = 0.0;
    for (int outer = 0; outer < v.outerSize(); ++outer) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(v, outer); it; ++it) {
            v_sq += it.value() * it.value();
            cross += it.value() * w.row(it.row()).dot(h.col(it.col()));
        }
    }
    const Eigen::MatrixXd wtw = w.transpose() * w;
    const Eigen::MatrixXd hht = h * h.transpose();
    double wh_sq = wtw.cwiseProduct(hht).sum();
    return 0.5 * (v_sq - 2.0 * cross + wh_sq);
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> init_nndsvd(const DocTermMatrix& v,
                                                        int k) {
    const auto m = v.weights.rows();
    const auto n = v.weights.cols();
    if (k < 1) throw std::invalid_argument("nmf: K must be >= 1");
    if (k > std::min(m, n))
        throw std::invalid_argument(
            "nmf: K=" + std::to_string(k) + " exceeds the rank bound min(" +
            std::to_string(m) + ", " + std::to_string(n) + ")");

    SvdTriplets svd = truncated_svd(v.weights, k);

    Eigen::MatrixXd w0 = Eigen::MatrixXd::Zero(m, k);
    Eigen::MatrixXd h0 = Eigen::MatrixXd::Zero(k, n);
    for (int j = 0; j < k; ++j) {
        Eigen::VectorXd xp = svd.u.col(j).cwiseMax(0.0);
        Eigen::VectorXd xn = (-svd.u.col(j)).cwiseMax(0.0);
        Eigen::VectorXd yp = svd.v.col(j).cwiseMax(0.0);
        Eigen::VectorXd yn = (-svd.v.col(j)).cwiseMax(0.0);
        const double xp_norm = xp.norm(), xn_norm = xn.norm();
        const double yp_norm = yp.norm(), yn_norm = yn.norm();
        const double mp = xp_norm * yp_norm;
        const double mn = xn_norm * yn_norm;
        if (mp >= mn && mp > 0.0) {
            const double scale = std::sqrt(svd.sigma[j] * mp);
            w0.col(j) = scale / xp_norm * xp;
            h0.row(j) = scale / yp_norm * yp.transpose();
        } else if (mn > 0.0) {
            const double scale = std::sqrt(svd.sigma[j] * mn);
            w0.col(j) = scale / xn_norm * xn;
            h0.row(j) = scale / yn_norm * yn.transpose();
        }
    }
    w0 = (w0.array() <= 0.0).select(kInitEps, w0);
    h0 = (h0.array() <= 0.0).select(kInitEps, h0);
    return {std::move(w0), std::move(h0)};
}

TopicModel fit(const DocTermMatrix& v, int k, const FitOptions& options) {
    const auto m = v.weights.rows();
    const auto n = v.weights.cols();

    TopicModel model;
    model.k = k;
    if (options.init == FitOptions::Init::kNndsvd) {
        std::tie(model.w, model.h) = init_nndsvd(v, k);
    } else {
        if (k < 1 || k > std::min(m, n))
            throw std::invalid_argument("nmf: K outside the rank bound");
        std::mt19937_64 rng(options.seed);
        std::uniform_real_distribution<double> uniform(kInitEps, 1.0);
        model.w.resize(m, k);
        model.h.resize(k, n);
        for (Eigen::Index j = 0; j < k; ++j)
            for (Eigen::Index i = 0; i < m; ++i) model.w(i, j) = uniform(rng);
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < n; ++j) model.h(i, j) = uniform(rng);
    }

    double objective = frobenius_objective(v.weights, model.w, model.h);
    model.objective_history.push_back(objective);

    for (int iter = 1; iter <= options.max_iter; ++iter) {
        // H <- H .* (W'V) ./ max(W'W H, floor)
        {
            const Eigen::MatrixXd wtv = model.w.transpose() * v.weights;
            const Eigen::MatrixXd wtwh =
                (model.w.transpose() * model.w) * model.h;
            model.h.array() *= wtv.array() / wtwh.array().max(kDenomFloor);
        }
        // W <- W .* (VH') ./ max(W HH', floor)
        {
            const Eigen::MatrixXd vht = v.weights * model.h.transpose();
            const Eigen::MatrixXd whht =
                model.w * (model.h * model.h.transpose());
            model.w.array() *= vht.array() / whht.array().max(kDenomFloor);
        }

        double next = frobenius_objective(v.weights, model.w, model.h);
        if (!std::isfinite(next))
            throw std::runtime_error("nmf: objective became non-finite at iteration " +
                                     std::to_string(iter));
        model.objective_history.push_back(next);
        double rel_change = std::abs(objective - next) / std::max(objective, kDenomFloor);
        objective = next;
        if (rel_change < options.tol) {
            model.converged = true;
            break;
        }
    }
    return model;
}

std::vector<std::pair<std::string, double>> top_terms(const TopicModel& model,
                                                      const Vocabulary& vocab,
                                                      int topic, int n) {
    if (topic < 0 || topic >= model.k)
        throw std::invalid_argument("nmf: topic " + std::to_string(topic) +
                                    " out of range [0, " + std::to_string(model.k) +
                                    ")");
    if (model.excluded_topics.count(topic))
        throw std::invalid_argument("nmf: topic " + std::to_string(topic) +
                                    " is excluded");
    const int n_terms = static_cast<int>(model.h.cols());
    std::vector<int> order(n_terms);
    for (int t = 0; t < n_terms; ++t) order[t] = t;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double wa = model.h(topic, a), wb = model.h(topic, b);
        if (wa != wb) return wa > wb;
        return vocab.terms[a] < vocab.terms[b];
    });
    std::vector<std::pair<std::string, double>> out;
    const int count = std::min(n, n_terms);
    out.reserve(count);
    for (int i = 0; i < count; ++i)
        out.emplace_back(vocab.terms[order[i]], model.h(topic, order[i]));
    return out;
}

TopicProportions proportions(const TopicModel& model,
                             const std::vector<std::string>& doc_ids) {
    const auto n_docs = model.w.rows();
    TopicProportions out;
    out.doc_ids = doc_ids;
    out.theta = Eigen::MatrixXd::Zero(n_docs, model.k);
    for (Eigen::Index d = 0; d < n_docs; ++d) {
        double sum = 0.0;
        for (int j = 0; j < model.k; ++j)
            if (!model.excluded_topics.count(j)) sum += model.w(d, j);
        if (sum <= 0.0) {
            out.zero_rows.push_back(static_cast<int>(d));
            continue;
        }
        for (int j = 0; j < model.k; ++j)
            if (!model.excluded_topics.count(j)) out.theta(d, j) = model.w(d, j) / sum;
    }
    return out;
}

YearlyTopicScores yearly_scores(const TopicProportions& theta,
                                const std::vector<int>& doc_years) {
    if (doc_years.size() != static_cast<std::size_t>(theta.theta.rows()))
        throw std::invalid_argument("nmf: doc_years does not align with theta rows");
    const int k = static_cast<int>(theta.theta.cols());
    YearlyTopicScores out;
    for (std::size_t d = 0; d < doc_years.size(); ++d) {
        int year = doc_years[d];
        auto [it, inserted] = out.scores.try_emplace(year, std::vector<double>(k, 0.0));
        for (int j = 0; j < k; ++j) it->second[j] += theta.theta(d, j);
        ++out.paper_counts[year];
    }
    for (auto& [year, sums] : out.scores) {
        const int count = out.paper_counts.at(year);
        for (double& s : sums) s /= count;
    }
    return out;
}

GroupedScores group_scores(const YearlyTopicScores& yearly,
                           const TopicProportions& theta,
                           const TopicLabelMap& labels,
                           const std::set<int>& excluded_topics) {
    const int k = static_cast<int>(theta.theta.cols());
    std::vector<int> unlabeled;
    for (int j = 0; j < k; ++j)
        if (!excluded_topics.count(j) && !labels.count(j)) unlabeled.push_back(j);
    if (!unlabeled.empty()) {
        std::string list;
        for (int j : unlabeled) list += (list.empty() ? "" : ", ") + std::to_string(j);
        throw std::runtime_error("nmf: topics missing from the label map: " + list);
    }

    GroupedScores out;
    for (const auto& [year, scores] : yearly.scores) {
        for (int j = 0; j < k; ++j) {
            if (excluded_topics.count(j)) continue;
            const TopicLabel& label = labels.at(j);
            out.middle_yearly[label.middle][year] += scores[j];
            out.high_yearly[label.high][year] += scores[j];
        }
    }

    double total_mass = 0.0;
    std::map<std::string, double> middle_mass, high_mass;
    for (Eigen::Index d = 0; d < theta.theta.rows(); ++d) {
        for (int j = 0; j < k; ++j) {
            if (excluded_topics.count(j)) continue;
            double value = theta.theta(d, j);
            if (value == 0.0) continue;
            const TopicLabel& label = labels.at(j);
            total_mass += value;
            middle_mass[label.middle] += value;
            high_mass[label.high] += value;
        }
    }
    if (total_mass > 0.0) {
        for (const auto& [group, mass] : middle_mass)
            out.middle_proportion[group] = mass / total_mass;
        for (const auto& [group, mass] : high_mass)
            out.high_proportion[group] = mass / total_mass;
    }
    return out;
}

}  // namespace topicnet
