#pragma once

// Brute-force reference implementations used to validate the real library.
// Everything here is deliberately naive — O(n²) scans and exhaustive pair
// counting — and shares only the low-level distance kernels with the
// library, so index structures and rank formulas are checked independently.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "drod/metric.hpp"
#include "drod/types.hpp"

namespace oracle {

using drod::Matrix;

// Exact kNN by scanning every other point; (distance, id) ordering with the
// same rank keys the spatial index uses.
inline std::vector<Eigen::Index> brute_knn(const Matrix& frame, Eigen::Index query,
                                           Eigen::Index k, bool use_linf) {
    const Eigen::Index n = frame.rows();
    const Eigen::Index d = frame.cols();
    std::vector<double> row_q(static_cast<std::size_t>(d));
    for (Eigen::Index c = 0; c < d; ++c) row_q[static_cast<std::size_t>(c)] = frame(query, c);

    std::vector<std::pair<double, Eigen::Index>> cands;
    cands.reserve(static_cast<std::size_t>(n - 1));
    std::vector<double> row_i(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i == query) continue;
        for (Eigen::Index c = 0; c < d; ++c) row_i[static_cast<std::size_t>(c)] = frame(i, c);
        cands.emplace_back(drod::detail::rank_key(row_q.data(), row_i.data(), d, use_linf), i);
    }
    std::sort(cands.begin(), cands.end());
    std::vector<Eigen::Index> out;
    out.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index p = 0; p < k; ++p) out.push_back(cands[static_cast<std::size_t>(p)].second);
    return out;
}

// Mutual-kNN graph at a fixed scope: edge (i, j) iff each is within the
// other's first k neighbors. Returned as a sorted undirected edge set.
inline std::set<std::pair<Eigen::Index, Eigen::Index>> mutual_knn_edges(const Matrix& frame,
                                                                        Eigen::Index k,
                                                                        bool use_linf) {
    const Eigen::Index n = frame.rows();
    std::vector<std::vector<Eigen::Index>> knn(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        knn[static_cast<std::size_t>(i)] = brute_knn(frame, i, k, use_linf);

    auto contains = [&](Eigen::Index who, Eigen::Index whom) {
        const auto& list = knn[static_cast<std::size_t>(who)];
        return std::find(list.begin(), list.end(), whom) != list.end();
    };

    std::set<std::pair<Eigen::Index, Eigen::Index>> edges;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (contains(i, j) && contains(j, i)) edges.emplace(i, j);
    return edges;
}

// AUC by exhaustive outlier×inlier pair counting, ties worth one half.
inline double pair_counting_auc(const std::vector<double>& scores,
                                const std::vector<int>& labels) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j])
                wins += 1.0;
            else if (scores[i] == scores[j])
                wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

// Connected components of an undirected adjacency-list graph; component ids
// in order of least member.
inline std::vector<Eigen::Index> connected_components(
    const std::vector<std::vector<Eigen::Index>>& adjacency) {
    const auto n = static_cast<Eigen::Index>(adjacency.size());
    std::vector<Eigen::Index> comp(static_cast<std::size_t>(n), -1);
    Eigen::Index next = 0;
    std::vector<Eigen::Index> stack;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (comp[static_cast<std::size_t>(i)] >= 0) continue;
        comp[static_cast<std::size_t>(i)] = next;
        stack.assign(1, i);
        while (!stack.empty()) {
            const Eigen::Index v = stack.back();
            stack.pop_back();
            for (const Eigen::Index w : adjacency[static_cast<std::size_t>(v)]) {
                if (comp[static_cast<std::size_t>(w)] >= 0) continue;
                comp[static_cast<std::size_t>(w)] = next;
                stack.push_back(w);
            }
        }
        ++next;
    }
    return comp;
}

}  // namespace oracle
