#include "drod/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "drod/errors.hpp"

namespace drod {

namespace {

constexpr Eigen::Index kLeafSize = 32;

// Bounded worst-first heap of (rank_key, id) candidates, kept flat so the
// backing storage can be reused across queries.
using Candidate = std::pair<double, Eigen::Index>;

inline void offer(std::vector<Candidate>& heap, Eigen::Index k, double key, Eigen::Index id) {
    if (static_cast<Eigen::Index>(heap.size()) < k) {
        heap.emplace_back(key, id);
        std::push_heap(heap.begin(), heap.end());
    } else if (Candidate(key, id) < heap.front()) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = Candidate(key, id);
        std::push_heap(heap.begin(), heap.end());
    }
}

}  // namespace

struct SpatialIndex::Scratch {
    const double* q = nullptr;
    Eigen::Index self = -1;
    Eigen::Index k = 0;
    std::vector<Candidate> heap;
    // Lower bound on the rank key from q to the current subtree's region:
    // for L2 the sum of per-dimension squared gaps (tracked in dim_gap),
    // for L∞ the maximum per-dimension gap along the descent path.
    std::vector<double> dim_gap;
};

SpatialIndex::SpatialIndex(const Matrix& frame_points, bool use_linf)
    : n_(frame_points.rows()), d_(frame_points.cols()), linf_(use_linf) {
    if (n_ == 0 || d_ == 0) throw EmptyDataset("cannot index an empty point set");
    coords_.resize(static_cast<std::size_t>(n_ * d_));
    for (Eigen::Index i = 0; i < n_; ++i)
        for (Eigen::Index k = 0; k < d_; ++k)
            coords_[static_cast<std::size_t>(i * d_ + k)] = frame_points(i, k);
    perm_.resize(static_cast<std::size_t>(n_));
    std::iota(perm_.begin(), perm_.end(), Eigen::Index{0});
    nodes_.reserve(static_cast<std::size_t>(2 * n_ / kLeafSize + 2));
    root_ = build(0, n_);
    // Leaf scans walk points in perm_ order; keep a copy in that order so
    // the scans read memory sequentially.
    leaf_coords_.resize(coords_.size());
    for (Eigen::Index p = 0; p < n_; ++p) {
        const double* src = point(perm_[static_cast<std::size_t>(p)]);
        std::copy(src, src + d_, leaf_coords_.data() + p * d_);
    }
}

Eigen::Index SpatialIndex::build(Eigen::Index lo, Eigen::Index hi) {
    Node node;
    node.lo = lo;
    node.hi = hi;
    node.split_dim = -1;
    node.split_val = 0.0;
    node.left = node.right = -1;

    if (hi - lo > kLeafSize) {
        // Split on the widest dimension of this range.
        Eigen::Index dim = 0;
        double widest = -1.0;
        for (Eigen::Index k = 0; k < d_; ++k) {
            double mn = point(perm_[static_cast<std::size_t>(lo)])[k];
            double mx = mn;
            for (Eigen::Index p = lo + 1; p < hi; ++p) {
                const double v = point(perm_[static_cast<std::size_t>(p)])[k];
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            if (mx - mn > widest) {
                widest = mx - mn;
                dim = k;
            }
        }
        if (widest > 0.0) {
            const Eigen::Index mid = lo + (hi - lo) / 2;
            auto begin = perm_.begin();
            std::nth_element(begin + lo, begin + mid, begin + hi,
                             [&](Eigen::Index a, Eigen::Index b) {
                                 const double va = point(a)[dim];
                                 const double vb = point(b)[dim];
                                 return va != vb ? va < vb : a < b;
                             });
            node.split_dim = dim;
            node.split_val = point(perm_[static_cast<std::size_t>(mid)])[dim];
            const Eigen::Index id = static_cast<Eigen::Index>(nodes_.size());
            nodes_.push_back(node);
            const Eigen::Index left = build(lo, mid);
            const Eigen::Index right = build(mid, hi);
            nodes_[static_cast<std::size_t>(id)].left = left;
            nodes_[static_cast<std::size_t>(id)].right = right;
            return id;
        }
        // All points coincident in every dimension: keep one big leaf.
    }
    nodes_.push_back(node);
    return static_cast<Eigen::Index>(nodes_.size()) - 1;
}

void SpatialIndex::search(Eigen::Index node_id, double gap_key, Scratch& st) const {
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];

    if (node.split_dim < 0) {
        const double* row = leaf_coords_.data() + node.lo * d_;
        for (Eigen::Index p = node.lo; p < node.hi; ++p, row += d_) {
            const Eigen::Index id = perm_[static_cast<std::size_t>(p)];
            if (id == st.self) continue;
            // Once the heap is full, most candidates lose to the current
            // worst; give the kernel that bound so it can stop accumulating
            // as soon as a candidate is provably rejected.
            const double bound = static_cast<Eigen::Index>(st.heap.size()) == st.k
                                     ? st.heap.front().first
                                     : std::numeric_limits<double>::infinity();
            offer(st.heap, st.k, detail::rank_key_bounded(st.q, row, d_, linf_, bound), id);
        }
        return;
    }

    const double diff = st.q[node.split_dim] - node.split_val;
    const Eigen::Index near = diff < 0.0 ? node.left : node.right;
    const Eigen::Index far = diff < 0.0 ? node.right : node.left;

    search(near, gap_key, st);

    // Every far-side point is at least |diff| away in the split dimension;
    // fold that into the region bound and skip the subtree only when the
    // bound strictly beats the current worst candidate (equal keys must be
    // visited so that id tie-breaking stays exact).
    double far_gap;
    double saved = 0.0;
    if (linf_) {
        far_gap = std::max(gap_key, std::fabs(diff));
    } else {
        const double plane = diff * diff;
        saved = st.dim_gap[static_cast<std::size_t>(node.split_dim)];
        const double updated = std::max(saved, plane);
        st.dim_gap[static_cast<std::size_t>(node.split_dim)] = updated;
        far_gap = gap_key - saved + updated;
    }
    if (static_cast<Eigen::Index>(st.heap.size()) < st.k || far_gap <= st.heap.front().first)
        search(far, far_gap, st);
    if (!linf_) st.dim_gap[static_cast<std::size_t>(node.split_dim)] = saved;
}

void SpatialIndex::query_knn(Eigen::Index sample_id, Eigen::Index k,
                             std::vector<Eigen::Index>& ids, std::vector<double>& dists) const {
    if (sample_id < 0 || sample_id >= n_) throw KTooLarge("sample id out of range");
    if (k < 1 || k > n_ - 1)
        throw KTooLarge("k = " + std::to_string(k) + " outside [1, n-1] with n = " +
                        std::to_string(n_));

    // One scratch per thread; queries on the same thread reuse its buffers,
    // so steady-state queries allocate nothing.
    thread_local Scratch st;
    st.q = point(sample_id);
    st.self = sample_id;
    st.k = k;
    st.heap.clear();
    st.heap.reserve(static_cast<std::size_t>(k));
    if (!linf_) st.dim_gap.assign(static_cast<std::size_t>(d_), 0.0);
    search(root_, 0.0, st);

    // Heapsort leaves the candidates ascending by (key, id) — exactly the
    // output order.
    std::sort_heap(st.heap.begin(), st.heap.end());
    ids.resize(static_cast<std::size_t>(k));
    dists.resize(static_cast<std::size_t>(k));
    for (Eigen::Index p = 0; p < k; ++p) {
        ids[static_cast<std::size_t>(p)] = st.heap[static_cast<std::size_t>(p)].second;
        dists[static_cast<std::size_t>(p)] =
            detail::key_to_distance(st.heap[static_cast<std::size_t>(p)].first, linf_);
    }
}

std::vector<Eigen::Index> SpatialIndex::query_knn(Eigen::Index sample_id, Eigen::Index k) const {
    std::vector<Eigen::Index> ids;
    std::vector<double> dists;
    query_knn(sample_id, k, ids, dists);
    return ids;
}

double SpatialIndex::point_distance(Eigen::Index i, Eigen::Index j) const {
    return detail::key_to_distance(detail::rank_key(point(i), point(j), d_, linf_), linf_);
}

SpatialIndex build_index(const DataMatrix& data, const Metric& m) {
    return SpatialIndex(working_frame(data.values, m), m.linf());
}

}  // namespace drod
