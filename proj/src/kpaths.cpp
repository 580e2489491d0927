#include "crt/kpaths.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace crt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dijkstra with optional banned vertices/edges (for Yen spur searches).
// banned_node may be empty (nothing banned). banned_edges holds link indices.
Path dijkstra(const TopologySnapshot& snap, NodeId src, NodeId dst,
              const std::vector<char>* banned_node,
              const std::unordered_set<int>* banned_edges) {
    const int n = snap.num_nodes;
    std::vector<double> dist(n, kInf);
    std::vector<NodeId> parent(n, -1);
    using QE = std::pair<double, NodeId>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    dist[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        if (u == dst) break;
        auto base = snap.adj_offset[u];
        auto out = snap.out_links(u);
        for (size_t i = 0; i < out.size(); ++i) {
            const auto& l = out[i];
            if (banned_node && (*banned_node)[l.v]) continue;
            if (banned_edges && banned_edges->count(base + static_cast<int>(i))) continue;
            double nd = d + l.prop_delay_s;
            if (nd < dist[l.v]) {
                dist[l.v] = nd;
                parent[l.v] = u;
                pq.push({nd, l.v});
            }
        }
    }
    if (dist[dst] == kInf) return {};
    Path p;
    p.weight_s = dist[dst];
    for (NodeId v = dst; v != -1; v = parent[v]) p.nodes.push_back(v);
    std::reverse(p.nodes.begin(), p.nodes.end());
    return p;
}

}  // namespace

Path shortest_path(const TopologySnapshot& snap, NodeId src, NodeId dst) {
    if (src < 0 || src >= snap.num_nodes || dst < 0 || dst >= snap.num_nodes)
        throw std::invalid_argument("endpoint outside node range");
    if (src == dst) throw std::invalid_argument("src == dst");
    return dijkstra(snap, src, dst, nullptr, nullptr);
}

std::vector<double> shortest_distances(const TopologySnapshot& snap, NodeId src) {
    const int n = snap.num_nodes;
    std::vector<double> dist(n, kInf);
    using QE = std::pair<double, NodeId>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    dist[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (const auto& l : snap.out_links(u)) {
            double nd = d + l.prop_delay_s;
            if (nd < dist[l.v]) {
                dist[l.v] = nd;
                pq.push({nd, l.v});
            }
        }
    }
    return dist;
}

std::vector<Path> k_shortest_paths(const TopologySnapshot& snap, NodeId src, NodeId dst, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (src < 0 || src >= snap.num_nodes || dst < 0 || dst >= snap.num_nodes)
        throw std::invalid_argument("endpoint outside node range");
    if (src == dst) throw std::invalid_argument("src == dst");

    std::vector<Path> A;
    Path first = dijkstra(snap, src, dst, nullptr, nullptr);
    if (first.empty()) return A;
    A.push_back(std::move(first));

    // candidate pool ordered by (weight, vertex sequence); known paths for dedup
    auto cand_less = [](const Path& a, const Path& b) {
        if (a.weight_s != b.weight_s) return a.weight_s < b.weight_s;
        return a.nodes < b.nodes;
    };
    std::set<Path, decltype(cand_less)> pool(cand_less);
    std::set<std::vector<NodeId>> known;
    known.insert(A[0].nodes);

    std::vector<char> banned_node(snap.num_nodes, 0);
    std::unordered_set<int> banned_edges;

    while (static_cast<int>(A.size()) < k) {
        const Path& prev = A.back();
        double root_weight = 0.0;
        for (size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
            NodeId spur = prev.nodes[i];
            banned_edges.clear();
            // ban edges that would recreate an already-known path with this root
            for (const Path& q : A) {
                if (q.nodes.size() > i + 1 &&
                    std::equal(q.nodes.begin(), q.nodes.begin() + i + 1, prev.nodes.begin())) {
                    int li = snap.link_index(q.nodes[i], q.nodes[i + 1]);
                    if (li >= 0) banned_edges.insert(li);
                }
            }
            for (size_t j = 0; j < i; ++j) banned_node[prev.nodes[j]] = 1;

            Path spur_path = dijkstra(snap, spur, dst, &banned_node, &banned_edges);
            for (size_t j = 0; j < i; ++j) banned_node[prev.nodes[j]] = 0;

            if (!spur_path.empty()) {
                Path total;
                total.nodes.assign(prev.nodes.begin(), prev.nodes.begin() + i);
                total.nodes.insert(total.nodes.end(), spur_path.nodes.begin(),
                                   spur_path.nodes.end());
                total.weight_s = root_weight + spur_path.weight_s;
                if (known.insert(total.nodes).second) pool.insert(std::move(total));
            }
            const auto* l = snap.find_link(prev.nodes[i], prev.nodes[i + 1]);
            root_weight += l ? l->prop_delay_s : 0.0;
        }
        if (pool.empty()) break;
        A.push_back(*pool.begin());
        pool.erase(pool.begin());
    }

    std::sort(A.begin(), A.end(), cand_less);
    return A;
}

CandidateTable CandidateTable::build(const std::vector<TopologySnapshot>& snapshots,
                                     const std::vector<TtFlow>& flows, int k) {
    if (snapshots.empty()) throw std::invalid_argument("no snapshots");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    CandidateTable t;
    t.num_slots_ = static_cast<int>(snapshots.size());
    t.k_ = k;

    std::vector<LinkKey> pairs;
    pairs.reserve(flows.size());
    for (const TtFlow& f : flows) pairs.push_back(link_key(f.src, f.dst));
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    for (LinkKey p : pairs) t.table_[p].resize(t.num_slots_);

    // slots are independent; farm them out
    auto run_slot = [&](int slot) {
        for (LinkKey p : pairs) {
            t.table_[p][slot] =
                k_shortest_paths(snapshots[slot], link_key_u(p), link_key_v(p), k);
        }
    };
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (t.num_slots_ == 1 || hw == 1) {
        for (int s = 0; s < t.num_slots_; ++s) run_slot(s);
    } else {
        std::vector<std::future<void>> futs;
        for (int s = 0; s < t.num_slots_; ++s)
            futs.push_back(std::async(std::launch::async, run_slot, s));
        for (auto& f : futs) f.get();
    }
    return t;
}

std::span<const Path> CandidateTable::paths(NodeId src, NodeId dst, int slot) const {
    auto it = table_.find(link_key(src, dst));
    if (it == table_.end())
        throw std::invalid_argument("no candidate set for this (src,dst) pair");
    if (slot < 0 || slot >= num_slots_) throw std::invalid_argument("slot out of range");
    return it->second[slot];
}

}  // namespace crt
