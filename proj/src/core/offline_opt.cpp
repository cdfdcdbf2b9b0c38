#include "core/offline_opt.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "core/error.hpp"

namespace kdm {

namespace {

// Dinic with incremental reruns: raising an edge capacity and calling
// max_flow again pushes exactly the newly admitted flow.
class Dinic {
  public:
    explicit Dinic(int n) : graph_(n), level_(n), iter_(n) {}

    // Returns a handle for later capacity adjustment.
    std::pair<int, int> add_edge(int from, int to, long long cap) {
        graph_[from].push_back({to, cap, static_cast<int>(graph_[to].size())});
        graph_[to].push_back({from, 0, static_cast<int>(graph_[from].size()) - 1});
        return {from, static_cast<int>(graph_[from].size()) - 1};
    }

    void raise_capacity(std::pair<int, int> handle, long long extra) {
        graph_[handle.first][handle.second].cap += extra;
    }

    long long max_flow(int source, int sink) {
        long long flow = 0;
        while (bfs(source, sink)) {
            std::fill(iter_.begin(), iter_.end(), 0);
            long long f;
            while ((f = dfs(source, sink, std::numeric_limits<long long>::max())) > 0) flow += f;
        }
        return flow;
    }

  private:
    struct Edge {
        int to;
        long long cap;
        int rev;
    };

    std::vector<std::vector<Edge>> graph_;
    std::vector<int> level_;
    std::vector<int> iter_;

    bool bfs(int source, int sink) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> queue;
        level_[source] = 0;
        queue.push(source);
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop();
            for (const Edge& e : graph_[v]) {
                if (e.cap > 0 && level_[e.to] < 0) {
                    level_[e.to] = level_[v] + 1;
                    queue.push(e.to);
                }
            }
        }
        return level_[sink] >= 0;
    }

    long long dfs(int v, int sink, long long limit) {
        if (v == sink) return limit;
        for (int& i = iter_[v]; i < static_cast<int>(graph_[v].size()); ++i) {
            Edge& e = graph_[v][i];
            if (e.cap <= 0 || level_[v] + 1 != level_[e.to]) continue;
            long long got = dfs(e.to, sink, std::min(limit, e.cap));
            if (got > 0) {
                e.cap -= got;
                graph_[e.to][e.rev].cap += got;
                return got;
            }
        }
        return 0;
    }
};

struct Network {
    Dinic dinic;
    int source;
    int sink;
    std::vector<std::pair<int, int>> server_arcs;  // handles of server -> sink arcs

    // Server arcs start at the given capacities (possibly zero).
    Network(const Instance& inst, const std::vector<long long>& server_caps)
        : dinic(2 + static_cast<int>(inst.arrivals.size() + inst.servers.size())),
          source(0),
          sink(1 + static_cast<int>(inst.arrivals.size() + inst.servers.size())) {
        const int request_base = 1;
        const int server_base = 1 + static_cast<int>(inst.arrivals.size());
        for (size_t r = 0; r < inst.arrivals.size(); ++r) {
            dinic.add_edge(source, request_base + static_cast<int>(r), 1);
            for (int s : inst.arrivals[r].neighbors)
                dinic.add_edge(request_base + static_cast<int>(r), server_base + s, 1);
        }
        server_arcs.reserve(inst.servers.size());
        for (size_t s = 0; s < inst.servers.size(); ++s)
            server_arcs.push_back(dinic.add_edge(server_base + static_cast<int>(s), sink, server_caps[s]));
    }
};

}  // namespace

long long max_b_matching(const Instance& inst) {
    inst.check_structure();
    std::vector<long long> caps;
    caps.reserve(inst.servers.size());
    for (const auto& s : inst.servers) caps.push_back(s.capacity);
    Network net(inst, caps);
    return net.dinic.max_flow(net.source, net.sink);
}

Rational max_weight_b_matching(const Instance& inst) {
    inst.check_structure();
    std::vector<int> order(inst.servers.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int c = inst.servers[a].weight.compare(inst.servers[b].weight);
        if (c != 0) return c > 0;
        return a < b;
    });

    Network net(inst, std::vector<long long>(inst.servers.size(), 0));
    Rational total(0);
    for (int sid : order) {
        net.dinic.raise_capacity(net.server_arcs[sid], inst.servers[sid].capacity);
        long long gained = net.dinic.max_flow(net.source, net.sink);
        if (gained > 0) total += inst.servers[sid].weight * Rational(gained);
    }
    return total;
}

bool has_perfect_b_matching(const Instance& inst) {
    return max_b_matching(inst) == inst.total_capacity();
}

}  // namespace kdm
