// Dinic max-flow on integer capacities. Used to extract degree-exact
// bipartite submatchings; kept minimal and deterministic (augmentation order
// follows edge insertion order).
#pragma once

#include <queue>
#include <vector>

#include "chromaflux/errors.hpp"

namespace chromaflux {

class MaxFlow {
  public:
    explicit MaxFlow(int n) : head_(n, -1), level_(n), it_(n) {}

    // Returns a handle usable with flow_on() after run().
    int add_edge(int from, int to, int cap) {
        internal_check(cap >= 0, "negative capacity");
        int h = static_cast<int>(edges_.size());
        edges_.push_back({to, head_[from], cap, cap});
        head_[from] = h;
        edges_.push_back({from, head_[to], 0, 0});
        head_[to] = h + 1;
        return h;
    }

    long long run(int s, int t) {
        long long total = 0;
        while (bfs(s, t)) {
            it_ = head_;
            while (long long f = dfs(s, t, 1LL << 60)) total += f;
        }
        return total;
    }

    int flow_on(int handle) const { return edges_[handle].orig - edges_[handle].cap; }

  private:
    struct Arc {
        int to;
        int next;
        int cap;
        int orig;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int h = head_[x]; h != -1; h = edges_[h].next) {
                if (edges_[h].cap > 0 && level_[edges_[h].to] == -1) {
                    level_[edges_[h].to] = level_[x] + 1;
                    q.push(edges_[h].to);
                }
            }
        }
        return level_[t] != -1;
    }

    long long dfs(int x, int t, long long pushed) {
        if (x == t) return pushed;
        for (int& h = it_[x]; h != -1; h = edges_[h].next) {
            Arc& a = edges_[h];
            if (a.cap <= 0 || level_[a.to] != level_[x] + 1) continue;
            long long f = dfs(a.to, t, std::min<long long>(pushed, a.cap));
            if (f > 0) {
                a.cap -= static_cast<int>(f);
                edges_[h ^ 1].cap += static_cast<int>(f);
                return f;
            }
        }
        return 0;
    }

    std::vector<Arc> edges_;
    std::vector<int> head_, level_, it_;
};

}  // namespace chromaflux
