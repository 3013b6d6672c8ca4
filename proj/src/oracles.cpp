#include "auction/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>

namespace auction {
namespace {

void check_size(const BipartiteInstance& inst, std::int64_t limit) {
  if (static_cast<std::int64_t>(inst.n_l) * inst.n_r > limit) {
    throw OracleSizeError("instance has " + std::to_string(inst.n_l) + "x" +
                          std::to_string(inst.n_r) + " vertex pairs, oracle limit is " +
                          std::to_string(limit));
  }
}

std::vector<std::vector<std::pair<ItemId, Weight>>> neighbors(const BipartiteInstance& inst) {
  std::vector<std::vector<std::pair<ItemId, Weight>>> adj(static_cast<std::size_t>(inst.n_l));
  for (const auto& e : inst.edges) adj[e.bidder].emplace_back(e.item, e.weight);
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

void check_tiny(const BipartiteInstance& inst) {
  if (inst.n_l > kBruteForceSide || inst.n_r > kBruteForceSide) {
    throw OracleSizeError("brute force is limited to 8 + 8 vertices");
  }
}

}  // namespace

OracleResult exact_mcm(const BipartiteInstance& inst, std::int64_t pair_limit) {
  check_size(inst, pair_limit);
  const auto adj = neighbors(inst);
  std::vector<BidderId> match_item(static_cast<std::size_t>(inst.n_r), kNone);
  std::vector<Weight> match_weight(static_cast<std::size_t>(inst.n_r), 0);
  std::vector<int> seen(static_cast<std::size_t>(inst.n_r), -1);

  std::function<bool(BidderId, int)> augment = [&](BidderId i, int stamp) {
    for (const auto& [j, w] : adj[i]) {
      if (seen[j] == stamp) continue;
      seen[j] = stamp;
      if (match_item[j] == kNone || augment(match_item[j], stamp)) {
        match_item[j] = i;
        match_weight[j] = w;
        return true;
      }
    }
    return false;
  };

  OracleResult out;
  for (BidderId i = 0; i < inst.n_l; ++i) {
    if (augment(i, i)) ++out.value;
  }
  for (ItemId j = 0; j < inst.n_r; ++j) {
    if (match_item[j] != kNone) out.witness.push_back({match_item[j], j, match_weight[j]});
  }
  return out;
}

OracleResult exact_mwm(const BipartiteInstance& inst, std::int64_t pair_limit) {
  check_size(inst, pair_limit);
  const int n = std::max(inst.n_l, inst.n_r);
  OracleResult out;
  if (n == 0) return out;

  // Minimum-cost assignment on cost = -profit; missing pairs have profit 0.
  std::vector<std::vector<std::int64_t>> cost(n + 1, std::vector<std::int64_t>(n + 1, 0));
  for (const auto& e : inst.edges) cost[e.bidder + 1][e.item + 1] = -e.weight;

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      std::int64_t delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost[i0][j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (int j = 1; j <= n; ++j) {
    const int i = p[j];
    if (i == 0 || i > inst.n_l || j > inst.n_r || cost[i][j] == 0) continue;
    out.witness.push_back({i - 1, j - 1, -cost[i][j]});
    out.value += -cost[i][j];
  }
  std::sort(out.witness.begin(), out.witness.end(),
            [](const Edge& a, const Edge& b) { return a.bidder < b.bidder; });
  return out;
}

namespace {

class Dinic {
 public:
  explicit Dinic(int n) : graph_(n), level_(n), iter_(n) {}

  int add_edge(int from, int to, std::int64_t cap) {
    graph_[from].push_back({to, static_cast<int>(graph_[to].size()), cap});
    graph_[to].push_back({from, static_cast<int>(graph_[from].size()) - 1, 0});
    return static_cast<int>(graph_[from].size()) - 1;
  }

  std::int64_t max_flow(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
    }
    return flow;
  }

  std::int64_t residual(int from, int index) const { return graph_[from][index].cap; }

 private:
  struct Arc {
    int to;
    int rev;
    std::int64_t cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (const auto& a : graph_[x]) {
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[x] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(int x, int t, std::int64_t f) {
    if (x == t) return f;
    for (int& k = iter_[x]; k < static_cast<int>(graph_[x].size()); ++k) {
      auto& a = graph_[x][k];
      if (a.cap <= 0 || level_[a.to] != level_[x] + 1) continue;
      const std::int64_t d = dfs(a.to, t, std::min(f, a.cap));
      if (d > 0) {
        a.cap -= d;
        graph_[a.to][a.rev].cap += d;
        return d;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> graph_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace

OracleResult exact_mcbm(const BipartiteInstance& inst, std::int64_t pair_limit) {
  check_size(inst, pair_limit);
  const int source = inst.n_l + inst.n_r;
  const int sink = source + 1;
  Dinic flow(sink + 1);
  for (BidderId i = 0; i < inst.n_l; ++i) flow.add_edge(source, i, inst.bidder_capacity(i));
  for (ItemId j = 0; j < inst.n_r; ++j) flow.add_edge(inst.n_l + j, sink, inst.item_capacity(j));
  std::vector<int> arc(inst.edges.size());
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    arc[e] = flow.add_edge(inst.edges[e].bidder, inst.n_l + inst.edges[e].item, 1);
  }
  OracleResult out;
  out.value = flow.max_flow(source, sink);
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    if (flow.residual(inst.edges[e].bidder, arc[e]) == 0) out.witness.push_back(inst.edges[e]);
  }
  return out;
}

namespace {

/// Best total over bidders [i, n_l) given the set of items already used.
std::int64_t best_with_mask(const std::vector<std::vector<std::pair<ItemId, Weight>>>& adj,
                            bool weighted) {
  const auto n_l = adj.size();
  const std::size_t masks = std::size_t{1} << kBruteForceSide;
  // table[i][mask]: best value from bidder i on with `mask` taken.
  std::vector<std::vector<std::int64_t>> table(n_l + 1, std::vector<std::int64_t>(masks, 0));
  for (std::size_t i = n_l; i-- > 0;) {
    for (std::size_t mask = 0; mask < masks; ++mask) {
      std::int64_t best = table[i + 1][mask];
      for (const auto& [j, w] : adj[i]) {
        if (mask & (std::size_t{1} << j)) continue;
        best = std::max(best, (weighted ? w : 1) + table[i + 1][mask | (std::size_t{1} << j)]);
      }
      table[i][mask] = best;
    }
  }
  return table[0][0];
}

}  // namespace

std::int64_t brute_force_mcm(const BipartiteInstance& inst) {
  check_tiny(inst);
  return best_with_mask(neighbors(inst), false);
}

std::int64_t brute_force_mwm(const BipartiteInstance& inst) {
  check_tiny(inst);
  return best_with_mask(neighbors(inst), true);
}

std::int64_t brute_force_mcbm(const BipartiteInstance& inst) {
  check_tiny(inst);
  const auto adj = neighbors(inst);
  // Residual item capacities packed 4 bits per item.
  std::uint64_t start = 0;
  for (ItemId j = 0; j < inst.n_r; ++j) {
    start |= static_cast<std::uint64_t>(inst.item_capacity(j)) << (4 * j);
  }
  std::vector<std::unordered_map<std::uint64_t, std::int64_t>> memo(adj.size());

  std::function<std::int64_t(std::size_t, std::uint64_t)> solve = [&](std::size_t i,
                                                                      std::uint64_t caps) {
    if (i == adj.size()) return std::int64_t{0};
    if (auto it = memo[i].find(caps); it != memo[i].end()) return it->second;
    const auto& list = adj[i];
    const auto cap = inst.bidder_capacity(static_cast<BidderId>(i));
    std::int64_t best = 0;
    for (std::uint32_t subset = 0; subset < (1u << list.size()); ++subset) {
      const int size = std::popcount(subset);
      if (size > cap) continue;
      std::uint64_t next = caps;
      bool ok = true;
      for (std::size_t e = 0; e < list.size() && ok; ++e) {
        if (!(subset & (1u << e))) continue;
        const auto shift = 4 * list[e].first;
        if (((next >> shift) & 0xF) == 0) ok = false;
        next -= std::uint64_t{1} << shift;
      }
      if (ok) best = std::max(best, size + solve(i + 1, next));
    }
    memo[i][caps] = best;
    return best;
  };
  return solve(0, start);
}

}  // namespace auction
