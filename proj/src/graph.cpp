#include "causal/graph.hpp"

#include "causal/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <string>

namespace causal {

void validate(std::size_t n, std::span<const EdgeSpec> edges) {
  for (const auto& [a, b] : edges) {
    if (a == b) throw Error(Errc::SelfLoop, "edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    if (a >= n || b >= n) {
      throw Error(Errc::EndpointOutOfRange, "edge (" + std::to_string(a) + "," + std::to_string(b) +
                                                ") with n=" + std::to_string(n));
    }
  }
}

CommunicationGraph::CommunicationGraph(std::size_t n, std::span<const EdgeSpec> edges) : adjacency_(n) {
  validate(n, edges);
  for (const auto& [a, b] : edges) edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const auto& e : edges_) {
    adjacency_[e.a].push_back(e.b);
    adjacency_[e.b].push_back(e.a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

CommunicationGraph CommunicationGraph::star(std::size_t n) {
  std::vector<EdgeSpec> edges;
  for (ProcessId i = 1; i < n; ++i) edges.emplace_back(0, i);
  return CommunicationGraph(n, edges);
}

CommunicationGraph CommunicationGraph::complete(std::size_t n) {
  std::vector<EdgeSpec> edges;
  for (ProcessId i = 0; i < n; ++i)
    for (ProcessId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return CommunicationGraph(n, edges);
}

CommunicationGraph CommunicationGraph::cycle(std::size_t n) {
  std::vector<EdgeSpec> edges;
  for (ProcessId i = 0; i < n && n >= 3; ++i) edges.emplace_back(i, static_cast<ProcessId>((i + 1) % n));
  return CommunicationGraph(n, edges);
}

CommunicationGraph CommunicationGraph::path(std::size_t n) {
  std::vector<EdgeSpec> edges;
  for (ProcessId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return CommunicationGraph(n, edges);
}

bool CommunicationGraph::has_edge(ProcessId a, ProcessId b) const {
  if (a >= size() || b >= size()) return false;
  const auto& adj = adjacency_[a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

std::optional<ProcessId> CommunicationGraph::star_center() const {
  const auto n = size();
  if (n < 3 || edges_.size() != n - 1) return std::nullopt;
  for (ProcessId p = 0; p < n; ++p) {
    if (adjacency_[p].size() == n - 1) return p;
  }
  return std::nullopt;
}

CoverSet::CoverSet(std::size_t n, std::vector<ProcessId> members)
    : members_(std::move(members)), position_(n) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] >= n) throw Error(Errc::EndpointOutOfRange, "cover member " + std::to_string(members_[i]));
    position_[members_[i]] = i;
  }
}

std::optional<std::size_t> CoverSet::position(ProcessId p) const {
  if (p >= position_.size()) return std::nullopt;
  return position_[p];
}

namespace {

std::vector<bool> membership(std::size_t n, std::span<const ProcessId> s) {
  std::vector<bool> in(n, false);
  for (auto p : s) {
    if (p < n) in[p] = true;
  }
  return in;
}

bool covers(const CommunicationGraph& g, const std::vector<bool>& in) {
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return in[e.a] || in[e.b]; });
}

// Calls `visit` on every k-subset of 0..n-1 in lexicographic order until it returns true.
bool for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<ProcessId>&)>& visit) {
  if (k > n) return false;
  std::vector<ProcessId> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<ProcessId>(i);
  while (true) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool is_cover(const CommunicationGraph& g, std::span<const ProcessId> s) {
  return covers(g, membership(g.size(), s));
}

CoverSet vertex_cover(const CommunicationGraph& g, CoverMode mode, std::size_t exact_limit) {
  const auto n = g.size();
  if (mode == CoverMode::greedy) {
    std::vector<bool> matched(n, false);
    std::vector<ProcessId> members;
    for (const auto& e : g.edges()) {
      if (!matched[e.a] && !matched[e.b]) {
        matched[e.a] = matched[e.b] = true;
        members.push_back(e.a);
        members.push_back(e.b);
      }
    }
    return CoverSet(n, std::move(members));
  }

  if (n > exact_limit) {
    throw Error(Errc::TooLargeForExact, "n=" + std::to_string(n) + " exceeds limit " + std::to_string(exact_limit));
  }
  std::vector<ProcessId> found;
  for (std::size_t k = 0; k <= n; ++k) {
    const bool hit = for_each_subset(n, k, [&](const std::vector<ProcessId>& s) {
      if (!is_cover(g, s)) return false;
      found = s;
      return true;
    });
    if (hit) break;
  }
  return CoverSet(n, std::move(found));
}

CoverSet given_cover(const CommunicationGraph& g, std::vector<ProcessId> members) {
  for (auto p : members) {
    if (p >= g.size()) throw Error(Errc::InvalidCover, "cover member " + std::to_string(p) + " out of range");
  }
  if (!is_cover(g, members)) throw Error(Errc::InvalidCover, "given set does not cover every edge");
  return CoverSet(g.size(), std::move(members));
}

namespace {

// BFS distances from `source`, skipping removed vertices; -1 for unreachable.
std::vector<long> bfs(const CommunicationGraph& g, ProcessId source, const std::vector<bool>& removed) {
  std::vector<long> dist(g.size(), -1);
  std::deque<ProcessId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const auto p = queue.front();
    queue.pop_front();
    for (auto q : g.neighbors(p)) {
      if (removed[q] || dist[q] >= 0) continue;
      dist[q] = dist[p] + 1;
      queue.push_back(q);
    }
  }
  return dist;
}

}  // namespace

bool is_connected(const CommunicationGraph& g, std::span<const ProcessId> removed) {
  return diameter(g, removed).has_value();
}

std::optional<std::size_t> diameter(const CommunicationGraph& g, std::span<const ProcessId> removed) {
  const auto gone = membership(g.size(), removed);
  std::size_t best = 0;
  for (ProcessId p = 0; p < g.size(); ++p) {
    if (gone[p]) continue;
    const auto dist = bfs(g, p, gone);
    for (ProcessId q = 0; q < g.size(); ++q) {
      if (gone[q]) continue;
      if (dist[q] < 0) return std::nullopt;
      best = std::max(best, static_cast<std::size_t>(dist[q]));
    }
  }
  return best;
}

std::size_t vertex_connectivity(const CommunicationGraph& g) {
  const auto n = g.size();
  if (n < 2 || !is_connected(g)) throw Error(Errc::Disconnected, "vertex connectivity needs a connected graph, n >= 2");
  for (std::size_t k = 1; k + 2 <= n; ++k) {
    const bool cut = for_each_subset(n, k, [&](const std::vector<ProcessId>& s) { return !is_connected(g, s); });
    if (cut) return k;
  }
  return n - 1;
}

std::vector<ProcessId> non_cut_set(const CommunicationGraph& g) {
  if (vertex_connectivity(g) != 1) throw Error(Errc::NotConnectivityOne, "graph connectivity is not 1");
  std::vector<ProcessId> x;
  for (ProcessId p = 0; p < g.size(); ++p) {
    const ProcessId removed[] = {p};
    if (is_connected(g, removed)) x.push_back(p);
  }
  return x;
}

}  // namespace causal
