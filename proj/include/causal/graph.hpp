#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace causal {

using ProcessId = std::uint32_t;

/// Unordered edge, stored with `a < b`.
struct Edge {
  ProcessId a;
  ProcessId b;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeSpec = std::pair<ProcessId, ProcessId>;

/// Throws Error(SelfLoop | EndpointOutOfRange) on the first malformed edge.
void validate(std::size_t n, std::span<const EdgeSpec> edges);

/// Undirected communication graph over processes 0..n-1. Immutable once built;
/// duplicate edges collapse.
class CommunicationGraph {
 public:
  CommunicationGraph() = default;
  CommunicationGraph(std::size_t n, std::span<const EdgeSpec> edges);
  CommunicationGraph(std::size_t n, std::initializer_list<EdgeSpec> edges)
      : CommunicationGraph(n, std::span<const EdgeSpec>(edges.begin(), edges.size())) {}

  static CommunicationGraph star(std::size_t n);
  static CommunicationGraph complete(std::size_t n);
  static CommunicationGraph cycle(std::size_t n);
  static CommunicationGraph path(std::size_t n);

  std::size_t size() const noexcept { return adjacency_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<ProcessId>& neighbors(ProcessId p) const { return adjacency_.at(p); }
  bool has_edge(ProcessId a, ProcessId b) const;

  /// Center of a star graph (n >= 3, one process adjacent to all others, no other edges).
  std::optional<ProcessId> star_center() const;

  friend bool operator==(const CommunicationGraph&, const CommunicationGraph&) = default;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<ProcessId>> adjacency_;
};

/// A vertex cover together with the renaming that places members at positions 0..c-1.
class CoverSet {
 public:
  CoverSet() = default;
  /// Members are sorted; positions follow that order. Does not check coverage.
  CoverSet(std::size_t n, std::vector<ProcessId> members);

  const std::vector<ProcessId>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(ProcessId p) const { return position(p).has_value(); }
  std::optional<std::size_t> position(ProcessId p) const;
  ProcessId member_at(std::size_t position) const { return members_.at(position); }

  friend bool operator==(const CoverSet&, const CoverSet&) = default;

 private:
  std::vector<ProcessId> members_;
  std::vector<std::optional<std::size_t>> position_;
};

enum class CoverMode { exact, greedy };

inline constexpr std::size_t kExactCoverLimit = 20;

bool is_cover(const CommunicationGraph& g, std::span<const ProcessId> s);

/// Exact mode enumerates subsets by increasing size (first hit in lexicographic
/// order); greedy mode takes both endpoints of a maximal matching.
CoverSet vertex_cover(const CommunicationGraph& g, CoverMode mode,
                      std::size_t exact_limit = kExactCoverLimit);

/// Validates a user-supplied cover. Throws Error(InvalidCover) if it misses an edge.
CoverSet given_cover(const CommunicationGraph& g, std::vector<ProcessId> members);

bool is_connected(const CommunicationGraph& g, std::span<const ProcessId> removed = {});

/// Size of a minimum vertex cut; n-1 for complete graphs. Throws Error(Disconnected).
std::size_t vertex_connectivity(const CommunicationGraph& g);

/// Processes whose individual removal leaves the remaining graph connected.
/// Throws Error(NotConnectivityOne) unless vertex_connectivity(g) == 1.
std::vector<ProcessId> non_cut_set(const CommunicationGraph& g);

/// Hop diameter of the subgraph induced by removing `removed`; nullopt if that subgraph
/// is disconnected.
std::optional<std::size_t> diameter(const CommunicationGraph& g, std::span<const ProcessId> removed = {});

}  // namespace causal
