#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace nsyl {

/// Simple undirected graph with 1-based vertex numbers 1..vertex_count.
/// Edges are stored with u < v, sorted, without duplicates.
struct Graph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  /// Validates vertex range, rejects self-loops, normalizes edge order.
  static Graph make(std::size_t vertex_count,
                    std::vector<std::pair<std::size_t, std::size_t>> edges);
};

}  // namespace nsyl
