#pragma once

#include <utility>
#include <vector>

#include "matgraph/flipflop.hpp"
#include "matgraph/linalg.hpp"

namespace matgraph {

/// Undirected simple graph stored as a sorted list of pairs (i < j).
class EdgeSet {
 public:
  explicit EdgeSet(int nodes = 0) : nodes_(nodes) {}
  EdgeSet(int nodes, std::vector<std::pair<int, int>> edges);

  [[nodiscard]] int nodes() const { return nodes_; }
  [[nodiscard]] std::size_t size() const { return edges_.size(); }
  [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  [[nodiscard]] bool contains(int i, int j) const;
  /// Dense symmetric 0/1 adjacency with zero diagonal.
  [[nodiscard]] std::vector<std::vector<bool>> adjacency() const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  int nodes_;
  std::vector<std::pair<int, int>> edges_;
};

/// Off-diagonal support of a symmetric matrix (exact nonzeros).
[[nodiscard]] EdgeSet support_edges(const RealMatrix& w);
/// Pairs (i, j) whose group vector across windows has nonzero norm.
[[nodiscard]] EdgeSet group_edges(const std::vector<ComplexMatrix>& w);

/// |W_ij| for the row factor and the group norms for the column factor.
[[nodiscard]] RealMatrix support_weights(const RealMatrix& w);
[[nodiscard]] RealMatrix group_weights(const std::vector<ComplexMatrix>& w);

/// Node of matrix cell (row i, column j) in the pq-node graph: j*p + i (vec order).
[[nodiscard]] inline int cell_node(int i, int j, int p) { return j * p + i; }

/// Kronecker product graph: cells (i, j) and (k, l) are adjacent iff
/// i != k, j != l and both factor edges exist; or j == l and {i, k} is a row
/// edge; or i == k and {j, l} is a column edge.
[[nodiscard]] EdgeSet kpg_edges(const EdgeSet& rows, const EdgeSet& cols);

struct EdgeReport {
  EdgeSet omega;     // p nodes
  EdgeSet gamma;     // q nodes
  EdgeSet combined;  // pq nodes
  RealMatrix omega_weights;
  RealMatrix gamma_weights;
};

/// Edge sets read from the split variables of the last inner solves.
[[nodiscard]] EdgeReport extract_edges(const FitResult& result);

}  // namespace matgraph
