#include "matgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace matgraph {

EdgeSet::EdgeSet(int nodes, std::vector<std::pair<int, int>> edges)
    : nodes_(nodes), edges_(std::move(edges)) {
  for (auto& [i, j] : edges_) {
    if (i == j || i < 0 || j < 0 || i >= nodes_ || j >= nodes_) {
      throw std::invalid_argument("EdgeSet: invalid edge");
    }
    if (i > j) std::swap(i, j);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool EdgeSet::contains(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

std::vector<std::vector<bool>> EdgeSet::adjacency() const {
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(nodes_),
                                     std::vector<bool>(static_cast<std::size_t>(nodes_), false));
  for (const auto& [i, j] : edges_) {
    adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
  }
  return adj;
}

RealMatrix support_weights(const RealMatrix& w) {
  RealMatrix out = w.cwiseAbs();
  out.diagonal().setZero();
  return out;
}

RealMatrix group_weights(const std::vector<ComplexMatrix>& w) {
  if (w.empty()) return {};
  const auto q = w.front().rows();
  RealMatrix sq = RealMatrix::Zero(q, q);
  for (const auto& b : w) sq += b.cwiseAbs2();
  RealMatrix out = sq.cwiseSqrt();
  out.diagonal().setZero();
  return out;
}

namespace {

EdgeSet nonzero_edges(const RealMatrix& weights) {
  std::vector<std::pair<int, int>> edges;
  for (Eigen::Index i = 0; i < weights.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < weights.cols(); ++j) {
      if (weights(i, j) > 0.0 || weights(j, i) > 0.0) {
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return {static_cast<int>(weights.rows()), std::move(edges)};
}

}  // namespace

EdgeSet support_edges(const RealMatrix& w) { return nonzero_edges(support_weights(w)); }

EdgeSet group_edges(const std::vector<ComplexMatrix>& w) {
  return nonzero_edges(group_weights(w));
}

EdgeSet kpg_edges(const EdgeSet& rows, const EdgeSet& cols) {
  const int p = rows.nodes();
  const int q = cols.nodes();
  std::vector<std::pair<int, int>> edges;
  // same column, row edge
  for (int j = 0; j < q; ++j) {
    for (const auto& [i, k] : rows.edges()) edges.emplace_back(cell_node(i, j, p), cell_node(k, j, p));
  }
  // same row, column edge
  for (int i = 0; i < p; ++i) {
    for (const auto& [j, l] : cols.edges()) edges.emplace_back(cell_node(i, j, p), cell_node(i, l, p));
  }
  // both differ: both factor edges, in either orientation
  for (const auto& [i, k] : rows.edges()) {
    for (const auto& [j, l] : cols.edges()) {
      edges.emplace_back(cell_node(i, j, p), cell_node(k, l, p));
      edges.emplace_back(cell_node(i, l, p), cell_node(k, j, p));
    }
  }
  return {p * q, std::move(edges)};
}

EdgeReport extract_edges(const FitResult& result) {
  EdgeReport report;
  report.omega_weights = support_weights(result.omega_split);
  report.gamma_weights = group_weights(result.gamma_split);
  report.omega = nonzero_edges(report.omega_weights);
  report.gamma = nonzero_edges(report.gamma_weights);
  report.combined = kpg_edges(report.omega, report.gamma);
  return report;
}

}  // namespace matgraph
