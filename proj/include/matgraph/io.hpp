#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "matgraph/graph.hpp"
#include "matgraph/spectral.hpp"
#include "matgraph/synth.hpp"

namespace matgraph {

/// Malformed or inconsistent user input (files, config values).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shortest form that reads back to the same double (%.17g).
[[nodiscard]] std::string format_double(double v);

/// Long-format series: header `t,row,col,value`, one record per cell per
/// time, written t-major then column-major within a frame.
void write_series_csv(std::ostream& out, const MatrixSeries& series);
/// Any record order is accepted; dimensions come from the largest indices and
/// the grid must be complete with finite values.
[[nodiscard]] MatrixSeries read_series_csv(std::istream& in);

/// Real matrix as {"rows", "cols", "data"} with row-major data.
[[nodiscard]] nlohmann::json to_json(const RealMatrix& m);
/// Complex matrix as {"rows", "cols", "re", "im"}, both row-major.
[[nodiscard]] nlohmann::json to_json(const ComplexMatrix& m);
[[nodiscard]] nlohmann::json to_json(const EdgeSet& edges);
[[nodiscard]] RealMatrix real_matrix_from_json(const nlohmann::json& j);
[[nodiscard]] ComplexMatrix complex_matrix_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json truth_to_json(const GroundTruth& truth);

/// Undirected DOT graph. Edge weights are divided by the largest weight among
/// the listed edges; `labels` names the nodes (defaults to their indices).
void write_dot(std::ostream& out, const std::string& name, const EdgeSet& edges,
               const RealMatrix& weights, const std::vector<std::string>& labels = {});

/// Weights on the pq-node graph: |Omega_ik| * ||Phi^(jl)|| between cells
/// (i, j) and (k, l), diagonal group norms included.
[[nodiscard]] RealMatrix kronecker_weights(const RealMatrix& omega,
                                           const std::vector<ComplexMatrix>& phi);

/// Wide numeric table with a header row; the first `skip_columns` fields of
/// every row are ignored (dates, labels).
struct RawTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // one vector per kept column
};
[[nodiscard]] RawTable read_raw_csv(std::istream& in, int skip_columns = 0);

}  // namespace matgraph
