#include "matgraph/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace matgraph {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_double(const std::string& text, int line) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) {
    throw InputError("line " + std::to_string(line) + ": not a number: '" + t + "'");
  }
  return v;
}

long parse_index(const std::string& text, int line) {
  const double v = parse_double(text, line);
  if (v < 0.0 || v != std::floor(v) || v > 1e9) {
    throw InputError("line " + std::to_string(line) + ": bad index '" + trim(text) + "'");
  }
  return static_cast<long>(v);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_series_csv(std::ostream& out, const MatrixSeries& series) {
  out << "t,row,col,value\n";
  for (int t = 0; t < series.n(); ++t) {
    const RealMatrix& z = series.at(t);
    for (int j = 0; j < series.q(); ++j)
      for (int i = 0; i < series.p(); ++i)
        out << t << ',' << i << ',' << j << ',' << format_double(z(i, j)) << '\n';
  }
}

MatrixSeries read_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("series file is empty");
  std::vector<std::string> header;
  for (auto& f : split_fields(line)) header.push_back(trim(f));
  if (header != std::vector<std::string>{"t", "row", "col", "value"}) {
    throw InputError("series header must be 't,row,col,value'");
  }
  std::map<std::tuple<long, long, long>, double> cells;
  long n = 0, p = 0, q = 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 4) throw InputError("line " + std::to_string(lineno) + ": expected 4 fields");
    const long t = parse_index(f[0], lineno);
    const long i = parse_index(f[1], lineno);
    const long j = parse_index(f[2], lineno);
    const double v = parse_double(f[3], lineno);
    if (!std::isfinite(v)) throw InputError("line " + std::to_string(lineno) + ": non-finite value");
    if (!cells.emplace(std::make_tuple(t, i, j), v).second) {
      throw InputError("line " + std::to_string(lineno) + ": duplicate record");
    }
    n = std::max(n, t + 1);
    p = std::max(p, i + 1);
    q = std::max(q, j + 1);
  }
  if (cells.empty()) throw InputError("series file has no records");
  if (static_cast<long>(cells.size()) != n * p * q) {
    throw InputError("series grid incomplete: " + std::to_string(cells.size()) + " records for n=" +
                     std::to_string(n) + ", p=" + std::to_string(p) + ", q=" + std::to_string(q));
  }
  std::vector<RealMatrix> frames(static_cast<std::size_t>(n), RealMatrix(p, q));
  for (const auto& [key, v] : cells) {
    const auto [t, i, j] = key;
    frames[static_cast<std::size_t>(t)](i, j) = v;
  }
  return MatrixSeries(static_cast<int>(p), static_cast<int>(q), std::move(frames));
}

nlohmann::json to_json(const RealMatrix& m) {
  std::vector<double> data;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

nlohmann::json to_json(const ComplexMatrix& m) {
  std::vector<double> re, im;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

nlohmann::json to_json(const EdgeSet& edges) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [i, j] : edges.edges()) list.push_back({i, j});
  return {{"nodes", edges.nodes()}, {"edges", list}};
}

RealMatrix real_matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) throw InputError("matrix size mismatch");
  RealMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = data[static_cast<std::size_t>(i * cols + c)];
  return m;
}

ComplexMatrix complex_matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(re.size()) != rows * cols || re.size() != im.size()) {
    throw InputError("matrix size mismatch");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(i * cols + c);
      m(i, c) = {re[k], im[k]};
    }
  return m;
}

nlohmann::json truth_to_json(const GroundTruth& truth) {
  nlohmann::json b = nlohmann::json::array();
  for (const auto& m : truth.b) b.push_back(to_json(m));
  const EdgeSet rows = true_row_edges(truth);
  const EdgeSet cols = true_col_edges(truth);
  return {{"p", truth.p()},
          {"q", truth.q()},
          {"omega", to_json(truth.omega)},
          {"sigma", to_json(truth.sigma)},
          {"f", to_json(truth.f)},
          {"impulse_response", b},
          {"row_edges", to_json(rows)},
          {"col_edges", to_json(cols)},
          {"combined_edges", to_json(kpg_edges(rows, cols))}};
}

void write_dot(std::ostream& out, const std::string& name, const EdgeSet& edges,
               const RealMatrix& weights, const std::vector<std::string>& labels) {
  double top = 0.0;
  for (const auto& [i, j] : edges.edges()) top = std::max(top, std::abs(weights(i, j)));
  const auto label = [&](int v) {
    return labels.empty() ? std::to_string(v) : labels[static_cast<std::size_t>(v)];
  };
  out << "graph " << name << " {\n";
  for (int v = 0; v < edges.nodes(); ++v) out << "  " << v << " [label=\"" << label(v) << "\"];\n";
  for (const auto& [i, j] : edges.edges()) {
    const double w = top > 0.0 ? std::abs(weights(i, j)) / top : 0.0;
    out << "  " << i << " -- " << j << " [weight=" << format_double(w) << "];\n";
  }
  out << "}\n";
}

RealMatrix kronecker_weights(const RealMatrix& omega, const std::vector<ComplexMatrix>& phi) {
  const auto p = omega.rows();
  const auto q = phi.front().rows();
  RealMatrix sq = RealMatrix::Zero(q, q);
  for (const auto& b : phi) sq += b.cwiseAbs2();
  const RealMatrix group = sq.cwiseSqrt();
  RealMatrix out(p * q, p * q);
  for (Eigen::Index j = 0; j < q; ++j)
    for (Eigen::Index l = 0; l < q; ++l)
      out.block(j * p, l * p, p, p) = group(j, l) * omega.cwiseAbs();
  return out;
}

RawTable read_raw_csv(std::istream& in, int skip_columns) {
  if (skip_columns < 0) throw InputError("skip_columns must be non-negative");
  std::string line;
  if (!std::getline(in, line)) throw InputError("raw file is empty");
  const auto header = split_fields(line);
  if (static_cast<int>(header.size()) <= skip_columns) throw InputError("raw file has no data columns");
  RawTable table;
  for (std::size_t c = static_cast<std::size_t>(skip_columns); c < header.size(); ++c) {
    table.names.push_back(trim(header[c]));
  }
  table.columns.resize(table.names.size());
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != header.size()) {
      throw InputError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(header.size()) + " fields");
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      table.columns[c].push_back(parse_double(f[c + static_cast<std::size_t>(skip_columns)], lineno));
    }
  }
  return table;
}

}  // namespace matgraph
