#include "multirdpg/adjacency.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "multirdpg/errors.hpp"
#include "multirdpg/rng.hpp"

namespace multirdpg {

AdjacencyMatrix::AdjacencyMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
  const Eigen::Index n = entries_.rows();
  if (n == 0 || entries_.cols() != n) {
    throw DataError("adjacency matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (entries_(i, i) != 0.0) {
      throw DataError("adjacency matrix must have a zero diagonal");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = entries_(i, j);
      if (v != 0.0 && v != 1.0) {
        throw DataError("adjacency matrix entries must be 0 or 1");
      }
      if (v != entries_(j, i)) {
        throw DataError("adjacency matrix must be symmetric");
      }
    }
  }
}

int AdjacencyMatrix::edge_count() const {
  int count = 0;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j)
      if (entries_(i, j) == 1.0) ++count;
  return count;
}

std::vector<std::pair<int, int>> AdjacencyMatrix::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j)
      if (entries_(i, j) == 1.0) out.emplace_back(i, j);
  return out;
}

namespace {

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

EdgeListReadResult read_edge_list(std::istream& in, bool one_based) {
  EdgeListReadResult result;
  std::set<std::pair<int, int>> seen;
  long long declared_n = -1;
  int max_index = -1;
  std::string line;
  int line_no = 0;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::string body = line;
    std::replace(body.begin(), body.end(), ',', ' ');
    if (first_content_line) {
      first_content_line = false;
      std::string trimmed;
      for (char c : body)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
      if (trimmed.rfind("n=", 0) == 0) {
        try {
          declared_n = std::stoll(trimmed.substr(2));
        } catch (const std::exception&) {
          throw ParseError(line_no, "malformed header: '" + line + "'");
        }
        if (declared_n <= 0) {
          throw ParseError(line_no, "node count must be positive");
        }
        continue;
      }
    }
    std::istringstream row(body);
    long long i = 0;
    long long j = 0;
    std::string extra;
    if (!(row >> i >> j) || (row >> extra)) {
      throw ParseError(line_no, "expected 'i j', got '" + line + "'");
    }
    if (one_based) {
      --i;
      --j;
    }
    if (i < 0 || j < 0) {
      throw ParseError(line_no, "negative node index");
    }
    if (i == j) {
      throw ParseError(line_no, "self-loop on node " + std::to_string(i));
    }
    if (declared_n >= 0 && (i >= declared_n || j >= declared_n)) {
      throw ParseError(line_no, "node index " + std::to_string(std::max(i, j)) +
                                    " out of range for n=" +
                                    std::to_string(declared_n));
    }
    const int lo = static_cast<int>(std::min(i, j));
    const int hi = static_cast<int>(std::max(i, j));
    if (!seen.insert({lo, hi}).second) {
      result.warnings.push_back("line " + std::to_string(line_no) +
                                ": duplicate edge " + std::to_string(i) + " " +
                                std::to_string(j) + " ignored");
      continue;
    }
    max_index = std::max(max_index, hi);
  }
  if (declared_n < 0) {
    if (max_index < 0) {
      throw DataError("empty edge list with no 'n=<count>' header");
    }
    declared_n = max_index + 1;
  }
  result.edge_list.n = static_cast<int>(declared_n);
  result.edge_list.edges.assign(seen.begin(), seen.end());
  return result;
}

EdgeListReadResult read_edge_list_file(const std::string& path,
                                       bool one_based) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open edge-list file: " + path);
  }
  return read_edge_list(in, one_based);
}

AdjacencyMatrix to_adjacency(const EdgeList& edge_list) {
  if (edge_list.n <= 0) {
    throw DataError("edge list has no node count");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(edge_list.n, edge_list.n);
  for (const auto& [i, j] : edge_list.edges) {
    if (i < 0 || j < 0 || i >= edge_list.n || j >= edge_list.n) {
      throw DataError("edge index out of range");
    }
    if (i == j) {
      throw DataError("edge list contains a self-loop");
    }
    m(i, j) = 1.0;
    m(j, i) = 1.0;
  }
  return AdjacencyMatrix(std::move(m));
}

void write_edge_list(const EdgeList& edge_list, std::ostream& out) {
  out << "n=" << edge_list.n << "\n";
  for (const auto& [i, j] : edge_list.edges) out << i << " " << j << "\n";
}

void write_adjacency_csv(const AdjacencyMatrix& a, std::ostream& out) {
  const int n = a.n();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j > 0) out << ",";
      out << static_cast<int>(a(i, j));
    }
    out << "\n";
  }
}

AdjacencyMatrix downsample_edges(const AdjacencyMatrix& a,
                                 int target_edge_count, std::uint64_t seed) {
  auto edges = a.edges();
  const int available = static_cast<int>(edges.size());
  if (target_edge_count < 0 || target_edge_count > available) {
    throw DataError("target edge count " + std::to_string(target_edge_count) +
                    " exceeds available " + std::to_string(available));
  }
  Rng rng(seed);
  // Partial Fisher-Yates: after k swaps the first k slots hold a uniform
  // k-subset of the edges.
  for (int t = 0; t < target_edge_count; ++t) {
    const auto pick =
        t + static_cast<int>(rng.below(static_cast<std::uint64_t>(available - t)));
    std::swap(edges[t], edges[pick]);
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.n(), a.n());
  for (int t = 0; t < target_edge_count; ++t) {
    m(edges[t].first, edges[t].second) = 1.0;
    m(edges[t].second, edges[t].first) = 1.0;
  }
  return AdjacencyMatrix(std::move(m));
}

}  // namespace multirdpg
