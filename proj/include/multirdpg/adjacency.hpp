#ifndef MULTIRDPG_ADJACENCY_HPP
#define MULTIRDPG_ADJACENCY_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace multirdpg {

// Symmetric 0/1 matrix with a zero diagonal: one undirected, unweighted,
// loop-free graph. Immutable after construction; the constructor validates
// the invariants.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(Eigen::MatrixXd entries);

  int n() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  int edge_count() const;
  // Edges as (i, j) pairs with i < j, row-major order.
  std::vector<std::pair<int, int>> edges() const;

 private:
  Eigen::MatrixXd entries_;
};

// Unordered, deduplicated node pairs on n nodes; carrier for edge-list files.
struct EdgeList {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, sorted
};

struct EdgeListReadResult {
  EdgeList edge_list;
  std::vector<std::string> warnings;  // duplicate lines, etc.
};

// Parses "i j" pairs (whitespace- or comma-separated), one per line, with an
// optional "n=<count>" header. Without a header the node count is inferred
// as max index + 1. Set one_based to shift indices down by one on read.
// Throws ParseError (with line number) on malformed rows, self-loops, or
// out-of-range indices.
EdgeListReadResult read_edge_list(std::istream& in, bool one_based = false);
EdgeListReadResult read_edge_list_file(const std::string& path,
                                       bool one_based = false);

AdjacencyMatrix to_adjacency(const EdgeList& edge_list);

void write_edge_list(const EdgeList& edge_list, std::ostream& out);

// Dense CSV rows of 0/1.
void write_adjacency_csv(const AdjacencyMatrix& a, std::ostream& out);

// Keeps a uniformly random subset of exactly target_edge_count edges.
// Deterministic given the seed. Throws DataError if the target exceeds the
// available edge count.
AdjacencyMatrix downsample_edges(const AdjacencyMatrix& a,
                                 int target_edge_count, std::uint64_t seed);

}  // namespace multirdpg

#endif  // MULTIRDPG_ADJACENCY_HPP
