#pragma once

#include <iosfwd>
#include <vector>

#include "nfvm/mesh.hpp"

namespace nfvm {

/// Assembled linear system in compressed sparse row layout. Constrained
/// (Dirichlet) rows hold exactly one unit diagonal entry and zero RHS.
struct SparseSystem {
  Index n = 0;
  std::vector<Index> row_offsets;
  std::vector<Index> col_indices;
  std::vector<double> values;
  std::vector<double> rhs;
  std::vector<Index> constrained_rows;

  std::vector<double> multiply(const std::vector<double>& x) const;
  double relative_residual(const std::vector<double>& x) const;

  /// Coordinate text dump, one `row col value` per line.
  void dump_coordinate(std::ostream& os) const;
};

/// Accumulates duplicate (row, col) contributions before compression.
class SystemBuilder {
 public:
  explicit SystemBuilder(Index n);

  void add(Index row, Index col, double value);
  void add_rhs(Index row, double value);
  void constrain_row(Index row);

  SparseSystem finalize();

 private:
  struct Triplet {
    Index row, col;
    double value;
  };
  Index n_;
  std::vector<Triplet> triplets_;
  std::vector<double> rhs_;
  std::vector<bool> constrained_;
};

/// Sparse LU solve; throws on numerical singularity. The returned vector
/// satisfies the 1e-12 relative residual contract.
std::vector<double> direct_solve(const SparseSystem& system);

}  // namespace nfvm
