#include "nfvm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace nfvm {

SystemBuilder::SystemBuilder(Index n) : n_(n), rhs_(n, 0.0), constrained_(n, false) {
  if (n <= 0) throw std::invalid_argument("system dimension must be positive");
}

void SystemBuilder::add(Index row, Index col, double value) {
  if (row < 0 || row >= n_ || col < 0 || col >= n_)
    throw std::out_of_range("matrix index out of range");
  triplets_.push_back({row, col, value});
}

void SystemBuilder::add_rhs(Index row, double value) {
  if (row < 0 || row >= n_) throw std::out_of_range("rhs index out of range");
  rhs_[row] += value;
}

void SystemBuilder::constrain_row(Index row) {
  if (row < 0 || row >= n_) throw std::out_of_range("row index out of range");
  constrained_[row] = true;
}

SparseSystem SystemBuilder::finalize() {
  std::erase_if(triplets_, [this](const Triplet& t) { return constrained_[t.row]; });
  for (Index r = 0; r < n_; ++r)
    if (constrained_[r]) {
      triplets_.push_back({r, r, 1.0});
      rhs_[r] = 0.0;
    }
  std::sort(triplets_.begin(), triplets_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseSystem s;
  s.n = n_;
  s.rhs = std::move(rhs_);
  s.row_offsets.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < triplets_.size();) {
    std::size_t j = i;
    double v = 0.0;
    while (j < triplets_.size() && triplets_[j].row == triplets_[i].row &&
           triplets_[j].col == triplets_[i].col)
      v += triplets_[j++].value;
    s.col_indices.push_back(triplets_[i].col);
    s.values.push_back(v);
    ++s.row_offsets[triplets_[i].row + 1];
    i = j;
  }
  for (Index r = 0; r < n_; ++r) s.row_offsets[r + 1] += s.row_offsets[r];
  for (Index r = 0; r < n_; ++r)
    if (constrained_[r]) s.constrained_rows.push_back(r);
  return s;
}

std::vector<double> SparseSystem::multiply(const std::vector<double>& x) const {
  std::vector<double> y(n, 0.0);
  for (Index r = 0; r < n; ++r)
    for (Index k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
      y[r] += values[k] * x[col_indices[k]];
  return y;
}

double SparseSystem::relative_residual(const std::vector<double>& x) const {
  // Scaled residual ||Ax-b||_inf / (||A||_inf ||x||_inf + ||b||_inf).
  const std::vector<double> ax = multiply(x);
  double rnorm = 0.0, bnorm = 0.0, anorm = 0.0, xnorm = 0.0;
  for (Index r = 0; r < n; ++r) {
    rnorm = std::max(rnorm, std::abs(ax[r] - rhs[r]));
    bnorm = std::max(bnorm, std::abs(rhs[r]));
    xnorm = std::max(xnorm, std::abs(x[r]));
    double rowsum = 0.0;
    for (Index k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
      rowsum += std::abs(values[k]);
    anorm = std::max(anorm, rowsum);
  }
  const double scale = anorm * xnorm + bnorm;
  return scale > 0.0 ? rnorm / scale : rnorm;
}

void SparseSystem::dump_coordinate(std::ostream& os) const {
  for (Index r = 0; r < n; ++r)
    for (Index k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
      os << r << ' ' << col_indices[k] << ' ' << values[k] << '\n';
}

std::vector<double> direct_solve(const SparseSystem& system) {
  using SpMat = Eigen::SparseMatrix<double>;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(system.values.size());
  for (Index r = 0; r < system.n; ++r)
    for (Index k = system.row_offsets[r]; k < system.row_offsets[r + 1]; ++k)
      trip.emplace_back(static_cast<int>(r), static_cast<int>(system.col_indices[k]),
                        system.values[k]);
  SpMat a(system.n, system.n);
  a.setFromTriplets(trip.begin(), trip.end());
  a.makeCompressed();

  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("sparse LU factorization failed: " + lu.lastErrorMessage());

  Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(system.rhs.data(), system.n);
  Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success) throw std::runtime_error("sparse LU solve failed");

  std::vector<double> result(x.data(), x.data() + system.n);
  const double res = system.relative_residual(result);
  if (!(res <= 1e-12))
    throw std::runtime_error("direct solve residual above tolerance: " + std::to_string(res));
  return result;
}

}  // namespace nfvm
