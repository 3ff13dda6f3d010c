#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace viscid {

/// Compressed sparse row matrix with double entries.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Builds from unsorted (row, col, value) triplets; duplicates are summed
  /// in insertion order.
  struct Triplet {
    int row;
    int col;
    double value;
  };
  static SparseMatrix from_triplets(int n, std::vector<Triplet> triplets);

  int rows() const noexcept { return n_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;

  double coeff(int row, int col) const;
  std::vector<double> diagonal() const;

  /// max |A_ij - A_ji| over stored entries.
  double asymmetry() const;
  double max_abs() const;
  std::size_t max_row_nonzeros() const;

  std::span<const int> row_ptr() const noexcept { return row_ptr_; }
  std::span<const int> col_index() const noexcept { return col_; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  int n_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_;
  std::vector<double> values_;
};

struct PcgResult {
  std::vector<double> x;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients for symmetric positive
/// (semi-)definite systems. Starts from `guess` when it is non-empty.
/// Throws SolverError if ||Ax - b|| > tol ||b|| after `max_iter` iterations.
PcgResult solve_pcg(const SparseMatrix& A, std::span<const double> b, double tol, std::size_t max_iter,
                    std::span<const double> guess = {});

}  // namespace viscid
