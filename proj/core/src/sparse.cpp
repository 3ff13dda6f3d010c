#include "viscid/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "viscid/error.hpp"

namespace viscid {

SparseMatrix SparseMatrix::from_triplets(int n, std::vector<Triplet> triplets) {
  if (n < 0) throw InvalidArgument("SparseMatrix: negative size");
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n) throw ShapeError("SparseMatrix: triplet out of range");
  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

  SparseMatrix m;
  m.n_ = n;
  m.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t k = 0; k < triplets.size();) {
    const Triplet& t = triplets[k];
    double sum = 0.0;
    std::size_t e = k;
    for (; e < triplets.size() && triplets[e].row == t.row && triplets[e].col == t.col; ++e) sum += triplets[e].value;
    m.col_.push_back(t.col);
    m.values_.push_back(sum);
    ++m.row_ptr_[static_cast<std::size_t>(t.row) + 1];
    k = e;
  }
  std::partial_sum(m.row_ptr_.begin(), m.row_ptr_.end(), m.row_ptr_.begin());
  return m;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != static_cast<std::size_t>(n_) || y.size() != static_cast<std::size_t>(n_))
    throw ShapeError("SparseMatrix::multiply: size mismatch");
  for (int r = 0; r < n_; ++r) {
    double s = 0.0;
    for (int k = row_ptr_[static_cast<std::size_t>(r)]; k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k)
      s += values_[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(col_[static_cast<std::size_t>(k)])];
    y[static_cast<std::size_t>(r)] = s;
  }
}

double SparseMatrix::coeff(int row, int col) const {
  const auto b = col_.begin() + row_ptr_[static_cast<std::size_t>(row)];
  const auto e = col_.begin() + row_ptr_[static_cast<std::size_t>(row) + 1];
  const auto it = std::lower_bound(b, e, col);
  if (it == e || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_.begin())];
}

std::vector<double> SparseMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(n_), 0.0);
  for (int r = 0; r < n_; ++r) d[static_cast<std::size_t>(r)] = coeff(r, r);
  return d;
}

double SparseMatrix::asymmetry() const {
  double worst = 0.0;
  for (int r = 0; r < n_; ++r)
    for (int k = row_ptr_[static_cast<std::size_t>(r)]; k < row_ptr_[static_cast<std::size_t>(r) + 1]; ++k) {
      const int c = col_[static_cast<std::size_t>(k)];
      worst = std::max(worst, std::abs(values_[static_cast<std::size_t>(k)] - coeff(c, r)));
    }
  return worst;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::size_t SparseMatrix::max_row_nonzeros() const {
  std::size_t m = 0;
  for (int r = 0; r < n_; ++r)
    m = std::max(m, static_cast<std::size_t>(row_ptr_[static_cast<std::size_t>(r) + 1] - row_ptr_[static_cast<std::size_t>(r)]));
  return m;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

PcgResult solve_pcg(const SparseMatrix& A, std::span<const double> b, double tol, std::size_t max_iter,
                    std::span<const double> guess) {
  const std::size_t n = static_cast<std::size_t>(A.rows());
  if (b.size() != n) throw ShapeError("solve_pcg: rhs size mismatch");
  if (!guess.empty() && guess.size() != n) throw ShapeError("solve_pcg: guess size mismatch");
  if (!(tol > 0.0 && tol < 1.0)) throw InvalidArgument("solve_pcg: tol must lie in (0, 1)");

  PcgResult res;
  res.x.assign(n, 0.0);
  if (!guess.empty()) std::copy(guess.begin(), guess.end(), res.x.begin());

  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    std::fill(res.x.begin(), res.x.end(), 0.0);
    return res;
  }

  std::vector<double> inv_diag = A.diagonal();
  for (double& d : inv_diag) d = d > 0.0 ? 1.0 / d : 1.0;

  std::vector<double> r(n), z(n), p(n), q(n);
  A.multiply(res.x, q);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
  double rnorm = std::sqrt(dot(r, r));
  if (rnorm <= tol * bnorm) {
    res.relative_residual = rnorm / bnorm;
    return res;
  }
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);

  for (std::size_t it = 1; it <= max_iter; ++it) {
    A.multiply(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) {
      res.iterations = it;
      res.relative_residual = rnorm / bnorm;
      throw SolverError("solve_pcg: matrix is not positive definite along search direction", res.relative_residual, it);
    }
    const double alpha = rz / pq;
    for (std::size_t i = 0; i < n; ++i) {
      res.x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    rnorm = std::sqrt(dot(r, r));
    res.iterations = it;
    res.relative_residual = rnorm / bnorm;
    if (rnorm <= tol * bnorm) return res;

    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw SolverError("solve_pcg: no convergence after " + std::to_string(max_iter) +
                        " iterations (relative residual " + std::to_string(res.relative_residual) + ")",
                    res.relative_residual, max_iter);
}

}  // namespace viscid
