#pragma once

// Dense complex linear algebra for finite-dimensional quantum objects:
// tensor products, partial traces, Hermitian eigendecomposition and PSD
// square roots. Everything here is sized for dimensions up to ~64 and is
// a pure function of its inputs.

#include <algorithm>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace entfid {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Central tolerance budget. Double precision at these dimensions leaves a
// wide margin over every constant below.
namespace tol {
inline constexpr double herm = 1e-9;          // Hermiticity residual
inline constexpr double psd = 1e-9;           // eigenvalue floor for PSD checks
inline constexpr double recon = 1e-10;        // eigendecomposition reconstruction
inline constexpr double trace_one = 1e-9;     // density-operator trace
inline constexpr double unit_norm = 1e-9;     // pure-state norm
inline constexpr double completeness = 1e-8;  // Kraus completeness residual
inline constexpr double unitary = 1e-8;       // unitarity residual
inline constexpr double extension = 1e-8;     // extension partial-trace residual
}  // namespace tol

// Thrown when an input fails domain validation. `field` names the offending
// quantity so front ends can point at it.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

namespace detail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace detail

// Ordered factor dimensions of a composite system; the product must match
// the dimension of any matrix the shape is applied to.
struct SubsystemShape {
  std::vector<int> dims;

  int total_dim() const {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
  }

  void validate() const {
    if (dims.empty()) throw ValidationError("shape", "subsystem shape has no factors");
    for (int d : dims) {
      if (d < 1)
        throw ValidationError("shape", "subsystem dimensions must be positive, got " +
                                           std::to_string(d));
    }
  }
};

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("dim", "matrix dimensions differ: " + std::to_string(a.rows()) + "x" +
                                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                                     "x" + std::to_string(b.cols()));
  return max_abs(a - b);
}

inline void check_finite(const Matrix& m, const char* field = "entries") {
  if (!m.allFinite()) throw ValidationError(field, "matrix has non-finite entries");
}

inline double hermiticity_residual(const Matrix& m) { return max_abs_diff(m, m.adjoint()); }

// Kronecker product, row-major block convention:
// (a ⊗ b)[(i*rb + k), (j*cb + l)] = a(i, j) * b(k, l).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// Partial trace over the factors of `shape` not listed in `keep`. The result
// lives on the kept factors in their original order; `keep` is treated as a
// set. Keeping every factor returns the input, keeping none returns the 1x1
// trace.
inline Matrix partial_trace(const Matrix& m, const SubsystemShape& shape, std::vector<int> keep) {
  shape.validate();
  if (m.rows() != m.cols())
    throw ValidationError("matrix", "partial trace needs a square matrix, got " +
                                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  const int total = shape.total_dim();
  if (total != m.rows())
    throw ValidationError("shape", "shape dimension " + std::to_string(total) +
                                       " does not match matrix dimension " +
                                       std::to_string(m.rows()));
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  const int nf = static_cast<int>(shape.dims.size());
  for (int f : keep)
    if (f < 0 || f >= nf)
      throw ValidationError("keep", "kept factor index " + std::to_string(f) + " out of range");

  std::vector<char> kept_mask(nf, 0);
  for (int f : keep) kept_mask[f] = 1;
  std::vector<int> stride(nf);
  for (int f = nf - 1, s = 1; f >= 0; s *= shape.dims[f], --f) stride[f] = s;

  // Row-major linear offsets of the kept and traced index groups.
  auto offsets = [&](char want) {
    std::vector<int> out{0};
    for (int f = 0; f < nf; ++f) {
      if (kept_mask[f] != want) continue;
      std::vector<int> next;
      next.reserve(out.size() * shape.dims[f]);
      for (int base : out)
        for (int i = 0; i < shape.dims[f]; ++i) next.push_back(base + i * stride[f]);
      out = std::move(next);
    }
    return out;
  };
  const std::vector<int> kept_off = offsets(1);
  const std::vector<int> traced_off = offsets(0);

  const auto nk = static_cast<Eigen::Index>(kept_off.size());
  Matrix out(nk, nk);
  for (Eigen::Index r = 0; r < nk; ++r)
    for (Eigen::Index c = 0; c < nk; ++c) {
      Complex sum = 0.0;
      for (int t : traced_off) sum += m(kept_off[r] + t, kept_off[c] + t);
      out(r, c) = sum;
    }
  return out;
}

// Orthonormalizes the columns of m by Householder QR, absorbing the phases
// of the R diagonal into Q so full-rank inputs map to a unique
// representative. Requires rows >= cols.
inline Matrix orthonormalize_columns(const Matrix& m) {
  if (m.rows() < m.cols())
    throw ValidationError("dim", "orthonormalization needs rows >= cols, got " +
                                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  const Matrix r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 1e-12) q.col(j) *= d / mag;
  }
  return q;
}

struct HermEig {
  RealVector values;  // descending
  Matrix vectors;     // columns, matching order
};

// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
// Input must be Hermitian within tol::herm; it is symmetrized before the
// solve so the residual never leaks into the factors.
inline HermEig herm_eig(const Matrix& m) {
  if (m.rows() != m.cols())
    throw ValidationError("matrix", "eigendecomposition needs a square matrix");
  check_finite(m);
  const double res = hermiticity_residual(m);
  if (res > tol::herm)
    throw ValidationError("hermitian",
                          "matrix is not Hermitian: residual " + detail::num(res) +
                              " exceeds " + detail::num(tol::herm));
  Eigen::SelfAdjointEigenSolver<Matrix> solver(((m + m.adjoint()) * 0.5).eval());
  if (solver.info() != Eigen::Success)
    throw ValidationError("matrix", "Hermitian eigensolver failed to converge");
  HermEig out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

// PSD square root. Eigenvalues in [-tol::psd, 0) are clamped to zero, which
// regularizes the rank-deficient operators that arise from pure states.
inline Matrix sqrt_psd(const Matrix& m) {
  HermEig eig = herm_eig(m);
  RealVector lam = eig.values;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -tol::psd)
      throw ValidationError("eigenvalues", "matrix is not PSD: eigenvalue " +
                                               detail::num(lam(i)) + " below -" +
                                               detail::num(tol::psd));
    if (lam(i) < 0.0) lam(i) = 0.0;
  }
  const Matrix root = eig.vectors * lam.cwiseSqrt().asDiagonal() * eig.vectors.adjoint();
  return ((root + root.adjoint()) * 0.5).eval();
}

}  // namespace entfid
