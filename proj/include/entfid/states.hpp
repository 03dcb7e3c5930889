#pragma once

// Quantum state types: validated density operators and pure states,
// purifications, extensions to a larger system, and random sampling.
//
// Phase convention: vectors produced here (purifications, random pure
// states) have their first nonzero amplitude real and positive, so equal
// inputs give bit-identical outputs.

#include <cmath>
#include <cstdint>
#include <vector>

#include "numerics.hpp"
#include "rng.hpp"

namespace entfid {

namespace detail {

inline Vector fix_global_phase(Vector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-12) {
      v *= std::conj(v(i)) / mag;
      v(i) = mag;  // kill the residual imaginary part
      break;
    }
  }
  return v;
}

}  // namespace detail

// Trace-one positive semidefinite operator. Construction validates, so a
// live instance is always a usable state.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m) : matrix_(std::move(m)) {
    check_finite(matrix_);
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1)
      throw ValidationError("matrix", "density operator must be square and nonempty, got " +
                                          std::to_string(matrix_.rows()) + "x" +
                                          std::to_string(matrix_.cols()));
    const double hres = hermiticity_residual(matrix_);
    if (hres > tol::herm)
      throw ValidationError("hermitian", "density operator is not Hermitian: residual " +
                                             detail::num(hres) + " exceeds " +
                                             detail::num(tol::herm));
    const double tdev = std::abs(matrix_.trace() - Complex(1.0, 0.0));
    if (tdev > tol::trace_one)
      throw ValidationError("trace", "density operator trace deviates from 1 by " +
                                         detail::num(tdev) + ", tolerance " +
                                         detail::num(tol::trace_one));
    const HermEig eig = herm_eig(matrix_);
    const double lam_min = eig.values(eig.values.size() - 1);
    if (lam_min < -tol::psd)
      throw ValidationError("eigenvalues", "density operator is not PSD: eigenvalue " +
                                               detail::num(lam_min) + " below -" +
                                               detail::num(tol::psd));
  }

  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  Matrix matrix_;
};

// Unit vector in a finite-dimensional Hilbert space.
class PureState {
 public:
  explicit PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) throw ValidationError("dim", "pure state must be nonempty");
    if (!amplitudes_.allFinite())
      throw ValidationError("amplitudes", "pure state has non-finite amplitudes");
    const double dev = std::abs(amplitudes_.norm() - 1.0);
    if (dev > tol::unit_norm)
      throw ValidationError("norm", "pure state norm deviates from 1 by " + detail::num(dev) +
                                        ", tolerance " + detail::num(tol::unit_norm));
  }

  const Vector& amplitudes() const { return amplitudes_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }

 private:
  Vector amplitudes_;
};

// A state on system ⊗ auxiliary whose reduction to the first factor is some
// base state of interest. `shape.dims` is {d_system, d_aux}.
struct Extension {
  DensityOperator joint;
  SubsystemShape shape;

  Extension(DensityOperator j, SubsystemShape s) : joint(std::move(j)), shape(std::move(s)) {
    shape.validate();
    if (shape.dims.size() != 2)
      throw ValidationError("shape", "extension shape needs exactly two factors, got " +
                                         std::to_string(shape.dims.size()));
    if (shape.total_dim() != joint.dim())
      throw ValidationError("shape", "extension shape dimension " +
                                         std::to_string(shape.total_dim()) +
                                         " does not match joint dimension " +
                                         std::to_string(joint.dim()));
  }

  int system_dim() const { return shape.dims[0]; }
  int aux_dim() const { return shape.dims[1]; }
};

inline DensityOperator density_from_pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  Matrix m = v * v.adjoint();
  const double t = m.trace().real();  // |v|^2, within tol of 1; renormalize exactly
  return DensityOperator(m / t);
}

// Overlap <psi| rho |psi>: the probability that `rho` passes a verification
// measurement against `psi`. Clamped to [0, 1].
inline double probability_correct(const PureState& psi, const DensityOperator& rho) {
  if (psi.dim() != rho.dim())
    throw ValidationError("dim", "state dimensions differ: " + std::to_string(psi.dim()) +
                                     " vs " + std::to_string(rho.dim()));
  const double p = (psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes())(0, 0).real();
  return std::clamp(p, 0.0, 1.0);
}

inline double probability_error(const PureState& psi, const DensityOperator& rho) {
  return 1.0 - probability_correct(psi, rho);
}

inline int rank_of(const DensityOperator& rho) {
  const HermEig eig = herm_eig(rho.matrix());
  int r = 0;
  while (r < eig.values.size() && eig.values(r) > tol::psd) ++r;
  return std::max(r, 1);
}

// Purification of `rho` on system ⊗ purifier with a chosen purifier
// dimension (at least rank): psi = sum_k sqrt(lambda_k) |v_k>|k>, laid out
// with the purifier index minor.
inline PureState purification_with_dim(const DensityOperator& rho, int purifier_dim) {
  const HermEig eig = herm_eig(rho.matrix());
  const int d = rho.dim();
  int rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > tol::psd) ++rank;
  rank = std::max(rank, 1);
  if (purifier_dim < rank)
    throw ValidationError("dim", "purifier dimension " + std::to_string(purifier_dim) +
                                     " below state rank " + std::to_string(rank));
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(d) * purifier_dim);
  for (int k = 0; k < rank; ++k) {
    const double root = std::sqrt(std::max(eig.values(k), 0.0));
    for (int s = 0; s < d; ++s) psi(static_cast<Eigen::Index>(s) * purifier_dim + k) = root * eig.vectors(s, k);
  }
  psi /= psi.norm();
  return PureState(detail::fix_global_phase(std::move(psi)));
}

// Minimal purification: purifier dimension equals the rank of `rho`.
inline PureState canonical_purification(const DensityOperator& rho) {
  return purification_with_dim(rho, rank_of(rho));
}

struct ExtensionCheck {
  bool ok;
  double residual;  // max-abs deviation of the reduction from the base state
};

inline ExtensionCheck is_extension(const Extension& candidate, const DensityOperator& base) {
  if (candidate.system_dim() != base.dim())
    throw ValidationError("dim", "extension system dimension " +
                                     std::to_string(candidate.system_dim()) +
                                     " does not match base dimension " +
                                     std::to_string(base.dim()));
  const Matrix reduced = partial_trace(candidate.joint.matrix(), candidate.shape, {0});
  const double res = max_abs_diff(reduced, base.matrix());
  return {res <= tol::extension, res};
}

inline PureState random_pure(int dim, Rng& rng) {
  if (dim < 1) throw ValidationError("dim", "dimension must be positive");
  Vector v;
  double norm = 0.0;
  do {
    v = rng.gaussian_vector(dim);
    norm = v.norm();
  } while (norm < 1e-8);
  return PureState(detail::fix_global_phase(v / norm));
}

inline PureState random_pure(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(dim, rng);
}

// Random mixed state of the requested rank: normalized G G* with G a
// dim x rank complex Ginibre sample.
inline DensityOperator random_density(int dim, int rank, Rng& rng) {
  if (dim < 1) throw ValidationError("dim", "dimension must be positive");
  if (rank < 1 || rank > dim)
    throw ValidationError("rank", "rank must lie in [1, dim], got " + std::to_string(rank) +
                                      " for dimension " + std::to_string(dim));
  const Matrix g = rng.gaussian_matrix(dim, rank);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator(std::move(m));
}

inline DensityOperator random_density(int dim, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rank, rng);
}

// Two-qubit singlet (|01> - |10>)/sqrt(2), the standard maximally entangled
// test state.
inline PureState epr_singlet() {
  Vector v = Vector::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  v(1) = r;
  v(2) = -r;
  return PureState(std::move(v));
}

}  // namespace entfid
