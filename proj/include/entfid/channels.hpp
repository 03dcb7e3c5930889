#pragma once

// Quantum channels in Kraus form, conversions to and from the unitary
// picture (system ⊗ environment evolved by U, environment discarded), and a
// small family of standard noise models.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "numerics.hpp"
#include "rng.hpp"
#include "states.hpp"

namespace entfid {

// Completely positive trace-preserving map, stored as Kraus operators
// A_i (dim_out x dim_in) with sum_i A_i* A_i = I.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<Matrix> kraus)
      : QuantumChannel(std::move(kraus), /*validate=*/true) {}

  // Skips the completeness check; shape checks still apply. Exists so tests
  // and fault-injection paths can build deliberately broken channels.
  static QuantumChannel without_validation(std::vector<Matrix> kraus) {
    return QuantumChannel(std::move(kraus), /*validate=*/false);
  }

  const std::vector<Matrix>& kraus() const { return kraus_; }
  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  bool is_square() const { return dim_in_ == dim_out_; }
  double completeness_residual() const { return completeness_residual_; }

 private:
  QuantumChannel(std::vector<Matrix> kraus, bool validate) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw ValidationError("kraus", "channel needs at least one Kraus operator");
    dim_out_ = static_cast<int>(kraus_.front().rows());
    dim_in_ = static_cast<int>(kraus_.front().cols());
    if (dim_in_ < 1 || dim_out_ < 1)
      throw ValidationError("kraus", "Kraus operators must be nonempty");
    for (const Matrix& a : kraus_) {
      check_finite(a, "kraus");
      if (a.rows() != dim_out_ || a.cols() != dim_in_)
        throw ValidationError("kraus", "Kraus operators disagree in shape: " +
                                           std::to_string(a.rows()) + "x" +
                                           std::to_string(a.cols()) + " vs " +
                                           std::to_string(dim_out_) + "x" +
                                           std::to_string(dim_in_));
    }
    Matrix sum = Matrix::Zero(dim_in_, dim_in_);
    for (const Matrix& a : kraus_) sum += a.adjoint() * a;
    completeness_residual_ = max_abs_diff(sum, Matrix::Identity(dim_in_, dim_in_));
    if (validate && completeness_residual_ > tol::completeness)
      throw ValidationError("completeness",
                            "Kraus operators are not trace-preserving: residual " +
                                detail::num(completeness_residual_) + " exceeds " +
                                detail::num(tol::completeness));
  }

  std::vector<Matrix> kraus_;
  int dim_in_ = 0;
  int dim_out_ = 0;
  double completeness_residual_ = 0.0;
};

// Raw Kraus sum on an arbitrary square matrix (not restricted to states).
inline Matrix apply_matrix(const QuantumChannel& e, const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() != e.dim_in())
    throw ValidationError("dim", "channel input dimension " + std::to_string(e.dim_in()) +
                                     " does not match matrix " + std::to_string(m.rows()) + "x" +
                                     std::to_string(m.cols()));
  Matrix out = Matrix::Zero(e.dim_out(), e.dim_out());
  for (const Matrix& a : e.kraus()) out += a * m * a.adjoint();
  return out;
}

inline DensityOperator apply(const QuantumChannel& e, const DensityOperator& rho) {
  return DensityOperator(apply_matrix(e, rho.matrix()));
}

// Which factor of the composite the identity acts on.
enum class IdentitySide { left, right };

// Lifts e to a composite system by tensoring an identity factor of dimension
// d_extra: right gives {A_i ⊗ I}, left gives {I ⊗ A_i}.
inline QuantumChannel extend_with_identity(const QuantumChannel& e, int d_extra,
                                           IdentitySide side) {
  if (d_extra < 1) throw ValidationError("dim", "identity factor dimension must be positive");
  const Matrix eye = Matrix::Identity(d_extra, d_extra);
  std::vector<Matrix> kraus;
  kraus.reserve(e.kraus().size());
  for (const Matrix& a : e.kraus())
    kraus.push_back(side == IdentitySide::right ? kron(a, eye) : kron(eye, a));
  return QuantumChannel(std::move(kraus));
}

// Product channel {A_i ⊗ B_j}, first factor major.
inline QuantumChannel tensor_channels(const QuantumChannel& e, const QuantumChannel& f) {
  std::vector<Matrix> kraus;
  kraus.reserve(e.kraus().size() * f.kraus().size());
  for (const Matrix& a : e.kraus())
    for (const Matrix& b : f.kraus()) kraus.push_back(kron(a, b));
  return QuantumChannel(std::move(kraus));
}

// Unitary picture of a channel: U acts on system ⊗ environment, the
// environment starts in `ancilla`, and is traced out afterwards.
struct UnitaryRep {
  Matrix u;
  DensityOperator ancilla;
  SubsystemShape shape;  // {d_system, d_environment}

  UnitaryRep(Matrix u_in, DensityOperator anc, SubsystemShape s)
      : u(std::move(u_in)), ancilla(std::move(anc)), shape(std::move(s)) {
    shape.validate();
    if (shape.dims.size() != 2)
      throw ValidationError("shape", "unitary picture needs exactly two factors");
    if (ancilla.dim() != shape.dims[1])
      throw ValidationError("shape", "ancilla dimension " + std::to_string(ancilla.dim()) +
                                         " does not match environment factor " +
                                         std::to_string(shape.dims[1]));
    const int n = shape.total_dim();
    if (u.rows() != n || u.cols() != n)
      throw ValidationError("unitary", "matrix must be " + std::to_string(n) + "x" +
                                           std::to_string(n) + ", got " +
                                           std::to_string(u.rows()) + "x" +
                                           std::to_string(u.cols()));
    check_finite(u, "unitary");
    const double res = max_abs_diff(u.adjoint() * u, Matrix::Identity(n, n));
    if (res > tol::unitary)
      throw ValidationError("unitary", "matrix is not unitary: residual " + detail::num(res) +
                                           " exceeds " + detail::num(tol::unitary));
  }
};

// Applies the unitary picture directly: tr_E( U (rho ⊗ ancilla) U* ).
inline DensityOperator apply(const UnitaryRep& rep, const DensityOperator& rho) {
  if (rho.dim() != rep.shape.dims[0])
    throw ValidationError("dim", "input dimension " + std::to_string(rho.dim()) +
                                     " does not match system factor " +
                                     std::to_string(rep.shape.dims[0]));
  const Matrix joint = rep.u * kron(rho.matrix(), rep.ancilla.matrix()) * rep.u.adjoint();
  return DensityOperator(partial_trace(joint, rep.shape, {0}));
}

// Builds a unitary picture for a square channel: environment dimension is
// the Kraus count, ancilla starts at |0><0|, and U(|s>|0>) = sum_i A_i|s>|i>.
// The remaining columns are completed from canonical basis vectors by
// twice-through Gram-Schmidt, lowest index first, so the result is a
// deterministic function of the Kraus list.
inline UnitaryRep stinespring_dilation(const QuantumChannel& e) {
  if (!e.is_square())
    throw ValidationError("channel", "unitary picture needs dim_in = dim_out, got " +
                                         std::to_string(e.dim_in()) + " -> " +
                                         std::to_string(e.dim_out()));
  const int d = e.dim_in();
  const int m = static_cast<int>(e.kraus().size());
  const int n = d * m;
  Matrix u = Matrix::Zero(n, n);
  for (int s = 0; s < d; ++s)
    for (int i = 0; i < m; ++i)
      for (int r = 0; r < d; ++r) u(r * m + i, s * m) = e.kraus()[i](r, s);

  int cand = 0;
  for (int c = 0; c < n; ++c) {
    if (c % m == 0) continue;  // prescribed ancilla-zero column
    for (;; ++cand) {
      if (cand >= n)
        throw ValidationError("kraus", "unitary completion ran out of basis candidates");
      Vector v = Vector::Unit(n, cand);
      for (int pass = 0; pass < 2; ++pass) v -= u * (u.adjoint() * v);
      const double norm = v.norm();
      if (norm > 1e-3) {
        u.col(c) = v / norm;
        ++cand;
        break;
      }
    }
  }

  Matrix anc = Matrix::Zero(m, m);
  anc(0, 0) = 1.0;
  return UnitaryRep(std::move(u), DensityOperator(std::move(anc)), SubsystemShape{{d, m}});
}

// Extracts Kraus operators from a unitary picture. The ancilla is purified
// first, so mixed starting states are supported; the Kraus index runs over
// the environment ⊗ purifier basis.
inline QuantumChannel channel_from_unitary_rep(const UnitaryRep& rep) {
  const int d_s = rep.shape.dims[0];
  const int d_e = rep.shape.dims[1];
  const PureState phi = canonical_purification(rep.ancilla);
  const int d_p = phi.dim() / d_e;
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(d_e) * d_p);
  for (int i = 0; i < d_e; ++i)
    for (int j = 0; j < d_p; ++j) {
      Matrix a(d_s, d_s);
      for (int r = 0; r < d_s; ++r)
        for (int s = 0; s < d_s; ++s) {
          Complex sum = 0.0;
          for (int e = 0; e < d_e; ++e)
            sum += rep.u(r * d_e + i, s * d_e + e) * phi.amplitudes()(e * d_p + j);
          a(r, s) = sum;
        }
      kraus.push_back(std::move(a));
    }
  return QuantumChannel(std::move(kraus));
}

inline QuantumChannel identity_channel(int dim) {
  if (dim < 1) throw ValidationError("dim", "dimension must be positive");
  return QuantumChannel({Matrix::Identity(dim, dim)});
}

namespace detail {

inline void check_probability(double p, const char* field) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError(field, std::string(field) + " must lie in [0, 1], got " + num(p));
}

}  // namespace detail

// Uniform noise: with probability p the state is replaced by the maximally
// mixed state. Qubits use the Pauli Kraus set; higher dimensions use the
// shift/phase (discrete Weyl) set.
inline QuantumChannel depolarizing_channel(int dim, double p) {
  detail::check_probability(p, "p");
  if (dim < 2) throw ValidationError("dim", "depolarizing noise needs dimension >= 2");
  std::vector<Matrix> kraus;
  if (dim == 2) {
    Matrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    kraus.push_back(std::sqrt(1.0 - 0.75 * p) * Matrix::Identity(2, 2));
    for (const Matrix& pauli : {x, y, z}) kraus.push_back(std::sqrt(0.25 * p) * pauli);
  } else {
    const double d2 = static_cast<double>(dim) * dim;
    Matrix shift = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) shift((j + 1) % dim, j) = 1.0;
    Matrix phase = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j)
      phase(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / dim);
    kraus.push_back(std::sqrt(1.0 - p * (d2 - 1.0) / d2) * Matrix::Identity(dim, dim));
    Matrix xa = Matrix::Identity(dim, dim);
    for (int a = 0; a < dim; ++a) {
      Matrix w = xa;
      for (int b = 0; b < dim; ++b) {
        if (a != 0 || b != 0) kraus.push_back(std::sqrt(p) / dim * w);
        w = w * phase;
      }
      xa = shift * xa;
    }
  }
  return QuantumChannel(std::move(kraus));
}

// With probability p the state is measured in the computational basis and
// the outcome forgotten: off-diagonal entries shrink by (1 - p).
inline QuantumChannel dephasing_channel(int dim, double p) {
  detail::check_probability(p, "p");
  if (dim < 2) throw ValidationError("dim", "dephasing noise needs dimension >= 2");
  std::vector<Matrix> kraus;
  kraus.push_back(std::sqrt(1.0 - p) * Matrix::Identity(dim, dim));
  for (int j = 0; j < dim; ++j) {
    Matrix a = Matrix::Zero(dim, dim);
    a(j, j) = std::sqrt(p);
    kraus.push_back(std::move(a));
  }
  return QuantumChannel(std::move(kraus));
}

// Qubit energy relaxation toward |0> with decay probability gamma.
inline QuantumChannel amplitude_damping_channel(double gamma) {
  detail::check_probability(gamma, "gamma");
  Matrix a0(2, 2), a1(2, 2);
  a0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  a1 << 0, std::sqrt(gamma), 0, 0;
  return QuantumChannel({a0, a1});
}

// Discards the input and prepares `sigma`: E(rho) = tr(rho) sigma.
inline QuantumChannel replace_with_channel(int dim_in, const DensityOperator& sigma) {
  if (dim_in < 1) throw ValidationError("dim", "input dimension must be positive");
  const HermEig eig = herm_eig(sigma.matrix());
  double total = 0.0;
  int rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > tol::psd) total += eig.values(rank++);
  if (rank == 0) throw ValidationError("eigenvalues", "replacement state has no positive weight");
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(rank) * dim_in);
  for (int k = 0; k < rank; ++k) {
    const double root = std::sqrt(eig.values(k) / total);
    for (int j = 0; j < dim_in; ++j) {
      Matrix a = Matrix::Zero(sigma.dim(), dim_in);
      a.col(j) = root * eig.vectors.col(k);
      kraus.push_back(std::move(a));
    }
  }
  return QuantumChannel(std::move(kraus));
}

// Haar-random channel: a random isometry from the input space into
// output ⊗ ancilla, sliced into kraus_count blocks.
inline QuantumChannel random_channel(int dim_in, int dim_out, int kraus_count, Rng& rng) {
  if (dim_in < 1 || dim_out < 1) throw ValidationError("dim", "dimensions must be positive");
  if (kraus_count < 1) throw ValidationError("kraus_count", "Kraus count must be positive");
  if (kraus_count * dim_out < dim_in)
    throw ValidationError("kraus_count",
                          "no isometry exists: kraus_count * dim_out = " +
                              std::to_string(kraus_count * dim_out) + " below dim_in = " +
                              std::to_string(dim_in));
  const Matrix v = random_isometry(kraus_count * dim_out, dim_in, rng);
  std::vector<Matrix> kraus;
  kraus.reserve(kraus_count);
  for (int i = 0; i < kraus_count; ++i) kraus.push_back(v.middleRows(i * dim_out, dim_out));
  return QuantumChannel(std::move(kraus));
}

inline QuantumChannel random_channel(int dim, int kraus_count, Rng& rng) {
  return random_channel(dim, dim, kraus_count, rng);
}

inline QuantumChannel random_channel(int dim, int kraus_count, std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(dim, dim, kraus_count, rng);
}

}  // namespace entfid
