#pragma once

#include <entfid/entfid.hpp>

// Small fixtures shared by the test files.
namespace testutil {

using entfid::Complex;
using entfid::Matrix;
using entfid::Vector;

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Matrix pauli_x() { return mat2(0, 1, 1, 0); }
inline Matrix pauli_y() { return mat2(0, Complex(0, -1), Complex(0, 1), 0); }
inline Matrix pauli_z() { return mat2(1, 0, 0, -1); }
inline Matrix ident(int d) { return Matrix::Identity(d, d); }

inline entfid::DensityOperator maximally_mixed(int d) {
  return entfid::DensityOperator(ident(d) / static_cast<double>(d));
}

inline entfid::PureState basis_state(int dim, int k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return entfid::PureState(std::move(v));
}

inline entfid::DensityOperator basis_density(int dim, int k) {
  return entfid::density_from_pure(basis_state(dim, k));
}

// The swap-then-discard storage channel on a qubit: four Kraus operators
// (1/sqrt 2)|i><j|, which send every input to I/2.
inline entfid::QuantumChannel swap_replace_qubit() {
  std::vector<Matrix> kraus;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Matrix a = Matrix::Zero(2, 2);
      a(i, j) = r;
      kraus.push_back(std::move(a));
    }
  return entfid::QuantumChannel(std::move(kraus));
}

// Field of the ValidationError thrown by `fn`, or "" if nothing was thrown.
template <typename Fn>
std::string thrown_field(Fn&& fn) {
  try {
    fn();
  } catch (const entfid::ValidationError& e) {
    return e.field();
  }
  return "";
}

}  // namespace testutil
