#pragma once

// Deterministic random source. Every sampling routine in the library draws
// from an explicitly seeded Rng owned by the caller, and the mapping from
// raw engine words to doubles is spelled out here, so equal seeds give
// bit-identical streams on every platform.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "numerics.hpp"

namespace entfid {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; pairs are generated together.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // in (0, 1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  Complex gaussian_complex() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

  // Matrix of independent standard complex Gaussians, filled row-major.
  Matrix gaussian_matrix(int rows, int cols) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = gaussian_complex();
    return m;
  }

  Vector gaussian_vector(int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = gaussian_complex();
    return v;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Matrix with orthonormal columns, Haar-distributed: QR of a complex Ginibre
// sample with the R diagonal phases absorbed into Q. Square output is a
// Haar unitary. Requires rows >= cols.
inline Matrix random_isometry(int rows, int cols, Rng& rng) {
  if (rows < cols)
    throw ValidationError("dim", "isometry needs rows >= cols, got " + std::to_string(rows) +
                                     "x" + std::to_string(cols));
  return orthonormalize_columns(rng.gaussian_matrix(rows, cols));
}

inline Matrix random_unitary(int dim, Rng& rng) { return random_isometry(dim, dim, rng); }

}  // namespace entfid
