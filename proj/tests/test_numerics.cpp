#include <catch2/catch_amalgamated.hpp>

#include <entfid/numerics.hpp>
#include <entfid/rng.hpp>

#include "helpers.hpp"

using namespace entfid;
using testutil::ident;
using testutil::pauli_x;
using testutil::thrown_field;

TEST_CASE("kron of identities is the joint identity", "[numerics]") {
  const Matrix i2 = ident(2);
  REQUIRE(max_abs_diff(kron(i2, i2), ident(4)) == 0.0);
}

TEST_CASE("kron places the right factor in blocks", "[numerics]") {
  Matrix p(2, 2);
  p << 1, 0, 0, 0;
  const Matrix k = kron(p, pauli_x());
  REQUIRE(max_abs_diff(k.block(0, 0, 2, 2), pauli_x()) == 0.0);
  REQUIRE(max_abs(k.block(2, 0, 2, 4)) == 0.0);
  REQUIRE(max_abs(k.block(0, 2, 2, 2)) == 0.0);
}

TEST_CASE("kron of vectors uses the minor index for the right factor", "[numerics]") {
  Vector a(2), b(3);
  a << Complex(1, 1), Complex(0, 2);
  b << 1, 2, 3;
  const Vector v = kron(a, b);
  REQUIRE(v.size() == 6);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 3; ++k) REQUIRE(std::abs(v(i * 3 + k) - a(i) * b(k)) == 0.0);
}

TEST_CASE("kron is multiplicative for trace and products", "[numerics]") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix a = rng.gaussian_matrix(2, 2), b = rng.gaussian_matrix(3, 3);
    const Matrix c = rng.gaussian_matrix(2, 2), d = rng.gaussian_matrix(3, 3);
    REQUIRE(std::abs(kron(a, b).trace() - a.trace() * b.trace()) < 1e-12);
    const Matrix ac = a * c, bd = b * d;
    REQUIRE(max_abs_diff(kron(a, b) * kron(c, d), kron(ac, bd)) < 1e-12);
  }
}

TEST_CASE("kron is associative", "[numerics]") {
  Rng rng(12);
  const Matrix a = rng.gaussian_matrix(2, 2), b = rng.gaussian_matrix(2, 2),
               c = rng.gaussian_matrix(2, 2);
  const Matrix ab = kron(a, b), bc = kron(b, c);
  REQUIRE(max_abs_diff(kron(ab, c), kron(a, bc)) < 1e-12);
}

TEST_CASE("partial trace of a product recovers the kept factor", "[numerics]") {
  Rng rng(13);
  const Matrix g1 = rng.gaussian_matrix(3, 3), g2 = rng.gaussian_matrix(2, 2);
  const Matrix rho = (g1 * g1.adjoint()) / (g1 * g1.adjoint()).trace().real();
  const Matrix sig = (g2 * g2.adjoint()) / (g2 * g2.adjoint()).trace().real();
  const SubsystemShape shape{{3, 2}};
  REQUIRE(max_abs_diff(partial_trace(kron(rho, sig), shape, {0}), rho) < 1e-12);
  REQUIRE(max_abs_diff(partial_trace(kron(rho, sig), shape, {1}), sig) < 1e-12);
}

TEST_CASE("partial trace of the singlet projector is maximally mixed", "[numerics]") {
  Vector psi(4);
  const double r = 1.0 / std::sqrt(2.0);
  psi << 0, r, -r, 0;
  const Matrix joint = psi * psi.adjoint();
  const Matrix reduced = partial_trace(joint, SubsystemShape{{2, 2}}, {0});
  REQUIRE(max_abs_diff(reduced, ident(2) * 0.5) < 1e-15);
  REQUIRE(max_abs_diff(partial_trace(joint, SubsystemShape{{2, 2}}, {1}), ident(2) * 0.5) < 1e-15);
}

TEST_CASE("partial trace keeps everything or nothing", "[numerics]") {
  Rng rng(14);
  const Matrix m = rng.gaussian_matrix(6, 6);
  const SubsystemShape shape{{2, 3}};
  REQUIRE(max_abs_diff(partial_trace(m, shape, {0, 1}), m) == 0.0);
  const Matrix t = partial_trace(m, shape, {});
  REQUIRE(t.rows() == 1);
  REQUIRE(std::abs(t(0, 0) - m.trace()) < 1e-12);
}

TEST_CASE("partial trace preserves the trace", "[numerics]") {
  Rng rng(15);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix m = rng.gaussian_matrix(6, 6);
    REQUIRE(std::abs(partial_trace(m, SubsystemShape{{2, 3}}, {0}).trace() - m.trace()) < 1e-12);
    REQUIRE(std::abs(partial_trace(m, SubsystemShape{{2, 3}}, {1}).trace() - m.trace()) < 1e-12);
  }
}

TEST_CASE("sequential partial traces match tracing at once", "[numerics]") {
  Rng rng(16);
  const Matrix m = rng.gaussian_matrix(8, 8);
  const SubsystemShape shape{{2, 2, 2}};
  const Matrix direct = partial_trace(m, shape, {0});
  const Matrix two_step =
      partial_trace(partial_trace(m, shape, {0, 1}), SubsystemShape{{2, 2}}, {0});
  REQUIRE(max_abs_diff(direct, two_step) < 1e-12);
}

TEST_CASE("partial trace validates its inputs", "[numerics]") {
  const Matrix m = ident(4);
  REQUIRE(thrown_field([&] { partial_trace(m, SubsystemShape{{2, 3}}, {0}); }) == "shape");
  REQUIRE(thrown_field([&] { partial_trace(m, SubsystemShape{{2, 2}}, {2}); }) == "keep");
  REQUIRE(thrown_field([&] { partial_trace(m, SubsystemShape{{}}, {0}); }) == "shape");
  REQUIRE(thrown_field([&] {
            partial_trace(Matrix::Zero(2, 3), SubsystemShape{{2, 3}}, {0});
          }) == "matrix");
}

TEST_CASE("herm_eig solves a diagonal matrix exactly", "[numerics]") {
  Matrix m(2, 2);
  m << 3, 0, 0, 1;
  const HermEig eig = herm_eig(m);
  REQUIRE(std::abs(eig.values(0) - 3.0) < 1e-14);
  REQUIRE(std::abs(eig.values(1) - 1.0) < 1e-14);
  REQUIRE(max_abs_diff(eig.vectors * eig.values.cast<Complex>().asDiagonal() *
                           eig.vectors.adjoint(),
                       m) < 1e-14);
}

TEST_CASE("herm_eig knows the bit-flip spectrum", "[numerics]") {
  const HermEig eig = herm_eig(pauli_x());
  REQUIRE(std::abs(eig.values(0) - 1.0) < 1e-12);
  REQUIRE(std::abs(eig.values(1) + 1.0) < 1e-12);
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices", "[numerics]") {
  Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix g = rng.gaussian_matrix(4, 4);
    const Matrix h = (g + g.adjoint()) * 0.5;
    const HermEig eig = herm_eig(h);
    REQUIRE(max_abs_diff(eig.vectors * eig.values.cast<Complex>().asDiagonal() *
                             eig.vectors.adjoint(),
                         h) < 1e-10);
    REQUIRE(max_abs_diff(eig.vectors.adjoint() * eig.vectors, ident(4)) < 1e-10);
    for (int i = 1; i < 4; ++i) REQUIRE(eig.values(i - 1) >= eig.values(i));
  }
}

TEST_CASE("herm_eig rejects non-Hermitian input", "[numerics]") {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  REQUIRE(thrown_field([&] { herm_eig(m); }) == "hermitian");
  REQUIRE(thrown_field([&] { herm_eig(Matrix::Zero(2, 3)); }) == "matrix");
}

TEST_CASE("sqrt_psd of a diagonal matrix", "[numerics]") {
  Matrix m(2, 2);
  m << 4, 0, 0, 9;
  Matrix expected(2, 2);
  expected << 2, 0, 0, 3;
  REQUIRE(max_abs_diff(sqrt_psd(m), expected) < 1e-14);
  REQUIRE(max_abs_diff(sqrt_psd(ident(3)), ident(3)) < 1e-14);
}

TEST_CASE("sqrt_psd squares back to the input", "[numerics]") {
  Rng rng(18);
  const Matrix g = rng.gaussian_matrix(3, 3);
  const Matrix rho = (g * g.adjoint()) / (g * g.adjoint()).trace().real();
  const Matrix root = sqrt_psd(rho);
  REQUIRE(max_abs_diff(root * root, rho) < 1e-10);
  REQUIRE(hermiticity_residual(root) == 0.0);
}

TEST_CASE("sqrt_psd clamps tolerated negative noise and rejects real negatives",
          "[numerics]") {
  Matrix noisy(2, 2);
  noisy << 1, 0, 0, -1e-10;
  const Matrix root = sqrt_psd(noisy);
  REQUIRE(std::abs(root(1, 1)) < 1e-15);

  Matrix bad(2, 2);
  bad << 1, 0, 0, -0.5;
  REQUIRE(thrown_field([&] { sqrt_psd(bad); }) == "eigenvalues");
}

TEST_CASE("orthonormalize_columns yields isometries deterministically", "[numerics]") {
  Rng rng(19);
  const Matrix g = rng.gaussian_matrix(6, 3);
  const Matrix q = orthonormalize_columns(g);
  REQUIRE(max_abs_diff(q.adjoint() * q, ident(3)) < 1e-12);
  REQUIRE(max_abs_diff(orthonormalize_columns(q), q) < 1e-12);
  REQUIRE(thrown_field([&] { orthonormalize_columns(Matrix::Zero(2, 3)); }) == "dim");
}

TEST_CASE("shape and finiteness validation", "[numerics]") {
  REQUIRE(thrown_field([] { SubsystemShape{{2, 0}}.validate(); }) == "shape");
  REQUIRE(thrown_field([] { SubsystemShape{{}}.validate(); }) == "shape");
  REQUIRE(thrown_field([] { max_abs_diff(Matrix::Zero(2, 2), Matrix::Zero(3, 3)); }) == "dim");
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  REQUIRE(thrown_field([&] { check_finite(m); }) == "entries");
}
