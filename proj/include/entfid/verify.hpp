#pragma once

// Randomized property suites. Each suite draws its own deterministic
// instance stream, reports the worst violation it saw, and compares against
// a tolerance pinned here. The CLI drives the whole catalog; the acceptance
// harness reuses individual suites at larger sample counts.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "channels.hpp"
#include "extremal.hpp"
#include "fidelity.hpp"
#include "numerics.hpp"
#include "rng.hpp"
#include "states.hpp"

namespace entfid {

struct PropertyResult {
  std::string name;
  int samples;
  double max_violation;
  double tolerance;
  bool pass;
};

namespace detail {

inline PropertyResult finish(std::string name, int samples, double max_violation,
                             double tolerance) {
  return {std::move(name), samples, max_violation, tolerance, max_violation <= tolerance};
}

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

inline Matrix random_hermitian(int dim, Rng& rng) {
  const Matrix g = rng.gaussian_matrix(dim, dim);
  return ((g + g.adjoint()) * 0.5).eval();
}

}  // namespace detail

inline PropertyResult prop_kron_mixed_product(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int da = 2 + i % 2, db = 2 + (i / 2) % 2;
    const Matrix a = rng.gaussian_matrix(da, da), b = rng.gaussian_matrix(db, db);
    const Matrix c = rng.gaussian_matrix(da, da), d = rng.gaussian_matrix(db, db);
    const Matrix ac = a * c, bd = b * d;
    worst = std::max(worst, max_abs_diff(kron(a, b) * kron(c, d), kron(ac, bd)));
  }
  return detail::finish("kron_mixed_product", samples, worst, 1e-12);
}

inline PropertyResult prop_kron_associative(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Matrix a = rng.gaussian_matrix(2, 2);
    const Matrix b = rng.gaussian_matrix(2 + i % 2, 2 + i % 2);
    const Matrix c = rng.gaussian_matrix(2, 2);
    worst = std::max(worst, max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))));
  }
  return detail::finish("kron_associative", samples, worst, 1e-12);
}

inline PropertyResult prop_partial_trace_preserves_trace(std::uint64_t seed, int samples) {
  Rng rng(seed);
  const std::vector<SubsystemShape> shapes = {
      SubsystemShape{{2, 2}}, SubsystemShape{{2, 3}}, SubsystemShape{{3, 2}},
      SubsystemShape{{2, 2, 2}}};
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const SubsystemShape& shape = shapes[i % shapes.size()];
    const Matrix m = detail::random_hermitian(shape.total_dim(), rng);
    const int keep = i % static_cast<int>(shape.dims.size());
    const Complex t = partial_trace(m, shape, {keep}).trace();
    worst = std::max(worst, std::abs(t - m.trace()));
  }
  return detail::finish("partial_trace_preserves_trace", samples, worst, 1e-12);
}

inline PropertyResult prop_partial_trace_of_product(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int da = 2 + i % 3, db = 2 + (i / 3) % 2;
    const DensityOperator rho = random_density(da, 1 + i % da, rng);
    const DensityOperator sig = random_density(db, 1 + i % db, rng);
    const Matrix joint = kron(rho.matrix(), sig.matrix());
    const SubsystemShape shape{{da, db}};
    worst = std::max(worst, max_abs_diff(partial_trace(joint, shape, {0}), rho.matrix()));
    worst = std::max(worst, max_abs_diff(partial_trace(joint, shape, {1}), sig.matrix()));
  }
  return detail::finish("partial_trace_of_product", samples, worst, 1e-12);
}

inline PropertyResult prop_partial_trace_sequential(std::uint64_t seed, int samples) {
  Rng rng(seed);
  const SubsystemShape shape{{2, 3, 2}};
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Matrix m = detail::random_hermitian(shape.total_dim(), rng);
    const Matrix two_step =
        partial_trace(partial_trace(m, shape, {0, 1}), SubsystemShape{{2, 3}}, {0});
    worst = std::max(worst, max_abs_diff(two_step, partial_trace(m, shape, {0})));
  }
  return detail::finish("partial_trace_sequential", samples, worst, 1e-12);
}

inline PropertyResult prop_herm_eig_reconstruction(std::uint64_t seed, int samples) {
  Rng rng(seed);
  const int dims[] = {2, 3, 4, 8, 16};
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = dims[i % 5];
    const Matrix m = detail::random_hermitian(d, rng);
    const HermEig eig = herm_eig(m);
    worst = std::max(
        worst, max_abs_diff(eig.vectors * eig.values.cast<Complex>().asDiagonal() *
                                eig.vectors.adjoint(),
                            m));
    worst = std::max(worst, max_abs_diff(eig.vectors.adjoint() * eig.vectors,
                                         Matrix::Identity(d, d)));
    for (int k = 0; k + 1 < d; ++k)
      worst = std::max(worst, detail::positive_part(eig.values(k + 1) - eig.values(k)));
  }
  return detail::finish("herm_eig_reconstruction", samples, worst, 1e-10);
}

inline PropertyResult prop_sqrt_psd_squares(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 3;
    const DensityOperator rho = random_density(d, 1 + i % d, rng);
    const Matrix s = sqrt_psd(rho.matrix());
    worst = std::max(worst, max_abs_diff(s * s, rho.matrix()));
  }
  return detail::finish("sqrt_psd_squares", samples, worst, 1e-10);
}

inline PropertyResult prop_purification_round_trip(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 3;
    const DensityOperator rho = random_density(d, 1 + i % d, rng);
    const PureState psi = canonical_purification(rho);
    const int d_p = psi.dim() / d;
    const Matrix proj = psi.amplitudes() * psi.amplitudes().adjoint();
    worst = std::max(worst,
                     max_abs_diff(partial_trace(proj, SubsystemShape{{d, d_p}}, {0}),
                                  rho.matrix()));
  }
  return detail::finish("purification_round_trip", samples, worst, 1e-10);
}

inline PropertyResult prop_probability_correct_self(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const PureState psi = random_pure(2 + i % 4, rng);
    worst = std::max(worst, std::abs(probability_correct(psi, density_from_pure(psi)) - 1.0));
  }
  return detail::finish("probability_correct_self", samples, worst, 1e-12);
}

// Fixed sample count: the 0.02 entrywise tolerance is calibrated for 1e4
// draws of the dimension-3 first moment.
inline PropertyResult prop_random_pure_moment(std::uint64_t seed, int /*samples*/) {
  Rng rng(seed);
  const int d = 3, n = 10000;
  Matrix mean = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    const Vector v = random_pure(d, rng).amplitudes();
    mean += v * v.adjoint();
  }
  mean /= static_cast<double>(n);
  const double worst = max_abs_diff(mean, Matrix::Identity(d, d) / static_cast<double>(d));
  return detail::finish("random_pure_moment", n, worst, 0.02);
}

inline PropertyResult prop_channel_outputs_valid(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d_in = 2 + i % 3, d_out = 2 + (i / 3) % 3;
    const int kraus = std::max(1 + i % 4, (d_in + d_out - 1) / d_out);
    const QuantumChannel e = random_channel(d_in, d_out, kraus, rng);
    const DensityOperator rho = random_density(d_in, 1 + i % d_in, rng);
    const Matrix out = apply_matrix(e, rho.matrix());
    const HermEig eig = herm_eig(out);
    worst = std::max({worst, std::abs(out.trace() - Complex(1.0, 0.0)),
                      hermiticity_residual(out),
                      detail::positive_part(-eig.values(eig.values.size() - 1))});
  }
  return detail::finish("channel_outputs_valid", samples, worst, 1e-9);
}

inline PropertyResult prop_dilation_round_trip(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 2;
    const QuantumChannel e = random_channel(d, d, 1 + i % 3, rng);
    const UnitaryRep rep = stinespring_dilation(e);
    const QuantumChannel back = channel_from_unitary_rep(rep);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        Matrix basis = Matrix::Zero(d, d);
        basis(r, c) = 1.0;
        worst = std::max(worst, max_abs_diff(apply_matrix(e, basis), apply_matrix(back, basis)));
      }
    const DensityOperator rho = random_density(d, d, rng);
    worst = std::max(worst, max_abs_diff(apply(rep, rho).matrix(), apply(e, rho).matrix()));
  }
  return detail::finish("dilation_round_trip", samples, worst, 1e-8);
}

inline PropertyResult prop_extend_commutes_partial_trace(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d_s = 2 + i % 2, d_t = 2 + (i / 2) % 2;
    const QuantumChannel e = random_channel(d_s, d_s, 1 + i % 3, rng);
    const DensityOperator joint = random_density(d_s * d_t, 1 + i % (d_s * d_t), rng);
    const QuantumChannel lifted = extend_with_identity(e, d_t, IdentitySide::right);
    const SubsystemShape shape{{d_s, d_t}};
    const Matrix lhs = partial_trace(apply_matrix(lifted, joint.matrix()), shape, {0});
    const Matrix rhs = apply_matrix(e, partial_trace(joint.matrix(), shape, {0}));
    worst = std::max(worst, max_abs_diff(lhs, rhs));
  }
  return detail::finish("extend_commutes_partial_trace", samples, worst, 1e-10);
}

inline PropertyResult prop_tensor_channel_factorizes(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int da = 2 + i % 2, db = 2 + (i / 2) % 2;
    const QuantumChannel e = random_channel(da, da, 1 + i % 3, rng);
    const QuantumChannel f = random_channel(db, db, 1 + (i / 3) % 3, rng);
    const DensityOperator rho = random_density(da, 1 + i % da, rng);
    const DensityOperator sig = random_density(db, 1 + i % db, rng);
    const Matrix lhs = apply_matrix(tensor_channels(e, f), kron(rho.matrix(), sig.matrix()));
    const Matrix rhs2a = apply_matrix(e, rho.matrix());
    const Matrix rhs2b = apply_matrix(f, sig.matrix());
    const Matrix rhs = kron(rhs2a, rhs2b);
    worst = std::max(worst, max_abs_diff(lhs, rhs));
  }
  return detail::finish("tensor_channel_factorizes", samples, worst, 1e-10);
}

inline PropertyResult prop_fidelity_symmetric(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 3;
    const DensityOperator a = random_density(d, 1 + i % d, rng);
    const DensityOperator b = random_density(d, 1 + (i / 2) % d, rng);
    worst = std::max(worst, std::abs(uhlmann_fidelity(a, b).value - uhlmann_fidelity(b, a).value));
  }
  return detail::finish("fidelity_symmetric", samples, worst, 1e-10);
}

// Equal pairs must sit at fidelity 1 within 1e-9; random distinct pairs
// (always separated well beyond 1e-6 entrywise) must sit strictly below.
inline PropertyResult prop_fidelity_one_iff_equal(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 3;
    const DensityOperator a = random_density(d, 1 + i % d, rng);
    worst = std::max(worst,
                     detail::positive_part((1.0 - 1e-9) - uhlmann_fidelity(a, a).value));
    const DensityOperator b = random_density(d, 1 + (i / 2) % d, rng);
    if (max_abs_diff(a.matrix(), b.matrix()) > 1e-6)
      worst = std::max(worst,
                       detail::positive_part(uhlmann_fidelity(a, b).value - (1.0 - 1e-9)));
  }
  return detail::finish("fidelity_one_iff_equal", samples, worst, 0.0);
}

inline PropertyResult prop_pure_overlap_formula(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 3;
    const PureState psi = random_pure(d, rng), phi = random_pure(d, rng);
    const double direct = std::norm((psi.amplitudes().adjoint() * phi.amplitudes())(0, 0));
    const double f = uhlmann_fidelity(density_from_pure(psi), density_from_pure(phi)).value;
    worst = std::max(worst, std::abs(f - direct));
  }
  return detail::finish("pure_overlap_formula", samples, worst, 1e-10);
}

inline PropertyResult prop_pure_mixed_overlap(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 3;
    const PureState psi = random_pure(d, rng);
    const DensityOperator rho = random_density(d, 1 + i % d, rng);
    const double f = uhlmann_fidelity(density_from_pure(psi), rho).value;
    worst = std::max(worst, std::abs(f - probability_correct(psi, rho)));
  }
  return detail::finish("pure_mixed_overlap", samples, worst, 1e-10);
}

// Discarding a subsystem can only bring two states closer.
inline PropertyResult prop_trace_monotonicity(std::uint64_t seed, int samples) {
  Rng rng(seed);
  const std::vector<SubsystemShape> shapes = {
      SubsystemShape{{2, 2}}, SubsystemShape{{2, 3}}, SubsystemShape{{3, 2}}};
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const SubsystemShape& shape = shapes[i % shapes.size()];
    const int n = shape.total_dim();
    const DensityOperator j1 = random_density(n, 1 + i % n, rng);
    const DensityOperator j2 = random_density(n, 1 + (i / 2) % n, rng);
    const double f_joint = uhlmann_fidelity(j1, j2).value;
    const double f_red = state_fidelity(partial_trace(j1.matrix(), shape, {0}),
                                        partial_trace(j2.matrix(), shape, {0}));
    worst = std::max(worst, detail::positive_part(f_joint - f_red));
  }
  return detail::finish("trace_monotonicity", samples, worst, 1e-9);
}

// A channel can only bring two states closer.
inline PropertyResult prop_operation_monotonicity(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d_in = 2 + i % 3, d_out = 2 + (i / 3) % 3;
    const int kraus = std::max(1 + i % 4, (d_in + d_out - 1) / d_out);
    const QuantumChannel e = random_channel(d_in, d_out, kraus, rng);
    const DensityOperator r1 = random_density(d_in, 1 + i % d_in, rng);
    const DensityOperator r2 = random_density(d_in, 1 + (i / 2) % d_in, rng);
    const double before = uhlmann_fidelity(r1, r2).value;
    const double after = state_fidelity(apply_matrix(e, r1.matrix()), apply_matrix(e, r2.matrix()));
    worst = std::max(worst, detail::positive_part(before - after));
  }
  return detail::finish("operation_monotonicity", samples, worst, 1e-9);
}

inline PropertyResult prop_fe_formula_agreement(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 3;
    const QuantumChannel e = random_channel(d, d, 1 + i % 4, rng);
    const DensityOperator rho = random_density(d, 1 + i % d, rng);
    const double pur = entanglement_fidelity_purification(rho, e).value;
    const double kra = entanglement_fidelity_kraus(rho, e).value;
    worst = std::max(worst, std::abs(pur - kra));
  }
  return detail::finish("fe_formula_agreement", samples, worst, 1e-10);
}

inline PropertyResult prop_fe_le_fidelity(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 3;
    const QuantumChannel e = random_channel(d, d, 1 + i % 4, rng);
    const DensityOperator rho = random_density(d, 1 + i % d, rng);
    const double fe = entanglement_fidelity_kraus(rho, e).value;
    const double f = uhlmann_fidelity(rho, apply(e, rho)).value;
    worst = std::max(worst, detail::positive_part(fe - f));
  }
  return detail::finish("fe_le_fidelity", samples, worst, 1e-9);
}

// The entanglement fidelity must not depend on which purification carries
// the computation: rotated and padded purifiers give the same value.
inline PropertyResult prop_fe_purification_independence(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 3;
    const QuantumChannel e = random_channel(d, d, 1 + i % 4, rng);
    const DensityOperator rho = random_density(d, 1 + i % d, rng);
    const double base = entanglement_fidelity_purification(rho, e).value;
    const int d_p = rank_of(rho) + i % 2;
    const PureState psi = purification_with_dim(rho, d_p);
    const Matrix w = random_unitary(d_p, rng);
    const Vector rotated = kron(Matrix::Identity(d, d), w) * psi.amplitudes();
    const double other = entanglement_fidelity_from_purification(PureState(rotated), d, e);
    worst = std::max(worst, std::abs(base - other));
  }
  return detail::finish("fe_purification_independence", samples, worst, 1e-9);
}

inline PropertyResult prop_fe_pure_state_equality(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 3;
    const QuantumChannel e = random_channel(d, d, 1 + i % 4, rng);
    const DensityOperator rho = density_from_pure(random_pure(d, rng));
    const double f = uhlmann_fidelity(rho, apply(e, rho)).value;
    const double fe = entanglement_fidelity_kraus(rho, e).value;
    worst = std::max(worst, std::abs(f - fe));
  }
  return detail::finish("fe_pure_state_equality", samples, worst, 1e-9);
}

inline PropertyResult prop_sampled_extensions_valid(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 2;
    const DensityOperator rho = random_density(d, 1 + i % d, rng);
    const Extension ext = sample_extension(rho, 1 + i % 3, seed + 1000 + i);
    worst = std::max(worst, is_extension(ext, rho).residual);
  }
  return detail::finish("sampled_extensions_valid", samples, worst, 1e-8);
}

// Every extension scores at least the entanglement fidelity.
inline PropertyResult prop_extension_pointwise_bound(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 2;
    const QuantumChannel e = random_channel(d, d, 1 + i % 4, rng);
    const DensityOperator rho = random_density(d, 1 + i % d, rng);
    const Extension ext = sample_extension(rho, 1 + i % 3, seed + 2000 + i);
    const double fe = entanglement_fidelity_kraus(rho, e).value;
    worst = std::max(worst, detail::positive_part(fe - extension_objective(e, ext)));
  }
  return detail::finish("extension_pointwise_bound", samples, worst, 1e-9);
}

// With identity auxiliary dynamics the joint objective must reproduce the
// extension objective exactly: both route through the same arithmetic.
inline PropertyResult prop_aux_identity_slice(std::uint64_t seed, int samples) {
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int d = 2 + i % 2, d_t = 1 + i % 3;
    const QuantumChannel e = random_channel(d, d, 1 + i % 4, rng);
    const DensityOperator rho = random_density(d, 1 + i % d, rng);
    const Extension ext = sample_extension(rho, d_t, seed + 3000 + i);
    const double a = extension_dynamics_objective(e, ext, identity_channel(d_t));
    const double b = extension_objective(e, ext);
    worst = std::max(worst, std::abs(a - b));
  }
  return detail::finish("aux_identity_slice", samples, worst, 0.0);
}

inline PropertyResult prop_purification_overlap_bound(std::uint64_t seed, int samples) {
  Rng rng(seed);
  const int instances = std::max(1, samples / 10);
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    const int d = 2 + i % 2;
    const DensityOperator r1 = i % 3 == 0 ? density_from_pure(random_pure(d, rng))
                                          : random_density(d, 1 + i % d, rng);
    const DensityOperator r2 = random_density(d, 1 + (i / 2) % d, rng);
    const OverlapReport report = purification_overlap_check(r1, r2, 50, seed + 4000 + i);
    worst = std::max(worst, report.max_excess);
  }
  return detail::finish("purification_overlap_bound", instances, worst, 1e-9);
}

// Deliberately broken channel (Kraus sum short of the identity); the suite
// must flag it. Exists to prove the harness can fail.
inline PropertyResult prop_negative_control_broken_channel() {
  Matrix a0 = std::sqrt(0.7) * Matrix::Identity(2, 2);
  Matrix a1(2, 2);
  a1 << 0, std::sqrt(0.2), std::sqrt(0.2), 0;
  const QuantumChannel broken = QuantumChannel::without_validation({a0, a1});
  return detail::finish("negative_control_broken_channel", 1, broken.completeness_residual(),
                        1e-8);
}

inline std::vector<PropertyResult> run_property_suites(
    std::uint64_t seed, int samples, bool inject_fault = false,
    const std::map<std::string, double>& tolerance_overrides = {}) {
  std::vector<PropertyResult> rows;
  rows.push_back(prop_kron_mixed_product(seed + 101, samples));
  rows.push_back(prop_kron_associative(seed + 102, samples));
  rows.push_back(prop_partial_trace_preserves_trace(seed + 103, samples));
  rows.push_back(prop_partial_trace_of_product(seed + 104, samples));
  rows.push_back(prop_partial_trace_sequential(seed + 105, samples));
  rows.push_back(prop_herm_eig_reconstruction(seed + 106, samples));
  rows.push_back(prop_sqrt_psd_squares(seed + 107, samples));
  rows.push_back(prop_purification_round_trip(seed + 201, samples));
  rows.push_back(prop_probability_correct_self(seed + 202, samples));
  rows.push_back(prop_random_pure_moment(seed + 203, samples));
  rows.push_back(prop_channel_outputs_valid(seed + 301, samples));
  rows.push_back(prop_dilation_round_trip(seed + 302, samples));
  rows.push_back(prop_extend_commutes_partial_trace(seed + 303, samples));
  rows.push_back(prop_tensor_channel_factorizes(seed + 304, samples));
  rows.push_back(prop_fidelity_symmetric(seed + 401, samples));
  rows.push_back(prop_fidelity_one_iff_equal(seed + 402, samples));
  rows.push_back(prop_pure_overlap_formula(seed + 403, samples));
  rows.push_back(prop_pure_mixed_overlap(seed + 404, samples));
  rows.push_back(prop_trace_monotonicity(seed + 405, samples));
  rows.push_back(prop_operation_monotonicity(seed + 406, samples));
  rows.push_back(prop_fe_formula_agreement(seed + 407, samples));
  rows.push_back(prop_fe_le_fidelity(seed + 408, samples));
  rows.push_back(prop_fe_purification_independence(seed + 409, samples));
  rows.push_back(prop_fe_pure_state_equality(seed + 410, samples));
  rows.push_back(prop_sampled_extensions_valid(seed + 501, samples));
  rows.push_back(prop_extension_pointwise_bound(seed + 502, samples));
  rows.push_back(prop_aux_identity_slice(seed + 503, samples));
  rows.push_back(prop_purification_overlap_bound(seed + 504, samples));
  if (inject_fault) rows.push_back(prop_negative_control_broken_channel());
  for (auto& row : rows) {
    const auto it = tolerance_overrides.find(row.name);
    if (it == tolerance_overrides.end()) continue;
    row.tolerance = it->second;
    row.pass = row.max_violation <= row.tolerance;
  }
  return rows;
}

}  // namespace entfid
