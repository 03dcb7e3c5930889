#pragma once

// Extremal characterizations of entanglement fidelity: minimizations over
// extensions of a state (with and without auxiliary dynamics), over input
// pure states, and the bounds those minima certify.
//
// The search backbone is coordinate pattern search with random restarts.
// Extensions are parametrized through a CPTP map acting on the purifier of
// the base state, the map itself through an isometry that is
// re-orthonormalized after every parameter move, so every point the search
// visits is exactly a valid extension (up to roundoff). Restart r draws
// from Rng(seed + r); restart 0 starts from a canonical deterministic
// point, which for the extension searches is the embedded purification,
// whose objective value already equals the entanglement fidelity.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "channels.hpp"
#include "fidelity.hpp"
#include "numerics.hpp"
#include "rng.hpp"
#include "states.hpp"

namespace entfid {

struct SearchBudget {
  int restarts = 6;
  int sweeps = 60;             // pattern-search sweeps per restart
  std::uint64_t seed = 0;
  std::optional<int> aux_dim;  // auxiliary dimension; defaults to rank of the state
};

struct SearchResult {
  double min_value = 1.0;
  long evaluations = 0;
  bool converged = false;                     // step size bottomed out at the best restart
  std::vector<double> restart_values;         // best value per restart, in restart order
  std::optional<Extension> extension;         // argmin extension, when applicable
  std::optional<QuantumChannel> aux_channel;  // argmin auxiliary dynamics, when applicable
  std::optional<PureState> argmin_state;      // argmin input state, when applicable
};

namespace detail {

inline constexpr double kMinStep = 1e-5;
inline constexpr double kStartStep = 0.3;

struct PatternOutcome {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;
};

// Coordinate pattern search: probes +/- step along each coordinate, keeps
// the first improvement, halves the step after a sweep with none. Keeps the
// best point ever evaluated.
template <class F>
PatternOutcome pattern_search(F&& f, std::vector<double> x, int max_sweeps,
                              double step = kStartStep, double min_step = kMinStep) {
  PatternOutcome out;
  double fx = f(x);
  long evals = 1;
  const std::size_t n = x.size();
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool improved = false;
    for (std::size_t c = 0; c < n; ++c) {
      const double orig = x[c];
      bool moved = false;
      for (const double delta : {step, -step}) {
        x[c] = orig + delta;
        const double fy = f(x);
        ++evals;
        if (fy < fx - 1e-14) {
          fx = fy;
          moved = true;
          break;
        }
      }
      if (!moved) x[c] = orig;
      improved = improved || moved;
    }
    if (!improved) {
      step *= 0.5;
      if (step < min_step) converged = true;
    }
  }
  out.x = std::move(x);
  out.value = fx;
  out.evaluations = evals;
  out.converged = converged;
  return out;
}

inline Matrix params_to_matrix(const std::vector<double>& x, int rows, int cols) {
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      m(r, c) = Complex(x[k], x[k + 1]);
      k += 2;
    }
  return m;
}

inline std::vector<double> matrix_to_params(const Matrix& m) {
  std::vector<double> x;
  x.reserve(2 * m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      x.push_back(m(r, c).real());
      x.push_back(m(r, c).imag());
    }
  return x;
}

inline std::vector<Matrix> slice_rows(const Matrix& v, int block_rows) {
  std::vector<Matrix> blocks;
  blocks.reserve(v.rows() / block_rows);
  for (Eigen::Index top = 0; top + block_rows <= v.rows(); top += block_rows)
    blocks.push_back(v.middleRows(top, block_rows));
  return blocks;
}

inline Matrix kraus_sum(const std::vector<Matrix>& kraus, const Matrix& m) {
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const Matrix& a : kraus) out.noalias() += a * m * a.adjoint();
  return out;
}

// For psi on system ⊗ aux (aux index minor), returns
// sum_i (I ⊗ A_i)|psi><psi|(I ⊗ A_i)*.
inline Matrix evolve_second_factor(const Vector& psi, int d_sys,
                                   const std::vector<Matrix>& kraus) {
  const int d_aux = static_cast<int>(psi.size()) / d_sys;
  const int d_out = static_cast<int>(kraus.front().rows());
  Matrix psi_mat(d_sys, d_aux);
  for (int s = 0; s < d_sys; ++s)
    for (int p = 0; p < d_aux; ++p) psi_mat(s, p) = psi(static_cast<Eigen::Index>(s) * d_aux + p);
  Matrix joint = Matrix::Zero(static_cast<Eigen::Index>(d_sys) * d_out,
                              static_cast<Eigen::Index>(d_sys) * d_out);
  Vector v(static_cast<Eigen::Index>(d_sys) * d_out);
  for (const Matrix& a : kraus) {
    const Matrix w = psi_mat * a.transpose();
    for (int s = 0; s < d_sys; ++s)
      for (int t = 0; t < d_out; ++t) v(static_cast<Eigen::Index>(s) * d_out + t) = w(s, t);
    joint.noalias() += v * v.adjoint();
  }
  return joint;
}

// Canonical isometry [I; 0]: the encoded map embeds the purifier into the
// auxiliary space, keeping the extension pure. Needs rows_per_block >= cols.
inline Matrix embedding_isometry(int rows, int cols) {
  Matrix v = Matrix::Zero(rows, cols);
  v.topRows(cols) = Matrix::Identity(cols, cols);
  return v;
}

}  // namespace detail

// Applies a CPTP map to the purifier of `rho`; every extension of `rho`
// with the given auxiliary dimension arises this way from some map.
inline Extension extension_from_channel(const DensityOperator& rho, const QuantumChannel& lambda) {
  const PureState psi = canonical_purification(rho);
  const int d_p = psi.dim() / rho.dim();
  if (lambda.dim_in() != d_p)
    throw ValidationError("dim", "map input dimension " + std::to_string(lambda.dim_in()) +
                                     " does not match purifier dimension " + std::to_string(d_p));
  const Matrix joint = detail::evolve_second_factor(psi.amplitudes(), rho.dim(), lambda.kraus());
  return Extension(DensityOperator(joint), SubsystemShape{{rho.dim(), lambda.dim_out()}});
}

// Random extension of `rho` with auxiliary dimension `aux_dim`, drawn by
// pushing the purifier through a Haar-random channel of full Choi rank.
inline Extension sample_extension(const DensityOperator& rho, int aux_dim, std::uint64_t seed) {
  if (aux_dim < 1) throw ValidationError("dim", "auxiliary dimension must be positive");
  Rng rng(seed);
  const int d_p = rank_of(rho);
  const QuantumChannel lambda = random_channel(d_p, aux_dim, d_p * aux_dim, rng);
  return extension_from_channel(rho, lambda);
}

// Fidelity between an extension evolved by auxiliary-only dynamics and the
// same extension evolved by e on the system and the same dynamics on the
// auxiliary factor: F((I ⊗ aux)(joint), (e ⊗ aux)(joint)).
inline double extension_dynamics_objective(const QuantumChannel& e, const Extension& ext,
                                           const QuantumChannel& aux) {
  if (!e.is_square() || e.dim_in() != ext.system_dim())
    throw ValidationError("dim", "channel does not act on the extension's system factor");
  if (!aux.is_square() || aux.dim_in() != ext.aux_dim())
    throw ValidationError("dim", "auxiliary dynamics do not act on the auxiliary factor");
  const QuantumChannel lhs_map = extend_with_identity(aux, ext.system_dim(), IdentitySide::left);
  const QuantumChannel rhs_map = tensor_channels(e, aux);
  return state_fidelity(apply_matrix(lhs_map, ext.joint.matrix()),
                        apply_matrix(rhs_map, ext.joint.matrix()));
}

// Fidelity between an extension and its image under e ⊗ identity. Defined
// as the dynamics objective with identity auxiliary dynamics so the two
// objectives agree exactly on that slice.
inline double extension_objective(const QuantumChannel& e, const Extension& ext) {
  return extension_dynamics_objective(e, ext, identity_channel(ext.aux_dim()));
}

// Minimizes F(joint, (e ⊗ I)(joint)) over extensions of `rho`. The minimum
// is the entanglement fidelity, reached at any pure extension; the canonical
// restart starts there, and the random restarts probe that nothing lies
// below it.
inline SearchResult min_extension_fidelity(const DensityOperator& rho, const QuantumChannel& e,
                                           const SearchBudget& budget) {
  if (!e.is_square() || e.dim_in() != rho.dim())
    throw ValidationError("dim", "channel does not act on the state's space");
  if (budget.restarts < 1) throw ValidationError("restarts", "need at least one restart");
  if (budget.sweeps < 1) throw ValidationError("sweeps", "need at least one sweep");
  const int d_s = rho.dim();
  const PureState psi = canonical_purification(rho);
  const int d_p = psi.dim() / d_s;
  const int d_t = budget.aux_dim.value_or(d_p);
  if (d_t < 1) throw ValidationError("dim", "auxiliary dimension must be positive");
  const int rows = d_p * d_t * d_t;  // Choi-rank many Kraus blocks of height d_t

  std::vector<Matrix> lifted;
  for (const Matrix& a : e.kraus()) lifted.push_back(kron(a, Matrix::Identity(d_t, d_t)));

  const auto objective = [&](const std::vector<double>& x) {
    const Matrix v = orthonormalize_columns(detail::params_to_matrix(x, rows, d_p));
    const Matrix joint = detail::evolve_second_factor(psi.amplitudes(), d_s,
                                                      detail::slice_rows(v, d_t));
    return state_fidelity(joint, detail::kraus_sum(lifted, joint));
  };

  SearchResult result;
  std::vector<double> best_x;
  for (int r = 0; r < budget.restarts; ++r) {
    Rng rng(budget.seed + static_cast<std::uint64_t>(r));
    const Matrix start = (r == 0 && d_t >= d_p) ? detail::embedding_isometry(rows, d_p)
                                                : random_isometry(rows, d_p, rng);
    detail::PatternOutcome out =
        detail::pattern_search(objective, detail::matrix_to_params(start), budget.sweeps);
    result.restart_values.push_back(out.value);
    result.evaluations += out.evaluations;
    if (best_x.empty() || out.value < result.min_value) {
      result.min_value = out.value;
      result.converged = out.converged;
      best_x = std::move(out.x);
    }
  }

  const Matrix v = orthonormalize_columns(detail::params_to_matrix(best_x, rows, d_p));
  result.extension = extension_from_channel(
      rho, QuantumChannel::without_validation(detail::slice_rows(v, d_t)));
  return result;
}

// Joint minimization over extensions and auxiliary dynamics of
// F((I ⊗ aux)(joint), (e ⊗ aux)(joint)). Restricting aux to the identity
// recovers the objective above, so this minimum can only be lower; both
// land on the entanglement fidelity.
inline SearchResult min_extension_dynamics_fidelity(const DensityOperator& rho,
                                                    const QuantumChannel& e,
                                                    const SearchBudget& budget) {
  if (!e.is_square() || e.dim_in() != rho.dim())
    throw ValidationError("dim", "channel does not act on the state's space");
  if (budget.restarts < 1) throw ValidationError("restarts", "need at least one restart");
  if (budget.sweeps < 1) throw ValidationError("sweeps", "need at least one sweep");
  const int d_s = rho.dim();
  const PureState psi = canonical_purification(rho);
  const int d_p = psi.dim() / d_s;
  const int d_t = budget.aux_dim.value_or(d_p);
  if (d_t < 1) throw ValidationError("dim", "auxiliary dimension must be positive");
  const int ext_rows = d_p * d_t * d_t;
  const int aux_rows = d_t * d_t * d_t;  // full Choi rank for maps on the auxiliary factor
  const std::size_t ext_params = static_cast<std::size_t>(2) * ext_rows * d_p;

  const Matrix eye_s = Matrix::Identity(d_s, d_s);
  const auto objective = [&](const std::vector<double>& x) {
    const std::vector<double> xe(x.begin(), x.begin() + ext_params);
    const std::vector<double> xa(x.begin() + ext_params, x.end());
    const Matrix ve = orthonormalize_columns(detail::params_to_matrix(xe, ext_rows, d_p));
    const Matrix va = orthonormalize_columns(detail::params_to_matrix(xa, aux_rows, d_t));
    const std::vector<Matrix> aux = detail::slice_rows(va, d_t);
    const Matrix joint =
        detail::evolve_second_factor(psi.amplitudes(), d_s, detail::slice_rows(ve, d_t));
    std::vector<Matrix> lhs_map, rhs_map;
    for (const Matrix& b : aux) lhs_map.push_back(kron(eye_s, b));
    for (const Matrix& a : e.kraus())
      for (const Matrix& b : aux) rhs_map.push_back(kron(a, b));
    return state_fidelity(detail::kraus_sum(lhs_map, joint), detail::kraus_sum(rhs_map, joint));
  };

  SearchResult result;
  std::vector<double> best_x;
  for (int r = 0; r < budget.restarts; ++r) {
    Rng rng(budget.seed + static_cast<std::uint64_t>(r));
    const Matrix ext_start = (r == 0 && d_t >= d_p) ? detail::embedding_isometry(ext_rows, d_p)
                                                    : random_isometry(ext_rows, d_p, rng);
    const Matrix aux_start =
        (r == 0) ? detail::embedding_isometry(aux_rows, d_t) : random_isometry(aux_rows, d_t, rng);
    std::vector<double> x0 = detail::matrix_to_params(ext_start);
    const std::vector<double> xa0 = detail::matrix_to_params(aux_start);
    x0.insert(x0.end(), xa0.begin(), xa0.end());
    detail::PatternOutcome out = detail::pattern_search(objective, std::move(x0), budget.sweeps);
    result.restart_values.push_back(out.value);
    result.evaluations += out.evaluations;
    if (best_x.empty() || out.value < result.min_value) {
      result.min_value = out.value;
      result.converged = out.converged;
      best_x = std::move(out.x);
    }
  }

  const std::vector<double> xe(best_x.begin(), best_x.begin() + ext_params);
  const std::vector<double> xa(best_x.begin() + ext_params, best_x.end());
  const Matrix ve = orthonormalize_columns(detail::params_to_matrix(xe, ext_rows, d_p));
  const Matrix va = orthonormalize_columns(detail::params_to_matrix(xa, aux_rows, d_t));
  result.extension = extension_from_channel(
      rho, QuantumChannel::without_validation(detail::slice_rows(ve, d_t)));
  result.aux_channel = QuantumChannel(detail::slice_rows(va, d_t));
  return result;
}

struct OverlapReport {
  double closed_form;   // fidelity of the two states
  double best_sampled;  // largest overlap among sampled purification pairs
  double best_refined;  // after direct-search refinement from the best sample
  double max_excess;    // max over all evaluated overlaps of (overlap - closed_form)
  double gap;           // closed_form - best_refined
  int samples;
  bool pass;            // no overlap exceeded the closed form beyond 1e-9
};

// Sweeps purifications of two states over a shared purifier, checking that
// no squared overlap exceeds their fidelity and that the swept maximum
// approaches it. Purifications of the second state are enumerated by a
// unitary on the purifier; the overlap reduces to |tr(W^T C)|^2 with C the
// cross Gram matrix of the two canonical purifications.
inline OverlapReport purification_overlap_check(const DensityOperator& rho1,
                                                const DensityOperator& rho2, int samples,
                                                std::uint64_t seed) {
  if (rho1.dim() != rho2.dim())
    throw ValidationError("dim", "states live on different spaces");
  if (samples < 1) throw ValidationError("samples", "need at least one sample");
  const double closed = state_fidelity(rho1.matrix(), rho2.matrix());
  const int d = rho1.dim();
  const int d_p = std::max(rank_of(rho1), rank_of(rho2));
  const PureState psi1 = purification_with_dim(rho1, d_p);
  const PureState psi2 = purification_with_dim(rho2, d_p);

  Matrix m1(d, d_p), m2(d, d_p);
  for (int s = 0; s < d; ++s)
    for (int p = 0; p < d_p; ++p) {
      m1(s, p) = psi1.amplitudes()(static_cast<Eigen::Index>(s) * d_p + p);
      m2(s, p) = psi2.amplitudes()(static_cast<Eigen::Index>(s) * d_p + p);
    }
  const Matrix cross = m1.adjoint() * m2;

  double max_excess = -1.0;
  const auto overlap_of = [&](const Matrix& w) {
    const double o = std::norm(w.cwiseProduct(cross).sum());  // |tr(W^T C)|^2
    max_excess = std::max(max_excess, o - closed);
    return o;
  };

  Rng rng(seed);
  double best_sampled = -1.0;
  Matrix best_w;
  for (int i = 0; i < samples; ++i) {
    const Matrix w = random_unitary(d_p, rng);
    const double o = overlap_of(w);
    if (o > best_sampled) {
      best_sampled = o;
      best_w = w;
    }
  }

  const auto refine_objective = [&](const std::vector<double>& x) {
    return -overlap_of(orthonormalize_columns(detail::params_to_matrix(x, d_p, d_p)));
  };
  const detail::PatternOutcome out =
      detail::pattern_search(refine_objective, detail::matrix_to_params(best_w), 200);
  const double best_refined = std::max(best_sampled, -out.value);

  OverlapReport report;
  report.closed_form = closed;
  report.best_sampled = best_sampled;
  report.best_refined = best_refined;
  report.max_excess = max_excess;
  report.gap = closed - best_refined;
  report.samples = samples;
  report.pass = max_excess <= 1e-9;
  return report;
}

// Minimizes <psi| e(|psi><psi|) |psi> over pure inputs. Each restart scans
// random states (restart 0 also scans the basis states and the flat
// superposition) and refines the best candidate by pattern search.
inline SearchResult min_pure_state_fidelity(const QuantumChannel& e, const SearchBudget& budget) {
  if (!e.is_square())
    throw ValidationError("channel", "pure-state fidelity scan needs dim_in = dim_out");
  if (budget.restarts < 1) throw ValidationError("restarts", "need at least one restart");
  if (budget.sweeps < 1) throw ValidationError("sweeps", "need at least one sweep");
  const int d = e.dim_in();
  long evals = 0;

  const auto value_of = [&](const Vector& psi) {
    double sum = 0.0;
    for (const Matrix& a : e.kraus()) sum += std::norm((psi.adjoint() * a * psi)(0, 0));
    return detail::clamp01(sum);
  };
  const auto objective = [&](const std::vector<double>& x) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(x[2 * i], x[2 * i + 1]);
    const double norm = v.norm();
    if (norm < 1e-6) return 2.0;  // degenerate encoding, never competitive
    ++evals;
    return value_of(v / norm);
  };

  constexpr int kScan = 64;
  SearchResult result;
  std::vector<double> best_x;
  for (int r = 0; r < budget.restarts; ++r) {
    Rng rng(budget.seed + static_cast<std::uint64_t>(r));
    Vector start;
    double start_value = 2.0;
    const auto consider = [&](const Vector& cand) {
      const double val = value_of(cand);
      ++evals;
      if (val < start_value) {
        start_value = val;
        start = cand;
      }
    };
    if (r == 0) {
      for (int k = 0; k < d; ++k) consider(Vector::Unit(d, k));
      consider(Vector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0)));
    }
    for (int i = 0; i < kScan; ++i) consider(random_pure(d, rng).amplitudes());

    std::vector<double> x0(2 * d);
    for (int i = 0; i < d; ++i) {
      x0[2 * i] = start(i).real();
      x0[2 * i + 1] = start(i).imag();
    }
    detail::PatternOutcome out = detail::pattern_search(objective, std::move(x0), budget.sweeps);
    result.restart_values.push_back(out.value);
    if (best_x.empty() || out.value < result.min_value) {
      result.min_value = out.value;
      result.converged = out.converged;
      best_x = std::move(out.x);
    }
  }
  result.evaluations = evals;

  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(best_x[2 * i], best_x[2 * i + 1]);
  result.argmin_state = PureState(detail::fix_global_phase(v / v.norm()));
  return result;
}

struct KnillLaflammeReport {
  double epsilon_hat;     // 1 - (smallest pure-state fidelity found)
  double bound;           // 1 - 1.5 * epsilon_hat
  double slack;           // additive slack applied when testing the bound
  double min_fe;          // smallest entanglement fidelity among tested states
  double refinement_gap;  // spread between the two best restarts of the scan
  int states;
  int violations;
  bool pass;
};

inline constexpr double kl_slack = 1e-4;

// Worst-case-to-average bound: if every pure input survives e with fidelity
// at least 1 - eps, every state keeps entanglement fidelity at least
// 1 - 1.5 eps. epsilon is estimated by the pure-state scan, then the bound
// is tested against random mixed states of cycling rank.
inline KnillLaflammeReport knill_laflamme_check(const QuantumChannel& e, int n_states,
                                                const SearchBudget& budget) {
  if (n_states < 1) throw ValidationError("samples", "need at least one state");
  const SearchResult scan = min_pure_state_fidelity(e, budget);

  KnillLaflammeReport report;
  report.epsilon_hat = 1.0 - scan.min_value;
  report.bound = 1.0 - 1.5 * report.epsilon_hat;
  report.slack = kl_slack;
  report.states = n_states;
  report.violations = 0;
  report.min_fe = 1.0;

  std::vector<double> sorted = scan.restart_values;
  std::sort(sorted.begin(), sorted.end());
  report.refinement_gap = sorted.size() > 1 ? sorted[1] - sorted[0] : 0.0;

  const int d = e.dim_in();
  Rng rng(budget.seed + 1);
  for (int i = 0; i < n_states; ++i) {
    const DensityOperator rho = random_density(d, 1 + (i % d), rng);
    const double fe = entanglement_fidelity_kraus(rho, e).value;
    report.min_fe = std::min(report.min_fe, fe);
    if (fe < report.bound - report.slack) ++report.violations;
  }
  report.pass = report.violations == 0;
  return report;
}

}  // namespace entfid
