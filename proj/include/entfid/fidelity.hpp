#pragma once

// State fidelity and entanglement fidelity. Squared convention throughout:
// for pure states the fidelity is |<psi1|psi2>|^2, and all bounds and
// reports below inherit that normalization.

#include <cmath>
#include <string>
#include <vector>

#include "channels.hpp"
#include "numerics.hpp"
#include "states.hpp"

namespace entfid {

enum class FidelityMethod { uhlmann, purification, kraus_sum, search };

struct FidelityValue {
  double value;  // in [0, 1]
  FidelityMethod method;
};

namespace detail {

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Factor L with L L* = m and one column per retained eigenvalue. The
// relative cutoff discards the numerically-zero part of the spectrum, which
// would otherwise surface as sqrt(epsilon) noise in fidelity values for
// rank-deficient states.
inline Matrix psd_factor(const Matrix& m) {
  const HermEig eig = herm_eig(m);
  const double lam_max = std::max(eig.values(0), 0.0);
  if (lam_max < -tol::psd || eig.values(eig.values.size() - 1) < -tol::psd)
    throw ValidationError("eigenvalues", "matrix is not PSD: eigenvalue " +
                                             num(eig.values(eig.values.size() - 1)) +
                                             " below -" + num(tol::psd));
  const double cutoff = lam_max * 1e-13;
  int rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > cutoff) ++rank;
  Matrix l(m.rows(), rank);
  for (int k = 0; k < rank; ++k) l.col(k) = std::sqrt(eig.values(k)) * eig.vectors.col(k);
  return l;
}

}  // namespace detail

// Fidelity of two states given as raw matrices: the squared sum of singular
// values of sqrt(a) sqrt(b), computed through rank factors (the nonzero
// singular values of L1* L2 are those of sqrt(a) sqrt(b)). No state
// validation; callers own that.
inline double state_fidelity(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw ValidationError("dim", "state dimensions differ: " + std::to_string(a.rows()) +
                                     " vs " + std::to_string(b.rows()));
  const Matrix l1 = detail::psd_factor(a);
  const Matrix l2 = detail::psd_factor(b);
  if (l1.cols() == 0 || l2.cols() == 0) return 0.0;
  const Matrix prod = l1.adjoint() * l2;
  Eigen::JacobiSVD<Matrix> svd(prod);
  const double s = svd.singularValues().sum();
  return detail::clamp01(s * s);
}

inline FidelityValue uhlmann_fidelity(const DensityOperator& a, const DensityOperator& b) {
  return {state_fidelity(a.matrix(), b.matrix()), FidelityMethod::uhlmann};
}

// Entanglement fidelity evaluated through an explicit purification: the
// overlap of psi with (e ⊗ identity)(|psi><psi|). The value is a function
// of the reduced state alone; which purification is supplied must not
// matter, and tests pin that down.
inline double entanglement_fidelity_from_purification(const PureState& psi, int system_dim,
                                                      const QuantumChannel& e) {
  if (!e.is_square())
    throw ValidationError("channel", "entanglement fidelity needs dim_in = dim_out");
  if (e.dim_in() != system_dim)
    throw ValidationError("dim", "channel dimension " + std::to_string(e.dim_in()) +
                                     " does not match system dimension " +
                                     std::to_string(system_dim));
  if (psi.dim() % system_dim != 0)
    throw ValidationError("dim", "purification dimension " + std::to_string(psi.dim()) +
                                     " is not a multiple of system dimension " +
                                     std::to_string(system_dim));
  const int d_p = psi.dim() / system_dim;
  const QuantumChannel lifted = extend_with_identity(e, d_p, IdentitySide::right);
  const Matrix projector = psi.amplitudes() * psi.amplitudes().adjoint();
  const Matrix evolved = apply_matrix(lifted, projector);
  const double f =
      (psi.amplitudes().adjoint() * evolved * psi.amplitudes())(0, 0).real();
  return detail::clamp01(f);
}

inline FidelityValue entanglement_fidelity_purification(const DensityOperator& rho,
                                                        const QuantumChannel& e) {
  const PureState psi = canonical_purification(rho);
  return {entanglement_fidelity_from_purification(psi, rho.dim(), e),
          FidelityMethod::purification};
}

// Closed form in the Kraus operators: sum_i |tr(A_i rho)|^2.
inline FidelityValue entanglement_fidelity_kraus(const DensityOperator& rho,
                                                 const QuantumChannel& e) {
  if (!e.is_square())
    throw ValidationError("channel", "entanglement fidelity needs dim_in = dim_out");
  if (e.dim_in() != rho.dim())
    throw ValidationError("dim", "channel dimension " + std::to_string(e.dim_in()) +
                                     " does not match state dimension " +
                                     std::to_string(rho.dim()));
  double sum = 0.0;
  for (const Matrix& a : e.kraus()) sum += std::norm((a * rho.matrix()).trace());
  return {detail::clamp01(sum), FidelityMethod::kraus_sum};
}

struct InequalityCheck {
  std::string name;
  double lhs;
  double rhs;
  bool pass;
};

struct FidelityReport {
  double fidelity;          // F(rho, e(rho))
  double fe_purification;   // entanglement fidelity via purification
  double fe_kraus;          // entanglement fidelity via the Kraus sum
  double fe_delta;          // |fe_purification - fe_kraus|
  std::vector<InequalityCheck> inequalities;

  bool all_pass() const {
    for (const InequalityCheck& c : inequalities)
      if (!c.pass) return false;
    return true;
  }
};

// One-stop comparison of a state against a channel: both entanglement
// fidelity formulas, the plain input/output fidelity, and the bounds that
// tie them together. Check tolerances are pinned here.
inline FidelityReport fidelity_report(const DensityOperator& rho, const QuantumChannel& e) {
  FidelityReport report;
  report.fidelity = uhlmann_fidelity(rho, apply(e, rho)).value;
  report.fe_purification = entanglement_fidelity_purification(rho, e).value;
  report.fe_kraus = entanglement_fidelity_kraus(rho, e).value;
  report.fe_delta = std::abs(report.fe_purification - report.fe_kraus);

  report.inequalities.push_back({"fe_formula_agreement", report.fe_delta, 1e-10,
                                 report.fe_delta <= 1e-10});
  report.inequalities.push_back({"fe_le_fidelity", report.fe_purification, report.fidelity,
                                 report.fe_purification <= report.fidelity + 1e-9});
  if (rank_of(rho) == 1) {
    const double gap = std::abs(report.fidelity - report.fe_purification);
    report.inequalities.push_back({"pure_state_equality", gap, 1e-9, gap <= 1e-9});
  }
  return report;
}

}  // namespace entfid
