// Why plain state fidelity is not enough: store one half of a maximally
// entangled qubit pair. Doing nothing and swapping in a fresh maximally
// mixed qubit both return I/2, so the state fidelity cannot tell them
// apart. The entanglement fidelity can: it asks whether the correlations
// with the other half survived.

#include <cstdio>

#include <entfid/entfid.hpp>

int main() {
  using namespace entfid;

  const PureState pair = epr_singlet();
  const Matrix joint = pair.amplitudes() * pair.amplitudes().adjoint();
  const DensityOperator half =
      DensityOperator(partial_trace(joint, SubsystemShape{{2, 2}}, {0}));

  const QuantumChannel keep = identity_channel(2);
  const QuantumChannel swap_in_fresh =
      replace_with_channel(2, DensityOperator(Matrix::Identity(2, 2) * 0.5));

  std::printf("storing one half of a maximally entangled pair (reduced state I/2)\n\n");
  std::printf("%-16s %-10s %s\n", "dynamics", "fidelity", "entanglement_fidelity");
  const auto row = [&](const char* name, const QuantumChannel& e) {
    const double f = uhlmann_fidelity(half, apply(e, half)).value;
    const double fe = entanglement_fidelity_kraus(half, e).value;
    std::printf("%-16s %-10.6f %.6f\n", name, f, fe);
  };
  row("identity", keep);
  row("swap-replace", swap_in_fresh);

  std::printf("\nidentical first columns, different second: only the entanglement\n");
  std::printf("fidelity notices that the swapped-in qubit lost the correlations.\n");
  return 0;
}
