// Entanglement fidelity of the qubit depolarizing channel on the maximally
// mixed input, swept over the noise strength. The closed form is
// fe = 1 - 3p/4; the state fidelity stays at 1 because I/2 is a fixed point.

#include <cstdio>

#include <entfid/entfid.hpp>

int main() {
  using namespace entfid;

  const DensityOperator rho(Matrix::Identity(2, 2) * 0.5);
  std::printf("%-6s %-10s %-22s %s\n", "p", "fidelity", "entanglement_fidelity", "1 - 3p/4");
  for (int step = 0; step <= 10; ++step) {
    const double p = step / 10.0;
    const QuantumChannel e = depolarizing_channel(2, p);
    const double f = uhlmann_fidelity(rho, apply(e, rho)).value;
    const double fe = entanglement_fidelity_kraus(rho, e).value;
    std::printf("%-6.2f %-10.6f %-22.12f %.12f\n", p, f, fe, 1.0 - 0.75 * p);
  }
  return 0;
}
