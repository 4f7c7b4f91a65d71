// Lowest Coulomb levels for a family of power-law masses m(r) = r^gamma,
// printed next to the grid eigenvalue of the transformed equation.

#include <cstdio>

#include "pctlab.hpp"

int main() {
  using namespace pctlab;
  GridSettings gs;
  gs.compute_residual = false;

  std::printf("%6s %4s %4s %18s %18s %10s\n", "gamma", "n_r", "ell", "E_closed", "E_grid", "rel_err");
  for (double gamma : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const CaseSpec c = make_case(CaseId::Coulomb, {{"A", 1.0}, {"gamma", gamma}});
    for (int ell = 0; ell <= 1; ++ell) {
      for (int n_r = 0; n_r <= 1; ++n_r) {
        const VerificationReport r = verify_energy(c, {n_r, ell, 3, {}}, gs);
        std::printf("%6.2f %4d %4d %18.12f %18.12f %10.2e\n", gamma, n_r, ell, r.e_closed, r.e_numeric,
                    r.rel_err);
      }
    }
  }
  return 0;
}
