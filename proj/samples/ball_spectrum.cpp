// Lowest eigenvalues of the dbar-Neumann Laplacian on (0,1)-forms of the
// unit ball in C^2, and of its Kohn-Nirenberg regularization.
#include <cstdio>

#include "dbarlab/dbarlab.hpp"

int main() {
  using namespace dbarlab;
  const Domain ball = make_ball(2);
  const TrialBasis basis = build_dbar_neumann_basis(ball, 1, 4);
  const DiscreteProblem p = filter_basis(assemble(ball, basis, 12, 24), 1e-10);
  std::printf("basis %zu, filtered %ld\n", basis.size(), static_cast<long>(p.dim()));
  for (double t : {0.0, 0.01, 0.1}) {
    const SpectrumResult r = solve_dense(with_t(p, t), 4);
    std::printf("t = %-5g", t);
    for (double v : r.eigenvalues) std::printf("  %.8f", v);
    std::printf("\n");
  }
  std::printf("Hormander bound q/(e D^2) = %.6f\n", hormander_bound(1, diameter(ball)));
}
