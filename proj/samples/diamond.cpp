// Capacities and gap bounds of a unit-gain diamond as the side lobe grows.

#include <cstdio>

#include "oto/oto.hpp"

int main() {
  oto::GenSpec spec;
  spec.topology = oto::Topology::diamond;
  spec.relays = 2;
  spec.alpha = 8.0;

  std::printf("beta   c_imperfect  c_ideal   r_tsn     tsn_bound\n");
  for (double beta : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    spec.beta = beta;
    const auto inst = oto::generate(spec);
    const auto r = oto::verify_instance(inst);
    std::printf("%-6.2f %-12.6f %-9.6f %-9.6f %.6f\n", beta, r.c_imperfect, r.c_ideal, r.r_tsn, r.tsn_gap_rhs);
  }
}
