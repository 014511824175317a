// Two-step condensation in a cigar trap: the lowest transverse band fills
// below Tc, the ground state only below T1.

#include <cstdio>

#include "gbec/cigar.hpp"
#include "gbec/numerics.hpp"

int main() {
  gbec::cigar::CigarConfig cfg;  // N = 1e6, Delta = 5.6e4
  const double k = cfg.k();
  const auto t1 = gbec::cigar::t1_standard(cfg.n_particles, k);
  std::printf("K = %.4g, T1/Tc = %.4f (first iterate %.4f)\n", k, t1.t1, t1.first_iterate);

  std::printf("%6s %10s %10s\n", "t", "f0", "fg");
  for (double t : gbec::numerics::linspace(0.05, 1.0, 20)) {
    const auto r = gbec::cigar::two_step_report(cfg, t);
    std::printf("%6.3f %10.6f %10.6f\n", t, r.f0, r.fg);
  }
}
