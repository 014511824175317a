// Classifies a few box shapes and shows how gamma grows with H for Type III.

#include <cstdio>

#include "gbec/general_box.hpp"

int main() {
  using namespace gbec::box;
  for (const char* text : {"1/3,1/3,1/3", "1/2,1/4,1/4", "0.6,0.2,0.2", "0.8,0.1,0.1"}) {
    const auto nu = BoxExponents::parse(text);
    std::printf("%-14s %s\n", text, to_string(classify(nu)));
  }

  const auto nu = BoxExponents::parse("0.6,0.2,0.2");
  std::printf("\n%10s %14s %14s %14s\n", "H", "gamma", "k0 a", "s0");
  for (double h : default_h_ladder()) {
    const auto p = cutoff_point(nu, 0.5, h, 1e4);
    std::printf("%10.0e %14.6g %14.6g %14.6g\n", h, p.gamma, p.k0, p.s0);
  }
}
