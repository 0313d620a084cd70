#pragma once

#include <cstdint>

#include "scfrl/dataset.hpp"

namespace scfrl {

struct SyntheticSpec {
  std::size_t n = 200;
  int k_cont = 2;
  int k_disc = 1;
  int k_immut = 0;
  std::uint64_t seed = 1;
};

// Generates a reproducible mixed-type dataset for desk-scale experiments.
//
// Features, in schema order:
//   c0..c{k_cont-1}  continuous, domain [0, 10*(i+1)], uniform values
//   d0..d{k_disc-1}  discrete, 3 + (j % 3) categories "v0".."v{C-1}", uniform
// The last k_immut features are immutable.
//
// Label rule: with z_a, z_b the normalized values of the first two mutable
// features and z_c the third mutable feature (0 when absent),
//   label = 1  iff  z_a * z_b + 0.5 * z_c > 0.
// The product term makes the classes non-separable by any single feature.
// The target class is label 1.
Dataset make_synthetic(const SyntheticSpec& spec);

Dataset make_synthetic(std::size_t n, int k_cont, int k_disc, int k_immut,
                       std::uint64_t seed);

}  // namespace scfrl
