#pragma once

#include <vector>

#include "mublp/errors.hpp"
#include "mublp/phase_matrix.hpp"

namespace mublp {

/// Explicit complete sets of d mutually unbiased Hadamards (the bases
/// besides the identity). d=2 pairs F2 with its i-phased partner; d=3
/// phases fourier_matrix(3) row-wise by powers of omega^{j^2}.
inline std::vector<PhaseMatrix> standard_mub_set(int d) {
  std::vector<PhaseMatrix> set;
  if (d == 2) {
    set.push_back(fourier_matrix(2));
    set.push_back(PhaseMatrix(2, {Complex{1, 0}, Complex{1, 0}, Complex{0, 1}, Complex{0, -1}}, "H2_i"));
  } else if (d == 3) {
    for (int t = 0; t < 3; ++t) {
      std::vector<Complex> e(9);
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) e[static_cast<std::size_t>(j) * 3 + k] = unit_root(j * k + t * j * j, 3);
      set.push_back(PhaseMatrix(3, std::move(e), "H3_" + std::to_string(t)));
    }
  } else {
    throw DimensionError("standard_mub_set: explicit complete sets available only for d=2 and d=3");
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!is_hadamard(set[i]))
      throw ConstructionError("standard_mub_set: member failed the Hadamard check",
                              set[i].max_unitarity_error());
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (!is_unbiased_pair(set[i], set[j], 1e-9))
        throw ConstructionError("standard_mub_set: pair is not unbiased", 0.0);
  }
  return set;
}

}  // namespace mublp
