#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace gconv {

struct VerifyOptions {
  std::string suite = "all";
  double tol = 0;          // > 0 replaces every numeric threshold
  std::uint64_t seed = 0;
  bool slow = false;       // adds S5 to the group matrix
  bool timing = false;     // per-check wall time in the report
};

/// irreps, fourier, convolution, sparsity, network, equivariance, lemmas,
/// mpnn, representatives, or all.
const std::vector<std::string>& verify_suites();

Report run_verify(const VerifyOptions& opts);

}  // namespace gconv
