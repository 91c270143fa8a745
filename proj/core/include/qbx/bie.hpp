#pragma once

#include <string>
#include <vector>

#include "qbx/geometry.hpp"

namespace qbx {

// Interior Dirichlet solve with a double-layer ansatz: the on-surface
// operator rows are QBX expansions at per-node tangent-ball centers, the
// square system is solved densely, and the solution field is checked at
// interior probe points against the known harmonic data.
enum class HarmonicData { re_z, re_z3, re_pole, zero };
HarmonicData parse_harmonic_data(const std::string& name);

struct BieResult {
  int n = 0;               // system size (M * q)
  double max_probe_err = 0.0;
  std::vector<double> probe_err;
};

BieResult demo_bie(const Curve& curve, double k, HarmonicData data, int M,
                   int q, int N);

}  // namespace qbx
