#pragma once

#include <string>
#include <vector>

#include "qbx/oracle.hpp"

namespace qbx {

enum class Coupling { fixed_r, r_4h, r_sqrt_h };

// Flat key=value config; '#' starts a comment, lists are bracketed:
//   kernel = laplace_slp
//   geometry = starfish(1;0.3;5)
//   density = cos3t
//   N = [1,2,3]
//   coupling = fixed_r        # or r=4h, r=sqrt_h
//   r = [0.125,0.0625]        # fixed_r only
//   M = [256]
//   q = 16
//   targets = [0.4]
struct SweepConfig {
  std::string kernel = "cauchy";
  double k = 0.0;
  std::string geometry = "circle(1)";
  std::string density = "one";
  std::string side = "interior";
  std::vector<int> N_list{3};
  Coupling coupling = Coupling::fixed_r;
  std::vector<double> r_list{0.1};
  std::vector<int> M_list{64};
  int q = 8;
  std::vector<double> targets{0.0};
  // Self-convergence estimates are dominated by the coarser companion level,
  // so this bounds the estimate, not the (much smaller) fine-level error.
  double ref_tol = 1e-6;
  std::string out;
};

SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);

struct SweepRecord {
  std::string kernel, geometry, density;
  double k = 0.0;
  int N = 0, q = 0, M = 0;
  double h = 0.0, r = 0.0, target = 0.0;
  cplx value = 0.0, ref = 0.0;
  double abs_error = 0.0;
  std::string status;  // ok | skipped | error
};

// Rows in deterministic target -> N -> M -> r order; per-row failures land in
// status, never abort the sweep. jobs > 1 distributes rows over threads with
// output independent of the thread count.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, int jobs = 1);

extern const char* kCsvHeader;
void write_csv(const std::string& path, const std::vector<SweepRecord>& recs);
std::vector<SweepRecord> read_csv(const std::string& path);

// Least-squares slope of log(abs_error) against log(param). Errors at or
// below the 1e-13 noise floor are excluded; the remaining points must number
// at least 3 and span two octaves in param, else numeric_error.
struct FitResult {
  double slope = 0.0;
  double residual = 0.0;  // rms misfit in log space
};
FitResult fit_order(const std::vector<double>& param,
                    const std::vector<double>& abs_error);

}  // namespace qbx
