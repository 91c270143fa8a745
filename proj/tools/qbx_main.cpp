#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbx/bie.hpp"
#include "qbx/errors.hpp"
#include "qbx/oracle.hpp"
#include "qbx/qbx.hpp"
#include "qbx/sweep.hpp"

namespace {

using qbx::cplx;

void print_records(std::ostream& os, const std::vector<qbx::SweepRecord>& recs) {
  auto g = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << qbx::kCsvHeader << "\n";
  for (const auto& r : recs)
    os << r.kernel << ',' << r.geometry << ',' << r.density << ',' << g(r.k)
       << ',' << r.N << ',' << r.q << ',' << r.M << ',' << g(r.h) << ','
       << g(r.r) << ',' << g(r.target) << ',' << g(r.value.real()) << ','
       << g(r.value.imag()) << ',' << g(r.ref.real()) << ',' << g(r.ref.imag())
       << ',' << g(r.abs_error) << ',' << r.status << "\n";
}

int cmd_sweep(const std::string& config_path, const std::string& out_flag,
              int jobs) {
  qbx::SweepConfig cfg = qbx::load_sweep_config(config_path);
  if (!out_flag.empty()) cfg.out = out_flag;
  const auto recs = qbx::run_sweep(cfg, jobs);
  if (cfg.out.empty()) {
    print_records(std::cout, recs);
  } else {
    qbx::write_csv(cfg.out, recs);
    std::cout << recs.size() << " records -> " << cfg.out << "\n";
  }
  return 0;
}

int cmd_eval(const std::string& kernel_name, double k,
             const std::string& geometry, const std::string& density,
             double target, double theta, double phi, int N, double r, int M,
             int q, int n_phi, int n_theta, const std::string& side_name) {
  const qbx::Side side =
      side_name == "exterior" ? qbx::Side::exterior : qbx::Side::interior;
  qbx::EvalParams p;
  p.N = N;
  p.r = r;
  p.M = M;
  p.q = q;
  p.n_phi = n_phi;
  p.n_theta = n_theta;
  p.side = side;

  cplx value, ref;
  bool have_ref = false;
  double ref_est = 0.0;
  if (geometry.rfind("sphere", 0) == 0) {
    const auto open = geometry.find('(');
    const auto close = geometry.rfind(')');
    if (open == std::string::npos || close == std::string::npos)
      throw qbx::validation_error("cannot parse '" + geometry + "'");
    const qbx::Sphere sph{std::stod(geometry.substr(open + 1, close - open - 1))};
    const qbx::KernelSpec kernel = qbx::make_kernel(kernel_name, 3, k);
    const qbx::Density3 d3 = qbx::make_density3(density);
    value = qbx::eval_on_surface(kernel, sph, d3, theta, phi, p);
    if (qbx::has_modal_reference(kernel, d3)) {
      const auto rv = qbx::modal_reference(kernel, sph, d3,
                                           sph.point(theta, phi), side);
      ref = rv.value;
      ref_est = rv.est_error;
      have_ref = true;
    }
  } else {
    const qbx::KernelSpec kernel = qbx::make_kernel(kernel_name, 2, k);
    const qbx::Curve curve = qbx::make_curve(geometry);
    const qbx::Density d = qbx::make_density(density);
    value = qbx::eval_on_surface(kernel, curve, d, target, p);
    qbx::SweepExtent extent{N, r, M, q};
    const auto rv =
        qbx::onsurface_reference(kernel, curve, d, target, 1e-9, extent, side);
    ref = rv.value;
    ref_est = rv.est_error;
    have_ref = rv.usable;
  }
  std::printf("value     %.17g %+.17gi\n", value.real(), value.imag());
  if (have_ref) {
    std::printf("reference %.17g %+.17gi (est_error %.3g)\n", ref.real(),
                ref.imag(), ref_est);
    std::printf("abs_error %.17g\n", std::abs(value - ref));
  }
  return 0;
}

int cmd_demo_bie(const std::string& geometry, double k,
                 const std::string& data_name, int M, int q, int N) {
  const qbx::Curve curve = qbx::make_curve(geometry);
  const qbx::HarmonicData data = qbx::parse_harmonic_data(data_name);
  const qbx::BieResult res = qbx::demo_bie(curve, k, data, M, q, N);
  std::printf("n = %d\n", res.n);
  for (size_t i = 0; i < res.probe_err.size(); ++i)
    std::printf("probe %zu error %.6g\n", i, res.probe_err[i]);
  std::printf("max probe error %.6g\n", res.max_probe_err);
  return 0;
}

int cmd_selftest() {
  int step = 0;
  auto ok = [&step](const std::string& what) {
    std::printf("ok %2d: %s\n", ++step, what.c_str());
  };
  auto require = [](bool cond, const std::string& what) {
    if (!cond) throw qbx::numeric_error("selftest failed: " + what);
  };

  const auto g5 = qbx::gauss_rule(5);
  double x8 = 0.0, wsum = 0.0;
  for (int i = 0; i < 5; ++i) {
    x8 += g5.w[i] * std::pow(g5.x[i], 8);
    wsum += g5.w[i];
  }
  require(std::abs(x8 - 2.0 / 9.0) < 1e-13, "gauss(5) x^8");
  require(std::abs(wsum - 2.0) < 1e-14, "gauss(5) weights");
  ok("gauss rule exactness");

  for (double x : {0.5, 3.0, 15.0}) {
    const auto J = qbx::bessel_j_batch(11, x);
    const auto Y = qbx::bessel_y_batch(11, x);
    for (int n = 0; n <= 10; ++n) {
      const double w = J[n + 1] * Y[n] - J[n] * Y[n + 1];
      const double want = 2.0 / (3.14159265358979323846 * x);
      require(std::abs(w - want) <= 1e-10 * std::abs(want), "wronskian");
    }
  }
  ok("bessel wronskian");

  double sum = 0.0;
  for (int m = -6; m <= 6; ++m)
    sum += std::norm(qbx::sph_harm(6, m, 0.8, 1.2).value);
  require(std::abs(sum - 13.0 / (4.0 * 3.14159265358979323846)) < 1e-12,
          "harmonic sum rule");
  ok("spherical harmonic sum rule");

  const qbx::Curve st = qbx::Curve::starfish(1.0, 0.3, 5);
  require(std::abs(st.arc_length() - 9.0172035005151432) < 1e-9,
          "starfish arc length");
  ok("geometry arc length");

  qbx::EvalParams jp;
  jp.N = 5;
  jp.r = 0.1;
  jp.M = 128;
  jp.q = 12;
  qbx::EvalParams je = jp;
  je.side = qbx::Side::exterior;
  const qbx::Curve c1 = qbx::Curve::circle(1.0);
  const cplx vi =
      qbx::eval_on_surface(qbx::make_kernel("cauchy"), c1, qbx::Density::one(),
                           0.4, jp);
  const cplx ve =
      qbx::eval_on_surface(qbx::make_kernel("cauchy"), c1, qbx::Density::one(),
                           0.4, je);
  require(std::abs(vi - ve - 1.0) < 1e-9, "interior/exterior jump");
  ok("cauchy jump relation");

  const auto mk = qbx::make_kernel("helmholtz_slp", 2, 2.0);
  const auto md = qbx::modal_reference(mk, c1, qbx::Density::exp_in(3),
                                       std::polar(0.5, 0.9));
  const auto dd = qbx::direct_offsurface(mk, c1, qbx::Density::exp_in(3),
                                         std::polar(0.5, 0.9), 1e-12);
  require(dd.usable && std::abs(md.value - dd.value) < 1e-10,
          "modal vs direct oracle");
  ok("oracle cross-check");

  const auto bie = qbx::demo_bie(c1, 0.0, qbx::HarmonicData::re_z, 64, 8, 4);
  require(bie.max_probe_err < 1e-6, "bie demo");
  ok("dirichlet demo");

  qbx::SweepConfig cfg;
  cfg.kernel = "laplace_dlp";
  cfg.density = "cos2t";
  cfg.N_list = {2};
  cfg.coupling = qbx::Coupling::r_4h;
  cfg.M_list = {32, 64};
  cfg.q = 8;
  cfg.targets = {0.7};
  const auto recs = qbx::run_sweep(cfg);
  require(recs.size() == 2, "sweep row count");
  for (const auto& rec : recs)
    require(std::abs(rec.r - 4.0 * rec.h) <= 1e-12, "coupling r=4h");
  ok("sweep coupling");

  std::printf("selftest passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QBX layer-potential evaluation harness"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep from a config file");
  std::string config_path, out_path;
  int jobs = 1;
  sweep->add_option("--config", config_path, "config file path")->required();
  sweep->add_option("--out", out_path, "output CSV path (overrides config)");
  sweep->add_option("--jobs", jobs, "worker thread cap")->default_val(1);

  auto* eval = app.add_subcommand("eval", "single on-surface evaluation");
  std::string kernel = "cauchy", geometry = "circle(1)", density = "one",
              side = "interior";
  double k = 0.0, target = 0.0, theta = 0.0, phi = 1.5707963267948966;
  int N = 3, M = 64, q = 8, n_phi = 48, n_theta = 96;
  double r = 0.1;
  eval->add_option("--kernel", kernel, "kernel name");
  eval->add_option("--k", k, "Helmholtz wavenumber");
  eval->add_option("--geometry", geometry, "curve or sphere spec");
  eval->add_option("--density", density, "density spec");
  eval->add_option("--target", target, "curve parameter t0");
  eval->add_option("--theta", theta, "sphere azimuth");
  eval->add_option("--phi", phi, "sphere polar angle");
  eval->add_option("--N", N, "expansion order");
  eval->add_option("--r", r, "expansion radius");
  eval->add_option("--M", M, "panels");
  eval->add_option("--q", q, "nodes per panel");
  eval->add_option("--n-phi", n_phi, "sphere rule polar order");
  eval->add_option("--n-theta", n_theta, "sphere rule azimuthal order");
  eval->add_option("--side", side, "interior or exterior");

  auto* selftest = app.add_subcommand("selftest", "run built-in invariant checks");

  auto* demo = app.add_subcommand("demo-bie", "interior Dirichlet demo solve");
  std::string bie_geom = "circle(1)", bie_data = "re_z3";
  double bie_k = 0.0;
  int bie_M = 64, bie_q = 8, bie_N = 4;
  demo->add_option("--geometry", bie_geom, "curve spec");
  demo->add_option("--k", bie_k, "wavenumber (must be 0)");
  demo->add_option("--data", bie_data, "boundary data: re_z | re_z3 | re_pole | zero");
  demo->add_option("--M", bie_M, "panels");
  demo->add_option("--q", bie_q, "nodes per panel");
  demo->add_option("--N", bie_N, "expansion order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(config_path, out_path, jobs);
    if (eval->parsed())
      return cmd_eval(kernel, k, geometry, density, target, theta, phi, N, r,
                      M, q, n_phi, n_theta, side);
    if (selftest->parsed()) return cmd_selftest();
    if (demo->parsed())
      return cmd_demo_bie(bie_geom, bie_k, bie_data, bie_M, bie_q, bie_N);
  } catch (const qbx::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const qbx::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
