#include "qbx/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "qbx/errors.hpp"

namespace qbx {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_line(int line_no, const std::string& why) {
  throw validation_error("config line " + std::to_string(line_no) + ": " +
                         why);
}

std::vector<std::string> split_list(const std::string& value, int line_no) {
  std::string body = trim(value);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') bad_line(line_no, "unterminated list");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= body.size()) {
    const size_t sep = body.find(',', pos);
    out.push_back(trim(body.substr(
        pos, sep == std::string::npos ? std::string::npos : sep - pos)));
    if (sep == std::string::npos) break;
    pos = sep + 1;
  }
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

double parse_double(const std::string& tok, int line_no) {
  try {
    size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    bad_line(line_no, "expected a number, got '" + tok + "'");
  }
}

int parse_int(const std::string& tok, int line_no) {
  try {
    size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    bad_line(line_no, "expected an integer, got '" + tok + "'");
  }
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text) {
  SweepConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) bad_line(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) bad_line(line_no, "empty value for '" + key + "'");

    if (key == "kernel") cfg.kernel = value;
    else if (key == "k") cfg.k = parse_double(value, line_no);
    else if (key == "geometry") cfg.geometry = value;
    else if (key == "density") cfg.density = value;
    else if (key == "side") {
      if (value != "interior" && value != "exterior")
        bad_line(line_no, "side must be interior or exterior");
      cfg.side = value;
    } else if (key == "N") {
      cfg.N_list.clear();
      for (const auto& tok : split_list(value, line_no))
        cfg.N_list.push_back(parse_int(tok, line_no));
      if (cfg.N_list.empty()) bad_line(line_no, "empty N list");
    } else if (key == "coupling") {
      if (value == "fixed_r") cfg.coupling = Coupling::fixed_r;
      else if (value == "r=4h" || value == "4h") cfg.coupling = Coupling::r_4h;
      else if (value == "r=sqrt_h" || value == "sqrt_h")
        cfg.coupling = Coupling::r_sqrt_h;
      else bad_line(line_no, "coupling must be fixed_r, r=4h or r=sqrt_h");
    } else if (key == "r") {
      cfg.r_list.clear();
      for (const auto& tok : split_list(value, line_no))
        cfg.r_list.push_back(parse_double(tok, line_no));
      if (cfg.r_list.empty()) bad_line(line_no, "empty r list");
    } else if (key == "M") {
      cfg.M_list.clear();
      for (const auto& tok : split_list(value, line_no))
        cfg.M_list.push_back(parse_int(tok, line_no));
      if (cfg.M_list.empty()) bad_line(line_no, "empty M list");
    } else if (key == "q") {
      cfg.q = parse_int(value, line_no);
    } else if (key == "targets") {
      cfg.targets.clear();
      for (const auto& tok : split_list(value, line_no))
        cfg.targets.push_back(parse_double(tok, line_no));
      if (cfg.targets.empty()) bad_line(line_no, "empty targets list");
    } else if (key == "ref_tol") {
      cfg.ref_tol = parse_double(value, line_no);
    } else if (key == "out") {
      cfg.out = value;
    } else {
      bad_line(line_no, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config(buf.str());
}

namespace {

struct RowPlan {
  int N = 0, M = 0;
  double r = 0.0, h = 0.0, target = 0.0;
  const ReferenceValue* ref = nullptr;
};

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, int jobs) {
  const KernelSpec kernel = make_kernel(cfg.kernel, 2, cfg.k);
  const Curve curve = make_curve(cfg.geometry);
  const Density phi = make_density(cfg.density);
  const Side side = cfg.side == "exterior" ? Side::exterior : Side::interior;
  const double arc = curve.arc_length();
  if (cfg.coupling == Coupling::fixed_r && cfg.r_list.empty())
    throw validation_error("run_sweep: fixed_r coupling needs an r list");

  auto coupled_r = [&](int M) {
    const double h = arc / M;
    return cfg.coupling == Coupling::r_4h ? 4.0 * h : std::sqrt(h);
  };

  // The most demanding row drives every target's reference resolution:
  // largest N/M/q, smallest r (the reference must beat the row whose own
  // truncation error is tightest).
  SweepExtent extent;
  extent.N = *std::max_element(cfg.N_list.begin(), cfg.N_list.end());
  extent.M = *std::max_element(cfg.M_list.begin(), cfg.M_list.end());
  extent.q = cfg.q;
  extent.r = std::numeric_limits<double>::infinity();
  if (cfg.coupling == Coupling::fixed_r) {
    for (double r : cfg.r_list) extent.r = std::min(extent.r, r);
  } else {
    for (int M : cfg.M_list) extent.r = std::min(extent.r, coupled_r(M));
  }

  // A target whose reference cannot be built (e.g. the self-convergence
  // levels violate the curvature bound there) poisons only its own rows.
  std::vector<ReferenceValue> refs(cfg.targets.size());
  for (size_t i = 0; i < cfg.targets.size(); ++i) {
    try {
      refs[i] = onsurface_reference(kernel, curve, phi, cfg.targets[i],
                                    cfg.ref_tol, extent, side);
    } catch (const numeric_error&) {
      refs[i] = ReferenceValue{};
    }
  }

  std::vector<RowPlan> plan;
  std::vector<SweepRecord> rows;
  for (size_t ti = 0; ti < cfg.targets.size(); ++ti)
    for (int N : cfg.N_list)
      for (int M : cfg.M_list) {
        const double h = arc / M;
        if (cfg.coupling == Coupling::fixed_r) {
          for (double r : cfg.r_list)
            plan.push_back({N, M, r, h, cfg.targets[ti], &refs[ti]});
        } else {
          plan.push_back({N, M, coupled_r(M), h, cfg.targets[ti], &refs[ti]});
        }
      }
  rows.resize(plan.size());

  auto compute = [&](size_t i) {
    const RowPlan& p = plan[i];
    SweepRecord rec;
    rec.kernel = kernel.name();
    rec.geometry = curve.name();
    rec.density = phi.label;
    rec.k = cfg.k;
    rec.N = p.N;
    rec.q = cfg.q;
    rec.M = p.M;
    rec.h = p.h;
    rec.r = p.r;
    rec.target = p.target;
    rec.ref = p.ref->value;
    const double kappa = std::abs(curve.curvature(p.target));
    if (kappa > 0.0 && p.r > 0.5 / kappa) {
      rec.status = "skipped";
      rows[i] = rec;
      return;
    }
    try {
      EvalParams ep;
      ep.N = p.N;
      ep.r = p.r;
      ep.M = p.M;
      ep.q = cfg.q;
      ep.side = side;
      rec.value = eval_on_surface(kernel, curve, phi, p.target, ep);
      rec.abs_error = std::abs(rec.value - rec.ref);
      rec.status = p.ref->usable ? "ok" : "error";
    } catch (const numeric_error&) {
      rec.value = 0.0;
      rec.abs_error = 0.0;
      rec.status = "error";
    }
    rows[i] = rec;
  };

  const int J = std::max(1, std::min(jobs, 64));
  if (J == 1 || plan.size() < 2) {
    for (size_t i = 0; i < plan.size(); ++i) compute(i);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i; (i = next.fetch_add(1)) < plan.size();) compute(i);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < J; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  return rows;
}

const char* kCsvHeader =
    "kernel,geometry,density,k,N,q,M,h,r,target,value_re,value_im,ref_re,"
    "ref_im,abs_error,status";

void write_csv(const std::string& path, const std::vector<SweepRecord>& recs) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot open '" + path + "' for writing");
  std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  out << "# generated " << stamp << "\n" << kCsvHeader << "\n";
  for (const auto& r : recs) {
    out << r.kernel << ',' << r.geometry << ',' << r.density << ','
        << fmt17(r.k) << ',' << r.N << ',' << r.q << ',' << r.M << ','
        << fmt17(r.h) << ',' << fmt17(r.r) << ',' << fmt17(r.target) << ','
        << fmt17(r.value.real()) << ',' << fmt17(r.value.imag()) << ','
        << fmt17(r.ref.real()) << ',' << fmt17(r.ref.imag()) << ','
        << fmt17(r.abs_error) << ',' << r.status << "\n";
  }
  if (!out) throw validation_error("write failed for '" + path + "'");
}

std::vector<SweepRecord> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path + "'");
  std::string line;
  bool saw_header = false;
  std::vector<SweepRecord> recs;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != kCsvHeader)
        throw validation_error("unexpected CSV header in '" + path + "'");
      saw_header = true;
      continue;
    }
    std::vector<std::string> f;
    size_t pos = 0;
    while (pos <= line.size()) {
      const size_t sep = line.find(',', pos);
      f.push_back(line.substr(
          pos, sep == std::string::npos ? std::string::npos : sep - pos));
      if (sep == std::string::npos) break;
      pos = sep + 1;
    }
    if (f.size() != 16)
      throw validation_error("CSV line " + std::to_string(line_no) +
                             ": expected 16 fields");
    SweepRecord r;
    r.kernel = f[0];
    r.geometry = f[1];
    r.density = f[2];
    r.k = parse_double(f[3], line_no);
    r.N = parse_int(f[4], line_no);
    r.q = parse_int(f[5], line_no);
    r.M = parse_int(f[6], line_no);
    r.h = parse_double(f[7], line_no);
    r.r = parse_double(f[8], line_no);
    r.target = parse_double(f[9], line_no);
    r.value = cplx(parse_double(f[10], line_no), parse_double(f[11], line_no));
    r.ref = cplx(parse_double(f[12], line_no), parse_double(f[13], line_no));
    r.abs_error = parse_double(f[14], line_no);
    r.status = f[15];
    recs.push_back(std::move(r));
  }
  if (!saw_header)
    throw validation_error("no CSV header found in '" + path + "'");
  return recs;
}

FitResult fit_order(const std::vector<double>& param,
                    const std::vector<double>& abs_error) {
  if (param.size() != abs_error.size())
    throw validation_error("fit_order: length mismatch");
  std::vector<double> xs, ys;
  double pmin = 0.0, pmax = 0.0;
  for (size_t i = 0; i < param.size(); ++i) {
    if (!(param[i] > 0.0) || !std::isfinite(param[i])) continue;
    if (!(abs_error[i] > 1e-13) || !std::isfinite(abs_error[i])) continue;
    xs.push_back(std::log(param[i]));
    ys.push_back(std::log(abs_error[i]));
    if (xs.size() == 1) {
      pmin = pmax = param[i];
    } else {
      pmin = std::min(pmin, param[i]);
      pmax = std::max(pmax, param[i]);
    }
  }
  if (xs.size() < 3 || !(pmax / pmin >= 4.0 * (1.0 - 1e-9)))
    throw numeric_error(
        "fit_order: insufficient data above the noise floor (need >= 3 "
        "points spanning two octaves)");
  const size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  FitResult fr;
  fr.slope = sxy / sxx;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double pred = my + fr.slope * (xs[i] - mx);
    ss += (ys[i] - pred) * (ys[i] - pred);
  }
  fr.residual = std::sqrt(ss / n);
  return fr;
}

}  // namespace qbx
