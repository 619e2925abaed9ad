// conelab: build spherical cone nets, run full-length certificates,
// harmonic replacement reports, curve straightening, and density-decay
// calculations from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "conelab/cone_net.hpp"
#include "conelab/decay.hpp"
#include "conelab/harmonic.hpp"
#include "conelab/net_io.hpp"
#include "conelab/perturbation.hpp"
#include "conelab/rng.hpp"
#include "conelab/straighten.hpp"
#include "conelab/tolerances.hpp"

using namespace conelab;

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// key=value configuration file; values act as defaults under the flags.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::map<std::string, std::string> kv;
  if (path.empty()) return kv;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

template <typename T>
void config_default(const std::map<std::string, std::string>& kv,
                    const CLI::Option* opt, const std::string& key, T& value) {
  if (opt->count() > 0) return;  // explicit flag wins
  auto it = kv.find(key);
  if (it == kv.end()) return;
  std::istringstream ss(it->second);
  ss >> value;
}

harmonic::SectorProfile random_profile(std::uint64_t seed, double T,
                                       std::size_t codim, double eta,
                                       std::size_t M = 4096,
                                       std::size_t kmax = 16) {
  Rng rng(seed);
  std::vector<std::vector<double>> coeff(kmax, std::vector<double>(codim));
  for (std::size_t k = 0; k < kmax; ++k)
    for (std::size_t d = 0; d < codim; ++d)
      coeff[k][d] = rng.normal() / double((k + 1) * (k + 1));
  std::vector<std::vector<double>> v(M + 1, std::vector<double>(codim, 0.0));
  for (std::size_t i = 0; i <= M; ++i)
    for (std::size_t k = 0; k < kmax; ++k) {
      const double s = std::sin(M_PI * double(k + 1) * double(i) / double(M));
      for (std::size_t d = 0; d < codim; ++d) v[i][d] += coeff[k][d] * s;
    }
  double lip = 0.0;
  const double h = T / double(M);
  for (std::size_t i = 0; i < M; ++i) {
    double s = 0.0;
    for (std::size_t d = 0; d < codim; ++d) {
      const double diff = v[i + 1][d] - v[i][d];
      s += diff * diff;
    }
    lip = std::max(lip, std::sqrt(s) / h);
  }
  const double scale = 0.9 * eta / lip;
  for (auto& row : v)
    for (auto& x : row) x *= scale;
  for (auto& x : v.front()) x = 0.0;
  for (auto& x : v.back()) x = 0.0;
  return harmonic::SectorProfile(T, std::move(v), eta);
}

int cmd_build(const std::string& kind, std::size_t dim, double eta0,
              const std::vector<std::string>& parts, const std::string& out,
              const std::string& obj_out, double obj_radius) {
  std::optional<net::ConeNet> built;
  if (kind == "plane") {
    built = net::build_plane(dim, sphere::UnitVector::axis(dim, 0),
                             sphere::UnitVector::axis(dim, 1), eta0);
  } else if (kind == "Y" || kind == "y") {
    built = net::build_y(dim, sphere::UnitVector::axis(dim, dim - 1),
                         std::nullopt, eta0);
  } else if (kind == "T" || kind == "t") {
    built = net::build_t(dim, {}, eta0);
  } else if (kind == "union") {
    if (parts.empty()) throw std::invalid_argument("build union: no --parts given");
    std::vector<net::ConeNet> loaded;
    std::size_t total = 0;
    for (const auto& p : parts) {
      loaded.push_back(net::from_json(net::load_file(p)));
      total += loaded.back().dimension();
    }
    std::vector<net::ConeNet> embedded;
    std::size_t offset = 0;
    for (const auto& n : loaded) {
      embedded.push_back(net::embed(n, total, offset));
      offset += n.dimension();
    }
    built = net::build_union(embedded);
  } else {
    throw std::invalid_argument("build: kind must be plane, Y, T, or union");
  }
  const double len = net::net_length(*built);
  std::cout << "kind " << kind << "\n"
            << "dimension " << built->dimension() << "\n"
            << "vertices " << built->vertices().size() << "\n"
            << "arcs " << built->arcs().size() << "\n"
            << "length " << g17(len) << "\n"
            << "density " << g17(len / 2) << "\n";
  if (!out.empty()) net::save_file(out, net::to_json(*built));
  if (!obj_out.empty()) net::save_file(obj_out, net::to_obj(*built, obj_radius));
  return 0;
}

int cmd_full_length(const std::string& file, double eta1, std::size_t budget,
                    std::uint64_t seed, const std::string& out_csv,
                    const std::string& out_json) {
  const auto cone = net::from_json(net::load_file(file));
  perturb::CertificateOptions opt;
  opt.eta1 = eta1;
  opt.budget = budget;
  opt.seed = seed;
  opt.keep_rows = !out_csv.empty();
  const auto certs = perturb::componentwise_certificate(cone, opt);
  bool all_pass = true;
  std::string csv, json = "[\n";
  for (std::size_t i = 0; i < certs.size(); ++i) {
    all_pass = all_pass && certs[i].pass;
    if (i) json += ",\n";
    json += perturb::certificate_json(certs[i]);
    csv += perturb::certificate_csv(certs[i]);
    std::cout << certs[i].component << " C_hat " << g17(certs[i].c_hat)
              << " gradient " << g17(certs[i].gradient_norm) << " "
              << (certs[i].pass ? "PASS" : "FAIL") << "\n";
  }
  json += "]\n";
  if (!out_csv.empty()) net::save_file(out_csv, csv);
  if (!out_json.empty()) net::save_file(out_json, json);
  return all_pass ? 0 : 2;
}

int cmd_epi(const std::string& file, double kappa, std::size_t modes, double eta,
            std::size_t battery, std::uint64_t seed, const std::string& out) {
  bool all_pass = true;
  std::string payload;
  if (battery > 0) {
    Rng seeds(seed);
    payload = "[\n";
    for (std::size_t i = 0; i < battery; ++i) {
      const double T = 1.0 + (10.0 * M_PI / 11.0 - 1.0) * seeds.uniform();
      const auto p = random_profile(seeds.next(), T, 1 + seeds.index(2), eta);
      const auto rep = harmonic::area_saving(p, kappa, modes);
      all_pass = all_pass && rep.pass;
      if (i) payload += ",\n";
      payload += harmonic::saving_json(rep);
    }
    payload += "]\n";
  } else {
    harmonic::SectorProfile p =
        file.size() > 5 && file.substr(file.size() - 5) == ".json"
            ? harmonic::profile_from_json(net::load_file(file))
            : harmonic::profile_from_csv(net::load_file(file), eta);
    const auto rep = harmonic::area_saving(p, kappa, modes);
    all_pass = rep.pass;
    payload = harmonic::saving_json(rep);
  }
  std::cout << payload;
  if (!out.empty()) net::save_file(out, payload);
  return all_pass ? 0 : 2;
}

int cmd_straighten(const std::string& file, double eta, double tau1,
                   const std::string& out, const std::string& out_curve) {
  const auto pts = file.size() > 5 && file.substr(file.size() - 5) == ".json"
                       ? curve::curve_from_json(net::load_file(file))
                       : curve::curve_from_csv(net::load_file(file));
  if (tau1 <= 0.0) tau1 = 1e-4 * eta * eta;
  const std::size_t n = pts.front().dimension();
  const auto c = curve::parameterize(pts, sphere::UnitVector::axis(n, 0),
                                     sphere::UnitVector::axis(n, 1), tau1);
  const auto res = curve::straighten(c, eta);
  const auto payload = curve::straighten_json(res);
  std::cout << payload;
  if (!out.empty()) net::save_file(out, payload);
  if (!out_curve.empty()) {
    std::string csv;
    char buf[64];
    for (const auto& z : res.gamma.z) {
      for (std::size_t d = 0; d < z.dimension(); ++d) {
        std::snprintf(buf, sizeof buf, "%s%.17g", d ? "," : "", z[d]);
        csv += buf;
      }
      csv += '\n';
    }
    net::save_file(out_curve, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cone-lab: geodesic nets, epiperimetric gains, and decay calculus"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value config file (defaults under flags)");

  // build
  auto* build = app.add_subcommand("build", "construct a canonical cone net");
  std::string kind, build_out, obj_out;
  std::size_t dim = 3;
  double eta0 = 0.01, obj_radius = 1.0;
  std::vector<std::string> parts;
  build->add_option("kind", kind, "plane | Y | T | union")->required();
  auto* dim_opt = build->add_option("--dim", dim, "ambient dimension");
  auto* eta0_opt = build->add_option("--eta0", eta0, "structural constant");
  build->add_option("--parts", parts, "cone JSON files for union");
  build->add_option("--out", build_out, "output cone JSON path");
  build->add_option("--obj", obj_out, "OBJ export path (R^3 only)");
  build->add_option("--radius", obj_radius, "OBJ cone radius");

  // full-length
  auto* fl = app.add_subcommand("full-length", "sampling certificate for the length/deviation bound");
  std::string fl_file, fl_csv, fl_json;
  double eta1 = 0.05;
  std::size_t budget = 100000;
  std::uint64_t seed = 1;
  fl->add_option("cone", fl_file, "cone JSON file")->required();
  auto* eta1_opt = fl->add_option("--eta1", eta1, "vertex displacement bound");
  auto* budget_opt = fl->add_option("--budget", budget, "sample count");
  auto* seed_opt = fl->add_option("--seed", seed, "RNG seed");
  fl->add_option("--out-csv", fl_csv, "per-sample CSV path");
  fl->add_option("--out-json", fl_json, "summary JSON path");

  // epi
  auto* epi = app.add_subcommand("epi", "harmonic replacement area saving");
  std::string epi_file, epi_out;
  double kappa = 0.01, epi_eta = 0.05;
  std::size_t modes = 512, battery = 0;
  std::uint64_t epi_seed = 1;
  epi->add_option("profile", epi_file, "profile CSV/JSON file");
  auto* kappa_opt = epi->add_option("--kappa", kappa, "core cutoff radius");
  auto* modes_opt = epi->add_option("--modes", modes, "sine modes");
  epi->add_option("--eta", epi_eta, "Lipschitz bound for CSV profiles");
  epi->add_option("--battery", battery, "run N random seeded profiles");
  epi->add_option("--seed", epi_seed, "battery seed");
  epi->add_option("--out", epi_out, "report JSON path");

  // straighten
  auto* st = app.add_subcommand("straighten", "maximal-function curve straightening");
  std::string st_file, st_out, st_curve;
  double st_eta = 0.05, st_tau1 = 0.0;
  st->add_option("curve", st_file, "curve CSV/JSON file")->required();
  st->add_option("--eta", st_eta, "target Lipschitz constant");
  st->add_option("--tau1", st_tau1, "near-geodesic tolerance (default 1e-4 eta^2)");
  st->add_option("--out", st_out, "result JSON path");
  st->add_option("--out-curve", st_curve, "straightened curve CSV path");

  // decay
  auto* dc = app.add_subcommand("decay", "density-excess decay calculus");
  dc->require_subcommand(1);
  auto* bound = dc->add_subcommand("bound", "power-gauge decay bound");
  double fy = 0.0, a = 1.0, b = 0.5, C0 = 0.0, x = 0.01, y = 1.0;
  bound->add_option("--fy", fy)->required();
  bound->add_option("--a", a)->required();
  bound->add_option("--b", b);
  bound->add_option("--C0", C0);
  bound->add_option("--x", x)->required();
  bound->add_option("--y", y)->required();
  auto* logb = dc->add_subcommand("log-bound", "log-gauge decay bound");
  double lb_fy = 0.0, lb_a = 1.0, lb_C = 1.0, lb_A = 1.0, lb_b = 2.0,
         lb_x = 0.01, lb_y = 0.2;
  logb->add_option("--fy", lb_fy)->required();
  logb->add_option("--a", lb_a)->required();
  logb->add_option("--C", lb_C);
  logb->add_option("--A", lb_A)->required();
  logb->add_option("--b", lb_b)->required();
  logb->add_option("--x", lb_x)->required();
  logb->add_option("--y", lb_y)->required();
  auto* weak = dc->add_subcommand("weak-envelope", "degenerate decay envelope");
  double w_fy = 0.0, w_alpha = 0.25, w_N = 2.0, w_y = 1.0, w_x = 0.01, w_C = 0.0;
  weak->add_option("--fy", w_fy)->required();
  weak->add_option("--alpha", w_alpha)->required();
  weak->add_option("--N", w_N)->required();
  weak->add_option("--y", w_y)->required();
  weak->add_option("--x", w_x)->required();
  weak->add_option("--C", w_C);
  auto* mono = dc->add_subcommand("check-monotone", "near-monotonicity check");
  std::string mono_file;
  double lambda = 1.0, mono_d0 = 0.0, mono_C = 1.0, mono_C0 = 0.0, mono_b = 1.0;
  mono->add_option("profile", mono_file, "CSV of r,theta rows")->required();
  mono->add_option("--lambda", lambda);
  mono->add_option("--d0", mono_d0);
  mono->add_option("--C", mono_C);
  mono->add_option("--C0", mono_C0, "power gauge coefficient");
  mono->add_option("--b", mono_b, "power gauge exponent");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = read_config(config_path);
    // Centralized tolerances are overridable from the config file.
    auto& tol = tolerances();
    for (const auto& [key, ref] : std::initializer_list<std::pair<const char*, double*>>{
             {"tol.unit", &tol.unit_norm},
             {"tol.trig", &tol.trig},
             {"tol.angle", &tol.angle},
             {"tol.hausdorff_step", &tol.hausdorff_step},
             {"tol.alpha_floor", &tol.alpha_floor}}) {
      auto it = cfg.find(key);
      if (it != cfg.end()) *ref = std::stod(it->second);
    }
    if (*build) {
      config_default(cfg, dim_opt, "dim", dim);
      config_default(cfg, eta0_opt, "eta0", eta0);
      return cmd_build(kind, dim, eta0, parts, build_out, obj_out, obj_radius);
    }
    if (*fl) {
      config_default(cfg, eta1_opt, "eta1", eta1);
      config_default(cfg, budget_opt, "budget", budget);
      config_default(cfg, seed_opt, "seed", seed);
      return cmd_full_length(fl_file, eta1, budget, seed, fl_csv, fl_json);
    }
    if (*epi) {
      config_default(cfg, kappa_opt, "kappa", kappa);
      config_default(cfg, modes_opt, "modes", modes);
      if (battery == 0 && epi_file.empty())
        throw std::invalid_argument("epi: need a profile file or --battery N");
      return cmd_epi(epi_file, kappa, modes, epi_eta, battery, epi_seed, epi_out);
    }
    if (*st) return cmd_straighten(st_file, st_eta, st_tau1, st_out, st_curve);
    if (*dc) {
      if (*bound) {
        const auto g = C0 > 0.0 ? decay::GaugeSpec::power(C0, b)
                                : decay::GaugeSpec::zero();
        std::cout << "{\n  \"bound\": " << g17(decay::decay_bound(fy, a, g, x, y))
                  << ",\n  \"fy\": " << g17(fy) << ",\n  \"a\": " << g17(a)
                  << ",\n  \"C0\": " << g17(C0) << ",\n  \"b\": " << g17(b)
                  << ",\n  \"x\": " << g17(x) << ",\n  \"y\": " << g17(y)
                  << "\n}\n";
        return 0;
      }
      if (*logb) {
        const auto r = decay::log_gauge_decay(lb_fy, lb_a, lb_C, lb_A, lb_b, lb_x, lb_y);
        std::cout << "{\n  \"bound\": " << g17(r.value)
                  << ",\n  \"base_term\": " << g17(r.base_term)
                  << ",\n  \"log_term\": " << g17(r.log_term)
                  << ",\n  \"pow_term\": " << g17(r.pow_term)
                  << ",\n  \"c_log\": " << g17(r.c_log)
                  << ",\n  \"c_pow\": " << g17(r.c_pow)
                  << ",\n  \"a\": " << g17(lb_a) << ",\n  \"C\": " << g17(lb_C)
                  << ",\n  \"A\": " << g17(lb_A) << ",\n  \"b\": " << g17(lb_b)
                  << ",\n  \"x\": " << g17(lb_x) << ",\n  \"y\": " << g17(lb_y)
                  << "\n}\n";
        return 0;
      }
      if (*weak) {
        const auto r = decay::weak_decay_envelope(w_fy, w_alpha, w_N, w_y, w_x, w_C);
        std::cout << "{\n  \"envelope\": " << g17(r.value)
                  << ",\n  \"C1\": " << g17(r.c1)
                  << ",\n  \"ode_fx\": " << g17(r.ode_fx)
                  << ",\n  \"dominated\": " << (r.dominated ? "true" : "false")
                  << ",\n  \"alpha\": " << g17(w_alpha)
                  << ",\n  \"N\": " << g17(w_N) << ",\n  \"C\": " << g17(w_C)
                  << ",\n  \"x\": " << g17(w_x) << ",\n  \"y\": " << g17(w_y)
                  << "\n}\n";
        return r.dominated ? 0 : 2;
      }
      if (*mono) {
        auto p = decay::profile_from_csv(net::load_file(mono_file), mono_d0);
        const auto g = mono_C0 > 0.0 ? decay::GaugeSpec::power(mono_C0, mono_b)
                                     : decay::GaugeSpec::zero();
        const auto rep = decay::check_near_monotonicity(p, g, lambda, mono_C);
        std::cout << "{\n  \"monotone\": " << (rep.pass ? "true" : "false");
        if (rep.first_violation)
          std::cout << ",\n  \"first_violation_r\": "
                    << g17(p.r[*rep.first_violation]) << ",\n  \"drop\": "
                    << g17(rep.worst_drop);
        std::cout << ",\n  \"excess_upper\": "
                  << (rep.upper_bound_pass ? "true" : "false")
                  << ",\n  \"excess_lower\": "
                  << (rep.lower_bound_pass ? "true" : "false")
                  << ",\n  \"lambda\": " << g17(lambda)
                  << ",\n  \"C\": " << g17(mono_C) << "\n}\n";
        return rep.pass && rep.upper_bound_pass && rep.lower_bound_pass ? 0 : 2;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
