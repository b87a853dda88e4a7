#include "bcw/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <vector>

#include <CLI11.hpp>

#include "bcw/fourier.hpp"
#include "bcw/io.hpp"
#include "bcw/realization.hpp"
#include "bcw/spectral.hpp"
#include "bcw/superosc.hpp"

namespace bcw::cli {

namespace {

using io::Json;

constexpr int kRandomChecks = 32;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json(const std::string& path, const Json& j) { io::write_text_file(path, dump(j)); }

void write_report(const RunConfig& cfg, Json report) {
  report["seed"] = cfg.seed;
  write_json(cfg.output_path + ".report.json", report);
}

std::vector<BoundaryPoint> random_points(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<BoundaryPoint> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double t = angle(rng);
    pts.push_back({t, angle(rng)});
  }
  return pts;
}

void maybe_write_samples(const RunConfig& cfg, const BCLaurentSeries& f) {
  if (cfg.samples_path.empty()) return;
  auto grid = boundary_grid(0.0, kTwoPi, cfg.grid, 0.0, kTwoPi, cfg.grid);
  io::write_text_file(cfg.samples_path, io::samples_csv(f, grid));
}

int checked_K(const RunConfig& cfg, int fallback) {
  int k = cfg.K.value_or(fallback);
  if (k < 0) throw IoError("-K must be nonnegative");
  return k;
}

std::size_t checked_N(const RunConfig& cfg, std::size_t fallback) {
  if (!cfg.N) return fallback;
  if (*cfg.N <= 0 || !fourier::is_power_of_two(static_cast<std::size_t>(*cfg.N))) {
    throw IoError("-N must be a positive power of two");
  }
  return static_cast<std::size_t>(*cfg.N);
}

int cmd_decompose(const RunConfig& cfg) {
  Json in = io::read_json_file(cfg.input_path);
  Json out;
  if (in.is_object() && in.contains("z1") && !in.contains("M1")) {
    auto [l1, l2] = idempotent_decompose(io::bicomplex_from_json(in));
    out = {{"lambda1", io::to_json(l1)}, {"lambda2", io::to_json(l2)}};
  } else {
    BCMatrix m = io::bcmatrix_from_json(in);
    CMatrix p1 = m.p1();
    CMatrix p2 = m.p2();
    out = {{"rows", m.rows()}, {"cols", m.cols()}, {"P1", io::to_json(p1)["data"]},
           {"P2", io::to_json(p2)["data"]}};
  }
  write_json(cfg.output_path, out);
  return kExitOk;
}

int cmd_invert(const RunConfig& cfg) {
  BCLaurentSeries f = io::bcseries_from_json(io::read_json_file(cfg.input_path));
  if (f.rows() != f.cols()) throw DomainError(Errc::ShapeMismatch, "invert needs a square series");
  int k = checked_K(cfg, 64);
  std::size_t n = checked_N(cfg, fourier::next_power_of_two(std::max<std::size_t>(
                                     default_grid_size(f.n_min(), f.n_max()),
                                     4 * static_cast<std::size_t>(k) + 4)));
  InversionResult res = invert(f, k, n, cfg.tol.value_or(1e-10));

  double check = 0.0;
  BCMatrix id = BCMatrix::identity(f.rows());
  for (const BoundaryPoint& pt : random_points(cfg.seed, kRandomChecks)) {
    check = std::max(check, bc_operator_norm(subtract(matmul(eval(f, pt), eval(res.inverse, pt)), id)));
  }
  write_json(cfg.output_path, io::to_json(res.inverse));
  write_report(cfg, {{"command", "invert"},
                     {"K", res.K},
                     {"N", res.N},
                     {"residual", res.residual},
                     {"tail_mass", res.tail_mass},
                     {"random_check_residual", check}});
  maybe_write_samples(cfg, res.inverse);
  return kExitOk;
}

FactorOptions merged_options(const RunConfig& cfg, const Json& in) {
  FactorOptions opts;
  if (in.is_object() && in.contains("options")) opts = io::factor_options_from_json(in["options"]);
  if (cfg.K) opts.K = checked_K(cfg, 0);
  if (cfg.N) opts.N = checked_N(cfg, 0);
  if (cfg.tol) opts.newton_tol = *cfg.tol;
  if (cfg.normalization) {
    if (*cfg.normalization == "pd0") {
      opts.normalization = Normalization::pd0;
    } else if (*cfg.normalization == "at_one") {
      opts.normalization = Normalization::at_one;
    } else {
      throw IoError("--normalization must be pd0 or at_one");
    }
  }
  return opts;
}

int cmd_factorize(const RunConfig& cfg) {
  Json in = io::read_json_file(cfg.input_path);
  FactorOptions opts = merged_options(cfg, in);
  const Json& body = (in.is_object() && in.contains("series")) ? in["series"] : in;

  if (body.is_object() && body.contains("rows") && !body.contains("p")) {
    ComplexSeries f = io::complex_series_from_json(body);
    SharpFactorization res = sharp_route_factorize(f, opts);
    write_json(cfg.output_path, io::complex_series_to_json(res.factor));
    write_report(cfg, {{"command", "factorize"},
                       {"route", "sharp"},
                       {"options", io::to_json(opts)},
                       {"residual", res.residual},
                       {"relative_residual", res.relative_residual},
                       {"iterations", res.iterations},
                       {"symmetry_defect", res.symmetry_defect}});
    return kExitOk;
  }

  BCLaurentSeries f = io::bcseries_from_json(body);
  FactorizationResult res = spectral_factorize(f, opts);

  double check = 0.0;
  for (const BoundaryPoint& pt : random_points(cfg.seed, kRandomChecks)) {
    BCMatrix w = eval(res.factor, pt);
    check = std::max(check, bc_operator_norm(subtract(eval(f, pt), matmul(w, star_adjoint(w)))));
  }
  write_json(cfg.output_path, io::to_json(res.factor));
  write_report(cfg, {{"command", "factorize"},
                     {"route", "idempotent"},
                     {"options", io::to_json(opts)},
                     {"K", res.K},
                     {"N", res.N},
                     {"residual", res.residual},
                     {"relative_residual", res.relative_residual},
                     {"iterations", res.iterations},
                     {"tail_mass", res.tail_mass},
                     {"random_check_residual", check}});
  maybe_write_samples(cfg, res.factor);
  return kExitOk;
}

int cmd_realize(const RunConfig& cfg) {
  PartialFractions pf = io::partial_fractions_from_json(io::read_json_file(cfg.input_path));
  Realization r = build_realization(pf);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  double check = 0.0;
  for (int i = 0; i < kRandomChecks; ++i) {
    Complex z = std::polar(1.0, angle(rng));
    bool near_pole = std::any_of(pf.poles.begin(), pf.poles.end(),
                                 [&](const PoleTerm& t) { return std::abs(z - t.pole) < 1e-6; });
    if (near_pole) continue;
    check = std::max(check, spectral_norm(eval_realization(r, z) - eval_partial_fractions(pf, z)));
  }
  write_json(cfg.output_path, io::to_json(r));
  write_report(cfg, {{"command", "realize"},
                     {"states", r.states()},
                     {"random_check_residual", check}});
  return kExitOk;
}

RieszMethod parse_method(const std::string& m) {
  if (m == "schur") return RieszMethod::schur;
  if (m == "quadrature") return RieszMethod::quadrature;
  throw IoError("--method must be schur or quadrature");
}

int cmd_fourier(const RunConfig& cfg) {
  Realization r = io::realization_from_json(io::read_json_file(cfg.input_path));
  int k = checked_K(cfg, 16);
  std::size_t nodes = checked_N(cfg, kQuadratureNodes);
  RieszProjector p = riesz_projection(r.A, parse_method(cfg.method), cfg.tol.value_or(kCircleTol),
                                      nodes);
  ComplexSeries coeffs = fourier_series_from_realization(r, p, k);

  double check = 0.0;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int i = 0; i < kRandomChecks; ++i) {
    double theta = angle(rng);
    check = std::max(check,
                     spectral_norm(eval_angle(coeffs, theta) - eval_realization(r, std::polar(1.0, theta))));
  }
  write_json(cfg.output_path, io::complex_series_to_json(coeffs));
  write_report(cfg, {{"command", "fourier"},
                     {"K", k},
                     {"method", cfg.method},
                     {"projector", io::to_json(p.P)},
                     {"truncation_check", check}});
  return kExitOk;
}

int cmd_stein(const RunConfig& cfg) {
  Json in = io::read_json_file(cfg.input_path);
  CMatrix a = io::cmatrix_from_json(in.contains("a") ? in["a"] : in.at("a"));
  CMatrix b = io::cmatrix_from_json(in.contains("b") ? in["b"] : in.at("b"));
  if (a.rows() != a.cols() || b.rows() != a.rows()) {
    throw DomainError(Errc::ShapeMismatch, "stein needs square a and b with matching rows");
  }
  CMatrix x = stein_solve(a, b, cfg.tol.value_or(kCircleTol));
  double residual = spectral_norm(x - a * x * a.adjoint() - b * b.adjoint());
  Json out = {{"X", io::to_json(x)}};
  Json report = {{"command", "stein"}, {"residual", residual}};

  if (in.contains("c") && in.contains("d")) {
    CMatrix c = io::cmatrix_from_json(in["c"]);
    CMatrix d = io::cmatrix_from_json(in["d"]);
    int k = checked_K(cfg, 8);
    Realization dens = spectral_density_realization(a, b, c, d);
    ComplexSeries coeffs(c.rows(), c.rows());
    for (int n = -k; n <= k; ++n) coeffs.set(n, spectral_fourier_coeffs(a, b, c, d, n));
    RieszProjector p = riesz_projection(dens.A, parse_method(cfg.method));
    out["density"] = io::to_json(dens);
    out["coefficients"] = io::complex_series_to_json(coeffs);
    out["projector"] = io::to_json(p.P);
    report["K"] = k;
  }
  write_json(cfg.output_path, out);
  write_report(cfg, report);
  return kExitOk;
}

int cmd_superosc(const RunConfig& cfg) {
  Json in = io::read_json_file(cfg.input_path);
  if (!in.is_object() || !in.contains("m") || !in["m"].is_number_integer() || !in.contains("a") ||
      !in["a"].is_number()) {
    throw IoError("schema: superosc input needs integer 'm' and number 'a'");
  }
  int m = in["m"].get<int>();
  double a = in["a"].get<double>();
  std::vector<double> c = superosc_coeffs(m, a);

  std::string coeff_csv = "k,c\n";
  for (std::size_t k = 0; k < c.size(); ++k) {
    coeff_csv += std::to_string(k) + ',' + io::format_double(c[k]) + '\n';
  }
  io::write_text_file(cfg.output_path, coeff_csv);

  bool bc = in.contains("b");
  double b = bc ? in["b"].get<double>() : 0.0;
  int nt = std::max(cfg.grid, 2);
  int ns = bc ? nt : 1;
  std::string sweep = "m,a,t,s,err\n";
  double sup = 0.0;
  for (const BoundaryPoint& pt : boundary_grid(-1.0, 1.0, nt, bc ? -1.0 : 0.0, bc ? 1.0 : 0.0, ns)) {
    double err;
    if (bc) {
      double x = pt.t - pt.s;
      double y = pt.t + pt.s;
      Bicomplex target = Bicomplex::from_idempotent(std::polar(1.0, a * x), std::polar(1.0, b * y));
      err = norm(bc_superosc_eval({m, a, b}, x, y) - target, NormKind::dual_lie);
    } else {
      err = std::abs(superosc_eval(m, a, pt.t) - std::polar(1.0, a * pt.t));
    }
    sup = std::max(sup, err);
    sweep += std::to_string(m) + ',' + io::format_double(a) + ',' + io::format_double(pt.t) + ',' +
             io::format_double(pt.s) + ',' + io::format_double(err) + '\n';
  }
  io::write_text_file(cfg.output_path + ".sweep.csv", sweep);
  Json params = {{"m", m}, {"a", a}};
  if (bc) params["b"] = b;
  double abs_sum = 0.0;
  for (double ck : c) abs_sum += std::abs(ck);
  write_report(cfg, {{"command", "superosc"},
                     {"params", params},
                     {"abs_coeff_sum", abs_sum},
                     {"sup_error", sup}});
  return kExitOk;
}

int cmd_approx(const RunConfig& cfg) {
  Json in = io::read_json_file(cfg.input_path);
  if (!in.is_object() || !in.contains("series") || !in.contains("m")) {
    throw IoError("schema: approx input needs 'series' and 'm'");
  }
  BCLaurentSeries f = io::bcseries_from_json(in["series"]);
  std::vector<int> ms;
  if (in["m"].is_array()) {
    for (const Json& v : in["m"]) {
      if (!v.is_number_integer()) throw IoError("schema: 'm' entries must be integers");
      ms.push_back(v.get<int>());
    }
  } else if (in["m"].is_number_integer()) {
    ms.push_back(in["m"].get<int>());
  } else {
    throw IoError("schema: 'm' must be an integer or array of integers");
  }
  int max_n = std::max(std::abs(f.n_min()), std::abs(f.n_max()));
  int g = std::max(cfg.grid, 2);
  auto grid = boundary_grid(-1.0, 1.0, g, -1.0, 1.0, g);

  std::string sweep = "m,a,t,s,err\n";
  Json sup = Json::array();
  for (int m : ms) {
    double worst = 0.0;
    for (const BoundaryPoint& pt : grid) {
      double err = bc_operator_norm(subtract(eval(f, pt), approximate_series(f, m, pt)));
      worst = std::max(worst, err);
      sweep += std::to_string(m) + ',' + std::to_string(max_n) + ',' + io::format_double(pt.t) +
               ',' + io::format_double(pt.s) + ',' + io::format_double(err) + '\n';
    }
    sup.push_back({{"m", m}, {"sup_error", worst}});
  }
  io::write_text_file(cfg.output_path, sweep);
  write_report(cfg, {{"command", "approx"}, {"params", {{"m", ms}, {"grid", g}}}, {"errors", sup}});
  return kExitOk;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    if (config.input_path.empty() || config.output_path.empty()) {
      throw IoError("--input and --output are required");
    }
    if (config.grid < 1) throw IoError("--grid must be positive");
    switch (config.command) {
      case Command::decompose: return cmd_decompose(config);
      case Command::invert: return cmd_invert(config);
      case Command::factorize: return cmd_factorize(config);
      case Command::realize: return cmd_realize(config);
      case Command::fourier: return cmd_fourier(config);
      case Command::stein: return cmd_stein(config);
      case Command::superosc: return cmd_superosc(config);
      case Command::approx: return cmd_approx(config);
    }
    return kExitIo;
  } catch (const DomainError& e) {
    std::cerr << "bcw: " << e.what() << '\n';
    return kExitDomain;
  } catch (const IoError& e) {
    std::cerr << "bcw: " << e.what() << '\n';
    return kExitIo;
  } catch (const Json::exception& e) {
    std::cerr << "bcw: schema: " << e.what() << '\n';
    return kExitIo;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Bicomplex Wiener algebra toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  const std::vector<std::pair<std::string, Command>> commands = {
      {"decompose", Command::decompose}, {"invert", Command::invert},
      {"factorize", Command::factorize}, {"realize", Command::realize},
      {"fourier", Command::fourier},     {"stein", Command::stein},
      {"superosc", Command::superosc},   {"approx", Command::approx},
  };
  std::optional<int> k;
  std::optional<int> n;
  std::optional<double> tol;
  std::optional<std::string> normalization;
  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input,-i", cfg.input_path)->required();
    sub->add_option("--output,-o", cfg.output_path)->required();
    sub->add_option("-K", k);
    sub->add_option("-N", n);
    sub->add_option("--grid", cfg.grid);
    sub->add_option("--tol", tol);
    sub->add_option("--normalization", normalization);
    sub->add_option("--method", cfg.method)->check(CLI::IsMember({"schur", "quadrature"}));
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--samples", cfg.samples_path);
    sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitIo;
  }
  cfg.K = k;
  cfg.N = n;
  cfg.tol = tol;
  cfg.normalization = normalization;
  return run(cfg);
}

}  // namespace bcw::cli
