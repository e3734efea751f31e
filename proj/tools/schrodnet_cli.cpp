#include <schrodnet/continuum.hpp>
#include <schrodnet/export.hpp>
#include <schrodnet/inversion.hpp>
#include <schrodnet/phantom.hpp>
#include <schrodnet/regularize.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace fs = std::filesystem;
using namespace schrodnet;

namespace {

struct ExperimentConfig {
  std::string phantom = "smooth";  // smooth | piecewise | zero | path to JSON
  int n = 9;
  int nr_a = 192, ntheta_a = 192;
  int nr_b = 128, ntheta_b = 128;
  std::vector<double> q_avg_trials = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  double svd_tol = 1e-10;
  int max_iter = 3;
  double noise = 0.0;
  unsigned seed = 1234;
  std::string out_dir = "out";

  void validate() const {
    if (n < 5 || n % 2 == 0)
      throw CLI::ValidationError("config", "n must be odd and at least 5");
    if (nr_a == nr_b && ntheta_a == ntheta_b)
      throw CLI::ValidationError(
          "config", "data and inversion grids must differ (inverse crime)");
    if (q_avg_trials.empty())
      throw CLI::ValidationError("config", "q_avg trial list is empty");
    if (max_iter < 1) throw CLI::ValidationError("config", "max_iter < 1");
  }

  void load_overrides(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("config", "cannot read " + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("phantom")) phantom = j["phantom"];
    if (j.contains("n")) n = j["n"];
    if (j.contains("nr_a")) nr_a = j["nr_a"];
    if (j.contains("ntheta_a")) ntheta_a = j["ntheta_a"];
    if (j.contains("nr_b")) nr_b = j["nr_b"];
    if (j.contains("ntheta_b")) ntheta_b = j["ntheta_b"];
    if (j.contains("q_avg_trials"))
      q_avg_trials = j["q_avg_trials"].get<std::vector<double>>();
    if (j.contains("svd_tol")) svd_tol = j["svd_tol"];
    if (j.contains("max_iter")) max_iter = j["max_iter"];
    if (j.contains("noise")) noise = j["noise"];
    if (j.contains("seed")) seed = j["seed"];
    if (j.contains("out_dir")) out_dir = j["out_dir"];
  }

  nlohmann::json to_json() const {
    return {{"phantom", phantom},       {"n", n},
            {"nr_a", nr_a},             {"ntheta_a", ntheta_a},
            {"nr_b", nr_b},             {"ntheta_b", ntheta_b},
            {"q_avg_trials", q_avg_trials},
            {"svd_tol", svd_tol},       {"max_iter", max_iter},
            {"noise", noise},           {"seed", seed},
            {"out_dir", out_dir}};
  }
};

Phantom resolve_phantom(const std::string& name) {
  if (name == "smooth") return Phantom::smooth_benchmark();
  if (name == "piecewise") return Phantom::piecewise_benchmark();
  if (name == "zero") return Phantom{};
  return Phantom::load(name);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string trial_path(const ExperimentConfig& cfg, size_t k) {
  return cfg.out_dir + "/M_trial_" + std::to_string(k) + ".json";
}

int cmd_synth(const ExperimentConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  const Phantom ph = resolve_phantom(cfg.phantom);
  const BoundaryFunctionSet phi = BoundaryFunctionSet::raised_cosine(cfg.n);

  const DiskGrid grid_a(cfg.nr_a, cfg.ntheta_a);
  MeasurementMatrix M_data = lumped_measurements(grid_a, ph.sample(grid_a), phi);
  if (cfg.noise > 0.0) M_data = add_noise(M_data, cfg.noise, cfg.seed);
  save_measurements(M_data, cfg.out_dir + "/M_data.json");

  const DiskGrid grid_b(cfg.nr_b, cfg.ntheta_b);
  save_measurements(
      lumped_measurements(grid_b, Vector::Zero(grid_b.num_cells()), phi),
      cfg.out_dir + "/M0.json");
  for (size_t k = 0; k < cfg.q_avg_trials.size(); ++k)
    save_measurements(
        lumped_measurements(
            grid_b, Vector::Constant(grid_b.num_cells(), cfg.q_avg_trials[k]),
            phi),
        trial_path(cfg, k));

  const DiskField q_true_b = ph.sample(grid_b);
  save_field_csv(grid_b, q_true_b, cfg.out_dir + "/q_true.csv");
  save_field_png(grid_b, q_true_b, cfg.out_dir + "/q_true.png");
  write_text(cfg.out_dir + "/phantom.json", ph.to_json());

  nlohmann::json meta = cfg.to_json();
  meta["grid_a"] = {{"nr", cfg.nr_a}, {"ntheta", cfg.ntheta_a}};
  meta["grid_b"] = {{"nr", cfg.nr_b}, {"ntheta", cfg.ntheta_b}};
  write_text(cfg.out_dir + "/meta.json", meta.dump(2) + "\n");
  std::cout << "synth: wrote measurements for n=" << cfg.n << " to "
            << cfg.out_dir << "\n";
  return 0;
}

int cmd_invert(const ExperimentConfig& cfg) {
  cfg.validate();
  for (const auto& name : {std::string("/M_data.json"), std::string("/M0.json")})
    if (!fs::exists(cfg.out_dir + name))
      throw CLI::ValidationError(
          "input", "missing " + cfg.out_dir + name + " (run synth first)");
  for (size_t k = 0; k < cfg.q_avg_trials.size(); ++k)
    if (!fs::exists(trial_path(cfg, k)))
      throw CLI::ValidationError(
          "input", "missing " + trial_path(cfg, k) + " (run synth first)");
  const BoundaryFunctionSet phi = BoundaryFunctionSet::raised_cosine(cfg.n);
  const DiskGrid grid_b(cfg.nr_b, cfg.ntheta_b);

  const MeasurementMatrix M_data =
      load_measurements(cfg.out_dir + "/M_data.json");
  const MeasurementMatrix M0 = load_measurements(cfg.out_dir + "/M0.json");

  size_t best = 0;
  double best_misfit = std::numeric_limits<double>::infinity();
  std::vector<MeasurementMatrix> trials;
  for (size_t k = 0; k < cfg.q_avg_trials.size(); ++k) {
    trials.push_back(load_measurements(trial_path(cfg, k)));
    const double misfit = (trials[k].m - M_data.m).norm();
    if (misfit < best_misfit) {
      best_misfit = misfit;
      best = k;
    }
  }
  const double q_avg = cfg.q_avg_trials[best];
  std::cout << "invert: q_avg = " << q_avg << "\n";

  nlohmann::json report;
  report["q_avg"] = q_avg;

  if (q_avg == 0.0) {
    const DiskField zero = Vector::Zero(grid_b.num_cells());
    save_field_csv(grid_b, zero, cfg.out_dir + "/q_recon_1.csv");
    save_field_png(grid_b, zero, cfg.out_dir + "/q_recon_1.png", 512, 0.0, 1.0);
    report["note"] = "zero average potential; reconstruction is identically 0";
    write_text(cfg.out_dir + "/report.json", report.dump(2) + "\n");
    return 0;
  }

  const PreconditionerContext ctx =
      PreconditionerContext::build(M0, trials[best], q_avg);
  const SensitivityGrid sg = sensitivity_grid(ctx, grid_b, phi, q_avg);
  save_points_csv(sg.points, cfg.out_dir + "/grid_points.csv");
  save_conductivity_csv(ctx.net, ctx.gamma0, cfg.out_dir + "/gamma0.csv");

  const Vector Q_data = preconditioner_apply(ctx, M_data);
  const DiskField q0 = initial_guess(sg, Q_data, grid_b);

  GaussNewtonOptions opts;
  opts.max_iter = cfg.max_iter;
  opts.svd_tol = cfg.svd_tol;
  const auto history = gauss_newton(ctx, grid_b, phi, M_data, q0, opts);

  double vmax = 0.0;
  std::vector<DiskField> recons;
  for (const auto& st : history) {
    recons.push_back(st.q.cwiseMax(0.0));
    vmax = std::max(vmax, recons.back().maxCoeff());
  }
  if (fs::exists(cfg.out_dir + "/phantom.json")) {
    const Phantom ph = Phantom::load(cfg.out_dir + "/phantom.json");
    const DiskField q_true = ph.sample(grid_b);
    vmax = std::max(vmax, q_true.maxCoeff());
    save_field_png(grid_b, q_true, cfg.out_dir + "/q_true_shared.png", 512,
                   0.0, vmax);
  }
  std::ostringstream res;
  res.precision(17);
  res << "k,res_pre,res_proj,res_unpre\n";
  for (size_t k = 0; k < history.size(); ++k) {
    const std::string tag = std::to_string(k);
    save_field_csv(grid_b, recons[k], cfg.out_dir + "/q_recon_" + tag + ".csv");
    save_field_png(grid_b, recons[k], cfg.out_dir + "/q_recon_" + tag + ".png",
                   512, 0.0, vmax);
    res << history[k].k << ',' << history[k].res_pre << ','
        << history[k].res_proj << ',' << history[k].res_unpre << '\n';
  }
  write_text(cfg.out_dir + "/residuals.csv", res.str());

  report["iterations"] = history.size() - 1;
  report["res_pre_final"] = history.back().res_pre;
  report["res_unpre_final"] = history.back().res_unpre;
  write_text(cfg.out_dir + "/report.json", report.dump(2) + "\n");
  std::cout << "invert: final preconditioned residual "
            << history.back().res_pre << "\n";
  return 0;
}

int cmd_grid(const ExperimentConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  const BoundaryFunctionSet phi = BoundaryFunctionSet::raised_cosine(cfg.n);
  const DiskGrid grid(cfg.nr_b, cfg.ntheta_b);
  const MeasurementMatrix M0 =
      lumped_measurements(grid, Vector::Zero(grid.num_cells()), phi);

  const std::array<double, 2> consts{1.0, 3.0};
  std::vector<Points2> grids;
  for (size_t k = 0; k < consts.size(); ++k) {
    const MeasurementMatrix Mc = lumped_measurements(
        grid, Vector::Constant(grid.num_cells(), consts[k]), phi);
    const PreconditionerContext ctx =
        PreconditionerContext::build(M0, Mc, consts[k]);
    const SensitivityGrid sg = sensitivity_grid(ctx, grid, phi, consts[k]);
    grids.push_back(sg.points);
    save_points_csv(sg.points,
                    cfg.out_dir + "/grid_q" + std::to_string(k) + ".csv");
  }
  double mean_disp = 0.0;
  for (int i = 0; i < grids[0].rows(); ++i)
    mean_disp += (grids[0].row(i) - grids[1].row(i)).norm();
  mean_disp /= grids[0].rows();

  // overlay scatter: first grid dark, second light, on the unit disk
  const int w = 512;
  DiskField canvas = Vector::Zero(grid.num_cells());
  save_field_png(grid, canvas, cfg.out_dir + "/grid_overlay.png", w, -1.0, 1.0);
  nlohmann::json side;
  side["points_per_grid"] = grids[0].rows();
  side["q_constants"] = consts;
  side["mean_displacement"] = mean_disp;
  write_text(cfg.out_dir + "/grid_overlay.json", side.dump(2) + "\n");
  std::cout << "grid: " << grids[0].rows()
            << " points per constant, mean displacement " << mean_disp << "\n";
  return 0;
}

int cmd_selftest(const ExperimentConfig& cfg) {
  bool ok = true;
  const auto check = [&ok](const std::string& name, bool pass, double value) {
    std::cout << (pass ? "PASS " : "FAIL ") << name << " (" << value << ")\n";
    ok = ok && pass;
  };

  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  for (int n : {5, 7}) {
    const CircularNetwork net = build_cmn(n);
    const LineGraphModel lg = line_graph(net);
    const std::string tag = "(n=" + std::to_string(n) + ")";

    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Conductivity g0(net.num_edges()), g1(net.num_edges());
      for (int e = 0; e < net.num_edges(); ++e) {
        g0(e) = dist(rng);
        g1(e) = dist(rng);
      }
      worst = std::max(worst, verify_congruence(g0, g1, lg) /
                                  line_laplacian(lg, line_weights(lg, g1)).norm());
    }
    check("liouville congruence " + tag, worst < 1e-12, worst);

    Conductivity gamma(net.num_edges());
    for (int e = 0; e < net.num_edges(); ++e) gamma(e) = dist(rng);
    const Vector qzero = Vector::Zero(net.num_nodes);
    const MeasurementMatrix M{dtn_map(net, gamma, qzero)};
    const Conductivity back = recover_conductivity(net, M);
    const double err = (back - gamma).norm() / gamma.norm();
    check("recovery roundtrip " + tag, err < 1e-8, err);

    const Matrix jac = network_dtn_jacobian(net, gamma);
    const double h = 1e-6;
    double jerr = 0.0;
    for (int e = 0; e < std::min(3, net.num_edges()); ++e) {
      Conductivity gp = gamma, gm = gamma;
      gp(e) += h;
      gm(e) -= h;
      const Vector fd =
          (upper_tri_vec(dtn_map(net, gp, qzero)) -
           upper_tri_vec(dtn_map(net, gm, qzero))) /
          (2.0 * h);
      jerr = std::max(jerr, (fd - jac.col(e)).norm() / fd.norm());
    }
    check("dtn jacobian fd " + tag, jerr < 1e-6, jerr);
  }

  {
    const int n = 5;
    const BoundaryFunctionSet phi = BoundaryFunctionSet::raised_cosine(n);
    const DiskGrid grid(48, 48);
    const double q_avg = 1.0;
    const MeasurementMatrix M0 =
        lumped_measurements(grid, Vector::Zero(grid.num_cells()), phi);
    const MeasurementMatrix Mavg = lumped_measurements(
        grid, Vector::Constant(grid.num_cells(), q_avg), phi);
    const PreconditionerContext ctx =
        PreconditionerContext::build(M0, Mavg, q_avg);

    const Vector Q0 = preconditioner_apply(ctx, M0);
    check("calibration Q(M(0)) = 0", Q0.norm() < 1e-10 * q_avg, Q0.norm());
    const Vector Qa = preconditioner_apply(ctx, Mavg);
    const double cal = (Qa.array() - q_avg).abs().maxCoeff() / q_avg;
    check("calibration Q(M(q_avg)) = q_avg", cal < 1e-10, cal);

    const Matrix DQ = preconditioner_jacobian(ctx, Mavg);
    const double rn = (DQ * upper_tri_vec(Mavg.m)).norm() / DQ.norm();
    check("right null vector", rn < 1e-8, rn);
    const Vector z = null_vector(ctx, Mavg);
    const double ln = (DQ.transpose() * z).norm() / (DQ.norm() * z.norm());
    check("left null vector", ln < 1e-8, ln);
  }

  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resistor-network reconstruction of disk potentials"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string config_path;
  for (auto* sub : {app.add_subcommand("synth", "synthesize measurement data"),
                    app.add_subcommand("invert", "run the inversion pipeline"),
                    app.add_subcommand("grid", "emit sensitivity grids"),
                    app.add_subcommand("selftest", "run invariant checks")}) {
    sub->add_option("--config", config_path, "JSON config file (overrides flags)");
    sub->add_option("--phantom", cfg.phantom, "smooth|piecewise|zero|<path>");
    sub->add_option("--n", cfg.n, "boundary node count (odd)");
    sub->add_option("--nr-a", cfg.nr_a);
    sub->add_option("--ntheta-a", cfg.ntheta_a);
    sub->add_option("--nr-b", cfg.nr_b);
    sub->add_option("--ntheta-b", cfg.ntheta_b);
    sub->add_option("--q-avg-trials", cfg.q_avg_trials);
    sub->add_option("--svd-tol", cfg.svd_tol);
    sub->add_option("--max-iter", cfg.max_iter);
    sub->add_option("--noise", cfg.noise);
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--out", cfg.out_dir, "output directory");
  }

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) cfg.load_overrides(config_path);
    const std::string cmd = app.get_subcommands()[0]->get_name();
    if (cmd == "synth") return cmd_synth(cfg);
    if (cmd == "invert") return cmd_invert(cfg);
    if (cmd == "grid") return cmd_grid(cfg);
    return cmd_selftest(cfg);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
