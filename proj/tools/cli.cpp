#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "stein/errors.hpp"
#include "stein/est_fb.hpp"
#include "stein/est_vmf.hpp"
#include "stein/est_watson.hpp"
#include "stein/harness.hpp"
#include "stein/io.hpp"
#include "stein/rng.hpp"
#include "stein/sampler.hpp"
#include "stein/vmf_moments.hpp"

namespace stein::cli {
namespace {

constexpr double kNormOk = 1e-6;
constexpr double kNormRepairable = 1e-3;

// --out given: write there; otherwise the stream the caller passed in.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

Json warnings_json(const std::vector<std::string>& w) { return Json(w); }

int cmd_sample(const std::string& family, const std::string& params_path, std::size_t n,
               std::uint64_t seed, const std::string& out_path, bool header, std::ostream& out,
               std::ostream& err) {
  const Params p = params_from_json(read_json_file(params_path));
  if (!family.empty() && parse_family(family) != family_of(p))
    throw DomainError("--family " + family + " does not match the parameter file (" +
                      family_name(family_of(p)) + ")");
  if (n < 1) throw DomainError("--n must be at least 1");
  Rng rng(seed);
  const SampleMatrix x = sample(p, n, rng);
  Output o(out_path, out);
  write_csv(o.get(), x.matrix(), header);
  err << "seed=" << seed << '\n';
  return kOk;
}

Json fit_report(Family f, const std::string& estimator, const SampleMatrix& x) {
  Json j;
  j["status"] = "ok";
  j["family"] = family_name(f);
  j["estimator"] = estimator;
  j["n"] = x.n();
  j["d"] = x.d();
  switch (f) {
    case Family::vmf: {
      const VmfEstimate e = fit_vmf(x, parse_vmf_estimator(estimator));
      j["mu"] = vector_to_json(e.mu_hat);
      j["kappa"] = e.kappa_hat;
      j["diagnostics"] = {{"resultant_length", e.resultant_length},
                          {"iterations", e.iterations},
                          {"condition", e.condition}};
      j["warnings"] = warnings_json(e.warnings);
      break;
    }
    case Family::watson: {
      const WatsonEstimate e = fit_watson(x, parse_watson_estimator(estimator));
      j["mu"] = vector_to_json(e.mu_hat);
      j["kappa"] = e.kappa_hat;
      j["branch"] = branch_name(e.branch);
      j["diagnostics"] = {{"eligible_plus", e.eligible_plus},   {"eligible_minus", e.eligible_minus},
                          {"kappa_plus", e.kappa_plus},         {"kappa_minus", e.kappa_minus},
                          {"score_plus", e.score_plus},         {"score_minus", e.score_minus}};
      j["warnings"] = warnings_json(e.warnings);
      break;
    }
    case Family::fb: {
      if (estimator != "st") throw DomainError("unknown fb estimator '" + estimator + "' (expected st)");
      const FbEstimate e = fb_stein_fit(x);
      j["mu"] = vector_to_json(e.params.mu);
      j["A"] = matrix_to_json(e.params.A);
      j["diagnostics"] = {{"cond_M_prime", e.cond_M_prime},
                          {"cond_schur", e.cond_schur},
                          {"residual_norm", e.residual_norm}};
      j["warnings"] = warnings_json(e.warnings);
      break;
    }
  }
  return j;
}

int cmd_fit(const std::string& family, const std::string& estimator, const std::string& in_path,
            const std::string& out_path, std::ostream& out, std::ostream& err) {
  const Family f = parse_family(family);
  std::ifstream in(in_path);
  if (!in) throw DomainError("cannot open '" + in_path + "'");
  Matrix rows = read_csv(in);
  if (rows.cols() < 2) throw DomainError("input must have at least 2 columns");
  const double dev = (row_norms(rows).array() - 1.0).abs().maxCoeff();
  std::vector<std::string> io_warnings;
  if (!(dev <= kNormRepairable)) {
    std::ostringstream os;
    os << "input rows are not unit vectors (max |norm - 1| = " << dev << ")";
    throw DomainError(os.str());
  }
  if (dev > kNormOk) {
    std::ostringstream os;
    os << "renormalized input rows (max |norm - 1| = " << dev << ")";
    io_warnings.push_back(os.str());
    err << "warning: " << os.str() << '\n';
  }
  const SampleMatrix x = SampleMatrix::normalized(std::move(rows));

  Json report;
  try {
    report = fit_report(f, estimator, x);
  } catch (const NotEligible& e) {
    report = {{"status", "NE"}, {"family", family_name(f)}, {"estimator", estimator},
              {"reason", e.what()}};
  }
  for (const auto& w : io_warnings) report["warnings"].push_back(w);
  Output o(out_path, out);
  o.get() << report.dump(2) << '\n';
  return kOk;
}

int cmd_simulate(const std::string& config_path, std::optional<std::size_t> reps,
                 std::optional<std::size_t> n, std::optional<std::uint64_t> seed,
                 std::optional<unsigned> threads, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  Json j = read_json_file(config_path);
  if (!j.is_object()) throw DomainError("simulation config must be a JSON object");
  if (reps) j["reps"] = *reps;
  if (n) j["n"] = *n;
  if (seed) j["seed"] = *seed;
  if (threads) j["threads"] = *threads;
  const SimConfig c = sim_config_from_json(j);
  const SimResult r = run_simulation(c);
  write_result_table(out, r);
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  err << "threads=" << r.threads_used << " wall=" << r.wall_seconds << "s\n";
  if (!out_path.empty()) {
    Output o(out_path, out);
    write_result_csv(o.get(), r);
  }
  return kOk;
}

int cmd_asympvar(int d, double kappa, std::ostream& out) {
  if (d < 2) throw DomainError("--d must be at least 2");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("--kappa must be positive");
  const double p = stein_asymptotic_variance_vmf(d, kappa);
  const double info = fisher_information_vmf(d, kappa);
  Json j{{"d", d}, {"kappa", kappa}, {"P", p}, {"fisher_information", info},
         {"inverse_fisher", 1.0 / info}, {"efficiency", (1.0 / info) / p}};
  if (d == 2) j["note"] = "for d = 2 the Stein and score-matching estimators have the same asymptotic variance";
  if (p < 1.0 / info * (1.0 - 1e-10)) throw Error("P is below the Cramer-Rao bound");
  out << j.dump(2) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stein-type estimators for distributions on the unit sphere", "stein-sphere"};
  app.require_subcommand(1, 1);

  std::string family, estimator = "st", params_path, in_path, out_path, config_path;
  std::size_t n = 100;
  std::uint64_t seed = 1;
  bool header = false;

  auto* sample_cmd = app.add_subcommand("sample", "Draw a sample and write it as CSV");
  sample_cmd->add_option("--family", family, "fb, vmf or watson (checked against --params)");
  sample_cmd->add_option("--params", params_path, "Parameter JSON")->required();
  sample_cmd->add_option("--n", n, "Sample size")->capture_default_str();
  sample_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  sample_cmd->add_option("--out", out_path, "Output CSV (default stdout)");
  sample_cmd->add_flag("--header", header, "Write a column header line");

  auto* fit_cmd = app.add_subcommand("fit", "Fit a model to a CSV sample");
  fit_cmd->add_option("--family", family, "fb, vmf or watson")->required();
  fit_cmd->add_option("--estimator", estimator, "vmf: st|st2|ml|sm, watson: st|mla|ml, fb: st")
      ->capture_default_str();
  fit_cmd->add_option("--in", in_path, "Input CSV")->required();
  fit_cmd->add_option("--out", out_path, "Output JSON (default stdout)");

  std::optional<std::size_t> sim_reps, sim_n;
  std::optional<std::uint64_t> sim_seed;
  std::optional<unsigned> sim_threads;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo bias/MSE study");
  sim_cmd->add_option("--config", config_path, "Simulation config JSON")->required();
  sim_cmd->add_option("--reps", sim_reps, "Override replications");
  sim_cmd->add_option("--n", sim_n, "Override sample size");
  sim_cmd->add_option("--seed", sim_seed, "Override seed");
  sim_cmd->add_option("--threads", sim_threads, "Worker threads (STEIN_THREADS overrides)");
  sim_cmd->add_option("--out", out_path, "Result CSV");

  int d = 0;
  double kappa = 0.0;
  auto* av_cmd = app.add_subcommand("asympvar", "vMF asymptotic variances of the Stein and ML estimators");
  av_cmd->add_option("--d", d, "Dimension")->required();
  av_cmd->add_option("--kappa", kappa, "Concentration")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*sample_cmd) return cmd_sample(family, params_path, n, seed, out_path, header, out, err);
    if (*fit_cmd) return cmd_fit(family, estimator, in_path, out_path, out, err);
    if (*sim_cmd)
      return cmd_simulate(config_path, sim_reps, sim_n, sim_seed, sim_threads, out_path, out, err);
    if (*av_cmd) return cmd_asympvar(d, kappa, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DegenerateMean& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const SamplerError& e) {
    err << "sampler error: " << e.what() << '\n';
    return kSamplerError;
  } catch (const SingularSystem& e) {
    err << "singular system: " << e.what() << '\n';
    return kSingular;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace stein::cli
