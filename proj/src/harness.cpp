#include "stein/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "stein/errors.hpp"
#include "stein/est_fb.hpp"
#include "stein/est_vmf.hpp"
#include "stein/est_watson.hpp"
#include "stein/rng.hpp"
#include "stein/sampler.hpp"

namespace stein {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Outcome {
  bool ne = true;
  double kappa = kNaN;
  double mu_sq = kNaN;
  double A_norm = kNaN;
};

double true_kappa(const Params& p) {
  if (const auto* v = std::get_if<VmfParams>(&p)) return v->kappa;
  if (const auto* w = std::get_if<WatsonParams>(&p)) return w->kappa;
  return kNaN;
}

Vector true_mu(const Params& p) {
  return std::visit([](const auto& q) -> Vector { return q.mu; }, p);
}

Outcome fit_one(const Params& truth, const SampleMatrix& x, const std::string& name) {
  Outcome o;
  o.ne = false;
  const Vector mu = true_mu(truth);
  switch (family_of(truth)) {
    case Family::vmf: {
      const VmfEstimate e = fit_vmf(x, parse_vmf_estimator(name));
      o.kappa = e.kappa_hat;
      o.mu_sq = (e.mu_hat - mu).squaredNorm();
      break;
    }
    case Family::watson: {
      const WatsonEstimate e = fit_watson(x, parse_watson_estimator(name));
      o.kappa = e.kappa_hat;
      o.mu_sq = std::min((e.mu_hat - mu).squaredNorm(), (e.mu_hat + mu).squaredNorm());
      break;
    }
    case Family::fb: {
      if (name != "st") throw DomainError("unknown fb estimator '" + name + "' (expected st)");
      const FbEstimate e = fb_stein_fit(x);
      const auto& t = std::get<FisherBinghamParams>(truth);
      o.mu_sq = (e.params.mu - t.mu).squaredNorm();
      o.A_norm = spectral_norm(e.params.A - t.A);
      break;
    }
  }
  return o;
}

// Mean and standard error of the finite entries, in index order.
Metric mean_se(const std::vector<double>& v) {
  double sum = 0.0;
  std::size_t m = 0;
  for (double x : v)
    if (std::isfinite(x)) {
      sum += x;
      ++m;
    }
  if (m == 0) return {kNaN, kNaN};
  const double mean = sum / static_cast<double>(m);
  if (m == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v)
    if (std::isfinite(x)) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(m - 1) / static_cast<double>(m))};
}

template <class F>
std::vector<double> transform(const std::vector<Outcome>& col, F f) {
  std::vector<double> out;
  out.reserve(col.size());
  for (const Outcome& o : col) out.push_back(o.ne ? kNaN : f(o));
  return out;
}

EstimatorSummary summarize(const std::string& name, const Params& truth,
                           const std::vector<Outcome>& col) {
  EstimatorSummary s;
  s.estimator = name;
  for (const Outcome& o : col) (o.ne ? s.ne : s.fitted) += 1;
  s.ne_rate = static_cast<double>(s.ne) / static_cast<double>(col.size());
  s.mu_mse = mean_se(transform(col, [](const Outcome& o) { return o.mu_sq; }));
  s.mu_distance = mean_se(transform(col, [](const Outcome& o) { return std::sqrt(o.mu_sq); }));
  const double k0 = true_kappa(truth);
  if (std::isfinite(k0)) {
    s.has_kappa = true;
    s.kappa_hats = transform(col, [](const Outcome& o) { return o.kappa; });
    s.kappa_bias = mean_se(transform(col, [&](const Outcome& o) { return o.kappa - k0; }));
    s.kappa_mse = mean_se(transform(col, [&](const Outcome& o) {
      return (o.kappa - k0) * (o.kappa - k0);
    }));
  }
  if (family_of(truth) == Family::fb) {
    s.has_A = true;
    s.A_mse = mean_se(transform(col, [](const Outcome& o) { return o.A_norm * o.A_norm; }));
    s.A_distance = mean_se(transform(col, [](const Outcome& o) { return o.A_norm; }));
  }
  return s;
}

std::string cell(const Metric& m) {
  std::ostringstream os;
  os << std::setprecision(4) << m.value << " (" << std::setprecision(2) << m.std_error << ")";
  return os.str();
}

// Same error category, message prefixed with where it happened.
std::exception_ptr with_context(const std::exception& ex, const std::string& where) {
  const std::string msg = where + ex.what();
  if (dynamic_cast<const SamplerError*>(&ex)) return std::make_exception_ptr(SamplerError(msg));
  if (dynamic_cast<const DomainError*>(&ex)) return std::make_exception_ptr(DomainError(msg));
  if (dynamic_cast<const ConvergenceError*>(&ex)) return std::make_exception_ptr(ConvergenceError(msg));
  return std::make_exception_ptr(Error(msg));
}

}  // namespace

std::vector<std::string> estimator_names(Family f) {
  switch (f) {
    case Family::vmf: return {"st", "st2", "ml", "sm"};
    case Family::watson: return {"st", "mla", "ml"};
    case Family::fb: return {"st"};
  }
  return {};
}

void validate(const SimConfig& c) {
  validate(c.truth);
  if (c.reps < 1) throw DomainError("simulation: reps must be at least 1");
  if (c.n < 2) throw DomainError("simulation: n must be at least 2");
  if (c.estimators.empty()) throw DomainError("simulation: estimator list is empty");
  const auto valid = estimator_names(family_of(c.truth));
  for (const auto& e : c.estimators)
    if (std::find(valid.begin(), valid.end(), e) == valid.end())
      throw DomainError("simulation: estimator '" + e + "' is not available for family " +
                        family_name(family_of(c.truth)));
}

SimConfig sim_config_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("simulation config must be a JSON object");
  SimConfig c;
  c.truth = params_from_json(j.contains("params") ? j["params"] : j);
  auto count = [&](const char* key, std::size_t fallback) -> std::size_t {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer() || j[key].get<long long>() < 0)
      throw DomainError(std::string("simulation config: '") + key + "' must be a nonnegative integer");
    return j[key].get<std::size_t>();
  };
  c.n = count("n", c.n);
  c.reps = count("reps", c.reps);
  c.seed = count("seed", c.seed);
  c.threads = static_cast<unsigned>(count("threads", 0));
  if (j.contains("estimators")) {
    if (!j["estimators"].is_array()) throw DomainError("simulation config: 'estimators' must be an array");
    for (const auto& e : j["estimators"]) {
      if (!e.is_string()) throw DomainError("simulation config: estimator names must be strings");
      c.estimators.push_back(e.get<std::string>());
    }
  } else {
    c.estimators = estimator_names(family_of(c.truth));
  }
  validate(c);
  return c;
}

Json sim_config_to_json(const SimConfig& c) {
  Json j;
  j["params"] = params_to_json(c.truth);
  j["n"] = c.n;
  j["reps"] = c.reps;
  j["estimators"] = c.estimators;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j;
}

unsigned resolve_threads(unsigned requested) {
  if (const char* env = std::getenv("STEIN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

SimResult run_simulation(const SimConfig& config) {
  validate(config);
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t reps = config.reps;
  const std::size_t k = config.estimators.size();
  std::vector<Outcome> slots(reps * k);

  SimResult result;
  result.config = config;
  result.threads_used = static_cast<unsigned>(
      std::min<std::size_t>(resolve_threads(config.threads), reps));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= reps || failed.load()) return;
      std::string stage = "sampling";
      try {
        Rng rng(config.seed, r);
        const SampleMatrix x = sample(config.truth, config.n, rng);
        for (std::size_t e = 0; e < k; ++e) {
          stage = "estimator " + config.estimators[e];
          Outcome& o = slots[r * k + e];
          try {
            o = fit_one(config.truth, x, config.estimators[e]);
          } catch (const NotEligible&) {
            o = Outcome{};
          } catch (const SingularSystem&) {
            o = Outcome{};
          }
        }
      } catch (const std::exception& ex) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) {
          error = with_context(ex, "replication " + std::to_string(r) + ", " + stage + ": ");
        }
        return;
      }
    }
  };

  if (result.threads_used <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < result.threads_used; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  for (std::size_t e = 0; e < k; ++e) {
    std::vector<Outcome> col;
    col.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) col.push_back(slots[r * k + e]);
    result.estimators.push_back(summarize(config.estimators[e], config.truth, col));
  }
  if (reps == 1) result.warnings.push_back("reps = 1: standard errors are zero and not meaningful");
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::vector<RankedRow> rank_estimators(const SimResult& r) {
  std::vector<RankedRow> rows;
  for (const auto& s : r.estimators) rows.push_back({s, false, false});
  auto flag = [&](auto key, bool RankedRow::*field) {
    int best = -1;
    double best_v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double v = key(rows[i].summary);
      if (std::isfinite(v) && v < best_v) {
        best_v = v;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0) rows[static_cast<std::size_t>(best)].*field = true;
  };
  const bool kappa = !rows.empty() && rows.front().summary.has_kappa;
  if (kappa) flag([](const EstimatorSummary& s) { return std::abs(s.kappa_bias.value); }, &RankedRow::best_bias);
  flag([&](const EstimatorSummary& s) { return kappa ? s.kappa_mse.value : s.mu_mse.value; },
       &RankedRow::best_mse);
  return rows;
}

std::vector<RankedRow> compare_estimators(const SimConfig& config) {
  return rank_estimators(run_simulation(config));
}

void write_result_csv(std::ostream& os, const SimResult& r) {
  os << "estimator,block,metric,value,std_error,fitted,ne_rate\n";
  for (const auto& s : r.estimators) {
    auto row = [&](const char* block, const char* metric, const Metric& m) {
      os << s.estimator << ',' << block << ',' << metric << ',' << format_double(m.value) << ','
         << format_double(m.std_error) << ',' << s.fitted << ',' << format_double(s.ne_rate) << '\n';
    };
    if (s.has_kappa) {
      row("kappa", "bias", s.kappa_bias);
      row("kappa", "mse", s.kappa_mse);
    }
    row("mu", "mse", s.mu_mse);
    row("mu", "mean_distance", s.mu_distance);
    if (s.has_A) {
      row("A", "mse", s.A_mse);
      row("A", "mean_distance", s.A_distance);
    }
  }
}

void write_result_table(std::ostream& os, const SimResult& r) {
  const auto& c = r.config;
  os << family_name(family_of(c.truth)) << " d=" << dimension(c.truth);
  if (const double k0 = true_kappa(c.truth); std::isfinite(k0)) os << " kappa=" << k0;
  os << " n=" << c.n << " reps=" << c.reps << " seed=" << c.seed << '\n';
  const auto rows = rank_estimators(r);
  const bool kappa = !rows.empty() && rows.front().summary.has_kappa;
  const bool has_A = !rows.empty() && rows.front().summary.has_A;
  os << std::left << std::setw(6) << "est";
  if (kappa) os << std::setw(22) << "bias(kappa)" << std::setw(22) << "mse(kappa)";
  os << std::setw(22) << "mse(mu)" << std::setw(22) << "dist(mu)";
  if (has_A) os << std::setw(22) << "mse(A)" << std::setw(22) << "dist(A)";
  os << "NE\n";
  for (const auto& row : rows) {
    const auto& s = row.summary;
    os << std::setw(6) << s.estimator;
    if (kappa) {
      os << std::setw(22) << cell(s.kappa_bias) + (row.best_bias ? " *" : "");
      os << std::setw(22) << cell(s.kappa_mse) + (row.best_mse ? " *" : "");
      os << std::setw(22) << cell(s.mu_mse);
    } else {
      os << std::setw(22) << cell(s.mu_mse) + (row.best_mse ? " *" : "");
    }
    os << std::setw(22) << cell(s.mu_distance);
    if (has_A) os << std::setw(22) << cell(s.A_mse) << std::setw(22) << cell(s.A_distance);
    os << s.ne_rate << '\n';
  }
  os << std::right;
  for (const auto& w : r.warnings) os << "warning: " << w << '\n';
}

Json result_to_json(const SimResult& r) {
  Json j;
  j["config"] = sim_config_to_json(r.config);
  auto metric = [](const Metric& m) { return Json{{"value", m.value}, {"std_error", m.std_error}}; };
  Json ests = Json::array();
  for (const auto& row : rank_estimators(r)) {
    const auto& s = row.summary;
    Json e{{"estimator", s.estimator}, {"fitted", s.fitted}, {"ne", s.ne}, {"ne_rate", s.ne_rate},
           {"mu_mse", metric(s.mu_mse)}, {"mu_mean_distance", metric(s.mu_distance)},
           {"best_bias", row.best_bias}, {"best_mse", row.best_mse}};
    if (s.has_kappa) {
      e["kappa_bias"] = metric(s.kappa_bias);
      e["kappa_mse"] = metric(s.kappa_mse);
    }
    if (s.has_A) {
      e["A_mse"] = metric(s.A_mse);
      e["A_mean_distance"] = metric(s.A_distance);
    }
    ests.push_back(e);
  }
  j["estimators"] = ests;
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace stein
