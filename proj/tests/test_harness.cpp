#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "helpers.hpp"
#include "stein/errors.hpp"
#include "stein/harness.hpp"
#include "stein/io.hpp"

using namespace stein;

namespace {

SimConfig small_vmf(std::size_t reps, unsigned threads) {
  SimConfig c;
  c.truth = VmfParams{Vector::Constant(3, 1.0 / std::sqrt(3.0)), 2.0};
  c.n = 50;
  c.reps = reps;
  c.estimators = {"st", "ml", "sm"};
  c.seed = 9;
  c.threads = threads;
  return c;
}

std::string csv(const SimResult& r) {
  std::ostringstream os;
  write_result_csv(os, r);
  return os.str();
}

}  // namespace

TEST_CASE("results do not depend on the thread count") {
  unsetenv("STEIN_THREADS");
  const SimResult a = run_simulation(small_vmf(300, 1));
  const SimResult b = run_simulation(small_vmf(300, 8));
  CHECK(b.threads_used == 8);
  CHECK(csv(a) == csv(b));
  Json ja = result_to_json(a), jb = result_to_json(b);
  ja["config"].erase("threads");
  jb["config"].erase("threads");
  CHECK(ja == jb);
  for (std::size_t e = 0; e < a.estimators.size(); ++e) {
    const auto& ka = a.estimators[e].kappa_hats;
    const auto& kb = b.estimators[e].kappa_hats;
    REQUIRE(ka.size() == kb.size());
    for (std::size_t i = 0; i < ka.size(); ++i) CHECK(ka[i] == kb[i]);
  }
}

TEST_CASE("STEIN_THREADS overrides the requested count") {
  setenv("STEIN_THREADS", "3", 1);
  CHECK(resolve_threads(7) == 3);
  setenv("STEIN_THREADS", "junk", 1);
  CHECK(resolve_threads(7) == 7);
  unsetenv("STEIN_THREADS");
  CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("single replication warns and has zero standard errors") {
  const SimResult r = run_simulation(small_vmf(1, 1));
  REQUIRE(r.warnings.size() == 1);
  for (const auto& s : r.estimators) {
    CHECK(s.kappa_bias.std_error == 0.0);
    CHECK(s.kappa_mse.std_error == 0.0);
    CHECK(s.fitted == 1);
  }
}

TEST_CASE("metrics are internally consistent") {
  const SimResult r = run_simulation(small_vmf(400, 2));
  for (const auto& s : r.estimators) {
    CHECK(s.ne_rate == 0.0);
    CHECK(s.kappa_mse.value >= s.kappa_bias.value * s.kappa_bias.value);
    CHECK(s.mu_mse.value >= s.mu_distance.value * s.mu_distance.value);
    CHECK(s.kappa_hats.size() == 400);
  }
}

TEST_CASE("Watson NE bookkeeping and FB blocks") {
  SimConfig w;
  w.truth = WatsonParams{Vector::Unit(10, 0), 0.5};
  w.n = 10;
  w.reps = 300;
  w.estimators = {"st", "mla"};
  const SimResult r = run_simulation(w);
  for (const auto& s : r.estimators) {
    CHECK(s.fitted + s.ne == 300);
    CHECK(s.ne_rate >= 0.0);
    CHECK(s.ne_rate <= 1.0);
  }

  SimConfig f;
  f.truth = FisherBinghamParams{Vector::Unit(3, 0) * 2.0, Matrix::Zero(3, 3)};
  f.n = 200;
  f.reps = 20;
  f.estimators = {"st"};
  const SimResult fr = run_simulation(f);
  CHECK(fr.estimators[0].has_A);
  CHECK(!fr.estimators[0].has_kappa);
  CHECK(csv(fr).find("A,mean_distance") != std::string::npos);
}

TEST_CASE("ranking flags the best bias and MSE") {
  const auto rows = compare_estimators(small_vmf(200, 1));
  int bias = 0, mse = 0;
  for (const auto& r : rows) {
    bias += r.best_bias;
    mse += r.best_mse;
  }
  CHECK(bias == 1);
  CHECK(mse == 1);
  SimConfig one = small_vmf(20, 1);
  one.estimators = {"st"};
  const auto single = compare_estimators(one);
  CHECK(single.front().best_bias);
  CHECK(single.front().best_mse);
}

TEST_CASE("config parsing") {
  Json j = Json::parse(R"({"family":"vmf","d":3,"kappa":1,"n":100,"reps":10})");
  SimConfig c = sim_config_from_json(j);
  CHECK(c.estimators == estimator_names(Family::vmf));
  CHECK(c.reps == 10);
  CHECK(std::abs(std::get<VmfParams>(c.truth).mu.norm() - 1.0) < 1e-15);

  j = Json::parse(R"({"params":{"family":"watson","mu":[0,0,1],"kappa":-3},"estimators":["st"]})");
  c = sim_config_from_json(j);
  CHECK(family_of(c.truth) == Family::watson);
  CHECK(c.reps == kDefaultReps);
  CHECK(sim_config_from_json(sim_config_to_json(c)).estimators == c.estimators);

  CHECK_THROWS_AS(sim_config_from_json(Json::parse(R"({"family":"vmf","d":3,"kappa":1,"reps":0})")), DomainError);
  CHECK_THROWS_AS(sim_config_from_json(Json::parse(R"({"family":"vmf","d":3,"kappa":1,"estimators":[]})")), DomainError);
  CHECK_THROWS_AS(sim_config_from_json(Json::parse(R"({"family":"vmf","d":3,"kappa":1,"estimators":["mla"]})")), DomainError);
  CHECK_THROWS_AS(sim_config_from_json(Json::parse(R"({"family":"kent","d":3,"kappa":1})")), DomainError);
  CHECK_THROWS_AS(sim_config_from_json(Json::parse(R"({"family":"vmf","d":3,"kappa":1,"n":-4})")), DomainError);
}

TEST_CASE("text table") {
  std::ostringstream os;
  write_result_table(os, run_simulation(small_vmf(30, 1)));
  const std::string t = os.str();
  CHECK(t.find("vmf d=3 kappa=2 n=50 reps=30 seed=9") != std::string::npos);
  CHECK(t.find(" *") != std::string::npos);
}

TEST_CASE("shipped configs parse") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(STEIN_CONFIG_DIR)) {
    const std::string name = entry.path().filename().string();
    CAPTURE(name);
    const Json j = read_json_file(entry.path().string());
    if (name.rfind("params_", 0) == 0)
      CHECK_NOTHROW(params_from_json(j));
    else
      CHECK_NOTHROW(sim_config_from_json(j));
    ++seen;
  }
  CHECK(seen >= 6);
}
