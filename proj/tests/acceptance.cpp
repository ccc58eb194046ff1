// One PASS/FAIL line per acceptance criterion. Pass -v to list every
// individual comparison; failing comparisons are always listed.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>

#include "checks.hpp"
#include "stein/kernels.hpp"

using stein::checks::Check;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr std::size_t kTableReps = 2000;
constexpr std::size_t kFbReps = 200;
constexpr std::size_t kVarianceReps = 2000;
constexpr std::size_t kIdentityN = 100000;
constexpr std::size_t kStructuralInstances = 1000;

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::strcmp(argv[1], "-v") == 0;
  struct Criterion {
    int id;
    const char* title;
    std::function<std::vector<Check>()> run;
  };
  const Criterion criteria[] = {
      {1, "vMF table (d=3 kappa 1,2,10; d=10 kappa 10), ST/ML/SM bias and MSE",
       [] { return stein::checks::vmf_table(kTableReps, kSeed); }},
      {2, "Watson table (d=3 kappa +-10; d=10 kappa 20; d=20 kappa -2,5), ST/MLa bias, MSE, NE",
       [] { return stein::checks::watson_table(kTableReps, kSeed); }},
      {3, "Fisher-Bingham mean parameter errors (3 settings) within 30%, NE = 0",
       [] { return stein::checks::fb_table(kFbReps, kSeed); }},
      {4, "Stein kappa variance vs P; delta method equals P",
       [] { return stein::checks::stein_variance(kVarianceReps, kSeed); }},
      {5, "Stein identity at true parameters, n = 1e5",
       [] { return stein::checks::stein_identity(kIdentityN, kSeed); }},
      {6, "hand oracles to 1e-9", [] { return stein::checks::hand_oracles(); }},
      {7, "structural invariants over 1000 random instances",
       [] { return stein::checks::structural(kStructuralInstances, kSeed); }},
      {8, "P >= 1/I on the (d, kappa) grid", [] { return stein::checks::efficiency_grid(); }},
  };

  std::cout << "kernels: " << stein::kernels::active().name << '\n';
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Check> results;
    std::string crash;
    try {
      results = c.run();
    } catch (const std::exception& e) {
      crash = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = crash.empty() && stein::checks::all_pass(results);
    all = all && pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " ["
              << results.size() << " checks, " << secs << " s]\n";
    if (!crash.empty()) std::cout << "    error: " << crash << '\n';
    for (const auto& r : results)
      if (verbose || !r.pass)
        std::cout << "    " << (r.pass ? "ok   " : "FAIL ") << r.name << ": " << r.detail << '\n';
  }
  return all ? 0 : 1;
}
