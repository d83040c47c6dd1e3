// Acceptance gate: one pass/fail line per primary criterion. Tolerances,
// minimum case counts and runtime budgets are pinned here.

#include <cstdio>
#include <string>
#include <vector>

#include "verify_suites.hpp"

using namespace tropheight;
using verify::SuiteResult;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Criterion {
  const char* label;
  std::size_t min_cases;
  double budget_seconds;
  std::function<SuiteResult(std::uint64_t)> run;
};

}  // namespace

int main() {
  verify::Tolerances tol;
  tol.tate_limit = 1e-6;
  tol.global = 1e-6;
  tol.doubling_ratio = 1e-5;
  tol.torsion = 1e-8;

  const std::vector<Criterion> criteria = {
      {"rank-1 closed form ||theta_trop|| = (l/2)B2(nu/l) - l/12, l=1..10 x 50 points, exact", 500, 1,
       verify::tate_closed_form},
      {"theta_trop = Psi o t_{-l/2}, l=1..10 x 100-point grid, exact", 1000, 1, verify::psi_shift},
      {"theta characteristic on 20 synthetic principal sets: r constant, 2k integral, kappa recovered",
       20, 30, verify::characteristic},
      {"quantization: ||f_trop|| on X*/Y lies in (1/2N)Z on the same 20 sets, exact", 20, 10,
       verify::quantization},
      {"CVP equals exhaustive box search (radius 4), 100 instances, ranks 1-4, exact", 100, 30,
       verify::cvp},
      {"dual route: split-multiplicative lambda' = Tate-parameter lambda', 20 instances, exact", 20, 60,
       verify::tate_dual_route},
      {"Tate normalization limit: non-archimedean exact, archimedean within 1e-6", 100, 10,
       [&](std::uint64_t s) { return verify::tate_limit(s, tol); }},
      {"end-to-end: |sum lambda' - hhat_x/2| < 1e-6 on >= 10 curves, global(2P)/global(P) = 4 +- 1e-5",
       20, 180, [&](std::uint64_t s) { return verify::global(s, tol); }},
      {"torsion: |global height| < 1e-8 on >= 5 curves", 5, 60,
       [&](std::uint64_t s) { return verify::torsion(s, tol); }},
      {"good reduction: lambda' = max(0, -v_p(x)/2) in Z>=0 at 5 good primes per curve, exact", 50, 30,
       verify::good_reduction},
  };

  int failed = 0, index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    SuiteResult r("");
    std::string error;
    try {
      r = verify::run_timed(c.run, kSeed);
    } catch (const std::exception& e) {
      error = e.what();
    }
    bool enough = r.cases >= c.min_cases;
    bool in_time = r.seconds < c.budget_seconds;
    bool ok = error.empty() && r.passed() && enough && in_time;
    if (!ok) ++failed;
    std::printf("%s [%2d] %s | %zu/%zu cases ok (min %zu), %.2f s (budget %.0f s)%s%s\n",
                ok ? "PASS" : "FAIL", index, c.label, r.cases - r.failures.size(), r.cases,
                c.min_cases, r.seconds, c.budget_seconds, r.detail.empty() ? "" : " | ",
                r.detail.c_str());
    if (!error.empty()) std::printf("       error: %s\n", error.c_str());
    for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i)
      std::printf("       counterexample: %s\n", r.failures[i].c_str());
  }
  std::printf("%d of %zu criteria passed\n", index - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
