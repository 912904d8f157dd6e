#include <chrono>
#include <iostream>

#include <omp.h>

#include "andor/distributions.hpp"
#include "andor/solver.hpp"
#include "andor/verifier.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double time_ms(const F& f, int repeats = 3) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    best = std::min(
        best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::cout << name << ": serial " << serial_ms << " ms, parallel "
            << parallel_ms << " ms, speedup " << serial_ms / parallel_ms
            << "x\n";
}

}  // namespace

int main() {
  const double v = 1.0;
  const andor::TieBreakRule tie = andor::TieBreakRule::fair();
  std::cout << "threads: " << omp_get_max_threads() << "\n";

  {
    const int n = 61;
    const double t_s = time_ms([&] {
      andor::build_grid_game(v, n, andor::GridMode::Full, tie,
                             andor::Exec::Serial);
    });
    const double t_p = time_ms([&] {
      andor::build_grid_game(v, n, andor::GridMode::Full, tie,
                             andor::Exec::Parallel);
    });
    row("grid game build (full, n=61)", t_s, t_p);
  }

  {
    const andor::GridGame game =
        andor::build_grid_game(v, 41, andor::GridMode::Full, tie);
    const double t_s =
        time_ms([&] { andor::enumerate_pure_nash(game, andor::Exec::Serial); });
    const double t_p = time_ms(
        [&] { andor::enumerate_pure_nash(game, andor::Exec::Parallel); });
    row("pure Nash scan (full, n=41)", t_s, t_p);
  }

  {
    const andor::AndEquilibrium f_and(v);
    const andor::OrEquilibrium f_or(v);
    const double step = 1.0 / 256;
    const double t_s = time_ms([&] {
      andor::best_response_gap(f_and, f_or, v, tie, step, 1e-6,
                               andor::Exec::Serial);
    });
    const double t_p = time_ms([&] {
      andor::best_response_gap(f_and, f_or, v, tie, step, 1e-6,
                               andor::Exec::Parallel);
    });
    row("best response gap (step 1/256)", t_s, t_p);
  }

  return 0;
}
