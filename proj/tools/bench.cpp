// Benchmark of the OpenMP kernels against their serial references: the
// per-terminal max-flow separation oracle and the simplex pivot updates.
#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lcatsp/gen.hpp"
#include "lcatsp/held_karp.hpp"

using namespace lcatsp;

namespace {

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double time_ms(int reps, F&& fn) {
  double t0 = now_ms();
  for (int r = 0; r < reps; ++r) fn();
  return (now_ms() - t0) / reps;
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 60;
  int reps = argc > 2 ? std::atoi(argv[2]) : 5;
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel figures run serially\n");
#endif
  std::printf("%-18s %8s %10s %10s %8s\n", "kernel", "n", "serial ms",
              "openmp ms", "speedup");

  for (int size : {n / 2, n}) {
    TwoWeightDigraph g = generate("random-strong", size, 3.0, 1.0, 10.0, 42);
    FractionalCirculation lp = solve_held_karp(g, false);

    SeparationResult ref = separate_reference(g, lp.x);
    SeparationResult par = separate(g, lp.x, true);
    if (ref.found != par.found || ref.value != par.value ||
        (ref.found && ref.cut.members != par.cut.members)) {
      std::printf("separation kernels disagree; aborting\n");
      return 1;
    }
    double t_ser =
        time_ms(reps, [&] { (void)separate_reference(g, lp.x); });
    double t_par = time_ms(reps, [&] { (void)separate(g, lp.x, true); });
    std::printf("%-18s %8d %10.3f %10.3f %7.2fx\n", "separation", size, t_ser,
                t_par, t_ser / t_par);

    LpModel model = held_karp_base_model(g);
    LpResult a = lp_solve(model, {.parallel = false});
    LpResult b = lp_solve(model, {.parallel = true});
    if (a.objective != b.objective || a.x != b.x) {
      std::printf("simplex kernels disagree; aborting\n");
      return 1;
    }
    double s_ser =
        time_ms(reps, [&] { (void)lp_solve(model, {.parallel = false}); });
    double s_par =
        time_ms(reps, [&] { (void)lp_solve(model, {.parallel = true}); });
    std::printf("%-18s %8d %10.3f %10.3f %7.2fx\n", "simplex", size, s_ser,
                s_par, s_ser / s_par);
  }
  return 0;
}
