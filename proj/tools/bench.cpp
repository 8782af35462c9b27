// Compares the serial reference kernels against their OpenMP variants on
// fixed inputs and checks that both produce identical results.

#include <chrono>
#include <iostream>

#include "csl/fixtures.hpp"
#include "csl/learn.hpp"
#include "csl/parallel.hpp"
#include "csl/random_gen.hpp"
#include "csl/separation.hpp"

using namespace csl;

namespace {

template <typename F>
double time_ms(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const std::string& name, double serial, double parallel, bool same) {
  std::cout << name << ": serial " << serial << " ms, parallel " << parallel
            << " ms, speedup " << (parallel > 0 ? serial / parallel : 0)
            << "x, results " << (same ? "identical" : "DIFFER") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = argc > 1 ? std::atoi(argv[1]) : 0;
  set_jobs(jobs);
  std::cout << "workers: " << max_jobs() << '\n';

  Rng rng(20240901);
  Graph g7 = random_ancestral_graph(rng, 7, 0.45, 0.25);
  IndependenceModel serial_model = induced_model(g7, 8);
  IndependenceModel parallel_model = serial_model;
  double t_ser = time_ms([&] { serial_model = induced_model(g7, 8); });
  double t_par =
      time_ms([&] { parallel_model = induced_model_parallel(g7, 8, jobs); });
  row("induced_model n=7", t_ser, t_par, serial_model == parallel_model);

  Rng rng2(7);
  IndependenceModel learn_input = induced_model(random_dag(rng2, 6, 0.5), 8);
  auto ser_or = stable_orientations(learn_input, false, true);
  auto par_or = ser_or;
  double t_ser2 =
      time_ms([&] { ser_or = stable_orientations(learn_input, false, true); });
  double t_par2 = time_ms([&] {
    par_or = stable_orientations_parallel(learn_input, false, true, jobs);
  });
  row("stable_orientations n=6", t_ser2, t_par2, ser_or == par_or);

  Scm s = maxdiamond_scm();
  IndependenceModel ser_scm = induced_model_scm(s);
  IndependenceModel par_scm = ser_scm;
  double t_ser3 = time_ms([&] { ser_scm = induced_model_scm(s); });
  double t_par3 =
      time_ms([&] { par_scm = induced_model_scm_parallel(s, 8, jobs); });
  row("induced_model_scm maxdiamond", t_ser3, t_par3, ser_scm == par_scm);

  return 0;
}
