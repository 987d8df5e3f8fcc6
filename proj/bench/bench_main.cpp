// Benchmarks the serial and parallel execution paths on the same inputs and
// reports both timings plus the thread count. Equal class tallies between the
// two paths are asserted, so this doubles as a consistency check.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <vector>

#ifdef PATHINT_HAVE_OPENMP
#include <omp.h>
#endif

#include "pathint/reducer.hpp"
#include "pathint/report.hpp"

using namespace pathint;

namespace {

double time_median_ms(int reps, const std::function<void()>& body) {
  body();  // warm-up
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(reps));
  for (int i = 0; i < reps; ++i) {
    auto start = std::chrono::steady_clock::now();
    body();
    samples.push_back(
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count());
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

std::vector<wick::FieldSlot> two_vertex_slots(int dotted, int plain) {
  std::vector<wick::FieldSlot> fields;
  for (int v = 0; v < 2; ++v) {
    for (int i = 0; i < dotted; ++i) fields.push_back({v, true});
    for (int i = 0; i < plain; ++i) fields.push_back({v, false});
  }
  return fields;
}

std::vector<action::VertexTerm> default_vertices() {
  auto f = action::TransformSeries::default_transform();
  action::ModelParams p;
  auto vs = action::expand_interaction(f, p);
  for (const auto& v : action::expand_jacobian(f, p)) vs.push_back(v);
  return vs;
}

}  // namespace

int main() {
  int threads = 1;
#ifdef PATHINT_HAVE_OPENMP
  threads = omp_get_max_threads();
#endif

  std::printf("pairing enumeration, two vertices (median of N runs)\n");
  std::printf("  %6s  %7s  %4s  %12s  %12s\n", "fields", "classes", "reps", "serial ms",
              "parallel ms");
  struct Shape {
    int dotted, plain, reps;
  };
  for (const Shape& s : {Shape{1, 3, 20}, Shape{2, 4, 10}, Shape{2, 5, 5}, Shape{2, 6, 3}}) {
    auto fields = two_vertex_slots(s.dotted, s.plain);
    std::size_t classes_serial = 0, classes_parallel = 0;
    double serial = time_median_ms(
        s.reps, [&] { classes_serial = wick::pairings(fields, Exec::Serial).size(); });
    double parallel = time_median_ms(
        s.reps, [&] { classes_parallel = wick::pairings(fields, Exec::Parallel).size(); });
    if (classes_serial != classes_parallel)
      throw std::logic_error("serial and parallel class counts disagree");
    std::printf("  %6zu  %7zu  %4d  %12.3f  %12.3f\n", fields.size(), classes_serial, s.reps,
                serial, parallel);
  }

  std::printf("\nsecond-order pipeline (median of 10 runs)\n");
  std::printf("  %-22s  %12s  %12s\n", "stage", "serial ms", "parallel ms");
  auto vertices = default_vertices();
  auto terms = wick::free_energy_terms(vertices, 2);
  double c_serial =
      time_median_ms(10, [&] { wick::free_energy_terms(vertices, 2, Exec::Serial); });
  double c_parallel =
      time_median_ms(10, [&] { wick::free_energy_terms(vertices, 2, Exec::Parallel); });
  std::printf("  %-22s  %12.3f  %12.3f\n", "contraction", c_serial, c_parallel);
  double r_serial =
      time_median_ms(10, [&] { reducer::reduce_order(terms, 2, Exec::Serial); });
  double r_parallel =
      time_median_ms(10, [&] { reducer::reduce_order(terms, 2, Exec::Parallel); });
  std::printf("  %-22s  %12.3f  %12.3f\n", "reduction", r_serial, r_parallel);
  double v_serial = time_median_ms(10, [&] {
    report::VerifyOptions o;
    o.exec = Exec::Serial;
    report::run_verify(o);
  });
  double v_parallel = time_median_ms(10, [&] {
    report::VerifyOptions o;
    o.exec = Exec::Parallel;
    report::run_verify(o);
  });
  std::printf("  %-22s  %12.3f  %12.3f\n", "full verification", v_serial, v_parallel);

  std::printf("\nthreads available: %d\n", threads);
  if (threads == 1)
    std::printf("single-threaded host: parallel timings measure overhead only\n");
  return 0;
}
