#include "shredder/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace shredder {

namespace {

// FFTW's planner is not reentrant; executing a plan is.
std::mutex planner_mutex;

cvec transform(const cvec& in, int sign) {
  const int n = static_cast<int>(in.size());
  cvec out(in.size());
  if (n == 0) return out;
  cvec work = in;
  auto* src = reinterpret_cast<fftw_complex*>(work.data());
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex);
    plan = fftw_plan_dft_1d(n, src, dst, sign, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fftw: planning failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& z : out) z *= scale;
  return out;
}

} // namespace

cvec dft(const cvec& in) { return transform(in, FFTW_FORWARD); }
cvec idft(const cvec& in) { return transform(in, FFTW_BACKWARD); }

} // namespace shredder
