#include "yigmag/fft.hpp"

#include <fftw3.h>

#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace yigmag::fft {
namespace {

// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const noexcept {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

int checked_size(std::size_t n) {
  if (n == 0 || n > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw std::length_error("fft: unsupported transform length");
  }
  return static_cast<int>(n);
}

}  // namespace

void rfft_into(std::span<const double> in, std::span<cplx> out) {
  const int n = checked_size(in.size());
  if (out.size() < in.size() / 2 + 1) throw std::length_error("rfft_into: output too small");
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    // r2c preserves its input under FFTW_ESTIMATE; the cast is safe.
    plan.reset(fftw_plan_dft_r2c_1d(n, const_cast<double*>(in.data()), as_fftw(out.data()),
                                    FFTW_ESTIMATE));
  }
  if (!plan) throw std::runtime_error("rfft_into: plan creation failed");
  fftw_execute(plan.get());
}

std::vector<cplx> rfft(std::span<const double> in) {
  std::vector<cplx> out(in.size() / 2 + 1);
  rfft_into(in, out);
  return out;
}

std::vector<double> irfft(std::vector<cplx> spectrum, std::size_t n) {
  const int ni = checked_size(n);
  if (spectrum.size() < n / 2 + 1) throw std::length_error("irfft: spectrum too small");
  std::vector<double> out(n);
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_c2r_1d(ni, as_fftw(spectrum.data()), out.data(), FFTW_ESTIMATE));
  }
  if (!plan) throw std::runtime_error("irfft: plan creation failed");
  fftw_execute(plan.get());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

void fft_inplace(std::span<cplx> data, bool inverse) {
  const int n = checked_size(data.size());
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(n, as_fftw(data.data()), as_fftw(data.data()),
                                inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE));
  }
  if (!plan) throw std::runtime_error("fft_inplace: plan creation failed");
  fftw_execute(plan.get());
}

}  // namespace yigmag::fft
