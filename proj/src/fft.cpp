#include "gardner5/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>

namespace gardner5 {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(void* p) { return static_cast<fftw_complex*>(p); }

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  real_ = fftw_alloc_real(n_);
  spectrum_ = fftw_alloc_complex(n_ / 2 + 1);
  if (real_ == nullptr || spectrum_ == nullptr) {
    fftw_free(real_);
    fftw_free(spectrum_);
    throw std::bad_alloc();
  }
  const int ni = static_cast<int>(n_);
  forward_plan_ = fftw_plan_dft_r2c_1d(ni, real_, as_fftw(spectrum_), FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_c2r_1d(ni, as_fftw(spectrum_), real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_free(spectrum_);
  fftw_free(real_);
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) {
  std::copy(in.begin(), in.end(), real_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  const auto* spec = reinterpret_cast<const std::complex<double>*>(spectrum_);
  std::copy(spec, spec + spectrum_size(), out.begin());
}

void RealFft::backward(std::span<const std::complex<double>> in, std::span<double> out) {
  auto* spec = reinterpret_cast<std::complex<double>*>(spectrum_);
  std::copy(in.begin(), in.end(), spec);
  // c2r overwrites its input; the copy above keeps `in` intact.
  fftw_execute(static_cast<fftw_plan>(backward_plan_));
  std::copy(real_, real_ + n_, out.begin());
}

std::vector<std::complex<double>> RealFft::forward(std::span<const double> in) {
  std::vector<std::complex<double>> out(spectrum_size());
  forward(in, out);
  return out;
}

}  // namespace gardner5
