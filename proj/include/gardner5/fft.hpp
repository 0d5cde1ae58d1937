#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gardner5 {

/// Owning wrapper around a pair of FFTW real-to-complex plans of one size.
///
/// Plans are created under a process-wide lock (the FFTW planner is not
/// thread safe); executing distinct RealFft objects concurrently is fine.
/// Transforms are unnormalized: backward(forward(v)) == N * v.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t spectrum_size() const { return n_ / 2 + 1; }

  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  void backward(std::span<const std::complex<double>> in, std::span<double> out);

  std::vector<std::complex<double>> forward(std::span<const double> in);

 private:
  std::size_t n_;
  double* real_;
  void* spectrum_;
  void* forward_plan_;
  void* backward_plan_;
};

}  // namespace gardner5
