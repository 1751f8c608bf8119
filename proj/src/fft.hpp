#pragma once

#include <complex>
#include <stdexcept>

#include <fftw3.h>

namespace dirloc::detail {

// Owns one in-place FFTW plan bound to a caller-owned buffer.
// FFTW_ESTIMATE keeps plans (and therefore results) reproducible run to run.
class FftPlan {
 public:
  FftPlan(std::complex<double>* data, int n, int sign) {
    auto* d = reinterpret_cast<fftw_complex*>(data);
    plan_ = fftw_plan_dft_1d(n, d, d, sign, FFTW_ESTIMATE);
    if (!plan_) throw std::runtime_error("fftw: 1-D plan failed");
  }
  FftPlan(std::complex<double>* data, int n0, int n1, int n2, int sign) {
    auto* d = reinterpret_cast<fftw_complex*>(data);
    plan_ = fftw_plan_dft_3d(n0, n1, n2, d, d, sign, FFTW_ESTIMATE);
    if (!plan_) throw std::runtime_error("fftw: 3-D plan failed");
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan() { fftw_destroy_plan(plan_); }

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

}  // namespace dirloc::detail
