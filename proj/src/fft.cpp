#include "homog/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace homog::fft {
namespace {

struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
    if (!ptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  void* ptr;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const Plans& plans_for(std::size_t n) {
  static std::map<std::size_t, Plans> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  FftwBuffer real(sizeof(double) * n);
  FftwBuffer spec(sizeof(fftw_complex) * (n / 2 + 1));
  Plans p;
  const int ni = static_cast<int>(n);
  p.r2c = fftw_plan_dft_r2c_1d(ni, static_cast<double*>(real.ptr),
                               static_cast<fftw_complex*>(spec.ptr), FFTW_ESTIMATE);
  p.c2r = fftw_plan_dft_c2r_1d(ni, static_cast<fftw_complex*>(spec.ptr),
                               static_cast<double*>(real.ptr), FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

}  // namespace

std::vector<cplx> forward(std::span<const double> in) {
  const std::size_t n = in.size();
  const Plans& p = plans_for(n);
  FftwBuffer real(sizeof(double) * n);
  FftwBuffer spec(sizeof(fftw_complex) * (n / 2 + 1));
  auto* r = static_cast<double*>(real.ptr);
  std::copy(in.begin(), in.end(), r);
  auto* c = static_cast<fftw_complex*>(spec.ptr);
  fftw_execute_dft_r2c(p.r2c, r, c);
  std::vector<cplx> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) out[k] = {c[k][0], c[k][1]};
  return out;
}

std::vector<double> inverse(std::span<const cplx> half, std::size_t n) {
  if (half.size() != n / 2 + 1) throw std::invalid_argument("fft::inverse: size mismatch");
  const Plans& p = plans_for(n);
  FftwBuffer real(sizeof(double) * n);
  FftwBuffer spec(sizeof(fftw_complex) * (n / 2 + 1));
  auto* c = static_cast<fftw_complex*>(spec.ptr);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    c[k][0] = half[k].real();
    c[k][1] = half[k].imag();
  }
  auto* r = static_cast<double*>(real.ptr);
  // c2r destroys its input; the buffer is ours.
  fftw_execute_dft_c2r(p.c2r, c, r);
  return std::vector<double>(r, r + n);
}

}  // namespace homog::fft
