#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "jury/error.h"
#include "jury/jer.h"

namespace jury {
namespace {

// FFTW's planner is not thread-safe; execution on plan-owned buffers is.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T, FftwFree>;

class Plan {
 public:
  explicit Plan(fftw_plan plan) : plan_(plan) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(plan_);
  }
  void Execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

std::size_t NextPowerOfTwo(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> DirectProduct(std::span<const double> a,
                                  std::span<const double> b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += ai * b[j];
  }
  return out;
}

std::vector<double> FftProduct(std::span<const double> a,
                               std::span<const double> b) {
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t len = NextPowerOfTwo(out_len);
  const std::size_t spectrum_len = len / 2 + 1;
  const int n = static_cast<int>(len);

  FftwBuffer<double> real(fftw_alloc_real(len));
  FftwBuffer<fftw_complex> fa(fftw_alloc_complex(spectrum_len));
  FftwBuffer<fftw_complex> fb(fftw_alloc_complex(spectrum_len));
  if (!real || !fa || !fb) throw std::bad_alloc();

  std::unique_ptr<Plan> forward_a, forward_b, inverse;
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    forward_a = std::make_unique<Plan>(
        fftw_plan_dft_r2c_1d(n, real.get(), fa.get(), FFTW_ESTIMATE));
    forward_b = std::make_unique<Plan>(
        fftw_plan_dft_r2c_1d(n, real.get(), fb.get(), FFTW_ESTIMATE));
    inverse = std::make_unique<Plan>(
        fftw_plan_dft_c2r_1d(n, fa.get(), real.get(), FFTW_ESTIMATE));
  }

  double* r = real.get();
  std::fill(r, r + len, 0.0);
  std::copy(a.begin(), a.end(), r);
  forward_a->Execute();
  std::fill(r, r + len, 0.0);
  std::copy(b.begin(), b.end(), r);
  forward_b->Execute();

  auto* ca = reinterpret_cast<std::complex<double>*>(fa.get());
  const auto* cb = reinterpret_cast<const std::complex<double>*>(fb.get());
  for (std::size_t k = 0; k < spectrum_len; ++k) ca[k] *= cb[k];
  inverse->Execute();

  const double scale = 1.0 / static_cast<double>(len);
  std::vector<double> out(out_len);
  for (std::size_t k = 0; k < out_len; ++k) out[k] = r[k] * scale;
  return out;
}

}  // namespace

std::vector<double> ConvolveMass(std::span<const double> a,
                                 std::span<const double> b,
                                 std::size_t direct_threshold) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInvalidDistribution, "empty operand");
  }
  std::vector<double> out = std::min(a.size(), b.size()) <= direct_threshold
                                ? DirectProduct(a, b)
                                : FftProduct(a, b);
  for (std::size_t k = 0; k < out.size(); ++k) {
    double& v = out[k];
    if (v < 0.0) {
      if (v < -kNegativeMassTolerance) {
        throw Error(ErrorCode::kInvalidDistribution,
                    "convolution produced mass " + std::to_string(v) +
                        " at index " + std::to_string(k));
      }
      v = 0.0;
    } else if (v > 1.0) {
      v = 1.0;
    }
  }
  return out;
}

WrongCountDistribution Convolve(const WrongCountDistribution& a,
                                const WrongCountDistribution& b,
                                std::size_t direct_threshold) {
  return WrongCountDistribution(
      ConvolveMass(a.mass(), b.mass(), direct_threshold));
}

}  // namespace jury
