#include "magictrap/kernels.hpp"

#include <cstdlib>
#include <cstring>

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace magictrap::kernels {

void resonance_sum_scalar(const double* w, const double* p, std::size_t n, const double* x, std::size_t m,
                          double s, double* out) {
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double term = w[i] / (p[i] - x[j]) + s * w[i] / (p[i] + x[j]);
      acc = acc + term;
    }
    out[j] = acc;
  }
}

#if defined(__aarch64__)
void resonance_sum_neon(const double* w, const double* p, std::size_t n, const double* x, std::size_t m,
                        double s, double* out) {
  std::size_t j = 0;
  const float64x2_t vs = vdupq_n_f64(s);
  for (; j + 2 <= m; j += 2) {
    const float64x2_t vx = vld1q_f64(x + j);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const float64x2_t vw = vdupq_n_f64(w[i]);
      const float64x2_t vp = vdupq_n_f64(p[i]);
      const float64x2_t a = vdivq_f64(vw, vsubq_f64(vp, vx));
      const float64x2_t b = vdivq_f64(vmulq_f64(vs, vw), vaddq_f64(vp, vx));
      acc = vaddq_f64(acc, vaddq_f64(a, b));
    }
    vst1q_f64(out + j, acc);
  }
  if (j < m) resonance_sum_scalar(w, p, n, x + j, m - j, s, out + j);
}
#endif

namespace {

ResonanceSumFn select() {
  const char* env = std::getenv("MAGICTRAP_KERNEL");
  if (env && std::strcmp(env, "scalar") == 0) return resonance_sum_scalar;
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return resonance_sum_avx2;
#endif
#if defined(__aarch64__)
  return resonance_sum_neon;
#endif
  return resonance_sum_scalar;
}

}  // namespace

ResonanceSumFn resonance_sum() {
  static const ResonanceSumFn fn = select();
  return fn;
}

std::string_view active_variant() {
  const ResonanceSumFn fn = resonance_sum();
#if defined(__x86_64__) || defined(_M_X64)
  if (fn == resonance_sum_avx2) return "avx2";
#endif
#if defined(__aarch64__)
  if (fn == resonance_sum_neon) return "neon";
#endif
  return "scalar";
}

}  // namespace magictrap::kernels
