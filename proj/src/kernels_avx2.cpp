#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "magictrap/kernels.hpp"

namespace magictrap::kernels {

// Four frequencies per register; the pole loop stays sequential so rounding matches the scalar path.
__attribute__((target("avx2"))) void resonance_sum_avx2(const double* w, const double* p, std::size_t n,
                                                         const double* x, std::size_t m, double s,
                                                         double* out) {
  std::size_t j = 0;
  const __m256d vs = _mm256_set1_pd(s);
  for (; j + 4 <= m; j += 4) {
    const __m256d vx = _mm256_loadu_pd(x + j);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n; ++i) {
      const __m256d vw = _mm256_set1_pd(w[i]);
      const __m256d vp = _mm256_set1_pd(p[i]);
      const __m256d a = _mm256_div_pd(vw, _mm256_sub_pd(vp, vx));
      const __m256d b = _mm256_div_pd(_mm256_mul_pd(vs, vw), _mm256_add_pd(vp, vx));
      acc = _mm256_add_pd(acc, _mm256_add_pd(a, b));
    }
    _mm256_storeu_pd(out + j, acc);
  }
  if (j < m) resonance_sum_scalar(w, p, n, x + j, m - j, s, out + j);
}

}  // namespace magictrap::kernels

#endif
