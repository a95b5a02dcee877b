#pragma once

#include <cstddef>
#include <string_view>

namespace magictrap::kernels {

// out[j] = sum_i w[i] * (1/(p[i] - x[j]) + s/(p[i] + x[j]))
// Terms are accumulated in index order for every x[j], so all variants agree bit for bit.
using ResonanceSumFn = void (*)(const double* w, const double* p, std::size_t n, const double* x,
                                std::size_t m, double s, double* out);

void resonance_sum_scalar(const double* w, const double* p, std::size_t n, const double* x, std::size_t m,
                          double s, double* out);
#if defined(__x86_64__) || defined(_M_X64)
void resonance_sum_avx2(const double* w, const double* p, std::size_t n, const double* x, std::size_t m,
                        double s, double* out);
#endif
#if defined(__aarch64__)
void resonance_sum_neon(const double* w, const double* p, std::size_t n, const double* x, std::size_t m,
                        double s, double* out);
#endif

// Best variant for this CPU. MAGICTRAP_KERNEL=scalar forces the reference path.
ResonanceSumFn resonance_sum();
std::string_view active_variant();

}  // namespace magictrap::kernels
