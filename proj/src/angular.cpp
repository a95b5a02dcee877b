#include "magictrap/angular.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

namespace magictrap {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// A deque keeps earlier references valid while the table grows mid-expression.
const cpp_int& factorial(int n) {
  thread_local std::deque<cpp_int> table{cpp_int(1)};
  if (n < 0) throw DomainError("negative factorial argument");
  while (static_cast<int>(table.size()) <= n) {
    table.push_back(table.back() * static_cast<unsigned>(table.size()));
  }
  return table[static_cast<std::size_t>(n)];
}

void check_jm(int two_j, int two_m) {
  if (two_j < 0) throw DomainError("negative angular momentum " + std::to_string(two_j) + "/2");
  if (std::abs(two_m) > two_j) throw DomainError("|m| exceeds j");
  if ((two_j - two_m) % 2 != 0) throw DomainError("j and m differ in parity");
}

bool triangle(int a, int b, int c) {
  return c >= std::abs(a - b) && c <= a + b && (a + b + c) % 2 == 0;
}

// Delta(abc) as an exact rational; arguments doubled, triangle assumed.
cpp_rational delta(int a, int b, int c) {
  return cpp_rational(factorial((a + b - c) / 2) * factorial((a - b + c) / 2) * factorial((-a + b + c) / 2),
                      factorial((a + b + c) / 2 + 1));
}

// sign * sqrt(pref2 * sum^2) rounded once.
double finish(int sign, const cpp_rational& pref2, const cpp_rational& sum) {
  if (sum == 0) return 0.0;
  const cpp_rational mag2 = pref2 * sum * sum;
  const double v = std::sqrt(mag2.convert_to<double>());
  return (sum < 0 ? -sign : sign) * v;
}

std::uint64_t pack(const int (&v)[6]) {
  std::uint64_t key = 0;
  for (int x : v) key = (key << 10) | static_cast<std::uint64_t>(x + 512);
  return key;
}

double compute3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (m1 + m2 + m3 != 0 || !triangle(j1, j2, j3)) return 0.0;
  // Work in integer units: all combinations below are even when doubled.
  const int kmin = std::max({0, (j2 - j3 - m1) / 2, (j1 - j3 + m2) / 2});
  const int kmax = std::min({(j1 + j2 - j3) / 2, (j1 - m1) / 2, (j2 + m2) / 2});
  cpp_rational sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    const cpp_int den = factorial(k) * factorial((j3 - j2 + m1) / 2 + k) * factorial((j3 - j1 - m2) / 2 + k) *
                        factorial((j1 + j2 - j3) / 2 - k) * factorial((j1 - m1) / 2 - k) *
                        factorial((j2 + m2) / 2 - k);
    const cpp_rational term(cpp_int(1), den);
    if (k % 2) sum -= term; else sum += term;
  }
  const cpp_rational pref2 = delta(j1, j2, j3) * cpp_rational(factorial((j1 + m1) / 2) * factorial((j1 - m1) / 2) *
                                                             factorial((j2 + m2) / 2) * factorial((j2 - m2) / 2) *
                                                             factorial((j3 + m3) / 2) * factorial((j3 - m3) / 2));
  const int phase = ((j1 - j2 - m3) / 2) % 2 == 0 ? 1 : -1;
  return finish(phase, pref2, sum);
}

double compute6j(int a, int b, int c, int d, int e, int f) {
  if (!triangle(a, b, c) || !triangle(a, e, f) || !triangle(d, b, f) || !triangle(d, e, c)) return 0.0;
  const int t1 = (a + b + c) / 2, t2 = (a + e + f) / 2, t3 = (d + b + f) / 2, t4 = (d + e + c) / 2;
  const int s1 = (a + b + d + e) / 2, s2 = (a + c + d + f) / 2, s3 = (b + c + e + f) / 2;
  const int kmin = std::max({t1, t2, t3, t4});
  const int kmax = std::min({s1, s2, s3});
  cpp_rational sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    const cpp_int den = factorial(k - t1) * factorial(k - t2) * factorial(k - t3) * factorial(k - t4) *
                        factorial(s1 - k) * factorial(s2 - k) * factorial(s3 - k);
    const cpp_rational term(factorial(k + 1), den);
    if (k % 2) sum -= term; else sum += term;
  }
  const cpp_rational pref2 = delta(a, b, c) * delta(a, e, f) * delta(d, b, f) * delta(d, e, c);
  return finish(1, pref2, sum);
}

}  // namespace

double wigner3j(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3) {
  check_jm(two_j1, two_m1);
  check_jm(two_j2, two_m2);
  check_jm(two_j3, two_m3);
  thread_local std::unordered_map<std::uint64_t, double> cache;
  const std::uint64_t key = pack({two_j1, two_j2, two_j3, two_m1, two_m2, two_m3});
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const double v = compute3j(two_j1, two_j2, two_j3, two_m1, two_m2, two_m3);
  cache.emplace(key, v);
  return v;
}

double wigner6j(int two_j1, int two_j2, int two_j3, int two_j4, int two_j5, int two_j6) {
  for (int j : {two_j1, two_j2, two_j3, two_j4, two_j5, two_j6}) {
    if (j < 0) throw DomainError("negative angular momentum in 6j symbol");
  }
  thread_local std::unordered_map<std::uint64_t, double> cache;
  const std::uint64_t key = pack({two_j1, two_j2, two_j3, two_j4, two_j5, two_j6});
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const double v = compute6j(two_j1, two_j2, two_j3, two_j4, two_j5, two_j6);
  cache.emplace(key, v);
  return v;
}

double dipole_element(const AtomDataset& ds, const HyperfineState& to, const HyperfineState& from, int p) {
  if (p < -1 || p > 1) throw DomainError("polarization index must be -1, 0 or +1");
  const double red = ds.reduced(to.level, from.level);
  if (red == 0.0) {
    throw DomainError("no reduced dipole between " + ds.level(to.level).key() + " and " + ds.level(from.level).key());
  }
  const int two_i = ds.species.two_i;
  const int two_jj = ds.level(to.level).two_j;
  const int two_jl = ds.level(from.level).two_j;
  const double three = wigner3j(to.two_f, 2, from.two_f, to.two_m, 2 * p, -from.two_m);
  if (three == 0.0) return 0.0;
  const double six = wigner6j(two_jl, two_jj, 2, to.two_f, from.two_f, two_i);
  if (six == 0.0) return 0.0;
  const int exponent = (2 * to.two_f + two_jl + two_i + from.two_m) / 2;
  const double phase = exponent % 2 == 0 ? 1.0 : -1.0;
  return red * phase * std::sqrt(static_cast<double>((to.two_f + 1) * (from.two_f + 1))) * three * six;
}

}  // namespace magictrap
