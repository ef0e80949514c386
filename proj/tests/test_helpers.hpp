#ifndef FARFIELD_TEST_HELPERS_HPP
#define FARFIELD_TEST_HELPERS_HPP

#include <cmath>
#include <random>

#include "farfield/expansion.hpp"
#include "farfield/sphere_fn.hpp"

namespace farfield::testing {

inline constexpr double kPi = 3.14159265358979323846;

inline SphereFn random_sphere_fn(std::mt19937_64& rng, int d, int L) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SphereFn f(d, L);
  for (int i = 0; i < f.size(); ++i) f.raw(i) = u(rng);
  return f;
}

// cos / sin of l*phi as a SphereFn (d=2).
inline SphereFn cos_fn(int l, double amp = 1.0) {
  SphereFn f(2, l);
  if (l == 0)
    f.set_coeff(0, 0, amp * std::sqrt(2.0 * kPi));
  else
    f.set_coeff(l, 1, amp * std::sqrt(kPi));
  return f;
}

inline SphereFn sin_fn(int l, double amp = 1.0) {
  SphereFn f(2, l);
  f.set_coeff(l, -1, amp * std::sqrt(kPi));
  return f;
}

inline AsymExpansion single_term(int d, int k, int j, const SphereFn& a) {
  AsymExpansion u(d);
  u.add_term(Grade{k, j}, a);
  return u;
}

inline AsymExpansion random_expansion(std::mt19937_64& rng, int d, int Nmax,
                                      int L, int max_terms = 4,
                                      int ell = 0) {
  std::uniform_int_distribution<int> kd(0, Nmax);
  AsymExpansion u(d);
  for (int t = 0; t < max_terms; ++t) {
    const int k = kd(rng);
    std::uniform_int_distribution<int> jd(0, std::max(0, k + ell));
    const int j = jd(rng);
    u.add_term(Grade{k, j}, random_sphere_fn(rng, d, L));
  }
  return u;
}

}  // namespace farfield::testing

#endif
