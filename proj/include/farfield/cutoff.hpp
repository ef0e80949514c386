#ifndef FARFIELD_CUTOFF_HPP
#define FARFIELD_CUTOFF_HPP

namespace farfield {

// Radial cutoff chi: identically 0 on [0,1], identically 1 on [2,inf),
// C^2 quintic ramp in between. All expansions are understood as
// chi(r) * sum of terms; symbolic operations treat chi as 1 and route the
// commutator contributions (supported in 1 < r < 2) to compact residuals.
struct CutoffSpec {
  double inner = 1.0;
  double outer = 2.0;
};

inline double cutoff(double r) {
  if (r <= 1.0) return 0.0;
  if (r >= 2.0) return 1.0;
  const double t = r - 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

inline double cutoff_d1(double r) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  const double t = r - 1.0;
  return t * t * (30.0 + t * (-60.0 + 30.0 * t));
}

inline double cutoff_d2(double r) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  const double t = r - 1.0;
  return t * (60.0 + t * (-180.0 + 120.0 * t));
}

}  // namespace farfield

#endif
