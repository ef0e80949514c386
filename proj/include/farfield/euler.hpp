#ifndef FARFIELD_EULER_HPP
#define FARFIELD_EULER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "farfield/expansion.hpp"
#include "farfield/laplace_inverse.hpp"
#include "farfield/oracle.hpp"

namespace farfield {

// Q(u) = tr([du]^2); untruncated (finite for band-limited expansions).
AsymExpansion q_nonlinearity(const VectorExpansion& u);

// --- d=2 Hamiltonian fields --------------------------------------------------

// Extra compactly supported Hamiltonian data given by closed-form gradient
// and Hessian evaluators.
struct CompactHamiltonian {
  double support = 0.0;
  std::vector<double> knots;  // radii where the data is only piecewise smooth
  std::function<void(const double*, double*)> gradient;  // (Hx, Hy)
  std::function<void(const double*, double*)> hessian;   // (Hxx, Hxy, Hyy)
};

// Velocity field u = (-H_y, H_x) of H = chi * H_sym + H_compact; divergence
// free by construction.
struct HamiltonianField {
  AsymExpansion H;  // symbolic Hamiltonian (chi implied)
  std::optional<CompactHamiltonian> compact;

  VectorExpansion velocity() const;  // symbolic part
  // True pointwise velocity including all cutoff terms.
  VectorFieldFn velocity_eval() const;
  // True pointwise Q(u) = -2 det Hess(H).
  ScalarFieldFn q_eval() const;
  double support_radius() const;
  std::vector<double> residual_knots() const;
};

HamiltonianField build_hamiltonian_field(const AsymExpansion& H);

// d=3 divergence-free construction: u = curl A for a vector potential A.
VectorExpansion curl_field(const VectorExpansion& potential);

// Appendix-style example builders.
HamiltonianField example1(double alpha);
HamiltonianField example2();

// The documented example2 plateau bump a(rho): 1 on [0,1], quintic ramp down
// on [1,2], 0 beyond; C^2, monotone.
double example2_bump(double rho);
double example2_bump_d1(double rho);
double example2_bump_d2(double rho);
// -8 pi int (a'(rho))^2 rho^2 drho, by exact quadrature of the polynomial.
double example2_reference_integral();

// Random divergence-free d=2 field built from a seeded random Hamiltonian.
HamiltonianField random_hamiltonian(std::uint64_t seed, int N, int L);

// Hamiltonian a(phi) (log r)^k / r^{k-1} (k >= 1) whose velocity carries the
// resonant-slot coefficient a_k^k.
AsymExpansion log_power_hamiltonian(const SphereFn& a, int k);

// --- Euler right-hand side ----------------------------------------------------

struct ConservationEntry {
  int component = 0;  // velocity component
  int k = 0;          // resonant slot (k,k)
  int degree = 0;     // sphere-harmonic degree l != k+2-d
  double projection = 0.0;
};

struct ConservationReport {
  double a0_delta = 0.0;  // spectral norm of the grade-(0,0) part of rhs
  std::vector<ConservationEntry> resonant_checks;
  bool pass = false;
};

struct EulerRHS {
  VectorExpansion rhs;      // Delta^{-1} grad Q(u0), truncated to order N
  AsymExpansion pressure;   // -Delta^{-1} Q(u0)
  double pressure_monopole = 0.0;  // d=2 coefficient of chi log r in pressure
  ConservationReport report;
  MembershipReport tilde_membership;
  std::vector<Grade> q_truncated, rhs_truncated;
  AsymExpansion q_sym;  // full symbolic nonlinearity (diagnostics)
  std::optional<CompactField> q_residual;

  explicit EulerRHS(int d)
      : rhs(d), pressure(d), q_sym(d) {}
};

struct EulerOptions {
  bool compact_channel = true;  // resolve the compact residual through K
  int residual_n_r = 128;
  int residual_n_ang = 256;
};

// Pressure-free right-hand side Delta^{-1} grad Q(u0) with pressure
// -Delta^{-1} Q(u0). u0 must be divergence free.
EulerRHS euler_rhs(const VectorExpansion& u0, int N);
EulerRHS euler_rhs(const HamiltonianField& field, int N,
                   const EulerOptions& opts = {});

ConservationReport conservation_check(const VectorExpansion& u0, int N);
ConservationReport conservation_check(const HamiltonianField& field, int N);

// --- Fourier identity for the nontrivial integrals (d=2) ----------------------

struct FourierCheck {
  SphereFn computed_x, computed_y;  // a_k^k from the derivative formula
  SphereFn closed_x, closed_y;      // -i sum (l+k-2) a_{l-1} e^{il phi}
  double max_deviation = 0.0;

  FourierCheck() : computed_x(2, 0), computed_y(2, 0), closed_x(2, 0), closed_y(2, 0) {}
};

FourierCheck nontrivial_integrals_d2(const SphereFn& a, int k);

}  // namespace farfield

#endif
