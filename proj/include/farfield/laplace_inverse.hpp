#ifndef FARFIELD_LAPLACE_INVERSE_HPP
#define FARFIELD_LAPLACE_INVERSE_HPP

#include <optional>

#include "farfield/expansion.hpp"
#include "farfield/oracle.hpp"

namespace farfield {

struct InversionOptions {
  bool compute_residual = true;
  double residual_radius = 4.0;
  int residual_n_r = 96;
  int residual_n_ang = 128;
};

struct InversionResult {
  AsymExpansion expansion;   // cascade output; passes hat membership
  double monopole_log = 0.0; // d=2 coefficient of chi log r (M(source)/2pi)
  std::optional<CompactField> residual;  // source - Delta(chi * inverse)

  explicit InversionResult(int d) : expansion(d) {}

  // expansion plus the d=2 log-monopole grade (0,1).
  AsymExpansion full_expansion() const;
};

// Constructive inverse of Delta on far-field data in the window
// (3, N+3; -3): source grades (k, j) with 3 <= k <= N+3, 0 <= j <= k-3.
// sig must be the plain source-window signature; N is inferred from it.
// Resonant eigencomponents generate one extra log power; the d=2 leading
// log-monopole coefficient is M(source)/(2pi).
InversionResult invert_laplacian_asym(const AsymExpansion& source,
                                      const SpaceSignature& sig,
                                      const InversionOptions& opts = {});

// Same cascade on the shifted window (2, N+2; -2) used for the pressure:
// output grades 0..N. For d=2 a resonant constant at slot k=0 emits
// (log r)^{l+2}; for d=3 that slot has no admissible preimage and
// ResonantComponent is thrown.
AsymExpansion invert_laplacian_shifted(const AsymExpansion& source, int N_out);

// Pointwise residual source - Delta(chi * inverse), for decay studies.
ScalarFieldFn inversion_residual_fn(const AsymExpansion& source,
                                    const InversionResult& result);

// M(u) = int_{R^2} chi(r) u dx for a d=2 source with integrable grades
// (k >= 3; lower grades are admitted only with vanishing sphere mean).
double source_mass(const AsymExpansion& source);

// Leading log coefficient M/(2pi) of the d=2 inverse.
double mass_monopole(const AsymExpansion& source);
double mass_monopole(const AsymExpansion& source, const CompactField& compact);

// Harmonic multipole extraction: expansion K g with Delta(K g) = g outside
// the support of g, grades d-2..N (plus the (0,1) log grade for d=2), each
// coefficient determined by the moments of g against homogeneous harmonic
// polynomials. Throws UnresolvedSupport when the quadrature error estimate
// exceeds 1e-8.
AsymExpansion multipole_K(const CompactField& g, int N);

// Fully resolved right inverse: adds K applied to the cutoff-commutator
// residual source_fn - Delta(chi * inverse). source_fn must equal the
// symbolic image of `inverse` outside the support radius, so the residual is
// compactly supported.
AsymExpansion resolve_with_multipoles(const AsymExpansion& inverse,
                                      const ScalarFieldFn& source_fn,
                                      int N_moments,
                                      double support_radius = 2.0,
                                      std::vector<double> knots = {1.0, 2.0},
                                      int n_r = 96, int n_ang = 128);

// d=2 multipole expansion assembled from precomputed harmonic moments
// mass = int g, mc[k] = int g Re(z^k), ms[k] = int g Im(z^k).
AsymExpansion multipole_from_moments_d2(double mass,
                                        const std::vector<double>& mc,
                                        const std::vector<double>& ms);

}  // namespace farfield

#endif
