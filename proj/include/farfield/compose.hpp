#ifndef FARFIELD_COMPOSE_HPP
#define FARFIELD_COMPOSE_HPP

#include <array>

#include "farfield/expansion.hpp"

namespace farfield {

// Near-identity asymptotic diffeomorphism phi = id + w, displacement w with
// plain (0, N; 0) signature.
struct AsymDiffeo {
  VectorExpansion w;

  int dim() const { return w.dim(); }

  // Validates the displacement signature and the orientation condition
  // det(Id + [dw]) > 0 at sampled grid points.
  static AsymDiffeo from_displacement(const VectorExpansion& w,
                                      bool validate = true);
  static AsymDiffeo identity(int d);
};

struct ComposeInfo {
  int requested_order = 0;
  // Order through which the composition estimate guarantees the retained
  // grades; one less than requested when log terms are present.
  int guaranteed_order = 0;
};

// Truncated Taylor composition u(x + w(x)) = sum_beta (d^beta u) w^beta/beta!,
// keeping grades k <= N_out (exact on the retained grades).
AsymExpansion compose(const AsymExpansion& u, const AsymDiffeo& phi, int N_out,
                      ComposeInfo* info = nullptr);
VectorExpansion compose(const VectorExpansion& u, const AsymDiffeo& phi,
                        int N_out);

// Truncated Neumann inverse (Id + M)^{-1} = Id + sum_i (-M)^i for a matrix M
// whose entries have grades k >= 1.
ExpansionMatrix neumann_inverse(const ExpansionMatrix& M, int N_out);

// [d phi]^{-1} as expansions through order N_out.
ExpansionMatrix jacobian_inverse(const AsymDiffeo& phi, int N_out);

// (R_phi o grad o R_{phi^-1})(v) = [dv] . [d phi]^{-1}
VectorExpansion conjugated_gradient(const AsymExpansion& v, const AsymDiffeo& phi,
                                    int N_out);
ExpansionMatrix conjugated_gradient(const VectorExpansion& v,
                                    const AsymDiffeo& phi, int N_out);

// (R_phi o div o R_{phi^-1})(v) = tr([dv] . [d phi]^{-1})
AsymExpansion conjugated_divergence(const VectorExpansion& v,
                                    const AsymDiffeo& phi, int N_out);

// Delta_phi = (R_phi o div o R_{phi^-1}) o (R_phi o grad o R_{phi^-1})
AsymExpansion conjugated_laplacian(const AsymExpansion& v, const AsymDiffeo& phi,
                                   int N_out);

// Pointwise inverse x = phi^{-1}(y) by damped fixed-point iteration on
// x + w(x) = y (tolerance 1e-12).
std::array<double, 3> numeric_inverse(const AsymDiffeo& phi, const double* y);

}  // namespace farfield

#endif
