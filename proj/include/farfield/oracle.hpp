#ifndef FARFIELD_ORACLE_HPP
#define FARFIELD_ORACLE_HPP

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "farfield/expansion.hpp"

namespace farfield {

using ScalarFieldFn = std::function<double(const double*)>;
using VectorFieldFn = std::function<void(const double*, double*)>;

// --- dense evaluation (cutoff applied literally) ---------------------------

double eval_dense(const AsymExpansion& u, const double* x);
std::array<double, 3> eval_dense(const VectorExpansion& u, const double* x);

// Evaluation without the cutoff factor (requires r > 0).
double eval_raw(const AsymExpansion& u, const double* x);
// Radial derivative of the raw sum: sum a(theta) d/dr[(log r)^j r^-k].
double eval_raw_radial_derivative(const AsymExpansion& u, const double* x);

// Value of Delta(chi * u) at x, given the symbolic laplacian of u:
//   chi * (Delta u) + 2 chi' d_r u + (chi'' + (d-1) chi'/r) u.
double eval_laplacian_with_cutoff(const AsymExpansion& u,
                                  const AsymExpansion& lap_u, const double* x);

// Value of d/dx_axis (chi * u) at x, given the symbolic derivative of u:
//   chi * (d u) + chi' theta_axis u.
double eval_partial_with_cutoff(const AsymExpansion& u,
                                const AsymExpansion& du_axis, int axis,
                                const double* x);

// --- finite differences -----------------------------------------------------

struct FdResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Richardson-refined 5-point (d=2) / 7-point (d=3) Laplacian.
FdResult fd_laplacian(int d, const ScalarFieldFn& f, const double* x, double h,
                      double domain_radius = 0.0);
// Raw second-order stencil (no refinement), for convergence-order studies.
double fd_laplacian_stencil(int d, const ScalarFieldFn& f, const double* x,
                            double h, double domain_radius = 0.0);

// Richardson-refined central-difference Jacobian, row-major d x d.
struct FdJacobian {
  std::array<double, 9> m{};
  double error_estimate = 0.0;
  double at(int i, int j, int d) const { return m[i * d + j]; }
};
FdJacobian fd_jacobian(int d, const VectorFieldFn& f, const double* x, double h,
                       double domain_radius = 0.0);

double matrix_det(const std::array<double, 9>& m, int d);

// --- compactly supported sampled fields ------------------------------------

// Function sampled on a polar (d=2) or spherical (d=3) tensor grid over a
// disk of radius support_radius, vanishing outside. The radial rule is
// composite Gauss-Legendre with panel breaks at supplied knots, so piecewise
// smooth integrands are integrated to near machine precision.
class CompactField {
 public:
  CompactField(int d, double support_radius, std::vector<double> r_nodes,
               std::vector<double> r_weights, std::vector<double> mu_nodes,
               std::vector<double> mu_weights, int n_ang,
               std::vector<double> values, ScalarFieldFn source = nullptr,
               std::vector<double> knots = {});

  int dim() const { return d_; }
  double support_radius() const { return support_radius_; }
  int radial_count() const { return static_cast<int>(r_nodes_.size()); }
  int angular_count() const { return n_ang_; }
  const std::vector<double>& values() const { return values_; }
  bool has_source() const { return static_cast<bool>(source_); }
  const ScalarFieldFn& source() const { return source_; }
  const std::vector<double>& knots() const { return knots_; }

  // Integral of value * weightfn over R^d (weightfn evaluated at grid nodes).
  double integrate(const std::function<double(const double*)>& weightfn) const;
  double integral() const;

  // Visit every node: callback(x, quadrature weight, sampled value).
  void for_each_node(
      const std::function<void(const double*, double, double)>& visit) const;

 private:
  int d_;
  double support_radius_;
  std::vector<double> r_nodes_, r_weights_;
  std::vector<double> mu_nodes_, mu_weights_;  // d=3 polar direction
  int n_ang_;
  std::vector<double> values_;
  ScalarFieldFn source_;
  std::vector<double> knots_;
};

// Sample fn over a disk of radius support_radius. knots: radii where fn is
// only piecewise smooth (panel boundaries are placed there). Defaults give
// n_r >= 128 radial and n_ang >= 256 angular nodes for d=2.
CompactField sample_compact_field(int d, const ScalarFieldFn& fn,
                                  double support_radius,
                                  std::vector<double> knots = {}, int n_r = 0,
                                  int n_ang = 0);

// --- moments ----------------------------------------------------------------

// Polynomial in the ambient coordinates, for moment integrals.
struct Polynomial {
  struct Term {
    int ex = 0, ey = 0, ez = 0;
    double c = 0.0;
  };
  std::vector<Term> terms;

  int degree() const;
  double eval(const double* x, int d) const;

  static Polynomial one();
  static Polynomial coordinate(int axis);  // x_axis
  static Polynomial monomial(int ex, int ey, int ez, double c);
  Polynomial& operator+=(const Polynomial& p);
};

struct MomentResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

// int g * poly dx by grid quadrature; error estimated by resolution doubling
// (resampling the stored source when available). Degree <= 4 enforced.
MomentResult moment(const CompactField& g, const Polynomial& poly);

// --- flow map ----------------------------------------------------------------

struct FlowResult {
  std::vector<double> times;
  std::vector<std::array<double, 3>> trajectory;  // center trajectory
  std::vector<double> det_history;                // det[d phi] along the flow
  double max_abs_det_minus_1 = 0.0;
  double step = 0.0;
  double fd_step = 0.0;
};

struct FlowOptions {
  double t_final = 1.0;
  double step = 1e-2;
  double fd_step = 1e-3;  // spatial step for the flow-map Jacobian
  int max_halvings = 3;
};

// RK4 flow of the autonomous field u, with the Jacobian determinant of the
// flow map tracked by Richardson-refined finite differences of perturbed
// trajectories.
FlowResult integrate_flow(int d, const VectorFieldFn& u, const double* x0,
                          const FlowOptions& opts = {});

// Velocity evaluator for an expansion (chi literal), optionally plus a
// compactly supported part.
VectorFieldFn flow_field(const VectorExpansion& u,
                         VectorFieldFn compact_part = nullptr);

}  // namespace farfield

#endif
