#ifndef FARFIELD_SPHERE_FN_HPP
#define FARFIELD_SPHERE_FN_HPP

#include <functional>
#include <vector>

#include "farfield/errors.hpp"

namespace farfield {

// Real band-limited function on the unit sphere S^{d-1}, d in {2,3}, stored
// as coefficients over an orthonormal eigenbasis of the Laplace-Beltrami
// operator.
//
//   d=2: basis { 1/sqrt(2pi), cos(l phi)/sqrt(pi), sin(l phi)/sqrt(pi) },
//        indexed (l,0) for l=0 and (l,+1) cosine / (l,-1) sine for l>=1.
//   d=3: real orthonormal spherical harmonics Y_{l,m}, -l <= m <= l
//        (m>0 cosine sector, m<0 sine sector, no Condon-Shortley phase).
//
// Values are immutable in spirit: operations return new objects.
class SphereFn {
 public:
  SphereFn(int dim, int band_limit);

  static SphereFn constant(int dim, double value);
  // Unit basis element e_{l,m}.
  static SphereFn basis(int dim, int l, int m);

  int dim() const { return d_; }
  int band_limit() const { return L_; }
  int size() const { return static_cast<int>(c_.size()); }

  double coeff(int l, int m) const;
  void set_coeff(int l, int m, double value);

  const std::vector<double>& coeffs() const { return c_; }
  double& raw(int i) { return c_[i]; }
  double raw(int i) const { return c_[i]; }

  // sqrt(sum of squared coefficients); equals the L2(S^{d-1}) norm.
  double norm() const;
  bool is_zero(double tol = 0.0) const { return norm() <= tol; }

  // Evaluate at the direction of a nonzero vector x (length d_).
  double eval_dir(const double* x) const;
  double eval_phi(double phi) const;                   // d=2
  double eval_angles(double theta, double phi) const;  // d=3 (polar, azimuth)

  // Copy with band limit newL (larger pads with zeros, smaller truncates).
  SphereFn with_band_limit(int newL) const;

  SphereFn& operator+=(const SphereFn& other);
  SphereFn& operator*=(double s);
  friend SphereFn operator+(SphereFn a, const SphereFn& b) { return a += b; }
  friend SphereFn operator*(SphereFn a, double s) { return a *= s; }
  friend SphereFn operator*(double s, SphereFn a) { return a *= s; }
  friend SphereFn operator-(const SphereFn& a, const SphereFn& b);

  static int block_offset(int d, int l);
  static int block_size(int d, int l);
  int index(int l, int m) const;

 private:
  int d_;
  int L_;
  std::vector<double> c_;
};

struct EigenSpec {
  int l;             // degree
  double mu;         // eigenvalue of -Delta_S: l(l+d-2)
  int multiplicity;  // dimension of the degree-l eigenspace
};

EigenSpec eigen_spec(int d, int l);
double eigenvalue_mu(int d, int l);  // l(l+d-2)

// Degree l whose eigenvalue mu_l equals lambda_k = k(k+2-d), i.e. l = k+2-d,
// valid for k >= max(0, d-2); returns -1 when the lambda_k-eigenspace is
// taken empty (k < d-2).
int resonance_degree(int d, int k);
double resonance_lambda(int d, int k);  // k(k+2-d)

double sphere_area(int d);  // 2pi for d=2, 4pi for d=3

// Applies Delta_S: degree-l block scaled by -l(l+d-2).
SphereFn laplace_beltrami(const SphereFn& f);

// Diagonal solve of (Delta_S + lambda) b = f. Throws ResonantComponent if f
// has a coefficient of magnitude > kernel_tol at a kernel degree.
SphereFn helmholtz_solve(const SphereFn& f, double lambda,
                         double kernel_tol = 1e-11);

// Exact projection of the pointwise product onto the basis up to degree
// L_out (default L_f + L_g), by quadrature exact for band-limited
// integrands.
SphereFn multiply(const SphereFn& f, const SphereFn& g, int L_out = -1);

SphereFn project_degree(const SphereFn& f, int l);

// Surface-measure integral of f*g, by quadrature (exact for band-limited
// inputs; coincides with the coefficient dot product).
double inner_product(const SphereFn& f, const SphereFn& g);

// Integral of f over the sphere.
double sphere_mean(const SphereFn& f);

// theta_axis (axis in 1..d) as a degree-1 SphereFn.
SphereFn direction_component(int d, int axis);

// Cartesian component of the tangential gradient of a, band limit L+1.
// For a homogeneous degree-zero extension a(x/|x|) one has
// grad a = (tangential gradient)/r.
SphereFn tangential_gradient_component(const SphereFn& a, int axis);

// Project a pointwise-defined function known to be band-limited at degree
// fn_degree onto the basis up to L_out. fn receives a unit vector (length d).
SphereFn project_band_limited(
    int d, int L_out, const std::function<double(const double*)>& fn,
    int fn_degree);

// All basis values up to degree L at the direction of the (nonzero) vector x,
// in coefficient-index order. out must hold block_offset(d,L)+block_size(d,L)
// entries.
void eval_basis_row(int d, int L, const double* x, double* out);

}  // namespace farfield

#endif
