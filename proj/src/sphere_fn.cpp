#include "farfield/sphere_fn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace farfield {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string lm_str(int l, int m) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(l=%d, m=%d)", l, m);
  return buf;
}

// ---------------------------------------------------------------------------
// Normalized associated Legendre functions Pbar_l^m(cos theta) with
// int_{S^2} (Pbar_l^m trig(m phi) sqrt(2-delta_{m0}))^2 ds = 1.
// Fills table[l*(L+1)+m] for 0 <= m <= l <= L.
void legendre_table(int L, double ct, double st, double* table) {
  const int W = L + 1;
  for (int i = 0; i < W * W; ++i) table[i] = 0.0;
  table[0] = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 1; m <= L; ++m)
    table[m * W + m] =
        std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * st * table[(m - 1) * W + m - 1];
  for (int m = 0; m < L; ++m)
    table[(m + 1) * W + m] = std::sqrt(2.0 * m + 3.0) * ct * table[m * W + m];
  for (int m = 0; m <= L; ++m) {
    for (int l = m + 2; l <= L; ++l) {
      const double a =
          std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      const double b = std::sqrt(
          ((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      table[l * W + m] = a * (ct * table[(l - 1) * W + m] - b * table[(l - 2) * W + m]);
    }
  }
}

// d/dtheta of the normalized functions, needs sin(theta) != 0.
void legendre_dtheta_table(int L, double ct, double st, const double* table,
                           double* dt) {
  const int W = L + 1;
  for (int m = 0; m <= L; ++m) {
    for (int l = m; l <= L; ++l) {
      const double below = (l > m) ? table[(l - 1) * W + m] : 0.0;
      const double c =
          (l > m) ? std::sqrt((2.0 * l + 1.0) * (static_cast<double>(l) * l - m * m) /
                              (2.0 * l - 1.0))
                  : 0.0;
      dt[l * W + m] = (l * ct * table[l * W + m] - c * below) / st;
    }
  }
}

void trig_tables(int L, double phi, double* cs, double* sn) {
  cs[0] = 1.0;
  sn[0] = 0.0;
  const double c1 = std::cos(phi), s1 = std::sin(phi);
  for (int m = 1; m <= L; ++m) {
    cs[m] = cs[m - 1] * c1 - sn[m - 1] * s1;
    sn[m] = sn[m - 1] * c1 + cs[m - 1] * s1;
  }
}

// All basis values at one point. out has size = dim of the basis.
void basis_row(int d, int L, double theta_or_phi, double phi, double* out) {
  if (d == 2) {
    const double phi2 = theta_or_phi;
    std::vector<double> cs(L + 1), sn(L + 1);
    trig_tables(L, phi2, cs.data(), sn.data());
    const double c0 = 1.0 / std::sqrt(2.0 * kPi);
    const double cl = 1.0 / std::sqrt(kPi);
    out[0] = c0;
    for (int l = 1; l <= L; ++l) {
      out[2 * l - 1] = cs[l] * cl;
      out[2 * l] = sn[l] * cl;
    }
    return;
  }
  const double theta = theta_or_phi;
  const double ct = std::cos(theta), st = std::sin(theta);
  const int W = L + 1;
  std::vector<double> tab(W * W), cs(L + 1), sn(L + 1);
  legendre_table(L, ct, st, tab.data());
  trig_tables(L, phi, cs.data(), sn.data());
  const double r2 = std::sqrt(2.0);
  for (int l = 0; l <= L; ++l) {
    out[SphereFn::block_offset(3, l) + l] = tab[l * W + 0];  // m = 0
    for (int m = 1; m <= l; ++m) {
      const double p = tab[l * W + m];
      out[SphereFn::block_offset(3, l) + l + m] = r2 * p * cs[m];
      out[SphereFn::block_offset(3, l) + l - m] = r2 * p * sn[m];
    }
  }
}

struct SphereGrid {
  int d;
  // d=2: phis/weights. d=3: tensor product (theta_i, phi_j).
  std::vector<double> thetas, tweights;  // d=3 polar nodes
  std::vector<double> phis;
  double phi_weight;

  size_t node_count() const {
    return d == 2 ? phis.size() : thetas.size() * phis.size();
  }
};

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    p0 = 1.0;
    p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (t * p1 - p0) / (t * t - 1.0);
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

// Quadrature exact for band-limited integrands of degree <= exactness.
SphereGrid make_grid(int d, int exactness) {
  SphereGrid g;
  g.d = d;
  const int deg = std::max(exactness, 4);
  if (d == 2) {
    const int n = deg + 2;
    g.phis.resize(n);
    for (int i = 0; i < n; ++i) g.phis[i] = 2.0 * kPi * i / n;
    g.phi_weight = 2.0 * kPi / n;
    return g;
  }
  const int ntheta = deg / 2 + 2;
  const int nphi = deg + 2;
  std::vector<double> xs, ws;
  gauss_legendre(ntheta, xs, ws);
  g.thetas.resize(ntheta);
  g.tweights = ws;
  for (int i = 0; i < ntheta; ++i) g.thetas[i] = std::acos(xs[i]);
  g.phis.resize(nphi);
  for (int j = 0; j < nphi; ++j) g.phis[j] = 2.0 * kPi * j / nphi;
  g.phi_weight = 2.0 * kPi / nphi;
  return g;
}

// Evaluate f at all grid nodes.
std::vector<double> grid_values(const SphereGrid& g, const SphereFn& f) {
  std::vector<double> out;
  if (g.d == 2) {
    out.reserve(g.phis.size());
    for (double phi : g.phis) out.push_back(f.eval_phi(phi));
    return out;
  }
  out.reserve(g.node_count());
  for (double th : g.thetas)
    for (double phi : g.phis) out.push_back(f.eval_angles(th, phi));
  return out;
}

// Project node values onto the basis up to L_out.
SphereFn grid_project(const SphereGrid& g, const std::vector<double>& values,
                      int L_out) {
  SphereFn out(g.d, L_out);
  const int nb = out.size();
  std::vector<double> row(nb);
  if (g.d == 2) {
    for (size_t i = 0; i < g.phis.size(); ++i) {
      basis_row(2, L_out, g.phis[i], 0.0, row.data());
      const double wv = g.phi_weight * values[i];
      for (int b = 0; b < nb; ++b) out.raw(b) += wv * row[b];
    }
    return out;
  }
  size_t idx = 0;
  for (size_t i = 0; i < g.thetas.size(); ++i) {
    for (size_t j = 0; j < g.phis.size(); ++j, ++idx) {
      basis_row(3, L_out, g.thetas[i], g.phis[j], row.data());
      const double wv = g.tweights[i] * g.phi_weight * values[idx];
      for (int b = 0; b < nb; ++b) out.raw(b) += wv * row[b];
    }
  }
  return out;
}

void check_dim(int d) {
  if (d != 2 && d != 3)
    throw DimensionMismatch("supported ambient dimensions are 2 and 3, got " +
                            std::to_string(d));
}

}  // namespace

// ---------------------------------------------------------------------------

int SphereFn::block_offset(int d, int l) {
  return d == 2 ? (l == 0 ? 0 : 2 * l - 1) : l * l;
}

int SphereFn::block_size(int d, int l) {
  return d == 2 ? (l == 0 ? 1 : 2) : 2 * l + 1;
}

SphereFn::SphereFn(int dim, int band_limit) : d_(dim), L_(band_limit) {
  check_dim(dim);
  if (band_limit < 0) throw Error("band limit must be >= 0");
  c_.assign(block_offset(d_, L_) + block_size(d_, L_), 0.0);
}

SphereFn SphereFn::constant(int dim, double value) {
  SphereFn f(dim, 0);
  f.c_[0] = value * std::sqrt(sphere_area(dim));
  return f;
}

SphereFn SphereFn::basis(int dim, int l, int m) {
  SphereFn f(dim, l);
  f.set_coeff(l, m, 1.0);
  return f;
}

int SphereFn::index(int l, int m) const {
  if (l < 0 || l > L_) throw Error("degree out of range " + lm_str(l, m));
  if (d_ == 2) {
    if (l == 0) {
      if (m != 0) throw Error("d=2 degree 0 has only m=0 " + lm_str(l, m));
      return 0;
    }
    if (m == 1) return 2 * l - 1;
    if (m == -1) return 2 * l;
    throw Error("d=2 expects m=+1 (cos) or m=-1 (sin) " + lm_str(l, m));
  }
  if (m < -l || m > l) throw Error("order out of range " + lm_str(l, m));
  return l * l + m + l;
}

double SphereFn::coeff(int l, int m) const { return c_[index(l, m)]; }

void SphereFn::set_coeff(int l, int m, double value) { c_[index(l, m)] = value; }

double SphereFn::norm() const {
  double s = 0.0;
  for (double v : c_) s += v * v;
  return std::sqrt(s);
}

double SphereFn::eval_phi(double phi) const {
  if (d_ != 2) throw DimensionMismatch("eval_phi requires d=2");
  double out = c_[0] / std::sqrt(2.0 * kPi);
  const double inv = 1.0 / std::sqrt(kPi);
  double c1 = std::cos(phi), s1 = std::sin(phi);
  double cl = c1, sl = s1;
  for (int l = 1; l <= L_; ++l) {
    out += (c_[2 * l - 1] * cl + c_[2 * l] * sl) * inv;
    const double cn = cl * c1 - sl * s1;
    sl = sl * c1 + cl * s1;
    cl = cn;
  }
  return out;
}

double SphereFn::eval_angles(double theta, double phi) const {
  if (d_ != 3) throw DimensionMismatch("eval_angles requires d=3");
  const int W = L_ + 1;
  std::vector<double> tab(W * W), cs(W), sn(W);
  legendre_table(L_, std::cos(theta), std::sin(theta), tab.data());
  trig_tables(L_, phi, cs.data(), sn.data());
  const double r2 = std::sqrt(2.0);
  double out = 0.0;
  for (int l = 0; l <= L_; ++l) {
    const int off = l * l + l;
    out += c_[off] * tab[l * W + 0];
    for (int m = 1; m <= l; ++m) {
      const double p = tab[l * W + m];
      out += r2 * p * (c_[off + m] * cs[m] + c_[off - m] * sn[m]);
    }
  }
  return out;
}

double SphereFn::eval_dir(const double* x) const {
  if (d_ == 2) return eval_phi(std::atan2(x[1], x[0]));
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  const double ct = x[2] / r;
  return eval_angles(std::acos(std::clamp(ct, -1.0, 1.0)), std::atan2(x[1], x[0]));
}

SphereFn SphereFn::with_band_limit(int newL) const {
  SphereFn out(d_, newL);
  const int n = std::min(out.size(), size());
  std::copy(c_.begin(), c_.begin() + n, out.c_.begin());
  return out;
}

SphereFn& SphereFn::operator+=(const SphereFn& other) {
  if (other.d_ != d_) throw DimensionMismatch("SphereFn dimension mismatch in +");
  if (other.L_ > L_) *this = with_band_limit(other.L_);
  for (int i = 0; i < other.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

SphereFn& SphereFn::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

SphereFn operator-(const SphereFn& a, const SphereFn& b) {
  SphereFn out = a;
  out += (-1.0) * b;
  return out;
}

// ---------------------------------------------------------------------------

double sphere_area(int d) { return d == 2 ? 2.0 * kPi : 4.0 * kPi; }

double eigenvalue_mu(int d, int l) { return static_cast<double>(l) * (l + d - 2); }

EigenSpec eigen_spec(int d, int l) {
  check_dim(d);
  return EigenSpec{l, eigenvalue_mu(d, l), SphereFn::block_size(d, l)};
}

int resonance_degree(int d, int k) {
  if (k < d - 2) return -1;
  return k + 2 - d;
}

double resonance_lambda(int d, int k) { return static_cast<double>(k) * (k + 2 - d); }

SphereFn laplace_beltrami(const SphereFn& f) {
  SphereFn out = f;
  for (int l = 0; l <= f.band_limit(); ++l) {
    const double s = -eigenvalue_mu(f.dim(), l);
    const int off = SphereFn::block_offset(f.dim(), l);
    for (int i = 0; i < SphereFn::block_size(f.dim(), l); ++i) out.raw(off + i) *= s;
  }
  return out;
}

SphereFn helmholtz_solve(const SphereFn& f, double lambda, double kernel_tol) {
  SphereFn out = f;
  const double tol = kernel_tol * std::max(1.0, f.norm());
  for (int l = 0; l <= f.band_limit(); ++l) {
    const double gap = lambda - eigenvalue_mu(f.dim(), l);
    const int off = SphereFn::block_offset(f.dim(), l);
    const int bs = SphereFn::block_size(f.dim(), l);
    if (std::abs(gap) <= 1e-9 * std::max(1.0, std::abs(lambda))) {
      double bn = 0.0;
      for (int i = 0; i < bs; ++i) bn += f.raw(off + i) * f.raw(off + i);
      if (std::sqrt(bn) > tol)
        throw ResonantComponent("nonzero coefficient at kernel degree l=" +
                                std::to_string(l));
      for (int i = 0; i < bs; ++i) out.raw(off + i) = 0.0;
    } else {
      for (int i = 0; i < bs; ++i) out.raw(off + i) /= gap;
    }
  }
  return out;
}

SphereFn multiply(const SphereFn& f, const SphereFn& g, int L_out) {
  if (f.dim() != g.dim())
    throw DimensionMismatch("SphereFn dimension mismatch in multiply");
  if (L_out < 0) L_out = f.band_limit() + g.band_limit();
  const SphereGrid grid =
      make_grid(f.dim(), f.band_limit() + g.band_limit() + L_out);
  std::vector<double> vf = grid_values(grid, f);
  const std::vector<double> vg = grid_values(grid, g);
  for (size_t i = 0; i < vf.size(); ++i) vf[i] *= vg[i];
  return grid_project(grid, vf, L_out);
}

SphereFn project_degree(const SphereFn& f, int l) {
  SphereFn out(f.dim(), f.band_limit());
  if (l > f.band_limit()) return out;
  const int off = SphereFn::block_offset(f.dim(), l);
  for (int i = 0; i < SphereFn::block_size(f.dim(), l); ++i)
    out.raw(off + i) = f.raw(off + i);
  return out;
}

double inner_product(const SphereFn& f, const SphereFn& g) {
  if (f.dim() != g.dim())
    throw DimensionMismatch("SphereFn dimension mismatch in inner_product");
  const SphereGrid grid = make_grid(f.dim(), f.band_limit() + g.band_limit());
  const std::vector<double> vf = grid_values(grid, f);
  const std::vector<double> vg = grid_values(grid, g);
  double acc = 0.0;
  if (f.dim() == 2) {
    for (size_t i = 0; i < vf.size(); ++i) acc += vf[i] * vg[i];
    return acc * grid.phi_weight;
  }
  size_t idx = 0;
  for (size_t i = 0; i < grid.thetas.size(); ++i)
    for (size_t j = 0; j < grid.phis.size(); ++j, ++idx)
      acc += grid.tweights[i] * grid.phi_weight * vf[idx] * vg[idx];
  return acc;
}

double sphere_mean(const SphereFn& f) {
  return f.raw(0) * std::sqrt(sphere_area(f.dim()));
}

SphereFn direction_component(int d, int axis) {
  check_dim(d);
  if (axis < 1 || axis > d) throw Error("axis out of range");
  SphereFn out(d, 1);
  if (d == 2) {
    out.set_coeff(1, axis == 1 ? 1 : -1, std::sqrt(kPi));
    return out;
  }
  const double c = std::sqrt(4.0 * kPi / 3.0);
  if (axis == 1) out.set_coeff(1, 1, c);
  if (axis == 2) out.set_coeff(1, -1, c);
  if (axis == 3) out.set_coeff(1, 0, c);
  return out;
}

SphereFn tangential_gradient_component(const SphereFn& a, int axis) {
  const int d = a.dim();
  if (axis < 1 || axis > d) throw Error("axis out of range");
  const int L = a.band_limit();
  const int L_out = L + 1;
  const SphereGrid grid = make_grid(d, L + 1 + L_out);
  std::vector<double> vals(grid.node_count());
  if (d == 2) {
    // grad_S a = a'(phi) * e_phi, e_phi = (-sin phi, cos phi).
    const double inv = 1.0 / std::sqrt(kPi);
    for (size_t i = 0; i < grid.phis.size(); ++i) {
      const double phi = grid.phis[i];
      double da = 0.0;
      for (int l = 1; l <= L; ++l)
        da += l * inv *
              (-a.raw(2 * l - 1) * std::sin(l * phi) + a.raw(2 * l) * std::cos(l * phi));
      vals[i] = da * (axis == 1 ? -std::sin(phi) : std::cos(phi));
    }
    return grid_project(grid, vals, L_out);
  }
  // grad_S a = (d_theta a) e_theta + (1/sin theta)(d_phi a) e_phi.
  const int W = L + 1;
  std::vector<double> tab(W * W), dt(W * W), cs(W), sn(W);
  const double r2 = std::sqrt(2.0);
  size_t idx = 0;
  for (size_t i = 0; i < grid.thetas.size(); ++i) {
    const double theta = grid.thetas[i];
    const double ct = std::cos(theta), st = std::sin(theta);
    legendre_table(L, ct, st, tab.data());
    legendre_dtheta_table(L, ct, st, tab.data(), dt.data());
    for (size_t j = 0; j < grid.phis.size(); ++j, ++idx) {
      const double phi = grid.phis[j];
      trig_tables(L, phi, cs.data(), sn.data());
      double gth = 0.0, gph = 0.0;  // gph already includes the 1/sin factor
      for (int l = 0; l <= L; ++l) {
        const int off = l * l + l;
        gth += a.raw(off) * dt[l * W + 0];
        for (int m = 1; m <= l; ++m) {
          const double cc = a.raw(off + m), ss = a.raw(off - m);
          gth += r2 * dt[l * W + m] * (cc * cs[m] + ss * sn[m]);
          gph += r2 * (tab[l * W + m] / st) * m * (-cc * sn[m] + ss * cs[m]);
        }
      }
      const double cph = std::cos(phi), sph = std::sin(phi);
      double comp = 0.0;
      if (axis == 1) comp = gth * ct * cph - gph * sph;
      if (axis == 2) comp = gth * ct * sph + gph * cph;
      if (axis == 3) comp = -gth * st;
      vals[idx] = comp;
    }
  }
  return grid_project(grid, vals, L_out);
}

void eval_basis_row(int d, int L, const double* x, double* out) {
  check_dim(d);
  if (d == 2) {
    basis_row(2, L, std::atan2(x[1], x[0]), 0.0, out);
    return;
  }
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  const double theta = std::acos(std::clamp(x[2] / r, -1.0, 1.0));
  basis_row(3, L, theta, std::atan2(x[1], x[0]), out);
}

SphereFn project_band_limited(int d, int L_out,
                              const std::function<double(const double*)>& fn,
                              int fn_degree) {
  check_dim(d);
  const SphereGrid grid = make_grid(d, fn_degree + L_out);
  std::vector<double> vals(grid.node_count());
  if (d == 2) {
    for (size_t i = 0; i < grid.phis.size(); ++i) {
      const double dir[2] = {std::cos(grid.phis[i]), std::sin(grid.phis[i])};
      vals[i] = fn(dir);
    }
  } else {
    size_t idx = 0;
    for (size_t i = 0; i < grid.thetas.size(); ++i) {
      const double ct = std::cos(grid.thetas[i]), st = std::sin(grid.thetas[i]);
      for (size_t j = 0; j < grid.phis.size(); ++j, ++idx) {
        const double dir[3] = {st * std::cos(grid.phis[j]),
                               st * std::sin(grid.phis[j]), ct};
        vals[idx] = fn(dir);
      }
    }
  }
  return grid_project(grid, vals, L_out);
}

}  // namespace farfield
