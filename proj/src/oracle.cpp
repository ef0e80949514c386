#include "farfield/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "farfield/cutoff.hpp"
#include "farfield/errors.hpp"

namespace farfield {

namespace {

constexpr double kPi = 3.14159265358979323846;

double radius(int d, const double* x) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

// (log r)^j r^-k and its r-derivative.
double radial_factor(int k, int j, double r, double logr) {
  return std::pow(logr, j) * std::pow(r, -k);
}

double radial_factor_d1(int k, int j, double r, double logr) {
  double v = 0.0;
  if (j > 0) v += j * std::pow(logr, j - 1);
  v -= k * std::pow(logr, j);
  return v * std::pow(r, -k - 1);
}

void gauss_legendre_unit(int n, std::vector<double>& x, std::vector<double>& w) {
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

// Composite 8-point Gauss-Legendre over [0, R] with panel breaks at knots.
void radial_rule(double R, const std::vector<double>& knots, int n_r,
                 std::vector<double>& nodes, std::vector<double>& weights) {
  std::vector<double> breaks{0.0, R};
  for (double k : knots)
    if (k > 1e-12 && k < R - 1e-12) breaks.push_back(k);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               breaks.end());

  const int pts_per_panel = 8;
  const int total_panels = std::max<int>(n_r / pts_per_panel,
                                         static_cast<int>(breaks.size()) - 1);
  std::vector<double> gx, gw;
  gauss_legendre_unit(pts_per_panel, gx, gw);

  nodes.clear();
  weights.clear();
  for (size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double a0 = breaks[b], a1 = breaks[b + 1];
    int panels = std::max(
        1, static_cast<int>(std::lround(total_panels * (a1 - a0) / R)));
    for (int p = 0; p < panels; ++p) {
      const double lo = a0 + (a1 - a0) * p / panels;
      const double hi = a0 + (a1 - a0) * (p + 1) / panels;
      for (int i = 0; i < pts_per_panel; ++i) {
        nodes.push_back(0.5 * (hi + lo) + 0.5 * (hi - lo) * gx[i]);
        weights.push_back(0.5 * (hi - lo) * gw[i]);
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

double eval_raw(const AsymExpansion& u, const double* x) {
  const double r = radius(u.dim(), x);
  if (r <= 0.0) throw Error("eval_raw requires r > 0");
  const double logr = std::log(r);
  double out = 0.0;
  for (const auto& [g, a] : u.terms())
    out += a.eval_dir(x) * radial_factor(g.k, g.j, r, logr);
  return out;
}

double eval_raw_radial_derivative(const AsymExpansion& u, const double* x) {
  const double r = radius(u.dim(), x);
  if (r <= 0.0) throw Error("eval_raw requires r > 0");
  const double logr = std::log(r);
  double out = 0.0;
  for (const auto& [g, a] : u.terms())
    out += a.eval_dir(x) * radial_factor_d1(g.k, g.j, r, logr);
  return out;
}

double eval_dense(const AsymExpansion& u, const double* x) {
  const double r = radius(u.dim(), x);
  if (r <= u.cutoff.inner) return 0.0;
  return cutoff(r) * eval_raw(u, x);
}

std::array<double, 3> eval_dense(const VectorExpansion& u, const double* x) {
  std::array<double, 3> out{0.0, 0.0, 0.0};
  for (int i = 0; i < u.dim(); ++i) out[i] = eval_dense(u[i], x);
  return out;
}

double eval_laplacian_with_cutoff(const AsymExpansion& u,
                                  const AsymExpansion& lap_u, const double* x) {
  const double r = radius(u.dim(), x);
  if (r <= 1.0) return 0.0;
  const double chi = cutoff(r), chi1 = cutoff_d1(r), chi2 = cutoff_d2(r);
  double out = chi * eval_raw(lap_u, x);
  if (chi1 != 0.0 || chi2 != 0.0) {
    out += 2.0 * chi1 * eval_raw_radial_derivative(u, x);
    out += (chi2 + (u.dim() - 1) * chi1 / r) * eval_raw(u, x);
  }
  return out;
}

double eval_partial_with_cutoff(const AsymExpansion& u,
                                const AsymExpansion& du_axis, int axis,
                                const double* x) {
  const double r = radius(u.dim(), x);
  if (r <= 1.0) return 0.0;
  const double chi = cutoff(r), chi1 = cutoff_d1(r);
  double out = chi * eval_raw(du_axis, x);
  if (chi1 != 0.0) out += chi1 * (x[axis - 1] / r) * eval_raw(u, x);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_stencil(int d, const double* x, double h, double domain_radius) {
  if (h <= 0.0) throw Error("finite-difference step must be positive");
  if (domain_radius > 0.0 && radius(d, x) + 2.0 * h > domain_radius)
    throw StencilOutOfDomain("stencil exceeds the stated domain radius");
}

}  // namespace

double fd_laplacian_stencil(int d, const ScalarFieldFn& f, const double* x,
                            double h, double domain_radius) {
  check_stencil(d, x, h, domain_radius);
  double acc = -2.0 * d * f(x);
  double p[3] = {x[0], x[1], d == 3 ? x[2] : 0.0};
  for (int i = 0; i < d; ++i) {
    p[i] = x[i] + h;
    acc += f(p);
    p[i] = x[i] - h;
    acc += f(p);
    p[i] = x[i];
  }
  return acc / (h * h);
}

FdResult fd_laplacian(int d, const ScalarFieldFn& f, const double* x, double h,
                      double domain_radius) {
  const double lh = fd_laplacian_stencil(d, f, x, h, domain_radius);
  const double lh2 = fd_laplacian_stencil(d, f, x, 0.5 * h, domain_radius);
  FdResult out;
  out.value = (4.0 * lh2 - lh) / 3.0;
  out.error_estimate = std::abs(lh2 - lh) / 3.0;
  return out;
}

FdJacobian fd_jacobian(int d, const VectorFieldFn& f, const double* x, double h,
                       double domain_radius) {
  check_stencil(d, x, h, domain_radius);
  FdJacobian out;
  double p[3] = {x[0], x[1], d == 3 ? x[2] : 0.0};
  double up[3], um[3];
  double est = 0.0;
  for (int j = 0; j < d; ++j) {
    std::array<double, 3> col_h{}, col_h2{};
    for (int pass = 0; pass < 2; ++pass) {
      const double hh = pass == 0 ? h : 0.5 * h;
      p[j] = x[j] + hh;
      f(p, up);
      p[j] = x[j] - hh;
      f(p, um);
      p[j] = x[j];
      for (int i = 0; i < d; ++i) {
        const double der = (up[i] - um[i]) / (2.0 * hh);
        (pass == 0 ? col_h : col_h2)[i] = der;
      }
    }
    for (int i = 0; i < d; ++i) {
      out.m[i * d + j] = (4.0 * col_h2[i] - col_h[i]) / 3.0;
      est = std::max(est, std::abs(col_h2[i] - col_h[i]) / 3.0);
    }
  }
  out.error_estimate = est;
  return out;
}

double matrix_det(const std::array<double, 9>& m, int d) {
  if (d == 2) return m[0] * m[3] - m[1] * m[2];
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

// ---------------------------------------------------------------------------

CompactField::CompactField(int d, double support_radius,
                           std::vector<double> r_nodes,
                           std::vector<double> r_weights,
                           std::vector<double> mu_nodes,
                           std::vector<double> mu_weights, int n_ang,
                           std::vector<double> values, ScalarFieldFn source,
                           std::vector<double> knots)
    : d_(d),
      support_radius_(support_radius),
      r_nodes_(std::move(r_nodes)),
      r_weights_(std::move(r_weights)),
      mu_nodes_(std::move(mu_nodes)),
      mu_weights_(std::move(mu_weights)),
      n_ang_(n_ang),
      values_(std::move(values)),
      source_(std::move(source)),
      knots_(std::move(knots)) {
  const size_t expected = d_ == 2 ? r_nodes_.size() * n_ang_
                                  : r_nodes_.size() * mu_nodes_.size() * n_ang_;
  if (values_.size() != expected) throw Error("CompactField value count mismatch");
}

void CompactField::for_each_node(
    const std::function<void(const double*, double, double)>& visit) const {
  const double dphi = 2.0 * kPi / n_ang_;
  if (d_ == 2) {
    size_t idx = 0;
    for (size_t ir = 0; ir < r_nodes_.size(); ++ir) {
      const double r = r_nodes_[ir];
      const double wr = r_weights_[ir] * r * dphi;
      for (int ia = 0; ia < n_ang_; ++ia, ++idx) {
        const double phi = 2.0 * kPi * ia / n_ang_;
        const double x[3] = {r * std::cos(phi), r * std::sin(phi), 0.0};
        visit(x, wr, values_[idx]);
      }
    }
    return;
  }
  size_t idx = 0;
  for (size_t ir = 0; ir < r_nodes_.size(); ++ir) {
    const double r = r_nodes_[ir];
    for (size_t im = 0; im < mu_nodes_.size(); ++im) {
      const double ct = mu_nodes_[im];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      const double w = r_weights_[ir] * r * r * mu_weights_[im] * dphi;
      for (int ia = 0; ia < n_ang_; ++ia, ++idx) {
        const double phi = 2.0 * kPi * ia / n_ang_;
        const double x[3] = {r * st * std::cos(phi), r * st * std::sin(phi),
                             r * ct};
        visit(x, w, values_[idx]);
      }
    }
  }
}

double CompactField::integrate(
    const std::function<double(const double*)>& weightfn) const {
  double acc = 0.0;
  for_each_node([&](const double* x, double w, double v) {
    acc += w * v * (weightfn ? weightfn(x) : 1.0);
  });
  return acc;
}

double CompactField::integral() const { return integrate(nullptr); }

CompactField sample_compact_field(int d, const ScalarFieldFn& fn,
                                  double support_radius,
                                  std::vector<double> knots, int n_r, int n_ang) {
  if (d != 2 && d != 3) throw DimensionMismatch("CompactField requires d in {2,3}");
  if (n_r <= 0) n_r = 128;
  if (n_ang <= 0) n_ang = d == 2 ? 256 : 64;
  std::vector<double> rn, rw;
  radial_rule(support_radius, knots, n_r, rn, rw);
  std::vector<double> mn, mw;
  int n_mu = 0;
  if (d == 3) {
    n_mu = std::max(24, n_ang / 2);
    gauss_legendre_unit(n_mu, mn, mw);
  }
  std::vector<double> values;
  values.reserve(d == 2 ? rn.size() * n_ang : rn.size() * n_mu * n_ang);
  if (d == 2) {
    for (double r : rn)
      for (int ia = 0; ia < n_ang; ++ia) {
        const double phi = 2.0 * kPi * ia / n_ang;
        const double x[2] = {r * std::cos(phi), r * std::sin(phi)};
        values.push_back(fn(x));
      }
  } else {
    for (double r : rn)
      for (int im = 0; im < n_mu; ++im) {
        const double ct = mn[im];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int ia = 0; ia < n_ang; ++ia) {
          const double phi = 2.0 * kPi * ia / n_ang;
          const double x[3] = {r * st * std::cos(phi), r * st * std::sin(phi),
                               r * ct};
          values.push_back(fn(x));
        }
      }
  }
  return CompactField(d, support_radius, std::move(rn), std::move(rw),
                      std::move(mn), std::move(mw), n_ang, std::move(values), fn,
                      std::move(knots));
}

// ---------------------------------------------------------------------------

int Polynomial::degree() const {
  int deg = 0;
  for (const auto& t : terms) deg = std::max(deg, t.ex + t.ey + t.ez);
  return deg;
}

double Polynomial::eval(const double* x, int d) const {
  double acc = 0.0;
  for (const auto& t : terms) {
    double v = t.c;
    for (int i = 0; i < t.ex; ++i) v *= x[0];
    for (int i = 0; i < t.ey; ++i) v *= x[1];
    if (d == 3)
      for (int i = 0; i < t.ez; ++i) v *= x[2];
    acc += v;
  }
  return acc;
}

Polynomial Polynomial::one() { return Polynomial{{Term{0, 0, 0, 1.0}}}; }

Polynomial Polynomial::coordinate(int axis) {
  Term t;
  t.c = 1.0;
  if (axis == 1) t.ex = 1;
  if (axis == 2) t.ey = 1;
  if (axis == 3) t.ez = 1;
  return Polynomial{{t}};
}

Polynomial Polynomial::monomial(int ex, int ey, int ez, double c) {
  return Polynomial{{Term{ex, ey, ez, c}}};
}

Polynomial& Polynomial::operator+=(const Polynomial& p) {
  terms.insert(terms.end(), p.terms.begin(), p.terms.end());
  return *this;
}

MomentResult moment(const CompactField& g, const Polynomial& poly) {
  if (poly.degree() > 4) throw Error("moment polynomials are limited to degree 4");
  const int d = g.dim();
  auto weight = [&](const double* x) { return poly.eval(x, d); };
  MomentResult out;
  const double coarse = g.integrate(weight);
  if (g.has_source()) {
    const CompactField fine = sample_compact_field(
        d, g.source(), g.support_radius(), g.knots(), 2 * g.radial_count(),
        2 * g.angular_count());
    out.value = fine.integrate(weight);
    out.error_estimate = std::abs(out.value - coarse);
  } else {
    out.value = coarse;
    out.error_estimate = 0.0;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void rk4_step(int d, const VectorFieldFn& u, double h, double* x) {
  double k1[3], k2[3], k3[3], k4[3], tmp[3] = {0, 0, 0};
  u(x, k1);
  for (int i = 0; i < d; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  u(tmp, k2);
  for (int i = 0; i < d; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  u(tmp, k3);
  for (int i = 0; i < d; ++i) tmp[i] = x[i] + h * k3[i];
  u(tmp, k4);
  for (int i = 0; i < d; ++i)
    x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

bool finite_point(int d, const double* x) {
  for (int i = 0; i < d; ++i)
    if (!std::isfinite(x[i]) || std::abs(x[i]) > 1e9) return false;
  return true;
}

}  // namespace

FlowResult integrate_flow(int d, const VectorFieldFn& u, const double* x0,
                          const FlowOptions& opts) {
  double step = opts.step;
  for (int attempt = 0; attempt <= opts.max_halvings; ++attempt) {
    // center + per axis: +h, -h, +h/2, -h/2 starts for the Richardson Jacobian
    const int ntraj = 1 + 4 * d;
    std::vector<std::array<double, 3>> pts(ntraj, {0.0, 0.0, 0.0});
    for (int i = 0; i < d; ++i) pts[0][i] = x0[i];
    const double hfd = opts.fd_step;
    for (int ax = 0; ax < d; ++ax) {
      const double offs[4] = {hfd, -hfd, 0.5 * hfd, -0.5 * hfd};
      for (int o = 0; o < 4; ++o) {
        pts[1 + 4 * ax + o] = pts[0];
        pts[1 + 4 * ax + o][ax] += offs[o];
      }
    }

    FlowResult res;
    res.step = step;
    res.fd_step = hfd;
    const int nsteps = static_cast<int>(std::ceil(opts.t_final / step - 1e-12));
    bool ok = true;
    for (int s = 0; s <= nsteps; ++s) {
      const double t = std::min(s * step, opts.t_final);
      std::array<double, 9> J{};
      for (int ax = 0; ax < d; ++ax) {
        for (int i = 0; i < d; ++i) {
          const double dh = (pts[1 + 4 * ax][i] - pts[2 + 4 * ax][i]) / (2.0 * hfd);
          const double dh2 = (pts[3 + 4 * ax][i] - pts[4 + 4 * ax][i]) / hfd;
          J[i * d + ax] = (4.0 * dh2 - dh) / 3.0;
        }
      }
      const double det = matrix_det(J, d);
      res.times.push_back(t);
      res.trajectory.push_back(pts[0]);
      res.det_history.push_back(det);
      res.max_abs_det_minus_1 =
          std::max(res.max_abs_det_minus_1, std::abs(det - 1.0));
      if (s == nsteps) break;
      const double hs = std::min(step, opts.t_final - s * step);
      for (auto& p : pts) {
        rk4_step(d, u, hs, p.data());
        if (!finite_point(d, p.data())) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return res;
    step *= 0.5;
  }
  throw StepUnstable("flow integration diverged after step halvings");
}

VectorFieldFn flow_field(const VectorExpansion& u, VectorFieldFn compact_part) {
  return [u, compact_part](const double* x, double* out) {
    const auto v = eval_dense(u, x);
    for (int i = 0; i < u.dim(); ++i) out[i] = v[i];
    if (compact_part) {
      double extra[3] = {0, 0, 0};
      compact_part(x, extra);
      for (int i = 0; i < u.dim(); ++i) out[i] += extra[i];
    }
  };
}

}  // namespace farfield
