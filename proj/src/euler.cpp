#include "farfield/euler.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "farfield/cutoff.hpp"
#include "farfield/errors.hpp"

namespace farfield {

namespace {

constexpr double kPi = 3.14159265358979323846;

double vec_r(const double* x) { return std::sqrt(x[0] * x[0] + x[1] * x[1]); }

}  // namespace

AsymExpansion q_nonlinearity(const VectorExpansion& u) {
  const int d = u.dim();
  const ExpansionMatrix du = jacobian(u);
  AsymExpansion out(d);
  const int huge = 1 << 20;  // untruncated
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out += multiply_expansions(du.at(i, j), du.at(j, i), huge);
  return out;
}

// ---------------------------------------------------------------------------
// Hamiltonian fields (d=2)

VectorExpansion HamiltonianField::velocity() const {
  VectorExpansion u(2);
  u[0] = scale(partial_derivative(H, 2), -1.0);
  u[1] = partial_derivative(H, 1);
  return u;
}

namespace {

// First derivatives of chi(r) * H_sym at x (zero inside the cutoff hole).
void cutoff_hamiltonian_gradient(const AsymExpansion& H,
                                 const VectorExpansion& dH, const double* x,
                                 double* out) {
  const double r = vec_r(x);
  out[0] = out[1] = 0.0;
  if (r <= 1.0) return;
  const double chi = cutoff(r), chi1 = cutoff_d1(r);
  for (int i = 0; i < 2; ++i) out[i] = chi * eval_raw(dH[i], x);
  if (chi1 != 0.0) {
    const double h = eval_raw(H, x);
    for (int i = 0; i < 2; ++i) out[i] += chi1 * (x[i] / r) * h;
  }
}

// Hessian of chi(r) * H_sym at x, as (Hxx, Hxy, Hyy).
void cutoff_hamiltonian_hessian(const AsymExpansion& H, const VectorExpansion& dH,
                                const ExpansionMatrix& d2H, const double* x,
                                double* out) {
  out[0] = out[1] = out[2] = 0.0;
  const double r = vec_r(x);
  if (r <= 1.0) return;
  const double chi = cutoff(r), chi1 = cutoff_d1(r), chi2 = cutoff_d2(r);
  const double txy[2] = {x[0] / r, x[1] / r};
  const double h = (chi1 != 0.0 || chi2 != 0.0) ? eval_raw(H, x) : 0.0;
  double dh[2] = {0.0, 0.0};
  if (chi1 != 0.0) {
    dh[0] = eval_raw(dH[0], x);
    dh[1] = eval_raw(dH[1], x);
  }
  int slot = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j, ++slot) {
      double v = chi * eval_raw(d2H.at(i, j), x);
      if (chi1 != 0.0) {
        v += chi1 * (txy[i] * dh[j] + txy[j] * dh[i]);
        const double delta = (i == j) ? 1.0 : 0.0;
        v += (chi2 * txy[i] * txy[j] + chi1 * (delta - txy[i] * txy[j]) / r) * h;
      }
      out[slot] = v;
    }
  }
  // slots: 0 -> xx, 1 -> xy, 2 -> yy
}

}  // namespace

VectorFieldFn HamiltonianField::velocity_eval() const {
  const AsymExpansion Hs = H;
  const VectorExpansion dH = gradient(H);
  const auto compact_part = compact;
  return [Hs, dH, compact_part](const double* x, double* out) {
    double g[2];
    cutoff_hamiltonian_gradient(Hs, dH, x, g);
    if (compact_part && vec_r(x) < compact_part->support) {
      double gc[2];
      compact_part->gradient(x, gc);
      g[0] += gc[0];
      g[1] += gc[1];
    }
    out[0] = -g[1];
    out[1] = g[0];
  };
}

ScalarFieldFn HamiltonianField::q_eval() const {
  const AsymExpansion Hs = H;
  const VectorExpansion dH = gradient(H);
  const ExpansionMatrix d2H = [&] {
    ExpansionMatrix m(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        m.at(i, j) = partial_derivative(dH[i], j + 1);
    return m;
  }();
  const auto compact_part = compact;
  return [Hs, dH, d2H, compact_part](const double* x) {
    double hess[3];
    cutoff_hamiltonian_hessian(Hs, dH, d2H, x, hess);
    if (compact_part && vec_r(x) < compact_part->support) {
      double hc[3];
      compact_part->hessian(x, hc);
      hess[0] += hc[0];
      hess[1] += hc[1];
      hess[2] += hc[2];
    }
    return -2.0 * (hess[0] * hess[2] - hess[1] * hess[1]);
  };
}

double HamiltonianField::support_radius() const {
  double s = H.empty() ? 1.0 : 2.0;
  if (compact) s = std::max(s, compact->support);
  return s;
}

std::vector<double> HamiltonianField::residual_knots() const {
  std::vector<double> knots{1.0, 2.0};
  if (compact)
    knots.insert(knots.end(), compact->knots.begin(), compact->knots.end());
  return knots;
}

HamiltonianField build_hamiltonian_field(const AsymExpansion& H) {
  if (H.dim() != 2)
    throw NotTwoDimensional("Hamiltonian fields are built for d=2");
  return HamiltonianField{H, std::nullopt};
}

VectorExpansion curl_field(const VectorExpansion& potential) {
  if (potential.dim() != 3)
    throw DimensionMismatch("curl_field requires d=3");
  VectorExpansion u(3);
  u[0] = add(partial_derivative(potential[2], 2),
             scale(partial_derivative(potential[1], 3), -1.0));
  u[1] = add(partial_derivative(potential[0], 3),
             scale(partial_derivative(potential[2], 1), -1.0));
  u[2] = add(partial_derivative(potential[1], 1),
             scale(partial_derivative(potential[0], 2), -1.0));
  return u;
}

HamiltonianField example1(double alpha) {
  // H = (z/zbar + zbar/z) + alpha ((z/zbar)^2 + (zbar/z)^2)
  //   = 2 cos 2phi + 2 alpha cos 4phi, times chi.
  SphereFn h0(2, 4);
  h0.set_coeff(2, 1, 2.0 * std::sqrt(kPi));
  h0.set_coeff(4, 1, 2.0 * alpha * std::sqrt(kPi));
  AsymExpansion H(2);
  H.add_term(Grade{0, 0}, h0);
  return build_hamiltonian_field(H);
}

double example2_bump(double rho) {
  if (rho <= 1.0) return 1.0;
  if (rho >= 2.0) return 0.0;
  const double t = rho - 1.0;
  return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double example2_bump_d1(double rho) {
  if (rho <= 1.0 || rho >= 2.0) return 0.0;
  const double t = rho - 1.0;
  return -(t * t * (30.0 + t * (-60.0 + 30.0 * t)));
}

double example2_bump_d2(double rho) {
  if (rho <= 1.0 || rho >= 2.0) return 0.0;
  const double t = rho - 1.0;
  return -(t * (60.0 + t * (-180.0 + 120.0 * t)));
}

HamiltonianField example2() {
  // H = (z + zbar) a(z zbar) = 2 x a(rho), rho = r^2.
  CompactHamiltonian c;
  c.support = std::sqrt(2.0);
  c.knots = {1.0, std::sqrt(2.0)};
  c.gradient = [](const double* x, double* g) {
    const double rho = x[0] * x[0] + x[1] * x[1];
    const double a = example2_bump(rho), a1 = example2_bump_d1(rho);
    g[0] = 2.0 * a + 4.0 * x[0] * x[0] * a1;
    g[1] = 4.0 * x[0] * x[1] * a1;
  };
  c.hessian = [](const double* x, double* h) {
    const double rho = x[0] * x[0] + x[1] * x[1];
    const double a1 = example2_bump_d1(rho), a2 = example2_bump_d2(rho);
    h[0] = 12.0 * x[0] * a1 + 8.0 * x[0] * x[0] * x[0] * a2;           // xx
    h[1] = 4.0 * x[1] * a1 + 8.0 * x[0] * x[0] * x[1] * a2;            // xy
    h[2] = 4.0 * x[0] * a1 + 8.0 * x[0] * x[1] * x[1] * a2;            // yy
  };
  return HamiltonianField{AsymExpansion(2), c};
}

double example2_reference_integral() {
  // -8 pi int_1^2 (a'(rho))^2 rho^2 drho; the integrand is a degree-10
  // polynomial on [1,2], integrated exactly by 16-panel Simpson refinement.
  const int m = 512;
  double acc = 0.0;
  auto f = [](double rho) {
    const double a1 = example2_bump_d1(rho);
    return a1 * a1 * rho * rho;
  };
  const double h = 1.0 / m;
  for (int i = 0; i < m; ++i) {
    const double r0 = 1.0 + i * h;
    acc += (f(r0) + 4.0 * f(r0 + 0.5 * h) + f(r0 + h)) * h / 6.0;
  }
  return -8.0 * kPi * acc;
}

HamiltonianField random_hamiltonian(std::uint64_t seed, int N, int L) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  AsymExpansion H(2);
  const int Lc = std::max(1, L);
  for (int k = 0; k <= std::max(0, N - 1); ++k) {
    const int jmax = std::min(k + 1, 2);
    for (int j = 0; j <= jmax; ++j) {
      if (k + j > 0 && coin(rng) == 0) continue;
      SphereFn a(2, Lc);
      for (int i = 0; i < a.size(); ++i) a.raw(i) = amp(rng) / (1.0 + k + j);
      H.add_term(Grade{k, j}, a);
    }
  }
  if (H.empty()) {
    SphereFn a(2, Lc);
    a.set_coeff(1, 1, 1.0);
    H.add_term(Grade{0, 0}, a);
  }
  return build_hamiltonian_field(H);
}

AsymExpansion log_power_hamiltonian(const SphereFn& a, int k) {
  if (a.dim() != 2) throw NotTwoDimensional("log_power_hamiltonian requires d=2");
  if (k < 1) throw Error("log_power_hamiltonian requires k >= 1");
  AsymExpansion H(2);
  H.add_term(Grade{k - 1, k}, a);
  return H;
}

// ---------------------------------------------------------------------------
// Euler right-hand side

namespace {

ConservationReport build_conservation_report(const VectorExpansion& rhs, int N) {
  const int d = rhs.dim();
  ConservationReport rep;
  for (int c = 0; c < d; ++c) {
    rep.a0_delta = std::max(rep.a0_delta, rhs[c].coefficient(Grade{0, 0}).norm());
    for (int k = 1; k <= N; ++k) {
      const SphereFn a = rhs[c].coefficient(Grade{k, k});
      if (a.is_zero()) continue;
      const int res_deg = k >= std::max(1, d - 2) ? resonance_degree(d, k) : -1;
      for (int l = 0; l <= a.band_limit(); ++l) {
        if (l == res_deg) continue;
        rep.resonant_checks.push_back({c, k, l, project_degree(a, l).norm()});
      }
    }
  }
  rep.pass = rep.a0_delta <= 1e-11;
  for (const auto& e : rep.resonant_checks)
    if (e.projection > 1e-10) rep.pass = false;
  return rep;
}

void require_divergence_free(const VectorExpansion& u0) {
  const AsymExpansion div = divergence(u0);
  if (div.norm() > 1e-11 * std::max(1.0, u0.norm()))
    throw NotDivergenceFree("symbolic divergence is nonzero (norm " +
                            std::to_string(div.norm()) + ")");
}

// Harmonic polynomials on R^2: h_m^c = Re(z^m), h_m^s = Im(z^m), and their
// partial derivatives d_x Re z^m = m Re z^{m-1}, d_y Re z^m = -m Im z^{m-1},
// d_x Im z^m = m Im z^{m-1}, d_y Im z^m = m Re z^{m-1}.
void z_powers(const double* x, int M, std::vector<double>& re,
              std::vector<double>& im) {
  re.assign(M + 1, 0.0);
  im.assign(M + 1, 0.0);
  re[0] = 1.0;
  for (int m = 1; m <= M; ++m) {
    re[m] = re[m - 1] * x[0] - im[m - 1] * x[1];
    im[m] = im[m - 1] * x[0] + re[m - 1] * x[1];
  }
}

struct D2Moments {
  double mass = 0.0;
  std::vector<double> mc, ms;

  explicit D2Moments(int M) : mc(M + 1, 0.0), ms(M + 1, 0.0) {}

  D2Moments& operator-=(const D2Moments& o) {
    mass -= o.mass;
    for (size_t i = 0; i < mc.size(); ++i) {
      mc[i] -= o.mc[i];
      ms[i] -= o.ms[i];
    }
    return *this;
  }
  double deviation(const D2Moments& o) const {
    double dev = std::abs(mass - o.mass);
    for (size_t i = 0; i < mc.size(); ++i)
      dev = std::max({dev, std::abs(mc[i] - o.mc[i]), std::abs(ms[i] - o.ms[i])});
    return dev;
  }
};

// Moments of G over B_2 against h (route "pressure") or against the
// gradient-route weights (-d_axis h plus the boundary flux G h n_axis).
D2Moments volume_moments(const CompactField& G, int M, int axis) {
  D2Moments mm(M);
  std::vector<double> re, im;
  G.for_each_node([&](const double* x, double w, double v) {
    const double wv = w * v;
    z_powers(x, M, re, im);
    if (axis == 0) {
      mm.mass += wv;
      for (int m = 1; m <= M; ++m) {
        mm.mc[m] += wv * re[m];
        mm.ms[m] += wv * im[m];
      }
    } else if (axis == 1) {
      for (int m = 1; m <= M; ++m) {
        mm.mc[m] += wv * (-static_cast<double>(m)) * re[m - 1];
        mm.ms[m] += wv * (-static_cast<double>(m)) * im[m - 1];
      }
    } else {
      for (int m = 1; m <= M; ++m) {
        mm.mc[m] += wv * (static_cast<double>(m)) * im[m - 1];
        mm.ms[m] += wv * (-static_cast<double>(m)) * re[m - 1];
      }
    }
  });
  return mm;
}

// Green-identity boundary terms on r = 2 for the multipole moments of
// residual sources (see euler_rhs_impl).
D2Moments boundary_moments(const AsymExpansion& P, const ScalarFieldFn& G,
                           int M, int axis, int n_ang) {
  D2Moments mm(M);
  const double R = 2.0;
  std::vector<double> re, im;
  const AsymExpansion Pc = P;
  for (int ia = 0; ia < n_ang; ++ia) {
    const double phi = 2.0 * kPi * ia / n_ang;
    const double x[2] = {R * std::cos(phi), R * std::sin(phi)};
    const double ds = 2.0 * kPi * R / n_ang;
    const double pv = Pc.empty() ? 0.0 : eval_raw(Pc, x);
    const double pr = Pc.empty() ? 0.0 : eval_raw_radial_derivative(Pc, x);
    z_powers(x, M, re, im);
    // -∮ [d_r P h - P d_r h]; d_r h_m = (m/R) h_m on homogeneous h
    for (int m = 1; m <= M; ++m) {
      mm.mc[m] += ds * (-(pr * re[m] - pv * (m / R) * re[m]));
      mm.ms[m] += ds * (-(pr * im[m] - pv * (m / R) * im[m]));
    }
    mm.mass += ds * (-pr);  // h = 1
    if (axis > 0) {
      // + ∮ G h n_axis
      const double nj = x[axis - 1] / R;
      const double gv = G(x);
      mm.mass += ds * gv * nj;
      for (int m = 1; m <= M; ++m) {
        mm.mc[m] += ds * gv * nj * re[m];
        mm.ms[m] += ds * gv * nj * im[m];
      }
    }
  }
  return mm;
}

// Shared pipeline core. For d=2 fields with a pointwise nonlinearity
// evaluator the cutoff commutators and compact parts are resolved through
// harmonic multipole moments (operator K); the moments of each residual
// source - Delta(chi * cascade) are computed by quadrature over B_2 plus
// Green-identity boundary terms at r = 2, where chi is already identically 1.
EulerRHS euler_rhs_impl(const VectorExpansion& u0, int N, ScalarFieldFn q_fn,
                        AsymExpansion q_sym, const std::vector<double>& knots,
                        const EulerOptions& opts) {
  const int d = u0.dim();
  EulerRHS out(d);
  out.q_sym = q_sym;
  q_sym.truncated(N + 2, &out.q_truncated);  // record the dropped window tail

  const int Nq = q_sym.empty() ? 0 : std::max(0, q_sym.max_k() - 2);
  const AsymExpansion P = invert_laplacian_shifted(q_sym, Nq);
  std::vector<AsymExpansion> Y;
  for (int j = 0; j < d; ++j)
    Y.push_back(invert_laplacian_shifted(partial_derivative(q_sym, j + 1), Nq + 1));

  AsymExpansion k_p(d);
  std::vector<AsymExpansion> k_grad(d, AsymExpansion(d));
  if (q_fn && d == 2) {
    const int M = N + 1;
    const CompactField G =
        sample_compact_field(2, q_fn, 2.0, knots, opts.residual_n_r,
                             opts.residual_n_ang);
    const CompactField Gfine =
        sample_compact_field(2, q_fn, 2.0, knots, 2 * opts.residual_n_r,
                             2 * opts.residual_n_ang);
    for (int route = 0; route <= d; ++route) {
      const AsymExpansion& casc = route == 0 ? P : Y[route - 1];
      D2Moments mm = volume_moments(Gfine, M, route);
      const D2Moments coarse = volume_moments(G, M, route);
      if (mm.deviation(coarse) > 1e-8)
        throw UnresolvedSupport("euler residual moments not resolved");
      const D2Moments bd =
          boundary_moments(casc, q_fn, M, route, opts.residual_n_ang);
      mm.mass += bd.mass;
      for (int m = 1; m <= M; ++m) {
        mm.mc[m] += bd.mc[m];
        mm.ms[m] += bd.ms[m];
      }
      if (route == 0) {
        k_p = multipole_from_moments_d2(mm.mass, mm.mc, mm.ms);
      } else {
        // gradient components carry no mass (Stokes on d(Q)/dx_j, Q=O(1/r^2));
        // the computed moment only verifies the bookkeeping
        if (std::abs(mm.mass) > 1e-8)
          throw Error("gradient-route mass moment should vanish, got " +
                      std::to_string(mm.mass));
        mm.mass = 0.0;
        k_grad[route - 1] = multipole_from_moments_d2(mm.mass, mm.mc, mm.ms);
      }
    }
    // diagnostic sample of the pressure-route residual
    const AsymExpansion lapP = laplacian(P);
    const AsymExpansion Pc = P;
    auto res_fn = [Pc, lapP, q_fn](const double* x) {
      return q_fn(x) - eval_laplacian_with_cutoff(Pc, lapP, x);
    };
    out.q_residual = sample_compact_field(2, res_fn, 2.0, knots,
                                          opts.residual_n_r, opts.residual_n_ang);
  }

  out.pressure = scale(add(P.truncated(N), k_p.truncated(N)), -1.0);
  const SphereFn mono = k_p.coefficient(Grade{0, 1});
  out.pressure_monopole =
      mono.is_zero() ? 0.0 : -sphere_mean(mono) / sphere_area(2);

  for (int j = 0; j < d; ++j)
    out.rhs[j] = add(Y[j], k_grad[j]).truncated(N, &out.rhs_truncated);

  out.tilde_membership =
      check_membership(out.rhs, SpaceSignature::tilde_space(d, N));
  out.report = build_conservation_report(out.rhs, N);
  return out;
}

}  // namespace

EulerRHS euler_rhs(const VectorExpansion& u0, int N) {
  require_divergence_free(u0);
  return euler_rhs_impl(u0, N, nullptr, q_nonlinearity(u0), {}, EulerOptions{});
}

EulerRHS euler_rhs(const HamiltonianField& field, int N, const EulerOptions& opts) {
  const VectorExpansion u0 = field.velocity();
  require_divergence_free(u0);
  if (field.compact) {
    // spot-check the full pointwise field at a few interior points
    const VectorFieldFn uf = field.velocity_eval();
    const double pts[3][2] = {{0.37, 0.21}, {0.9, -0.6}, {-1.1, 0.4}};
    for (const auto& p : pts) {
      const double x[3] = {p[0], p[1], 0.0};
      const FdJacobian J = fd_jacobian(2, uf, x, 2e-3);
      const double div = J.at(0, 0, 2) + J.at(1, 1, 2);
      if (std::abs(div) > std::max(1e-10, 20.0 * J.error_estimate))
        throw NotDivergenceFree("compact part fails the numeric divergence check");
    }
  }
  const AsymExpansion q_sym = q_nonlinearity(u0);
  const ScalarFieldFn q_fn = opts.compact_channel ? field.q_eval() : nullptr;
  return euler_rhs_impl(u0, N, q_fn, q_sym, field.residual_knots(), opts);
}

ConservationReport conservation_check(const VectorExpansion& u0, int N) {
  return euler_rhs(u0, N).report;
}

ConservationReport conservation_check(const HamiltonianField& field, int N) {
  EulerOptions opts;
  opts.compact_channel = false;  // the K channel never touches the (k,k) slots
  return euler_rhs(field, N, opts).report;
}

// ---------------------------------------------------------------------------
// Fourier identity (section on nontrivial integrals, d=2)

namespace {

SphereFn phi_derivative(const SphereFn& a) {
  SphereFn out(2, a.band_limit());
  for (int l = 1; l <= a.band_limit(); ++l) {
    out.set_coeff(l, 1, l * a.coeff(l, -1));
    out.set_coeff(l, -1, -l * a.coeff(l, 1));
  }
  return out;
}

}  // namespace

FourierCheck nontrivial_integrals_d2(const SphereFn& a, int k) {
  if (a.dim() != 2) throw NotTwoDimensional("nontrivial_integrals_d2 requires d=2");
  FourierCheck out;
  const SphereFn da = phi_derivative(a);
  const SphereFn cosf = direction_component(2, 1);
  const SphereFn sinf = direction_component(2, 2);

  out.computed_x = multiply(da, cosf) * (-1.0) + multiply(a, sinf) * (k - 1.0);
  out.computed_y = multiply(da, sinf) * (-1.0) + multiply(a, cosf) * (-(k - 1.0));

  // closed form: with a = sum ahat_m e^{im phi},
  // a_k^k = -i sum_l (l+k-2) ahat_{l-1} e^{il phi}.
  const int L = a.band_limit();
  const int Lc = L + 1;
  std::vector<std::complex<double>> ahat(2 * Lc + 1, 0.0);  // index m+Lc
  ahat[Lc] = a.raw(0) / std::sqrt(2.0 * kPi);
  for (int m = 1; m <= L; ++m) {
    const std::complex<double> v(a.coeff(m, 1) / (2.0 * std::sqrt(kPi)),
                                 -a.coeff(m, -1) / (2.0 * std::sqrt(kPi)));
    ahat[Lc + m] = v;
    ahat[Lc - m] = std::conj(v);
  }
  std::vector<std::complex<double>> chat(2 * Lc + 1, 0.0);
  for (int l = -Lc; l <= Lc; ++l) {
    const int src = l - 1;
    if (src < -Lc || src > Lc) continue;
    chat[Lc + l] = std::complex<double>(0.0, -1.0) *
                   (static_cast<double>(l) + k - 2.0) * ahat[Lc + src];
  }
  SphereFn cx(2, Lc), cy(2, Lc);
  cx.raw(0) = std::sqrt(2.0 * kPi) * chat[Lc].real();
  cy.raw(0) = std::sqrt(2.0 * kPi) * chat[Lc].imag();
  for (int l = 1; l <= Lc; ++l) {
    const std::complex<double> cp = chat[Lc + l], cm = chat[Lc - l];
    // real part: (Re cp + Re cm) cos + (-Im cp + Im cm) sin
    cx.set_coeff(l, 1, std::sqrt(kPi) * (cp.real() + cm.real()));
    cx.set_coeff(l, -1, std::sqrt(kPi) * (cm.imag() - cp.imag()));
    // imag part: (Im cp + Im cm) cos + (Re cp - Re cm) sin
    cy.set_coeff(l, 1, std::sqrt(kPi) * (cp.imag() + cm.imag()));
    cy.set_coeff(l, -1, std::sqrt(kPi) * (cp.real() - cm.real()));
  }
  out.closed_x = cx;
  out.closed_y = cy;

  double dev = 0.0;
  const SphereFn dx = out.computed_x - out.closed_x;
  const SphereFn dy = out.computed_y - out.closed_y;
  dev = std::max(dx.norm(), dy.norm());
  out.max_deviation = dev;
  return out;
}

}  // namespace farfield
