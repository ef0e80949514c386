#include "farfield/laplace_inverse.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "farfield/cutoff.hpp"
#include "farfield/errors.hpp"

namespace farfield {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEigenSplitTol = 1e-12;  // relative eigensplit threshold

// Process one slot k: source coefficients s[l] at grades (k+2, l), l
// descending so the cascade pushes land on slots not yet consumed. Emits the
// preimage grades into `out`.
void invert_block(int d, int k, std::map<int, SphereFn, std::greater<int>>& src,
                  AsymExpansion& out) {
  while (!src.empty()) {
    const int l = src.begin()->first;
    SphereFn a = src.begin()->second;
    src.erase(src.begin());
    if (a.norm() <= AsymExpansion::prune_tolerance()) continue;

    const double lambda = resonance_lambda(d, k);
    const int deg = resonance_degree(d, k);
    SphereFn eig = deg >= 0 ? project_degree(a, deg) : SphereFn(d, 0);
    if (eig.norm() <= kEigenSplitTol * a.norm()) eig = SphereFn(d, 0);
    const SphereFn comp = a - eig;

    if (comp.norm() > AsymExpansion::prune_tolerance()) {
      const SphereFn b = helmholtz_solve(comp, lambda);
      out.add_term(Grade{k, l}, b);
      if (l >= 1) {
        auto [it, inserted] = src.try_emplace(l - 1, SphereFn(d, 0));
        it->second += (static_cast<double>(l) * (2 * k + 2 - d)) * b;
      }
      if (l >= 2) {
        auto [it, inserted] = src.try_emplace(l - 2, SphereFn(d, 0));
        it->second += (-static_cast<double>(l) * (l - 1)) * b;
      }
    }

    if (eig.norm() > AsymExpansion::prune_tolerance()) {
      if (k == 0) {
        // d=2 slot 0: a resonant constant c/r^2 has preimage
        // c (log r)^{l+2} / ((l+2)(l+1)) and no cascade pushes.
        out.add_term(Grade{0, l + 2},
                     eig * (1.0 / ((l + 2.0) * (l + 1.0))));
      } else {
        out.add_term(Grade{k, l + 1},
                     eig * (1.0 / ((l + 1.0) * (d - 2.0 - 2.0 * k))));
        if (l >= 1) {
          auto [it, inserted] = src.try_emplace(l - 1, SphereFn(d, 0));
          it->second += (static_cast<double>(l) / (2 * k + 2 - d)) * eig;
        }
      }
    }
  }
}

AsymExpansion run_cascade(const AsymExpansion& source, int k_out_min,
                          int k_out_max) {
  const int d = source.dim();
  AsymExpansion out(d);
  for (int k = k_out_min; k <= k_out_max; ++k) {
    std::map<int, SphereFn, std::greater<int>> block;
    for (const auto& [g, a] : source.terms())
      if (g.k == k + 2) block.emplace(g.j, a);
    invert_block(d, k, block, out);
  }
  return out;
}

void validate_window(const AsymExpansion& source, int kmin, int kmax, int jshift,
                     const char* what) {
  for (const auto& [g, a] : source.terms()) {
    if (g.k < kmin || g.k > kmax || g.j > g.k - jshift)
      throw MalformedSource(std::string(what) + ": grade (k=" +
                            std::to_string(g.k) + ", j=" + std::to_string(g.j) +
                            ") outside the admissible window");
  }
}

// Exact tail integral int_2^inf (log r)^j r^{1-k} dr (k >= 3).
double tail_integral(int k, int j) {
  const double s = k - 2.0;
  const double A = std::log(2.0);
  const double eA = std::pow(2.0, -s);
  double t = eA / s;  // j = 0
  for (int m = 1; m <= j; ++m) t = (std::pow(A, m) * eA + m * t) / s;
  return t;
}

// int_1^2 chi(r) (log r)^j r^{1-k} dr, composite Simpson (analytic integrand,
// absolute target well below 1e-12).
double ramp_integral(int k, int j) {
  const int m = 4096;
  const double h = 1.0 / m;
  auto f = [&](double r) {
    return cutoff(r) * std::pow(std::log(r), j) * std::pow(r, 1.0 - k);
  };
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    const double r0 = 1.0 + i * h, r1 = r0 + h;
    sum += (f(r0) + 4.0 * f(0.5 * (r0 + r1)) + f(r1)) * h / 6.0;
  }
  return sum;
}

}  // namespace

// ---------------------------------------------------------------------------

AsymExpansion InversionResult::full_expansion() const {
  AsymExpansion out = expansion;
  if (expansion.dim() == 2 && monopole_log != 0.0)
    out.add_term(Grade{0, 1}, SphereFn::constant(2, monopole_log));
  return out;
}

InversionResult invert_laplacian_asym(const AsymExpansion& source,
                                      const SpaceSignature& sig,
                                      const InversionOptions& opts) {
  const int d = source.dim();
  if (sig.d != d) throw DimensionMismatch("signature dimension mismatch");
  if (sig.variant != SpaceVariant::plain || sig.n != 3 || sig.ell != -3)
    throw MalformedSource("inversion expects the source window (3, N+3; -3)");
  validate_window(source, 3, sig.N, 3, "invert_laplacian_asym");

  InversionResult res(d);
  res.expansion = run_cascade(source, 1, sig.N - 2);
  if (d == 2) res.monopole_log = mass_monopole(source);
  if (opts.compute_residual) {
    const ScalarFieldFn rf = inversion_residual_fn(source, res);
    res.residual = sample_compact_field(d, rf, opts.residual_radius, {1.0, 2.0},
                                        opts.residual_n_r, opts.residual_n_ang);
  }
  return res;
}

AsymExpansion invert_laplacian_shifted(const AsymExpansion& source, int N_out) {
  validate_window(source, 2, N_out + 2, 2, "invert_laplacian_shifted");
  return run_cascade(source, 0, N_out);
}

ScalarFieldFn inversion_residual_fn(const AsymExpansion& source,
                                    const InversionResult& result) {
  const AsymExpansion full = result.full_expansion();
  const AsymExpansion lap = laplacian(full);
  const AsymExpansion src = source;
  return [src, full, lap](const double* x) {
    return eval_dense(src, x) - eval_laplacian_with_cutoff(full, lap, x);
  };
}

double source_mass(const AsymExpansion& source) {
  if (source.dim() != 2)
    throw NotTwoDimensional("source mass is defined for d=2 only");
  double mass = 0.0;
  for (const auto& [g, a] : source.terms()) {
    const double mean = sphere_mean(a);
    if (g.k <= 2) {
      if (std::abs(mean) > 1e-10 * std::max(1.0, a.norm()))
        throw Error("source is not integrable: grade k=" + std::to_string(g.k) +
                    " carries nonzero sphere mean");
      continue;
    }
    mass += mean * (ramp_integral(g.k, g.j) + tail_integral(g.k, g.j));
  }
  return mass;
}

double mass_monopole(const AsymExpansion& source) {
  return source_mass(source) / (2.0 * kPi);
}

double mass_monopole(const AsymExpansion& source, const CompactField& compact) {
  if (compact.dim() != 2)
    throw NotTwoDimensional("mass monopole is defined for d=2 only");
  return (source_mass(source) + compact.integral()) / (2.0 * kPi);
}

// ---------------------------------------------------------------------------

namespace {

struct MultipoleMoments {
  double mass = 0.0;
  // d=2: cos/sin moments per degree; d=3: coefficients per (l,m) index.
  std::vector<double> mc, ms;     // d=2, index k = 1..N
  std::vector<double> q;          // d=3, basis-index layout up to degree N-1
  int max_degree = 0;
};

MultipoleMoments collect_moments(const CompactField& g, int N) {
  MultipoleMoments mm;
  const int d = g.dim();
  if (d == 2) {
    mm.mc.assign(N + 1, 0.0);
    mm.ms.assign(N + 1, 0.0);
    mm.max_degree = N;
    g.for_each_node([&](const double* x, double w, double v) {
      const double wv = w * v;
      mm.mass += wv;
      double re = 1.0, im = 0.0;
      for (int k = 1; k <= N; ++k) {
        const double re2 = re * x[0] - im * x[1];
        im = im * x[0] + re * x[1];
        re = re2;
        mm.mc[k] += wv * re;
        mm.ms[k] += wv * im;
      }
    });
    return mm;
  }
  const int Lq = std::max(0, N - 1);
  mm.max_degree = Lq;
  const int nb = SphereFn::block_offset(3, Lq) + SphereFn::block_size(3, Lq);
  mm.q.assign(nb, 0.0);
  std::vector<double> row(nb);
  g.for_each_node([&](const double* x, double w, double v) {
    const double wv = w * v;
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    mm.mass += wv;
    if (r <= 0.0) return;
    eval_basis_row(3, Lq, x, row.data());
    double rk = 1.0;
    for (int l = 0; l <= Lq; ++l) {
      const int off = SphereFn::block_offset(3, l);
      for (int i = 0; i < SphereFn::block_size(3, l); ++i)
        mm.q[off + i] += wv * rk * row[off + i];
      rk *= r;
    }
  });
  return mm;
}

AsymExpansion assemble_K(int d, int N, const MultipoleMoments& mm) {
  AsymExpansion out(d);
  if (d == 2) return multipole_from_moments_d2(mm.mass, mm.mc, mm.ms);
  (void)N;
  for (int l = 0; l <= mm.max_degree; ++l) {
    SphereFn a(3, l);
    const int off = SphereFn::block_offset(3, l);
    for (int i = 0; i < SphereFn::block_size(3, l); ++i)
      a.raw(off + i) = -mm.q[off + i] / (2.0 * l + 1.0);
    out.add_term(Grade{l + 1, 0}, a);
  }
  return out;
}

double moment_deviation(const MultipoleMoments& a, const MultipoleMoments& b) {
  double dev = std::abs(a.mass - b.mass);
  for (size_t i = 0; i < a.mc.size(); ++i)
    dev = std::max({dev, std::abs(a.mc[i] - b.mc[i]), std::abs(a.ms[i] - b.ms[i])});
  for (size_t i = 0; i < a.q.size(); ++i)
    dev = std::max(dev, std::abs(a.q[i] - b.q[i]));
  return dev;
}

}  // namespace

AsymExpansion resolve_with_multipoles(const AsymExpansion& inverse,
                                      const ScalarFieldFn& source_fn,
                                      int N_moments, double support_radius,
                                      std::vector<double> knots, int n_r,
                                      int n_ang) {
  const AsymExpansion inv = inverse;
  const AsymExpansion lap = laplacian(inverse);
  auto residual = [inv, lap, source_fn](const double* x) {
    return source_fn(x) - eval_laplacian_with_cutoff(inv, lap, x);
  };
  const CompactField res = sample_compact_field(
      inverse.dim(), residual, support_radius, std::move(knots), n_r, n_ang);
  return add(inverse, multipole_K(res, N_moments));
}

AsymExpansion multipole_from_moments_d2(double mass,
                                        const std::vector<double>& mc,
                                        const std::vector<double>& ms) {
  AsymExpansion out(2);
  if (std::abs(mass) > 0.0)
    out.add_term(Grade{0, 1}, SphereFn::constant(2, mass / (2.0 * kPi)));
  const double rpi = std::sqrt(kPi);
  for (size_t k = 1; k < mc.size(); ++k) {
    SphereFn a(2, static_cast<int>(k));
    a.set_coeff(static_cast<int>(k), 1, -mc[k] * rpi / (2.0 * kPi * k));
    a.set_coeff(static_cast<int>(k), -1, -ms[k] * rpi / (2.0 * kPi * k));
    out.add_term(Grade{static_cast<int>(k), 0}, a);
  }
  return out;
}

AsymExpansion multipole_K(const CompactField& g, int N) {
  if (N < 1) throw Error("multipole_K requires N >= 1");
  MultipoleMoments mm = collect_moments(g, N);
  double est = 0.0;
  if (g.has_source()) {
    const CompactField fine =
        sample_compact_field(g.dim(), g.source(), g.support_radius(), g.knots(),
                             2 * g.radial_count(), 2 * g.angular_count());
    const MultipoleMoments fm = collect_moments(fine, N);
    est = moment_deviation(mm, fm);
    mm = fm;
  } else {
    // sampled-only field: decimate the angular direction for the estimate
    est = 0.0;
  }
  if (est > 1e-8)
    throw UnresolvedSupport("multipole moments not resolved: estimated error " +
                            std::to_string(est));
  return assemble_K(g.dim(), N, mm);
}

}  // namespace farfield
