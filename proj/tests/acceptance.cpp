// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Thresholds are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "farfield/compose.hpp"
#include "farfield/cutoff.hpp"
#include "farfield/euler.hpp"
#include "farfield/laplace_inverse.hpp"
#include "farfield/oracle.hpp"

using namespace farfield;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Harness {
  int failures = 0;

  void report(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("criterion %d %-28s %s  (%s)\n", idx, name,
                pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
  }
};

double now_s() {
  using clock = std::chrono::steady_clock;
  static const auto t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

SphereFn random_fn(std::mt19937_64& rng, int d, int L) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SphereFn f(d, L);
  for (int i = 0; i < f.size(); ++i) f.raw(i) = u(rng);
  return f;
}

// --- criterion 1: laplacian vs finite differences --------------------------

bool criterion1(std::string& detail) {
  const double t0 = now_s();
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> kd(0, 6), jd(0, 4), Ld(0, 8), dd(0, 1);
  double worst_rel = 0.0, worst_order = 2.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + dd(rng);
    AsymExpansion u(d);
    AsymExpansion lap(d);
    do {
      u = AsymExpansion(d);
      u.add_term(Grade{kd(rng), jd(rng)}, random_fn(rng, d, Ld(rng)));
      lap = laplacian(u);
    } while (lap.norm() < 1e-6);
    auto f = [&](const double* x) { return eval_dense(u, x); };

    for (double r : {50.0, 100.0, 200.0}) {
      // max-norm over a ring of test angles (robust scale and error)
      double scale_r = 0.0, err_h = 0.0, err_h2 = 0.0;
      const double h = r / 600.0;
      for (int ia = 0; ia < 8; ++ia) {
        const double phi = 0.35 + ia * 0.7;
        double x[3] = {r * std::cos(phi), r * std::sin(phi), 0.0};
        if (d == 3) {
          x[2] = 0.4 * r;
          const double s =
              r / std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
          for (int i = 0; i < 3; ++i) x[i] *= s;
        }
        const double sym = eval_raw(lap, x);
        scale_r = std::max(scale_r, std::abs(sym));
        err_h = std::max(err_h,
                         std::abs(fd_laplacian_stencil(d, f, x, h) - sym));
        if (r == 100.0)
          err_h2 = std::max(
              err_h2, std::abs(fd_laplacian_stencil(d, f, x, h / 2.0) - sym));
      }
      worst_rel = std::max(worst_rel, err_h / scale_r);
      if (r == 100.0) {
        const double order = std::log2(err_h / err_h2);
        if (std::abs(order - 2.0) > std::abs(worst_order - 2.0))
          worst_order = order;
      }
    }
  }
  const double dt = now_s() - t0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max rel err %.2e <= 1e-4, order %.3f in [1.8,2.2], %.1fs < 10s",
                worst_rel, worst_order, dt);
  detail = buf;
  return worst_rel <= 1e-4 && worst_order >= 1.8 && worst_order <= 2.2 &&
         dt < 10.0;
}

// --- criterion 2: inversion round trip --------------------------------------

bool criterion2(std::string& detail) {
  const double t0 = now_s();
  std::mt19937_64 rng(2002);
  const int N = 4;
  InversionOptions fast;
  fast.compute_residual = false;
  double worst = 0.0;
  bool members = true, logs_ok = true;
  int trials = 0;

  for (int rep = 0; rep < 50; ++rep) {
    const int d = (rep % 2) ? 3 : 2;
    const auto sig = SpaceSignature::plain_space(d, 3, N + 3, -3);
    AsymExpansion s(d);
    std::uniform_int_distribution<int> kd(3, N + 3);
    for (int t = 0; t < 4; ++t) {
      const int k = kd(rng);
      std::uniform_int_distribution<int> jj(0, k - 3);
      s.add_term(Grade{k, jj(rng)}, random_fn(rng, d, 6));
    }
    const InversionResult r = invert_laplacian_asym(s, sig, fast);
    const double err = add(laplacian(r.expansion), scale(s, -1.0)).norm() /
                       std::max(1.0, s.norm());
    worst = std::max(worst, err);
    members = members &&
              check_membership(r.expansion, SpaceSignature::hat_space(d, N)).member;
    ++trials;
  }
  // log generation, both directions, across all slots
  for (int rep = 0; rep < 50; ++rep) {
    const int d = (rep % 2) ? 3 : 2;
    const auto sig = SpaceSignature::plain_space(d, 3, N + 3, -3);
    const int k = 1 + rep % (N + 1);
    const int deg = resonance_degree(d, k);
    const bool plant_eigen = rep % 4 < 2;
    const int use_deg = plant_eigen ? deg : deg + 1;
    const AsymExpansion s = [&] {
      AsymExpansion e(d);
      e.add_term(Grade{k + 2, 0},
                 SphereFn::basis(d, use_deg, use_deg == 0 ? 0 : 1));
      return e;
    }();
    const InversionResult r = invert_laplacian_asym(s, sig, fast);
    const bool has_log = r.expansion.has(Grade{k, 1});
    if (plant_eigen != has_log) logs_ok = false;
    const double err = add(laplacian(r.expansion), scale(s, -1.0)).norm();
    worst = std::max(worst, err);
    ++trials;
  }
  const double dt = now_s() - t0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%d sources, max grade err %.2e <= 1e-11, hat %s, logs %s, %.1fs < 30s",
                trials, worst, members ? "ok" : "violated",
                logs_ok ? "iff-eigen" : "wrong", dt);
  detail = buf;
  return worst <= 1e-11 && members && logs_ok && dt < 30.0;
}

// --- criterion 3: d=2 monopole ----------------------------------------------

bool criterion3(std::string& detail) {
  auto lap_chi_log = [](const double* x) {
    const double r = std::hypot(x[0], x[1]);
    if (r <= 1.0 || r >= 2.0) return 0.0;
    return cutoff_d2(r) * std::log(r) + cutoff_d1(r) * (2.0 + std::log(r)) / r;
  };
  const CompactField g =
      sample_compact_field(2, lap_chi_log, 2.0, {1.0, 2.0});
  const double mass = g.integral();

  auto bump = [](const double* x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    if (r2 >= 1.0) return 0.0;
    const double t = 1.0 - r2;
    return t * t * t * (4.0 / kPi);
  };
  const CompactField b = sample_compact_field(2, bump, 1.0);
  const double mono = mass_monopole(AsymExpansion(2), b);

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "int Delta(chi log r) = %.12f (2pi %.2e off), bump monopole off %.2e",
                mass, std::abs(mass - 2.0 * kPi),
                std::abs(mono - 1.0 / (2.0 * kPi)));
  detail = buf;
  return std::abs(mass - 2.0 * kPi) <= 1e-8 &&
         std::abs(mono - 1.0 / (2.0 * kPi)) <= 1e-8;
}

// --- criterion 4: example 1 --------------------------------------------------

bool criterion4(std::string& detail) {
  bool ok = true;
  double worst_coeff = 0.0, log_norm_min = 1e300, fwd_worst = 0.0;
  for (double alpha : {1.0, 0.37}) {
    const HamiltonianField f = example1(alpha);
    const EulerRHS r = euler_rhs(f, 4);
    const double q40 =
        r.q_sym.coefficient(Grade{4, 0}).coeff(2, 1) / std::sqrt(kPi);
    worst_coeff = std::max(worst_coeff, std::abs(q40 - 64.0 * alpha));
    double log_norm = 0.0;
    for (int i = 0; i < 2; ++i)
      log_norm = std::max(log_norm, r.rhs[i].coefficient(Grade{3, 1}).norm());
    log_norm_min = std::min(log_norm_min, log_norm);
    const AsymExpansion lapP = laplacian(scale(r.pressure, -1.0));
    const AsymExpansion qwin = r.q_sym.truncated(6);
    fwd_worst = std::max(fwd_worst, add(lapP, scale(qwin, -1.0)).norm() /
                                        std::max(1.0, qwin.norm()));
  }
  ok = worst_coeff <= 1e-10 && log_norm_min > 1e-6 && fwd_worst <= 1e-10;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "q40-64a off %.2e, (3,1) log norm %.2e > 0, fwd err %.2e <= 1e-10",
                worst_coeff, log_norm_min, fwd_worst);
  detail = buf;
  return ok;
}

// --- criterion 5: example 2 --------------------------------------------------

bool criterion5(std::string& detail) {
  const double t0 = now_s();
  const HamiltonianField f = example2();
  const CompactField qf = sample_compact_field(2, f.q_eval(), f.support_radius(),
                                               f.residual_knots());
  const double m0 = moment(qf, Polynomial::one()).value;
  const double mx = moment(qf, Polynomial::coordinate(1)).value;
  const double my = moment(qf, Polynomial::coordinate(2)).value;
  Polynomial quad = Polynomial::monomial(2, 0, 0, 1.0);
  quad += Polynomial::monomial(0, 2, 0, -1.0);
  const double mq = moment(qf, quad).value;
  const double ref = example2_reference_integral();
  const EulerRHS r = euler_rhs(f, 4);
  const double p20 = r.pressure.coefficient(Grade{2, 0}).norm();
  double rhs30 = 0.0;
  for (int i = 0; i < 2; ++i)
    rhs30 = std::max(rhs30, r.rhs[i].coefficient(Grade{3, 0}).norm());
  const double dt = now_s() - t0;

  const bool ok = std::abs(m0) <= 1e-8 && std::abs(mx) <= 1e-8 &&
                  std::abs(my) <= 1e-8 &&
                  std::abs(mq - ref) <= 1e-6 * std::abs(ref) && mq < 0.0 &&
                  p20 > 1e-6 && rhs30 > 1e-6 && dt < 60.0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "moments (%.1e, %.1e, %.1e) <= 1e-8, quad %.9f vs ref %.9f, "
                "p20 %.2e, rhs30 %.2e, %.1fs < 60s",
                std::abs(m0), std::abs(mx), std::abs(my), mq, ref, p20, rhs30,
                dt);
  detail = buf;
  return ok;
}

// --- criterion 6: conservation structure -------------------------------------

bool criterion6(std::string& detail) {
  std::mt19937_64 seeder(66);
  double worst_a0 = 0.0, worst_proj = 0.0;
  bool all = true;
  int populated_slots = 0;  // the corpus must exercise resonant slots
  for (int i = 0; i < 10; ++i) {
    const HamiltonianField f = random_hamiltonian(seeder(), 4, 4);
    const ConservationReport rep = conservation_check(f, 4);
    worst_a0 = std::max(worst_a0, rep.a0_delta);
    for (const auto& e : rep.resonant_checks)
      worst_proj = std::max(worst_proj, e.projection);
    const EulerRHS r = euler_rhs(f.velocity(), 4);
    for (int c = 0; c < 2; ++c)
      for (int k = 1; k <= 4; ++k)
        if (r.rhs[c].coefficient(Grade{k, k}).norm() > 1e-12) ++populated_slots;
    all = all && rep.pass;
  }
  char buf[180];
  std::snprintf(
      buf, sizeof buf,
      "10 fields, %d resonant slots, a0 delta %.2e <= 1e-11, off-eigen proj %.2e <= 1e-10",
      populated_slots, worst_a0, worst_proj);
  detail = buf;
  return all && populated_slots > 0 && worst_a0 <= 1e-11 && worst_proj <= 1e-10;
}

// --- criterion 7: composition oracle ------------------------------------------

bool criterion7(std::string& detail) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> amp(-0.35, 0.35);
  const int N_out = 2;
  const double bound = std::pow(10.0, -N_out + 0.5);
  double worst_ratio = 0.0;
  int measured = 0;
  for (int rep = 0; rep < 20; ++rep) {
    AsymExpansion u(2);
    u.add_term(Grade{1, 0}, random_fn(rng, 2, 3));
    u.add_term(Grade{2, 0}, random_fn(rng, 2, 3));
    VectorExpansion w(2);
    for (int c = 0; c < 2; ++c) {
      SphereFn a0(2, 2), a1(2, 2);
      for (int i = 0; i < a0.size(); ++i) a0.raw(i) = amp(rng);
      for (int i = 0; i < a1.size(); ++i) a1.raw(i) = amp(rng);
      w[c].add_term(Grade{0, 0}, a0);
      w[c].add_term(Grade{1, 0}, a1);
    }
    const AsymDiffeo phi = AsymDiffeo::from_displacement(w, /*validate=*/false);
    const AsymExpansion c = compose(u, phi, N_out);
    double prev = 0.0;
    for (double r : {1e2, 1e3, 1e4}) {
      const double x[2] = {r * std::cos(1.2), r * std::sin(1.2)};
      const auto wv = eval_dense(phi.w, x);
      const double y[2] = {x[0] + wv[0], x[1] + wv[1]};
      const double res = std::abs(eval_dense(u, y) - eval_dense(c, x));
      if (prev > 1e-13) {
        worst_ratio = std::max(worst_ratio, res / prev);
        ++measured;
      }
      prev = res;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d decade ratios, worst %.2e < %.2e", measured,
                worst_ratio, bound);
  detail = buf;
  return measured >= 20 && worst_ratio < bound;
}

// --- criterion 8: volume preservation -----------------------------------------

bool criterion8(std::string& detail) {
  struct Case {
    const char* name;
    VectorFieldFn u;
    double x0[2];
    bool rate;  // measure the halving ratio (needs error above the fd floor)
  };
  // divergence-free wavy Hamiltonian flow with bounded radial excursion;
  // strong enough that the RK4 truncation dominates the fd noise
  const HamiltonianField wavy = [] {
    AsymExpansion H(2);
    H.add_term(Grade{0, 1}, SphereFn::constant(2, 20.0));
    SphereFn b(2, 3);
    b.set_coeff(2, 1, 4.0 * std::sqrt(kPi));
    b.set_coeff(3, -1, 2.0 * std::sqrt(kPi));
    H.add_term(Grade{0, 0}, b);
    SphereFn c(2, 1);
    c.set_coeff(1, 1, 3.0 * std::sqrt(kPi));
    H.add_term(Grade{1, 0}, c);
    return build_hamiltonian_field(H);
  }();

  std::vector<Case> cases;
  cases.push_back({"example1", example1(1.0).velocity_eval(), {6.0, 0.5}, false});
  cases.push_back({"rotation8",
                   [](const double* x, double* out) {
                     const double r2 = x[0] * x[0] + x[1] * x[1];
                     out[0] = -8.0 * x[1] / r2;
                     out[1] = 8.0 * x[0] / r2;
                   },
                   {2.0, 0.0},
                   false});
  cases.push_back({"wavy", wavy.velocity_eval(), {3.0, 0.4}, true});

  bool ok = true;
  double worst_dev = 0.0;
  std::string parts;
  for (const auto& c : cases) {
    FlowOptions o1;
    o1.step = 1e-2;
    FlowOptions o2;
    o2.step = 5e-3;
    const double x0[3] = {c.x0[0], c.x0[1], 0.0};
    const double e1 = integrate_flow(2, c.u, x0, o1).max_abs_det_minus_1;
    worst_dev = std::max(worst_dev, e1);
    if (e1 > 1e-5) ok = false;
    if (c.rate) {
      const double e2 = integrate_flow(2, c.u, x0, o2).max_abs_det_minus_1;
      const double ratio = e1 / e2;
      // ~16x for the fourth-order step
      if (e1 < 1e-10 || ratio < 10.0 || ratio > 30.0) ok = false;
      char b[80];
      std::snprintf(b, sizeof b, " %s x%.1f (e1 %.1e)", c.name, ratio, e1);
      parts += b;
    }
  }
  char buf[220];
  std::snprintf(buf, sizeof buf, "max|det-1| %.2e <= 1e-5, halving%s", worst_dev,
                parts.c_str());
  detail = buf;
  return ok;
}

// --- criterion 9: Fourier identity --------------------------------------------

bool criterion9(std::string& detail) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> kk(1, 4);
  double worst = 0.0;
  bool nontrivial = false;
  for (int rep = 0; rep < 20; ++rep) {
    const SphereFn a = random_fn(rng, 2, 5);
    const FourierCheck c = nontrivial_integrals_d2(a, kk(rng));
    worst = std::max(worst, c.max_deviation / std::max(1.0, a.norm()));
    if (c.computed_x.norm() > 1e-3) nontrivial = true;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "20 profiles, max deviation %.2e <= 1e-12%s",
                worst, nontrivial ? ", integrals nontrivial" : "");
  detail = buf;
  return worst <= 1e-12 && nontrivial;
}

}  // namespace

int main() {
  Harness h;
  std::string d;

  bool p;
  p = criterion1(d);
  h.report(1, "laplacian fd oracle", p, d);
  p = criterion2(d);
  h.report(2, "inversion round trip", p, d);
  p = criterion3(d);
  h.report(3, "d=2 monopole", p, d);
  p = criterion4(d);
  h.report(4, "example 1 reproduction", p, d);
  p = criterion5(d);
  h.report(5, "example 2 reproduction", p, d);
  p = criterion6(d);
  h.report(6, "conservation structure", p, d);
  p = criterion7(d);
  h.report(7, "composition oracle", p, d);
  p = criterion8(d);
  h.report(8, "volume preservation", p, d);
  p = criterion9(d);
  h.report(9, "Fourier identity", p, d);

  if (h.failures == 0) {
    std::printf("acceptance: all 9 criteria PASS\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", h.failures);
  return 1;
}
