// farfield: asymptotic-expansion calculus for incompressible flow far fields.
//
// Subcommands operate on expansion documents (line-delimited JSON) and emit
// CSV tables plus machine-readable PASS/FAIL summaries. Exit codes: 0 pass,
// 2 malformed input, 3 precondition or check failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "farfield/compose.hpp"
#include "farfield/document.hpp"
#include "farfield/euler.hpp"
#include "farfield/laplace_inverse.hpp"
#include "farfield/oracle.hpp"

using namespace farfield;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fd(double v) { return format_double(v); }

ExpansionDocument read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open input file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file " + path);
  out << text;
}

struct Summary {
  bool all_pass = true;
  std::string lines;

  void check(const std::string& name, bool ok, double value, double threshold) {
    all_pass = all_pass && ok;
    lines += std::string(ok ? "PASS" : "FAIL") + "," + name + "," + fd(value) +
             "," + fd(threshold) + "\n";
  }
};

void emit_summary(const Summary& s) {
  std::cout << "check,name,value,threshold\n" << s.lines;
  std::cout << (s.all_pass ? "RESULT,PASS\n" : "RESULT,FAIL\n");
}

void append_expansion_rows(std::string& csv, const std::string& field,
                           const AsymExpansion& u) {
  for (const auto& [g, a] : u.terms()) {
    for (int l = 0; l <= a.band_limit(); ++l) {
      const int off = SphereFn::block_offset(a.dim(), l);
      for (int i = 0; i < SphereFn::block_size(a.dim(), l); ++i) {
        const double c = a.raw(off + i);
        if (c == 0.0) continue;
        const int m = a.dim() == 2 ? (l == 0 ? 0 : (i == 0 ? 1 : -1)) : i - l;
        csv += field + "," + std::to_string(g.k) + "," + std::to_string(g.j) +
               "," + std::to_string(l) + "," + std::to_string(m) + "," + fd(c) +
               "\n";
      }
    }
  }
}

SpaceSignature signature_for(const std::string& space, int d, int n, int N,
                             int ell) {
  if (space == "plain") return SpaceSignature::plain_space(d, n, N, ell);
  if (space == "hat") return SpaceSignature::hat_space(d, N);
  if (space == "tilde") return SpaceSignature::tilde_space(d, N);
  if (space == "star") return SpaceSignature::star_space(d, N);
  throw Error("unknown space variant '" + space + "'");
}

// ---------------------------------------------------------------------------

int cmd_laplacian(const std::string& in, const std::string& out) {
  const ExpansionDocument doc = read_document(in);
  if (doc.is_vector()) throw DocumentError("laplacian expects a scalar document");
  const AsymExpansion lap = laplacian(doc.scalar());
  SpaceSignature sig = doc.signature;
  if (sig.variant == SpaceVariant::plain) {
    sig = SpaceSignature::plain_space(doc.d, sig.n + 2, sig.N + 2, sig.ell - 2);
    const MembershipReport rep = check_membership(lap, sig);
    std::cout << "membership,plain," << (rep.member ? "member" : "non-member")
              << "\n";
  }
  write_text(out, serialize_document(make_document(lap, sig)));
  return 0;
}

int cmd_invert(const std::string& in, const std::string& out, int order,
               bool strict) {
  const ExpansionDocument doc = read_document(in);
  if (doc.is_vector()) throw DocumentError("invert expects a scalar document");
  const AsymExpansion& src = doc.scalar();
  const int N = order >= 0 ? order
                           : (doc.signature.variant == SpaceVariant::plain
                                  ? doc.signature.N - 3
                                  : (src.empty() ? 0 : src.max_k() - 3));
  const auto sig = SpaceSignature::plain_space(doc.d, 3, N + 3, -3);
  const InversionResult res = invert_laplacian_asym(src, sig);

  const auto hat = SpaceSignature::hat_space(doc.d, N);
  const MembershipReport rep = check_membership(res.expansion, hat);
  std::cout << "membership,hat," << (rep.member ? "member" : "non-member")
            << "\n";
  if (doc.d == 2) std::cout << "monopole_log," << fd(res.monopole_log) << "\n";
  const ScalarFieldFn rf = inversion_residual_fn(src, res);
  std::cout << "residual_radius,value\n";
  for (double r : {100.0, 200.0, 400.0}) {
    const double x[3] = {r * std::cos(0.7), r * std::sin(0.7), 0.0};
    std::cout << fd(r) << "," << fd(rf(x)) << "\n";
  }
  write_text(out, serialize_document(make_document(res.expansion, hat)));
  if (strict && !rep.member) return 3;
  return 0;
}

int cmd_euler_rhs(const std::string& in, const std::string& out, int order,
                  bool strict) {
  const ExpansionDocument doc = read_document(in);
  if (!doc.is_vector()) throw DocumentError("euler-rhs expects a vector document");
  const VectorExpansion u0 = doc.vector();
  const int N = order >= 0 ? order : doc.signature.N;
  const EulerRHS r = euler_rhs(u0, N);

  Summary s;
  s.check("a0_delta", r.report.a0_delta <= 1e-11, r.report.a0_delta, 1e-11);
  double maxproj = 0.0;
  for (const auto& e : r.report.resonant_checks)
    maxproj = std::max(maxproj, e.projection);
  s.check("resonant_projection", maxproj <= 1e-10, maxproj, 1e-10);
  s.check("tilde_membership", r.tilde_membership.member,
          r.tilde_membership.member ? 1.0 : 0.0, 1.0);
  if (doc.d == 2)
    std::cout << "pressure_monopole," << fd(r.pressure_monopole) << "\n";
  emit_summary(s);
  write_text(out, serialize_document(make_document(
                      r.rhs, SpaceSignature::tilde_space(doc.d, N))));
  return (strict && !s.all_pass) ? 3 : 0;
}

int cmd_example1(double alpha, int N, const std::string& out, bool strict) {
  const HamiltonianField f = example1(alpha);
  const EulerRHS r = euler_rhs(f, N);

  std::string csv = "field,k,j,l,m,coeff\n";
  append_expansion_rows(csv, "Q", r.q_sym);
  append_expansion_rows(csv, "pressure", r.pressure);
  append_expansion_rows(csv, "rhs_x", r.rhs[0]);
  append_expansion_rows(csv, "rhs_y", r.rhs[1]);
  write_text(out, csv);

  Summary s;
  const double q40 = r.q_sym.coefficient(Grade{4, 0}).coeff(2, 1) / std::sqrt(kPi);
  s.check("q40_cos2phi", std::abs(q40 - 64.0 * alpha) <= 1e-10, q40,
          64.0 * alpha);
  double log_norm = 0.0;
  for (int i = 0; i < 2; ++i)
    log_norm = std::max(log_norm, r.rhs[i].coefficient(Grade{3, 1}).norm());
  s.check("rhs_log_term_31", log_norm > 1e-6, log_norm, 1e-6);
  const AsymExpansion lapP = laplacian(scale(r.pressure, -1.0));
  const AsymExpansion qwin = r.q_sym.truncated(N + 2);
  const double fwd = add(lapP, scale(qwin, -1.0)).norm();
  s.check("forward_delta_matches_q", fwd <= 1e-10 * std::max(1.0, qwin.norm()),
          fwd, 1e-10);
  emit_summary(s);
  return (strict && !s.all_pass) ? 3 : 0;
}

int cmd_example2(int N, const std::string& out, bool strict) {
  const HamiltonianField f = example2();
  const ScalarFieldFn q = f.q_eval();
  const CompactField qf =
      sample_compact_field(2, q, f.support_radius(), f.residual_knots());
  const MomentResult m0 = moment(qf, Polynomial::one());
  const MomentResult mx = moment(qf, Polynomial::coordinate(1));
  const MomentResult my = moment(qf, Polynomial::coordinate(2));
  Polynomial quadp = Polynomial::monomial(2, 0, 0, 1.0);
  quadp += Polynomial::monomial(0, 2, 0, -1.0);
  const MomentResult mq = moment(qf, quadp);
  const double ref = example2_reference_integral();
  const EulerRHS r = euler_rhs(f, N);

  std::string csv = "moment,value,error_estimate\n";
  csv += "int_Q," + fd(m0.value) + "," + fd(m0.error_estimate) + "\n";
  csv += "int_xQ," + fd(mx.value) + "," + fd(mx.error_estimate) + "\n";
  csv += "int_yQ," + fd(my.value) + "," + fd(my.error_estimate) + "\n";
  csv += "int_Q_x2_minus_y2," + fd(mq.value) + "," + fd(mq.error_estimate) + "\n";
  csv += "reference_-8pi_int_aprime2_rho2," + fd(ref) + ",0\n";
  write_text(out, csv);

  Summary s;
  s.check("mass_vanishes", std::abs(m0.value) <= 1e-8, m0.value, 1e-8);
  s.check("x_moment_vanishes", std::abs(mx.value) <= 1e-8, mx.value, 1e-8);
  s.check("y_moment_vanishes", std::abs(my.value) <= 1e-8, my.value, 1e-8);
  s.check("quadrupole_matches_reference",
          std::abs(mq.value - ref) <= 1e-6 * std::abs(ref), mq.value, ref);
  s.check("quadrupole_negative", mq.value < 0.0, mq.value, 0.0);
  s.check("pressure_grade_20_nonzero",
          r.pressure.coefficient(Grade{2, 0}).norm() > 1e-6,
          r.pressure.coefficient(Grade{2, 0}).norm(), 1e-6);
  double rhs3 = 0.0;
  for (int i = 0; i < 2; ++i)
    rhs3 = std::max(rhs3, r.rhs[i].coefficient(Grade{3, 0}).norm());
  s.check("rhs_grade_30_nonzero", rhs3 > 1e-6, rhs3, 1e-6);
  emit_summary(s);
  return (strict && !s.all_pass) ? 3 : 0;
}

int cmd_conserve(std::uint64_t seed, int count, int N, int L,
                 const std::string& out, bool strict) {
  std::string csv = "index,seed,a0_delta,max_projection,verdict\n";
  bool all = true;
  std::mt19937_64 seeder(seed);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t si = seeder();
    const HamiltonianField f = random_hamiltonian(si, N, L);
    const ConservationReport rep = conservation_check(f, N);
    double maxp = 0.0;
    for (const auto& e : rep.resonant_checks) maxp = std::max(maxp, e.projection);
    all = all && rep.pass;
    csv += std::to_string(i) + "," + std::to_string(si) + "," +
           fd(rep.a0_delta) + "," + fd(maxp) + "," +
           (rep.pass ? "PASS" : "FAIL") + "\n";
  }
  write_text(out, csv);
  Summary s;
  s.check("conservation_corpus", all, all ? 1.0 : 0.0, 1.0);
  emit_summary(s);
  return (strict && !all) ? 3 : 0;
}

int cmd_flow(const std::string& in, const std::string& builtin, double alpha,
             double x0x, double x0y, double t_final, double step,
             const std::string& out, bool strict) {
  VectorFieldFn field;
  int d = 2;
  if (!in.empty()) {
    const ExpansionDocument doc = read_document(in);
    if (!doc.is_vector()) throw DocumentError("flow expects a vector document");
    d = doc.d;
    field = flow_field(doc.vector());
  } else if (builtin == "example1") {
    field = example1(alpha).velocity_eval();
  } else if (builtin == "rotation") {
    VectorExpansion u(2);
    SphereFn ms(2, 1), c(2, 1);
    ms.set_coeff(1, -1, -std::sqrt(kPi));
    c.set_coeff(1, 1, std::sqrt(kPi));
    u[0].add_term(Grade{1, 0}, ms);
    u[1].add_term(Grade{1, 0}, c);
    field = flow_field(u);
  } else {
    throw DocumentError("flow needs --in or --builtin {rotation, example1}");
  }
  FlowOptions opts;
  opts.t_final = t_final;
  opts.step = step;
  const double x0[3] = {x0x, x0y, 0.0};
  const FlowResult res = integrate_flow(d, field, x0, opts);

  std::string csv = "t,x,y,det\n";
  for (size_t i = 0; i < res.times.size(); ++i)
    csv += fd(res.times[i]) + "," + fd(res.trajectory[i][0]) + "," +
           fd(res.trajectory[i][1]) + "," + fd(res.det_history[i]) + "\n";
  write_text(out, csv);
  Summary s;
  s.check("max_abs_det_minus_1", res.max_abs_det_minus_1 <= 1e-5,
          res.max_abs_det_minus_1, 1e-5);
  emit_summary(s);
  return (strict && !s.all_pass) ? 3 : 0;
}

int cmd_membership(const std::string& in, const std::string& space, int n,
                   int order, int ell, bool strict) {
  const ExpansionDocument doc = read_document(in);
  SpaceSignature sig = doc.signature;
  if (!space.empty()) {
    const int N = order >= 0 ? order : doc.signature.N;
    sig = signature_for(space, doc.d, n, N, ell);
  }
  MembershipReport rep;
  if (doc.is_vector())
    rep = check_membership(doc.vector(), sig);
  else
    rep = check_membership(doc.scalar(), sig);
  std::cout << "space," << to_string(sig.variant) << "\n";
  std::cout << "verdict," << (rep.member ? "member" : "non-member") << "\n";
  std::cout << "k,j,reason,magnitude\n";
  for (const auto& v : rep.violations)
    std::cout << v.grade.k << "," << v.grade.j << "," << v.reason << ","
              << fd(v.magnitude) << "\n";
  return (strict && !rep.member) ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic-numeric far-field expansion calculus"};
  app.require_subcommand(1);

  std::string in, out, builtin, space;
  int dim = 2, order = -1, band_limit = 16, count = 10, sig_n = 0, sig_ell = 0;
  std::uint64_t seed = 0;
  bool strict = false;
  double alpha = 1.0, x0x = 6.0, x0y = 0.0, t_final = 1.0, step = 1e-2;

  auto add_common = [&](CLI::App* c, bool needs_in) {
    auto* opt = c->add_option("--in", in, "input expansion document");
    if (needs_in) opt->required();
    c->add_option("--out", out, "output path (default stdout)");
    c->add_option("--dim", dim, "ambient dimension")->check(CLI::IsMember({2, 3}));
    c->add_option("--order,-N", order, "truncation order N");
    c->add_option("--band-limit,-L", band_limit, "sphere band limit");
    c->add_option("--seed", seed, "random seed (default 0)");
    c->add_flag("--strict", strict, "exit 3 when a check fails");
  };

  auto* lap = app.add_subcommand("laplacian", "apply the exact Laplacian");
  add_common(lap, true);

  auto* inv = app.add_subcommand(
      "invert", "invert the Laplacian on the (3,N+3;-3) window");
  add_common(inv, true);

  auto* erhs = app.add_subcommand(
      "euler-rhs", "pressure-free Euler right-hand side of a vector document");
  add_common(erhs, true);

  auto* ex1 = app.add_subcommand("example1", "asymptotic log-term generation");
  add_common(ex1, false);
  ex1->add_option("--alpha", alpha, "Hamiltonian coefficient alpha");

  auto* ex2 = app.add_subcommand(
      "example2", "compactly supported field developing far-field terms");
  add_common(ex2, false);

  auto* cons =
      app.add_subcommand("conserve", "conservation structure over a seeded corpus");
  add_common(cons, false);
  cons->add_option("--count", count, "number of corpus fields");

  auto* flow = app.add_subcommand("flow", "flow map with volume check");
  add_common(flow, false);
  flow->add_option("--builtin", builtin, "builtin field: rotation | example1");
  flow->add_option("--alpha", alpha, "alpha for the example1 field");
  flow->add_option("--x0x", x0x, "start point x");
  flow->add_option("--x0y", x0y, "start point y");
  flow->add_option("--t-final", t_final, "integration time");
  flow->add_option("--step", step, "RK4 step");

  auto* memb = app.add_subcommand("membership", "space membership report");
  add_common(memb, true);
  memb->add_option("--space", space, "plain | hat | tilde | star");
  memb->add_option("--n", sig_n, "leading order (plain)");
  memb->add_option("--ell", sig_ell, "log offset (plain)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (lap->parsed()) return cmd_laplacian(in, out);
    if (inv->parsed()) return cmd_invert(in, out, order, strict);
    if (erhs->parsed()) return cmd_euler_rhs(in, out, order, strict);
    if (ex1->parsed())
      return cmd_example1(alpha, order < 0 ? 4 : order, out, strict);
    if (ex2->parsed()) return cmd_example2(order < 0 ? 4 : order, out, strict);
    if (cons->parsed())
      return cmd_conserve(seed, count, order < 0 ? 4 : order, band_limit, out,
                          strict);
    if (flow->parsed())
      return cmd_flow(in, builtin, alpha, x0x, x0y, t_final, step, out, strict);
    if (memb->parsed())
      return cmd_membership(in, space, sig_n, order, sig_ell, strict);
  } catch (const DocumentError& e) {
    std::cerr << "error: DocumentError: " << e.what() << "\n";
    return 2;
  } catch (const MalformedSource& e) {
    std::cerr << "error: MalformedSource: " << e.what() << "\n";
    return 3;
  } catch (const NotDivergenceFree& e) {
    std::cerr << "error: NotDivergenceFree: " << e.what() << "\n";
    return 3;
  } catch (const ResonantComponent& e) {
    std::cerr << "error: ResonantComponent: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
