#include "farfield/compose.hpp"

#include <cmath>
#include <map>

#include "farfield/errors.hpp"
#include "farfield/oracle.hpp"

namespace farfield {

namespace {

using Beta = std::array<int, 3>;

int order(const Beta& b) { return b[0] + b[1] + b[2]; }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void enumerate_betas(int d, int max_order, std::vector<Beta>& out) {
  for (int total = 0; total <= max_order; ++total) {
    for (int b0 = 0; b0 <= total; ++b0) {
      for (int b1 = 0; b1 <= total - b0; ++b1) {
        const int b2 = total - b0 - b1;
        if (d == 2 && b2 != 0) continue;
        out.push_back(Beta{b0, b1, b2});
      }
    }
  }
}

}  // namespace

AsymDiffeo AsymDiffeo::identity(int d) { return AsymDiffeo{VectorExpansion(d)}; }

AsymDiffeo AsymDiffeo::from_displacement(const VectorExpansion& w, bool validate) {
  AsymDiffeo phi{w};
  if (!validate || w.empty()) return phi;
  const int d = w.dim();
  const int N = [&] {
    int m = 0;
    for (int i = 0; i < d; ++i)
      if (!w[i].empty()) m = std::max(m, w[i].max_k());
    return m;
  }();
  const MembershipReport rep =
      check_membership(w, SpaceSignature::plain_space(d, 0, N, 0));
  if (!rep.member)
    throw Error("diffeomorphism displacement is not in the plain (0,N;0) space");

  // orientation spot check
  const ExpansionMatrix dw = jacobian(w);
  const double radii[4] = {1.3, 2.5, 6.0, 40.0};
  const int nang = 8;
  for (double r : radii) {
    for (int ia = 0; ia < nang; ++ia) {
      const double phi_a = 2.0 * 3.14159265358979323846 * ia / nang;
      double x[3] = {r * std::cos(phi_a), r * std::sin(phi_a), 0.0};
      if (d == 3) {
        x[2] = 0.4 * r;
      }
      std::array<double, 9> J{};
      for (int i = 0; i < d; ++i) {
        J[i * d + i] = 1.0;
        for (int jx = 0; jx < d; ++jx) J[i * d + jx] += eval_dense(dw.at(i, jx), x);
      }
      if (matrix_det(J, d) <= 0.0)
        throw Error("orientation check failed: det(Id + [dw]) <= 0");
    }
  }
  return phi;
}

AsymExpansion compose(const AsymExpansion& u, const AsymDiffeo& phi, int N_out,
                      ComposeInfo* info) {
  if (u.dim() != phi.dim()) throw DimensionMismatch("compose dimension mismatch");
  const int d = u.dim();
  AsymExpansion out(d);
  if (u.empty()) return out;
  const int kmin = u.min_k();
  const int max_order = N_out - kmin;

  if (info) {
    info->requested_order = N_out;
    bool has_logs = false;
    for (const auto& [g, a] : u.terms())
      if (g.j > 0) has_logs = true;
    info->guaranteed_order = has_logs ? N_out - 1 : N_out;
  }
  if (max_order < 0) return out;

  std::vector<Beta> betas;
  enumerate_betas(d, max_order, betas);

  std::map<Beta, AsymExpansion> derivs;   // d^beta u
  std::map<Beta, AsymExpansion> powers;   // w^beta
  derivs.emplace(Beta{0, 0, 0}, u);
  {
    AsymExpansion one(d);
    one.add_term(Grade{0, 0}, SphereFn::constant(d, 1.0));
    powers.emplace(Beta{0, 0, 0}, one);
  }

  for (const Beta& b : betas) {
    if (order(b) == 0) {
      out += u.truncated(N_out);
      continue;
    }
    int axis = 0;
    while (b[axis] == 0) ++axis;
    Beta prev = b;
    prev[axis] -= 1;

    const AsymExpansion& dprev = derivs.at(prev);
    AsymExpansion dcur = partial_derivative(dprev, axis + 1);
    const AsymExpansion& wprev = powers.at(prev);
    AsymExpansion wcur = multiply_expansions(wprev, phi.w[axis], N_out);
    // term = d^beta u * w^beta / beta!
    AsymExpansion term = multiply_expansions(dcur, wcur, N_out);
    out += scale(term, 1.0 / (factorial(b[0]) * factorial(b[1]) * factorial(b[2])));
    derivs.emplace(b, std::move(dcur));
    powers.emplace(b, std::move(wcur));
  }
  return out;
}

VectorExpansion compose(const VectorExpansion& u, const AsymDiffeo& phi,
                        int N_out) {
  VectorExpansion out(u.dim());
  for (int i = 0; i < u.dim(); ++i) out[i] = compose(u[i], phi, N_out);
  return out;
}

ExpansionMatrix neumann_inverse(const ExpansionMatrix& M, int N_out) {
  const int d = M.d;
  ExpansionMatrix S(d);
  for (int i = 0; i < d; ++i)
    S.at(i, i).add_term(Grade{0, 0}, SphereFn::constant(d, 1.0));

  ExpansionMatrix P(d);  // -M, truncated
  bool empty = true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      P.at(i, j) = scale(M.at(i, j), -1.0).truncated(N_out);
      if (!P.at(i, j).empty()) empty = false;
    }

  ExpansionMatrix term = P;
  for (int it = 1; it <= N_out && !empty; ++it) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) S.at(i, j) += term.at(i, j);
    ExpansionMatrix next(d);
    empty = true;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        AsymExpansion acc(d);
        for (int m = 0; m < d; ++m)
          acc += multiply_expansions(term.at(i, m), P.at(m, j), N_out);
        if (!acc.empty()) empty = false;
        next.at(i, j) = std::move(acc);
      }
    term = std::move(next);
  }
  return S;
}

ExpansionMatrix jacobian_inverse(const AsymDiffeo& phi, int N_out) {
  return neumann_inverse(jacobian(phi.w), N_out);
}

VectorExpansion conjugated_gradient(const AsymExpansion& v, const AsymDiffeo& phi,
                                    int N_out) {
  if (v.dim() != phi.dim()) throw DimensionMismatch("conjugated_gradient");
  const int d = v.dim();
  const ExpansionMatrix Jinv = jacobian_inverse(phi, N_out);
  VectorExpansion out(d);
  for (int j = 0; j < d; ++j) {
    AsymExpansion acc(d);
    for (int i = 0; i < d; ++i)
      acc += multiply_expansions(partial_derivative(v, i + 1), Jinv.at(i, j),
                                 N_out);
    out[j] = std::move(acc);
  }
  return out;
}

ExpansionMatrix conjugated_gradient(const VectorExpansion& v,
                                    const AsymDiffeo& phi, int N_out) {
  const int d = v.dim();
  const ExpansionMatrix Jinv = jacobian_inverse(phi, N_out);
  const ExpansionMatrix dv = jacobian(v);
  ExpansionMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      AsymExpansion acc(d);
      for (int m = 0; m < d; ++m)
        acc += multiply_expansions(dv.at(i, m), Jinv.at(m, j), N_out);
      out.at(i, j) = std::move(acc);
    }
  return out;
}

AsymExpansion conjugated_divergence(const VectorExpansion& v,
                                    const AsymDiffeo& phi, int N_out) {
  const int d = v.dim();
  const ExpansionMatrix Jinv = jacobian_inverse(phi, N_out);
  const ExpansionMatrix dv = jacobian(v);
  AsymExpansion out(d);
  for (int i = 0; i < d; ++i)
    for (int m = 0; m < d; ++m)
      out += multiply_expansions(dv.at(i, m), Jinv.at(m, i), N_out);
  return out;
}

AsymExpansion conjugated_laplacian(const AsymExpansion& v, const AsymDiffeo& phi,
                                   int N_out) {
  return conjugated_divergence(conjugated_gradient(v, phi, N_out), phi, N_out);
}

std::array<double, 3> numeric_inverse(const AsymDiffeo& phi, const double* y) {
  const int d = phi.dim();
  std::array<double, 3> x{y[0], y[1], d == 3 ? y[2] : 0.0};
  double alpha = 1.0;
  double last = 1e300;
  for (int it = 0; it < 200; ++it) {
    const auto w = eval_dense(phi.w, x.data());
    double res = 0.0;
    std::array<double, 3> next = x;
    for (int i = 0; i < d; ++i) {
      const double g = y[i] - x[i] - w[i];
      next[i] = x[i] + alpha * g;
      res = std::max(res, std::abs(g));
    }
    if (res < 1e-12) return x;
    if (res > last) alpha *= 0.5;
    last = res;
    x = next;
  }
  throw Error("numeric diffeomorphism inversion did not converge");
}

}  // namespace farfield
