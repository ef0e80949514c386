#include "farfield/expansion.hpp"

#include <algorithm>
#include <cmath>

#include "farfield/errors.hpp"

namespace farfield {

namespace {

void check_same_dim(int a, int b, const char* where) {
  if (a != b)
    throw DimensionMismatch(std::string("dimension mismatch in ") + where);
}

}  // namespace

// ---------------------------------------------------------------------------

AsymExpansion::AsymExpansion(int d) : d_(d) {
  if (d != 2 && d != 3)
    throw DimensionMismatch("supported ambient dimensions are 2 and 3");
}

SphereFn AsymExpansion::coefficient(Grade g) const {
  auto it = terms_.find(g);
  if (it == terms_.end()) return SphereFn(d_, 0);
  return it->second;
}

void AsymExpansion::add_term(Grade g, const SphereFn& a) {
  if (a.dim() != d_) throw DimensionMismatch("coefficient dimension mismatch");
  if (g.k < 0 || g.j < 0) throw Error("grades require k >= 0 and j >= 0");
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    if (a.norm() > prune_tolerance()) terms_.emplace(g, a);
    return;
  }
  it->second += a;
  if (it->second.norm() <= prune_tolerance()) terms_.erase(it);
}

void AsymExpansion::set_term(Grade g, const SphereFn& a) {
  terms_.erase(g);
  add_term(g, a);
}

int AsymExpansion::min_k() const {
  if (terms_.empty()) throw Error("min_k of empty expansion");
  return terms_.begin()->first.k;
}

int AsymExpansion::max_k() const {
  if (terms_.empty()) throw Error("max_k of empty expansion");
  return terms_.rbegin()->first.k;
}

int AsymExpansion::max_band_limit() const {
  int L = 0;
  for (const auto& [g, a] : terms_) L = std::max(L, a.band_limit());
  return L;
}

double AsymExpansion::norm() const {
  double s = 0.0;
  for (const auto& [g, a] : terms_) {
    const double n = a.norm();
    s += n * n;
  }
  return std::sqrt(s);
}

AsymExpansion AsymExpansion::truncated(int N_out,
                                       std::vector<Grade>* truncated) const {
  AsymExpansion out(d_);
  for (const auto& [g, a] : terms_) {
    if (g.k <= N_out)
      out.add_term(g, a);
    else if (truncated)
      truncated->push_back(g);
  }
  return out;
}

AsymExpansion& AsymExpansion::operator+=(const AsymExpansion& other) {
  check_same_dim(d_, other.d_, "expansion +");
  for (const auto& [g, a] : other.terms_) add_term(g, a);
  return *this;
}

// ---------------------------------------------------------------------------

VectorExpansion::VectorExpansion(int d) : d_(d) {
  if (d != 2 && d != 3)
    throw DimensionMismatch("supported ambient dimensions are 2 and 3");
  for (int i = 0; i < d; ++i) comps_.emplace_back(d);
}

VectorExpansion::VectorExpansion(std::vector<AsymExpansion> components)
    : d_(static_cast<int>(components.size())), comps_(std::move(components)) {
  for (const auto& c : comps_)
    check_same_dim(c.dim(), d_, "vector expansion components");
}

double VectorExpansion::norm() const {
  double s = 0.0;
  for (const auto& c : comps_) {
    const double n = c.norm();
    s += n * n;
  }
  return std::sqrt(s);
}

bool VectorExpansion::empty() const {
  for (const auto& c : comps_)
    if (!c.empty()) return false;
  return true;
}

VectorExpansion& VectorExpansion::operator+=(const VectorExpansion& other) {
  check_same_dim(d_, other.d_, "vector +");
  for (int i = 0; i < d_; ++i) comps_[i] += other.comps_[i];
  return *this;
}

ExpansionMatrix::ExpansionMatrix(int dim) : d(dim) {
  for (int i = 0; i < d * d; ++i) entries.emplace_back(d);
}

// ---------------------------------------------------------------------------

AsymExpansion add(const AsymExpansion& u, const AsymExpansion& v) {
  AsymExpansion out = u;
  out += v;
  return out;
}

AsymExpansion scale(const AsymExpansion& u, double s) {
  AsymExpansion out(u.dim());
  for (const auto& [g, a] : u.terms()) out.add_term(g, a * s);
  return out;
}

VectorExpansion scale(const VectorExpansion& u, double s) {
  VectorExpansion out(u.dim());
  for (int i = 0; i < u.dim(); ++i) out[i] = scale(u[i], s);
  return out;
}

AsymExpansion multiply_expansions(const AsymExpansion& u, const AsymExpansion& v,
                                  int N_out, std::vector<Grade>* truncated) {
  check_same_dim(u.dim(), v.dim(), "multiply_expansions");
  if (N_out < 0) {
    if (u.empty() || v.empty()) return AsymExpansion(u.dim());
    N_out = std::min(u.max_k() + v.min_k(), v.max_k() + u.min_k());
  }
  AsymExpansion out(u.dim());
  for (const auto& [gu, au] : u.terms()) {
    for (const auto& [gv, av] : v.terms()) {
      const Grade g{gu.k + gv.k, gu.j + gv.j};
      if (g.k > N_out) {
        if (truncated) truncated->push_back(g);
        continue;
      }
      out.add_term(g, multiply(au, av));
    }
  }
  return out;
}

AsymExpansion partial_derivative(const AsymExpansion& u, int axis) {
  if (axis < 1 || axis > u.dim()) throw Error("axis out of range");
  const SphereFn theta_axis = direction_component(u.dim(), axis);
  AsymExpansion out(u.dim());
  for (const auto& [g, a] : u.terms()) {
    // d/dx_axis [ a(theta) (log r)^j r^-k ] =
    //   theta_axis a (j (log r)^{j-1} - k (log r)^j) r^{-k-1}
    //   + (grad_S a)_axis (log r)^j r^{-k-1}.
    const SphereFn radial = multiply(theta_axis, a);
    SphereFn at_j = tangential_gradient_component(a, axis);
    if (g.k != 0) at_j += (-static_cast<double>(g.k)) * radial;
    out.add_term(Grade{g.k + 1, g.j}, at_j);
    if (g.j > 0) out.add_term(Grade{g.k + 1, g.j - 1}, static_cast<double>(g.j) * radial);
  }
  return out;
}

VectorExpansion gradient(const AsymExpansion& u) {
  VectorExpansion out(u.dim());
  for (int i = 0; i < u.dim(); ++i) out[i] = partial_derivative(u, i + 1);
  return out;
}

AsymExpansion divergence(const VectorExpansion& u) {
  AsymExpansion out(u.dim());
  for (int i = 0; i < u.dim(); ++i) out += partial_derivative(u[i], i + 1);
  return out;
}

ExpansionMatrix jacobian(const VectorExpansion& u) {
  ExpansionMatrix out(u.dim());
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < u.dim(); ++j)
      out.at(i, j) = partial_derivative(u[i], j + 1);
  return out;
}

VectorExpansion partial_derivative(const VectorExpansion& u, int axis) {
  VectorExpansion out(u.dim());
  for (int i = 0; i < u.dim(); ++i) out[i] = partial_derivative(u[i], axis);
  return out;
}

AsymExpansion laplacian(const AsymExpansion& u) {
  const int d = u.dim();
  AsymExpansion out(d);
  for (const auto& [g, a] : u.terms()) {
    const int k = g.k, l = g.j;
    SphereFn top = laplace_beltrami(a);
    top += (static_cast<double>(k) * (k + 2 - d)) * a;
    out.add_term(Grade{k + 2, l}, top);
    if (l >= 1)
      out.add_term(Grade{k + 2, l - 1}, (-static_cast<double>(l) * (2 * k + 2 - d)) * a);
    if (l >= 2)
      out.add_term(Grade{k + 2, l - 2}, (static_cast<double>(l) * (l - 1)) * a);
  }
  return out;
}

VectorExpansion laplacian(const VectorExpansion& u) {
  VectorExpansion out(u.dim());
  for (int i = 0; i < u.dim(); ++i) out[i] = laplacian(u[i]);
  return out;
}

// ---------------------------------------------------------------------------

SpaceSignature SpaceSignature::plain_space(int d, int n, int N, int ell) {
  if (n < 0 || n > N) throw Error("signature requires 0 <= n <= N");
  if (ell < -n) throw Error("signature requires ell >= -n");
  return SpaceSignature{n, N, ell, SpaceVariant::plain, d};
}

SpaceSignature SpaceSignature::hat_space(int d, int N) {
  return SpaceSignature{1, N + 1, -1, SpaceVariant::hat, d};
}

SpaceSignature SpaceSignature::tilde_space(int d, int N) {
  return SpaceSignature{1, N, -1, SpaceVariant::tilde, d};
}

SpaceSignature SpaceSignature::star_space(int d, int N) {
  if (d != 2) throw NotTwoDimensional("1*-space exists only for d=2");
  return SpaceSignature{1, N, -1, SpaceVariant::star, d};
}

std::string to_string(SpaceVariant v) {
  switch (v) {
    case SpaceVariant::plain: return "plain";
    case SpaceVariant::hat: return "hat";
    case SpaceVariant::tilde: return "tilde";
    case SpaceVariant::star: return "star";
  }
  return "?";
}

namespace {

constexpr double kEigenTol = 1e-10;

// Is (g, a) admissible for sig; appends a violation otherwise.
void check_term(const AsymExpansion& u, Grade g, const SphereFn& a,
                const SpaceSignature& sig, MembershipReport& rep) {
  const int d = u.dim();
  const bool resonant_variant =
      sig.variant == SpaceVariant::hat || sig.variant == SpaceVariant::tilde;
  const bool log_slot_ok =
      (sig.variant == SpaceVariant::star ||
       (sig.variant == SpaceVariant::hat && d == 2));

  // plain window
  if (g.k >= sig.n && g.k <= sig.N && g.j <= g.k + sig.ell) return;

  if (log_slot_ok && g.k == 0 && g.j == 1) {
    // span{chi log r}: constant coefficient only
    const SphereFn rest = a - project_degree(a, 0);
    if (rest.norm() <= kEigenTol * std::max(1.0, a.norm())) return;
    rep.member = false;
    rep.violations.push_back(
        {g, "log-monopole slot requires a constant coefficient", rest.norm()});
    return;
  }

  if (resonant_variant && g.j == g.k && g.k >= std::max(1, d - 2) && g.k <= sig.N) {
    // resonant slot u_k^j: coefficient must lie in the lambda_k-eigenspace
    const int deg = resonance_degree(d, g.k);
    const SphereFn off = a - project_degree(a, deg);
    if (off.norm() <= kEigenTol * std::max(1.0, a.norm())) return;
    rep.member = false;
    rep.violations.push_back(
        {g, "resonant-slot coefficient outside the lambda_k eigenspace",
         off.norm()});
    return;
  }

  rep.member = false;
  if (g.k == 0 && g.j == 0 && resonant_variant) {
    rep.violations.push_back({g, "asymptotically constant term", a.norm()});
  } else {
    rep.violations.push_back({g, "grade outside admissible window", a.norm()});
  }
}

}  // namespace

MembershipReport check_membership(const AsymExpansion& u, const SpaceSignature& sig) {
  if (u.dim() != sig.d)
    throw DimensionMismatch("signature dimension differs from expansion");
  MembershipReport rep;
  for (const auto& [g, a] : u.terms()) check_term(u, g, a, sig, rep);
  return rep;
}

MembershipReport check_membership(const VectorExpansion& u, const SpaceSignature& sig) {
  MembershipReport rep;
  for (int i = 0; i < u.dim(); ++i) {
    MembershipReport r = check_membership(u[i], sig);
    if (!r.member) rep.member = false;
    rep.violations.insert(rep.violations.end(), r.violations.begin(),
                          r.violations.end());
  }
  return rep;
}

}  // namespace farfield
