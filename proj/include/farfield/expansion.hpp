#ifndef FARFIELD_EXPANSION_HPP
#define FARFIELD_EXPANSION_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "farfield/cutoff.hpp"
#include "farfield/sphere_fn.hpp"

namespace farfield {

// Bookkeeping unit of the expansion ring: the term a(theta) (log r)^j / r^k.
struct Grade {
  int k = 0;  // inverse power of r
  int j = 0;  // power of log r
  auto operator<=>(const Grade&) const = default;
};

enum class SpaceVariant { plain, hat, tilde, star };

// Named membership rule for expansions. The stored (n, N) are the actual
// grade window n <= k <= N; factory helpers encode the space-family
// conventions (the hat space over base order N has window up to N+1).
struct SpaceSignature {
  int n = 0;
  int N = 0;
  int ell = 0;
  SpaceVariant variant = SpaceVariant::plain;
  int d = 2;

  static SpaceSignature plain_space(int d, int n, int N, int ell);
  // hat A_{1,N+1;-1}: plain window (1..N+1, j<=k-1), resonant slots (k,k)
  // for max(1,d-2)<=k<=N+1, and for d=2 the (0,1) log-monopole slot.
  static SpaceSignature hat_space(int d, int N);
  // tilde A_{1,N;-1}: plain window (1..N), resonant slots up to N.
  static SpaceSignature tilde_space(int d, int N);
  // 1*-space (d=2 only): plain (1..N;-1) plus span{chi log r}.
  static SpaceSignature star_space(int d, int N);
};

struct MembershipViolation {
  Grade grade;
  std::string reason;
  double magnitude = 0.0;
};

struct MembershipReport {
  bool member = true;
  std::vector<MembershipViolation> violations;
};

// Sparse graded expansion chi(r) * sum_{k,j} a_k^j(theta) (log r)^j / r^k.
// Terms with spectral norm <= prune_tolerance() are dropped.
class AsymExpansion {
 public:
  explicit AsymExpansion(int d);

  static double prune_tolerance() { return 1e-14; }

  int dim() const { return d_; }
  const std::map<Grade, SphereFn>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  bool has(Grade g) const { return terms_.count(g) != 0; }
  // Coefficient at g (zero function if absent).
  SphereFn coefficient(Grade g) const;

  void add_term(Grade g, const SphereFn& a);
  void set_term(Grade g, const SphereFn& a);

  int min_k() const;  // throws on empty
  int max_k() const;
  int max_band_limit() const;
  double norm() const;  // sqrt of sum of squared term norms

  // Drop grades with k > N_out; dropped grades appended to `truncated` when
  // given.
  AsymExpansion truncated(int N_out, std::vector<Grade>* truncated = nullptr) const;

  AsymExpansion& operator+=(const AsymExpansion& other);
  friend AsymExpansion operator+(AsymExpansion a, const AsymExpansion& b) {
    return a += b;
  }

  CutoffSpec cutoff{};

 private:
  int d_;
  std::map<Grade, SphereFn> terms_;
};

// d expansions sharing the ambient dimension; velocity fields and
// diffeomorphism displacements.
class VectorExpansion {
 public:
  explicit VectorExpansion(int d);
  VectorExpansion(std::vector<AsymExpansion> components);

  int dim() const { return d_; }
  const AsymExpansion& operator[](int i) const { return comps_[i]; }
  AsymExpansion& operator[](int i) { return comps_[i]; }
  const std::vector<AsymExpansion>& components() const { return comps_; }
  double norm() const;
  bool empty() const;

  VectorExpansion& operator+=(const VectorExpansion& other);

 private:
  int d_;
  std::vector<AsymExpansion> comps_;
};

// Row-major d x d matrix of expansions ( (i,j) entry at i*d+j ).
struct ExpansionMatrix {
  int d;
  std::vector<AsymExpansion> entries;

  explicit ExpansionMatrix(int dim);
  AsymExpansion& at(int i, int j) { return entries[i * d + j]; }
  const AsymExpansion& at(int i, int j) const { return entries[i * d + j]; }
};

AsymExpansion add(const AsymExpansion& u, const AsymExpansion& v);
AsymExpansion scale(const AsymExpansion& u, double s);
VectorExpansion scale(const VectorExpansion& u, double s);

// Gradewise product, truncated at k > N_out (default min(N1+n2, N2+n1)).
AsymExpansion multiply_expansions(const AsymExpansion& u, const AsymExpansion& v,
                                  int N_out = -1,
                                  std::vector<Grade>* truncated = nullptr);

// d/dx_axis, axis in 1..d. Grade (k,j) maps into (k+1,j) and (k+1,j-1);
// cutoff-derivative terms are excluded by contract (they are compactly
// supported and belong to residual fields).
AsymExpansion partial_derivative(const AsymExpansion& u, int axis);

VectorExpansion gradient(const AsymExpansion& u);
AsymExpansion divergence(const VectorExpansion& u);
// jacobian(u).at(i,j) = d u_i / d x_j
ExpansionMatrix jacobian(const VectorExpansion& u);
VectorExpansion partial_derivative(const VectorExpansion& u, int axis);

// Exact gradewise Laplacian: grade (k,l) contributes
//   (Delta_S a + k(k+2-d) a)         at (k+2, l)
//   -l(2k+2-d) a                     at (k+2, l-1)
//   l(l-1) a                         at (k+2, l-2).
AsymExpansion laplacian(const AsymExpansion& u);
VectorExpansion laplacian(const VectorExpansion& u);

MembershipReport check_membership(const AsymExpansion& u, const SpaceSignature& sig);
MembershipReport check_membership(const VectorExpansion& u, const SpaceSignature& sig);

std::string to_string(SpaceVariant v);

}  // namespace farfield

#endif
