#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "kdelab/counting.hpp"
#include "kdelab/points.hpp"

namespace kdelab {

// One lifted KDE instance: the paper's x~_l = (sqrt(alpha_l) x, sqrt(offset)),
// y~_l = (sqrt(alpha_l) y, 0). Pairwise squared distances are exactly
// offset + alpha_l * ||x - y||^2, so the lift is stored as the integer base
// instance plus (scale, offset); no irrational coordinates are materialized.
template <class S>
struct LiftedInstance {
  std::shared_ptr<const std::vector<long long>> dist2;  // row-major n_x * n_y
  std::size_t n_x = 0, n_y = 0;
  S scale;
  S offset;
  std::size_t ell = 0;  // which alpha row produced this lift

  S squared_distance(std::size_t i, std::size_t j) const {
    return offset + scale * num_traits<S>::from_long((*dist2)[i * n_y + j], scale);
  }
};

inline std::shared_ptr<const std::vector<long long>> pair_distances(const BcpInstance& inst) {
  auto d = std::make_shared<std::vector<long long>>(inst.n_x() * inst.n_y());
  for (std::size_t i = 0; i < inst.n_x(); ++i)
    for (std::size_t j = 0; j < inst.n_y(); ++j)
      (*d)[i * inst.n_y() + j] = sq_dist(inst.X.pts[i], inst.Y.pts[j]);
  return d;
}

namespace detail {
template <class S>
LiftedInstance<S> make_lift(std::shared_ptr<const std::vector<long long>> d2, std::size_t nx,
                            std::size_t ny, S scale, S offset, std::size_t ell) {
  if (scale < num_traits<S>::zero(scale) || offset < num_traits<S>::zero(offset))
    throw DomainError("lift: negative scale or additive coordinate");
  return LiftedInstance<S>{std::move(d2), nx, ny, std::move(scale), std::move(offset), ell};
}
}  // namespace detail

// Standard lift (section 3): extra coordinate sqrt(c).
template <class S>
LiftedInstance<S> lift_points(const BcpInstance& inst, const CountingMatrixSpec<S>& spec,
                              std::size_t ell,
                              std::shared_ptr<const std::vector<long long>> d2 = nullptr) {
  if (ell >= spec.size()) throw DomainError("lift_points: alpha index out of range");
  S reach = spec.c + spec.alpha[ell] * num_traits<S>::from_long(inst.D, spec.c);
  if (reach > num_traits<S>::one(spec.c)) throw DomainError("lift_points: c + alpha_l * D exceeds 1");
  if (!d2) d2 = pair_distances(inst);
  return detail::make_lift(std::move(d2), inst.n_x(), inst.n_y(), spec.alpha[ell], spec.c, ell);
}

// Positive-definite lift (section 6.2): extra coordinate sqrt(1 - c - alpha_l D).
template <class S>
LiftedInstance<S> lift_points_pd(const BcpInstance& inst, const CountingMatrixSpec<S>& spec,
                                 std::size_t ell,
                                 std::shared_ptr<const std::vector<long long>> d2 = nullptr) {
  if (ell >= spec.size()) throw DomainError("lift_points_pd: alpha index out of range");
  S offset = num_traits<S>::one(spec.c) - spec.c -
             spec.alpha[ell] * num_traits<S>::from_long(spec.dist_cap, spec.c);
  if (offset < num_traits<S>::zero(spec.c))
    throw DomainError("lift_points_pd: negative radicand 1 - c - alpha_l * D (infeasible spec)");
  if (!d2) d2 = pair_distances(inst);
  return detail::make_lift(std::move(d2), inst.n_x(), inst.n_y(), spec.alpha[ell], std::move(offset), ell);
}

// Def. 1.1 oracle: v with ||v - K u||_inf <= eps ||u||_1 on the lifted
// instance's kernel matrix.
template <class S>
class KdeOracle {
 public:
  virtual ~KdeOracle() = default;
  virtual std::vector<S> answer(const LiftedInstance<S>& inst, const std::vector<S>& u,
                                const S& eps) const = 0;
  virtual bool concurrent_safe() const { return true; }
};

template <class S>
class NaiveKdeOracle final : public KdeOracle<S> {
 public:
  explicit NaiveKdeOracle(KernelPtr<S> kernel) : kernel_(std::move(kernel)) {}
  std::vector<S> answer(const LiftedInstance<S>& inst, const std::vector<S>& u,
                        const S& /*eps*/) const override {
    if (u.size() != inst.n_y) throw DomainError("naive oracle: weight length mismatch");
    std::vector<S> v;
    v.reserve(inst.n_x);
    for (std::size_t i = 0; i < inst.n_x; ++i) {
      S acc = num_traits<S>::zero(inst.scale);
      for (std::size_t j = 0; j < inst.n_y; ++j)
        acc += eval_f(*kernel_, inst.squared_distance(i, j)) * u[j];
      v.push_back(std::move(acc));
    }
    return v;
  }

 private:
  KernelPtr<S> kernel_;
};

namespace detail {
inline Rational rounding_slack(const Rational&) { return Rational(0); }
inline BigFloat rounding_slack(const BigFloat& proto) {
  return BigFloat::pow2(-static_cast<long>(proto.prec() / 2), proto.prec());
}
inline long long scalar_round_to_ll(const Rational& v, Rational* residual) {
  Rational n = v.round_nearest();
  *residual = abs(v - n);
  return n.to_long();
}
inline long long scalar_round_to_ll(const BigFloat& v, BigFloat* residual) {
  BigFloat n = v.round_nearest();
  *residual = abs(v - n);
  return n.round_to_long();
}
}  // namespace detail

template <class S>
struct RecoveryResult {
  std::vector<long> distance_values;            // distance counted by each row
  std::vector<std::vector<long long>> counts;   // rows x n_x
  S tau;
  S eps;
  S max_residual;
};

namespace detail {

inline std::string residual_str(const Rational& r) { return r.str(); }
inline std::string residual_str(const BigFloat& f) { return f.str(8); }

// Shared core of the standard and positive-definite recoveries: D oracle
// calls with u = 1, one solve W^ = M^-1 U^, entrywise rounding with the 1/3
// separation check.
template <class S>
RecoveryResult<S> run_recovery(const BcpInstance& inst, const CountingMatrixSpec<S>& spec,
                               const KdeOracle<S>& oracle, const S* eps_override, bool pd) {
  const std::size_t size = spec.size();
  const std::size_t n_x = inst.n_x();
  Matrix<S> m = build_counting_matrix(spec);
  Matrix<S> inv = inverse(m);
  TauPair<S> tp = tau_pair(m);
  S eps = eps_override
              ? *eps_override
              : num_traits<S>::one(spec.c) /
                    (num_traits<S>::from_long(3 * static_cast<long>(inst.n_y()), spec.c) * tp.induced);

  auto d2 = pair_distances(inst);
  std::vector<S> ones(inst.n_y(), num_traits<S>::one(spec.c));
  Matrix<S> u_hat(size, n_x, num_traits<S>::zero(spec.c));
  for (std::size_t ell = 0; ell < size; ++ell) {
    LiftedInstance<S> lift = pd ? lift_points_pd(inst, spec, ell, d2) : lift_points(inst, spec, ell, d2);
    std::vector<S> row = oracle.answer(lift, ones, eps);
    if (row.size() != n_x) throw DomainError("oracle returned wrong-length answer");
    for (std::size_t i = 0; i < n_x; ++i) u_hat(ell, i) = std::move(row[i]);
  }
  Matrix<S> w_hat = inv * u_hat;

  S third = num_traits<S>::from_ratio(1, 3, spec.c);
  S limit = third + rounding_slack(spec.c);
  RecoveryResult<S> out{beta_integer_values(spec),
                        std::vector<std::vector<long long>>(size, std::vector<long long>(n_x, 0)),
                        tp.induced, eps, num_traits<S>::zero(spec.c)};
  for (std::size_t p = 0; p < size; ++p)
    for (std::size_t i = 0; i < n_x; ++i) {
      S residual = num_traits<S>::zero(spec.c);
      long long nearest = scalar_round_to_ll(w_hat(p, i), &residual);
      if (residual > limit) throw RoundingAmbiguousError(p, i, residual_str(residual));
      if (residual > out.max_residual) out.max_residual = residual;
      out.counts[p][i] = nearest;
    }
  return out;
}

}  // namespace detail

// Section 3 recovery: returns the exact distance-count matrix under the
// (3 n tau)^-1 oracle contract. Rows count distances beta_0 .. beta_last.
template <class S>
RecoveryResult<S> recover_distance_counts(const BcpInstance& inst, const CountingMatrixSpec<S>& spec,
                                          const KdeOracle<S>& oracle, const S* eps_override = nullptr) {
  std::vector<long> beta_vals = beta_integer_values(spec);
  if (beta_vals.back() < inst.D)
    throw DomainError("recover_distance_counts: spec covers distances up to " +
                      std::to_string(beta_vals.back()) + " but instance cap is " + std::to_string(inst.D));
  // base = 1 layouts cannot count coincident pairs
  auto d2 = pair_distances(inst);
  for (long long d : *d2)
    if (d < beta_vals.front())
      throw DomainError("recover_distance_counts: instance has a pair at distance " + std::to_string(d) +
                        " below the beta range");
  return detail::run_recovery(inst, spec, oracle, eps_override, /*pd=*/false);
}

template <class S>
long long bcp_via_kde(const BcpInstance& inst, const CountingMatrixSpec<S>& spec,
                      const KdeOracle<S>& oracle, const S* eps_override = nullptr) {
  RecoveryResult<S> rec = recover_distance_counts(inst, spec, oracle, eps_override);
  for (std::size_t p = 0; p < rec.counts.size(); ++p)
    for (long long c : rec.counts[p])
      if (c > 0) return rec.distance_values[p];
  throw DomainError("bcp_via_kde: recovered count matrix is empty");
}

// Section 6.2 recovery for positive definite kernels: the oracle answers for
// f while the counting matrix belongs to g(x) = f(1-x); rows are re-indexed,
// row p counting distance D - p.
template <class S>
RecoveryResult<S> pd_recover_distance_counts(const BcpInstance& inst,
                                             const CountingMatrixSpec<S>& spec_g,
                                             const KdeOracle<S>& oracle_f,
                                             const S* eps_override = nullptr) {
  std::vector<long> beta_vals = beta_integer_values(spec_g);
  if (beta_vals.front() != 1)
    throw DomainError("pd_recover_distance_counts: beta must be the identity vector (1..D)");
  if (inst.D > spec_g.dist_cap - 1)
    throw DomainError("pd_recover_distance_counts: instance distances must stay below D");
  return detail::run_recovery(inst, spec_g, oracle_f, eps_override, /*pd=*/true);
}

// Map the re-indexed matrix back: row p counts distance D - p, so the
// standard histogram row d (= 0..D-1) is re-indexed row D - d.
template <class S>
std::vector<std::vector<long long>> pd_deindex(const RecoveryResult<S>& rec, long d_cap) {
  std::vector<std::vector<long long>> std_rows(static_cast<std::size_t>(d_cap));
  for (long d = 0; d < d_cap; ++d) std_rows[static_cast<std::size_t>(d)] = rec.counts[static_cast<std::size_t>(d_cap - d - 1)];
  return std_rows;
}

template <class S>
long long pd_bcp_via_kde(const BcpInstance& inst, const CountingMatrixSpec<S>& spec_g,
                         const KdeOracle<S>& oracle_f, const S* eps_override = nullptr) {
  RecoveryResult<S> rec = pd_recover_distance_counts(inst, spec_g, oracle_f, eps_override);
  long d_cap = spec_g.dist_cap;
  // smallest distance = largest re-indexed p with a positive count
  for (std::size_t p = rec.counts.size(); p-- > 0;)
    for (long long c : rec.counts[p])
      if (c > 0) return d_cap - rec.distance_values[p];
  throw DomainError("pd_bcp_via_kde: recovered count matrix is empty");
}

// ---- Appendix A: single-call threshold decision ----------------------------

template <class S>
struct BisDecision {
  bool answer;
  S gap;
  S eps;
};

// Decide min ||x - y||^2 <= p for 0/1 points via one KDE call on the
// m^{-1/2}-scaled instance. Premise: n * f((p+1)/m) < f(p/m).
template <class S>
BisDecision<S> bis_decision_reduction(const PointSet& x, const PointSet& y, KernelPtr<S> f, long p,
                                      const KdeOracle<S>& oracle, const S& proto) {
  for (const auto& pt : x.pts)
    for (long long cc : pt)
      if (cc != 0 && cc != 1) throw DomainError("bis_decision_reduction: points must be 0/1");
  for (const auto& pt : y.pts)
    for (long long cc : pt)
      if (cc != 0 && cc != 1) throw DomainError("bis_decision_reduction: points must be 0/1");
  const long m = static_cast<long>(x.dim);
  if (p < 0) throw DomainError("bis_decision_reduction: p >= 0 required");
  if (!f->flags().rapid_decay_checkable)
    throw RapidDecayViolatedError("kernel " + f->name() + " is not rapid-decay checkable");
  if (p >= m) return {true, num_traits<S>::zero(proto), num_traits<S>::zero(proto)};

  S fp = eval_f(*f, num_traits<S>::from_ratio(p, static_cast<unsigned long>(m), proto));
  S fp1 = eval_f(*f, num_traits<S>::from_ratio(p + 1, static_cast<unsigned long>(m), proto));
  S n_s = num_traits<S>::from_long(static_cast<long>(y.size()), proto);
  S gap = fp - n_s * fp1;
  if (!(gap > num_traits<S>::zero(proto)))
    throw RapidDecayViolatedError("rapid decay fails at p = " + std::to_string(p) + " for kernel " +
                                  f->name() + ": n*f((p+1)/m) >= f(p/m)");
  S eps = gap / (num_traits<S>::from_long(3, proto) * n_s);

  BcpInstance inst(x, y, m);
  auto d2 = pair_distances(inst);
  LiftedInstance<S> lift = detail::make_lift(
      d2, inst.n_x(), inst.n_y(), num_traits<S>::from_ratio(1, static_cast<unsigned long>(m), proto),
      num_traits<S>::zero(proto), 0);
  std::vector<S> ones(inst.n_y(), num_traits<S>::one(proto));
  std::vector<S> v = oracle.answer(lift, ones, eps);

  S threshold = fp - gap / num_traits<S>::from_long(2, proto);
  bool yes = false;
  for (const S& vi : v)
    if (vi > threshold) yes = true;
  return {yes, gap, eps};
}

// Optimization from decision: ceil(log2(m+1)) threshold calls.
template <class S>
long bis_bcp_binary_search(const PointSet& x, const PointSet& y, KernelPtr<S> f,
                           const KdeOracle<S>& oracle, const S& proto) {
  long lo = 0, hi = static_cast<long>(x.dim);
  while (lo < hi) {
    long mid = lo + (hi - lo) / 2;
    if (bis_decision_reduction(x, y, f, mid, oracle, proto).answer)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

// Appendix A's brute-force arm: store Y in a lookup table, probe every point
// of the Hamming ball of radius p around each x. O(n * C(m, <=p)).
inline bool hamming_ball_scan(const PointSet& x, const PointSet& y, long p) {
  if (x.dim != y.dim) throw DomainError("hamming_ball_scan: dimension mismatch");
  if (x.dim > 62) throw DomainError("hamming_ball_scan: dimension too large for packing");
  auto pack = [&](const std::vector<long long>& v) {
    unsigned long long key = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] != 0 && v[k] != 1) throw DomainError("hamming_ball_scan: points must be 0/1");
      key |= static_cast<unsigned long long>(v[k]) << k;
    }
    return key;
  };
  std::vector<unsigned long long> table;
  table.reserve(y.size());
  for (const auto& pt : y.pts) table.push_back(pack(pt));
  std::sort(table.begin(), table.end());
  auto contains = [&](unsigned long long key) {
    return std::binary_search(table.begin(), table.end(), key);
  };
  const std::size_t m = x.dim;
  for (const auto& pt : x.pts) {
    unsigned long long base = pack(pt);
    bool found = false;
    auto probe = [&](auto&& self, unsigned long long key, std::size_t from, long flips_left) -> void {
      if (found) return;
      if (contains(key)) {
        found = true;
        return;
      }
      if (flips_left == 0) return;
      for (std::size_t k = from; k < m; ++k) self(self, key ^ (1ull << k), k + 1, flips_left - 1);
    };
    probe(probe, base, 0, p);
    if (found) return true;
  }
  return false;
}

// ---- Appendix B: Z-OV -> l2-BCP tensor lift ---------------------------------

using BcpSolver = std::function<long long(const BcpInstance&)>;

// u_x = all coordinate products x[k]x[l]; v_y = the negated products. Then
// ||u_x - v_y||^2 = ||u_x||^2 + ||v_y||^2 + 2<x,y>^2, so an orthogonal pair
// exists iff some norm-group pair attains min distance exactly s + t.
inline std::vector<long long> tensor_lift_vector(const std::vector<long long>& x, bool negate) {
  std::vector<long long> u;
  u.reserve(x.size() * x.size());
  for (long long a : x)
    for (long long b : x) u.push_back(negate ? -(a * b) : a * b);
  return u;
}

inline bool zov_to_bcp(const PointSet& x, const PointSet& y, const BcpSolver& solve_bcp) {
  if (x.dim != y.dim) throw DomainError("zov_to_bcp: dimension mismatch");
  long long emax = 0;
  for (const auto& pts : {x.pts, y.pts})
    for (const auto& pt : pts)
      for (long long c : pt) emax = std::max(emax, c < 0 ? -c : c);
  const long long m = static_cast<long long>(x.dim);
  const long long ip_cap = 2 * (m * emax * emax) * (m * emax * emax);

  std::map<long long, std::vector<std::vector<long long>>> us, vs;
  for (const auto& pt : x.pts) {
    auto u = tensor_lift_vector(pt, false);
    long long norm = 0;
    for (long long c : u) norm += c * c;
    us[norm].push_back(std::move(u));
  }
  for (const auto& pt : y.pts) {
    auto v = tensor_lift_vector(pt, true);
    long long norm = 0;
    for (long long c : v) norm += c * c;
    vs[norm].push_back(std::move(v));
  }
  for (const auto& [s, ug] : us)
    for (const auto& [t, vg] : vs) {
      BcpInstance inst(PointSet(ug), PointSet(vg), s + t + ip_cap);
      if (solve_bcp(inst) == s + t) return true;
    }
  return false;
}

}  // namespace kdelab
