#pragma once

#include <cstdint>
#include <set>
#include <random>
#include <vector>

#include "kdelab/errors.hpp"

namespace kdelab {

// Integer point set; all vectors share one dimension m.
struct PointSet {
  std::vector<std::vector<long long>> pts;
  std::size_t dim = 0;

  PointSet() = default;
  explicit PointSet(std::vector<std::vector<long long>> p) : pts(std::move(p)) {
    if (pts.empty()) throw DomainError("PointSet: empty set");
    dim = pts[0].size();
    for (const auto& v : pts)
      if (v.size() != dim) throw DomainError("PointSet: inconsistent dimensions");
  }
  std::size_t size() const { return pts.size(); }
};

inline long long sq_dist(const std::vector<long long>& a, const std::vector<long long>& b) {
  long long s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    long long d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

// l2-BCP(n, m, D) instance: max pairwise squared distance validated against D.
struct BcpInstance {
  PointSet X, Y;
  long long D = 0;

  BcpInstance(PointSet x, PointSet y, long long cap) : X(std::move(x)), Y(std::move(y)), D(cap) {
    if (X.dim != Y.dim) throw DomainError("BcpInstance: X and Y dimensions differ");
    for (const auto& a : X.pts)
      for (const auto& b : Y.pts)
        if (sq_dist(a, b) > D) throw DomainError("BcpInstance: pair exceeds distance cap D");
  }
  std::size_t n_x() const { return X.size(); }
  std::size_t n_y() const { return Y.size(); }
  std::size_t dim() const { return X.dim; }
};

// O(n^2 m) scan oracles.
inline long long brute_force_bcp(const PointSet& x, const PointSet& y) {
  long long best = -1;
  for (const auto& a : x.pts)
    for (const auto& b : y.pts) {
      long long d = sq_dist(a, b);
      if (best < 0 || d < best) best = d;
    }
  return best;
}
inline long long brute_force_bcp(const BcpInstance& inst) { return brute_force_bcp(inst.X, inst.Y); }

inline bool brute_force_ov(const PointSet& x, const PointSet& y) {
  if (x.dim != y.dim) throw DomainError("brute_force_ov: dimension mismatch");
  for (const auto& a : x.pts)
    for (const auto& b : y.pts) {
      long long ip = 0;
      for (std::size_t k = 0; k < a.size(); ++k) ip += a[k] * b[k];
      if (ip == 0) return true;
    }
  return false;
}

// W[p - base, i] = #{ j : ||x_i - y_j||^2 = p }, rows p = base..D. The
// direct-count oracle against which the KDE recovery is checked.
inline std::vector<std::vector<long long>> brute_force_distance_counts(const BcpInstance& inst,
                                                                       long base) {
  std::size_t rows = static_cast<std::size_t>(inst.D - base + 1);
  std::vector<std::vector<long long>> w(rows, std::vector<long long>(inst.n_x(), 0));
  for (std::size_t i = 0; i < inst.n_x(); ++i)
    for (const auto& b : inst.Y.pts) {
      long long d = sq_dist(inst.X.pts[i], b);
      if (d < base) throw DomainError("distance below the beta range of the counting matrix");
      w[static_cast<std::size_t>(d - base)][i] += 1;
    }
  return w;
}

// mt19937_64 draws with rejection sampling: the output stream is pinned by
// the standard, so seeded runs are byte-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_(); }
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw DomainError("Rng::below(0)");
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 gen_;
};

// Random 0/1 instance. With forbid_zero_distance the Y points are drawn by
// rejection against the patterns X occupies (exact-kernel reductions index
// distances from 1), which needs free patterns: |X patterns| < 2^m.
inline BcpInstance random_binary_instance(std::size_t n, std::size_t m, std::uint64_t seed,
                                          bool forbid_zero_distance) {
  if (m >= 62) throw DomainError("random_binary_instance: dimension too large");
  Rng rng(seed);
  std::vector<std::vector<long long>> xs(n, std::vector<long long>(m));
  for (auto& v : xs)
    for (auto& c : v) c = static_cast<long long>(rng.below(2));
  std::vector<std::vector<long long>> ys(n, std::vector<long long>(m));
  if (!forbid_zero_distance) {
    for (auto& v : ys)
      for (auto& c : v) c = static_cast<long long>(rng.below(2));
  } else {
    std::set<unsigned long long> taken;
    for (const auto& v : xs) {
      unsigned long long key = 0;
      for (std::size_t k = 0; k < m; ++k) key |= static_cast<unsigned long long>(v[k]) << k;
      taken.insert(key);
    }
    if (taken.size() >= (1ull << m))
      throw DomainError("random_binary_instance: X covers every pattern, no zero-free Y exists");
    for (auto& v : ys) {
      for (int attempt = 0;; ++attempt) {
        if (attempt > 100000) throw DomainError("random_binary_instance: rejection stalled");
        unsigned long long key = rng.below(1ull << m);
        if (taken.count(key)) continue;
        for (std::size_t k = 0; k < m; ++k) v[k] = static_cast<long long>((key >> k) & 1);
        break;
      }
    }
  }
  return BcpInstance(PointSet(std::move(xs)), PointSet(std::move(ys)), static_cast<long long>(m));
}

inline PointSet random_int_points(std::size_t n, std::size_t m, long long emax, Rng& rng) {
  std::vector<std::vector<long long>> v(n, std::vector<long long>(m));
  for (auto& p : v)
    for (auto& c : p) c = rng.range(-emax, emax);
  return PointSet(v);
}

}  // namespace kdelab
