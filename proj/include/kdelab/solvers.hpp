#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kdelab/reduction.hpp"

namespace kdelab {

template <class S>
using RealPoints = std::vector<std::vector<S>>;

namespace detail {
template <class S>
void check_real_points(const RealPoints<S>& x, const RealPoints<S>& y) {
  if (x.empty() || y.empty()) throw DomainError("kde: empty point set");
  std::size_t m = x[0].size();
  for (const auto& p : x)
    if (p.size() != m) throw DomainError("kde: inconsistent dimension in X");
  for (const auto& p : y)
    if (p.size() != m) throw DomainError("kde: inconsistent dimension in Y");
}

template <class S>
S real_sq_dist(const std::vector<S>& a, const std::vector<S>& b) {
  S acc = num_traits<S>::zero(a[0]);
  for (std::size_t k = 0; k < a.size(); ++k) {
    S d = a[k] - b[k];
    acc += d * d;
  }
  return acc;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic scalar in [-1, 1] from a hashed counter, exact in both modes.
template <class S>
S signed_unit_draw(std::uint64_t seed, std::uint64_t counter, const S& proto) {
  std::uint64_t r = splitmix64(seed ^ splitmix64(counter + 0x51ul));
  long frac = static_cast<long>(r >> 12);  // 52 bits
  return num_traits<S>::from_ratio(frac - (1l << 51), 1ul << 51, proto);
}
}  // namespace detail

// Exact K x u (up to carried precision): the O(n^2) reference all other
// solvers are judged against.
template <class S>
std::vector<S> naive_kde(const RealPoints<S>& x, const RealPoints<S>& y, const std::vector<S>& u,
                         const Kernel<S>& kernel) {
  detail::check_real_points(x, y);
  if (u.size() != y.size()) throw DomainError("naive_kde: weight length mismatch");
  std::vector<S> v;
  v.reserve(x.size());
  for (const auto& xi : x) {
    S acc = num_traits<S>::zero(xi[0]);
    for (std::size_t j = 0; j < y.size(); ++j)
      acc += eval_f(kernel, detail::real_sq_dist(xi, y[j])) * u[j];
    v.push_back(std::move(acc));
  }
  return v;
}

// Monte-Carlo estimate with |S| = ceil(2 ln(2 n^2) / eps^2) draws from the
// |u|-weighted distribution (two-sided Hoeffding: per-entry failure
// probability <= 2 exp(-|S| eps^2 / 2) = 1/n^2). Falls back to the exact sum
// when the sample would not be smaller than n.
template <class S>
std::vector<S> sampling_kde(const RealPoints<S>& x, const RealPoints<S>& y, const std::vector<S>& u,
                            const Kernel<S>& kernel, double eps, std::uint64_t seed) {
  detail::check_real_points(x, y);
  if (u.size() != y.size()) throw DomainError("sampling_kde: weight length mismatch");
  if (!(eps > 0)) throw DomainError("sampling_kde: eps must be positive");
  const std::size_t n = y.size();
  double raw = std::ceil(2.0 * std::log(2.0 * static_cast<double>(n) * static_cast<double>(n)) /
                         (eps * eps));
  if (raw >= static_cast<double>(n)) return naive_kde(x, y, u, kernel);
  const std::size_t samples = static_cast<std::size_t>(raw);

  S zero = num_traits<S>::zero(u[0]);
  std::vector<S> cum;
  cum.reserve(n);
  S total = zero;
  for (const S& w : u) {
    total += abs(w);
    cum.push_back(total);
  }
  if (total.is_zero()) return std::vector<S>(x.size(), zero);

  Rng rng(seed);
  std::vector<std::size_t> picks(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    std::uint64_t r = rng.next() >> 12;
    S target = total * num_traits<S>::from_ratio(static_cast<long>(r), 1ul << 52, total);
    std::size_t lo = 0, hi = n - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (cum[mid] > target)
        hi = mid;
      else
        lo = mid + 1;
    }
    picks[s] = lo;
  }
  S scale = total / num_traits<S>::from_long(static_cast<long>(samples), total);
  std::vector<S> v;
  v.reserve(x.size());
  for (const auto& xi : x) {
    S acc = zero;
    for (std::size_t s = 0; s < samples; ++s) {
      std::size_t j = picks[s];
      S term = eval_f(kernel, detail::real_sq_dist(xi, y[j]));
      acc += (u[j] < zero) ? -term : term;
    }
    v.push_back(acc * scale);
  }
  return v;
}

// ---- polynomial method (appendix C) ----------------------------------------

// Monomial-basis polynomial on [0,1] certified against f on a Chebyshev grid.
struct ApproxPolynomial {
  long degree = 0;
  std::vector<BigFloat> coeffs;  // ascending powers of x
  BigFloat certified_eps;        // the requested target
  BigFloat max_residual;         // measured max |p - f| on the grid
  long grid_size = 0;
  bool leading_zero = false;     // degree-1 stand-in for a constant kernel

  BigFloat eval(const BigFloat& x) const {
    BigFloat acc = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
  }
};

struct FitOptions {
  long degree_cap = 512;
  mpfr_prec_t precision = 0;  // 0: 64 + 6*degree, scaled per trial
  long grid_factor = 10;      // certification grid 10d + 100 Chebyshev points
};

namespace detail {

// x-coordinates (1 + cos(j pi / n))/2 for j = 0..n, mirrored so the endpoints
// are exactly 1 and 0.
inline std::vector<BigFloat> chebyshev_points(long n, mpfr_prec_t prec) {
  std::vector<BigFloat> cosv(n + 1, BigFloat(prec));
  mpfr_t pi, t;
  mpfr_inits2(prec, pi, t, nullptr);
  mpfr_const_pi(pi, MPFR_RNDN);
  for (long j = 0; 2 * j <= n; ++j) {
    if (j == 0) {
      cosv[0] = BigFloat(1l, prec);
    } else if (2 * j == n) {
      cosv[j] = BigFloat(0l, prec);
    } else {
      mpfr_mul_si(t, pi, j, MPFR_RNDN);
      mpfr_div_si(t, t, n, MPFR_RNDN);
      mpfr_cos(cosv[j].raw(), t, MPFR_RNDN);
    }
    cosv[n - j] = -cosv[j];
  }
  mpfr_clears(pi, t, nullptr);
  std::vector<BigFloat> xs;
  xs.reserve(n + 1);
  BigFloat half(Rational(1, 2), prec);
  for (long j = 0; j <= n; ++j) xs.push_back((BigFloat(1l, prec) + cosv[j]) * half);
  return xs;
}

// Chebyshev interpolant of f at the d+1 extrema nodes, returned in the
// monomial basis on [0,1].
inline std::vector<BigFloat> chebyshev_interpolant(const Kernel<BigFloat>& f, long d, mpfr_prec_t prec) {
  std::vector<BigFloat> xs = chebyshev_points(d, prec);
  std::vector<BigFloat> fv;
  fv.reserve(d + 1);
  for (const BigFloat& x : xs) fv.push_back(eval_f(f, x));

  // cos(t pi / d) table for t = 0..2d-1, folded from the node cosines
  std::vector<BigFloat> cosv(d + 1, BigFloat(prec));
  for (long j = 0; j <= d; ++j) cosv[j] = xs[j] + xs[j] - BigFloat(1l, prec);
  auto cos_at = [&](long t) {
    t %= 2 * d;
    if (t < 0) t += 2 * d;
    if (t > d) t = 2 * d - t;
    return cosv[t];
  };

  BigFloat half(Rational(1, 2), prec);
  std::vector<BigFloat> c(d + 1, BigFloat(prec));
  for (long k = 0; k <= d; ++k) {
    BigFloat acc(prec);
    for (long j = 0; j <= d; ++j) {
      BigFloat term = fv[j] * cos_at(j * k);
      if (j == 0 || j == d) term *= half;
      acc += term;
    }
    c[k] = acc * BigFloat(Rational(2, static_cast<unsigned long>(d)), prec);
  }
  c[0] *= half;
  c[d] *= half;

  // accumulate c_k T_k(2x-1) in monomial x-coefficients:
  // T_{k+1} = (4x-2) T_k - T_{k-1}
  std::vector<BigFloat> mono(d + 1, BigFloat(prec));
  std::vector<BigFloat> tprev{BigFloat(1l, prec)};
  std::vector<BigFloat> tcur{BigFloat(-1l, prec), BigFloat(2l, prec)};
  mono[0] += c[0] * tprev[0];
  if (d >= 1)
    for (std::size_t i = 0; i < tcur.size(); ++i) mono[i] += c[1] * tcur[i];
  for (long k = 2; k <= d; ++k) {
    std::vector<BigFloat> tnext(k + 1, BigFloat(prec));
    for (long i = 0; i <= k - 1; ++i) {
      if (i + 1 <= k) tnext[i + 1] += BigFloat(4l, prec) * tcur[i];
      tnext[i] -= BigFloat(2l, prec) * tcur[i];
    }
    for (std::size_t i = 0; i < tprev.size(); ++i) tnext[i] -= tprev[i];
    for (long i = 0; i <= k; ++i) mono[i] += c[k] * tnext[i];
    tprev = std::move(tcur);
    tcur = std::move(tnext);
  }
  return mono;
}

inline BigFloat grid_residual(const Kernel<BigFloat>& f, const ApproxPolynomial& p, long grid,
                              mpfr_prec_t prec) {
  std::vector<BigFloat> xs = chebyshev_points(grid, prec);
  BigFloat worst(prec);
  for (const BigFloat& x : xs) {
    BigFloat r = abs(p.eval(x) - eval_f(f, x));
    if (r > worst) worst = r;
  }
  return worst;
}

inline ApproxPolynomial try_degree(const Kernel<BigFloat>& f, long d, const Rational& eps,
                                   const FitOptions& opt) {
  mpfr_prec_t prec = opt.precision ? opt.precision : static_cast<mpfr_prec_t>(64 + 6 * d);
  ApproxPolynomial p;
  p.degree = d;
  p.coeffs = chebyshev_interpolant(f, d, prec);
  p.certified_eps = BigFloat(eps, prec);
  p.grid_size = opt.grid_factor * d + 100;
  p.max_residual = grid_residual(f, p, p.grid_size, prec);
  return p;
}

}  // namespace detail

// Minimal-degree Chebyshev fit: double the trial degree until the grid
// residual clears eps, then binary search the smallest passing degree.
inline ApproxPolynomial fit_polynomial(const Kernel<BigFloat>& f, const Rational& eps,
                                       const FitOptions& opt = {}) {
  if (eps.sgn() <= 0 || eps >= Rational(1)) throw DomainError("fit_polynomial: eps must lie in (0,1)");
  auto passes = [&](const ApproxPolynomial& p) { return p.max_residual.cmp(eps) <= 0; };

  long d = 1;
  ApproxPolynomial best = detail::try_degree(f, d, eps, opt);
  while (!passes(best)) {
    d *= 2;
    if (d > opt.degree_cap)
      throw DomainError("fit_polynomial: degree cap " + std::to_string(opt.degree_cap) + " exceeded");
    best = detail::try_degree(f, d, eps, opt);
  }
  long lo = d / 2 + 1, hi = d;
  while (lo < hi) {
    long mid = lo + (hi - lo) / 2;
    ApproxPolynomial cand = detail::try_degree(f, mid, eps, opt);
    if (passes(cand)) {
      best = std::move(cand);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  best.leading_zero = best.coeffs.back().is_zero();
  return best;
}

// ---- feature-map factorization ---------------------------------------------

// All monomials of total degree <= max_deg in m variables, graded order, with
// a parent pointer (strip the first active variable) for O(1)-per-entry
// evaluation.
struct MonomialTable {
  std::size_t m = 0;
  long max_deg = 0;
  std::vector<std::vector<int>> exps;
  std::vector<std::pair<std::uint32_t, int>> parent;  // (index of e - unit_k, k); (0,-1) for 1
  std::vector<std::array<std::uint32_t, 16>> step;    // step[i][k] = index of e + unit_k

  static constexpr std::uint32_t kNone = 0xffffffffu;

  static MonomialTable build(std::size_t m, long max_deg);
  std::size_t size() const { return exps.size(); }

  template <class S>
  std::vector<S> evaluate(const std::vector<S>& coords) const {
    std::vector<S> vals;
    vals.reserve(size());
    vals.push_back(num_traits<S>::one(coords[0]));
    for (std::size_t i = 1; i < size(); ++i)
      vals.push_back(vals[parent[i].first] * coords[static_cast<std::size_t>(parent[i].second)]);
    return vals;
  }
};

inline MonomialTable MonomialTable::build(std::size_t m, long max_deg) {
  if (m == 0 || m > 16) throw DomainError("MonomialTable: need 1 <= m <= 16");
  MonomialTable t;
  t.m = m;
  t.max_deg = max_deg;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  auto key_of = [m](const std::vector<int>& e) {
    std::uint64_t key = 0;
    for (std::size_t k = 0; k < m; ++k) key = key * 1024 + static_cast<std::uint64_t>(e[k]);
    return key;
  };
  // graded enumeration so parents precede children
  for (long g = 0; g <= max_deg; ++g) {
    std::vector<int> scratch(m, 0);
    auto emit_deg = [&](auto&& self, std::size_t k, long left) -> void {
      if (k + 1 == m) {
        scratch[k] = static_cast<int>(left);
        index.emplace(key_of(scratch), static_cast<std::uint32_t>(t.exps.size()));
        t.exps.push_back(scratch);
        return;
      }
      for (long v = 0; v <= left; ++v) {
        scratch[k] = static_cast<int>(v);
        self(self, k + 1, left - v);
      }
      scratch[k] = 0;
    };
    emit_deg(emit_deg, 0, g);
  }
  t.parent.resize(t.size());
  t.step.assign(t.size(), {});
  std::vector<int> e;
  for (std::size_t i = 0; i < t.size(); ++i) {
    e = t.exps[i];
    if (i == 0) {
      t.parent[0] = {0, -1};
    } else {
      for (std::size_t k = 0; k < m; ++k)
        if (e[k] > 0) {
          --e[k];
          t.parent[i] = {index.at(key_of(e)), static_cast<int>(k)};
          ++e[k];
          break;
        }
    }
    long deg = 0;
    for (std::size_t k = 0; k < m; ++k) deg += t.exps[i][k];
    for (std::size_t k = 0; k < m; ++k) {
      if (deg + 1 > max_deg) {
        t.step[i][k] = kNone;
      } else {
        e = t.exps[i];
        ++e[k];
        t.step[i][k] = index.at(key_of(e));
      }
    }
  }
  return t;
}

// P = Phi x Psi with Phi[i,t] = c_t phi_t(x_i), Psi[t,j] = psi_t(y_j): the
// multinomial expansion of p(||u - v||^2) split into u- and v-monomials.
struct FeatureFactorization {
  std::size_t n_terms = 0;
  long degree = 0;
  std::size_t m = 0;
  std::vector<std::array<std::uint32_t, 2>> terms;  // (u-monomial, v-monomial) table indices
  std::vector<BigFloat> coeff;                      // c_t, merged additively
  MonomialTable table;
  Matrix<BigFloat> phi;  // n x |T|
  Matrix<BigFloat> psi;  // |T| x n
  BigFloat certified_eps;
};

struct FeatureOptions {
  std::size_t term_cap = 200000;  // memory guard on |T|
};

// |T| <= C(2m + 2d, 2m), computed exactly.
inline bool terms_within_binomial_bound(std::size_t n_terms, std::size_t m, long d) {
  mpz_t bin;
  mpz_init(bin);
  mpz_bin_uiui(bin, 2 * m + 2 * static_cast<unsigned long>(d), 2 * m);
  bool ok = mpz_cmp_ui(bin, n_terms) >= 0;
  mpz_clear(bin);
  return ok;
}

inline FeatureFactorization build_feature_maps(const ApproxPolynomial& p, const RealPoints<BigFloat>& x,
                                               const RealPoints<BigFloat>& y,
                                               const FeatureOptions& opt = {}) {
  detail::check_real_points(x, y);
  const std::size_t m = x[0].size();
  const long d = p.degree;
  mpfr_prec_t prec = p.coeffs[0].prec();

  // center the coordinates: distances are translation-invariant and centered
  // coordinates stay in [-1,1] whenever pairwise distances stay within 1
  std::vector<BigFloat> mid(m, BigFloat(prec));
  for (std::size_t k = 0; k < m; ++k) {
    BigFloat lo = x[0][k], hi = x[0][k];
    for (const auto& pts : {&x, &y})
      for (const auto& pt : *pts) {
        if (pt[k] < lo) lo = pt[k];
        if (pt[k] > hi) hi = pt[k];
      }
    mid[k] = (lo + hi) * BigFloat(Rational(1, 2), prec);
  }
  auto centered = [&](const std::vector<BigFloat>& pt) {
    std::vector<BigFloat> c;
    c.reserve(m);
    for (std::size_t k = 0; k < m; ++k) c.push_back(pt[k] - mid[k]);
    return c;
  };

  MonomialTable table = MonomialTable::build(m, 2 * d);

  // Horner over the term dictionary: P <- P * s + a_j with
  // s = sum_k (u_k^2 - 2 u_k v_k + v_k^2)
  std::unordered_map<std::uint64_t, BigFloat> dict;
  auto key_of = [](std::uint32_t iu, std::uint32_t iv) {
    return (static_cast<std::uint64_t>(iu) << 32) | iv;
  };
  dict.emplace(key_of(0, 0), p.coeffs[static_cast<std::size_t>(d)]);
  for (long j = d - 1; j >= 0; --j) {
    std::unordered_map<std::uint64_t, BigFloat> next;
    next.reserve(dict.size() * 3);
    BigFloat two(2l, prec);
    for (const auto& [key, c] : dict) {
      auto iu = static_cast<std::uint32_t>(key >> 32);
      auto iv = static_cast<std::uint32_t>(key & 0xffffffffu);
      for (std::size_t k = 0; k < m; ++k) {
        std::uint32_t iu1 = table.step[iu][k];
        std::uint32_t iv1 = table.step[iv][k];
        std::uint32_t iu2 = iu1 == MonomialTable::kNone ? MonomialTable::kNone : table.step[iu1][k];
        std::uint32_t iv2 = iv1 == MonomialTable::kNone ? MonomialTable::kNone : table.step[iv1][k];
        if (iu2 == MonomialTable::kNone || iv2 == MonomialTable::kNone ||
            iu1 == MonomialTable::kNone || iv1 == MonomialTable::kNone)
          throw DomainError("build_feature_maps: exponent table overflow");
        auto add = [&](std::uint32_t a, std::uint32_t b, const BigFloat& v) {
          auto [it, fresh] = next.try_emplace(key_of(a, b), v);
          if (!fresh) it->second += v;
        };
        add(iu2, iv, c);
        add(iu, iv2, c);
        add(iu1, iv1, -(two * c));
      }
    }
    // the multiplication above contributed s*P; now add the coefficient a_j
    auto [it0, fresh0] = next.try_emplace(key_of(0, 0), BigFloat(prec));
    (void)fresh0;
    it0->second += p.coeffs[static_cast<std::size_t>(j)];
    dict = std::move(next);
  }

  FeatureFactorization f;
  f.degree = d;
  f.m = m;
  f.certified_eps = p.certified_eps;
  std::vector<std::pair<std::uint64_t, BigFloat>> entries;
  entries.reserve(dict.size());
  for (auto& [key, c] : dict)
    if (!c.is_zero()) entries.emplace_back(key, std::move(c));
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (entries.size() > opt.term_cap)
    throw DomainError("build_feature_maps: |T| = " + std::to_string(entries.size()) +
                      " exceeds the configured cap " + std::to_string(opt.term_cap));
  f.n_terms = entries.size();
  f.terms.reserve(f.n_terms);
  f.coeff.reserve(f.n_terms);
  for (auto& [key, c] : entries) {
    f.terms.push_back({static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key & 0xffffffffu)});
    f.coeff.push_back(std::move(c));
  }

  f.phi = Matrix<BigFloat>(x.size(), f.n_terms, BigFloat(prec));
  f.psi = Matrix<BigFloat>(f.n_terms, y.size(), BigFloat(prec));
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<BigFloat> vals = table.evaluate(centered(x[i]));
    for (std::size_t t = 0; t < f.n_terms; ++t) f.phi(i, t) = f.coeff[t] * vals[f.terms[t][0]];
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    std::vector<BigFloat> vals = table.evaluate(centered(y[j]));
    for (std::size_t t = 0; t < f.n_terms; ++t) f.psi(t, j) = vals[f.terms[t][1]];
  }
  f.table = std::move(table);
  return f;
}

// Phi x (Psi x u): two rectangular mat-vec products, ascending-index
// summation for determinism.
inline std::vector<BigFloat> poly_kde(const FeatureFactorization& f, const std::vector<BigFloat>& u) {
  if (u.size() != f.psi.cols()) throw DomainError("poly_kde: weight length mismatch");
  std::vector<BigFloat> z = mat_vec(f.psi, u);
  return mat_vec(f.phi, z);
}

inline std::vector<BigFloat> poly_kde(const RealPoints<BigFloat>& x, const RealPoints<BigFloat>& y,
                                      const std::vector<BigFloat>& u, const ApproxPolynomial& p,
                                      const FeatureOptions& opt = {}) {
  return poly_kde(build_feature_maps(p, x, y, opt), u);
}

// ---- noisy oracle wrapper (Def. 1.1 contract boundary) ----------------------

enum class NoiseMode { Random, AdversarialSign };

// Wraps an exact oracle and perturbs every answer entry: adversarial mode by
// exactly +-eps_noise*||u||_1 (per-call sign from `row_signs`, indexed by the
// lift's alpha row), random mode uniformly within that magnitude. eps_noise
// is fixed at construction; the budget the caller passes to answer() is
// ignored, which lets tests drive the oracle beyond its advertised contract.
template <class S>
class NoisyOracle final : public KdeOracle<S> {
 public:
  NoisyOracle(std::shared_ptr<const KdeOracle<S>> base, S eps_noise, NoiseMode mode, std::uint64_t seed,
              std::vector<int> row_signs = {})
      : base_(std::move(base)),
        eps_noise_(std::move(eps_noise)),
        mode_(mode),
        seed_(seed),
        row_signs_(std::move(row_signs)) {}

  std::vector<S> answer(const LiftedInstance<S>& inst, const std::vector<S>& u,
                        const S& eps) const override {
    std::vector<S> v = base_->answer(inst, u, eps);
    if (eps_noise_.is_zero()) return v;
    S norm1 = num_traits<S>::zero(eps_noise_);
    for (const S& w : u) norm1 += abs(w);
    S mag = eps_noise_ * norm1;
    if (mode_ == NoiseMode::AdversarialSign) {
      int sign = row_signs_.empty() ? 1 : row_signs_.at(inst.ell);
      for (S& vi : v) vi += (sign >= 0 ? mag : -mag);
    } else {
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] += mag * detail::signed_unit_draw(seed_, inst.ell * 0x10001ull + i, mag);
    }
    return v;
  }

 private:
  std::shared_ptr<const KdeOracle<S>> base_;
  S eps_noise_;
  NoiseMode mode_;
  std::uint64_t seed_;
  std::vector<int> row_signs_;
};

// Sign pattern of the max-|row-sum| row of M^-1: the alignment that drives
// the recovered counts to the full tau * eps * n deviation the contract
// permits.
template <class S>
std::vector<int> worst_sign_pattern(const Matrix<S>& counting_matrix) {
  Matrix<S> inv = inverse(counting_matrix);
  std::size_t n = inv.rows();
  std::size_t worst = 0;
  S worst_sum = num_traits<S>::zero(inv(0, 0));
  for (std::size_t i = 0; i < n; ++i) {
    S row = num_traits<S>::zero(inv(0, 0));
    for (std::size_t j = 0; j < n; ++j) row += abs(inv(i, j));
    if (row > worst_sum) {
      worst_sum = row;
      worst = i;
    }
  }
  std::vector<int> signs(n);
  for (std::size_t j = 0; j < n; ++j) signs[j] = inv(worst, j).sgn() >= 0 ? 1 : -1;
  return signs;
}

}  // namespace kdelab
