#pragma once

#include <mpfr.h>

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kdelab/kernels.hpp"
#include "kdelab/matrix.hpp"
#include "kdelab/schur.hpp"

namespace kdelab {

// M(D; f, alpha, beta, c) with M[l,p] = f(c + alpha_l * beta_p). `dist_cap`
// is the distance budget D of the reduction the spec serves; the matrix side
// length is alpha.size() (D for the exact kernels, D+1 for the Gaussian
// layout with its leading zero row).
template <class S>
struct CountingMatrixSpec {
  KernelPtr<S> kernel;
  std::vector<S> alpha;
  std::vector<S> beta;
  S c;
  long dist_cap = 0;

  std::size_t size() const { return alpha.size(); }
};

template <class S>
CountingMatrixSpec<S> make_counting_spec(KernelPtr<S> kernel, std::vector<S> alpha, std::vector<S> beta,
                                         S c, long dist_cap) {
  if (!kernel) throw DomainError("counting spec: null kernel");
  if (alpha.empty() || alpha.size() != beta.size())
    throw DomainError("counting spec: alpha and beta must be nonempty and equally sized");
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (std::size_t j = i + 1; j < alpha.size(); ++j) {
      if (alpha[i] == alpha[j]) throw DomainError("counting spec: alpha entries must be pairwise distinct");
      if (beta[i] == beta[j]) throw DomainError("counting spec: beta entries must be pairwise distinct");
    }
  S zero = num_traits<S>::zero(c);
  S one = num_traits<S>::one(c);
  for (const S& a : alpha)
    for (const S& b : beta) {
      S x = c + a * b;
      if (x < zero || x > one)
        throw DomainError("counting spec: c + alpha*beta leaves [0,1]");
    }
  return CountingMatrixSpec<S>{std::move(kernel), std::move(alpha), std::move(beta), std::move(c), dist_cap};
}

template <class S>
Matrix<S> build_counting_matrix(const CountingMatrixSpec<S>& spec) {
  const std::size_t n = spec.size();
  Matrix<S> m(n, n, num_traits<S>::zero(spec.c));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t p = 0; p < n; ++p) m(l, p) = eval_f(*spec.kernel, spec.c + spec.alpha[l] * spec.beta[p]);
  return m;
}

// (alpha, beta) -> (alpha/s, s*beta). The built matrix is identical; used to
// move between analysis-scaled vectors and the reduction-ready identity beta.
template <class S>
CountingMatrixSpec<S> rescale(const CountingMatrixSpec<S>& spec, const S& s) {
  if (s.is_zero()) throw DomainError("rescale: zero scale");
  CountingMatrixSpec<S> r = spec;
  for (auto& a : r.alpha) a /= s;
  for (auto& b : r.beta) b *= s;
  return r;
}

namespace detail {
inline bool scalar_integer_value(const Rational& v, long* out) {
  if (!v.is_integer()) return false;
  *out = v.to_long();
  return true;
}
inline bool scalar_integer_value(const BigFloat& v, long* out) {
  BigFloat r = v.round_nearest();
  if (!(r == v)) return false;
  *out = v.round_to_long();
  return true;
}
}  // namespace detail

// The distance values indexed by beta, which the reduction requires to be
// consecutive integers starting at 0 (Gaussian layout) or 1.
template <class S>
std::vector<long> beta_integer_values(const CountingMatrixSpec<S>& spec) {
  std::vector<long> vals(spec.size());
  for (std::size_t p = 0; p < spec.size(); ++p) {
    if (!detail::scalar_integer_value(spec.beta[p], &vals[p]))
      throw DomainError("counting spec: beta is not an integer vector");
    if (p > 0 && vals[p] != vals[p - 1] + 1)
      throw DomainError("counting spec: beta must be consecutive integers");
  }
  if (vals.front() != 0 && vals.front() != 1)
    throw DomainError("counting spec: beta must start at 0 or 1");
  return vals;
}

// ---- per-kernel constructions (paper section 5 and 6.3) -------------------

enum class Round { Down, Nearest, Up };

namespace detail {
inline mpfr_rnd_t rnd(Round r) {
  return r == Round::Down ? MPFR_RNDD : (r == Round::Up ? MPFR_RNDU : MPFR_RNDN);
}
inline mpfr_rnd_t rnd_opposite(Round r) {
  return r == Round::Down ? MPFR_RNDU : (r == Round::Up ? MPFR_RNDD : MPFR_RNDN);
}
}  // namespace detail

// tau(M) <= (5e / (1 - e^{-B/D}))^D, with directed rounding so Down/Up give
// certified under/over-estimates.
inline BigFloat gaussian_tau_bound(long d, const Rational& b, mpfr_prec_t prec, Round dir = Round::Down) {
  if (d < 1) throw DomainError("gaussian_tau_bound: D >= 1 required");
  if (b.sgn() <= 0) throw DomainError("gaussian_tau_bound: B > 0 required");
  mpfr_t num, den, t;
  mpfr_inits2(prec, num, den, t, nullptr);
  // num = 5e, rounded in the target direction
  mpfr_set_ui(num, 1, MPFR_RNDN);
  mpfr_exp(num, num, detail::rnd(dir));
  mpfr_mul_ui(num, num, 5, detail::rnd(dir));
  // den = 1 - e^{-B/D}, rounded opposite
  Rational mbd = -(b / Rational(d));
  mpfr_set_q(t, mbd.raw(), detail::rnd(dir));
  mpfr_exp(t, t, detail::rnd(dir));  // e^{-B/D} same-dir: larger t -> larger bound
  mpfr_ui_sub(den, 1, t, detail::rnd_opposite(dir));
  BigFloat out(prec);
  mpfr_div(out.raw(), num, den, detail::rnd(dir));
  mpfr_pow_ui(out.raw(), out.raw(), static_cast<unsigned long>(d), detail::rnd(dir));
  mpfr_clears(num, den, t, nullptr);
  return out;
}

// tau(M) <= (7e)^{2 rho D}
inline BigFloat tstudent_tau_bound(long d, const Rational& rho, mpfr_prec_t prec, Round dir = Round::Down) {
  if (d < 1 || rho < Rational(1)) throw DomainError("tstudent_tau_bound: need D >= 1, rho >= 1");
  mpfr_t base, expo;
  mpfr_inits2(prec, base, expo, nullptr);
  mpfr_set_ui(base, 1, MPFR_RNDN);
  mpfr_exp(base, base, detail::rnd(dir));
  mpfr_mul_ui(base, base, 7, detail::rnd(dir));
  Rational e2 = Rational(2) * rho * Rational(d);
  mpfr_set_q(expo, e2.raw(), detail::rnd(dir));
  BigFloat out(prec);
  mpfr_pow(out.raw(), base, expo, detail::rnd(dir));
  mpfr_clears(base, expo, nullptr);
  return out;
}

// tau(M) <= 2^sigma (7e)^{2D}
inline BigFloat rq_tau_bound(long d, const Rational& sigma, mpfr_prec_t prec, Round dir = Round::Down) {
  if (d < 1 || sigma < Rational(1)) throw DomainError("rq_tau_bound: need D >= 1, sigma >= 1");
  BigFloat seven = tstudent_tau_bound(d, Rational(1), prec, dir);  // (7e)^{2D}
  mpfr_t two, s;
  mpfr_inits2(prec, two, s, nullptr);
  mpfr_set_ui(two, 2, MPFR_RNDN);
  mpfr_set_q(s, sigma.raw(), detail::rnd(dir));
  BigFloat p2(prec);
  mpfr_pow(p2.raw(), two, s, detail::rnd(dir));
  BigFloat out(prec);
  mpfr_mul(out.raw(), p2.raw(), seven.raw(), detail::rnd(dir));
  mpfr_clears(two, s, nullptr);
  return out;
}

// 64 + ceil(D * log2(tau bound)) bits: enough headroom for the inverse
// entries the Gaussian reduction manipulates.
inline mpfr_prec_t default_gaussian_precision(long d, const Rational& b) {
  BigFloat bound = gaussian_tau_bound(d, b, 128, Round::Up);
  mpfr_t l2;
  mpfr_init2(l2, 64);
  mpfr_log2(l2, bound.raw(), MPFR_RNDU);
  mpfr_mul_si(l2, l2, d, MPFR_RNDU);
  mpfr_ceil(l2, l2);
  long bits = mpfr_get_si(l2, MPFR_RNDU);
  mpfr_clear(l2);
  if (bits < 0) bits = 0;
  return static_cast<mpfr_prec_t>(64 + bits);
}

// (D+1)-point Gaussian spec: x_i = e^{-B alpha_i} equally spaced on
// [e^{-B/D}, 1], i.e. x_i = 1 - i (1 - e^{-B/D})/D; alpha_0 = 0,
// alpha_D = 1/D; beta = (0, 1, ..., D), c = 0.
inline CountingMatrixSpec<BigFloat> gaussian_spec(long d, const Rational& b, mpfr_prec_t prec = 0) {
  if (d < 1) throw DomainError("gaussian_spec: D >= 1 required");
  if (prec == 0) prec = default_gaussian_precision(d, b);
  BigFloat proto(prec);
  BigFloat bf(b, prec);
  BigFloat r = (num_traits<BigFloat>::one(proto) - (-(bf / BigFloat(d, prec))).exp()) / BigFloat(d, prec);
  std::vector<BigFloat> alpha, beta;
  alpha.reserve(d + 1);
  beta.reserve(d + 1);
  for (long i = 0; i <= d; ++i) {
    if (i == 0) {
      alpha.push_back(num_traits<BigFloat>::zero(proto));
    } else if (i == d) {
      // exactly 1/D by construction (x_D = e^{-B/D}); storing the closed form
      // keeps alpha_D * D from drifting past the [0,1] boundary
      alpha.push_back(num_traits<BigFloat>::from_ratio(1, static_cast<unsigned long>(d), proto));
    } else {
      BigFloat xi = num_traits<BigFloat>::one(proto) - BigFloat(i, prec) * r;
      alpha.push_back(-(xi.log()) / bf);
    }
    beta.push_back(BigFloat(i, prec));
  }
  return make_counting_spec<BigFloat>(std::make_shared<GaussianKernel>(b), std::move(alpha),
                                      std::move(beta), num_traits<BigFloat>::zero(proto), d);
}

// Reduction-ready t-Student spec: alpha_l = l/D^2, beta_p = p, c = 0.
template <class S>
CountingMatrixSpec<S> tstudent_spec(long d, const Rational& rho, const S& proto) {
  if (d < 1) throw DomainError("tstudent_spec: D >= 1 required");
  std::vector<S> alpha, beta;
  for (long l = 1; l <= d; ++l) {
    alpha.push_back(num_traits<S>::from_ratio(l, static_cast<unsigned long>(d) * d, proto));
    beta.push_back(num_traits<S>::from_long(l, proto));
  }
  return make_counting_spec<S>(std::make_shared<TStudentKernel<S>>(rho), std::move(alpha),
                               std::move(beta), num_traits<S>::zero(proto), d);
}

// Reduction-ready Cauchy spec: alpha_l = l/D^2, beta_p = p, c = 0. The
// matrix is the rho = 1 scaled Cauchy matrix of section 5.2.
template <class S>
CountingMatrixSpec<S> cauchy_spec(long d, const S& proto) {
  if (d < 1) throw DomainError("cauchy_spec: D >= 1 required");
  std::vector<S> alpha, beta;
  for (long l = 1; l <= d; ++l) {
    alpha.push_back(num_traits<S>::from_ratio(l, static_cast<unsigned long>(d) * d, proto));
    beta.push_back(num_traits<S>::from_long(l, proto));
  }
  return make_counting_spec<S>(std::make_shared<CauchyKernel<S>>(), std::move(alpha), std::move(beta),
                               num_traits<S>::zero(proto), d);
}

// Reduction-ready Rational Quadratic spec for the reflected kernel
// g(x) = (2-x)^{-sigma}: alpha_l = l/D^2, beta_p = p, c = 0.
template <class S>
CountingMatrixSpec<S> rq_spec(long d, const Rational& sigma, const S& proto) {
  if (d < 1) throw DomainError("rq_spec: D >= 1 required");
  std::vector<S> alpha, beta;
  for (long l = 1; l <= d; ++l) {
    alpha.push_back(num_traits<S>::from_ratio(l, static_cast<unsigned long>(d) * d, proto));
    beta.push_back(num_traits<S>::from_long(l, proto));
  }
  return make_counting_spec<S>(std::make_shared<ReflectedRQKernel<S>>(sigma), std::move(alpha),
                               std::move(beta), num_traits<S>::zero(proto), d);
}

// ---- closed-form determinants (paper section 5.2) --------------------------

// det[1/(a_i + b_j)] = prod_{i<j}(a_i-a_j)(b_i-b_j) / prod_{i,j}(a_i+b_j)
template <class S>
S cauchy_det(const std::vector<S>& a, const std::vector<S>& b) {
  if (a.empty() || a.size() != b.size()) throw DomainError("cauchy_det: need equal nonempty vectors");
  const std::size_t n = a.size();
  S num = num_traits<S>::one(a[0]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) num *= (a[i] - a[j]) * (b[i] - b[j]);
  S den = num_traits<S>::one(a[0]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      S s = a[i] + b[j];
      if (s.is_zero()) throw DomainError("cauchy_det: a_i + b_j = 0");
      den *= s;
    }
  return num / den;
}

// |det(M) / det(M^{s-,t-})| for M[i,j] = 1/(1 + a_i b_j), via the minor-ratio
// closed form. An empty minor (n = 1) has determinant 1.
template <class S>
S cauchy_minor_ratio(const std::vector<S>& a, const std::vector<S>& b, std::size_t s, std::size_t t) {
  if (a.empty() || a.size() != b.size()) throw DomainError("cauchy_minor_ratio: need equal nonempty vectors");
  const std::size_t n = a.size();
  if (s >= n || t >= n) throw DomainError("cauchy_minor_ratio: index out of range");
  S one = num_traits<S>::one(a[0]);
  S num = one;
  for (std::size_t i = 0; i < n; ++i)
    if (i != s) num *= (a[i] - a[s]);
  for (std::size_t j = 0; j < n; ++j)
    if (j != t) num *= (b[j] - b[t]);
  S den = one;
  for (std::size_t i = 0; i < n; ++i) den *= one + a[i] * b[t];
  for (std::size_t j = 0; j < n; ++j)
    if (j != t) den *= one + a[s] * b[j];
  return abs(num / den);
}

// ---- Cauchy-Binet / Schur expansion (paper section 6) ----------------------

// det(M) = V(alpha) V(beta) sum_lambda prod_i f^(lambda_i+i-1)(c)/(lambda_i+i-1)!
//          * s_lambda(alpha) s_lambda(beta),
// truncated to |lambda| <= cutoff, enumerated weight-ascending then lex.
template <class S>
S cauchy_binet_det(const CountingMatrixSpec<S>& spec, long cutoff) {
  const std::size_t n = spec.size();
  S sum = num_traits<S>::zero(spec.c);
  for (long w = 0; w <= cutoff; ++w) {
    for (const Partition& lam : partitions_of_weight(n, w)) {
      S term = num_traits<S>::one(spec.c);
      for (std::size_t i = 0; i < n; ++i)
        term *= spec.kernel->taylor_coeff(static_cast<std::size_t>(lam[i]) + i, spec.c);
      if (term.is_zero()) continue;
      term *= schur_cauchy(lam, spec.alpha) * schur_cauchy(lam, spec.beta);
      sum += term;
    }
  }
  return vandermonde(spec.alpha) * vandermonde(spec.beta) * sum;
}

// F_lambda / E_lambda = prod_i coeff(lambda_i + delta_i) / coeff(lambda_i + delta_i + 1)
// (the Schur factors cancel). Requires an absolutely monotone kernel so every
// coefficient is positive.
template <class S>
S elambda_flambda_ratio(const Partition& lambda, const Kernel<S>& kernel, const S& c) {
  if (!kernel.flags().absolutely_monotone)
    throw DomainError("elambda_flambda_ratio: kernel " + kernel.name() + " is not absolutely monotone");
  S ratio = num_traits<S>::one(c);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    std::size_t k = static_cast<std::size_t>(lambda[i]) + i;
    S fk = kernel.taylor_coeff(k, c);
    S ek = kernel.taylor_coeff(k + 1, c);
    if (ek.is_zero()) throw DomainError("elambda_flambda_ratio: zero Taylor coefficient at order " +
                                        std::to_string(k + 1));
    ratio *= fk / ek;
  }
  return ratio;
}

}  // namespace kdelab
