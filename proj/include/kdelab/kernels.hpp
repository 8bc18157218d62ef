#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>

#include "kdelab/errors.hpp"
#include "kdelab/numeric.hpp"

namespace kdelab {

struct KernelFlags {
  // (-1)^k f^(k) >= 0 everywhere; by Schoenberg's characterization this is
  // exactly positive definiteness of the induced radial kernel, and it gates
  // the reflection g(x) = f(1-x).
  bool completely_monotone = false;
  // f^(k) >= 0 everywhere (holds for the reflections of the above)
  bool absolutely_monotone = false;
  // decreasing kernel whose n*f((p+1)/m) < f(p/m) premise is worth probing
  bool rapid_decay_checkable = false;
};

// prod_{i<n} (sigma + i) / n!  — the generalized binomial C(sigma+n-1, n).
inline Rational rising_over_factorial(const Rational& sigma, std::size_t n) {
  Rational num(1), den(1);
  for (std::size_t i = 0; i < n; ++i) {
    num *= sigma + Rational(static_cast<long>(i));
    den *= Rational(static_cast<long>(i) + 1);
  }
  return num / den;
}

// A kernel f on [0,1] with pointwise evaluation and Taylor coefficients
// f^(n)(c)/n! around any admissible center. All built-ins act on squared
// euclidean distance; an l1 or inner-product kernel would be a new
// implementation of this interface.
template <class S>
class Kernel : public std::enable_shared_from_this<Kernel<S>> {
 public:
  virtual ~Kernel() = default;
  virtual std::string name() const = 0;
  virtual KernelFlags flags() const = 0;
  virtual S eval(const S& x) const = 0;
  virtual S taylor_coeff(std::size_t n, const S& c) const = 0;

  // g(x) = f(1-x); only defined for completely monotone f.
  virtual std::shared_ptr<const Kernel<S>> reflected() const;
};

template <class S>
using KernelPtr = std::shared_ptr<const Kernel<S>>;

// Domain-checked evaluation on the descriptor's interval [0,1].
template <class S>
S eval_f(const Kernel<S>& k, const S& x) {
  S zero = num_traits<S>::zero(x);
  S one = num_traits<S>::one(x);
  if (x < zero || x > one) throw DomainError("eval_f: argument outside [0,1] for kernel " + k.name());
  return k.eval(x);
}

namespace detail {

// base^e for rational e; exact mode insists on an integral exponent.
template <class S>
S power_rat(const S& base, const Rational& e) {
  if (e.is_integer()) return pow_long(base, e.to_long());
  if constexpr (num_traits<S>::exact) {
    throw DomainError("power: non-integer exponent in exact mode");
  } else {
    return base.pow(BigFloat(e, base.prec()));
  }
}

template <class S>
class ReflectedKernel final : public Kernel<S> {
 public:
  explicit ReflectedKernel(KernelPtr<S> base) : base_(std::move(base)) {}
  std::string name() const override { return "reflected(" + base_->name() + ")"; }
  KernelFlags flags() const override { return {false, true, false}; }
  S eval(const S& x) const override {
    return base_->eval(num_traits<S>::one(x) - x);
  }
  S taylor_coeff(std::size_t n, const S& c) const override {
    S v = base_->taylor_coeff(n, num_traits<S>::one(c) - c);
    return (n % 2 == 0) ? v : -v;
  }

 private:
  KernelPtr<S> base_;
};

}  // namespace detail

template <class S>
std::shared_ptr<const Kernel<S>> Kernel<S>::reflected() const {
  if (!flags().completely_monotone)
    throw DomainError("reflect: kernel " + name() + " is not flagged completely monotone");
  return std::make_shared<detail::ReflectedKernel<S>>(this->shared_from_this());
}

template <class S>
KernelPtr<S> reflect(const KernelPtr<S>& f) {
  return f->reflected();
}

// f_B(x) = f(B x), mapping domain [0,B] onto [0,1].
template <class S>
class ScaledKernel final : public Kernel<S> {
 public:
  ScaledKernel(KernelPtr<S> base, const S& b) : base_(std::move(base)), b_(b) {
    if (!(b_ > num_traits<S>::zero(b_))) throw DomainError("scale_to_unit: B must be positive");
  }
  std::string name() const override { return "scaled(" + base_->name() + ",B)"; }
  KernelFlags flags() const override { return base_->flags(); }
  S eval(const S& x) const override { return base_->eval(b_ * x); }
  S taylor_coeff(std::size_t n, const S& c) const override {
    return pow_long(b_, static_cast<long>(n)) * base_->taylor_coeff(n, b_ * c);
  }

 private:
  KernelPtr<S> base_;
  S b_;
};

template <class S>
KernelPtr<S> scale_to_unit(const KernelPtr<S>& f, const S& b) {
  return std::make_shared<ScaledKernel<S>>(f, b);
}

template <class S>
class ConstantKernel final : public Kernel<S> {
 public:
  std::string name() const override { return "constant"; }
  KernelFlags flags() const override { return {true, true, true}; }
  S eval(const S& x) const override { return num_traits<S>::one(x); }
  S taylor_coeff(std::size_t n, const S& c) const override {
    return n == 0 ? num_traits<S>::one(c) : num_traits<S>::zero(c);
  }
  std::shared_ptr<const Kernel<S>> reflected() const override { return this->shared_from_this(); }
};

// Gaussian f(x) = e^{-Bx}. Transcendental values: big-float only.
class GaussianKernel final : public Kernel<BigFloat> {
 public:
  explicit GaussianKernel(const Rational& b) : b_(b) {
    if (b_ < Rational(1)) throw DomainError("gaussian: requires B >= 1");
  }
  std::string name() const override { return "gaussian:B=" + b_.str(); }
  KernelFlags flags() const override { return {true, false, true}; }
  BigFloat eval(const BigFloat& x) const override {
    return (-(BigFloat(b_, x.prec()) * x)).exp();
  }
  // f^(n)(c)/n! = (-1)^n (B^n/n!) e^{-Bc}
  BigFloat taylor_coeff(std::size_t n, const BigFloat& c) const override {
    Rational mag = pow_long(b_, static_cast<long>(n));
    for (std::size_t i = 1; i <= n; ++i) mag /= Rational(static_cast<long>(i));
    BigFloat v = BigFloat(mag, c.prec()) * (-(BigFloat(b_, c.prec()) * c)).exp();
    return (n % 2 == 0) ? v : -v;
  }
  const Rational& scale() const { return b_; }

 private:
  Rational b_;
};

// Rational Quadratic f(x) = (1+x)^{-sigma}, sigma >= 1. Exact mode requires
// integral sigma.
template <class S>
class RationalQuadraticKernel : public Kernel<S> {
 public:
  explicit RationalQuadraticKernel(const Rational& sigma) : sigma_(sigma) {
    if (sigma_ < Rational(1)) throw DomainError("rq: requires sigma >= 1");
    if (num_traits<S>::exact && !sigma_.is_integer())
      throw DomainError("rq: exact mode requires integer sigma (use big-float for sigma = " +
                        sigma_.str() + ")");
  }
  std::string name() const override { return "rq:sigma=" + sigma_.str(); }
  KernelFlags flags() const override { return {true, false, true}; }
  S eval(const S& x) const override {
    return detail::power_rat(num_traits<S>::one(x) + x, -sigma_);
  }
  // f^(n)(c)/n! = (-1)^n C(sigma+n-1, n) (1+c)^{-(sigma+n)}
  S taylor_coeff(std::size_t n, const S& c) const override {
    S v = num_traits<S>::from_rational(rising_over_factorial(sigma_, n), c) *
          detail::power_rat(num_traits<S>::one(c) + c, -(sigma_ + Rational(static_cast<long>(n))));
    return (n % 2 == 0) ? v : -v;
  }
  std::shared_ptr<const Kernel<S>> reflected() const override;
  const Rational& sigma() const { return sigma_; }

 protected:
  Rational sigma_;
};

// Cauchy kernel f(x) = 1/(1+x): the sigma = 1 Rational Quadratic.
template <class S>
class CauchyKernel final : public RationalQuadraticKernel<S> {
 public:
  CauchyKernel() : RationalQuadraticKernel<S>(Rational(1)) {}
  std::string name() const override { return "cauchy"; }
};

// Reflected Rational Quadratic g(x) = (2-x)^{-sigma}: absolutely monotone on
// [0,1], the analysis form of the positive-definite reduction.
template <class S>
class ReflectedRQKernel final : public Kernel<S> {
 public:
  explicit ReflectedRQKernel(const Rational& sigma) : sigma_(sigma) {
    if (sigma_ < Rational(1)) throw DomainError("reflected-rq: requires sigma >= 1");
    if (num_traits<S>::exact && !sigma_.is_integer())
      throw DomainError("reflected-rq: exact mode requires integer sigma");
  }
  std::string name() const override { return "reflected-rq:sigma=" + sigma_.str(); }
  KernelFlags flags() const override { return {false, true, false}; }
  S eval(const S& x) const override {
    S two = num_traits<S>::from_long(2, x);
    return detail::power_rat(two - x, -sigma_);
  }
  // g^(n)(c)/n! = C(sigma+n-1, n) (2-c)^{-(sigma+n)}
  S taylor_coeff(std::size_t n, const S& c) const override {
    S two = num_traits<S>::from_long(2, c);
    return num_traits<S>::from_rational(rising_over_factorial(sigma_, n), c) *
           detail::power_rat(two - c, -(sigma_ + Rational(static_cast<long>(n))));
  }
  const Rational& sigma() const { return sigma_; }

 private:
  Rational sigma_;
};

template <class S>
std::shared_ptr<const Kernel<S>> RationalQuadraticKernel<S>::reflected() const {
  return std::make_shared<ReflectedRQKernel<S>>(sigma_);
}

// t-Student f(x) = 1/(1+x^rho), rho >= 1. Exact mode requires integral rho;
// the Taylor coefficients are registered at c = 0 only, where
// f(x) = sum_k (-1)^k x^{rho k}.
template <class S>
class TStudentKernel final : public Kernel<S> {
 public:
  explicit TStudentKernel(const Rational& rho) : rho_(rho) {
    if (rho_ < Rational(1)) throw DomainError("tstudent: requires rho >= 1");
    if (num_traits<S>::exact && !rho_.is_integer())
      throw DomainError("tstudent: exact mode requires integer rho (use big-float for rho = " +
                        rho_.str() + ")");
  }
  std::string name() const override { return "tstudent:rho=" + rho_.str(); }
  KernelFlags flags() const override { return {rho_ == Rational(1), false, true}; }
  S eval(const S& x) const override {
    S one = num_traits<S>::one(x);
    return one / (one + xpow(x));
  }
  S taylor_coeff(std::size_t n, const S& c) const override {
    if (!rho_.is_integer() || !c.is_zero())
      throw DomainError("tstudent: no registered Taylor coefficient formula (need integer rho, c = 0)");
    long rho = rho_.to_long();
    if (n % static_cast<std::size_t>(rho) != 0) return num_traits<S>::zero(c);
    std::size_t k = n / static_cast<std::size_t>(rho);
    return num_traits<S>::from_long(k % 2 == 0 ? 1 : -1, c);
  }
  const Rational& rho() const { return rho_; }

 private:
  S xpow(const S& x) const {
    if (rho_.is_integer()) return pow_long(x, rho_.to_long());
    if constexpr (num_traits<S>::exact) {
      throw DomainError("tstudent: non-integer rho in exact mode");
    } else {
      if (x.is_zero()) return num_traits<S>::zero(x);
      return x.pow(BigFloat(rho_, x.prec()));
    }
  }
  Rational rho_;
};

// ---- kernel selection strings -------------------------------------------
// "gaussian:B=2", "rq:sigma=2", "tstudent:rho=1", "cauchy", "reflected-rq:sigma=1",
// "constant".

struct KernelSpecInfo {
  std::string family;
  Rational param{1};
};

inline KernelSpecInfo parse_kernel_string(const std::string& s) {
  auto colon = s.find(':');
  std::string family = s.substr(0, colon);
  KernelSpecInfo info;
  info.family = family;
  std::string expect_key;
  if (family == "gaussian") {
    expect_key = "B";
  } else if (family == "rq" || family == "reflected-rq") {
    expect_key = "sigma";
  } else if (family == "tstudent") {
    expect_key = "rho";
  } else if (family == "cauchy" || family == "constant") {
    if (colon != std::string::npos) throw DomainError("kernel '" + family + "' takes no parameter");
    return info;
  } else {
    throw DomainError("unknown kernel '" + s + "'");
  }
  if (colon == std::string::npos)
    throw DomainError("kernel '" + family + "' needs parameter " + expect_key + "=...");
  std::string rest = s.substr(colon + 1);
  auto eq = rest.find('=');
  if (eq == std::string::npos || rest.substr(0, eq) != expect_key)
    throw DomainError("kernel '" + s + "': expected " + expect_key + "=<value>");
  info.param = Rational(rest.substr(eq + 1));
  return info;
}

// Whether the exact-rational pipeline can handle this kernel.
inline bool kernel_exact_capable(const KernelSpecInfo& info) {
  if (info.family == "gaussian") return false;
  return info.param.is_integer();
}

template <class S>
KernelPtr<S> make_kernel(const KernelSpecInfo& info, const S& proto) {
  (void)proto;
  if (info.family == "gaussian") {
    if constexpr (num_traits<S>::exact) {
      throw DomainError("gaussian kernel is transcendental; big-float mode required");
    } else {
      return std::make_shared<GaussianKernel>(info.param);
    }
  }
  if (info.family == "rq") return std::make_shared<RationalQuadraticKernel<S>>(info.param);
  if (info.family == "reflected-rq") return std::make_shared<ReflectedRQKernel<S>>(info.param);
  if (info.family == "tstudent") return std::make_shared<TStudentKernel<S>>(info.param);
  if (info.family == "cauchy") return std::make_shared<CauchyKernel<S>>();
  if (info.family == "constant") return std::make_shared<ConstantKernel<S>>();
  throw DomainError("unknown kernel family '" + info.family + "'");
}

}  // namespace kdelab
