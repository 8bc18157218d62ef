// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "kdelab/cli.hpp"
#include "kdelab/solvers.hpp"

using namespace kdelab;

namespace {

int g_failures = 0;

struct Criterion {
  int id;
  std::string name;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  Criterion(int id_, std::string name_) : id(id_), name(std::move(name_)) {}

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    } else if (!cond) {
      detail += "; " + what;
    }
  }

  void finish() {
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d [%s]: %s (%.1fs)%s%s\n", id, name.c_str(), ok ? "PASS" : "FAIL", secs,
                ok ? "" : " -- ", ok ? "" : detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
  }
};

std::vector<Rational> random_distinct_positive(std::size_t m, Rng& rng) {
  std::vector<Rational> u;
  while (u.size() < m) {
    Rational cand(rng.range(1, 300), static_cast<unsigned long>(rng.range(1, 12)));
    bool dup = false;
    for (const auto& v : u) dup = dup || v == cand;
    if (!dup) u.push_back(cand);
  }
  return u;
}

// ---- criterion 1: Schur equivalence suite -----------------------------------
void criterion1() {
  Criterion c(1, "schur equivalence suite");
  Rng rng(101);
  long cases = 0;
  for (std::size_t m = 1; m <= 4; ++m) {
    for (const Partition& lam : partitions_up_to_weight(m, 6)) {
      unsigned long long dim = weyl_dimension(lam, m);
      c.require(dim == enumerate_ssyt(lam, m).size(),
                "weyl dimension mismatch at lambda=" + lam.str() + " m=" + std::to_string(m));
      for (int t = 0; t < 5; ++t) {
        std::vector<Rational> u = random_distinct_positive(m, rng);
        c.require(schur_cauchy(lam, u) == schur_littlewood(lam, u),
                  "cauchy != littlewood at lambda=" + lam.str());
        ++cases;
      }
      for (const Rational& q : {Rational(2), Rational(3), Rational(1, 2)}) {
        std::vector<Rational> powers;
        for (std::size_t i = 0; i < m; ++i) powers.push_back(pow_long(q, (long)i));
        c.require(principal_specialization(lam, q, m) == schur_littlewood(lam, powers),
                  "principal specialization mismatch at lambda=" + lam.str() + " q=" + q.str());
      }
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - c.t0).count();
  c.require(secs < 60.0, "runtime " + std::to_string(secs) + "s exceeds the 1 minute cap");
  if (c.ok) c.detail = std::to_string(cases) + " equality cases";
  c.finish();
}

// ---- criterion 2: Cauchy determinant closed form ------------------------------
void criterion2() {
  Criterion c(2, "cauchy determinant closed form, 200 trials");
  Rng rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.below(6);
    std::vector<Rational> a, b;
    while (a.size() < n) {
      Rational cand(rng.range(1, 60), static_cast<unsigned long>(rng.range(1, 10)));
      bool dup = false;
      for (const auto& v : a) dup = dup || v == cand;
      if (!dup) a.push_back(cand);
    }
    while (b.size() < n) {
      Rational cand(rng.range(1, 60), static_cast<unsigned long>(rng.range(1, 10)));
      bool dup = false;
      for (const auto& v : b) dup = dup || v == cand;
      if (!dup) b.push_back(cand);
    }
    Matrix<Rational> m(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = (a[i] + b[j]).inv();
    c.require(cauchy_det<Rational>(a, b) == det(m), "closed form != direct det at trial " +
                                                        std::to_string(trial));
  }
  c.finish();
}

// ---- criterion 3: tau-bound certification -------------------------------------
void criterion3() {
  Criterion c(3, "tau <= paper bound, D <= 8");
  for (long d = 1; d <= 8; ++d) {
    for (long bint : {1l, 2l, 4l}) {
      mpfr_prec_t prec = default_gaussian_precision(d, Rational(bint));
      auto spec = gaussian_spec(d, Rational(bint), prec);
      BigFloat t = tau(build_counting_matrix(spec));
      BigFloat bound = gaussian_tau_bound(d, Rational(bint), 128, Round::Down);
      c.require(mpfr_cmp(t.raw(), bound.raw()) <= 0,
                "gaussian D=" + std::to_string(d) + " B=" + std::to_string(bint));
    }
    for (long rho : {1l, 2l}) {
      Rational t = tau(build_counting_matrix(tstudent_spec<Rational>(d, Rational(rho), Rational(0))));
      c.require(tstudent_tau_bound(d, Rational(rho), 128, Round::Down).cmp(t) >= 0,
                "tstudent D=" + std::to_string(d) + " rho=" + std::to_string(rho));
    }
    for (long sig : {1l, 2l}) {
      Rational t = tau(build_counting_matrix(rq_spec<Rational>(d, Rational(sig), Rational(0))));
      c.require(rq_tau_bound(d, Rational(sig), 128, Round::Down).cmp(t) >= 0,
                "rq D=" + std::to_string(d) + " sigma=" + std::to_string(sig));
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - c.t0).count();
  c.require(secs < 300.0, "runtime " + std::to_string(secs) + "s exceeds the 5 minute cap");
  c.finish();
}

// ---- criterion 4: Cauchy-Binet convergence ------------------------------------
void criterion4() {
  Criterion c(4, "cauchy-binet rel err <= 1e-6 by weight cutoff 20, reflected-rq D <= 3");
  for (long d = 1; d <= 3; ++d) {
    auto spec = rq_spec<Rational>(d, Rational(1), Rational(0));
    Rational exact = det(build_counting_matrix(spec));
    Rational rel = (cauchy_binet_det(spec, 20) - exact).abs() / exact.abs();
    char relbuf[32];
    std::snprintf(relbuf, sizeof relbuf, "%.4e", rel.to_double());
    c.require(rel <= Rational(1, 1000000),
              "D=" + std::to_string(d) + " rel err " + relbuf +
                  " at weight cutoff 20 (the expansion contracts by ~1/2 per unit weight with "
                  "these alpha/beta, reaching 1e-6 only at cutoff " +
                  std::string(d == 2 ? "21" : d == 3 ? "23" : "19") + "; see decisions ledger)");
  }
  c.finish();
}

// ---- criteria 5 and 6: reduction exactness and budget tightness ----------------

struct NoisyTrialResult {
  bool recovered_ok = false;
  bool failed = false;  // wrong counts or RoundingAmbiguous
};

template <class S>
NoisyTrialResult noisy_trial(const BcpInstance& inst, const CountingMatrixSpec<S>& spec,
                             KernelPtr<S> oracle_kernel, const Rational& multiple,
                             std::uint64_t seed, bool pd, long base) {
  NoisyTrialResult out;
  Matrix<S> m = build_counting_matrix(spec);
  S tau_v = tau(m);
  S eps = num_traits<S>::one(spec.c) /
          (num_traits<S>::from_long(3 * static_cast<long>(inst.n_y()), spec.c) * tau_v);
  auto naive = std::make_shared<NaiveKdeOracle<S>>(std::move(oracle_kernel));
  NoisyOracle<S> noisy(naive, eps * num_traits<S>::from_rational(multiple, spec.c),
                       NoiseMode::AdversarialSign, seed, worst_sign_pattern(m));
  try {
    RecoveryResult<S> rec = pd ? pd_recover_distance_counts(inst, spec, noisy, &eps)
                               : recover_distance_counts(inst, spec, noisy, &eps);
    auto rows = pd ? pd_deindex(rec, spec.dist_cap) : rec.counts;
    auto brute = brute_force_distance_counts(inst, base);
    if (pd) brute.resize(rows.size(), std::vector<long long>(inst.n_x(), 0));
    bool counts_ok = rows == brute;
    bool sums_ok = true;
    for (std::size_t i = 0; i < inst.n_x(); ++i) {
      long long sum = 0;
      for (const auto& row : rec.counts) sum += row[i];
      sums_ok = sums_ok && sum == static_cast<long long>(inst.n_y());
    }
    long long rec_min = pd ? pd_bcp_via_kde(inst, spec, noisy, &eps) : bcp_via_kde(inst, spec, noisy, &eps);
    out.recovered_ok = counts_ok && sums_ok && rec_min == brute_force_bcp(inst);
    out.failed = !counts_ok;
  } catch (const RoundingAmbiguousError&) {
    out.failed = true;
  }
  return out;
}

void criteria5and6() {
  Criterion c5(5, "reduction exact under worst-sign noise at eps=(3n tau)^-1, 100 trials/kernel");
  Criterion c6(6, "3x budget breaks at least one of 100 trials per kernel");
  for (const std::string& family : {std::string("gaussian"), std::string("tstudent"), std::string("rq")}) {
    int break_count = 0;
    for (int t = 0; t < 100; ++t) {
      Rng rng(5000 + t);
      std::size_t m = 2 + rng.below(5);  // m <= 6
      // zero-distance-free instances need free 0/1 patterns: n <= 2^(m-1)
      std::size_t n_cap = std::min<std::size_t>(31, (1u << (m - 1)) - 1);
      std::size_t n = family == "tstudent" ? 2 + rng.below(n_cap) : 2 + rng.below(31);  // n <= 32
      std::uint64_t inst_seed = 91000 + static_cast<std::uint64_t>(t) * 7;
      if (family == "gaussian") {
        BcpInstance inst = random_binary_instance(n, m, inst_seed, false);
        auto spec = gaussian_spec(static_cast<long>(m), Rational(1));
        auto at1 = noisy_trial<BigFloat>(inst, spec, spec.kernel, Rational(1), inst_seed, false, 0);
        c5.require(at1.recovered_ok, "gaussian trial " + std::to_string(t));
        auto at3 = noisy_trial<BigFloat>(inst, spec, spec.kernel, Rational(3), inst_seed, false, 0);
        break_count += at3.failed ? 1 : 0;
      } else if (family == "tstudent") {
        BcpInstance inst = random_binary_instance(n, m, inst_seed, true);
        long rho = 1 + static_cast<long>(t % 2);
        auto spec = tstudent_spec<Rational>(static_cast<long>(m), Rational(rho), Rational(0));
        auto at1 = noisy_trial<Rational>(inst, spec, spec.kernel, Rational(1), inst_seed, false, 1);
        c5.require(at1.recovered_ok, "tstudent trial " + std::to_string(t));
        auto at3 = noisy_trial<Rational>(inst, spec, spec.kernel, Rational(3), inst_seed, false, 1);
        break_count += at3.failed ? 1 : 0;
      } else {
        BcpInstance inst = random_binary_instance(n, m, inst_seed, false);
        long sigma = 1 + static_cast<long>(t % 2);
        auto spec = rq_spec<Rational>(static_cast<long>(m) + 1, Rational(sigma), Rational(0));
        auto f = make_kernel<Rational>(
            parse_kernel_string("rq:sigma=" + std::to_string(sigma)), Rational(0));
        auto at1 = noisy_trial<Rational>(inst, spec, f, Rational(1), inst_seed, true, 0);
        c5.require(at1.recovered_ok, "rq trial " + std::to_string(t));
        auto at3 = noisy_trial<Rational>(inst, spec, f, Rational(3), inst_seed, true, 0);
        break_count += at3.failed ? 1 : 0;
      }
    }
    c6.require(break_count >= 1, family + ": no failure among 100 over-budget trials");
  }
  c5.finish();
  c6.finish();
}

// ---- criterion 7: polynomial-method contract -----------------------------------
void criterion7() {
  Criterion c(7, "poly-kde error contract, |T| bound, cauchy degree rate");
  struct Config {
    const char* kernel;
    long n, m;
    Rational eps;
  };
  std::vector<Config> configs = {
      {"gaussian:B=1", 128, 3, Rational(1, 1000)}, {"cauchy", 128, 3, Rational(1, 1000)},
      {"rq:sigma=2", 128, 3, Rational(1, 1000)},   {"gaussian:B=1", 32, 6, Rational(1, 1000)},
      {"cauchy", 32, 6, Rational(1, 1000)},        {"gaussian:B=1", 128, 2, Rational(1, 1000000)},
      {"cauchy", 128, 2, Rational(1, 1000000)},    {"rq:sigma=2", 128, 2, Rational(1, 1000000)},
  };
  // |T|-cap invariant runs: m = 4, eps = 1e-3, every kernel (gaussian up to B = 4)
  for (const char* k : {"gaussian:B=1", "gaussian:B=2", "gaussian:B=4", "cauchy", "rq:sigma=2"})
    configs.push_back({k, 16, 4, Rational(1, 1000)});

  std::uint64_t seed = 700;
  for (const Config& cfg : configs) {
    auto f = make_kernel<BigFloat>(parse_kernel_string(cfg.kernel), BigFloat(96));
    ApproxPolynomial p = fit_polynomial(*f, cfg.eps);
    mpfr_prec_t prec = p.coeffs[0].prec();
    Rng rng(seed++);
    long root = 1;
    while (root * root < cfg.m) ++root;
    long span = 1000 / root;
    RealPoints<BigFloat> x, y;
    std::vector<BigFloat> u;
    for (long i = 0; i < cfg.n; ++i) {
      std::vector<BigFloat> a, b;
      for (long k = 0; k < cfg.m; ++k) {
        a.emplace_back(Rational(rng.range(0, span), 2000ul), prec);
        b.emplace_back(Rational(rng.range(0, span), 2000ul), prec);
      }
      x.push_back(a);
      y.push_back(b);
      u.emplace_back(Rational(rng.range(-1000, 1000), 1000ul), prec);
    }
    auto exact = naive_kde(x, y, u, *f);
    FeatureFactorization fac = build_feature_maps(p, x, y);
    c.require(terms_within_binomial_bound(fac.n_terms, static_cast<std::size_t>(cfg.m), p.degree),
              std::string(cfg.kernel) + ": |T| exceeds C(2m+2d,2m)");
    auto approx = poly_kde(fac, u);
    BigFloat norm1(prec), worst(prec);
    for (const auto& w : u) norm1 += abs(w);
    for (long i = 0; i < cfg.n; ++i) {
      BigFloat e = abs(approx[static_cast<std::size_t>(i)] - exact[static_cast<std::size_t>(i)]);
      if (e > worst) worst = e;
    }
    c.require(worst <= BigFloat(cfg.eps, prec) * norm1,
              std::string(cfg.kernel) + " n=" + std::to_string(cfg.n) + " m=" + std::to_string(cfg.m) +
                  ": error above eps*||u||_1");
  }

  // cauchy fitted degree <= 4 log2(1/eps) for eps = 1e-2 .. 1e-8
  auto cauchy = make_kernel<BigFloat>(parse_kernel_string("cauchy"), BigFloat(96));
  Rational eps(1);
  for (int k = 1; k <= 8; ++k) {
    eps /= Rational(10);
    if (k < 2) continue;
    ApproxPolynomial p = fit_polynomial(*cauchy, eps);
    double limit = 4.0 * std::log2(std::pow(10.0, k));
    c.require(static_cast<double>(p.degree) <= limit,
              "cauchy degree " + std::to_string(p.degree) + " above 4 log2(1/eps) at 1e-" +
                  std::to_string(k));
  }
  c.finish();
}

// ---- criterion 8: appendix-A decision reduction ---------------------------------
void criterion8() {
  Criterion c(8, "threshold decision on rapid-decay gaussian; rq raises RapidDecayViolated");
  for (int t = 0; t < 10; ++t) {
    Rng rng(800 + t);
    std::size_t m = 5 + rng.below(2);                       // m in {5, 6}
    std::size_t n = 8 + rng.below((1u << (m - 1)) - 7);     // n <= 32, free patterns left
    BcpInstance inst = random_binary_instance(n, m, 88000 + t, true);
    long pstar = static_cast<long>(brute_force_bcp(inst));
    long bint = static_cast<long>(std::ceil(3.0 * static_cast<double>(m) * std::log(double(n)))) + 1;
    auto f = std::make_shared<GaussianKernel>(Rational(bint));
    NaiveKdeOracle<BigFloat> oracle(f);
    BigFloat proto(static_cast<mpfr_prec_t>(128 + 2 * bint));
    auto yes = bis_decision_reduction<BigFloat>(inst.X, inst.Y, f, pstar, oracle, proto);
    c.require(yes.answer, "decision at p* false, trial " + std::to_string(t));
    auto no = bis_decision_reduction<BigFloat>(inst.X, inst.Y, f, pstar - 1, oracle, proto);
    c.require(!no.answer, "decision at p*-1 true, trial " + std::to_string(t));
  }
  auto frq = make_kernel<Rational>(parse_kernel_string("rq:sigma=1"), Rational(0));
  NaiveKdeOracle<Rational> orq(frq);
  BcpInstance inst = random_binary_instance(8, 4, 88099, true);
  bool threw = false;
  try {
    bis_decision_reduction<Rational>(inst.X, inst.Y, frq, 2, orq, Rational(0));
  } catch (const RapidDecayViolatedError&) {
    threw = true;
  }
  c.require(threw, "rq did not raise RapidDecayViolated");
  c.finish();
}

// ---- criterion 9: appendix-B reduction ------------------------------------------
void criterion9() {
  Criterion c(9, "zov_to_bcp vs brute force, 500 instances; exact lift identity");
  BcpSolver brute = [](const BcpInstance& i) { return brute_force_bcp(i); };
  Rng rng(900);
  for (int t = 0; t < 500; ++t) {
    std::size_t n = 1 + rng.below(6), m = 1 + rng.below(4);
    long long emax = 1 + static_cast<long long>(rng.below(3));
    PointSet x = random_int_points(n, m, emax, rng);
    PointSet y = random_int_points(n, m, emax, rng);
    c.require(zov_to_bcp(x, y, brute) == brute_force_ov(x, y), "disagreement at trial " +
                                                                   std::to_string(t));
    for (const auto& a : x.pts)
      for (const auto& b : y.pts) {
        auto u = tensor_lift_vector(a, false);
        auto v = tensor_lift_vector(b, true);
        long long nu = 0, nv = 0, dist = 0, ip = 0;
        for (long long w : u) nu += w * w;
        for (long long w : v) nv += w * w;
        for (std::size_t k = 0; k < u.size(); ++k) dist += (u[k] - v[k]) * (u[k] - v[k]);
        for (std::size_t k = 0; k < a.size(); ++k) ip += a[k] * b[k];
        c.require(dist == nu + nv + 2 * ip * ip, "lift identity fails at trial " + std::to_string(t));
      }
  }
  c.finish();
}

// ---- criterion 10: CLI determinism -----------------------------------------------
void criterion10() {
  Criterion c(10, "every CLI subcommand reproduces byte-identical data rows");
  std::vector<std::vector<std::string>> configs = {
      {"schur-check", "--max-weight", "4", "--max-m", "3", "--seed", "3"},
      {"tau-table", "--kernel", "tstudent:rho=1", "--dmax", "4"},
      {"tau-table", "--kernel", "gaussian:B=2", "--dmax", "3"},
      {"reduction-demo", "--kernel", "tstudent:rho=1", "--n", "8", "--m", "4", "--noise", "budget",
       "--seed", "17", "--trials", "3"},
      {"reduction-demo", "--kernel", "gaussian:B=1", "--n", "6", "--m", "3", "--noise", "budget",
       "--seed", "17"},
      {"kde-bench", "--solver", "naive", "--kernel", "cauchy", "--n", "12", "--m", "2", "--eps",
       "0.001", "--seed", "4"},
      {"kde-bench", "--solver", "sampling", "--kernel", "rq:sigma=1", "--n", "12", "--m", "2",
       "--eps", "0.4", "--seed", "4"},
      {"kde-bench", "--solver", "poly", "--kernel", "gaussian:B=1", "--n", "12", "--m", "2", "--eps",
       "0.001", "--seed", "4"},
      {"zov-demo", "--n", "5", "--m", "3", "--emax", "2", "--trials", "5", "--seed", "6"},
  };
  for (auto cfg : configs) {
    for (const std::string& fmt : {std::string("csv"), std::string("json")}) {
      auto with_fmt = cfg;
      with_fmt.push_back("--format");
      with_fmt.push_back(fmt);
      auto a = cli::run(with_fmt);
      auto b = cli::run(with_fmt);
      c.require(a.exit_code == b.exit_code && a.exit_code != 1,
                cfg[0] + " (" + fmt + "): unstable or failing exit code");
      c.require(cli::deterministic_view(a.output) == cli::deterministic_view(b.output),
                cfg[0] + " (" + fmt + "): data rows differ between runs");
    }
  }
  c.finish();
}

}  // namespace

int main() {
  std::printf("kdelab acceptance suite\n");
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criteria5and6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (g_failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
