#include "kdelab/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdelab/counting.hpp"
#include "kdelab/solvers.hpp"

namespace kdelab::cli {
namespace {

using nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}
std::string fmt_scalar(const Rational& r) { return fmt_double(r.to_double()); }
std::string fmt_scalar(const BigFloat& f) { return fmt_double(f.to_double()); }

// One table artifact: deterministic data rows plus '#'-comment meta (CSV) or
// a side "timing" object (JSON). Wall time never lands in a data row.
class Table {
 public:
  Table(std::string subcommand, std::vector<std::string> columns, bool json)
      : subcommand_(std::move(subcommand)), columns_(std::move(columns)), json_(json) {}

  void meta(const std::string& key, const std::string& value) { meta_.emplace_back(key, value); }
  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void set_wall_ms(double ms) { wall_ms_ = ms; }

  std::string render() const {
    if (json_) {
      ordered_json j;
      j["meta"] = ordered_json::object();
      j["meta"]["tool"] = "kdelab";
      j["meta"]["version"] = kVersion;
      j["meta"]["subcommand"] = subcommand_;
      for (const auto& [k, v] : meta_) j["meta"][k] = v;
      j["columns"] = columns_;
      j["rows"] = rows_;
      j["timing"] = ordered_json::object();
      j["timing"]["wall_ms"] = wall_ms_;
      return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "# kdelab " << kVersion << " subcommand=" << subcommand_ << "\n";
    for (const auto& [k, v] : meta_) os << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << "\n";
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << "\n";
    }
    os << "# wall_ms=" << fmt_double(wall_ms_) << "\n";
    return os.str();
  }

 private:
  std::string subcommand_;
  std::vector<std::string> columns_;
  bool json_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::vector<std::string>> rows_;
  double wall_ms_ = 0.0;
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
};

mpfr_prec_t env_default_precision() {
  if (const char* e = std::getenv("KDELAB_PRECISION_BITS")) {
    long v = std::atol(e);
    if (v >= 64) return static_cast<mpfr_prec_t>(v);
  }
  return 0;
}

// 64 + ceil(D log2(bound)) bits.
mpfr_prec_t precision_for_bound(long d, const BigFloat& bound) {
  mpfr_t l2;
  mpfr_init2(l2, 64);
  mpfr_log2(l2, bound.raw(), MPFR_RNDU);
  mpfr_mul_si(l2, l2, d, MPFR_RNDU);
  mpfr_ceil(l2, l2);
  long bits = mpfr_get_si(l2, MPFR_RNDU);
  mpfr_clear(l2);
  return static_cast<mpfr_prec_t>(64 + (bits > 0 ? bits : 0));
}

// ---- schur-check ------------------------------------------------------------

std::string lambda_str(const Partition& lam) {
  std::string s;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (i) s += "|";
    s += std::to_string(lam[i]);
  }
  return s.empty() ? "-" : s;
}

std::vector<Rational> random_distinct_rationals(std::size_t m, Rng& rng) {
  std::vector<Rational> u;
  while (u.size() < m) {
    Rational cand(static_cast<long>(rng.below(400) + 1), static_cast<unsigned long>(rng.below(20) + 1));
    bool dup = false;
    for (const auto& v : u) dup = dup || v == cand;
    if (!dup) u.push_back(cand);
  }
  return u;
}

int cmd_schur_check(long max_weight, long max_m, long trials, std::uint64_t seed, Table& table) {
  Rng rng(seed);
  bool all_ok = true;
  for (long m = 1; m <= max_m; ++m) {
    for (const Partition& lam : partitions_up_to_weight(static_cast<std::size_t>(m), max_weight)) {
      auto tableaux = enumerate_ssyt(lam, static_cast<std::size_t>(m));
      unsigned long long dim = weyl_dimension(lam, static_cast<std::size_t>(m));
      bool weyl_ok = dim == tableaux.size();

      bool defs_ok = true, bounds_ok = true;
      for (long t = 0; t < trials; ++t) {
        std::vector<Rational> u = random_distinct_rationals(static_cast<std::size_t>(m), rng);
        Rational lw = schur_littlewood(lam, u);
        defs_ok = defs_ok && schur_cauchy(lam, u) == lw;
        std::sort(u.begin(), u.end());
        auto [lo, hi] = first_order_bounds(lam, u);
        Rational sorted_val = schur_littlewood(lam, u);
        bounds_ok = bounds_ok && lo <= sorted_val && sorted_val <= hi;
      }

      bool principal_ok = true;
      for (const Rational& q : {Rational(2), Rational(3), Rational(1, 2)}) {
        std::vector<Rational> powers;
        for (long i = 0; i < m; ++i) powers.push_back(pow_long(q, i));
        principal_ok = principal_ok &&
                       principal_specialization(lam, q, static_cast<std::size_t>(m)) ==
                           schur_littlewood(lam, powers);
      }

      bool vanish_ok = true;
      {
        std::vector<Rational> u0 = random_distinct_rationals(static_cast<std::size_t>(m), rng);
        u0[0] = Rational(0);
        bool dup = false;
        for (std::size_t i = 1; i < u0.size(); ++i) dup = dup || u0[i].is_zero();
        if (!dup) {
          Rational at0 = schur_littlewood(lam, u0);
          if (lam[0] > 0) {
            vanish_ok = at0.is_zero();
          } else if (m > 1) {
            Partition trimmed(std::vector<long>(lam.parts().begin() + 1, lam.parts().end()));
            std::vector<Rational> rest(u0.begin() + 1, u0.end());
            vanish_ok = at0 == schur_littlewood(trimmed, rest);
          } else {
            vanish_ok = at0 == Rational(1);
          }
        }
      }

      bool pass = weyl_ok && defs_ok && principal_ok && bounds_ok && vanish_ok;
      all_ok = all_ok && pass;
      table.add_row({std::to_string(m), lambda_str(lam), std::to_string(lam.weight()),
                     std::to_string(dim), std::to_string(tableaux.size()),
                     weyl_ok ? "1" : "0", defs_ok ? "1" : "0", principal_ok ? "1" : "0",
                     bounds_ok ? "1" : "0", vanish_ok ? "1" : "0", pass ? "pass" : "FAIL"});
    }
  }
  return all_ok ? 0 : 2;
}

// ---- tau-table ---------------------------------------------------------------

int cmd_tau_table(const std::string& kernel_str, long dmax, mpfr_prec_t precision, Table& table) {
  KernelSpecInfo info = parse_kernel_string(kernel_str);
  bool all_ok = true;
  for (long d = 1; d <= dmax; ++d) {
    BigFloat bound(128);
    std::string tau_s, relaxed_s, prec_s;
    bool ok = false;
    double ratio = 0.0;
    if (info.family == "gaussian") {
      bound = gaussian_tau_bound(d, info.param, 128, Round::Down);
      mpfr_prec_t prec = precision ? precision : default_gaussian_precision(d, info.param);
      auto spec = gaussian_spec(d, info.param, prec);
      TauPair<BigFloat> tp = tau_pair(build_counting_matrix(spec));
      ok = mpfr_cmp(tp.induced.raw(), bound.raw()) <= 0;
      ratio = tp.induced.to_double() / bound.to_double();
      tau_s = fmt_scalar(tp.induced);
      relaxed_s = fmt_scalar(tp.relaxed);
      prec_s = std::to_string(prec);
    } else if (kernel_exact_capable(info)) {
      CountingMatrixSpec<Rational> spec =
          info.family == "tstudent" ? tstudent_spec<Rational>(d, info.param, Rational(0))
          : info.family == "cauchy" ? cauchy_spec<Rational>(d, Rational(0))
          : info.family == "rq"     ? rq_spec<Rational>(d, info.param, Rational(0))
                                    : throw DomainError("tau-table: unsupported kernel " + kernel_str);
      bound = info.family == "tstudent" ? tstudent_tau_bound(d, info.param, 128, Round::Down)
              : info.family == "cauchy" ? tstudent_tau_bound(d, Rational(1), 128, Round::Down)
                                        : rq_tau_bound(d, info.param, 128, Round::Down);
      TauPair<Rational> tp = tau_pair(build_counting_matrix(spec));
      ok = bound.cmp(tp.induced) >= 0;
      ratio = tp.induced.to_double() / bound.to_double();
      tau_s = fmt_scalar(tp.induced);
      relaxed_s = fmt_scalar(tp.relaxed);
      prec_s = "exact";
    } else {
      // non-integer rho/sigma: big-float pipeline
      bound = info.family == "tstudent" ? tstudent_tau_bound(d, info.param, 128, Round::Down)
              : info.family == "rq"     ? rq_tau_bound(d, info.param, 128, Round::Down)
                                        : throw DomainError("tau-table: unsupported kernel " + kernel_str);
      mpfr_prec_t prec = precision ? precision : precision_for_bound(d, bound);
      BigFloat proto(prec);
      auto spec = info.family == "tstudent" ? tstudent_spec<BigFloat>(d, info.param, proto)
                                            : rq_spec<BigFloat>(d, info.param, proto);
      TauPair<BigFloat> tp = tau_pair(build_counting_matrix(spec));
      ok = mpfr_cmp(tp.induced.raw(), bound.raw()) <= 0;
      ratio = tp.induced.to_double() / bound.to_double();
      tau_s = fmt_scalar(tp.induced);
      relaxed_s = fmt_scalar(tp.relaxed);
      prec_s = std::to_string(prec);
    }
    all_ok = all_ok && ok;
    table.add_row({std::to_string(d), tau_s, relaxed_s, fmt_scalar(bound), fmt_double(ratio), prec_s,
                   ok ? "pass" : "FAIL"});
  }
  return all_ok ? 0 : 2;
}

// ---- reduction-demo ----------------------------------------------------------

struct NoiseSpec {
  bool enabled = false;
  Rational multiple{0};
  NoiseMode mode = NoiseMode::AdversarialSign;
};

NoiseSpec parse_noise(const std::string& s, const std::string& dist) {
  NoiseSpec n;
  if (s == "none") return n;
  n.enabled = true;
  n.mode = dist == "random" ? NoiseMode::Random : NoiseMode::AdversarialSign;
  if (s == "budget") {
    n.multiple = Rational(1);
  } else if (!s.empty() && s.back() == 'x') {
    n.multiple = Rational(s.substr(0, s.size() - 1));
  } else {
    throw DomainError("reduction-demo: --noise must be none, budget, or <k>x");
  }
  return n;
}

template <class S>
struct TrialOutcome {
  long long recovered = -1;
  long long brute = -1;
  bool counts_match = false;
  bool column_sums_ok = false;
  bool ambiguous = false;
  std::string tau_s, eps_s, resid_s;
};

// One recovery trial shared by the three kernel families. `pd` selects the
// positive-definite pipeline (re-indexed counts); its oracle answers for the
// original kernel f while the counting matrix belongs to g = reflect(f).
template <class S>
TrialOutcome<S> run_reduction_trial(const BcpInstance& inst, const CountingMatrixSpec<S>& spec,
                                    KernelPtr<S> oracle_kernel, const NoiseSpec& noise,
                                    std::uint64_t noise_seed, bool pd) {
  TrialOutcome<S> out;
  out.brute = brute_force_bcp(inst);
  Matrix<S> m = build_counting_matrix(spec);
  TauPair<S> tp = tau_pair(m);
  S eps = num_traits<S>::one(spec.c) /
          (num_traits<S>::from_long(3 * static_cast<long>(inst.n_y()), spec.c) * tp.induced);

  auto naive = std::make_shared<NaiveKdeOracle<S>>(std::move(oracle_kernel));
  std::shared_ptr<const KdeOracle<S>> oracle = naive;
  if (noise.enabled) {
    S mag = eps * num_traits<S>::from_rational(noise.multiple, spec.c);
    oracle = std::make_shared<NoisyOracle<S>>(naive, mag, noise.mode, noise_seed, worst_sign_pattern(m));
  }

  try {
    RecoveryResult<S> rec = pd ? pd_recover_distance_counts(inst, spec, *oracle, &eps)
                               : recover_distance_counts(inst, spec, *oracle, &eps);
    out.tau_s = fmt_scalar(rec.tau);
    out.eps_s = fmt_scalar(rec.eps);
    out.resid_s = fmt_scalar(rec.max_residual);
    std::vector<std::vector<long long>> recovered_rows =
        pd ? pd_deindex(rec, spec.dist_cap)
           : rec.counts;
    long base = pd ? 0 : rec.distance_values.front();
    auto brute_rows = brute_force_distance_counts(
        inst, base);
    if (pd) brute_rows.resize(recovered_rows.size(), std::vector<long long>(inst.n_x(), 0));
    out.counts_match = recovered_rows == brute_rows;
    out.column_sums_ok = true;
    for (std::size_t i = 0; i < inst.n_x(); ++i) {
      long long sum = 0;
      for (const auto& row : rec.counts) sum += row[i];
      out.column_sums_ok = out.column_sums_ok && sum == static_cast<long long>(inst.n_y());
    }
    out.recovered = pd ? pd_bcp_via_kde(inst, spec, *oracle, &eps) : bcp_via_kde(inst, spec, *oracle, &eps);
  } catch (const RoundingAmbiguousError&) {
    out.ambiguous = true;
    out.tau_s = fmt_scalar(tp.induced);
    out.eps_s = fmt_scalar(eps);
    out.resid_s = "ambiguous";
  }
  return out;
}

int cmd_reduction_demo(const std::string& kernel_str, long n, long m, const std::string& noise_str,
                       const std::string& noise_dist, long trials, std::uint64_t seed,
                       mpfr_prec_t precision, Table& table) {
  KernelSpecInfo info = parse_kernel_string(kernel_str);
  NoiseSpec noise = parse_noise(noise_str, noise_dist);
  bool over_budget = noise.enabled && noise.multiple > Rational(1);
  bool all_ok = true;

  for (long t = 0; t < trials; ++t) {
    std::uint64_t inst_seed = seed + static_cast<std::uint64_t>(t);
    std::uint64_t noise_seed = seed * 1000003ull + static_cast<std::uint64_t>(t);
    bool pd = info.family == "rq" || info.family == "reflected-rq";
    bool forbid_zero = !pd && info.family != "gaussian";
    BcpInstance inst = random_binary_instance(static_cast<std::size_t>(n), static_cast<std::size_t>(m),
                                              inst_seed, forbid_zero);
    std::string status;
    long long recovered = -1, brute = -1;
    std::string tau_s = "-", eps_s = "-", resid_s = "-";
    bool match = false, sums_ok = false;
    if (info.family == "gaussian") {
      mpfr_prec_t prec = precision ? precision : default_gaussian_precision(m, info.param);
      auto spec = gaussian_spec(m, info.param, prec);
      auto out = run_reduction_trial<BigFloat>(inst, spec, spec.kernel, noise, noise_seed, false);
      recovered = out.recovered;
      brute = out.brute;
      match = out.counts_match && recovered == brute;
      sums_ok = out.column_sums_ok;
      status = out.ambiguous ? "ambiguous" : (match ? "match" : "MISMATCH");
      tau_s = out.tau_s;
      eps_s = out.eps_s;
      resid_s = out.resid_s;
    } else if (info.family == "tstudent" || info.family == "cauchy") {
      if (!kernel_exact_capable(info)) throw DomainError("reduction-demo: need integer rho");
      auto spec = info.family == "cauchy" ? cauchy_spec<Rational>(m, Rational(0))
                                          : tstudent_spec<Rational>(m, info.param, Rational(0));
      auto out = run_reduction_trial<Rational>(inst, spec, spec.kernel, noise, noise_seed, false);
      recovered = out.recovered;
      brute = out.brute;
      match = out.counts_match && recovered == brute;
      sums_ok = out.column_sums_ok;
      status = out.ambiguous ? "ambiguous" : (match ? "match" : "MISMATCH");
      tau_s = out.tau_s;
      eps_s = out.eps_s;
      resid_s = out.resid_s;
    } else if (info.family == "rq") {
      if (!kernel_exact_capable(info)) throw DomainError("reduction-demo: need integer sigma");
      auto spec = rq_spec<Rational>(m + 1, info.param, Rational(0));
      auto f = make_kernel<Rational>(info, Rational(0));
      auto out = run_reduction_trial<Rational>(inst, spec, f, noise, noise_seed, true);
      recovered = out.recovered;
      brute = out.brute;
      match = out.counts_match && recovered == brute;
      sums_ok = out.column_sums_ok;
      status = out.ambiguous ? "ambiguous" : (match ? "match" : "MISMATCH");
      tau_s = out.tau_s;
      eps_s = out.eps_s;
      resid_s = out.resid_s;
    } else {
      throw DomainError("reduction-demo: unsupported kernel " + kernel_str);
    }
    bool trial_ok = over_budget || (status == "match" && sums_ok);
    all_ok = all_ok && trial_ok;
    table.add_row({std::to_string(t), std::to_string(n), std::to_string(m), kernel_str, noise_str,
                   std::to_string(recovered), std::to_string(brute), status, sums_ok ? "1" : "0",
                   tau_s, eps_s, resid_s});
  }
  return all_ok ? 0 : 2;
}

// ---- kde-bench ----------------------------------------------------------------

int cmd_kde_bench(const std::string& solver, const std::string& kernel_str, long n, long m,
                  const std::string& b_str, double eps, std::uint64_t seed, mpfr_prec_t precision,
                  Table& table) {
  KernelSpecInfo info = parse_kernel_string(kernel_str);
  Rational b(b_str);
  if (b.sgn() <= 0) throw DomainError("kde-bench: B must be positive");
  Rational eps_r = Rational::from_double(eps);

  // fit first when needed so the pipeline precision can follow the degree
  mpfr_prec_t prec = precision ? precision : 128;
  ApproxPolynomial poly;
  if (solver == "poly") {
    BigFloat proto(prec);
    KernelPtr<BigFloat> fit_kernel = make_kernel<BigFloat>(info, proto);
    if (!(b == Rational(1))) fit_kernel = scale_to_unit(fit_kernel, BigFloat(b, prec));
    poly = fit_polynomial(*fit_kernel, eps_r);
    prec = precision ? precision : poly.coeffs[0].prec();
  }
  BigFloat proto(prec);
  KernelPtr<BigFloat> kernel = make_kernel<BigFloat>(info, proto);
  if (!(b == Rational(1))) kernel = scale_to_unit(kernel, BigFloat(b, prec));

  // rational lattice points with pairwise squared distance <= 1/4
  Rng rng(seed);
  long root = 1;
  while (root * root < m) ++root;
  long span = 1000 / root;
  RealPoints<BigFloat> px, py;
  std::vector<BigFloat> u;
  for (long i = 0; i < n; ++i) {
    std::vector<BigFloat> a, c;
    for (long k = 0; k < m; ++k) {
      a.emplace_back(Rational(static_cast<long>(rng.below(span + 1)), 2000ul), prec);
      c.emplace_back(Rational(static_cast<long>(rng.below(span + 1)), 2000ul), prec);
    }
    px.push_back(a);
    py.push_back(c);
    u.emplace_back(Rational(static_cast<long>(rng.below(2001)) - 1000, 1000ul), prec);
  }
  BigFloat norm1(prec);
  for (const auto& w : u) norm1 += abs(w);

  std::vector<BigFloat> reference = naive_kde(px, py, u, *kernel);
  std::vector<BigFloat> got;
  std::string size_metric = std::to_string(n);
  if (solver == "naive") {
    got = reference;
  } else if (solver == "sampling") {
    got = sampling_kde(px, py, u, *kernel, eps, seed);
    double raw = std::ceil(2.0 * std::log(2.0 * double(n) * double(n)) / (eps * eps));
    size_metric = raw >= double(n) ? std::to_string(n) : std::to_string((long)raw);
  } else if (solver == "poly") {
    FeatureFactorization fac = build_feature_maps(poly, px, py);
    if (!terms_within_binomial_bound(fac.n_terms, static_cast<std::size_t>(m), poly.degree))
      throw DomainError("kde-bench: |T| exceeded the binomial bound");
    got = poly_kde(fac, u);
    size_metric = std::to_string(fac.n_terms);
  } else {
    throw DomainError("kde-bench: unknown solver " + solver);
  }

  BigFloat worst(prec);
  for (long i = 0; i < n; ++i) {
    BigFloat e = abs(got[static_cast<std::size_t>(i)] - reference[static_cast<std::size_t>(i)]);
    if (e > worst) worst = e;
  }
  BigFloat budget = BigFloat(eps_r, prec) * norm1;
  bool ok = solver == "naive" ? worst.is_zero() : worst <= budget;
  table.add_row({solver, kernel_str, std::to_string(n), std::to_string(m), b.str(), fmt_double(eps),
                 std::to_string(seed), std::to_string(prec), fmt_scalar(worst), fmt_scalar(budget),
                 size_metric, poly.degree ? std::to_string(poly.degree) : "-", ok ? "pass" : "FAIL"});
  // the sampling guarantee is probabilistic (per-entry 1 - 1/n^2), so a miss
  // is reported but not treated as a property violation
  if (solver == "sampling") return 0;
  return ok ? 0 : 2;
}

// ---- zov-demo ------------------------------------------------------------------

bool lift_identity_holds(const PointSet& x, const PointSet& y) {
  for (const auto& a : x.pts)
    for (const auto& c : y.pts) {
      auto u = tensor_lift_vector(a, false);
      auto v = tensor_lift_vector(c, true);
      long long nu = 0, nv = 0, dist = 0, ip = 0;
      for (long long w : u) nu += w * w;
      for (long long w : v) nv += w * w;
      for (std::size_t k = 0; k < u.size(); ++k) dist += (u[k] - v[k]) * (u[k] - v[k]);
      for (std::size_t k = 0; k < a.size(); ++k) ip += a[k] * c[k];
      if (dist != nu + nv + 2 * ip * ip) return false;
    }
  return true;
}

int cmd_zov_demo(long n, long m, long emax, long trials, std::uint64_t seed, Table& table) {
  bool all_ok = true;
  for (long t = 0; t < trials; ++t) {
    Rng rng(seed + static_cast<std::uint64_t>(t));
    PointSet x = random_int_points(static_cast<std::size_t>(n), static_cast<std::size_t>(m), emax, rng);
    PointSet y = random_int_points(static_cast<std::size_t>(n), static_cast<std::size_t>(m), emax, rng);
    bool brute = brute_force_ov(x, y);
    bool viakde = zov_to_bcp(x, y, [](const BcpInstance& i) { return brute_force_bcp(i); });
    bool lift_ok = lift_identity_holds(x, y);
    bool ok = brute == viakde && lift_ok;
    all_ok = all_ok && ok;
    table.add_row({std::to_string(t), std::to_string(n), std::to_string(m), std::to_string(emax),
                   viakde ? "1" : "0", brute ? "1" : "0", lift_ok ? "1" : "0", ok ? "pass" : "FAIL"});
  }
  return all_ok ? 0 : 2;
}

}  // namespace

std::string deterministic_view(const std::string& output) {
  if (!output.empty() && output[0] == '{') {
    auto j = nlohmann::json::parse(output);
    j.erase("timing");
    return j.dump(2);
  }
  std::istringstream is(output);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line))
    if (line.empty() || line[0] != '#') os << line << "\n";
  return os.str();
}

RunResult run(const std::vector<std::string>& args) {
  CLI::App app{"counting-matrix KDE reductions, Schur identities and KDE solvers"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string format, out_path = "-";
  long precision_flag = 0;
  auto add_common = [&](CLI::App* sc, const char* columns) {
    sc->add_option("--format", format, "output format (default: csv, except the demo subcommands: json)")
        ->check(CLI::IsMember({"csv", "json"}));
    sc->add_option("--out", out_path, "output path ('-' = stdout)");
    sc->add_option("--precision", precision_flag,
                   "big-float precision bits (0 = auto; env KDELAB_PRECISION_BITS)");
    sc->footer(std::string("data columns: ") + columns +
               "\nexit codes: 0 = all checks pass, 1 = usage error, 2 = property violation");
  };

  auto* sc_schur = app.add_subcommand("schur-check", "Schur polynomial identity suite");
  long max_weight = 6, max_m = 4, trials = 5;
  std::uint64_t seed = 1;
  sc_schur->add_option("--max-weight", max_weight);
  sc_schur->add_option("--max-m", max_m);
  sc_schur->add_option("--trials", trials);
  sc_schur->add_option("--seed", seed);
  add_common(sc_schur, "m, lambda, weight, weyl_dim, ssyt_count, weyl_ok, defs_equal, principal_ok, first_order_ok, vanishing_ok, status");

  auto* sc_tau = app.add_subcommand("tau-table", "exact tau vs. closed-form bounds");
  std::string kernel = "tstudent:rho=1";
  long dmax = 6;
  sc_tau->add_option("--kernel", kernel);
  sc_tau->add_option("--dmax", dmax);
  add_common(sc_tau, "D, tau (exact induced norm), tau_relaxed, bound (paper closed form), ratio, precision, status");

  auto* sc_red = app.add_subcommand("reduction-demo", "BCP-from-KDE recovery demo");
  std::string noise = "none", noise_dist = "adversarial";
  long rn = 8, rm = 4, rtrials = 1;
  sc_red->add_option("--kernel", kernel);
  sc_red->add_option("--n", rn);
  sc_red->add_option("--m", rm);
  sc_red->add_option("--noise", noise, "none | budget | <k>x");
  sc_red->add_option("--noise-dist", noise_dist)->check(CLI::IsMember({"adversarial", "random"}));
  sc_red->add_option("--trials", rtrials);
  sc_red->add_option("--seed", seed);
  add_common(sc_red, "trial, n, m, kernel, noise, recovered_min, brute_min, status, column_sums_ok, tau, eps, max_residual");

  auto* sc_bench = app.add_subcommand("kde-bench", "KDE solver benchmark vs. the naive sum");
  std::string solver = "naive", bscale = "1";
  long bn = 32, bm = 3;
  double beps = 1e-3;
  sc_bench->add_option("--solver", solver)->check(CLI::IsMember({"naive", "sampling", "poly"}));
  sc_bench->add_option("--kernel", kernel);
  sc_bench->add_option("--n", bn);
  sc_bench->add_option("--m", bm);
  sc_bench->add_option("--B", bscale);
  sc_bench->add_option("--eps", beps);
  sc_bench->add_option("--seed", seed);
  add_common(sc_bench, "solver, kernel, n, m, B, eps, seed, precision, max_err, budget, sample_or_terms, degree, status");

  auto* sc_zov = app.add_subcommand("zov-demo", "Z-OV -> l2-BCP tensor-lift demo");
  long zn = 8, zm = 3, zemax = 2, ztrials = 10;
  sc_zov->add_option("--n", zn);
  sc_zov->add_option("--m", zm);
  sc_zov->add_option("--emax", zemax);
  sc_zov->add_option("--trials", ztrials);
  sc_zov->add_option("--seed", seed);
  add_common(sc_zov, "trial, n, m, emax, via_bcp, brute, lift_identity, status");

  RunResult res;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os, es;
    res.exit_code = app.exit(e, os, es) == 0 ? 0 : 1;
    res.output = os.str();
    res.error = es.str();
    return res;
  }

  mpfr_prec_t precision =
      precision_flag > 0 ? static_cast<mpfr_prec_t>(precision_flag) : env_default_precision();
  if (format.empty()) format = (sc_red->parsed() || sc_zov->parsed()) ? "json" : "csv";
  bool json = format == "json";
  Timer timer;
  try {
    if (sc_schur->parsed()) {
      Table t("schur-check",
              {"m", "lambda", "weight", "weyl_dim", "ssyt_count", "weyl_ok", "defs_equal",
               "principal_ok", "first_order_ok", "vanishing_ok", "status"},
              json);
      t.meta("seed", std::to_string(seed));
      t.meta("max_weight", std::to_string(max_weight));
      t.meta("max_m", std::to_string(max_m));
      t.meta("trials", std::to_string(trials));
      res.exit_code = cmd_schur_check(max_weight, max_m, trials, seed, t);
      t.set_wall_ms(timer.ms());
      res.output = t.render();
    } else if (sc_tau->parsed()) {
      Table t("tau-table", {"D", "tau", "tau_relaxed", "bound", "ratio", "precision", "status"}, json);
      t.meta("kernel", kernel);
      t.meta("dmax", std::to_string(dmax));
      res.exit_code = cmd_tau_table(kernel, dmax, precision, t);
      t.set_wall_ms(timer.ms());
      res.output = t.render();
    } else if (sc_red->parsed()) {
      Table t("reduction-demo",
              {"trial", "n", "m", "kernel", "noise", "recovered_min", "brute_min", "status",
               "column_sums_ok", "tau", "eps", "max_residual"},
              json);
      t.meta("seed", std::to_string(seed));
      t.meta("noise_dist", noise_dist);
      res.exit_code =
          cmd_reduction_demo(kernel, rn, rm, noise, noise_dist, rtrials, seed, precision, t);
      t.set_wall_ms(timer.ms());
      res.output = t.render();
    } else if (sc_bench->parsed()) {
      Table t("kde-bench",
              {"solver", "kernel", "n", "m", "B", "eps", "seed", "precision", "max_err", "budget",
               "sample_or_terms", "degree", "status"},
              json);
      t.meta("seed", std::to_string(seed));
      res.exit_code = cmd_kde_bench(solver, kernel, bn, bm, bscale, beps, seed, precision, t);
      t.set_wall_ms(timer.ms());
      res.output = t.render();
    } else if (sc_zov->parsed()) {
      Table t("zov-demo",
              {"trial", "n", "m", "emax", "via_bcp", "brute", "lift_identity", "status"}, json);
      t.meta("seed", std::to_string(seed));
      res.exit_code = cmd_zov_demo(zn, zm, zemax, ztrials, seed, t);
      t.set_wall_ms(timer.ms());
      res.output = t.render();
    }
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.error = std::string("error: ") + e.what() + "\n";
    return res;
  }

  if (out_path != "-") {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      res.exit_code = 1;
      res.error = "error: cannot open output file " + out_path + "\n";
      return res;
    }
    f << res.output;
  }
  return res;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunResult res = run(args);
  if (!res.error.empty()) std::cerr << res.error;
  if (!res.output.empty()) std::cout << res.output;
  return res.exit_code;
}

}  // namespace kdelab::cli
