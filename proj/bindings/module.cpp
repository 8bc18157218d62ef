#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kdelab/solvers.hpp"

namespace py = pybind11;
using namespace kdelab;

namespace {

Rational rat(const py::handle& h) {
  if (py::isinstance<py::int_>(h)) return Rational(h.cast<long>());
  return Rational(py::str(h).cast<std::string>());
}

std::vector<Rational> rat_vec(const py::sequence& seq) {
  std::vector<Rational> v;
  v.reserve(py::len(seq));
  for (const auto& h : seq) v.push_back(rat(h));
  return v;
}

Matrix<Rational> rat_matrix(const py::sequence& rows) {
  std::size_t r = py::len(rows);
  if (r == 0) throw DomainError("empty matrix");
  py::sequence first = rows[0].cast<py::sequence>();
  std::size_t c = py::len(first);
  Matrix<Rational> m(r, c, Rational(0));
  for (std::size_t i = 0; i < r; ++i) {
    py::sequence row = rows[i].cast<py::sequence>();
    if (py::len(row) != c) throw DomainError("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rat(row[j]);
  }
  return m;
}

py::list str_matrix(const Matrix<Rational>& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(m(i, j).str());
    out.append(row);
  }
  return out;
}

Partition part(const std::vector<long>& parts) { return Partition(parts); }

PointSet points(const std::vector<std::vector<long long>>& pts) { return PointSet(pts); }

template <class S>
py::dict reduction_result(const BcpInstance& inst, const CountingMatrixSpec<S>& spec,
                          KernelPtr<S> oracle_kernel, const std::string& noise, std::uint64_t seed,
                          bool pd) {
  Matrix<S> m = build_counting_matrix(spec);
  TauPair<S> tp = tau_pair(m);
  S eps = num_traits<S>::one(spec.c) /
          (num_traits<S>::from_long(3 * static_cast<long>(inst.n_y()), spec.c) * tp.induced);
  auto naive = std::make_shared<NaiveKdeOracle<S>>(std::move(oracle_kernel));
  std::shared_ptr<const KdeOracle<S>> oracle = naive;
  if (noise == "budget")
    oracle = std::make_shared<NoisyOracle<S>>(naive, eps, NoiseMode::AdversarialSign, seed,
                                              worst_sign_pattern(m));
  else if (noise != "none")
    throw DomainError("noise must be 'none' or 'budget'");

  py::dict out;
  out["brute_min"] = brute_force_bcp(inst);
  out["tau"] = tp.induced.to_double();
  out["eps"] = eps.to_double();
  try {
    RecoveryResult<S> rec = pd ? pd_recover_distance_counts(inst, spec, *oracle, &eps)
                               : recover_distance_counts(inst, spec, *oracle, &eps);
    auto rows = pd ? pd_deindex(rec, spec.dist_cap) : rec.counts;
    py::list counts;
    py::list distances;
    for (std::size_t p = 0; p < rows.size(); ++p) {
      counts.append(rows[p]);
      distances.append(pd ? static_cast<long>(p) : rec.distance_values[p]);
    }
    out["counts"] = counts;            // row p counts pairs at counts_distance[p]
    out["counts_distance"] = distances;
    out["max_residual"] = rec.max_residual.to_double();
    long long rec_min =
        pd ? pd_bcp_via_kde(inst, spec, *oracle, &eps) : bcp_via_kde(inst, spec, *oracle, &eps);
    out["recovered_min"] = rec_min;
    out["status"] = rec_min == out["brute_min"].cast<long long>() ? "match" : "mismatch";
  } catch (const RoundingAmbiguousError& e) {
    out["recovered_min"] = py::none();
    out["status"] = std::string("ambiguous: ") + e.what();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "counting-matrix KDE reductions, Schur identities and KDE solvers";
  m.attr("__version__") = "0.1.0";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError", PyExc_ArithmeticError);
  py::register_exception<RoundingAmbiguousError>(m, "RoundingAmbiguousError", PyExc_RuntimeError);
  py::register_exception<RapidDecayViolatedError>(m, "RapidDecayViolatedError", PyExc_RuntimeError);

  // exact linear algebra (entries are ints, "a/b" strings, or Fractions via str())
  m.def("det", [](const py::sequence& rows) { return det(rat_matrix(rows)).str(); },
        "exact determinant of a rational matrix");
  m.def("inverse", [](const py::sequence& rows) { return str_matrix(inverse(rat_matrix(rows))); },
        "exact inverse of a rational matrix");
  m.def("tau", [](const py::sequence& rows) {
          TauPair<Rational> tp = tau_pair(rat_matrix(rows));
          return py::make_tuple(tp.induced.str(), tp.relaxed.str());
        },
        "(induced inf->inf norm of M^-1, relaxed D*max|M^-1| bound), exact");

  // Schur polynomials
  m.def("schur_littlewood", [](const std::vector<long>& lam, const py::sequence& u) {
    return schur_littlewood(part(lam), rat_vec(u)).str();
  });
  m.def("schur_cauchy", [](const std::vector<long>& lam, const py::sequence& u) {
    return schur_cauchy(part(lam), rat_vec(u)).str();
  });
  m.def("principal_specialization", [](const std::vector<long>& lam, const py::handle& q, long mm) {
    return principal_specialization(part(lam), rat(q), static_cast<std::size_t>(mm)).str();
  });
  m.def("weyl_dimension", [](const std::vector<long>& lam, long mm) {
    return weyl_dimension(part(lam), static_cast<std::size_t>(mm));
  });
  m.def("ssyt_count", [](const std::vector<long>& lam, long mm) {
    return enumerate_ssyt(part(lam), static_cast<std::size_t>(mm)).size();
  });
  m.def("enumerate_ssyt", [](const std::vector<long>& lam, long mm) {
    py::list out;
    for (const Ssyt& t : enumerate_ssyt(part(lam), static_cast<std::size_t>(mm))) out.append(t.rows);
    return out;
  });

  // kernels
  m.def("kernel_eval", [](const std::string& kernel, const py::handle& x, long precision) {
          KernelSpecInfo info = parse_kernel_string(kernel);
          if (kernel_exact_capable(info))
            return py::cast(eval_f(*make_kernel<Rational>(info, Rational(0)), rat(x)).str());
          BigFloat proto(precision);
          return py::cast(eval_f(*make_kernel<BigFloat>(info, proto), BigFloat(rat(x), precision)).to_double());
        },
        py::arg("kernel"), py::arg("x"), py::arg("precision") = 128,
        "f(x); exact 'a/b' string for exact kernels, float for gaussian");
  m.def("taylor_coeff", [](const std::string& kernel, std::size_t n, const py::handle& c) {
          KernelSpecInfo info = parse_kernel_string(kernel);
          if (!kernel_exact_capable(info)) throw DomainError("taylor_coeff binding is exact-mode only");
          return make_kernel<Rational>(info, Rational(0))->taylor_coeff(n, rat(c)).str();
        },
        "f^(n)(c)/n! for the exact kernels");

  // counting matrices
  m.def("counting_matrix", [](const std::string& kernel, long d, long precision) -> py::object {
          KernelSpecInfo info = parse_kernel_string(kernel);
          if (info.family == "gaussian") {
            auto spec = gaussian_spec(d, info.param,
                                      precision ? static_cast<mpfr_prec_t>(precision) : 0);
            Matrix<BigFloat> mm = build_counting_matrix(spec);
            py::list out;
            for (std::size_t i = 0; i < mm.rows(); ++i) {
              py::list row;
              for (std::size_t j = 0; j < mm.cols(); ++j) row.append(mm(i, j).to_double());
              out.append(row);
            }
            return out;
          }
          if (!kernel_exact_capable(info)) throw DomainError("non-integer parameters need gaussian-style precision handling");
          auto spec = info.family == "tstudent" ? tstudent_spec<Rational>(d, info.param, Rational(0))
                      : info.family == "cauchy" ? cauchy_spec<Rational>(d, Rational(0))
                      : info.family == "rq"     ? rq_spec<Rational>(d, info.param, Rational(0))
                                                : throw DomainError("unsupported kernel " + kernel);
          return str_matrix(build_counting_matrix(spec));
        },
        py::arg("kernel"), py::arg("D"), py::arg("precision") = 0);
  m.def("tau_and_bound", [](const std::string& kernel, long d, long precision) {
          KernelSpecInfo info = parse_kernel_string(kernel);
          py::dict out;
          if (info.family == "gaussian") {
            mpfr_prec_t prec =
                precision ? static_cast<mpfr_prec_t>(precision) : default_gaussian_precision(d, info.param);
            TauPair<BigFloat> tp = tau_pair(build_counting_matrix(gaussian_spec(d, info.param, prec)));
            BigFloat bound = gaussian_tau_bound(d, info.param, 128, Round::Down);
            out["tau"] = tp.induced.to_double();
            out["relaxed"] = tp.relaxed.to_double();
            out["bound"] = bound.to_double();
            out["certified"] = mpfr_cmp(tp.induced.raw(), bound.raw()) <= 0;
            out["precision"] = static_cast<long>(prec);
            return out;
          }
          if (!kernel_exact_capable(info)) throw DomainError("use integer kernel parameters here");
          auto spec = info.family == "tstudent" ? tstudent_spec<Rational>(d, info.param, Rational(0))
                      : info.family == "cauchy" ? cauchy_spec<Rational>(d, Rational(0))
                      : info.family == "rq"     ? rq_spec<Rational>(d, info.param, Rational(0))
                                                : throw DomainError("unsupported kernel " + kernel);
          BigFloat bound = info.family == "tstudent"
                               ? tstudent_tau_bound(d, info.param, 128, Round::Down)
                           : info.family == "cauchy" ? tstudent_tau_bound(d, Rational(1), 128, Round::Down)
                                                     : rq_tau_bound(d, info.param, 128, Round::Down);
          TauPair<Rational> tp = tau_pair(build_counting_matrix(spec));
          out["tau"] = tp.induced.to_double();
          out["relaxed"] = tp.relaxed.to_double();
          out["bound"] = bound.to_double();
          out["certified"] = bound.cmp(tp.induced) >= 0;
          out["precision"] = "exact";
          return out;
        },
        py::arg("kernel"), py::arg("D"), py::arg("precision") = 0);
  m.def("cauchy_determinant", [](const py::sequence& a, const py::sequence& b) {
    return cauchy_det<Rational>(rat_vec(a), rat_vec(b)).str();
  });
  m.def("cauchy_minor_ratio", [](const py::sequence& a, const py::sequence& b, std::size_t s,
                                 std::size_t t) {
    return cauchy_minor_ratio<Rational>(rat_vec(a), rat_vec(b), s, t).str();
  });
  m.def("first_order_bounds", [](const std::vector<long>& lam, const py::sequence& u) {
    auto [lo, hi] = first_order_bounds(part(lam), rat_vec(u));
    return py::make_tuple(lo.str(), hi.str());
  });
  m.def("cauchy_binet_rq", [](long d, long sigma, long cutoff) {
          auto spec = rq_spec<Rational>(d, Rational(sigma), Rational(0));
          Rational approx = cauchy_binet_det(spec, cutoff);
          Rational exact = det(build_counting_matrix(spec));
          py::dict out;
          out["partial_sum"] = approx.str();
          out["exact_det"] = exact.str();
          out["rel_err"] = (abs(approx - exact) / abs(exact)).to_double();
          return out;
        },
        py::arg("D"), py::arg("sigma"), py::arg("cutoff"),
        "truncated Schur expansion of det(M) for the reflected RQ kernel");

  // reductions
  m.def("brute_force_bcp", [](const std::vector<std::vector<long long>>& x,
                              const std::vector<std::vector<long long>>& y) {
    return brute_force_bcp(points(x), points(y));
  });
  m.def("brute_force_ov", [](const std::vector<std::vector<long long>>& x,
                             const std::vector<std::vector<long long>>& y) {
    return brute_force_ov(points(x), points(y));
  });
  m.def("bcp_via_kde", [](const std::vector<std::vector<long long>>& x,
                          const std::vector<std::vector<long long>>& y, const std::string& kernel,
                          const std::string& noise, std::uint64_t seed, long precision) {
          KernelSpecInfo info = parse_kernel_string(kernel);
          PointSet px(x), py_(y);
          long long cap = 0;
          for (const auto& a : x)
            for (const auto& b : y) cap = std::max(cap, sq_dist(a, b));
          if (info.family == "gaussian") {
            BcpInstance inst(px, py_, cap);
            mpfr_prec_t prec = precision ? static_cast<mpfr_prec_t>(precision)
                                         : default_gaussian_precision(cap > 0 ? cap : 1, info.param);
            auto spec = gaussian_spec(cap > 0 ? cap : 1, info.param, prec);
            return reduction_result<BigFloat>(inst, spec, spec.kernel, noise, seed, false);
          }
          if (!kernel_exact_capable(info)) throw DomainError("integer kernel parameters required");
          if (info.family == "rq") {
            BcpInstance inst(px, py_, cap);
            auto spec = rq_spec<Rational>(cap + 1, info.param, Rational(0));
            auto f = make_kernel<Rational>(info, Rational(0));
            return reduction_result<Rational>(inst, spec, f, noise, seed, true);
          }
          if (cap == 0 || brute_force_bcp(px, py_) == 0)
            throw DomainError("tstudent/cauchy reductions need min distance >= 1 (beta starts at 1)");
          BcpInstance inst(px, py_, cap);
          auto spec = info.family == "cauchy" ? cauchy_spec<Rational>(cap, Rational(0))
                                              : tstudent_spec<Rational>(cap, info.param, Rational(0));
          return reduction_result<Rational>(inst, spec, spec.kernel, noise, seed, false);
        },
        py::arg("X"), py::arg("Y"), py::arg("kernel"), py::arg("noise") = "none", py::arg("seed") = 1,
        py::arg("precision") = 0,
        "recover the BCP minimum through the counting-matrix reduction");
  m.def("zov_via_bcp", [](const std::vector<std::vector<long long>>& x,
                          const std::vector<std::vector<long long>>& y) {
    return zov_to_bcp(points(x), points(y), [](const BcpInstance& i) { return brute_force_bcp(i); });
  });

  // solvers
  m.def("fit_degree", [](const std::string& kernel, double eps) {
          BigFloat proto(128);
          auto p = fit_polynomial(*make_kernel<BigFloat>(parse_kernel_string(kernel), proto),
                                  Rational::from_double(eps));
          return p.degree;
        },
        py::arg("kernel"), py::arg("eps"), "minimal Chebyshev degree reaching eps on [0,1]");
  m.def("poly_kde_check", [](const std::string& kernel, long n, long mm, double eps, std::uint64_t seed) {
          BigFloat proto0(128);
          auto f = make_kernel<BigFloat>(parse_kernel_string(kernel), proto0);
          ApproxPolynomial p = fit_polynomial(*f, Rational::from_double(eps));
          mpfr_prec_t prec = p.coeffs[0].prec();
          Rng rng(seed);
          long root = 1;
          while (root * root < mm) ++root;
          long span = 1000 / root;
          RealPoints<BigFloat> px, py_;
          std::vector<BigFloat> u;
          for (long i = 0; i < n; ++i) {
            std::vector<BigFloat> a, b;
            for (long k = 0; k < mm; ++k) {
              a.emplace_back(Rational(static_cast<long>(rng.below(span + 1)), 2000ul), prec);
              b.emplace_back(Rational(static_cast<long>(rng.below(span + 1)), 2000ul), prec);
            }
            px.push_back(a);
            py_.push_back(b);
            u.emplace_back(Rational(static_cast<long>(rng.below(2001)) - 1000, 1000ul), prec);
          }
          auto exact = naive_kde(px, py_, u, *f);
          FeatureFactorization fac = build_feature_maps(p, px, py_);
          auto approx = poly_kde(fac, u);
          BigFloat worst(prec), norm1(prec);
          for (const auto& w : u) norm1 += abs(w);
          for (long i = 0; i < n; ++i) {
            BigFloat e = abs(approx[i] - exact[i]);
            if (e > worst) worst = e;
          }
          py::dict out;
          out["degree"] = p.degree;
          out["terms"] = fac.n_terms;
          out["max_err"] = worst.to_double();
          out["budget"] = (BigFloat(Rational::from_double(eps), prec) * norm1).to_double();
          out["within_binomial_bound"] =
              terms_within_binomial_bound(fac.n_terms, static_cast<std::size_t>(mm), p.degree);
          out["ok"] = worst <= BigFloat(Rational::from_double(eps), prec) * norm1;
          return out;
        },
        py::arg("kernel"), py::arg("n"), py::arg("m"), py::arg("eps"), py::arg("seed") = 1);
}
