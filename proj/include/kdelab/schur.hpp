#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kdelab/matrix.hpp"
#include "kdelab/partition.hpp"

namespace kdelab {

// Littlewood form: sum over SSYT of u^{type(T)}.
template <class S>
S schur_littlewood(const Partition& lambda, const std::vector<S>& u) {
  if (u.size() != lambda.size()) throw DomainError("schur_littlewood: |u| must equal the number of parts");
  if (u.empty()) throw DomainError("schur_littlewood: empty input");
  S total = num_traits<S>::zero(u[0]);
  for (const Ssyt& t : enumerate_ssyt(lambda, u.size())) {
    S mono = num_traits<S>::one(u[0]);
    std::vector<long> ty = ssyt_type(t, u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      if (ty[i] > 0) mono *= pow_long(u[i], ty[i]);
    total += mono;
  }
  return total;
}

template <class S>
S vandermonde(const std::vector<S>& u) {
  if (u.empty()) throw DomainError("vandermonde: empty vector");
  S prod = num_traits<S>::one(u[0]);
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) prod *= u[j] - u[i];
  return prod;
}

// Cauchy form: det(u^{o(lambda+delta)}) / V(u). Requires distinct entries.
template <class S>
S schur_cauchy(const Partition& lambda, const std::vector<S>& u) {
  const std::size_t m = lambda.size();
  if (u.size() != m) throw DomainError("schur_cauchy: |u| must equal the number of parts");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (u[i] == u[j]) throw DomainError("schur_cauchy: entries of u must be pairwise distinct");
  Matrix<S> gv(m, m, num_traits<S>::zero(u[0]));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) gv(i, k) = pow_long(u[i], lambda[k] + static_cast<long>(k));
  return det(gv) / vandermonde(u);
}

// s_lambda(1, q, ..., q^{m-1}) by the product formula. In characteristic
// zero every q outside {0, 1, -1} has infinite multiplicative order.
template <class S>
S principal_specialization(const Partition& lambda, const S& q, std::size_t m) {
  if (lambda.size() != m) throw DomainError("principal_specialization: partition must have m parts");
  S zero = num_traits<S>::zero(q);
  S one = num_traits<S>::one(q);
  if (q == zero || q == one || q == -one)
    throw DomainError("principal_specialization: q must have multiplicative order >= m");
  S num = one, den = one;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      num *= pow_long(q, lambda[j] + static_cast<long>(j)) - pow_long(q, lambda[i] + static_cast<long>(i));
      den *= pow_long(q, static_cast<long>(j)) - pow_long(q, static_cast<long>(i));
    }
  return num / den;
}

// First-order bounds u^lambda <= s_lambda(u) <= weyl_dimension * u^lambda for
// weakly increasing nonnegative u.
template <class S>
std::pair<S, S> first_order_bounds(const Partition& lambda, const std::vector<S>& u) {
  if (u.size() != lambda.size()) throw DomainError("first_order_bounds: |u| must equal the number of parts");
  if (u.empty()) throw DomainError("first_order_bounds: empty input");
  S zero = num_traits<S>::zero(u[0]);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < zero) throw DomainError("first_order_bounds: u must be nonnegative");
    if (i > 0 && u[i] < u[i - 1]) throw DomainError("first_order_bounds: u must be weakly increasing");
  }
  S mono = num_traits<S>::one(u[0]);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (lambda[i] > 0) mono *= pow_long(u[i], lambda[i]);
  unsigned long long dim = weyl_dimension(lambda, u.size());
  return {mono, num_traits<S>::from_long(static_cast<long>(dim), mono) * mono};
}

}  // namespace kdelab
