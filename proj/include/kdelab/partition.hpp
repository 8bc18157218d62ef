#pragma once

#include <gmp.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "kdelab/errors.hpp"

namespace kdelab {

// Integer tuple lambda_1 <= ... <= lambda_m, zero parts retained. The
// staircase delta = (0, 1, ..., m-1) pairs with it in all determinant
// formulas.
class Partition {
 public:
  explicit Partition(std::vector<long> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw DomainError("Partition: negative part");
      if (i > 0 && parts_[i] < parts_[i - 1]) throw DomainError("Partition: parts must weakly increase");
    }
  }

  std::size_t size() const { return parts_.size(); }
  long operator[](std::size_t i) const { return parts_[i]; }
  const std::vector<long>& parts() const { return parts_; }

  long weight() const {
    long w = 0;
    for (long p : parts_) w += p;
    return w;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s + ")";
  }

 private:
  std::vector<long> parts_;
};

// All weakly increasing m-tuples of nonnegative integers with the given
// total weight, in lexicographic order.
inline std::vector<Partition> partitions_of_weight(std::size_t m, long weight) {
  std::vector<Partition> out;
  std::vector<long> cur(m, 0);
  auto rec = [&](auto&& self, std::size_t idx, long remaining, long lo) -> void {
    if (idx == m) {
      if (remaining == 0) out.emplace_back(cur);
      return;
    }
    for (long v = lo; v * static_cast<long>(m - idx) <= remaining; ++v) {
      cur[idx] = v;
      self(self, idx + 1, remaining - v, v);
    }
  };
  if (m == 0) {
    if (weight == 0) out.emplace_back(std::vector<long>{});
    return out;
  }
  rec(rec, 0, weight, 0);
  return out;
}

inline std::vector<Partition> partitions_up_to_weight(std::size_t m, long max_weight) {
  std::vector<Partition> out;
  for (long w = 0; w <= max_weight; ++w) {
    auto pw = partitions_of_weight(m, w);
    out.insert(out.end(), pw.begin(), pw.end());
  }
  return out;
}

// Semi-standard Young tableau in the paper's orientation: row i holds
// lambda_i cells, rows listed bottom to top, entries from {1..m} weakly
// decreasing along each row and strictly decreasing down each column
// (the cell in row i+1 exceeds the cell below it in row i).
struct Ssyt {
  std::vector<std::vector<int>> rows;

  // Reading word: rows top to bottom, each left to right.
  std::vector<int> reading_word() const {
    std::vector<int> w;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) w.insert(w.end(), it->begin(), it->end());
    return w;
  }
};

inline std::vector<long> ssyt_type(const Ssyt& t, std::size_t m) {
  std::vector<long> ty(m, 0);
  for (const auto& row : t.rows)
    for (int v : row) ++ty[static_cast<std::size_t>(v) - 1];
  return ty;
}

// Depth-first fill in column-major order (within a column, top row first so
// the strict column constraint prunes immediately). Output sorted by reading
// word.
inline std::vector<Ssyt> enumerate_ssyt(const Partition& lambda, std::size_t m) {
  const std::size_t nrows = lambda.size();
  std::vector<std::vector<int>> cells(nrows);
  for (std::size_t i = 0; i < nrows; ++i) cells[i].assign(static_cast<std::size_t>(lambda[i]), 0);

  std::vector<std::pair<std::size_t, std::size_t>> order;
  long maxlen = nrows ? lambda[nrows - 1] : 0;
  for (long j = 0; j < maxlen; ++j)
    for (std::size_t ii = nrows; ii-- > 0;)
      if (lambda[ii] > j) order.emplace_back(ii, static_cast<std::size_t>(j));

  std::vector<Ssyt> out;
  auto feasible = [&](std::size_t i, std::size_t j, int v) {
    if (j > 0 && v > cells[i][j - 1]) return false;                       // row weakly decreases
    if (i + 1 < nrows && static_cast<long>(j) < lambda[i + 1] && cells[i + 1][j] != 0 &&
        cells[i + 1][j] <= v)
      return false;                                                       // strictly below the cell above
    return true;
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == order.size()) {
      out.push_back(Ssyt{cells});
      return;
    }
    auto [i, j] = order[k];
    for (int v = 1; v <= static_cast<int>(m); ++v) {
      if (feasible(i, j, v)) {
        cells[i][j] = v;
        self(self, k + 1);
        cells[i][j] = 0;
      }
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(),
            [](const Ssyt& a, const Ssyt& b) { return a.reading_word() < b.reading_word(); });
  return out;
}

// |SSYT(lambda, m)| = V(lambda+delta)/V(delta), computed exactly in integers.
inline unsigned long long weyl_dimension(const Partition& lambda, std::size_t m) {
  if (lambda.size() != m) throw DomainError("weyl_dimension: partition must have m parts");
  mpz_t num, den;
  mpz_init_set_ui(num, 1);
  mpz_init_set_ui(den, 1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      long dn = (lambda[j] + static_cast<long>(j)) - (lambda[i] + static_cast<long>(i));
      long dd = static_cast<long>(j) - static_cast<long>(i);
      mpz_mul_si(num, num, dn);
      mpz_mul_si(den, den, dd);
    }
  mpz_divexact(num, num, den);
  if (!mpz_fits_ulong_p(num)) {
    mpz_clears(num, den, nullptr);
    throw DomainError("weyl_dimension: value exceeds unsigned long");
  }
  unsigned long long r = mpz_get_ui(num);
  mpz_clears(num, den, nullptr);
  return r;
}

}  // namespace kdelab
