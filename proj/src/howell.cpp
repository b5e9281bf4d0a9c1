#include "clonoid/howell.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <numeric>

#include "clonoid/error.hpp"

namespace clonoid {

namespace {

int64_t emod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// g = gcd(a,b) = s*a + t*b
int64_t ext_gcd(int64_t a, int64_t b, int64_t& s, int64_t& t) {
  if (b == 0) {
    s = 1;
    t = 0;
    return a;
  }
  int64_t s1, t1;
  int64_t g = ext_gcd(b, a % b, s1, t1);
  s = t1;
  t = s1 - (a / b) * t1;
  return g;
}

struct WRow {
  Row v;
  Row t;
};

void axpy(Row& dst, int64_t c, const Row& src, int64_t m) {
  for (size_t i = 0; i < dst.size(); ++i) dst[i] = emod(dst[i] + c * src[i], m);
}

Row scaled(const Row& r, int64_t c, int64_t m) {
  Row out(r.size());
  for (size_t i = 0; i < r.size(); ++i) out[i] = emod(c * r[i], m);
  return out;
}

int leading(const Row& r) {
  for (size_t i = 0; i < r.size(); ++i)
    if (r[i] != 0) return static_cast<int>(i);
  return -1;
}

bool is_zero(const Row& r) { return leading(r) < 0; }

// A unit u of Z_m with u*a = gcd(a,m) (mod m); m is small here.
int64_t unit_normalizer(int64_t a, int64_t m) {
  int64_t g = std::gcd(a, m);
  for (int64_t u = 1; u < m; ++u)
    if (std::gcd(u, m) == 1 && emod(u * a, m) == g) return u;
  fail("Internal", "no unit normalizer found");
}

}  // namespace

int64_t mod_inverse(int64_t a, int64_t m) {
  a = emod(a, m);
  if (m == 1) return 0;
  int64_t s, t;
  int64_t g = ext_gcd(a, m, s, t);
  if (g != 1) fail("GcdViolation", "element not invertible modulo " + std::to_string(m));
  return emod(s, m);
}

HowellForm::HowellForm(int64_t modulus, int ncols, const std::vector<Row>& generators)
    : modulus_(modulus), ncols_(ncols), ngens_(static_cast<int>(generators.size())) {
  if (modulus < 1) fail("Internal", "modulus must be positive");

  std::vector<std::optional<WRow>> pivots(ncols);
  std::deque<WRow> work;
  for (int i = 0; i < ngens_; ++i) {
    Row t(ngens_, 0);
    t[i] = modulus_ == 1 ? 0 : 1;
    Row v(ncols);
    for (int j = 0; j < ncols; ++j) v[j] = emod(generators[i][j], modulus_);
    work.push_back({std::move(v), std::move(t)});
  }

  auto push_annihilator = [&](const WRow& piv, int col) {
    int64_t lead = piv.v[col];
    int64_t g = std::gcd(lead, modulus_);
    int64_t mult = modulus_ / g;
    if (mult >= modulus_) return;  // lead is a unit, annihilator is zero
    WRow ann{scaled(piv.v, mult, modulus_), scaled(piv.t, mult, modulus_)};
    if (!is_zero(ann.v) || !is_zero(ann.t)) work.push_back(std::move(ann));
  };

  while (!work.empty()) {
    WRow wr = std::move(work.front());
    work.pop_front();
    for (;;) {
      int j = leading(wr.v);
      if (j < 0) {
        if (!is_zero(wr.t)) kernel_.push_back(wr.t);
        break;
      }
      if (!pivots[j]) {
        pivots[j] = std::move(wr);
        push_annihilator(*pivots[j], j);
        break;
      }
      WRow& piv = *pivots[j];
      int64_t p = piv.v[j];
      int64_t a = wr.v[j];
      if (a % p == 0) {
        // plain elimination step
        int64_t q = a / p;
        axpy(wr.v, modulus_ - emod(q, modulus_), piv.v, modulus_);
        axpy(wr.t, modulus_ - emod(q, modulus_), piv.t, modulus_);
        continue;
      }
      int64_t s, t;
      int64_t g = ext_gcd(p, a, s, t);
      WRow npiv;
      npiv.v = scaled(piv.v, s, modulus_);
      axpy(npiv.v, t, wr.v, modulus_);
      npiv.t = scaled(piv.t, s, modulus_);
      axpy(npiv.t, t, wr.t, modulus_);
      WRow rem1{piv.v, piv.t};
      axpy(rem1.v, modulus_ - emod(p / g, modulus_), npiv.v, modulus_);
      axpy(rem1.t, modulus_ - emod(p / g, modulus_), npiv.t, modulus_);
      WRow rem2{std::move(wr.v), std::move(wr.t)};
      axpy(rem2.v, modulus_ - emod(a / g, modulus_), npiv.v, modulus_);
      axpy(rem2.t, modulus_ - emod(a / g, modulus_), npiv.t, modulus_);
      pivots[j] = std::move(npiv);
      push_annihilator(*pivots[j], j);
      if (!is_zero(rem1.v) || !is_zero(rem1.t)) work.push_back(std::move(rem1));
      wr = std::move(rem2);
    }
  }

  // Canonicalize: unit-normalize leading entries to divisors of E, then
  // reduce entries above each pivot into [0, pivot).
  std::vector<int> cols;
  for (int j = 0; j < ncols; ++j)
    if (pivots[j]) cols.push_back(j);
  for (int j : cols) {
    WRow& piv = *pivots[j];
    int64_t u = unit_normalizer(piv.v[j], modulus_);
    piv.v = scaled(piv.v, u, modulus_);
    piv.t = scaled(piv.t, u, modulus_);
  }
  for (size_t i = 0; i < cols.size(); ++i) {
    for (size_t l = i + 1; l < cols.size(); ++l) {
      int jl = cols[l];
      WRow& upper = *pivots[cols[i]];
      const WRow& lower = *pivots[jl];
      int64_t lead = lower.v[jl];
      int64_t q = upper.v[jl] / lead;
      if (q != 0) {
        axpy(upper.v, modulus_ - emod(q, modulus_), lower.v, modulus_);
        axpy(upper.t, modulus_ - emod(q, modulus_), lower.t, modulus_);
      }
    }
  }
  for (int j : cols) {
    rows_.push_back(std::move(pivots[j]->v));
    combos_.push_back(std::move(pivots[j]->t));
  }
}

std::optional<Row> HowellForm::express(const Row& v) const {
  if (static_cast<int>(v.size()) != ncols_) fail("Internal", "column mismatch in express");
  Row residual(ncols_);
  for (int j = 0; j < ncols_; ++j) residual[j] = emod(v[j], modulus_);
  Row certificate(ngens_, 0);
  size_t ri = 0;
  for (int j = 0; j < ncols_; ++j) {
    while (ri < rows_.size() && leading(rows_[ri]) < j) ++ri;
    if (residual[j] == 0) continue;
    if (ri >= rows_.size() || leading(rows_[ri]) != j) return std::nullopt;
    int64_t lead = rows_[ri][j];
    if (residual[j] % lead != 0) return std::nullopt;
    int64_t q = residual[j] / lead;
    axpy(residual, modulus_ - emod(q, modulus_), rows_[ri], modulus_);
    axpy(certificate, q, combos_[ri], modulus_);
  }
  if (!is_zero(residual)) return std::nullopt;
  return certificate;
}

bool HowellForm::contains(const Row& v) const { return express(v).has_value(); }

uint64_t HowellForm::span_size() const {
  uint64_t n = 1;
  for (const Row& r : rows_) {
    int j = leading(r);
    n *= static_cast<uint64_t>(modulus_ / std::gcd(r[j], modulus_));
  }
  return n;
}

}  // namespace clonoid
