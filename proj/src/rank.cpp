#include "clonoid/rank.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "clonoid/error.hpp"

namespace clonoid {

namespace {

constexpr int64_t kSearchGuard = 1LL << 24;

int64_t checked_pow(int64_t base, int64_t e) {
  int64_t r = 1;
  for (int64_t i = 0; i < e; ++i) {
    r *= base;
    if (r > kSearchGuard) return kSearchGuard + 1;
  }
  return r;
}

// Enumerate all matrices of a given shape by odometer over the entries.
bool next_matrix(Matrix& m, int ring_size) {
  for (auto it = m.e.rbegin(); it != m.e.rend(); ++it) {
    if (++*it < ring_size) return true;
    *it = 0;
  }
  return false;
}

bool factors_through(const RingPtr& ring, const Matrix& a, int r) {
  if (r == 0) {
    for (int x : a.e)
      if (x != ring->zero) return false;
    return true;
  }
  int64_t pairs = checked_pow(ring->size, int64_t(a.rows) * r) ;
  int64_t right = checked_pow(ring->size, int64_t(r) * a.cols);
  if (pairs > kSearchGuard || right > kSearchGuard || pairs > kSearchGuard / right)
    fail("SearchTooLarge", "inner rank factorization search exceeds the guard");
  Matrix b(a.rows, r, 0);
  do {
    Matrix c(r, a.cols, 0);
    do {
      if (mat_mul(*ring, b, c) == a) return true;
    } while (next_matrix(c, ring->size));
  } while (next_matrix(b, ring->size));
  return false;
}

}  // namespace

int inner_rank(const RingPtr& ring, const Matrix& m) {
  int bound = std::min(m.rows, m.cols);
  for (int r = 0; r < bound; ++r)
    if (factors_through(ring, m, r)) return r;
  return bound;  // the trivial factorization A = A * I always works
}

std::vector<Matrix> matrices_of_rank_at_most(const RingPtr& ring, int k, int n,
                                             const ModulePtr& dedupe_module) {
  std::vector<Matrix> raw;
  if (n >= k) {
    int64_t total = checked_pow(ring->size, int64_t(k) * k);
    if (total > kSearchGuard) fail("SearchTooLarge", "matrix enumeration exceeds the guard");
    Matrix m(k, k, 0);
    do raw.push_back(m);
    while (next_matrix(m, ring->size));
  } else {
    // every rank <= n matrix is a product of a k x n and an n x k factor
    int64_t left = checked_pow(ring->size, int64_t(k) * n);
    if (left > kSearchGuard || left > kSearchGuard / left)
      fail("SearchTooLarge", "rank-bounded enumeration exceeds the guard");
    std::vector<Matrix> halves_l, halves_r;
    Matrix b(k, n, 0);
    do halves_l.push_back(b);
    while (next_matrix(b, ring->size));
    Matrix c(n, k, 0);
    do halves_r.push_back(c);
    while (next_matrix(c, ring->size));
    std::set<std::vector<int>> seen;
    for (const Matrix& l : halves_l)
      for (const Matrix& r : halves_r) {
        Matrix p = mat_mul(*ring, l, r);
        if (seen.insert(p.e).second) raw.push_back(p);
      }
  }
  if (dedupe_module) {
    std::map<std::vector<int64_t>, Matrix> by_map;
    int64_t domain = ipow(dedupe_module->size, k);
    for (const Matrix& m : raw) {
      std::vector<int64_t> key(domain);
      for (int64_t x = 0; x < domain; ++x) key[x] = matrix_act_tuple(*dedupe_module, m, x);
      auto it = by_map.find(key);
      if (it == by_map.end())
        by_map.emplace(std::move(key), m);
      else if (m.e < it->second.e)
        it->second = m;
    }
    raw.clear();
    for (auto& [key, m] : by_map) raw.push_back(m);
  }
  std::sort(raw.begin(), raw.end(), [](const Matrix& a, const Matrix& b) { return a.e < b.e; });
  return raw;
}

}  // namespace clonoid
