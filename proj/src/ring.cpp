#include "clonoid/ring.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace clonoid {

namespace {

constexpr int kRingSizeCap = 4096;
constexpr int kVerifyCap = 64;

void verify_axioms(const FiniteRing& r) {
  int n = r.size;
  for (int a = 0; a < n; ++a) {
    if (r.add(a, r.zero) != a) fail("MalformedSpec", "zero is not additive identity");
    if (r.add(a, r.neg(a)) != r.zero) fail("MalformedSpec", "negation is broken");
    if (r.mul(a, r.one) != a || r.mul(r.one, a) != a)
      fail("MalformedSpec", "one is not a multiplicative identity");
    if (r.mul(a, r.zero) != r.zero || r.mul(r.zero, a) != r.zero)
      fail("MalformedSpec", "zero does not annihilate");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (r.add(a, b) != r.add(b, a)) fail("MalformedSpec", "addition not commutative");
      for (int c = 0; c < n; ++c) {
        if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
          fail("MalformedSpec", "addition not associative");
        if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
          fail("MalformedSpec", "multiplication not associative");
        if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
          fail("MalformedSpec", "left distributivity fails");
        if (r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c)))
          fail("MalformedSpec", "right distributivity fails");
      }
    }
}

void fill_inverses(FiniteRing& r) {
  r.inverse_table.assign(r.size, -1);
  for (int a = 0; a < r.size; ++a)
    for (int b = 0; b < r.size; ++b)
      if (r.mul(a, b) == r.one && r.mul(b, a) == r.one) {
        r.inverse_table[a] = b;
        break;
      }
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

RingPtr make_zmod(int m) {
  if (m < 1) fail("MalformedSpec", "zmod modulus must be >= 1");
  if (m > kRingSizeCap) fail("SizeLimit", "ring size exceeds cap");
  FiniteRing r;
  r.size = m;
  r.zero = 0;
  r.one = m == 1 ? 0 : 1;
  r.label = "Z_" + std::to_string(m);
  r.add_table.resize(m * m);
  r.mul_table.resize(m * m);
  r.neg_table.resize(m);
  for (int a = 0; a < m; ++a) {
    r.neg_table[a] = (m - a) % m;
    for (int b = 0; b < m; ++b) {
      r.add_table[a * m + b] = (a + b) % m;
      r.mul_table[a * m + b] = (a * b) % m;
    }
  }
  return make_ring_from_tables(r.size, std::move(r.add_table), std::move(r.mul_table),
                               std::move(r.neg_table), r.zero, r.one, std::move(r.label));
}

RingPtr make_product(const std::vector<RingPtr>& factors) {
  if (factors.empty()) fail("MalformedSpec", "empty ring product");
  long long size = 1;
  for (const auto& f : factors) {
    size *= f->size;
    if (size > kRingSizeCap) fail("SizeLimit", "ring size exceeds cap");
  }
  int n = static_cast<int>(size);
  int k = static_cast<int>(factors.size());
  // lexicographic tuples, first factor most significant
  auto decode = [&](int idx, std::vector<int>& out) {
    for (int i = k - 1; i >= 0; --i) {
      out[i] = idx % factors[i]->size;
      idx /= factors[i]->size;
    }
  };
  auto encode = [&](const std::vector<int>& t) {
    int idx = 0;
    for (int i = 0; i < k; ++i) idx = idx * factors[i]->size + t[i];
    return idx;
  };
  FiniteRing r;
  r.size = n;
  r.add_table.resize(n * n);
  r.mul_table.resize(n * n);
  r.neg_table.resize(n);
  std::vector<int> ta(k), tb(k), tc(k);
  for (int a = 0; a < n; ++a) {
    decode(a, ta);
    for (int i = 0; i < k; ++i) tc[i] = factors[i]->neg(ta[i]);
    r.neg_table[a] = encode(tc);
    for (int b = 0; b < n; ++b) {
      decode(b, tb);
      for (int i = 0; i < k; ++i) tc[i] = factors[i]->add(ta[i], tb[i]);
      r.add_table[a * n + b] = encode(tc);
      for (int i = 0; i < k; ++i) tc[i] = factors[i]->mul(ta[i], tb[i]);
      r.mul_table[a * n + b] = encode(tc);
    }
  }
  for (int i = 0; i < k; ++i) ta[i] = factors[i]->zero;
  r.zero = encode(ta);
  for (int i = 0; i < k; ++i) ta[i] = factors[i]->one;
  r.one = encode(ta);
  std::string label = "product[";
  for (int i = 0; i < k; ++i) label += (i ? "," : "") + factors[i]->label;
  label += "]";
  return make_ring_from_tables(r.size, std::move(r.add_table), std::move(r.mul_table),
                               std::move(r.neg_table), r.zero, r.one, std::move(label));
}

// Upper triangular 2x2 matrices over Z_p, elements indexed as (a,b,c) for
// [[a,b],[0,c]] with index a*p^2 + b*p + c.
RingPtr make_triangular(int p) {
  if (!is_prime(p)) fail("MalformedSpec", "triangular ring needs a prime p");
  long long size = 1LL * p * p * p;
  if (size > kRingSizeCap) fail("SizeLimit", "ring size exceeds cap");
  int n = static_cast<int>(size);
  auto enc = [&](int a, int b, int c) { return (a * p + b) * p + c; };
  FiniteRing r;
  r.size = n;
  r.add_table.resize(n * n);
  r.mul_table.resize(n * n);
  r.neg_table.resize(n);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c) {
        int x = enc(a, b, c);
        r.neg_table[x] = enc((p - a) % p, (p - b) % p, (p - c) % p);
        for (int a2 = 0; a2 < p; ++a2)
          for (int b2 = 0; b2 < p; ++b2)
            for (int c2 = 0; c2 < p; ++c2) {
              int y = enc(a2, b2, c2);
              r.add_table[x * n + y] = enc((a + a2) % p, (b + b2) % p, (c + c2) % p);
              r.mul_table[x * n + y] = enc((a * a2) % p, (a * b2 + b * c2) % p, (c * c2) % p);
            }
      }
  r.zero = enc(0, 0, 0);
  r.one = enc(1, 0, 1);
  return make_ring_from_tables(r.size, std::move(r.add_table), std::move(r.mul_table),
                               std::move(r.neg_table), r.zero, r.one,
                               "triangular(Z_" + std::to_string(p) + ")");
}

RingPtr make_matrix_ring(int p, int d) {
  if (!is_prime(p)) fail("MalformedSpec", "matrix ring needs a prime p");
  if (d < 1) fail("MalformedSpec", "matrix dimension must be >= 1");
  long long size = 1;
  for (int i = 0; i < d * d; ++i) {
    size *= p;
    if (size > kRingSizeCap) fail("SizeLimit", "ring size exceeds cap");
  }
  int n = static_cast<int>(size);
  auto decode = [&](int idx, std::vector<int>& m) {
    for (int i = d * d - 1; i >= 0; --i) {
      m[i] = idx % p;
      idx /= p;
    }
  };
  auto encode = [&](const std::vector<int>& m) {
    int idx = 0;
    for (int i = 0; i < d * d; ++i) idx = idx * p + m[i];
    return idx;
  };
  FiniteRing r;
  r.size = n;
  r.add_table.resize(n * n);
  r.mul_table.resize(n * n);
  r.neg_table.resize(n);
  std::vector<int> ma(d * d), mb(d * d), mc(d * d);
  for (int a = 0; a < n; ++a) {
    decode(a, ma);
    for (int i = 0; i < d * d; ++i) mc[i] = (p - ma[i]) % p;
    r.neg_table[a] = encode(mc);
    for (int b = 0; b < n; ++b) {
      decode(b, mb);
      for (int i = 0; i < d * d; ++i) mc[i] = (ma[i] + mb[i]) % p;
      r.add_table[a * n + b] = encode(mc);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          int s = 0;
          for (int l = 0; l < d; ++l) s += ma[i * d + l] * mb[l * d + j];
          mc[i * d + j] = s % p;
        }
      r.mul_table[a * n + b] = encode(mc);
    }
  }
  r.zero = 0;
  std::vector<int> id(d * d, 0);
  for (int i = 0; i < d; ++i) id[i * d + i] = 1;
  r.one = encode(id);
  return make_ring_from_tables(r.size, std::move(r.add_table), std::move(r.mul_table),
                               std::move(r.neg_table), r.zero, r.one,
                               "M_" + std::to_string(d) + "(Z_" + std::to_string(p) + ")");
}

}  // namespace

RingPtr make_ring_from_tables(int size, std::vector<int> add, std::vector<int> mul,
                              std::vector<int> neg, int zero, int one, std::string label) {
  auto r = std::make_shared<FiniteRing>();
  r->size = size;
  r->add_table = std::move(add);
  r->mul_table = std::move(mul);
  r->neg_table = std::move(neg);
  r->zero = zero;
  r->one = one;
  r->label = std::move(label);
  if (size <= kVerifyCap) verify_axioms(*r);
  fill_inverses(*r);
  return r;
}

RingPtr ring_make(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("kind"))
    fail("MalformedSpec", "ring spec must be an object with a kind");
  std::string kind = spec.at("kind");
  if (kind == "zmod") return make_zmod(spec.at("m").get<int>());
  if (kind == "product") {
    std::vector<RingPtr> factors;
    for (const auto& f : spec.at("factors")) factors.push_back(ring_make(f));
    return make_product(factors);
  }
  if (kind == "triangular") return make_triangular(spec.at("p").get<int>());
  if (kind == "matrix") return make_matrix_ring(spec.at("p").get<int>(), spec.at("d").get<int>());
  fail("MalformedSpec", "unknown ring kind: " + kind);
}

std::vector<int> ring_units(const FiniteRing& ring) {
  std::vector<int> us;
  for (int a = 0; a < ring.size; ++a)
    if (ring.is_unit(a)) us.push_back(a);
  return us;
}

bool RingIdeal::contains(int x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

namespace {

// Closure of a subset under addition (the subset is already closed under the
// ring multiplications that define the ideal).
std::vector<int> additive_closure(const FiniteRing& r, std::set<int> seed) {
  seed.insert(r.zero);
  std::vector<int> todo(seed.begin(), seed.end());
  while (!todo.empty()) {
    int x = todo.back();
    todo.pop_back();
    for (int y : std::vector<int>(seed.begin(), seed.end())) {
      int s = r.add(x, y);
      if (seed.insert(s).second) todo.push_back(s);
    }
    int n = r.neg(x);
    if (seed.insert(n).second) todo.push_back(n);
  }
  return {seed.begin(), seed.end()};
}

}  // namespace

RingIdeal jacobson_radical(const RingPtr& ring) {
  const FiniteRing& r = *ring;
  std::vector<int> elems;
  for (int x = 0; x < r.size; ++x) {
    bool in = true;
    for (int a = 0; a < r.size && in; ++a)
      if (!r.is_unit(r.sub(r.one, r.mul(a, x)))) in = false;
    if (in) elems.push_back(x);
  }
  RingIdeal ideal;
  ideal.ring = ring;
  ideal.elements = std::move(elems);
  ideal.side = RingIdeal::Side::two_sided;
  return ideal;
}

int nilpotence_degree(const FiniteRing& ring, const RingIdeal& ideal) {
  std::set<int> power(ideal.elements.begin(), ideal.elements.end());
  int bound = static_cast<int>(ideal.elements.size()) + 1;
  for (int n = 1; n <= bound; ++n) {
    if (power.size() == 1 && power.count(ring.zero)) return n;
    std::set<int> next;
    for (int a : power)
      for (int b : ideal.elements) next.insert(ring.mul(a, b));
    std::vector<int> closed = additive_closure(ring, next);
    std::set<int> nxt(closed.begin(), closed.end());
    if (nxt == power) fail("NotNilpotent", "ideal powers stabilized at a nonzero ideal");
    power = std::move(nxt);
  }
  fail("NotNilpotent", "nilpotence search exceeded termination bound");
}

bool ring_is_commutative(const FiniteRing& ring) {
  for (int a = 0; a < ring.size; ++a)
    for (int b = a + 1; b < ring.size; ++b)
      if (ring.mul(a, b) != ring.mul(b, a)) return false;
  return true;
}

LocalDecomposition local_decomposition(const RingPtr& ring) {
  const FiniteRing& r = *ring;
  if (!ring_is_commutative(r))
    fail("Unsupported", "local decomposition implemented for commutative rings only");
  std::vector<int> idempotents;
  for (int x = 0; x < r.size; ++x)
    if (r.mul(x, x) == x) idempotents.push_back(x);
  // primitive: nonzero e whose only idempotents in eR are 0 and e
  std::vector<int> primitive;
  for (int e : idempotents) {
    if (e == r.zero) continue;
    bool prim = true;
    for (int f : idempotents) {
      int ef = r.mul(e, f);
      if (r.mul(ef, ef) == ef && ef != r.zero && ef != e) {
        prim = false;
        break;
      }
    }
    if (prim) primitive.push_back(e);
  }
  // verify orthogonality and sum
  int sum = r.zero;
  for (size_t i = 0; i < primitive.size(); ++i) {
    sum = r.add(sum, primitive[i]);
    for (size_t j = 0; j < primitive.size(); ++j)
      if (i != j && r.mul(primitive[i], primitive[j]) != r.zero)
        fail("Internal", "primitive idempotents not orthogonal");
  }
  if (sum != r.one) fail("Internal", "primitive idempotents do not sum to one");

  LocalDecomposition dec;
  dec.ring = ring;
  for (int e : primitive) {
    LocalBlock blk;
    blk.idempotent = e;
    std::set<int> elems;
    for (int x = 0; x < r.size; ++x) elems.insert(r.mul(e, r.mul(x, e)));
    blk.elements.assign(elems.begin(), elems.end());
    for (int x : blk.elements) {
      bool unit = false;
      for (int y : blk.elements)
        if (r.mul(x, y) == e) {
          unit = true;
          break;
        }
      if (!unit) blk.max_ideal.push_back(x);
    }
    // local ring check: non-units closed under addition
    for (int a : blk.max_ideal)
      for (int b : blk.max_ideal) {
        int s = r.add(a, b);
        if (!std::binary_search(blk.max_ideal.begin(), blk.max_ideal.end(), s))
          fail("Internal", "idempotent block is not local");
      }
    dec.blocks.push_back(std::move(blk));
  }
  std::sort(dec.blocks.begin(), dec.blocks.end(),
            [](const LocalBlock& a, const LocalBlock& b) { return a.idempotent < b.idempotent; });
  return dec;
}

Matrix Matrix::identity(const FiniteRing& ring, int k) {
  Matrix m(k, k, ring.zero);
  for (int i = 0; i < k; ++i) m.at(i, i) = ring.one;
  return m;
}

Matrix mat_mul(const FiniteRing& ring, const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) fail("Internal", "matrix dimension mismatch");
  Matrix c(a.rows, b.cols, ring.zero);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      int s = ring.zero;
      for (int l = 0; l < a.cols; ++l) s = ring.add(s, ring.mul(a.at(i, l), b.at(l, j)));
      c.at(i, j) = s;
    }
  return c;
}

Matrix mat_add(const FiniteRing& ring, const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) fail("Internal", "matrix dimension mismatch");
  Matrix c(a.rows, a.cols, ring.zero);
  for (size_t i = 0; i < a.e.size(); ++i) c.e[i] = ring.add(a.e[i], b.e[i]);
  return c;
}

namespace {

int det_rec(const FiniteRing& ring, const Matrix& a, std::vector<int>& cols) {
  int k = static_cast<int>(cols.size());
  int row = a.rows - k;
  if (k == 1) return a.at(row, cols[0]);
  int det = ring.zero;
  for (int i = 0; i < k; ++i) {
    int c = cols[i];
    std::vector<int> rest;
    for (int j = 0; j < k; ++j)
      if (j != i) rest.push_back(cols[j]);
    int sub = det_rec(ring, a, rest);
    int term = ring.mul(a.at(row, c), sub);
    det = (i % 2 == 0) ? ring.add(det, term) : ring.sub(det, term);
  }
  return det;
}

}  // namespace

int mat_det(const FiniteRing& ring, const Matrix& a) {
  if (a.rows != a.cols) fail("Internal", "determinant of non-square matrix");
  std::vector<int> cols(a.cols);
  std::iota(cols.begin(), cols.end(), 0);
  return det_rec(ring, a, cols);
}

bool mat_inverse(const FiniteRing& ring, const Matrix& a, Matrix& out) {
  int k = a.rows;
  int d = mat_det(ring, a);
  if (!ring.is_unit(d)) return false;
  int dinv = ring.inverse(d);
  out = Matrix(k, k, ring.zero);
  if (k == 1) {
    out.at(0, 0) = dinv;
    return true;
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      // cofactor C_ji
      Matrix minor(k - 1, k - 1, ring.zero);
      for (int r = 0, rr = 0; r < k; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < k; ++c) {
          if (c == i) continue;
          minor.at(rr, cc) = a.at(r, c);
          ++cc;
        }
        ++rr;
      }
      int cof = mat_det(ring, minor);
      if ((i + j) % 2 == 1) cof = ring.neg(cof);
      out.at(i, j) = ring.mul(dinv, cof);
    }
  return true;
}

}  // namespace clonoid
