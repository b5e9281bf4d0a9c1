#include "clonoid/module.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace clonoid {

namespace {

constexpr int kModuleSizeCap = 4096;
constexpr int kVerifyCap = 64;
constexpr int kLatticeCap = 256;

void verify_module_axioms(const FiniteModule& m) {
  const FiniteRing& r = *m.ring;
  for (int a = 0; a < m.size; ++a) {
    if (m.add(a, m.zero) != a) fail("MalformedSpec", "module zero broken");
    if (m.add(a, m.neg(a)) != m.zero) fail("MalformedSpec", "module negation broken");
    if (m.act(r.one, a) != a) fail("MalformedSpec", "module action not unital");
  }
  for (int a = 0; a < m.size; ++a)
    for (int b = 0; b < m.size; ++b) {
      if (m.add(a, b) != m.add(b, a)) fail("MalformedSpec", "module addition not commutative");
      for (int c = 0; c < m.size; ++c)
        if (m.add(m.add(a, b), c) != m.add(a, m.add(b, c)))
          fail("MalformedSpec", "module addition not associative");
    }
  for (int s = 0; s < r.size; ++s)
    for (int a = 0; a < m.size; ++a) {
      for (int b = 0; b < m.size; ++b)
        if (m.act(s, m.add(a, b)) != m.add(m.act(s, a), m.act(s, b)))
          fail("MalformedSpec", "action not additive in the module argument");
      for (int t = 0; t < r.size; ++t) {
        if (m.act(r.add(s, t), a) != m.add(m.act(s, a), m.act(t, a)))
          fail("MalformedSpec", "action not additive in the ring argument");
        if (m.act(r.mul(s, t), a) != m.act(s, m.act(t, a)))
          fail("MalformedSpec", "action not associative over ring multiplication");
      }
    }
}

int64_t element_order(const std::vector<int>& add, int size, int zero, int x) {
  int64_t n = 1;
  int cur = x;
  while (cur != zero) {
    cur = add[cur * size + x];
    ++n;
  }
  return n;
}

// Basis of a finite abelian group given by raw tables, by splitting off a
// cyclic subgroup of maximal order and recursing on the quotient.
AbelianBasis compute_basis(int size, const std::vector<int>& add, const std::vector<int>& neg,
                           int zero) {
  AbelianBasis basis;
  if (size == 1) {
    basis.exponent = 1;
    basis.coords.assign(1, {});
    return basis;
  }
  int best = zero;
  int64_t best_ord = 1;
  for (int x = 0; x < size; ++x) {
    int64_t o = element_order(add, size, zero, x);
    if (o > best_ord) {
      best_ord = o;
      best = x;
    }
  }
  std::vector<int> gens = {best};
  std::vector<int64_t> orders = {best_ord};
  // cyclic subgroup and a discrete log table for <best>
  std::vector<int> dlog(size, -1);
  {
    int cur = zero;
    for (int64_t i = 0; i < best_ord; ++i) {
      dlog[cur] = static_cast<int>(i);
      cur = add[cur * size + best];
    }
  }
  if (best_ord < size) {
    // quotient group by <best>
    std::vector<int> proj(size, -1), reps;
    for (int x = 0; x < size; ++x) {
      if (proj[x] >= 0) continue;
      int q = static_cast<int>(reps.size());
      int cur = x;
      int least = x;
      std::vector<int> coset;
      for (int64_t i = 0; i < best_ord; ++i) {
        coset.push_back(cur);
        least = std::min(least, cur);
        cur = add[cur * size + best];
      }
      (void)least;
      for (int y : coset) proj[y] = q;
      reps.push_back(x);
    }
    int qsize = static_cast<int>(reps.size());
    std::vector<int> qadd(qsize * qsize), qneg(qsize);
    for (int a = 0; a < qsize; ++a) {
      qneg[a] = proj[neg[reps[a]]];
      for (int b = 0; b < qsize; ++b) qadd[a * qsize + b] = proj[add[reps[a] * size + reps[b]]];
    }
    AbelianBasis sub = compute_basis(qsize, qadd, qneg, proj[zero]);
    for (size_t i = 0; i < sub.gens.size(); ++i) {
      int64_t oq = sub.orders[i];
      int x = reps[sub.gens[i]];
      // adjust x so that oq * x = 0: oq*x lies in <best>
      int ox = zero;
      for (int64_t j = 0; j < oq; ++j) ox = add[ox * size + x];
      int64_t t = dlog[ox];
      if (t % oq != 0) fail("Internal", "abelian basis lift failed");
      int64_t s = t / oq;
      // x' = x - s*best
      int sb = zero;
      for (int64_t j = 0; j < s; ++j) sb = add[sb * size + best];
      int xp = add[x * size + neg[sb]];
      gens.push_back(xp);
      orders.push_back(oq);
    }
  }
  basis.gens = gens;
  basis.orders = orders;
  basis.exponent = orders.empty() ? 1 : orders[0];
  // coordinates by full enumeration of the coordinate box
  int d = static_cast<int>(gens.size());
  basis.coords.assign(size, {});
  std::vector<int> coord(d, 0);
  int64_t total = 1;
  for (int64_t o : orders) total *= o;
  if (total != size) fail("Internal", "abelian basis does not span the group");
  for (int64_t it = 0; it < total; ++it) {
    int elem = zero;
    for (int i = 0; i < d; ++i)
      for (int c = 0; c < coord[i]; ++c) elem = add[elem * size + gens[i]];
    if (!basis.coords[elem].empty() && elem != zero)
      fail("Internal", "abelian basis not independent");
    if (basis.coords[elem].empty()) basis.coords[elem] = coord;
    // odometer
    for (int i = d - 1; i >= 0; --i) {
      if (++coord[i] < orders[i]) break;
      coord[i] = 0;
    }
  }
  for (int x = 0; x < size; ++x)
    if (basis.coords[x].empty() && x != zero) fail("Internal", "abelian basis misses an element");
  if (basis.coords[zero].empty()) basis.coords[zero] = std::vector<int>(d, 0);
  return basis;
}

}  // namespace

int FiniteModule::zmul(int64_t n, int a) const {
  n %= basis.exponent;
  if (n < 0) n += basis.exponent;
  int out = zero;
  int cur = a;
  while (n > 0) {
    if (n & 1) out = add(out, cur);
    cur = add(cur, cur);
    n >>= 1;
  }
  return out;
}

ModulePtr make_module_from_tables(RingPtr ring, int size, std::vector<int> add,
                                  std::vector<int> neg, int zero, std::vector<int> action,
                                  std::string label, bool verify) {
  auto m = std::make_shared<FiniteModule>();
  m->ring = std::move(ring);
  m->size = size;
  m->add_table = std::move(add);
  m->neg_table = std::move(neg);
  m->zero = zero;
  m->action_table = std::move(action);
  m->label = std::move(label);
  if (verify && size <= kVerifyCap && m->ring->size <= kVerifyCap) verify_module_axioms(*m);
  m->basis = compute_basis(m->size, m->add_table, m->neg_table, m->zero);
  return m;
}

namespace {

ModulePtr make_regular(const RingPtr& ring) {
  int n = ring->size;
  std::vector<int> action(n * n);
  for (int r = 0; r < n; ++r)
    for (int a = 0; a < n; ++a) action[r * n + a] = ring->mul(r, a);
  return make_module_from_tables(ring, n, ring->add_table, ring->neg_table, ring->zero, action,
                                 "regular(" + ring->label + ")");
}

ModulePtr make_zd_over_zm(int d, int m) {
  if (d < 1 || m < 1 || m % d != 0) fail("MalformedSpec", "zd-over-zm requires d | m");
  RingPtr ring = ring_make(nlohmann::json{{"kind", "zmod"}, {"m", m}});
  std::vector<int> add(d * d), neg(d), action(m * d);
  for (int a = 0; a < d; ++a) {
    neg[a] = (d - a) % d;
    for (int b = 0; b < d; ++b) add[a * d + b] = (a + b) % d;
  }
  for (int r = 0; r < m; ++r)
    for (int a = 0; a < d; ++a) action[r * d + a] = (r * a) % d;
  return make_module_from_tables(ring, d, add, neg, 0, action,
                                 "Z_" + std::to_string(d) + " over Z_" + std::to_string(m));
}

ModulePtr make_module_product(const std::vector<ModulePtr>& factors) {
  if (factors.empty()) fail("MalformedSpec", "empty module product");
  const RingPtr& ring = factors[0]->ring;
  for (const auto& f : factors)
    if (f->ring != ring && !(f->ring->size == ring->size && f->ring->add_table == ring->add_table &&
                             f->ring->mul_table == ring->mul_table))
      fail("MalformedSpec", "module product factors must share a ring");
  long long size = 1;
  for (const auto& f : factors) {
    size *= f->size;
    if (size > kModuleSizeCap) fail("SizeLimit", "module size exceeds cap");
  }
  int n = static_cast<int>(size);
  int k = static_cast<int>(factors.size());
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
  std::vector<int> add(n * n), neg(n), action(ring->size * n);
  std::vector<int> ta(k), tb(k), tc(k);
  for (int a = 0; a < n; ++a) {
    decode(a, ta);
    for (int i = 0; i < k; ++i) tc[i] = factors[i]->neg(ta[i]);
    neg[a] = encode(tc);
    for (int b = 0; b < n; ++b) {
      decode(b, tb);
      for (int i = 0; i < k; ++i) tc[i] = factors[i]->add(ta[i], tb[i]);
      add[a * n + b] = encode(tc);
    }
    for (int r = 0; r < ring->size; ++r) {
      for (int i = 0; i < k; ++i) tc[i] = factors[i]->act(r, ta[i]);
      action[r * n + a] = encode(tc);
    }
  }
  std::vector<int> tz(k);
  for (int i = 0; i < k; ++i) tz[i] = factors[i]->zero;
  std::string label = "product[";
  for (int i = 0; i < k; ++i) label += (i ? "," : "") + factors[i]->label;
  label += "]";
  return make_module_from_tables(ring, n, add, neg, encode(tz), action, label);
}

ModulePtr make_abelian(const std::vector<int>& invariants) {
  if (invariants.empty()) fail("MalformedSpec", "abelian module needs invariants");
  int64_t expn = 1;
  long long size = 1;
  for (int e : invariants) {
    if (e < 1) fail("MalformedSpec", "invariants must be positive");
    expn = std::lcm<int64_t>(expn, e);
    size *= e;
    if (size > kModuleSizeCap || expn > kModuleSizeCap)
      fail("SizeLimit", "module size exceeds cap");
  }
  RingPtr ring = ring_make(nlohmann::json{{"kind", "zmod"}, {"m", static_cast<int>(expn)}});
  int n = static_cast<int>(size);
  int k = static_cast<int>(invariants.size());
  auto decode = [&](int idx, std::vector<int>& out) {
    for (int i = k - 1; i >= 0; --i) {
      out[i] = idx % invariants[i];
      idx /= invariants[i];
    }
  };
  auto encode = [&](const std::vector<int>& t) {
    int idx = 0;
    for (int i = 0; i < k; ++i) idx = idx * invariants[i] + t[i];
    return idx;
  };
  std::vector<int> add(n * n), neg(n), action(ring->size * n);
  std::vector<int> ta(k), tb(k), tc(k);
  for (int a = 0; a < n; ++a) {
    decode(a, ta);
    for (int i = 0; i < k; ++i) tc[i] = (invariants[i] - ta[i]) % invariants[i];
    neg[a] = encode(tc);
    for (int b = 0; b < n; ++b) {
      decode(b, tb);
      for (int i = 0; i < k; ++i) tc[i] = (ta[i] + tb[i]) % invariants[i];
      add[a * n + b] = encode(tc);
    }
    for (int r = 0; r < ring->size; ++r) {
      for (int i = 0; i < k; ++i) tc[i] = static_cast<int>((1LL * r * ta[i]) % invariants[i]);
      action[r * n + a] = encode(tc);
    }
  }
  std::string label = "abelian[";
  for (int i = 0; i < k; ++i) label += (i ? "," : "") + std::to_string(invariants[i]);
  label += "]";
  return make_module_from_tables(ring, n, add, neg, 0, action, label);
}

}  // namespace

ModulePtr module_make(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("kind"))
    fail("MalformedSpec", "module spec must be an object with a kind");
  std::string kind = spec.at("kind");
  if (kind == "regular") return make_regular(ring_make(spec.at("ring")));
  if (kind == "zd-over-zm") return make_zd_over_zm(spec.at("d").get<int>(), spec.at("m").get<int>());
  if (kind == "product") {
    std::vector<ModulePtr> factors;
    for (const auto& f : spec.at("factors")) factors.push_back(module_make(f));
    return make_module_product(factors);
  }
  if (kind == "abelian") return make_abelian(spec.at("invariants").get<std::vector<int>>());
  fail("MalformedSpec", "unknown module kind: " + kind);
}

bool Submodule::contains(int x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

Submodule submodule_closure(const ModulePtr& module, const std::vector<int>& gens) {
  const FiniteModule& m = *module;
  std::set<int> elems = {m.zero};
  std::vector<int> todo(gens.begin(), gens.end());
  for (int g : gens) elems.insert(g);
  while (!todo.empty()) {
    int x = todo.back();
    todo.pop_back();
    std::vector<int> snapshot(elems.begin(), elems.end());
    for (int y : snapshot) {
      int s = m.add(x, y);
      if (elems.insert(s).second) todo.push_back(s);
    }
    int n = m.neg(x);
    if (elems.insert(n).second) todo.push_back(n);
    for (int r = 0; r < m.ring->size; ++r) {
      int s = m.act(r, x);
      if (elems.insert(s).second) todo.push_back(s);
    }
  }
  return Submodule{module, {elems.begin(), elems.end()}};
}

std::vector<Submodule> submodules(const ModulePtr& module) {
  const FiniteModule& m = *module;
  if (m.size > kLatticeCap) fail("SizeLimit", "submodule enumeration bound exceeded");
  std::set<std::vector<int>> found;
  found.insert({m.zero});
  std::vector<std::vector<int>> cyclic;
  for (int a = 0; a < m.size; ++a) {
    Submodule c = submodule_closure(module, {a});
    if (found.insert(c.elements).second) cyclic.push_back(c.elements);
  }
  // close under sums of cyclic submodules
  std::vector<std::vector<int>> todo(found.begin(), found.end());
  while (!todo.empty()) {
    std::vector<int> cur = std::move(todo.back());
    todo.pop_back();
    for (const auto& c : cyclic) {
      std::set<int> sum;
      for (int x : cur)
        for (int y : c) sum.insert(m.add(x, y));
      std::vector<int> v(sum.begin(), sum.end());
      if (found.insert(v).second) todo.push_back(v);
    }
  }
  std::vector<Submodule> out;
  for (const auto& v : found) out.push_back(Submodule{module, v});
  std::sort(out.begin(), out.end(), [](const Submodule& a, const Submodule& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });
  return out;
}

namespace {

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> sum_sets(const FiniteModule& m, const std::vector<int>& a,
                          const std::vector<int>& b) {
  std::set<int> s;
  for (int x : a)
    for (int y : b) s.insert(m.add(x, y));
  return {s.begin(), s.end()};
}

}  // namespace

DistributivityCheck is_distributive(const ModulePtr& module) {
  DistributivityCheck res;
  std::vector<Submodule> subs = submodules(module);
  const FiniteModule& m = *module;
  for (const Submodule& x : subs)
    for (const Submodule& y : subs)
      for (const Submodule& z : subs) {
        std::vector<int> lhs = intersect_sorted(x.elements, sum_sets(m, y.elements, z.elements));
        std::vector<int> rhs = sum_sets(m, intersect_sorted(x.elements, y.elements),
                                        intersect_sorted(x.elements, z.elements));
        if (lhs != rhs) {
          res.distributive = false;
          res.witness = {x, y, z};
          return res;
        }
      }
  return res;
}

Submodule radical_submodule(const ModulePtr& module) {
  RingIdeal j = jacobson_radical(module->ring);
  std::vector<int> gens;
  for (int jj : j.elements)
    for (int a = 0; a < module->size; ++a) gens.push_back(module->act(jj, a));
  return submodule_closure(module, gens);
}

int min_generators(const ModulePtr& module) {
  const FiniteModule& m = *module;
  if (m.size == 1) return 0;
  std::vector<int> elems(m.size);
  std::iota(elems.begin(), elems.end(), 0);
  for (int g = 1; g <= m.size; ++g) {
    std::vector<int> idx(g);
    // combinations of g elements
    std::function<bool(int, int)> rec = [&](int pos, int start) -> bool {
      if (pos == g)
        return static_cast<int>(submodule_closure(module, idx).elements.size()) == m.size;
      for (int x = start; x < m.size; ++x) {
        idx[pos] = x;
        if (rec(pos + 1, x + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return g;
  }
  fail("Internal", "module not generated by its own elements");
}

Quotient quotient_module(const ModulePtr& module, const Submodule& sub) {
  const FiniteModule& m = *module;
  std::vector<int> proj(m.size, -1);
  std::vector<int> reps;
  for (int x = 0; x < m.size; ++x) {
    if (proj[x] >= 0) continue;
    // coset of x; least element is the representative
    std::vector<int> coset;
    int least = x;
    for (int s : sub.elements) {
      int y = m.add(x, s);
      coset.push_back(y);
      least = std::min(least, y);
    }
    if (least != x) continue;  // will be handled when scanning its least element
    int q = static_cast<int>(reps.size());
    for (int y : coset) proj[y] = q;
    reps.push_back(x);
  }
  int n = static_cast<int>(reps.size());
  std::vector<int> add(n * n), neg(n), action(m.ring->size * n);
  for (int a = 0; a < n; ++a) {
    neg[a] = proj[m.neg(reps[a])];
    for (int b = 0; b < n; ++b) add[a * n + b] = proj[m.add(reps[a], reps[b])];
    for (int r = 0; r < m.ring->size; ++r) action[r * n + a] = proj[m.act(r, reps[a])];
  }
  Quotient q;
  q.module = make_module_from_tables(m.ring, n, add, neg, proj[m.zero], action,
                                     m.label + "/[" + std::to_string(sub.elements.size()) + "]",
                                     /*verify=*/false);
  q.projection = proj;
  q.reps = reps;
  return q;
}

SubmoduleModule submodule_as_module(const ModulePtr& module, const Submodule& sub) {
  const FiniteModule& m = *module;
  SubmoduleModule out;
  out.embed = sub.elements;
  out.index_in.assign(m.size, -1);
  int n = static_cast<int>(sub.elements.size());
  for (int i = 0; i < n; ++i) out.index_in[sub.elements[i]] = i;
  std::vector<int> add(n * n), neg(n), action(m.ring->size * n);
  for (int a = 0; a < n; ++a) {
    int pa = sub.elements[a];
    neg[a] = out.index_in[m.neg(pa)];
    if (neg[a] < 0) fail("Internal", "submodule not closed under negation");
    for (int b = 0; b < n; ++b) {
      add[a * n + b] = out.index_in[m.add(pa, sub.elements[b])];
      if (add[a * n + b] < 0) fail("Internal", "submodule not closed under addition");
    }
    for (int r = 0; r < m.ring->size; ++r) {
      action[r * n + a] = out.index_in[m.act(r, pa)];
      if (action[r * n + a] < 0) fail("Internal", "submodule not closed under the action");
    }
  }
  out.module = make_module_from_tables(m.ring, n, add, neg, out.index_in[m.zero], action,
                                       m.label + "|sub" + std::to_string(n), /*verify=*/false);
  return out;
}

int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void tuple_decode(int64_t idx, int base, int k, std::vector<int>& out) {
  out.resize(k);
  for (int i = 0; i < k; ++i) {
    out[i] = static_cast<int>(idx % base);
    idx /= base;
  }
}

int64_t tuple_encode(const std::vector<int>& t, int base) {
  int64_t idx = 0;
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) idx = idx * base + t[i];
  return idx;
}

ModulePtr power_module(const ModulePtr& module, int k) {
  const FiniteModule& m = *module;
  int64_t size = ipow(m.size, k);
  if (size > kModuleSizeCap) fail("SizeLimit", "power module too large to materialize");
  int n = static_cast<int>(size);
  std::vector<int> add(n * n), neg(n), action(m.ring->size * n);
  std::vector<int> ta(k), tb(k), tc(k);
  for (int a = 0; a < n; ++a) {
    tuple_decode(a, m.size, k, ta);
    for (int i = 0; i < k; ++i) tc[i] = m.neg(ta[i]);
    neg[a] = static_cast<int>(tuple_encode(tc, m.size));
    for (int b = 0; b < n; ++b) {
      tuple_decode(b, m.size, k, tb);
      for (int i = 0; i < k; ++i) tc[i] = m.add(ta[i], tb[i]);
      add[a * n + b] = static_cast<int>(tuple_encode(tc, m.size));
    }
    for (int r = 0; r < m.ring->size; ++r) {
      for (int i = 0; i < k; ++i) tc[i] = m.act(r, ta[i]);
      action[r * n + a] = static_cast<int>(tuple_encode(tc, m.size));
    }
  }
  return make_module_from_tables(m.ring, n, add, neg, 0, action,
                                 m.label + "^" + std::to_string(k), /*verify=*/false);
}

int64_t matrix_act_tuple(const FiniteModule& module, const Matrix& m, int64_t x) {
  std::vector<int> in, out(m.rows, module.zero);
  tuple_decode(x, module.size, m.cols, in);
  for (int i = 0; i < m.rows; ++i) {
    int s = module.zero;
    for (int j = 0; j < m.cols; ++j) s = module.add(s, module.act(m.at(i, j), in[j]));
    out[i] = s;
  }
  return tuple_encode(out, module.size);
}

namespace {

// Image of a tuple set under componentwise projection A -> A/JA, with the
// per-idempotent-block pieces used for the semisimple-quotient analysis.
struct BarSetup {
  Quotient bar;                       // A/JA with projection
  LocalDecomposition dec;             // of the (commutative) ring
  std::vector<std::vector<int>> eQ;   // block i -> sorted elements of e_i*(A/JA)
};

BarSetup bar_setup(const ModulePtr& module) {
  BarSetup s{quotient_module(module, radical_submodule(module)), local_decomposition(module->ring), {}};
  const FiniteModule& q = *s.bar.module;
  for (const LocalBlock& blk : s.dec.blocks) {
    std::set<int> part;
    for (int x = 0; x < q.size; ++x) part.insert(q.act(blk.idempotent, x));
    s.eQ.push_back({part.begin(), part.end()});
  }
  return s;
}

std::set<std::vector<int>> project_tuples(const BarSetup& s, int k, int asize,
                                          const std::vector<int>& tuples) {
  std::set<std::vector<int>> out;
  std::vector<int> t;
  for (int x : tuples) {
    tuple_decode(x, asize, k, t);
    std::vector<int> bt(k);
    for (int i = 0; i < k; ++i) bt[i] = s.bar.projection[t[i]];
    out.insert(bt);
  }
  return out;
}

}  // namespace

Matrix find_transitive_matrix(const ModulePtr& module, int k, const Submodule& m_sub) {
  const FiniteModule& a = *module;
  const FiniteRing& ring = *a.ring;
  BarSetup setup = bar_setup(module);
  const FiniteModule& q = *setup.bar.module;

  // (JA)^k <= M
  Submodule ja = radical_submodule(module);
  {
    std::vector<int> t(k);
    std::function<bool(int)> rec = [&](int pos) -> bool {
      if (pos == k) return m_sub.contains(static_cast<int>(tuple_encode(t, a.size)));
      for (int x : ja.elements) {
        t[pos] = x;
        if (!rec(pos + 1)) return false;
      }
      return true;
    };
    if (!rec(0)) fail("HypothesisViolated", "(JA)^k is not contained in M");
  }

  std::set<std::vector<int>> mbar = project_tuples(setup, k, a.size, m_sub.elements);

  Matrix t_mat(k, k, ring.zero);
  for (size_t bi = 0; bi < setup.dec.blocks.size(); ++bi) {
    const LocalBlock& blk = setup.dec.blocks[bi];
    int e = blk.idempotent;
    // block part of Mbar: componentwise action by e
    std::set<std::vector<int>> part;
    for (const auto& bt : mbar) {
      std::vector<int> p(k);
      for (int i = 0; i < k; ++i) p[i] = q.act(e, bt[i]);
      part.insert(p);
    }
    size_t block_dim = setup.eQ[bi].size();  // |e_i * Abar|, a K_i-line or trivial
    Matrix w(k, k, ring.zero);
    if (part.size() <= 1) {
      for (int i = 0; i < k; ++i) w.at(i, i) = e;
    } else {
      if (block_dim <= 1 || part.size() != block_dim)
        fail("HypothesisViolated", "M/(JA)^k does not embed into A/JA");
      // pick a nonzero vector spanning the block line
      std::vector<int> v;
      for (const auto& p : part) {
        bool nz = false;
        for (int x : p) nz |= (x != q.zero);
        if (nz) {
          v = p;
          break;
        }
      }
      int j0 = 0;
      while (v[j0] == q.zero) ++j0;
      // scalars c_l in the block with c_l * v_j0 = v_l
      std::vector<int> c(k, ring.zero);
      for (int l = 0; l < k; ++l) {
        if (l == j0) continue;
        bool ok = false;
        for (int s : blk.elements)
          if (q.act(s, v[j0]) == v[l]) {
            c[l] = s;
            ok = true;
            break;
          }
        if (!ok) fail("HypothesisViolated", "block part of M is not a line");
      }
      // row 1 moves coordinate j0 up; remaining coordinates are cleared
      w.at(0, j0) = e;
      int row = 1;
      for (int l = 0; l < k; ++l) {
        if (l == j0) continue;
        w.at(row, l) = e;
        w.at(row, j0) = ring.neg(c[l]);
        ++row;
      }
    }
    t_mat = mat_add(ring, t_mat, w);
  }

  Matrix inv;
  if (!mat_inverse(ring, t_mat, inv))
    fail("Internal", "transitive matrix candidate is not invertible");

  // certify: T*M <= A x (JA)^{k-1}
  std::vector<int> t;
  for (int x : m_sub.elements) {
    int64_t y = matrix_act_tuple(a, t_mat, x);
    tuple_decode(y, a.size, k, t);
    for (int i = 1; i < k; ++i)
      if (!ja.contains(t[i])) fail("Internal", "transitive matrix image check failed");
  }
  return t_mat;
}

CoverComponents cover_components(const ModulePtr& module, int k) {
  const FiniteModule& a = *module;
  CoverComponents out;
  out.power = power_module(module, k);
  BarSetup setup = bar_setup(module);
  const FiniteModule& q = *setup.bar.module;
  Submodule ja = radical_submodule(module);

  // block sizes of Abar itself
  std::vector<size_t> abar_sizes;
  for (const auto& part : setup.eQ) abar_sizes.push_back(part.size());

  std::vector<Submodule> all = submodules(out.power);
  for (const Submodule& n_sub : all) {
    // (JA)^k <= N
    bool contains_jak = true;
    {
      std::vector<int> t(k);
      std::function<bool(int)> rec = [&](int pos) -> bool {
        if (pos == k) return n_sub.contains(static_cast<int>(tuple_encode(t, a.size)));
        for (int x : ja.elements) {
          t[pos] = x;
          if (!rec(pos + 1)) return false;
        }
        return true;
      };
      contains_jak = rec(0);
    }
    if (!contains_jak) continue;
    std::set<std::vector<int>> nbar = project_tuples(setup, k, a.size, n_sub.elements);
    if (nbar.size() != static_cast<size_t>(q.size)) continue;
    bool iso = true;
    for (size_t bi = 0; bi < setup.dec.blocks.size() && iso; ++bi) {
      int e = setup.dec.blocks[bi].idempotent;
      std::set<std::vector<int>> part;
      for (const auto& bt : nbar) {
        std::vector<int> p(k);
        for (int i = 0; i < k; ++i) p[i] = q.act(e, bt[i]);
        part.insert(p);
      }
      if (part.size() != abar_sizes[bi]) iso = false;
    }
    if (iso) out.V.push_back(n_sub);
  }

  std::vector<Submodule> proper;
  for (const Submodule& l : submodules(module))
    if (static_cast<int>(l.elements.size()) < a.size) proper.push_back(l);
  out.proper = proper;

  // certify the cover properties
  // N0 = A x (JA)^{k-1}
  Submodule n0{out.power, {}};
  {
    std::vector<int> all_elems(a.size);
    std::iota(all_elems.begin(), all_elems.end(), 0);
    std::set<int> n0set;
    std::vector<int> t(k);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == k) {
        n0set.insert(static_cast<int>(tuple_encode(t, a.size)));
        return;
      }
      for (int x : (pos == 0 ? all_elems : ja.elements)) {
        t[pos] = x;
        rec(pos + 1);
      }
    };
    rec(0);
    n0.elements.assign(n0set.begin(), n0set.end());
  }
  for (const Submodule& n_sub : out.V) {
    Matrix t_mat = find_transitive_matrix(module, k, n_sub);
    std::set<int> image;
    for (int x : n_sub.elements) image.insert(static_cast<int>(matrix_act_tuple(a, t_mat, x)));
    if (std::vector<int>(image.begin(), image.end()) != n0.elements)
      fail("Internal", "GL-transitivity certification failed");
  }
  for (size_t i = 0; i < out.V.size(); ++i)
    for (size_t j = i + 1; j < out.V.size(); ++j) {
      std::vector<int> cap = intersect_sorted(out.V[i].elements, out.V[j].elements);
      bool inside = false;
      std::vector<int> t(k);
      for (const Submodule& l : proper) {
        bool all_in = true;
        for (int x : cap) {
          tuple_decode(x, a.size, k, t);
          for (int i2 = 0; i2 < k && all_in; ++i2) all_in = l.contains(t[i2]);
          if (!all_in) break;
        }
        if (all_in) {
          inside = true;
          break;
        }
      }
      if (!inside) fail("Internal", "pairwise intersection outside every proper power");
    }
  {
    std::vector<bool> covered(out.power->size, false);
    for (const Submodule& n_sub : out.V)
      for (int x : n_sub.elements) covered[x] = true;
    std::vector<int> t(k);
    for (const Submodule& l : proper)
      for (int x = 0; x < out.power->size; ++x) {
        if (covered[x]) continue;
        tuple_decode(x, a.size, k, t);
        bool in = true;
        for (int i = 0; i < k && in; ++i) in = l.contains(t[i]);
        if (in) covered[x] = true;
      }
    for (int x = 0; x < out.power->size; ++x)
      if (!covered[x]) fail("Internal", "cover equation fails");
  }
  return out;
}

bool same_module_structure(const FiniteModule& a, const FiniteModule& b) {
  return a.size == b.size && a.zero == b.zero && a.add_table == b.add_table &&
         a.action_table == b.action_table && a.ring->size == b.ring->size &&
         a.ring->add_table == b.ring->add_table && a.ring->mul_table == b.ring->mul_table;
}

}  // namespace clonoid
