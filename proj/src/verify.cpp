#include "clonoid/verify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

#include "clonoid/error.hpp"

namespace clonoid {

namespace {

using Clock = std::chrono::steady_clock;

int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

ModulePtr abelian_codomain(int64_t e) {
  return module_make({{"kind", "abelian"}, {"invariants", {static_cast<int>(e)}}});
}

int first_nonzero(const FiniteModule& m) {
  for (int x = 0; x < m.size; ++x)
    if (x != m.zero) return x;
  fail("HypothesisViolated", "codomain must be nontrivial");
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<int>> diagonal_relation(const FiniteModule& m) {
  std::vector<std::vector<int>> rel;
  for (int x = 0; x < m.size; ++x) rel.push_back({x, x});
  return rel;
}

}  // namespace

nlohmann::json VerificationReport::to_json() const {
  return {{"command", command}, {"instance", instance}, {"status", status},
          {"witness", witness}, {"elapsed_ms", elapsed_ms}, {"seed", seed}};
}

VerificationReport verify_example_binary(int64_t e) {
  auto start = Clock::now();
  if (e % 2 == 0) fail("EvenExponent", "2 must be invertible modulo the exponent");
  VerificationReport rep;
  rep.command = "verify-example";
  rep.instance = {{"exponent", e}};
  ModulePtr domain = module_make({{"kind", "regular"}, {"ring", {{"kind", "zmod"}, {"m", 2}}}});
  ModulePtr codomain = abelian_codomain(e);
  const RingPtr& ring = domain->ring;
  int64_t inv2 = mod_inverse(2 % e, e);
  MinorOperator op{ring, 2, 0, e, {}};
  auto term = [&](int a, int b, int c, int d, int64_t coeff) {
    Matrix m(2, 2, 0);
    m.e = {a, b, c, d};
    auto it = op.support.find(m.e);
    int64_t cur = it == op.support.end() ? 0 : it->second;
    cur = ((cur + coeff) % e + e) % e;
    if (cur == 0) {
      if (it != op.support.end()) op.support.erase(it);
    } else {
      op.support[m.e] = cur;
    }
  };
  term(0, 0, 0, 0, 1 - 3 * inv2);  // the three f(0,0) corrections and the constant
  term(1, 0, 0, 0, inv2);          // f(x1, 0)
  term(1, 1, 0, 0, inv2);          // f(x1+x2, 0)
  term(0, 1, 0, 0, -inv2);         // f(x2, 0)
  term(0, 0, 0, 1, inv2);          // f(0, x2)
  term(0, 0, 1, 1, inv2);          // f(0, x1+x2)
  term(0, 0, 1, 0, -inv2);         // f(0, x1)
  term(1, 0, 1, 0, inv2);          // f(x1, x1)
  term(0, 1, 0, 1, inv2);          // f(x2, x2)
  term(1, 1, 1, 1, -inv2);         // f(x1+x2, x1+x2)
  op.rank_bound = op_max_inner_rank(op);

  std::vector<FuncTable> tests;
  if (e == 3) {
    FuncTable f = func_zero(domain, codomain, 2);
    while (true) {
      tests.push_back(f);
      int i = 3;
      while (i >= 0 && ++f.values[i] == codomain->size) f.values[i--] = 0;
      if (i < 0) break;
    }
  } else {
    tests = delta_basis(domain, codomain, 2);
  }
  for (const FuncTable& f : tests)
    if (!func_equal(op_apply(op, f), f)) {
      rep.status = "refuted";
      rep.witness = {{"values", f.values}};
      rep.elapsed_ms = ms_since(start);
      return rep;
    }
  rep.status = "verified";
  rep.witness = {{"functions_checked", tests.size()}, {"support_rank", op.rank_bound}};
  rep.elapsed_ms = ms_since(start);
  return rep;
}

VerificationReport ascending_chain(const ModulePtr& domain, const ModulePtr& codomain, int kmax) {
  auto start = Clock::now();
  if (kmax < 2 || kmax > 4) fail("MalformedSpec", "chain bound must be between 2 and 4");
  int p = 0;
  for (int c = 2; c <= domain->size; ++c)
    if (domain->size % c == 0 && codomain->size % c == 0) {
      p = c;
      break;
    }
  if (p == 0) fail("NoCommonPrime", "chain needs a common prime of the module orders");

  // quotient of the domain of order p and submodule of the codomain of order p
  const Submodule* kernel = nullptr;
  std::vector<Submodule> dsubs = submodules(domain);
  for (const Submodule& s : dsubs)
    if (static_cast<int>(s.elements.size()) * p == domain->size) {
      kernel = &s;
      break;
    }
  if (!kernel) fail("HypothesisViolated", "domain has no quotient of the common prime order");
  Quotient q = quotient_module(domain, *kernel);
  const Submodule* target = nullptr;
  std::vector<Submodule> csubs = submodules(codomain);
  for (const Submodule& s : csubs)
    if (static_cast<int>(s.elements.size()) == p) {
      target = &s;
      break;
    }
  if (!target) fail("HypothesisViolated", "codomain has no submodule of the common prime order");

  // discrete coordinates identifying the quotient with Z_p
  int g = first_nonzero(*q.module);
  std::vector<int> dlog(q.module->size, -1);
  for (int i = 0; i < p; ++i) dlog[q.module->zmul(i, g)] = i;
  // embed Z_p as multiples of a generator of the target submodule
  int h = codomain->zero;
  for (int x : target->elements)
    if (x != codomain->zero) {
      h = x;
      break;
    }
  std::vector<int> embed(p);
  for (int v = 0; v < p; ++v) embed[v] = codomain->zmul(v, h);

  auto product_function = [&](int k) {
    FuncTable f{domain, codomain, k, {}};
    int64_t pts = ipow(domain->size, k);
    f.values.resize(pts);
    std::vector<int> t(k);
    for (int64_t x = 0; x < pts; ++x) {
      tuple_decode(x, domain->size, k, t);
      int64_t prod = 1;
      for (int i = 0; i < k; ++i) prod = (prod * dlog[q.projection[t[i]]]) % p;
      f.values[x] = embed[prod];
    }
    return f;
  };

  std::vector<FuncTable> homs = hom_group(domain, codomain);
  std::vector<FuncTable> chain_fns;
  VerificationReport rep;
  rep.command = "chain";
  rep.instance = {{"domain", domain->label}, {"codomain", codomain->label},
                  {"kmax", kmax}, {"prime", p}};
  std::vector<int> strict_at;
  for (int k = 2; k <= kmax; ++k) {
    FuncTable fk = product_function(k);
    std::vector<FuncTable> gens = homs;
    for (const FuncTable& f : chain_fns) gens.push_back(f);
    Clonoid c = clonoid_generate(domain, codomain, k, gens);
    if (clonoid_contains(c, fk)) {
      rep.status = "refuted";
      rep.witness = {{"arity", k}, {"note", "product function already generated"}};
      rep.elapsed_ms = ms_since(start);
      return rep;
    }
    strict_at.push_back(k);
    chain_fns.push_back(fk);
  }
  rep.status = "verified";
  rep.witness = {{"strict_at", strict_at}};
  rep.elapsed_ms = ms_since(start);
  return rep;
}

VerificationReport separation_noncyclic(const ModulePtr& domain, const ModulePtr& codomain,
                                        int n) {
  auto start = Clock::now();
  VerificationReport rep;
  rep.command = "separate-noncyclic";
  rep.instance = {{"domain", domain->label}, {"codomain", codomain->label}, {"n", n}};

  const Submodule* u_sub = nullptr;
  bool any_above = false;
  std::vector<Submodule> subs = submodules(domain);
  for (const Submodule& s : subs) {
    int g = min_generators(submodule_as_module(domain, s).module);
    if (g > n) any_above = true;
    if (g == n + 1 && !u_sub) u_sub = &s;
  }
  if (!u_sub) {
    if (any_above) fail("HypothesisViolated", "no submodule needs exactly n+1 generators");
    fail("HypothesisViolated", "every submodule is generated by n elements");
  }
  const std::vector<int>& u = u_sub->elements;
  int usz = static_cast<int>(u.size());
  std::vector<int> u_index(domain->size, -1);
  for (int i = 0; i < usz; ++i) u_index[u[i]] = i;

  // distinct generated pair subalgebras over all a,b in U^n
  std::set<std::vector<std::vector<int>>> sigmas;
  {
    std::vector<int> pa(n), pb(n);
    int64_t total = ipow(usz, n);
    for (int64_t ia = 0; ia < total; ++ia) {
      tuple_decode(ia, usz, n, pa);
      for (int64_t ib = 0; ib < total; ++ib) {
        tuple_decode(ib, usz, n, pb);
        std::vector<std::vector<int>> gens;
        for (int i = 0; i < n; ++i) gens.push_back({u[pa[i]], u[pb[i]]});
        sigmas.insert(subpower_generate(domain, gens));
      }
    }
  }

  // equality of the low-arity layers: the pair relations must connect all of U^k
  for (int k = 1; k <= n; ++k) {
    int64_t pts = ipow(usz, k);
    Dsu dsu(static_cast<int>(pts));
    std::vector<int> pick(k, 0);
    for (const auto& sigma : sigmas) {
      int nrel = static_cast<int>(sigma.size());
      std::fill(pick.begin(), pick.end(), 0);
      while (true) {
        std::vector<int> xs(k), ys(k);
        for (int i = 0; i < k; ++i) {
          xs[i] = u_index[sigma[pick[i]][0]];
          ys[i] = u_index[sigma[pick[i]][1]];
        }
        dsu.unite(static_cast<int>(tuple_encode(xs, usz)), static_cast<int>(tuple_encode(ys, usz)));
        int i = k - 1;
        while (i >= 0 && ++pick[i] == nrel) pick[i--] = 0;
        if (i < 0) break;
      }
    }
    int root = dsu.find(0);
    for (int64_t x = 1; x < pts; ++x)
      if (dsu.find(static_cast<int>(x)) != root) {
        rep.status = "refuted";
        rep.witness = {{"arity", k}, {"disconnected_tuple", x}};
        rep.elapsed_ms = ms_since(start);
        return rep;
      }
  }

  // witness at arity n+1: indicator of generating tuples of U
  int one_b = first_nonzero(*codomain);
  FuncTable g{domain, codomain, n + 1, {}};
  int64_t pts = ipow(domain->size, n + 1);
  g.values.resize(pts, codomain->zero);
  std::vector<int> t(n + 1);
  for (int64_t x = 0; x < pts; ++x) {
    tuple_decode(x, domain->size, n + 1, t);
    if (submodule_closure(domain, t).elements == u) g.values[x] = one_b;
  }
  // g must respect every pair subalgebra but fail constancy on U
  std::vector<std::vector<int>> diag = diagonal_relation(*codomain);
  for (const auto& sigma : sigmas)
    if (pol_check(g, RelationalPair{sigma, diag})) {
      rep.status = "refuted";
      rep.witness = {{"note", "witness not compatible with a pair subalgebra"}};
      rep.elapsed_ms = ms_since(start);
      return rep;
    }
  std::vector<std::vector<int>> u_pairs;
  for (int x : u)
    for (int y : u) u_pairs.push_back({x, y});
  auto violation = pol_check(g, RelationalPair{u_pairs, diag});
  if (!violation) {
    rep.status = "refuted";
    rep.witness = {{"note", "witness is constant on the submodule"}};
    rep.elapsed_ms = ms_since(start);
    return rep;
  }
  rep.status = "verified";
  rep.witness = {{"submodule_size", usz}, {"witness_arity", n + 1},
                 {"witness_values", g.values}};
  rep.elapsed_ms = ms_since(start);
  return rep;
}

VerificationReport separation_jacobson(const RingPtr& ring, const ModulePtr& codomain) {
  auto start = Clock::now();
  VerificationReport rep;
  rep.command = "separate-jacobson";
  rep.instance = {{"ring", ring->label}, {"codomain", codomain->label}};

  RingIdeal j = jacobson_radical(ring);
  if (j.elements == std::vector<int>{ring->zero})
    fail("RadicalZero", "separation needs a nonzero radical");
  int m = nilpotence_degree(*ring, j);
  // I = J^{m-1} squares to zero
  std::vector<int> ideal = j.elements;
  for (int step = 2; step < m; ++step) {
    std::set<int> prod = {ring->zero};
    std::vector<int> todo;
    for (int x : ideal)
      for (int y : j.elements)
        if (prod.insert(ring->mul(x, y)).second) todo.push_back(ring->mul(x, y));
    while (!todo.empty()) {
      int x = todo.back();
      todo.pop_back();
      std::vector<int> snap(prod.begin(), prod.end());
      for (int y : snap)
        if (prod.insert(ring->add(x, y)).second) todo.push_back(ring->add(x, y));
    }
    ideal.assign(prod.begin(), prod.end());
  }

  ModulePtr domain = make_module_from_tables(
      ring, ring->size, ring->add_table, ring->neg_table, ring->zero,
      [&] {
        std::vector<int> action(ring->size * ring->size);
        for (int r = 0; r < ring->size; ++r)
          for (int a = 0; a < ring->size; ++a) action[r * ring->size + a] = ring->mul(r, a);
        return action;
      }(),
      "regular(" + ring->label + ")");

  std::set<int> iset(ideal.begin(), ideal.end());
  std::vector<std::vector<int>> eq_i;
  for (int x = 0; x < domain->size; ++x)
    for (int y = 0; y < domain->size; ++y)
      if (iset.count(domain->sub(x, y))) eq_i.push_back({x, y});
  std::vector<std::vector<std::vector<int>>> c_rels = {eq_i}, d_rels;
  for (int a : ideal) {
    int target = ring->add(ring->one, a);
    d_rels.push_back(subpower_generate(domain, {{ring->one, target}}));
  }
  for (const Submodule& s : submodules(domain)) {
    if (static_cast<int>(s.elements.size()) == domain->size) continue;
    std::vector<std::vector<int>> pairs;
    for (int x : s.elements)
      for (int y : s.elements) pairs.push_back({x, y});
    c_rels.push_back(pairs);
    d_rels.push_back(pairs);
  }
  std::vector<std::vector<int>> diag = diagonal_relation(*codomain);
  auto in_class = [&](const FuncTable& f, const std::vector<std::vector<std::vector<int>>>& rels) {
    for (const auto& rel : rels)
      if (pol_check(f, RelationalPair{rel, diag})) return false;
    return true;
  };

  // exhaustive unary comparison
  {
    FuncTable f = func_zero(domain, codomain, 1);
    while (true) {
      if (in_class(f, c_rels) != in_class(f, d_rels)) {
        rep.status = "refuted";
        rep.witness = {{"arity", 1}, {"values", f.values}};
        rep.elapsed_ms = ms_since(start);
        return rep;
      }
      int i = domain->size - 1;
      while (i >= 0 && ++f.values[i] == codomain->size) f.values[i--] = 0;
      if (i < 0) break;
    }
  }

  // binary witness: indicator of x = y congruent to 1 modulo I
  int one_b = first_nonzero(*codomain);
  FuncTable g = func_zero(domain, codomain, 2);
  std::vector<int> t(2);
  for (int64_t x = 0; x < g.points(); ++x) {
    tuple_decode(x, domain->size, 2, t);
    if (t[0] == t[1] && iset.count(domain->sub(t[0], ring->one))) g.values[x] = one_b;
  }
  if (!in_class(g, d_rels) || in_class(g, c_rels)) {
    rep.status = "refuted";
    rep.witness = {{"note", "binary witness failed the class checks"}};
    rep.elapsed_ms = ms_since(start);
    return rep;
  }
  rep.status = "verified";
  rep.witness = {{"ideal", ideal}, {"witness_values", g.values}};
  rep.elapsed_ms = ms_since(start);
  return rep;
}

VerificationReport verify_affine_malcev(int m, int64_t e, int k) {
  auto start = Clock::now();
  if (std::gcd<int64_t>(m, e) != 1) fail("GcdViolation", "modulus must be invertible mod E");
  VerificationReport rep;
  rep.command = "verify-malcev";
  rep.instance = {{"m", m}, {"exponent", e}, {"arity", k}};
  ModulePtr domain = module_make({{"kind", "regular"}, {"ring", {{"kind", "zmod"}, {"m", m}}}});
  ModulePtr codomain = abelian_codomain(e);
  int n = nilpotence_degree(*domain->ring, jacobson_radical(domain->ring));
  CoeffSolution sol = solve_coeffs_linear(domain, k, n, e);
  if (!sol.feasible) {
    rep.status = "infeasible";
    rep.witness = {{"note", "interpolation system has no solution"}};
    rep.elapsed_ms = ms_since(start);
    return rep;
  }
  // check f(x,z) = sum_rho s(rho) f(rho*(x-z*1)+z*1, z) on the full delta basis
  std::vector<FuncTable> basis = delta_basis(domain, codomain, k + 1);
  int64_t pts_x = ipow(m, k);
  std::vector<int> xt(k), shifted(k), full(k + 1);
  for (const FuncTable& f : basis)
    for (int z = 0; z < m; ++z)
      for (int64_t x = 0; x < pts_x; ++x) {
        tuple_decode(x, m, k, xt);
        for (int i = 0; i < k; ++i) full[i] = xt[i];
        full[k] = z;
        int lhs = f.eval(tuple_encode(full, m));
        int rhs = codomain->zero;
        for (const auto& [rho, c] : sol.coeffs) {
          for (int i = 0; i < k; ++i) shifted[i] = domain->sub(xt[i], z);
          int64_t y = matrix_act_tuple(*domain, rho, tuple_encode(shifted, m));
          tuple_decode(y, m, k, shifted);
          for (int i = 0; i < k; ++i) full[i] = domain->add(shifted[i], z);
          full[k] = z;
          rhs = codomain->add(rhs, codomain->zmul(c, f.eval(tuple_encode(full, m))));
        }
        if (lhs != rhs) {
          rep.status = "refuted";
          rep.witness = {{"x", xt}, {"z", z}, {"values", f.values}};
          rep.elapsed_ms = ms_since(start);
          return rep;
        }
      }
  rep.status = "verified";
  rep.witness = {{"rank_bound", sol.rank_bound}, {"terms", sol.coeffs.size()},
                 {"basis_functions", basis.size()}};
  rep.elapsed_ms = ms_since(start);
  return rep;
}

VerificationReport commutative_spotcheck(const RingPtr& ring, const ModulePtr& codomain) {
  auto start = Clock::now();
  VerificationReport rep;
  rep.command = "spotcheck-commutative";
  rep.instance = {{"ring", ring->label}, {"codomain", codomain->label}};
  if (!ring_is_commutative(*ring)) fail("Unsupported", "spot check expects a commutative ring");
  std::vector<int> action(ring->size * ring->size);
  for (int r = 0; r < ring->size; ++r)
    for (int a = 0; a < ring->size; ++a) action[r * ring->size + a] = ring->mul(r, a);
  ModulePtr domain = make_module_from_tables(ring, ring->size, ring->add_table, ring->neg_table,
                                             ring->zero, action, "regular(" + ring->label + ")");
  bool coprime = std::gcd(domain->size, codomain->size) == 1;
  bool semisimple = jacobson_radical(ring).elements == std::vector<int>{ring->zero};
  bool structural = coprime && semisimple;

  // arity-3 scans are limited to small domains; larger rings stop at arity 2
  int max_k = domain->size <= 4 ? 3 : 2;
  bool operational = true;
  nlohmann::json counterexample = nullptr;
  for (int k = 1; k <= max_k && operational; ++k)
    for (const FuncTable& f : delta_basis(domain, codomain, k)) {
      NaryGeneration gen = generated_by_nary(f, 1);
      if (!gen.generated) {
        operational = false;
        counterexample = {{"arity", k}, {"values", f.values}};
        break;
      }
    }
  rep.status = structural == operational ? "verified" : "refuted";
  rep.witness = {{"structural", structural}, {"coprime", coprime}, {"semisimple", semisimple},
                 {"operational", operational}, {"max_arity_scanned", max_k},
                 {"counterexample", counterexample}};
  rep.elapsed_ms = ms_since(start);
  return rep;
}

}  // namespace clonoid
