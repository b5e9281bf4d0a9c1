#include "clonoid/operators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "clonoid/error.hpp"

namespace clonoid {

namespace {

int64_t emod(int64_t a, int64_t e) {
  a %= e;
  return a < 0 ? a + e : a;
}

void check_signature(const MinorOperator& a, const MinorOperator& b) {
  if (a.arity != b.arity || a.exponent != b.exponent || a.ring->size != b.ring->size ||
      a.ring->add_table != b.ring->add_table || a.ring->mul_table != b.ring->mul_table)
    fail("SignatureMismatch", "operators over different signatures");
}

Matrix to_matrix(const MinorOperator& d, const std::vector<int>& entries) {
  Matrix m(d.arity, d.arity, 0);
  m.e = entries;
  return m;
}

void add_term(MinorOperator& d, const std::vector<int>& entries, int64_t c) {
  c = emod(c, d.exponent);
  auto it = d.support.find(entries);
  if (it == d.support.end()) {
    if (c != 0) d.support.emplace(entries, c);
    return;
  }
  it->second = emod(it->second + c, d.exponent);
  if (it->second == 0) d.support.erase(it);
}

// |A|^{k-1}-style averaging constants inverted mod E.
int64_t averaging_inverse(int64_t count, int power, int64_t e) {
  int64_t total = 1;
  for (int i = 0; i < power; ++i) total = emod(total * emod(count, e), e);
  return mod_inverse(total, e);
}

std::vector<Submodule> maximal_submodules(const ModulePtr& module) {
  std::vector<Submodule> subs = submodules(module);
  std::vector<Submodule> proper;
  for (const Submodule& s : subs)
    if (static_cast<int>(s.elements.size()) < module->size) proper.push_back(s);
  std::vector<Submodule> out;
  for (const Submodule& s : proper) {
    bool maximal = true;
    for (const Submodule& t : proper)
      if (s.elements != t.elements &&
          std::includes(t.elements.begin(), t.elements.end(), s.elements.begin(),
                        s.elements.end()))
        maximal = false;
    if (maximal) out.push_back(s);
  }
  return out;
}

}  // namespace

MinorOperator op_zero(const RingPtr& ring, int k, int64_t e) {
  return MinorOperator{ring, k, 0, e, {}};
}

MinorOperator op_identity(const RingPtr& ring, int k, int64_t e) {
  MinorOperator d{ring, k, k, e, {}};
  add_term(d, Matrix::identity(*ring, k).e, 1);
  return d;
}

MinorOperator op_add(const MinorOperator& a, const MinorOperator& b) {
  check_signature(a, b);
  MinorOperator out = a;
  out.rank_bound = std::max(a.rank_bound, b.rank_bound);
  for (const auto& [m, c] : b.support) add_term(out, m, c);
  return out;
}

MinorOperator op_sub(const MinorOperator& a, const MinorOperator& b) {
  check_signature(a, b);
  MinorOperator out = a;
  out.rank_bound = std::max(a.rank_bound, b.rank_bound);
  for (const auto& [m, c] : b.support) add_term(out, m, -c);
  return out;
}

MinorOperator op_scale(const MinorOperator& a, int64_t c) {
  MinorOperator out{a.ring, a.arity, a.rank_bound, a.exponent, {}};
  for (const auto& [m, coeff] : a.support) add_term(out, m, coeff * emod(c, a.exponent));
  return out;
}

MinorOperator op_compose(const MinorOperator& d1, const MinorOperator& d2) {
  check_signature(d1, d2);
  MinorOperator out{d1.ring, d1.arity, std::min(d1.rank_bound, d2.rank_bound), d1.exponent, {}};
  for (const auto& [r, c1] : d1.support) {
    Matrix mr = to_matrix(d1, r);
    for (const auto& [u, c2] : d2.support)
      add_term(out, mat_mul(*d1.ring, to_matrix(d2, u), mr).e, c1 * c2);
  }
  int rk = op_max_inner_rank(out);
  if (rk > out.rank_bound) fail("Internal", "composition increased the support rank");
  out.rank_bound = rk;
  return out;
}

MinorOperator op_combine_difference(const MinorOperator& d, const MinorOperator& t) {
  check_signature(d, t);
  return op_add(d, op_compose(t, op_sub(op_identity(d.ring, d.arity, d.exponent), d)));
}

FuncTable op_apply(const MinorOperator& d, const FuncTable& f) {
  if (f.arity != d.arity || f.domain->ring->size != d.ring->size ||
      f.domain->ring->mul_table != d.ring->mul_table)
    fail("SignatureMismatch", "operator and function over different signatures");
  if (d.exponent % f.codomain->basis.exponent != 0)
    fail("SignatureMismatch", "codomain exponent does not divide the operator modulus");
  FuncTable out = func_zero(f.domain, f.codomain, f.arity);
  const FiniteModule& a = *f.domain;
  const FiniteModule& b = *f.codomain;
  for (const auto& [ent, c] : d.support) {
    Matrix m = to_matrix(d, ent);
    for (int64_t x = 0; x < out.points(); ++x)
      out.values[x] = b.add(out.values[x], b.zmul(c, f.eval(matrix_act_tuple(a, m, x))));
  }
  return out;
}

int op_max_inner_rank(const MinorOperator& d) {
  int rk = 0;
  for (const auto& [ent, c] : d.support) {
    Matrix m(d.arity, d.arity, 0);
    m.e = ent;
    rk = std::max(rk, inner_rank(d.ring, m));
  }
  return rk;
}

bool verify_coeff_identity(const ModulePtr& domain, int k, int64_t e,
                           const std::vector<std::pair<Matrix, int64_t>>& coeffs) {
  int64_t pts = ipow(domain->size, k);
  // accumulate sum_{r: rx=a} s(r) over all x and compare with the identity
  std::vector<int64_t> acc(pts * pts, 0);
  for (const auto& [m, c] : coeffs)
    for (int64_t x = 0; x < pts; ++x) {
      int64_t a = matrix_act_tuple(*domain, m, x);
      acc[x * pts + a] = emod(acc[x * pts + a] + c, e);
    }
  for (int64_t x = 0; x < pts; ++x)
    for (int64_t a = 0; a < pts; ++a)
      if (acc[x * pts + a] != (x == a ? 1 % e : 0)) return false;
  return true;
}

CoeffSolution solve_coeffs_linear(const ModulePtr& domain, int k, int n, int64_t e) {
  CoeffSolution sol;
  sol.domain = domain;
  sol.arity = k;
  sol.rank_bound = n;
  sol.exponent = e;
  sol.method = "linear";
  int64_t pts = ipow(domain->size, k);
  if (pts > (1 << 10)) fail("SizeLimit", "domain power exceeds the solver guard");
  std::vector<Matrix> mats = matrices_of_rank_at_most(domain->ring, k, n, domain);
  // each matrix contributes the indicator row of its graph on A^k; the wanted
  // identity is membership of the diagonal graph in the row span over Z_E
  std::vector<Row> rows;
  rows.reserve(mats.size());
  for (const Matrix& m : mats) {
    Row r(pts * pts, 0);
    for (int64_t x = 0; x < pts; ++x) r[x * pts + matrix_act_tuple(*domain, m, x)] = 1;
    rows.push_back(std::move(r));
  }
  Row target(pts * pts, 0);
  for (int64_t x = 0; x < pts; ++x) target[x * pts + x] = 1 % e;
  HowellForm form(e, static_cast<int>(pts * pts), rows);
  std::optional<Row> cert = form.express(target);
  if (!cert) return sol;
  sol.feasible = true;
  for (size_t i = 0; i < mats.size(); ++i)
    if ((*cert)[i] != 0) sol.coeffs.emplace_back(mats[i], (*cert)[i]);
  sol.verified = verify_coeff_identity(domain, k, e, sol.coeffs);
  if (!sol.verified) fail("Internal", "solver certificate failed re-verification");
  return sol;
}

MinorOperator operator_from_coeffs(const CoeffSolution& s) {
  MinorOperator d{s.domain->ring, s.arity, s.rank_bound, s.exponent, {}};
  for (const auto& [m, c] : s.coeffs) add_term(d, m.e, c);
  return d;
}

MinorOperator gM_operator(const ModulePtr& domain, const Submodule& m_sub, int k, int64_t e) {
  const FiniteModule& a = *domain;
  const RingPtr& ring = a.ring;
  {
    std::vector<Submodule> maxima = maximal_submodules(domain);
    bool found = false;
    for (const Submodule& s : maxima) found |= s.elements == m_sub.elements;
    if (!found) fail("HypothesisViolated", "submodule is not maximal");
  }
  LocalDecomposition dec = local_decomposition(ring);
  // the unique local block whose component of A is not inside M
  int bi = -1;
  for (size_t i = 0; i < dec.blocks.size(); ++i) {
    bool outside = false;
    for (int x = 0; x < a.size; ++x)
      if (!m_sub.contains(a.act(dec.blocks[i].idempotent, x))) outside = true;
    if (outside) {
      if (bi >= 0) fail("HypothesisViolated", "maximal submodule misses several blocks");
      bi = static_cast<int>(i);
    }
  }
  if (bi < 0) fail("HypothesisViolated", "submodule is not proper");
  const LocalBlock& blk = dec.blocks[bi];
  int e_comp = ring->sub(ring->one, blk.idempotent);  // identity of the other blocks
  MinorOperator out{ring, k, 0, e, {}};

  bool radical_kills = true;
  for (int j : blk.max_ideal)
    for (int x = 0; x < a.size && radical_kills; ++x)
      if (a.act(j, x) != a.zero) radical_kills = false;

  if (radical_kills) {
    // averaged difference over row-1 shears with entries in the block
    int64_t inv = averaging_inverse(static_cast<int64_t>(blk.elements.size()), k - 1, e);
    std::vector<int> pick(k - 1, 0);
    while (true) {
      Matrix plus = Matrix::identity(*ring, k);
      for (int j = 1; j < k; ++j) plus.at(0, j) = blk.elements[pick[j - 1]];
      Matrix minus = plus;
      minus.at(0, 0) = e_comp;
      add_term(out, plus.e, inv);
      add_term(out, minus.e, -inv);
      int i = k - 2;
      while (i >= 0 && ++pick[i] == static_cast<int>(blk.elements.size())) pick[i--] = 0;
      if (i < 0) break;
    }
    out.rank_bound = op_max_inner_rank(out);
    return out;
  }

  // induction step: average over the smallest submodule N of the block
  // component, then recurse on A/N
  std::vector<int> a1;  // block component of A
  {
    std::set<int> part;
    for (int x = 0; x < a.size; ++x) part.insert(a.act(blk.idempotent, x));
    a1.assign(part.begin(), part.end());
  }
  std::vector<Submodule> subs = submodules(domain);
  const Submodule* n_min = nullptr;
  for (const Submodule& s : subs) {
    if (s.elements.size() <= 1) continue;
    if (!std::includes(a1.begin(), a1.end(), s.elements.begin(), s.elements.end())) continue;
    if (!n_min || s.elements.size() < n_min->elements.size()) n_min = &s;
  }
  if (!n_min) fail("HypothesisViolated", "block component has no nonzero submodule");
  const Submodule& n_sub = *n_min;
  // I = annihilator of M inside the block that maps A into N
  std::vector<int> ideal;
  for (int r : blk.elements) {
    bool ok = true;
    for (int m : m_sub.elements) ok &= a.act(r, m) == a.zero;
    for (int x = 0; x < a.size && ok; ++x) ok &= n_sub.contains(a.act(r, x));
    if (ok) ideal.push_back(r);
  }
  for (int x = 0; x < a.size; ++x) {
    if (m_sub.contains(x)) continue;
    std::set<int> image;
    for (int r : ideal) image.insert(a.act(r, x));
    if (std::vector<int>(image.begin(), image.end()) != n_sub.elements)
      fail("HypothesisViolated", "annihilator does not act transitively on N");
  }

  auto averaging_op = [&](bool skip_first_col) {
    int ncells = skip_first_col ? k * (k - 1) : k * k;
    MinorOperator avg{ring, k, 0, e, {}};
    int64_t inv = averaging_inverse(static_cast<int64_t>(ideal.size()), ncells, e);
    std::vector<int> pick(ncells, 0);
    while (true) {
      Matrix m = Matrix::identity(*ring, k);
      int cell = 0;
      for (int i = 0; i < k; ++i)
        for (int j = skip_first_col ? 1 : 0; j < k; ++j)
          m.at(i, j) = ring->add(m.at(i, j), ideal[pick[cell++]]);
      add_term(avg, m.e, inv);
      int i = ncells - 1;
      while (i >= 0 && ++pick[i] == static_cast<int>(ideal.size())) pick[i--] = 0;
      if (i < 0) break;
    }
    avg.rank_bound = op_max_inner_rank(avg);
    return avg;
  };
  MinorOperator op_bar = averaging_op(false);
  MinorOperator op_hat = averaging_op(true);

  Quotient q = quotient_module(domain, n_sub);
  std::set<int> mq_set;
  for (int m : m_sub.elements) mq_set.insert(q.projection[m]);
  Submodule mq{q.module, {mq_set.begin(), mq_set.end()}};
  MinorOperator op_q = gM_operator(q.module, mq, k, e);

  out = op_add(op_sub(op_hat, op_bar), op_compose(op_q, op_bar));
  out.rank_bound = op_max_inner_rank(out);
  return out;
}

MinorOperator fN_operator(const ModulePtr& domain, const Submodule& n_sub, int k, int64_t e) {
  const FiniteModule& a = *domain;
  const RingPtr& ring = a.ring;
  int n = nilpotence_degree(*ring, jacobson_radical(ring));
  if (k == 1) {
    if (static_cast<int>(n_sub.elements.size()) != a.size)
      fail("HypothesisViolated", "unary cover component must be the whole module");
    return op_identity(ring, 1, e);
  }
  Submodule ja = radical_submodule(domain);
  int64_t expected = static_cast<int64_t>(a.size) * ipow(ja.elements.size(), k - 1);
  if (static_cast<int64_t>(n_sub.elements.size()) != expected)
    fail("HypothesisViolated", "component has the wrong cardinality for the cover");

  MinorOperator op_hat{ring, k, 0, e, {}};
  if (ja.elements.size() == 1) {
    // semisimple case: keep only the first argument
    Matrix p(k, k, ring->zero);
    p.at(0, 0) = ring->one;
    add_term(op_hat, p.e, 1);
    op_hat.rank_bound = 1;
  } else {
    SubmoduleModule jm = submodule_as_module(domain, ja);
    MinorOperator d = build_identity_operator(jm.module, k - 1, e);
    for (const auto& [ent, c] : d.support) {
      Matrix lift(k, k, ring->zero);
      lift.at(0, 0) = ring->one;
      for (int i = 0; i < k - 1; ++i)
        for (int j = 0; j < k - 1; ++j) lift.at(i + 1, j + 1) = ent[i * (k - 1) + j];
      add_term(op_hat, lift.e, c);
    }
    op_hat.rank_bound = d.rank_bound + 1;
  }

  MinorOperator chain = op_hat;
  for (const Submodule& m : maximal_submodules(domain))
    chain = op_compose(gM_operator(domain, m, k, e), chain);

  Matrix t = find_transitive_matrix(domain, k, n_sub);
  Matrix tinv;
  if (!mat_inverse(*ring, t, tinv)) fail("Internal", "transitive matrix not invertible");
  MinorOperator out{ring, k, 0, e, {}};
  for (const auto& [ent, c] : chain.support) {
    Matrix r(k, k, 0);
    r.e = ent;
    add_term(out, mat_mul(*ring, tinv, mat_mul(*ring, r, t)).e, c);
  }
  out.rank_bound = op_max_inner_rank(out);
  if (out.rank_bound > n) fail("Internal", "cover operator exceeds the nilpotence rank bound");
  return out;
}

namespace {

struct MemoKey {
  int k;
  int64_t e;
  int size;
  std::vector<int> add_table;
  std::vector<int> action_table;
  bool operator<(const MemoKey& o) const {
    return std::tie(k, e, size, add_table, action_table) <
           std::tie(o.k, o.e, o.size, o.add_table, o.action_table);
  }
};

}  // namespace

MinorOperator build_identity_operator(const ModulePtr& domain, int k, int64_t e) {
  static std::map<MemoKey, MinorOperator> memo;
  const RingPtr& ring = domain->ring;
  if (!ring_is_commutative(*ring)) fail("Unsupported", "constructive builder needs a commutative ring");
  if (std::gcd<int64_t>(domain->size, e) != 1)
    fail("GcdViolation", "module order must be invertible modulo the exponent");
  MemoKey key{k, e, domain->size, domain->add_table, domain->action_table};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  MinorOperator result;
  if (domain->size == 1) {
    result = MinorOperator{ring, k, 0, e, {}};
    add_term(result, Matrix(k, k, ring->zero).e, 1);
  } else {
    MinorOperator d = op_zero(ring, k, e);
    for (const Submodule& l : submodules(domain)) {
      if (static_cast<int>(l.elements.size()) == domain->size) continue;
      SubmoduleModule sm = submodule_as_module(domain, l);
      d = op_combine_difference(d, build_identity_operator(sm.module, k, e));
    }
    CoverComponents cover = cover_components(domain, k);
    MinorOperator t = op_zero(ring, k, e);
    for (const Submodule& n_sub : cover.V) t = op_add(t, fN_operator(domain, n_sub, k, e));
    result = op_combine_difference(d, t);
    int n = nilpotence_degree(*ring, jacobson_radical(ring));
    result.rank_bound = op_max_inner_rank(result);
    if (result.rank_bound > n)
      fail("Internal", "identity operator exceeds the nilpotence rank bound");
  }
  memo.emplace(std::move(key), result);
  return result;
}

CoeffSolution coeff_solution_constructive(const ModulePtr& domain, int k, int64_t e) {
  MinorOperator op = build_identity_operator(domain, k, e);
  CoeffSolution sol;
  sol.domain = domain;
  sol.arity = k;
  sol.rank_bound = op.rank_bound;
  sol.exponent = e;
  sol.method = "constructive";
  sol.feasible = true;
  for (const auto& [ent, c] : op.support) {
    Matrix m(k, k, 0);
    m.e = ent;
    sol.coeffs.emplace_back(m, c);
  }
  sol.verified = verify_coeff_identity(domain, k, e, sol.coeffs);
  if (!sol.verified) fail("Internal", "constructive operator failed the congruence check");
  return sol;
}

}  // namespace clonoid
