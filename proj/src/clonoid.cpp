#include "clonoid/clonoid.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "clonoid/error.hpp"

namespace clonoid {

namespace {

int64_t census_guard() {
  if (const char* env = std::getenv("CLONOID_LAB_GUARD")) return std::strtoll(env, nullptr, 10);
  return 1LL << 12;
}

void check_signature(const Clonoid& a, const Clonoid& b) {
  if (!same_module_structure(*a.domain, *b.domain) ||
      !same_module_structure(*a.codomain, *b.codomain) || a.max_arity != b.max_arity)
    fail("SignatureMismatch", "clonoids over different signatures or bounds");
}

// All matrices over the ring with the given shape.
std::vector<Matrix> all_matrices(const FiniteRing& ring, int rows, int cols) {
  std::vector<Matrix> out;
  Matrix m(rows, cols, 0);
  while (true) {
    out.push_back(m);
    int i = rows * cols - 1;
    while (i >= 0 && ++m.e[i] == ring.size) m.e[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

Clonoid from_generator_rows(const ModulePtr& domain, const ModulePtr& codomain, int max_arity,
                            const std::vector<std::vector<FuncTable>>& per_arity) {
  Clonoid c{domain, codomain, max_arity, false, {}};
  for (int m = 1; m <= max_arity; ++m)
    c.parts.push_back(span_basis(domain, codomain, m, per_arity[m - 1]));
  return c;
}

}  // namespace

Clonoid clonoid_generate(const ModulePtr& domain, const ModulePtr& codomain, int max_arity,
                         const std::vector<FuncTable>& gens) {
  if (max_arity < 1) fail("MalformedSpec", "max_arity must be at least 1");
  if (gens.empty()) {
    Clonoid bottom{domain, codomain, max_arity, true, {}};
    for (int m = 1; m <= max_arity; ++m) bottom.parts.push_back(span_basis(domain, codomain, m, {}));
    return bottom;
  }
  if (domain->size != 2 && max_arity > 4) fail("SizeLimit", "arity bound exceeds the table guard");
  std::vector<std::vector<FuncTable>> per_arity(max_arity);
  for (const FuncTable& f : gens) {
    if (!same_module_structure(*f.domain, *domain) ||
        !same_module_structure(*f.codomain, *codomain))
      fail("SignatureMismatch", "generator over a different signature");
    if (domain->size != 2 && f.arity > 4)
      fail("SizeLimit", "generator arity exceeds the table guard");
    for (int m = 1; m <= max_arity; ++m)
      for (const Matrix& mat : all_matrices(*domain->ring, f.arity, m))
        per_arity[m - 1].push_back(func_minor(f, mat));
  }
  return from_generator_rows(domain, codomain, max_arity, per_arity);
}

CompareResult clonoid_compare(const Clonoid& a, const Clonoid& b) {
  check_signature(a, b);
  if (a.empty && b.empty) return CompareResult::equal;
  if (a.empty) return CompareResult::less;
  if (b.empty) return CompareResult::greater;
  bool leq = true, geq = true;
  for (int m = 1; m <= a.max_arity; ++m) {
    const HowellForm& fa = a.part(m).form;
    const HowellForm& fb = b.part(m).form;
    for (const Row& r : fa.rows())
      if (!fb.contains(r)) leq = false;
    for (const Row& r : fb.rows())
      if (!fa.contains(r)) geq = false;
  }
  if (leq && geq) return CompareResult::equal;
  if (leq) return CompareResult::less;
  if (geq) return CompareResult::greater;
  return CompareResult::incomparable;
}

Clonoid clonoid_join(const Clonoid& a, const Clonoid& b) {
  check_signature(a, b);
  if (a.empty) return b;
  if (b.empty) return a;
  Clonoid c{a.domain, a.codomain, a.max_arity, false, {}};
  for (int m = 1; m <= a.max_arity; ++m) {
    std::vector<Row> rows = a.part(m).form.rows();
    for (const Row& r : b.part(m).form.rows()) rows.push_back(r);
    SpanBasis sb = a.part(m);
    sb.form = HowellForm(sb.exponent, sb.form.ncols(), rows);
    c.parts.push_back(std::move(sb));
  }
  return c;
}

Clonoid clonoid_meet(const Clonoid& a, const Clonoid& b) {
  check_signature(a, b);
  if (a.empty || b.empty) {
    Clonoid bottom = a.empty ? a : b;
    return bottom;
  }
  Clonoid c{a.domain, a.codomain, a.max_arity, false, {}};
  for (int m = 1; m <= a.max_arity; ++m) {
    // intersection via the kernel of the stacked generator list: a row of the
    // kernel restricted to a's generators produces an element of both spans
    const std::vector<Row>& ra = a.part(m).form.rows();
    const std::vector<Row>& rb = b.part(m).form.rows();
    std::vector<Row> stacked = ra;
    for (const Row& r : rb) stacked.push_back(r);
    HowellForm stack(a.part(m).exponent, a.part(m).form.ncols(), stacked);
    std::vector<Row> meet_rows;
    int ncols = a.part(m).form.ncols();
    for (const Row& u : stack.kernel()) {
      Row v(ncols, 0);
      int64_t e = a.part(m).exponent;
      for (size_t i = 0; i < ra.size(); ++i)
        for (int j = 0; j < ncols; ++j) v[j] = (v[j] + u[i] * ra[i][j]) % e;
      meet_rows.push_back(std::move(v));
    }
    SpanBasis sb = a.part(m);
    sb.form = HowellForm(sb.exponent, ncols, meet_rows);
    c.parts.push_back(std::move(sb));
  }
  return c;
}

bool clonoid_contains(const Clonoid& c, const FuncTable& f) {
  if (c.empty) return false;
  if (f.arity < 1 || f.arity > c.max_arity)
    fail("SignatureMismatch", "arity outside the clonoid window");
  return span_contains(c.part(f.arity), f).has_value();
}

NaryGeneration generated_by_nary(const FuncTable& f, int n) {
  NaryGeneration out;
  const RingPtr& ring = f.domain->ring;
  std::vector<Matrix> mats = matrices_of_rank_at_most(ring, f.arity, n, f.domain);
  std::vector<FuncTable> minors;
  for (const Matrix& m : mats) minors.push_back(func_minor(f, m));
  SpanBasis basis = span_basis(f.domain, f.codomain, f.arity, minors);
  std::optional<Row> cert = span_contains(basis, f);
  if (!cert) return out;
  out.generated = true;
  for (size_t i = 0; i < mats.size(); ++i)
    if ((*cert)[i] != 0) out.certificate.emplace_back(mats[i], (*cert)[i]);
  return out;
}

Clonoid clonoid_lift(const Clonoid& c, const ModulePtr& domain, const Quotient& q,
                     const ModulePtr& codomain, const SubmoduleModule* cod_embed) {
  if (!same_module_structure(*c.domain, *q.module))
    fail("SignatureMismatch", "clonoid domain is not the given quotient");
  if (cod_embed) {
    if (!same_module_structure(*c.codomain, *cod_embed->module))
      fail("SignatureMismatch", "clonoid codomain is not the given submodule");
  } else if (!same_module_structure(*c.codomain, *codomain)) {
    fail("SignatureMismatch", "codomains differ without an embedding");
  }
  if (c.empty) {
    Clonoid bottom{domain, codomain, c.max_arity, true, {}};
    for (int m = 1; m <= c.max_arity; ++m)
      bottom.parts.push_back(span_basis(domain, codomain, m, {}));
    return bottom;
  }
  Clonoid out{domain, codomain, c.max_arity, false, {}};
  for (int m = 1; m <= c.max_arity; ++m) {
    std::vector<FuncTable> lifted;
    for (const Row& r : c.part(m).form.rows()) {
      FuncTable f = func_decode(c.domain, c.codomain, m, r);
      FuncTable g{domain, codomain, m, {}};
      int64_t pts = ipow(domain->size, m);
      g.values.resize(pts);
      std::vector<int> t(m), bt(m);
      for (int64_t x = 0; x < pts; ++x) {
        tuple_decode(x, domain->size, m, t);
        for (int i = 0; i < m; ++i) bt[i] = q.projection[t[i]];
        int v = f.eval(tuple_encode(bt, c.domain->size));
        g.values[x] = cod_embed ? cod_embed->embed[v] : v;
      }
      lifted.push_back(std::move(g));
    }
    out.parts.push_back(span_basis(domain, codomain, m, lifted));
  }
  return out;
}

Clonoid clonoid_restrict(const Clonoid& c, const SubmoduleModule& sub) {
  ModulePtr domain = sub.module;
  if (c.empty) {
    Clonoid bottom{domain, c.codomain, c.max_arity, true, {}};
    for (int m = 1; m <= c.max_arity; ++m)
      bottom.parts.push_back(span_basis(domain, c.codomain, m, {}));
    return bottom;
  }
  Clonoid out{domain, c.codomain, c.max_arity, false, {}};
  for (int m = 1; m <= c.max_arity; ++m) {
    std::vector<FuncTable> restricted;
    for (const Row& r : c.part(m).form.rows()) {
      FuncTable f = func_decode(c.domain, c.codomain, m, r);
      FuncTable g{domain, c.codomain, m, {}};
      int64_t pts = ipow(domain->size, m);
      g.values.resize(pts);
      std::vector<int> t(m), pt(m);
      for (int64_t x = 0; x < pts; ++x) {
        tuple_decode(x, domain->size, m, t);
        for (int i = 0; i < m; ++i) pt[i] = sub.embed[t[i]];
        g.values[x] = f.eval(tuple_encode(pt, c.domain->size));
      }
      restricted.push_back(std::move(g));
    }
    out.parts.push_back(span_basis(domain, c.codomain, m, restricted));
  }
  return out;
}

ClonoidCensus enumerate_clonoids(const ModulePtr& domain, const ModulePtr& codomain, int n) {
  ClonoidCensus census;
  int64_t space = 1;
  int64_t pts = ipow(domain->size, n);
  for (int64_t i = 0; i < pts; ++i) {
    space *= codomain->size;
    if (space > census_guard()) fail("SearchTooLarge", "n-ary function space exceeds the guard");
  }
  // coprimality of the group orders decides whether the n-ary window can
  // determine the clonoid
  census.bound_relative = std::gcd<int64_t>(domain->basis.exponent, codomain->basis.exponent) != 1;

  std::vector<Matrix> square = matrices_of_rank_at_most(domain->ring, n, n, domain);
  // BFS over closed spans: start from the zero span, repeatedly adjoin one
  // function and close under addition and precomposition. Every closed span is
  // reached because it can be built one generator at a time.
  std::vector<FuncTable> all_funcs;
  {
    FuncTable f = func_zero(domain, codomain, n);
    while (true) {
      all_funcs.push_back(f);
      int64_t i = pts - 1;
      while (i >= 0 && ++f.values[i] == codomain->size) f.values[i--] = 0;
      if (i < 0) break;
    }
  }
  auto close = [&](std::vector<FuncTable> gens) {
    // the span of all minors of the generators is already closed: minors are
    // linear over pointwise sums
    std::vector<FuncTable> closed;
    for (const FuncTable& g : gens)
      for (const Matrix& m : square) closed.push_back(func_minor(g, m));
    return span_basis(domain, codomain, n, closed);
  };
  std::set<std::vector<Row>> seen;
  std::vector<SpanBasis> layers;
  SpanBasis zero_span = close({func_zero(domain, codomain, n)});
  seen.insert(zero_span.form.rows());
  layers.push_back(zero_span);
  std::vector<SpanBasis> frontier = {zero_span};
  while (!frontier.empty()) {
    std::vector<SpanBasis> next;
    for (const SpanBasis& cur : frontier)
      for (const FuncTable& f : all_funcs) {
        if (cur.form.contains(func_encode(f))) continue;
        std::vector<FuncTable> gens;
        for (const Row& r : cur.form.rows()) gens.push_back(func_decode(domain, codomain, n, r));
        gens.push_back(f);
        SpanBasis grown = close(std::move(gens));
        if (seen.insert(grown.form.rows()).second) {
          layers.push_back(grown);
          next.push_back(grown);
        }
      }
    frontier = std::move(next);
  }
  // round-trip filter: the layer must reproduce itself when its functions
  // generate a clonoid bounded one arity higher
  census.clonoids.push_back(clonoid_generate(domain, codomain, n + 1, {}));  // bottom
  for (const SpanBasis& layer : layers) {
    std::vector<FuncTable> gens;
    for (const Row& r : layer.form.rows()) gens.push_back(func_decode(domain, codomain, n, r));
    if (gens.empty()) gens.push_back(func_zero(domain, codomain, n));
    Clonoid c = clonoid_generate(domain, codomain, n + 1, gens);
    if (c.part(n).form == layer.form) census.clonoids.push_back(std::move(c));
  }
  return census;
}

}  // namespace clonoid
