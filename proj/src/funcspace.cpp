#include "clonoid/funcspace.hpp"

#include <algorithm>
#include <set>

#include "clonoid/error.hpp"

namespace clonoid {

namespace {

constexpr int64_t kSubpowerGuard = 1LL << 20;

void check_compatible(const FuncTable& f, const FuncTable& g) {
  if (f.arity != g.arity || !same_module_structure(*f.domain, *g.domain) ||
      !same_module_structure(*f.codomain, *g.codomain))
    fail("SignatureMismatch", "function tables over different signatures");
}

}  // namespace

Row func_encode(const FuncTable& f) {
  const AbelianBasis& basis = f.codomain->basis;
  int d = static_cast<int>(basis.orders.size());
  Row row;
  row.reserve(f.points() * d);
  for (int v : f.values) {
    const std::vector<int>& coord = basis.coords[v];
    for (int i = 0; i < d; ++i) row.push_back(coord[i] * (basis.exponent / basis.orders[i]));
  }
  return row;
}

FuncTable func_decode(const ModulePtr& domain, const ModulePtr& codomain, int arity,
                      const Row& row) {
  const AbelianBasis& basis = codomain->basis;
  int d = static_cast<int>(basis.orders.size());
  int64_t pts = ipow(domain->size, arity);
  if (static_cast<int64_t>(row.size()) != pts * d)
    fail("SignatureMismatch", "encoded row has the wrong length");
  FuncTable f{domain, codomain, arity, {}};
  f.values.resize(pts);
  for (int64_t x = 0; x < pts; ++x) {
    int v = codomain->zero;
    for (int i = 0; i < d; ++i) {
      int64_t scaled = row[x * d + i];
      int64_t scale = basis.exponent / basis.orders[i];
      if (scaled % scale != 0) fail("SignatureMismatch", "row coordinate off the scaled lattice");
      v = codomain->add(v, codomain->zmul(scaled / scale, basis.gens[i]));
    }
    f.values[x] = v;
  }
  return f;
}

FuncTable func_zero(const ModulePtr& domain, const ModulePtr& codomain, int arity) {
  FuncTable f{domain, codomain, arity, {}};
  f.values.assign(ipow(domain->size, arity), codomain->zero);
  return f;
}

FuncTable func_add(const FuncTable& f, const FuncTable& g) {
  check_compatible(f, g);
  FuncTable out = f;
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = f.codomain->add(f.values[i], g.values[i]);
  return out;
}

FuncTable func_sub(const FuncTable& f, const FuncTable& g) {
  check_compatible(f, g);
  FuncTable out = f;
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = f.codomain->sub(f.values[i], g.values[i]);
  return out;
}

bool func_equal(const FuncTable& f, const FuncTable& g) {
  check_compatible(f, g);
  return f.values == g.values;
}

FuncTable func_minor(const FuncTable& f, const Matrix& m) {
  if (m.rows != f.arity) fail("SignatureMismatch", "minor matrix rows must equal the arity");
  FuncTable out{f.domain, f.codomain, m.cols, {}};
  int64_t pts = ipow(f.domain->size, m.cols);
  out.values.resize(pts);
  for (int64_t x = 0; x < pts; ++x)
    out.values[x] = f.values[matrix_act_tuple(*f.domain, m, x)];
  return out;
}

SpanBasis span_basis(const ModulePtr& domain, const ModulePtr& codomain, int arity,
                     const std::vector<FuncTable>& gens) {
  SpanBasis b;
  b.domain = domain;
  b.codomain = codomain;
  b.arity = arity;
  b.exponent = codomain->basis.exponent;
  std::vector<Row> rows;
  for (const FuncTable& f : gens) {
    if (f.arity != arity || !same_module_structure(*f.domain, *domain) ||
        !same_module_structure(*f.codomain, *codomain))
      fail("SignatureMismatch", "span generator over a different signature");
    rows.push_back(func_encode(f));
  }
  int ncols = static_cast<int>(ipow(domain->size, arity) * codomain->basis.orders.size());
  b.form = HowellForm(b.exponent, ncols, rows);
  return b;
}

std::optional<Row> span_contains(const SpanBasis& basis, const FuncTable& f) {
  if (f.arity != basis.arity || !same_module_structure(*f.domain, *basis.domain) ||
      !same_module_structure(*f.codomain, *basis.codomain))
    fail("SignatureMismatch", "membership query over a different signature");
  return basis.form.express(func_encode(f));
}

std::vector<FuncTable> delta_basis(const ModulePtr& domain, const ModulePtr& codomain, int arity) {
  std::vector<FuncTable> out;
  int64_t pts = ipow(domain->size, arity);
  for (int64_t a = 0; a < pts; ++a)
    for (int gen : codomain->basis.gens) {
      FuncTable f = func_zero(domain, codomain, arity);
      f.values[a] = gen;
      out.push_back(f);
    }
  return out;
}

std::vector<FuncTable> hom_group(const ModulePtr& domain, const ModulePtr& codomain) {
  const AbelianBasis& basis = domain->basis;
  int d = static_cast<int>(basis.gens.size());
  std::vector<FuncTable> out;
  // candidate images for each domain generator: elements whose order divides
  // the generator order
  std::vector<std::vector<int>> choices(d);
  for (int i = 0; i < d; ++i)
    for (int b = 0; b < codomain->size; ++b)
      if (codomain->zmul(basis.orders[i], b) == codomain->zero) choices[i].push_back(b);
  std::vector<int> pick(d, 0);
  bool done = d == 0;
  while (true) {
    FuncTable f{domain, codomain, 1, {}};
    f.values.resize(domain->size);
    for (int x = 0; x < domain->size; ++x) {
      int v = codomain->zero;
      for (int i = 0; i < d; ++i)
        v = codomain->add(v, codomain->zmul(basis.coords[x][i], choices[i][pick[i]]));
      f.values[x] = v;
    }
    out.push_back(f);
    if (done) break;
    int i = d - 1;
    while (i >= 0 && ++pick[i] == static_cast<int>(choices[i].size())) pick[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

std::optional<std::vector<std::vector<int>>> pol_check(const FuncTable& f,
                                                       const RelationalPair& rel) {
  if (rel.dom_rel.empty()) return std::nullopt;
  size_t width = rel.dom_rel[0].size();
  std::set<std::vector<int>> cod(rel.cod_rel.begin(), rel.cod_rel.end());
  int k = f.arity;
  std::vector<int> pick(k, 0);
  int nrel = static_cast<int>(rel.dom_rel.size());
  std::vector<int> arg(k);
  while (true) {
    std::vector<int> image(width);
    for (size_t c = 0; c < width; ++c) {
      for (int i = 0; i < k; ++i) arg[i] = rel.dom_rel[pick[i]][c];
      image[c] = f.eval(tuple_encode(arg, f.domain->size));
    }
    if (!cod.count(image)) {
      std::vector<std::vector<int>> witness;
      for (int i = 0; i < k; ++i) witness.push_back(rel.dom_rel[pick[i]]);
      return witness;
    }
    int i = k - 1;
    while (i >= 0 && ++pick[i] == nrel) pick[i--] = 0;
    if (i < 0) break;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> subpower_generate(const ModulePtr& module,
                                                const std::vector<std::vector<int>>& gens) {
  std::set<std::vector<int>> elems;
  if (gens.empty()) return {};
  size_t width = gens[0].size();
  std::vector<int> zero(width, module->zero);
  elems.insert(zero);
  std::vector<std::vector<int>> todo;
  for (const auto& g : gens)
    if (elems.insert(g).second) todo.push_back(g);
  while (!todo.empty()) {
    if (static_cast<int64_t>(elems.size()) > kSubpowerGuard)
      fail("SearchTooLarge", "generated subpower exceeds the guard");
    std::vector<int> x = std::move(todo.back());
    todo.pop_back();
    std::vector<std::vector<int>> snapshot(elems.begin(), elems.end());
    std::vector<int> t(width);
    for (const auto& y : snapshot) {
      for (size_t i = 0; i < width; ++i) t[i] = module->add(x[i], y[i]);
      if (elems.insert(t).second) todo.push_back(t);
    }
    for (size_t i = 0; i < width; ++i) t[i] = module->neg(x[i]);
    if (elems.insert(t).second) todo.push_back(t);
    for (int r = 0; r < module->ring->size; ++r) {
      for (size_t i = 0; i < width; ++i) t[i] = module->act(r, x[i]);
      if (elems.insert(t).second) todo.push_back(t);
    }
  }
  return {elems.begin(), elems.end()};
}

}  // namespace clonoid
