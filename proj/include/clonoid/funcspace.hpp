#pragma once

#include <optional>
#include <vector>

#include "clonoid/howell.hpp"
#include "clonoid/module.hpp"

namespace clonoid {

// A k-ary function A^k -> B stored as a value table indexed by the mixed-radix
// tuple encoding (x_1 least significant). Rows for span computations encode
// each value through the codomain basis, coordinate c of a Z_e component
// scaled to c*(E/e) so all coordinates live in Z_E.
struct FuncTable {
  ModulePtr domain;
  ModulePtr codomain;
  int arity = 0;
  std::vector<int> values;  // |A|^arity entries, codomain element indices

  int64_t points() const { return static_cast<int64_t>(values.size()); }
  int eval(int64_t x) const { return values[x]; }
};

Row func_encode(const FuncTable& f);
FuncTable func_decode(const ModulePtr& domain, const ModulePtr& codomain, int arity,
                      const Row& row);

FuncTable func_zero(const ModulePtr& domain, const ModulePtr& codomain, int arity);
FuncTable func_add(const FuncTable& f, const FuncTable& g);
FuncTable func_sub(const FuncTable& f, const FuncTable& g);
bool func_equal(const FuncTable& f, const FuncTable& g);

// g(x) = f(Mx) for M over the ring with M.rows == f.arity; g has arity M.cols.
FuncTable func_minor(const FuncTable& f, const Matrix& m);

// Z-span of function tables in canonical Howell form.
struct SpanBasis {
  ModulePtr domain;
  ModulePtr codomain;
  int arity = 0;
  int64_t exponent = 1;
  HowellForm form;

  bool operator==(const SpanBasis& o) const { return form == o.form; }
  uint64_t size() const { return form.span_size(); }
};

SpanBasis span_basis(const ModulePtr& domain, const ModulePtr& codomain, int arity,
                     const std::vector<FuncTable>& gens);
// Certificate: integer coefficients over the generating list when contained.
std::optional<Row> span_contains(const SpanBasis& basis, const FuncTable& f);

// delta_{a}(x) = b when x == a else 0, for every a in A^k and each basis
// generator b of the codomain.
std::vector<FuncTable> delta_basis(const ModulePtr& domain, const ModulePtr& codomain, int arity);

// All additive group homomorphisms A -> B as unary tables.
std::vector<FuncTable> hom_group(const ModulePtr& domain, const ModulePtr& codomain);

// Compatibility of a k-ary function with a pair of relations: tuples in the
// domain relation must map into the codomain relation.
struct RelationalPair {
  std::vector<std::vector<int>> dom_rel;  // tuples over domain elements
  std::vector<std::vector<int>> cod_rel;  // tuples over codomain elements
};

// Empty result means compatible; otherwise the first violating choice of
// relation tuples (column-wise arguments).
std::optional<std::vector<std::vector<int>>> pol_check(const FuncTable& f,
                                                       const RelationalPair& rel);

// Subalgebra of module^width generated by tuples, tuples as flat vectors.
std::vector<std::vector<int>> subpower_generate(const ModulePtr& module,
                                                const std::vector<std::vector<int>>& gens);

}  // namespace clonoid
