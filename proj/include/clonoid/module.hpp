#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "clonoid/ring.hpp"

namespace clonoid {

struct FiniteModule;
using ModulePtr = std::shared_ptr<const FiniteModule>;

// Decomposition of the additive group as a direct sum of cyclic groups,
// ordered by descending order so orders[0] is the group exponent.
struct AbelianBasis {
  std::vector<int> gens;
  std::vector<int64_t> orders;
  int64_t exponent = 1;
  std::vector<std::vector<int>> coords;  // coords[element][component]
};

struct FiniteModule {
  RingPtr ring;
  int size = 0;
  std::vector<int> add_table;  // size*size
  std::vector<int> neg_table;  // size
  int zero = 0;
  std::vector<int> action_table;  // ring.size * size
  std::string label;
  AbelianBasis basis;

  int add(int a, int b) const { return add_table[a * size + b]; }
  int neg(int a) const { return neg_table[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int act(int r, int a) const { return action_table[r * size + a]; }
  // integer scalar through the canonical Z-action
  int zmul(int64_t n, int a) const;
};

ModulePtr module_make(const nlohmann::json& spec);
ModulePtr make_module_from_tables(RingPtr ring, int size, std::vector<int> add,
                                  std::vector<int> neg, int zero, std::vector<int> action,
                                  std::string label, bool verify = true);

struct Submodule {
  ModulePtr parent;
  std::vector<int> elements;  // sorted

  bool contains(int x) const;
  bool operator==(const Submodule& o) const { return elements == o.elements; }
  bool operator<(const Submodule& o) const { return elements < o.elements; }
};

Submodule submodule_closure(const ModulePtr& module, const std::vector<int>& gens);
std::vector<Submodule> submodules(const ModulePtr& module);  // sorted, includes {0} and A

struct DistributivityCheck {
  bool distributive = true;
  std::array<Submodule, 3> witness;  // X, Y, Z with X&(Y+Z) != (X&Y)+(X&Z)
};
DistributivityCheck is_distributive(const ModulePtr& module);

Submodule radical_submodule(const ModulePtr& module);
int min_generators(const ModulePtr& module);

struct Quotient {
  ModulePtr module;
  std::vector<int> projection;  // parent index -> quotient index
  std::vector<int> reps;        // quotient index -> least parent representative
};
Quotient quotient_module(const ModulePtr& module, const Submodule& sub);

struct SubmoduleModule {
  ModulePtr module;
  std::vector<int> embed;     // new index -> parent index
  std::vector<int> index_in;  // parent index -> new index or -1
};
SubmoduleModule submodule_as_module(const ModulePtr& module, const Submodule& sub);

// A^k with mixed-radix element indexing, x_1 least significant.
ModulePtr power_module(const ModulePtr& module, int k);

int64_t ipow(int64_t b, int e);
void tuple_decode(int64_t idx, int base, int k, std::vector<int>& out);
int64_t tuple_encode(const std::vector<int>& t, int base);

// x in A^cols -> Mx in A^rows via the matrix action over the ring.
int64_t matrix_act_tuple(const FiniteModule& module, const Matrix& m, int64_t x);

// Invertible T over R with T*M <= A x (JA)^{k-1} (equality when M is in V).
Matrix find_transitive_matrix(const ModulePtr& module, int k, const Submodule& m_sub);

struct CoverComponents {
  ModulePtr power;                // A^k the component sets live in
  std::vector<Submodule> V;       // components isomorphic to A/JA over (JA)^k
  std::vector<Submodule> proper;  // proper submodules L < A used by the cover
};
CoverComponents cover_components(const ModulePtr& module, int k);

bool same_module_structure(const FiniteModule& a, const FiniteModule& b);

}  // namespace clonoid
