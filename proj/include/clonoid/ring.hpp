#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "clonoid/error.hpp"

namespace clonoid {

struct FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

// A finite ring with 1 given by dense operation tables on element indices.
// Axioms are verified exhaustively at construction for size <= 64.
struct FiniteRing {
  int size = 0;
  std::vector<int> add_table;  // size*size, row-major
  std::vector<int> mul_table;  // size*size
  std::vector<int> neg_table;  // size
  int zero = 0;
  int one = 0;
  std::string label;
  std::vector<int> inverse_table;  // two-sided inverse or -1

  int add(int a, int b) const { return add_table[a * size + b]; }
  int mul(int a, int b) const { return mul_table[a * size + b]; }
  int neg(int a) const { return neg_table[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  bool is_unit(int a) const { return inverse_table[a] >= 0; }
  int inverse(int a) const { return inverse_table[a]; }
};

RingPtr ring_make(const nlohmann::json& spec);
RingPtr make_ring_from_tables(int size, std::vector<int> add, std::vector<int> mul,
                              std::vector<int> neg, int zero, int one, std::string label);

std::vector<int> ring_units(const FiniteRing& ring);

struct RingIdeal {
  enum class Side { left, right, two_sided };
  RingPtr ring;
  std::vector<int> elements;  // sorted
  Side side = Side::two_sided;

  bool contains(int x) const;
};

RingIdeal jacobson_radical(const RingPtr& ring);
int nilpotence_degree(const FiniteRing& ring, const RingIdeal& ideal);

struct LocalBlock {
  int idempotent;
  std::vector<int> elements;    // e R e, sorted subset of the parent ring
  std::vector<int> max_ideal;   // non-units of the block, sorted
};

struct LocalDecomposition {
  RingPtr ring;
  std::vector<LocalBlock> blocks;
};

// Primitive orthogonal idempotent decomposition; commutative rings only.
LocalDecomposition local_decomposition(const RingPtr& ring);

bool ring_is_commutative(const FiniteRing& ring);

// Dense matrix over a finite ring, entries as element indices.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> e;

  Matrix() = default;
  Matrix(int r, int c, int fill = 0) : rows(r), cols(c), e(r * c, fill) {}
  int& at(int i, int j) { return e[i * cols + j]; }
  int at(int i, int j) const { return e[i * cols + j]; }
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && e == o.e; }
  bool operator<(const Matrix& o) const { return e < o.e; }

  static Matrix identity(const FiniteRing& ring, int k);
};

Matrix mat_mul(const FiniteRing& ring, const Matrix& a, const Matrix& b);
Matrix mat_add(const FiniteRing& ring, const Matrix& a, const Matrix& b);
int mat_det(const FiniteRing& ring, const Matrix& a);  // commutative rings
// Inverse via adjugate; nullopt-style: returns false if det is not a unit.
bool mat_inverse(const FiniteRing& ring, const Matrix& a, Matrix& out);

}  // namespace clonoid
