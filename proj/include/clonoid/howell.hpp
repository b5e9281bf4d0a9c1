#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace clonoid {

using Row = std::vector<int64_t>;

// Canonical representation of a Z_E-row-span. Unlike Hermite form, the
// Howell form is a unique normal form for row spans over Z/EZ in the
// presence of zero divisors, so span equality is row-by-row equality.
// Each canonical row is tracked as a Z_E-combination of the input
// generators so that membership tests yield certificates.
class HowellForm {
public:
  HowellForm() : modulus_(1), ncols_(0), ngens_(0) {}
  HowellForm(int64_t modulus, int ncols, const std::vector<Row>& generators);

  int64_t modulus() const { return modulus_; }
  int ncols() const { return ncols_; }
  int generator_count() const { return ngens_; }

  const std::vector<Row>& rows() const { return rows_; }
  // combinations()[i] are coefficients over the generators with
  // rows()[i] = sum_j combinations()[i][j] * generator_j (mod E).
  const std::vector<Row>& combinations() const { return combos_; }

  bool contains(const Row& v) const;
  // Coefficients c over the generators with v = sum c_j * generator_j.
  std::optional<Row> express(const Row& v) const;

  // Generators of {u : sum u_j * generator_j = 0}.
  const std::vector<Row>& kernel() const { return kernel_; }

  uint64_t span_size() const;

  bool operator==(const HowellForm& o) const {
    return modulus_ == o.modulus_ && ncols_ == o.ncols_ && rows_ == o.rows_;
  }
  bool operator!=(const HowellForm& o) const { return !(*this == o); }

private:
  int64_t modulus_;
  int ncols_;
  int ngens_;
  std::vector<Row> rows_;
  std::vector<Row> combos_;
  std::vector<Row> kernel_;
};

int64_t mod_inverse(int64_t a, int64_t m);  // fails with GcdViolation if none

}  // namespace clonoid
