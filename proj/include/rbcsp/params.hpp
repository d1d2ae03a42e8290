#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rbcsp {

enum class ModelKind { RB, RD };

// "rb" / "rd".
std::string_view to_string(ModelKind model) noexcept;
// Accepts "rb" or "rd" (lowercase); throws ParamRangeError otherwise.
ModelKind parse_model(std::string_view text);

// The five-tuple (k, n, alpha, r, p) together with the model kind.
//
// Domain size, constraint count and the RB incompatible-tuple count are not
// stored here; they are always recomputed by derive_sizes().
struct CspParams {
  ModelKind model = ModelKind::RB;
  int k = 2;          // constraint arity
  int n = 2;          // number of variables
  double alpha = 1.0; // domain size d = n^alpha
  double r = 1.0;     // constraint count m = r n ln n
  double p = 0.0;     // tightness

  // Throws ParamRangeError unless k >= 2, n >= 2, alpha > 0, r > 0 and
  // 0 <= p <= 1.
  void validate() const;

  friend bool operator==(const CspParams&, const CspParams&) = default;
};

struct DerivedSizes {
  std::int64_t d = 0;            // domain size
  std::int64_t m = 0;            // number of constraints
  std::int64_t q = 0;            // incompatible tuples per constraint (RB)
  std::int64_t tuple_space = 0;  // d^k

  friend bool operator==(const DerivedSizes&, const DerivedSizes&) = default;
};

// Nearest integer, ties away from zero.
std::int64_t round_nearest(double x);

// d = round(n^alpha), m = round(r n ln n), q = round(p d^k).
//
// Throws ParamRangeError for invalid parameters, for d < 2 or m < 1, and
// when d^k does not fit in 62 bits.
DerivedSizes derive_sizes(const CspParams& params);

// Effective tightness: p for RD, q / d^k for RB.
double effective_tightness(const CspParams& params, const DerivedSizes& sizes);

}  // namespace rbcsp
