#include "rbcsp/params.hpp"

#include <cmath>
#include <limits>

#include "rbcsp/errors.hpp"

namespace rbcsp {

std::string_view to_string(ModelKind model) noexcept {
  return model == ModelKind::RB ? "rb" : "rd";
}

ModelKind parse_model(std::string_view text) {
  if (text == "rb") return ModelKind::RB;
  if (text == "rd") return ModelKind::RD;
  throw ParamRangeError("unknown model '" + std::string(text) + "' (expected rb or rd)");
}

void CspParams::validate() const {
  if (k < 2) throw ParamRangeError("k must be >= 2, got " + std::to_string(k));
  if (n < 2) throw ParamRangeError("n must be >= 2, got " + std::to_string(n));
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ParamRangeError("alpha must be positive and finite");
  if (!(r > 0.0) || !std::isfinite(r)) throw ParamRangeError("r must be positive and finite");
  if (!(p >= 0.0 && p <= 1.0)) throw ParamRangeError("p must lie in [0, 1]");
}

std::int64_t round_nearest(double x) {
  if (!std::isfinite(x) || std::fabs(x) > 9.0e18)
    throw ParamRangeError("value out of integer range");
  return std::llround(x);
}

DerivedSizes derive_sizes(const CspParams& params) {
  params.validate();
  DerivedSizes sizes;
  const double n = params.n;
  sizes.d = round_nearest(std::pow(n, params.alpha));
  sizes.m = round_nearest(params.r * n * std::log(n));
  if (sizes.d < 2)
    throw ParamRangeError("degenerate instance: domain size d = " + std::to_string(sizes.d));
  if (sizes.m < 1)
    throw ParamRangeError("degenerate instance: constraint count m = " + std::to_string(sizes.m));

  constexpr std::int64_t kLimit = std::int64_t{1} << 62;
  std::int64_t space = 1;
  for (int i = 0; i < params.k; ++i) {
    if (space > kLimit / sizes.d) throw ParamRangeError("d^k exceeds 2^62");
    space *= sizes.d;
  }
  sizes.tuple_space = space;
  sizes.q = round_nearest(params.p * static_cast<double>(space));
  if (sizes.q > space) sizes.q = space;
  return sizes;
}

double effective_tightness(const CspParams& params, const DerivedSizes& sizes) {
  if (params.model == ModelKind::RD) return params.p;
  return static_cast<double>(sizes.q) / static_cast<double>(sizes.tuple_space);
}

}  // namespace rbcsp
