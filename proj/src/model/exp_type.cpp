#include "expderham/model/exp_type.hpp"

#include "expderham/error.hpp"

namespace expderham {

std::string to_string(Convention c) { return c == Convention::plus ? "plus" : "minus"; }

Convention parse_convention(const std::string& s) {
  if (s == "plus") return Convention::plus;
  if (s == "minus") return Convention::minus;
  throw InputError("convention must be 'plus' or 'minus', got '" + s + "'");
}

LocalExpType::LocalExpType(int sign_, int d_) : sign(sign_), d(d_) {
  if (sign != 1 && sign != -1) throw DomainError("local exponential sign must be +1 or -1");
  if (d < 1) throw DomainError("local exponential degree must be >= 1");
}

RationalFunction Puncture::as_rational() const {
  if (at_infinity()) return RationalFunction(principal);
  const Poly lin = Poly::linear_factor(*location);
  const int n = d();
  Poly num, pw = Poly::constant(1);
  // sum_k a_k (z-p)^{n-k} / (z-p)^n
  for (int k = n; k >= 1; --k) {
    num += principal[k] * pw;
    pw = pw * lin;
  }
  return {num, pw};
}

RationalFunction GlobalExpType::H() const {
  RationalFunction h;
  for (const auto& p : punctures) h += p.as_rational();
  return h;
}

void validate(const GlobalExpType& t) {
  if (t.punctures.empty()) throw InputError("at least one puncture is required");
  int infinities = 0;
  for (std::size_t i = 0; i < t.punctures.size(); ++i) {
    const auto& p = t.punctures[i];
    if (p.d() < 1) throw InputError("puncture " + std::to_string(i) + " has pole order < 1");
    if (!p.principal[0].is_zero()) throw InputError("principal part of puncture " + std::to_string(i) + " has a constant term");
    if (p.at_infinity()) ++infinities;
    for (std::size_t j = 0; j < i; ++j)
      if (t.punctures[j].location == p.location) throw InputError("duplicate puncture location");
  }
  if (infinities > 1) throw InputError("more than one puncture at inf");
}

}  // namespace expderham
