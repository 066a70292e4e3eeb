#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "expderham/algebra/laurent.hpp"
#include "expderham/algebra/rational.hpp"

namespace expderham {

/// Sign of the local model h = sign * z^d.
enum class Convention { plus, minus };

inline int sign_of(Convention c) { return c == Convention::plus ? 1 : -1; }
inline Convention convention_of(int sign) { return sign > 0 ? Convention::plus : Convention::minus; }
std::string to_string(Convention c);
Convention parse_convention(const std::string& s);

/// h = sign * z^d at the puncture z = inf.
struct LocalExpType {
  int sign = 1;
  int d = 1;
  LocalExpType() = default;
  LocalExpType(int sign_, int d_);
  Convention convention() const { return convention_of(sign); }
};

/// Puncture of a genus-0 curve. The principal part has no constant term and is a
/// polynomial in w = 1/(z - p) for finite p, or in z when p = inf.
struct Puncture {
  std::optional<ExactComplex> location;  // nullopt means inf
  Poly principal;

  bool at_infinity() const { return !location.has_value(); }
  int d() const { return principal.degree(); }
  /// The principal part as a rational function of z.
  RationalFunction as_rational() const;
  /// Coefficient of the top-order term.
  const ExactComplex& leading() const { return principal.leading(); }
};

struct GlobalExpType {
  std::vector<Puncture> punctures;
  /// Sum of the principal parts.
  RationalFunction H() const;
};

using ExpType = std::variant<LocalExpType, GlobalExpType>;

/// Validates a genus-0 puncture list: distinct locations, pole order >= 1, no constant terms.
void validate(const GlobalExpType& t);

}  // namespace expderham
