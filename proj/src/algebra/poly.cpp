#include "expderham/algebra/poly.hpp"

namespace expderham {

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::vector<Poly> squarefree_decomposition(const Poly& p) {
  if (p.is_zero()) throw DomainError("square-free decomposition of zero");
  std::vector<Poly> out;
  if (p.degree() == 0) return out;
  const Poly f = p.monic();
  const Poly fp = f.derivative();
  const Poly a0 = gcd(f, fp);
  Poly b = f.divmod(a0).first;
  Poly c = fp.divmod(a0).first;
  Poly d = c - b.derivative();
  while (b.degree() > 0) {
    Poly a = gcd(b, d);
    out.push_back(a);
    b = b.divmod(a).first;
    c = d.divmod(a).first;
    d = c - b.derivative();
  }
  return out;
}

}  // namespace expderham
