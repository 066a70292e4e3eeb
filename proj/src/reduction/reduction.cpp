#include "expderham/reduction/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "expderham/algebra/partial_fractions.hpp"
#include "expderham/algebra/series.hpp"
#include "expderham/error.hpp"

namespace expderham {

namespace {

void check_args(int d, int sign) {
  if (d < 1) throw DomainError("reduction needs d >= 1");
  if (sign != 1 && sign != -1) throw DomainError("reduction sign must be +1 or -1");
}

// log |beta| for g = z^{-k}, canonical index j; -inf when beta vanishes.
double log_abs_beta(int j, int k, int d) {
  const int jj = d - j;
  if (k < jj || (k - jj) % d != 0) return -INFINITY;
  const int m = (k - jj) / d;
  double s = 0.0;
  for (int i = 0; i <= m; ++i) s += std::log(static_cast<double>(d) / (jj - 1 + i * d));
  return s;
}

// sum_{k > N} |beta_{j,k}| C R^k
double tail_sum(int j, int N, int d, double C, double R) {
  const int jj = d - j;
  int k = jj;
  if (k <= N) k += ((N - jj) / d + 1) * d;
  double logt = log_abs_beta(j, k, d) + std::log(C) + k * std::log(R);
  double total = 0.0;
  const double logRd = d * std::log(R);
  for (int iter = 0; iter < 1000000; ++iter) {
    const double t = std::exp(logt);
    total += t;
    const int next = k + d;
    const double ratio = std::exp(std::log(static_cast<double>(d)) - std::log(static_cast<double>(next - 1)) + logRd);
    if (ratio < 0.5) {
      // Ratios keep shrinking, so the rest is below a geometric series.
      total += t * ratio / (1.0 - ratio);
      break;
    }
    logt += std::log(ratio);
    k = next;
  }
  return total;
}

}  // namespace

bool ReductionResult::all_zero() const {
  return std::all_of(canonical.begin(), canonical.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

ReductionResult reduce_laurent(const LaurentData& g, int d, int sign) {
  check_args(d, sign);
  std::map<int, ExactComplex> w = g.coeffs();
  LaurentData F;
  const ExactComplex sd(static_cast<long>(sign * d));
  // Positive side: z^n with n >= d-1, m = n-d+1:
  //   d(z^m e^h) = (m z^{m-1} + sign d z^n) e^h dz
  while (!w.empty() && w.rbegin()->first >= d - 1) {
    auto it = std::prev(w.end());
    const int n = it->first;
    const ExactComplex c = it->second;
    w.erase(it);
    const int m = n - d + 1;
    F.add(m, c / sd);
    if (m >= 1) {
      auto& slot = w[m - 1];
      slot -= c * ExactComplex(static_cast<long>(m)) / sd;
      if (slot.is_zero()) w.erase(m - 1);
    }
  }
  // Negative side: z^{-k}, k >= 2:
  //   d(z^{1-k} e^h) = ((1-k) z^{-k} + sign d z^{d-k}) e^h dz
  while (!w.empty() && w.begin()->first <= -2) {
    auto it = w.begin();
    const int k = -it->first;
    const ExactComplex c = it->second;
    w.erase(it);
    const ExactComplex km1(static_cast<long>(k - 1));
    F.add(1 - k, -c / km1);
    auto& slot = w[d - k];
    slot += sd * c / km1;
    if (slot.is_zero()) w.erase(d - k);
  }
  ReductionResult r;
  r.d = d;
  r.sign = sign;
  for (int j = -1; j <= d - 2; ++j) {
    auto it = w.find(j);
    r.canonical[j] = it == w.end() ? ExactComplex() : it->second;
    r.truncation_error[j] = 0.0;
  }
  r.primitive = std::move(F);
  return r;
}

ReductionResult reduce_poly(const Poly& p, int d, int sign) {
  std::map<int, ExactComplex> c;
  for (int k = 0; k <= p.degree(); ++k)
    if (!p[k].is_zero()) c.emplace(k, p[k]);
  return reduce_laurent(LaurentData(std::move(c)), d, sign);
}

std::pair<Rational, Rational> alpha_beta(int j, int k, int d, int sign) {
  check_args(d, sign);
  if (k < 2) throw DomainError("alpha_beta needs k >= 2");
  Rational alpha(0), beta(0);
  // alpha: F_{-j} for z^{-k}; nonzero iff j >= 1 and k-1-j = m d.
  if (j >= 1 && k - 1 - j >= 0 && (k - 1 - j) % d == 0) {
    const int m = (k - 1 - j) / d;
    alpha = frac(-1, j);
    for (int i = 1; i <= m; ++i) alpha *= frac(d * sign, j + i * d);
  }
  // beta: c_j for z^{-k}, j in -1..d-2; with jj = d - j, nonzero iff k - jj = m d, m >= 0.
  if (j >= -1 && j <= d - 2) {
    const int jj = d - j;
    if (k >= jj && (k - jj) % d == 0) {
      const int m = (k - jj) / d;
      beta = 1;
      for (int i = 0; i <= m; ++i) beta *= frac(d * sign, jj - 1 + i * d);
    }
  }
  return {alpha, beta};
}

int minimal_truncation(double R, int d) {
  const double bound = d * std::pow(2.0 * R, d);
  return static_cast<int>(std::floor(bound)) + 2;
}

ReductionResult reduce_germ(const LaurentData& g, int d, int N_trunc, int sign) {
  check_args(d, sign);
  if (!g.tail()) throw DomainError("reduce_germ needs a tail bound");
  const TailBound tb = *g.tail();
  const int k0 = minimal_truncation(tb.R, d);
  if (N_trunc < k0) throw TruncationError(N_trunc, k0);
  std::map<int, ExactComplex> kept;
  std::map<int, ExactComplex> dropped;
  for (const auto& [e, c] : g.coeffs()) (e < -N_trunc ? dropped : kept).emplace(e, c);
  ReductionResult r = reduce_laurent(LaurentData(std::move(kept)), d, sign);
  r.k0 = k0;
  r.truncation_order = N_trunc;
  for (int j = -1; j <= d - 2; ++j) {
    double err = 0.0;
    for (const auto& [e, c] : dropped) {
      const double lb = log_abs_beta(j, -e, d);
      if (std::isfinite(lb)) err += std::exp(lb) * c.abs();
    }
    err += tail_sum(j, g.tail_start(), d, tb.C, tb.R);
    // One ulp-scale cushion for the floating evaluation of the bound.
    r.truncation_error[j] = err * (1.0 + 1e-12);
  }
  return r;
}

ReductionResult reduce(const ExpDifferential& w, int N_trunc) {
  if (!w.is_local()) throw DomainError("local reduction needs a local differential");
  const LocalExpType& t = w.local_type();
  if (auto g = std::get_if<LaurentData>(&w.coeff)) {
    if (!g->tail()) return reduce_laurent(*g, t.d, t.sign);
    return reduce_germ(*g, t.d, N_trunc > 0 ? N_trunc : std::max(g->tail_start(), minimal_truncation(g->tail()->R, t.d)),
                       t.sign);
  }
  const RationalFunction& r = w.rational();
  if (r.den().degree() < 1) return reduce_poly(r.num(), t.d, t.sign);
  double reach = 0.0;
  for (const auto& root : polynomial_roots(r.den())) reach = std::max(reach, std::abs(root.value));
  const double R = std::max(1.5 * reach, 1e-3);
  const int n = N_trunc > 0 ? N_trunc : std::max(minimal_truncation(R, t.d), 48);
  return reduce_germ(germ_at_infinity(r, n, R), t.d, n, t.sign);
}

LaurentData reduction_residual(const LaurentData& g, const ReductionResult& r) {
  LaurentData out = g.truncated();
  for (const auto& [j, c] : r.canonical) out.add(j, -c);
  out -= r.primitive.derivative();
  const ExactComplex sd(static_cast<long>(r.sign * r.d));
  for (const auto& [m, c] : r.primitive.coeffs()) out.add(m + r.d - 1, -sd * c);
  return out;
}

const char* to_string(Exactness e) {
  switch (e) {
    case Exactness::exact: return "exact";
    case Exactness::not_exact: return "not_exact";
    case Exactness::undecided: return "undecided";
    case Exactness::no_solution_within_bound: return "no_solution_within_bound";
  }
  return "?";
}

LocalExactness is_exact_local(const ExpDifferential& w, int N_trunc) {
  LocalExactness out;
  out.reduction = reduce(w, N_trunc);
  bool any_nonzero = false;
  for (const auto& [j, c] : out.reduction.canonical) {
    if (c.is_zero()) continue;
    any_nonzero = true;
    if (c.abs() > out.reduction.truncation_error.at(j)) out.nonzero.emplace(j, c);
  }
  if (!out.nonzero.empty())
    out.status = Exactness::not_exact;
  else
    out.status = any_nonzero ? Exactness::undecided : Exactness::exact;
  return out;
}

}  // namespace expderham
