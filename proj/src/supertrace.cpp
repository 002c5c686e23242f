#include "bhst/supertrace.hpp"

#include "bhst/error.hpp"

#include <set>

namespace bhst {

namespace {

long to_long_exact(const Rational& r, const char* what) {
  require(r.denominator() == 1, what);
  return static_cast<long>(r.numerator());
}

EisensteinElement p_power(const ZpRingPtr& ring, long k) {
  // p^k = (-1)^k pi^{(p-1) k}
  EisensteinElement x = EisensteinElement::pi_power(ring, static_cast<long>(ring->prime() - 1) * k);
  return (k % 2 == 0) ? x : -x;
}

}  // namespace

EisensteinElement frobenius_eigenvalue(const BHMatrix& a, const SectorGenerator& g, const ZpRingPtr& ring,
                                       bool dual) {
  const long e = static_cast<long>(ring->prime()) - 1;
  const SectorElement& x = dual ? g.lambda : g.gamma;
  GammaEvaluator gamma(ring);
  PAdicInt prod(ring, 1L);
  for (int i = 0; i < x.n(); ++i)
    if (x.numerators()[i] != 0) prod *= gamma.at(x.frac(i));
  const long pi_exp = to_long_exact(x.age() * e, "(p-1) * age is an integer when det | p-1");
  const long q = dual ? g.q_vee : g.q;
  (void)a;
  return EisensteinElement::from_padic(prod).times_pi_power(pi_exp) * p_power(ring, -q);
}

int default_precision(const BHMatrix& a, std::size_t generator_count) {
  const mpz_class p(static_cast<unsigned long>(a.p()));
  mpz_class bound(static_cast<unsigned long>(generator_count));
  for (int i = 2; i < a.n(); ++i) bound *= p;
  int n = 2;
  mpz_class pn = p * p;
  while (pn / p <= bound || pn <= 64 * bound) {
    pn *= p;
    ++n;
  }
  return n;
}

SupertraceResult supertrace_padic(const StateSpace& space, int precision, GammaStrategy strategy) {
  const BHMatrix& a = space.matrix();
  if (!space.j_hypothesis())
    fail(ErrorCode::kHypothesis, "the supertrace needs J in G and J in G^T");
  if (a.p() == 0) fail(ErrorCode::kInvalidArgument, "matrix has no prime attached");
  if (precision <= 0) precision = default_precision(a, space.generators().size());
  const auto ring = ZpRing::make(a.p(), precision);
  const long e = static_cast<long>(a.p()) - 1;

  std::set<Rational> arg_set;
  for (const auto& g : space.generators())
    for (const auto& x : g.gamma_args()) arg_set.insert(x);
  const auto gammas = batch_gamma(std::vector<Rational>(arg_set.begin(), arg_set.end()), ring, strategy);

  SupertraceResult out;
  out.p = a.p();
  out.precision = precision;
  PAdicInt total(ring, 0L);
  for (const auto& g : space.generators()) {
    SupertraceTerm t;
    t.generator = g;
    t.sign = g.sign();
    t.p_exponent = static_cast<int>(to_long_exact(g.p_exponent(), "integral p-exponent"));
    require(t.p_exponent >= 0, "non-negative p-exponent");
    t.gamma_args = g.gamma_args();
    PAdicInt term(ring, ring->power_of_p(t.p_exponent));
    for (const auto& x : t.gamma_args) term *= gammas.at(x);
    if (t.sign < 0) term = -term;
    t.value = term.residue();
    total += term;

    // Same term through the Frobenius eigenvalue and the p^{age+n-1} twist.
    const long age = to_long_exact(g.age, "integral age when J is in G^T");
    PAdicInt unit(ring, 1L);
    for (const auto& x : t.gamma_args) unit *= gammas.at(x);
    const long pi_exp = to_long_exact(g.age_dual * e, "integral (p-1) * dual age");
    EisensteinElement eig =
        EisensteinElement::from_padic(unit).times_pi_power(pi_exp) * p_power(ring, -g.q);
    EisensteinElement twisted = eig * p_power(ring, age + a.n() - 1);
    if (g.dim % 2 == 1) twisted = -twisted;
    if (!congruent(twisted, EisensteinElement::from_padic(term), e * precision))
      fail(ErrorCode::kInternal, "eigenvalue path disagrees with the closed form for " + g.monomial_string());
    out.terms.push_back(std::move(t));
  }
  out.residue = total.residue();
  out.lifted = try_lift_integer(out);
  return out;
}

std::optional<mpz_class> try_lift_integer(const SupertraceResult& r) {
  mpz_class margin;
  mpz_ui_pow_ui(margin.get_mpz_t(), static_cast<unsigned long>(r.p), static_cast<unsigned long>(r.precision - 1));
  if (r.residue < margin) return r.residue;
  return std::nullopt;
}

mpz_class lift_integer(const SupertraceResult& r) {
  auto v = try_lift_integer(r);
  if (!v)
    fail(ErrorCode::kPrecisionExhausted, "supertrace residue " + r.residue.get_str() + " is not below p^(N-1) = " +
                                             std::to_string(r.p) + "^" + std::to_string(r.precision - 1) +
                                             "; raise N");
  return *v;
}

ModPSupertrace supertrace_mod_p(const BHMatrix& a) {
  if (a.p() == 0) fail(ErrorCode::kInvalidArgument, "matrix has no prime attached");
  if (a.cy_check() != CyClass::kStrict) fail(ErrorCode::kHypothesis, "mod-p forms need the strict CY condition");
  const std::uint64_t p = a.p();
  const int n = a.n();
  RationalVector x(n, Rational(0));  // J A^{-1}: column sums
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x[j] += a.inverse()[i][j];
  const auto ring = ZpRing::make(p, 1);
  GammaEvaluator gamma(ring);
  PAdicInt g(ring, 1L);
  for (const auto& xi : x) g *= gamma.at(frac_part(xi));
  PAdicInt gamma_form = PAdicInt(ring, 1L) + ((n - 1) % 2 == 0 ? g : -g);

  // (p-1)! = -1 mod p, and every (p-1) x_i < p.
  PAdicInt denom(ring, 1L);
  for (const auto& xi : x) {
    const Rational k = xi * static_cast<std::int64_t>(p - 1);
    require(k.denominator() == 1, "(p-1) x_i is an integer");
    denom *= gamma_factorial(static_cast<std::uint64_t>(k.numerator()) + 1, ring);
  }
  // Gamma_p(k+1) = (-1)^{k+1} k! for k < p; undo the signs.
  std::int64_t sign_exp = 0;
  for (const auto& xi : x) sign_exp += (xi * static_cast<std::int64_t>(p - 1)).numerator() + 1;
  if (sign_exp % 2 == 1) denom = -denom;
  PAdicInt multinomial = PAdicInt(ring, -1L) * denom.inverse();
  PAdicInt mult_form = PAdicInt(ring, 1L) + (n % 2 == 0 ? multinomial : -multinomial);
  ModPSupertrace out{p, gamma_form.residue().get_ui(), mult_form.residue().get_ui()};
  if (out.gamma_form != out.multinomial_form)
    fail(ErrorCode::kInternal, "gamma and multinomial forms of the mod-p supertrace differ");
  return out;
}

}  // namespace bhst
