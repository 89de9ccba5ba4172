#include "adelic/poly.hpp"

#include <algorithm>
#include <random>

namespace adelic {

namespace {

std::uint64_t checked_pow(std::uint64_t q, int d) {
  std::uint64_t r = 1;
  for (int i = 0; i < d; ++i) {
    if (r > (~std::uint64_t{0}) / q) throw Error("field power overflow");
    r *= q;
  }
  return r;
}

// Uniform element of k[X] of degree < n (finite fields).
Poly random_poly(const Field& k, long n, std::mt19937_64& rng) {
  std::vector<FieldElem> c;
  std::uniform_int_distribution<std::uint64_t> dist(0, k.order() - 1);
  for (long i = 0; i < n; ++i) c.push_back(k.element(dist(rng)));
  return Poly(k.zero(), std::move(c));
}

// Splits a squarefree monic g whose irreducible factors all have degree d.
void equal_degree_split(const Poly& g, int d, std::vector<Poly>& out, std::mt19937_64& rng) {
  if (g.degree() <= d) {
    out.push_back(g);
    return;
  }
  const Field& k = g.zero_elem().field();
  const std::uint64_t q = k.order();
  while (true) {
    Poly a = random_poly(k, g.degree(), rng);
    if (a.degree() < 1) continue;
    Poly h(k.zero());
    if (q % 2 == 1) {
      const std::uint64_t e = (checked_pow(q, d) - 1) / 2;
      h = powmod(a, e, g) - poly_const(k.one());
    } else {
      // Trace from F_{q^d} to F_2.
      const int bits = k.degree() * d;
      Poly term = a % g;
      h = term;
      for (int i = 1; i < bits; ++i) {
        term = (term * term) % g;
        h = h + term;
      }
    }
    Poly f = gcd(g, h);
    if (f.degree() > 0 && f.degree() < g.degree()) {
      equal_degree_split(f, d, out, rng);
      equal_degree_split(g / f, d, out, rng);
      return;
    }
  }
}

// Product of the distinct linear factors of monic g (finite field).
Poly linear_part(const Poly& g) {
  const Field& k = g.zero_elem().field();
  if (g.degree() < 1) return poly_const(k.one());
  Poly h = powmod(poly_x(k), k.order(), g) - poly_x(k);
  return gcd(g, h);
}

std::vector<FieldElem> finite_distinct_roots(const Poly& g) {
  const Field& k = g.zero_elem().field();
  Poly lin = linear_part(g.monic());
  std::vector<FieldElem> roots;
  if (lin.degree() < 1) return roots;
  std::mt19937_64 rng(0x5eed);
  std::vector<Poly> factors;
  equal_degree_split(lin, 1, factors, rng);
  for (const Poly& f : factors) roots.push_back(-f[0] / f[1]);
  (void)k;
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> primes;
  std::vector<int> exps;
  for (mpz_class d = 2; d * d <= n; ++d) {
    if (d > 1000000) throw Error("rational root search: coefficient too large to factor");
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) {
      primes.push_back(d);
      exps.push_back(e);
    }
  }
  if (n > 1) {
    primes.push_back(n);
    exps.push_back(1);
  }
  std::vector<mpz_class> out{1};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::size_t sz = out.size();
    mpz_class pw = 1;
    for (int e = 1; e <= exps[i]; ++e) {
      pw *= primes[i];
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pw);
    }
  }
  return out;
}

std::vector<FieldElem> rational_distinct_roots(const Poly& g) {
  const Field& k = g.zero_elem().field();
  std::vector<FieldElem> roots;
  Poly f = g;
  if (f[0].is_zero()) {
    roots.push_back(k.zero());
    while (f[0].is_zero()) f = f / poly_x(k);
  }
  if (f.degree() >= 1) {
    mpz_class den = 1;
    for (const auto& c : f.coeffs()) {
      mpz_class d = c.rational().get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    const mpz_class a0 = mpz_class(f[0].rational() * den);
    const mpz_class an = mpz_class(f.leading().rational() * den);
    for (const mpz_class& p : divisors(a0))
      for (const mpz_class& q : divisors(an))
        for (int sgn : {1, -1}) {
          FieldElem r = k.from_rational(mpq_class(p * sgn, q));
          if (f(r).is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
        }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::string to_string(const Poly& f, const std::string& var) {
  return f.to_string(var, [](const FieldElem& c) { return c.to_string(); });
}

std::vector<FieldElem> distinct_roots(const Poly& g) {
  if (g.is_zero()) throw ZeroInput("roots of the zero polynomial");
  if (g.degree() == 0) return {};
  if (g.zero_elem().field().is_rational()) return rational_distinct_roots(g);
  return finite_distinct_roots(g);
}

SplitResult poly_split_roots(const Poly& g, bool require_full) {
  if (g.is_zero()) throw ZeroInput("roots of the zero polynomial");
  SplitResult res{{}, g.monic()};
  for (const FieldElem& r : distinct_roots(g)) {
    const Poly lin = poly_linear(r);
    while (true) {
      auto [q, rem] = res.cofactor.divmod(lin);
      if (!rem.is_zero()) break;
      res.cofactor = q;
      res.roots.push_back(r);
    }
  }
  if (require_full && !res.complete())
    throw NeedsLargerField("polynomial does not split over " + g.zero_elem().field().name(),
                           to_string(irreducible_factor(res.cofactor), "X"));
  return res;
}

Poly irreducible_factor(const Poly& f) {
  if (f.degree() < 1) throw PreconditionViolation("irreducible_factor of a constant");
  const Field& k = f.zero_elem().field();
  Poly g = f.monic();
  if (k.is_rational()) {
    auto r = rational_distinct_roots(g);
    return r.empty() ? g : poly_linear(r.front());
  }
  Poly xq = poly_x(k);
  for (int d = 1; d <= g.degree(); ++d) {
    xq = powmod(xq, k.order(), g);
    Poly h = gcd(g, xq - poly_x(k));
    if (h.degree() > 0) {
      std::mt19937_64 rng(0x5eed + static_cast<unsigned>(d));
      std::vector<Poly> parts;
      equal_degree_split(h, d, parts, rng);
      std::sort(parts.begin(), parts.end(), [](const Poly& a, const Poly& b) {
        for (std::size_t i = a.size(); i-- > 0;)
          if (!(a[i] == b[i])) return a[i] < b[i];
        return false;
      });
      return parts.front();
    }
  }
  return g;
}

bool is_squarefree(const Poly& f) {
  if (f.degree() < 1) return true;
  const Poly d = f.derivative();
  if (d.is_zero()) return false;
  return gcd(f, d).degree() == 0;
}

std::vector<FieldElem> kth_roots(const FieldElem& a, long e) {
  if (e < 1) throw PreconditionViolation("kth_roots needs a positive exponent");
  if (a.is_zero()) return {a};
  std::vector<FieldElem> c(static_cast<std::size_t>(e) + 1, a.zero_like());
  c[0] = -a;
  c[static_cast<std::size_t>(e)] = a.one_like();
  return distinct_roots(Poly(a.zero_like(), std::move(c)));
}

Poly taylor_shift(const Poly& f, const FieldElem& a) {
  return f.compose(Poly(a.zero_like(), {a, a.one_like()}));
}

}  // namespace adelic
