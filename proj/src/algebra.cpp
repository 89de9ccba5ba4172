#include "adelic/algebra.hpp"

#include <algorithm>
#include <set>

#include "adelic/linalg.hpp"

namespace adelic {

AdelicPoly::AdelicPoly(std::vector<Adele> lower) : lower_(std::move(lower)) {
  if (lower_.empty()) throw PreconditionViolation("adelic polynomial needs degree >= 1");
  const Field& k = lower_.front().field();
  for (const Adele& c : lower_)
    if (&c.field() != &k) throw FieldMismatch("adelic polynomial coefficients over different fields");
  std::vector<Adele> all = lower_;
  all.push_back(Adele::constant(k.one()));
  full_ = AdelePoly(Adele::zero(k), std::move(all));
}

AdelicPoly AdelicPoly::from_monic(const AdelePoly& p) {
  if (p.degree() < 1 || !p.is_monic()) throw PreconditionViolation("polynomial is not monic of positive degree");
  return AdelicPoly(std::vector<Adele>(p.coeffs().begin(), p.coeffs().end() - 1));
}

AdelicPoly AdelicPoly::global(const Polynomial<RatFn>& p) {
  if (p.degree() < 1 || !p.is_monic()) throw PreconditionViolation("polynomial is not monic of positive degree");
  std::vector<Adele> lower;
  for (long i = 0; i < p.degree(); ++i) lower.push_back(Adele(p[static_cast<std::size_t>(i)]));
  return AdelicPoly(std::move(lower));
}

Polynomial<RatFn> AdelicPoly::generic() const {
  std::vector<RatFn> c;
  for (const Adele& a : full_.coeffs()) c.push_back(a.generic());
  return Polynomial<RatFn>(RatFn(field()), std::move(c));
}

std::vector<Place> AdelicPoly::override_places() const {
  std::set<Place> s;
  for (const Adele& a : lower_)
    for (const auto& [x, v] : a.overrides()) s.insert(x);
  return {s.begin(), s.end()};
}

std::string to_string(const AdelePoly& p, const std::string& var) {
  return p.to_string(var, [](const Adele& a) { return a.to_string(); });
}

std::string AdelicPoly::to_string() const { return adelic::to_string(full_); }

LocalPoly project_at(const AdelicPoly& p, const Place& x) {
  std::vector<LocalElem> c;
  for (const Adele& a : p.full().coeffs()) c.push_back(a.component(x));
  return LocalPoly(LocalElem::zero(p.field()), std::move(c));
}

std::string to_string(PlaceClass c) {
  switch (c) {
    case PlaceClass::NonIntegral:
      return "NonIntegral";
    case PlaceClass::IntegralNonSeparable:
      return "IntegralNonSeparable";
    case PlaceClass::IntegralSeparable:
      return "IntegralSeparable";
  }
  return "?";
}

PlaceClass classify_place(const AdelicPoly& p, const Place& x) {
  const LocalPoly px = project_at(p, x);
  if (!is_integral(px)) return PlaceClass::NonIntegral;
  const LocalElem d = discriminant(px);
  if (!d.known_zero() && d.valuation() == 0) return PlaceClass::IntegralSeparable;
  return PlaceClass::IntegralNonSeparable;
}

std::vector<Place> bad_set_candidates(const AdelicPoly& p) {
  const Field& k = p.field();
  const Polynomial<RatFn> g = p.generic();
  const RatFn disc = discriminant_of(g);
  if (disc.is_zero()) throw PreconditionViolation("generic part of p is inseparable; the bad set is infinite");
  std::set<Place> s;
  for (const Place& x : p.override_places()) s.insert(x);
  for (const RatFn& c : g.coeffs())
    for (const Place& x : ratfn_poles(c)) s.insert(x);
  const Divisor dd = ratfn_divisor(disc);
  for (const auto& [x, k2] : dd.support()) s.insert(x);
  s.insert(Place::infinity(k));
  return {s.begin(), s.end()};
}

std::vector<Place> bad_set(const AdelicPoly& p) {
  std::vector<Place> out;
  for (const Place& x : bad_set_candidates(p))
    if (classify_place(p, x) != PlaceClass::IntegralSeparable) out.push_back(x);
  return out;
}

namespace {

// First place in canonical order that is not in `skip`.
Place first_place_outside(const Field& k, const std::vector<Place>& skip) {
  if (k.is_finite()) {
    for (std::uint64_t c = 0; c < k.order(); ++c) {
      const Place x = Place::finite(k.element(c));
      if (std::find(skip.begin(), skip.end(), x) == skip.end()) return x;
    }
    return Place::infinity(k);
  }
  for (std::uint64_t i = 0;; ++i) {
    const Place x = Place::finite(k.nth_element(i));
    if (std::find(skip.begin(), skip.end(), x) == skip.end()) return x;
  }
}

}  // namespace

SeparabilityResult is_separable(const AdelicPoly& p) {
  const Field& k = p.field();
  SeparabilityResult res;
  const Polynomial<RatFn> g = p.generic();
  const auto gen = xgcd(g, g.derivative());
  const std::vector<Place> ov = p.override_places();
  if (gen.gcd.degree() != 0) {
    res.witness = first_place_outside(k, ov);
    return res;
  }
  std::map<Place, XgcdResult<LocalElem>> local;
  for (const Place& x : ov) {
    const LocalPoly px = project_at(p, x);
    auto r = xgcd(px, px.derivative());
    if (r.gcd.degree() != 0) {
      res.witness = x;
      return res;
    }
    local.emplace(x, std::move(r));
  }
  auto assemble = [&](const Polynomial<RatFn>& gp, auto pick) {
    const std::size_t n = static_cast<std::size_t>(p.degree());
    std::vector<Adele> c;
    for (std::size_t i = 0; i < n; ++i) {
      Adele::Overrides o;
      for (const auto& [x, r] : local) o.emplace(x, pick(r)[i]);
      c.push_back(Adele(gp[i], std::move(o)));
    }
    return AdelePoly(Adele::zero(k), std::move(c));
  };
  res.a = assemble(gen.a, [](const XgcdResult<LocalElem>& r) -> const LocalPoly& { return r.a; });
  res.b = assemble(gen.b, [](const XgcdResult<LocalElem>& r) -> const LocalPoly& { return r.b; });
  const AdelePoly check = res.a * p.full() + res.b * p.full().derivative();
  res.verified = check == AdelePoly::constant(Adele::constant(k.one()));
  if (!res.verified) throw InternalInconsistency("separability certificate failed verification");
  res.separable = true;
  return res;
}

bool pointwise_separable(const AdelicPoly& p) {
  if (discriminant_of(p.generic()).is_zero()) return false;
  for (const Place& x : p.override_places())
    if (discriminant(project_at(p, x)).is_zero()) return false;
  return true;
}

LocalDecomposition decompose_at(const AdelicPoly& p, const Place& x, std::int64_t precision) {
  LocalDecomposition d;
  d.x = x;
  d.cls = classify_place(p, x);
  d.poly = project_at(p, x);
  d.precision = precision;
  d.factors = local_decompose(d.poly, precision);
  std::int64_t total = 0;
  for (const LocalFactor& f : d.factors) total += f.e;
  if (total != p.degree()) throw InternalInconsistency("ramification indices at " + x.to_string() + " do not sum to n");
  if (d.cls == PlaceClass::IntegralSeparable) {
    if (static_cast<std::int64_t>(d.factors.size()) != p.degree())
      throw InternalInconsistency("separable place without a full split");
  }
  return d;
}

AdelePoly AlgebraElement::poly() const {
  return AdelePoly(Adele::zero(field()), c);
}

std::string AlgebraElement::to_string() const { return adelic::to_string(poly()); }

AlgebraElement alg_reduce(const AdelePoly& a, const AdelicPoly& p) {
  const AdelePoly r = a % p.full();
  AlgebraElement out;
  for (std::int64_t i = 0; i < p.degree(); ++i) out.c.push_back(r[static_cast<std::size_t>(i)]);
  return out;
}

AlgebraElement alg_embed(const Adele& f, const AdelicPoly& p) {
  AlgebraElement out;
  out.c.assign(static_cast<std::size_t>(p.degree()), Adele::zero(p.field()));
  out.c[0] = f;
  return out;
}

AlgebraElement alg_one(const AdelicPoly& p) { return alg_embed(Adele::constant(p.field().one()), p); }

AlgebraElement alg_add(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.c.size() != b.c.size()) throw PreconditionViolation("algebra elements of different length");
  AlgebraElement out = a;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
  return out;
}

AlgebraElement alg_neg(const AlgebraElement& a) {
  AlgebraElement out = a;
  for (auto& c : out.c) c = -c;
  return out;
}

AlgebraElement alg_mul(const AlgebraElement& a, const AlgebraElement& b, const AdelicPoly& p) {
  return alg_reduce(a.poly() * b.poly(), p);
}

AlgebraElement alg_pow(const AlgebraElement& a, std::int64_t e, const AdelicPoly& p) {
  if (e < 0) return alg_pow(alg_inverse(a, p), -e, p);
  AlgebraElement r = alg_one(p), b = a;
  while (e) {
    if (e & 1) r = alg_mul(r, b, p);
    e >>= 1;
    if (e) b = alg_mul(b, b, p);
  }
  return r;
}

Adele alg_norm(const AlgebraElement& a, const AdelicPoly& p) { return algebra_norm(a.poly(), p.full()); }

bool alg_is_unit(const AlgebraElement& a, const AdelicPoly& p) { return is_idele(alg_norm(a, p)); }

AlgebraElement alg_inverse(const AlgebraElement& a, const AdelicPoly& p) {
  // Cayley-Hamilton: chi(a) = 0 with chi(X) = X^n + ... + c_1 X + c_0.
  const std::vector<Adele> chi = charpoly(multiplication_matrix(a.poly(), p.full()));
  if (!is_idele(chi[0])) throw NotAUnit("element is not a unit");
  AlgebraElement acc = alg_embed(chi.back(), p);
  for (std::size_t i = chi.size() - 1; i-- > 1;) acc = alg_add(alg_mul(acc, a, p), alg_embed(chi[i], p));
  const Adele scale = -chi[0].inverse();
  for (auto& c : acc.c) c *= scale;
  return acc;
}

LocalPoly element_at(const AlgebraElement& a, const Place& x) {
  std::vector<LocalElem> c;
  for (const Adele& ai : a.c) c.push_back(ai.component(x));
  return LocalPoly(LocalElem::zero(a.field()), std::move(c));
}

std::vector<TruncSeries> localize_element(const AlgebraElement& a, const LocalDecomposition& d) {
  const LocalPoly q = element_at(a, d.x);
  std::vector<TruncSeries> out;
  for (const LocalFactor& f : d.factors) out.push_back(eval_at_root(q, f));
  return out;
}

LocalView localize_adaptive(const AlgebraElement& a, const AdelicPoly& p, const Place& x, std::int64_t precision,
                            const std::function<bool(const std::vector<TruncSeries>&)>& ok) {
  std::int64_t n = std::max<std::int64_t>(precision, 1);
  std::vector<std::int64_t> last;
  while (true) {
    LocalView v{decompose_at(p, x, n), {}};
    v.alpha = localize_element(a, v.decomp);
    if (ok(v.alpha)) return v;
    std::vector<std::int64_t> precs;
    for (const auto& s : v.alpha) precs.push_back(s.precision());
    if (n >= kMaxPrecision || precs == last)
      throw PrecisionExhausted("local components at " + x.to_string() + " not determined at precision " +
                               std::to_string(n));
    last = precs;
    n = std::min(kMaxPrecision, 2 * n);
  }
}

namespace {

bool valuations_known(const std::vector<TruncSeries>& alpha) {
  return std::all_of(alpha.begin(), alpha.end(), [](const TruncSeries& s) { return s.is_zero() || !s.known_zero(); });
}

void add_poles(std::set<Place>& s, const AlgebraElement& a) {
  for (const Adele& c : a.c) {
    for (const auto& [x, v] : c.overrides()) s.insert(x);
    if (!c.generic().is_zero())
      for (const Place& x : ratfn_poles(c.generic())) s.insert(x);
  }
}

}  // namespace

std::vector<Place> content_support(const AlgebraElement& a, const AdelicPoly& p) {
  std::set<Place> s;
  for (const Place& x : bad_set(p)) s.insert(x);
  for (const Place& x : p.override_places()) s.insert(x);
  add_poles(s, a);
  const Adele nrm = alg_norm(a, p);
  for (const Place& x : adele_support(nrm)) s.insert(x);
  return {s.begin(), s.end()};
}

ContentReport content_valuation(const AlgebraElement& a, const AdelicPoly& p, std::int64_t precision) {
  const Adele nrm = alg_norm(a, p);
  if (!is_idele(nrm)) throw NotAUnit("element is not a unit: its norm " + nrm.to_string() + " is not an idele");
  ContentReport rep;
  rep.examined = content_support(a, p);
  for (const Place& x : rep.examined) {
    const LocalView v = localize_adaptive(a, p, x, precision, valuations_known);
    std::int64_t local = 0;
    for (std::size_t j = 0; j < v.alpha.size(); ++j) {
      if (v.alpha[j].is_zero()) throw NotAUnit("local component vanishes at " + x.to_string());
      const std::int64_t val = v.alpha[j].valuation();
      local += val;
      if (val != 0) rep.breakdown.push_back({x, v.decomp.factors[j].label, v.decomp.factors[j].e, val});
    }
    const LocalElem nx = nrm.component(x);
    if (!nx.known_zero() && local != nx.valuation())
      throw InternalInconsistency("local valuations at " + x.to_string() + " do not add up to v_x(N(a))");
    rep.total += local;
  }
  if (rep.total != content_idele(nrm)) throw InternalInconsistency("content disagrees with the content of the norm");
  return rep;
}

namespace {

// Per-factor lattice index of alpha on the window [-c, c): the dimension
// difference dim L/(L cap aL) - dim aL/(L cap aL), with L = k[[s]] cut to the
// window and aL spanned by alpha*s^i, i in [0, 2c).
std::int64_t window_index(const TruncSeries& alpha, std::int64_t c, const Field& k) {
  const std::size_t cols = static_cast<std::size_t>(2 * c);
  auto row_of = [&](const TruncSeries& s) {
    std::vector<FieldElem> r(cols, k.zero());
    if (s.known_zero()) return r;
    if (s.first_exp() < -c) throw CutoffTooNarrow("element leaves the jet window");
    for (std::size_t i = 0; i < s.raw().size(); ++i) {
      const std::int64_t ex = s.first_exp() + static_cast<std::int64_t>(i);
      if (ex >= c) break;
      r[static_cast<std::size_t>(ex + c)] = s.raw()[i];
    }
    return r;
  };
  Matrix<FieldElem> lat, img;
  for (std::int64_t i = 0; i < c; ++i) lat.push_back(row_of(TruncSeries::monomial(k.one(), i)));
  for (std::int64_t i = 0; i < 2 * c; ++i) {
    const TruncSeries m = alpha.shifted(i);
    if (m.precision() < c) throw PrecisionExhausted("component known only modulo s^" + std::to_string(m.precision()));
    img.push_back(row_of(m));
  }
  const std::int64_t dl = static_cast<std::int64_t>(rank(lat, cols));
  const std::int64_t da = static_cast<std::int64_t>(rank(img, cols));
  Matrix<FieldElem> both = lat;
  both.insert(both.end(), img.begin(), img.end());
  const std::int64_t ds = static_cast<std::int64_t>(rank(both, cols));
  const std::int64_t di = dl + da - ds;  // dim of the intersection
  return (dl - di) - (da - di);
}

// Bounds on the valuations of the components from coefficient data only:
// v_s(alpha_j) >= min_i (e v_x(a_i) + i v_s(root_j)).
std::int64_t window_bound(const LocalPoly& q, const LocalDecomposition& d, std::int64_t norm_val) {
  std::vector<std::int64_t> lo;
  for (const LocalFactor& f : d.factors) {
    std::int64_t m = kExact;
    const std::int64_t vr = f.root.known_zero() ? 0 : f.root.first_exp();
    for (std::size_t i = 0; i < q.size(); ++i)
      if (!q[i].known_zero())
        m = std::min(m, f.e * q[i].valuation_bound() + static_cast<std::int64_t>(i) * vr);
    lo.push_back(m == kExact ? 0 : m);
  }
  std::int64_t sum_lo = 0;
  for (auto v : lo) sum_lo += v;
  std::int64_t b = 0;
  for (auto v : lo) b = std::max({b, std::abs(v), std::abs(norm_val - (sum_lo - v))});
  return b;
}

}  // namespace

IndexReport content_index(const AlgebraElement& a, const AdelicPoly& p, const std::vector<Place>& window,
                          std::int64_t precision) {
  const Adele nrm = alg_norm(a, p);
  if (!is_idele(nrm)) throw NotAUnit("element is not a unit");
  IndexReport rep;
  const Field& k = p.field();
  for (const Place& x : window) {
    const LocalPoly q = element_at(a, x);
    const LocalDecomposition d0 = decompose_at(p, x, precision);
    const std::int64_t base = window_bound(q, d0, nrm.component(x).valuation()) + p.degree();
    auto index_at = [&](std::int64_t c) -> std::int64_t {
      const LocalView v = localize_adaptive(a, p, x, std::max(precision, 2 * c), [&](const std::vector<TruncSeries>& al) {
        return std::all_of(al.begin(), al.end(), [&](const TruncSeries& s) { return s.precision() >= c; });
      });
      std::int64_t sum = 0;
      for (const auto& al : v.alpha) sum += window_index(al, c, k);
      return sum;
    };
    std::int64_t c = base;
    std::int64_t cur = index_at(c);
    int widen = 0;
    while (true) {
      const std::int64_t wider = index_at(2 * c);
      if (wider == cur) break;
      if (++widen > 1) throw CutoffTooNarrow("index at " + x.to_string() + " changes with the cutoff");
      c *= 2;
      cur = wider;
    }
    rep.widenings = std::max(rep.widenings, widen);
    rep.per_place.push_back({x, cur});
    rep.total += cur;
  }
  return rep;
}

bool is_integral_over_plus(const AlgebraElement& a, const AdelicPoly& p, std::int64_t precision) {
  std::set<Place> s;
  for (const Place& x : bad_set(p)) s.insert(x);
  for (const Place& x : p.override_places()) s.insert(x);
  add_poles(s, a);
  for (const Place& x : s) {
    const LocalView v = localize_adaptive(a, p, x, precision, [](const std::vector<TruncSeries>& al) {
      return std::all_of(al.begin(), al.end(), [](const TruncSeries& t) {
        return t.is_zero() || !t.known_zero() || t.precision() > 0;
      });
    });
    for (const auto& al : v.alpha)
      if (!al.known_zero() && al.valuation() < 0) return false;
  }
  return true;
}

bool charpoly_integral(const AlgebraElement& a, const AdelicPoly& p) {
  const std::vector<Adele> chi = charpoly(multiplication_matrix(a.poly(), p.full()));
  return std::all_of(chi.begin(), chi.end(), [](const Adele& c) { return is_integral(c); });
}

}  // namespace adelic
