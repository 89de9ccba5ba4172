#include "adelic/cover.hpp"

#include <algorithm>
#include <set>

#include "adelic/linalg.hpp"
#include "adelic/parse.hpp"

namespace adelic {

namespace {

LocalPoly project_sigma(const SigmaPoly& P, const Place& x) {
  std::vector<LocalElem> c;
  for (const RatFn& a : P.coeffs()) c.push_back(LocalElem(germ(a, x)));
  return LocalPoly(LocalElem::zero(x.field()), std::move(c));
}

std::set<std::int64_t> subset_sums(const std::vector<std::int64_t>& parts) {
  std::set<std::int64_t> s{0};
  for (std::int64_t p : parts) {
    std::set<std::int64_t> next = s;
    for (std::int64_t v : s) next.insert(v + p);
    s = std::move(next);
  }
  return s;
}

std::optional<std::string> specialization_certificate(const SigmaPoly& P) {
  const Field& k = P.zero_elem().field();
  if (!k.is_finite() || k.order() > 64) return std::nullopt;
  for (const RatFn& c : P.coeffs())
    if (!c.is_polynomial()) return std::nullopt;
  for (std::uint64_t i = 0; i < k.order(); ++i) {
    const FieldElem a = k.element(i);
    std::vector<FieldElem> c;
    for (const RatFn& ci : P.coeffs()) c.push_back(ci(a));
    const Poly f(k.zero(), std::move(c));
    if (irreducible_factor(f).degree() == f.degree()) return "P(" + a.to_string() + ", U) is irreducible over " + k.name();
  }
  return std::nullopt;
}

std::optional<std::string> local_degree_certificate(const SigmaPoly& P, const std::vector<Place>& places) {
  const std::int64_t d = P.degree();
  std::set<std::int64_t> possible;
  for (std::int64_t i = 1; i < d; ++i) possible.insert(i);
  std::string used;
  for (const Place& x : places) {
    std::vector<LocalFactor> fs;
    try {
      fs = local_decompose(project_sigma(P, x), kDefaultPrecision);
    } catch (const Error&) {
      continue;
    }
    std::vector<std::int64_t> es;
    for (const auto& f : fs) es.push_back(f.e);
    const auto sums = subset_sums(es);
    std::set<std::int64_t> keep;
    for (std::int64_t v : possible)
      if (sums.count(v)) keep.insert(v);
    if (keep.size() < possible.size()) used += (used.empty() ? "" : ", ") + x.to_string();
    possible = std::move(keep);
    if (possible.empty()) return "local factor degrees at " + used + " admit no proper factor";
  }
  return std::nullopt;
}

}  // namespace

CoverSpec CoverSpec::make(const SigmaPoly& P) {
  if (P.degree() < 1 || !P.is_monic()) throw PreconditionViolation("cover polynomial must be monic of degree >= 1");
  CoverSpec c;
  c.P_ = P;
  if (xgcd(P, P.derivative()).gcd.degree() != 0) throw PreconditionViolation("cover polynomial is not separable");
  if (P.degree() == 1) {
    c.cert_ = "degree 1";
    return c;
  }
  if (auto s = specialization_certificate(P)) {
    c.cert_ = *s;
    return c;
  }
  std::vector<Place> places = c.special_places();
  const Field& k = c.field();
  if (k.is_finite() && k.order() <= 64)
    for (std::uint64_t i = 0; i < k.order(); ++i) places.push_back(Place::finite(k.element(i)));
  if (auto s = local_degree_certificate(P, places)) {
    c.cert_ = *s;
    return c;
  }
  throw PreconditionViolation("could not certify that the cover polynomial is irreducible");
}

std::vector<Place> CoverSpec::special_places() const {
  std::set<Place> s{Place::infinity(field())};
  for (const RatFn& c : P_.coeffs())
    if (!c.is_zero())
      for (const Place& x : ratfn_poles(c)) s.insert(x);
  const RatFn disc = discriminant_of(P_);
  const Divisor div = ratfn_divisor(disc);
  for (const auto& [x, m] : div.support()) s.insert(x);
  return {s.begin(), s.end()};
}

bool OmegaElem::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const RatFn& a) { return a.is_zero(); });
}

std::string OmegaElem::to_string(const std::string& var) const {
  const SigmaPoly f(c.front().zero_like(), c);
  return adelic::to_string(f, var);
}

OmegaElem omega_from_poly(const SigmaPoly& f, const CoverSpec& cover) {
  const SigmaPoly r = f % cover.poly();
  OmegaElem out;
  for (std::int64_t i = 0; i < cover.degree(); ++i) out.c.push_back(r[static_cast<std::size_t>(i)]);
  return out;
}

OmegaElem omega_constant(const RatFn& f, const CoverSpec& cover) {
  return omega_from_poly(SigmaPoly::constant(f), cover);
}

OmegaElem omega_add(const OmegaElem& a, const OmegaElem& b) {
  OmegaElem out = a;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
  return out;
}

namespace {

SigmaPoly as_poly(const OmegaElem& a) { return SigmaPoly(a.c.front().zero_like(), a.c); }

}  // namespace

OmegaElem omega_mul(const OmegaElem& a, const OmegaElem& b, const CoverSpec& cover) {
  return omega_from_poly(as_poly(a) * as_poly(b), cover);
}

OmegaElem omega_inverse(const OmegaElem& a, const CoverSpec& cover) {
  if (a.is_zero()) throw ZeroInput("inverse of zero in Omega");
  const auto r = xgcd(as_poly(a), cover.poly());
  if (r.gcd.degree() != 0) throw InternalInconsistency("nonzero element of Omega is not invertible");
  return omega_from_poly(r.a, cover);
}

namespace {

struct OmegaValue {
  OmegaElem e;
  const CoverSpec* cover;

  OmegaValue operator-() const {
    OmegaElem out = e;
    for (auto& c : out.c) c = -c;
    return {out, cover};
  }
  friend OmegaValue operator+(const OmegaValue& a, const OmegaValue& b) { return {omega_add(a.e, b.e), a.cover}; }
  friend OmegaValue operator-(const OmegaValue& a, const OmegaValue& b) { return a + (-b); }
  friend OmegaValue operator*(const OmegaValue& a, const OmegaValue& b) {
    return {omega_mul(a.e, b.e, *a.cover), a.cover};
  }
};

struct OmegaCtx {
  const CoverSpec& cover;
  OmegaValue lift(const RatFn& f) { return {omega_constant(f, cover), &cover}; }
  OmegaValue number(const mpz_class& n) { return lift(RatFn::constant(cover.field().from_rational(mpq_class(n)))); }
  OmegaValue var(const std::string& name) {
    const Field& k = cover.field();
    if (name == "u") return lift(RatFn::variable(k));
    if (name == "w" || name == "U") return {omega_from_poly(SigmaPoly::x(RatFn(k)), cover), &cover};
    if (name == "z" && k.is_finite() && k.degree() > 1) return lift(RatFn::constant(k.generator()));
    throw ParseError("unknown symbol '" + name + "' in a function on Y (expected u and w)");
  }
  OmegaValue adele(const Expr&) { throw ParseError("adele literal not allowed in a function on Y"); }
  OmegaValue div(const OmegaValue& a, const OmegaValue& b) {
    if (b.e.is_zero()) throw ParseError("division by zero");
    return {omega_mul(a.e, omega_inverse(b.e, cover), cover), &cover};
  }
  OmegaValue pow(const OmegaValue& a, std::int64_t e) {
    OmegaElem base = a.e;
    if (e < 0) {
      if (base.is_zero()) throw ParseError("division by zero");
      base = omega_inverse(base, cover);
      e = -e;
    }
    OmegaElem r = omega_constant(RatFn::constant(cover.field().one()), cover);
    for (std::int64_t i = 0; i < e; ++i) r = omega_mul(r, base, cover);
    return {r, &cover};
  }
};

}  // namespace

OmegaElem parse_omega(std::string_view text, const CoverSpec& cover) {
  OmegaCtx ctx{cover};
  return evaluate<OmegaValue>(*parse_expr(text), ctx).e;
}

std::string PlaceY::to_string() const { return "(" + x.to_string() + ", fiber " + std::to_string(label()) + ")"; }

std::vector<PlaceY> fibers(const CoverSpec& cover, const Place& x, std::int64_t precision) {
  std::vector<PlaceY> out;
  std::int64_t total = 0;
  for (LocalFactor& f : local_decompose(project_sigma(cover.poly(), x), precision)) {
    total += f.e;
    out.push_back({x, std::move(f)});
  }
  if (total != cover.degree())
    throw InternalInconsistency("fiber degrees over " + x.to_string() + " do not add up to deg P");
  return out;
}

TruncSeries expand_at(const OmegaElem& f, const PlaceY& y) {
  std::vector<LocalElem> c;
  for (const RatFn& a : f.c) c.push_back(LocalElem(germ(a, y.x)));
  return eval_at_root(LocalPoly(LocalElem::zero(y.x.field()), std::move(c)), y.factor);
}

namespace {

AlgebraElement evaluate_at_image(const std::vector<RatFn>& coeffs, const AlgebraElement& image, const AdelicPoly& p) {
  AlgebraElement acc = alg_embed(Adele(RatFn(p.field())), p);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = alg_add(alg_mul(acc, image, p), alg_embed(Adele(coeffs[i]), p));
  return acc;
}

bool known_zero(const Adele& a) {
  if (!a.generic().is_zero()) return false;
  for (const auto& [x, v] : a.overrides())
    if (!v.known_zero()) return false;
  return true;
}

}  // namespace

Embedding build_pOmega(const CoverSpec& cover, std::int64_t precision) {
  Embedding emb;
  emb.cover = cover;
  emb.p = AdelicPoly::global(cover.poly());
  emb.image = alg_reduce(AdelePoly::x(Adele(RatFn(cover.field()))), emb.p);
  emb.precision = precision;
  return emb;
}

Embedding make_embedding(const CoverSpec& cover, const AdelicPoly& p, const AlgebraElement& image,
                         std::int64_t precision) {
  if (&cover.field() != &p.field()) throw FieldMismatch("cover and target over different fields");
  if (static_cast<std::int64_t>(image.c.size()) != p.degree())
    throw PreconditionViolation("image of U must have " + std::to_string(p.degree()) + " coefficients");
  const AlgebraElement value = evaluate_at_image(cover.poly().coeffs(), image, p);
  for (const Adele& c : value.c)
    if (!known_zero(c)) throw PreconditionViolation("the image of U is not a root of P in the target algebra");
  Embedding emb;
  emb.cover = cover;
  emb.p = p;
  emb.image = image;
  emb.precision = precision;
  return emb;
}

Embedding make_routed_embedding(const CoverSpec& cover, const AdelicPoly& p, const AlgebraElement& image,
                                const std::map<Place, std::vector<int>>& routes, std::int64_t precision) {
  AlgebraElement img = image;
  for (const auto& [x, route] : routes) {
    const LocalDecomposition d = decompose_at(p, x, precision);
    const std::vector<PlaceY> ys = fibers(cover, x, precision);
    if (route.size() != d.factor_count())
      throw PreconditionViolation("route at " + x.to_string() + " must name " + std::to_string(d.factor_count()) +
                                  " slots");
    std::vector<TruncSeries> roots, values;
    for (std::size_t j = 0; j < route.size(); ++j) {
      if (d.factors[j].e != 1) throw PreconditionViolation("routes are supported only at unramified places");
      if (route[j] < 1 || route[j] > static_cast<int>(ys.size()))
        throw PreconditionViolation("route at " + x.to_string() + " names a missing fiber");
      const PlaceY& y = ys[static_cast<std::size_t>(route[j] - 1)];
      if (y.e() != 1) throw PreconditionViolation("routes are supported only at unramified places");
      roots.push_back(d.factors[j].root);
      values.push_back(y.factor.root);
    }
    const SeriesPoly q = psi_interp(values, roots);
    for (std::size_t i = 0; i < img.c.size(); ++i) {
      Adele::Overrides o = img.c[i].overrides();
      o[x] = LocalElem(q[i]);
      img.c[i] = Adele(img.c[i].generic(), std::move(o));
    }
  }
  Embedding emb = make_embedding(cover, p, img, precision);
  emb.routes = routes;
  return emb;
}

AlgebraElement embed_omega(const Embedding& emb, const OmegaElem& f) { return evaluate_at_image(f.c, emb.image, emb.p); }

namespace {

bool agrees(const TruncSeries& a, const TruncSeries& b) {
  const std::int64_t n = std::min(a.precision(), b.precision());
  if (n >= kExact) return a == b;
  return a.truncated(n) == b.truncated(n);
}

// How many fibers the slot value matches, and the last one matched.
std::vector<std::size_t> matches(const TruncSeries& alpha, std::int64_t e_slot, const std::vector<PlaceY>& ys) {
  std::vector<std::size_t> out;
  const Field& k = alpha.field();
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const std::int64_t ey = ys[i].e();
    if (e_slot % ey != 0) continue;
    for (const FieldElem& zeta : kth_roots(k.one(), ey)) {
      if (agrees(ys[i].factor.root.scaled_variable(zeta).inflated(e_slot / ey), alpha)) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<PlaceY> compute_sj(const Embedding& emb, const Place& x) {
  for (std::int64_t n = std::max<std::int64_t>(emb.precision, 4);; n *= 2) {
    const LocalDecomposition d = decompose_at(emb.p, x, n);
    const std::vector<TruncSeries> alpha = localize_element(emb.image, d);
    const std::vector<PlaceY> ys = fibers(emb.cover, x, n);
    std::vector<PlaceY> out;
    bool ambiguous = false;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      const auto m = matches(alpha[j], d.factors[j].e, ys);
      if (m.size() != 1) {
        if (m.empty()) throw RoutingAmbiguous("slot " + std::to_string(j + 1) + " at " + x.to_string() +
                                              " matches no point of Y");
        ambiguous = true;
        break;
      }
      out.push_back(ys[m.front()]);
    }
    if (!ambiguous) return out;
    if (2 * n > kMaxPrecision / 4)
      throw RoutingAmbiguous("slots at " + x.to_string() + " match several points of Y at precision " +
                             std::to_string(n));
  }
}

InjectivityReport check_injectivity(const Embedding& emb) {
  std::set<Place> places;
  for (const Place& x : bad_set(emb.p)) places.insert(x);
  for (const Place& x : emb.p.override_places()) places.insert(x);
  for (const Adele& c : emb.image.c)
    for (const Place& x : c.override_places()) places.insert(x);
  for (const Place& x : emb.cover.special_places()) places.insert(x);
  InjectivityReport rep;
  for (const Place& x : places) {
    rep.checked.push_back(x);
    const std::vector<PlaceY> hit = compute_sj(emb, x);
    if (auto it = emb.routes.find(x); it != emb.routes.end()) {
      for (std::size_t j = 0; j < hit.size(); ++j)
        if (hit[j].label() != it->second[j])
          throw InternalInconsistency("slot " + std::to_string(j + 1) + " at " + x.to_string() +
                                      " does not read the routed fiber");
    }
    for (const PlaceY& y : fibers(emb.cover, x, emb.precision))
      if (std::find(hit.begin(), hit.end(), y) == hit.end()) rep.missed.push_back(y);
  }
  rep.injective = rep.missed.empty();
  return rep;
}

ContentReport content_of_function(const Embedding& emb, const OmegaElem& f) {
  if (f.is_zero()) throw ZeroInput("content of the zero function");
  return content_valuation(embed_omega(emb, f), emb.p, emb.precision);
}

ProductFormulaReport verify_product_formula(const Embedding& emb, const std::vector<OmegaElem>& tests) {
  ProductFormulaReport rep;
  for (const OmegaElem& f : tests) {
    ContentReport c = content_of_function(emb, f);
    if (c.total != 0) rep.pass = false;
    rep.results.emplace_back(f, std::move(c));
  }
  return rep;
}

namespace {

std::int64_t valuation_at(const OmegaElem& f, const PlaceY& y0, const CoverSpec& cover, std::int64_t precision) {
  PlaceY y = y0;
  for (std::int64_t n = precision;; n *= 2) {
    const TruncSeries s = expand_at(f, y);
    if (s.is_zero()) throw ZeroInput("valuation of the zero function");
    if (!s.known_zero()) return s.valuation();
    if (n >= kMaxPrecision) throw PrecisionExhausted("valuation of " + f.to_string() + " at " + y.to_string());
    y = fibers(cover, y.x, 2 * n)[static_cast<std::size_t>(y.label() - 1)];
  }
}

}  // namespace

std::vector<std::pair<PlaceY, std::int64_t>> omega_divisor(const OmegaElem& f, const CoverSpec& cover,
                                                           const std::vector<Place>& places, std::int64_t precision) {
  std::vector<std::pair<PlaceY, std::int64_t>> out;
  for (const Place& x : places)
    for (const PlaceY& y : fibers(cover, x, precision)) {
      const std::int64_t v = valuation_at(f, y, cover, precision);
      if (v != 0) out.emplace_back(y, v);
    }
  return out;
}

namespace {

struct Constraint {
  PlaceY y;
  std::int64_t lower;  // v_y(N) >= lower
};

// Coefficient rows of the numerator basis at each constrained point, for the
// exponents below the required bound.
struct Expansions {
  std::vector<std::vector<TruncSeries>> at;  // per constraint, per basis element
  std::int64_t low = 0;
};

OmegaElem basis_element(const CoverSpec& cover, std::size_t i, std::int64_t kdeg) {
  const Field& k = cover.field();
  OmegaElem f;
  f.c.assign(static_cast<std::size_t>(cover.degree()), RatFn(k));
  f.c[i] = RatFn::variable(k).pow(kdeg);
  return f;
}

std::vector<FieldElem> row_for(const std::vector<TruncSeries>& exps, std::int64_t ell) {
  std::vector<FieldElem> r;
  for (const auto& s : exps) r.push_back(s.coeff(ell));
  return r;
}

FieldElem dot(const std::vector<FieldElem>& a, const std::vector<FieldElem>& b) {
  FieldElem s = a.front().field().zero();
  for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
  return s;
}

std::optional<std::vector<FieldElem>> solve_witness(const std::vector<Constraint>& cons, std::size_t missed_idx,
                                                    const Expansions& ex, std::size_t dim, const Field& k) {
  Matrix<FieldElem> base;
  for (std::size_t c = 0; c < cons.size(); ++c) {
    if (c == missed_idx) continue;
    for (std::int64_t ell = ex.low; ell < cons[c].lower; ++ell) base.push_back(row_for(ex.at[c], ell));
  }
  const std::int64_t top = cons[missed_idx].lower;
  // Smallest pole first: ask for v_y(N) = ell with ell as large as possible.
  for (std::int64_t ell = top - 1; ell >= ex.low; --ell) {
    Matrix<FieldElem> m = base;
    for (std::int64_t l = ex.low; l < ell; ++l) m.push_back(row_for(ex.at[missed_idx], l));
    const auto ker = m.empty() ? kernel(Matrix<FieldElem>{std::vector<FieldElem>(dim, k.zero())}, dim, k)
                               : kernel(m, dim, k);
    const std::vector<FieldElem> target = row_for(ex.at[missed_idx], ell);
    for (const auto& v : ker)
      if (!dot(target, v).is_zero()) return v;
  }
  return std::nullopt;
}

}  // namespace

std::optional<OmegaElem> find_witness(const Embedding& emb, const PlaceY& missed, int bound) {
  const std::vector<PlaceY> hit = compute_sj(emb, missed.x);
  if (std::find(hit.begin(), hit.end(), missed) != hit.end())
    throw PreconditionViolation(missed.to_string() + " is read by a slot; nothing to witness");
  return function_with_single_pole(emb.cover, missed, bound, emb.precision);
}

std::optional<OmegaElem> function_with_single_pole(const CoverSpec& cover, const PlaceY& missed, int bound,
                                                   std::int64_t precision) {
  const Field& k = cover.field();
  std::set<Place> sp;
  for (const Place& x : cover.special_places()) sp.insert(x);
  sp.insert(missed.x);
  const std::vector<Place> S(sp.begin(), sp.end());
  const bool at_infinity = missed.x.is_infinite();
  const std::size_t d = static_cast<std::size_t>(cover.degree());

  for (int m = at_infinity ? 0 : 1; m <= bound; ++m) {
    for (int D = 0; D <= bound; ++D) {
      // v_y(f) = v_y(N) - m e_y v_x(u - a)
      std::vector<Constraint> cons;
      std::size_t missed_idx = 0;
      std::int64_t need = 0;
      for (const Place& x : S) {
        std::int64_t vx = 0;
        if (!at_infinity) vx = x == missed.x ? 1 : (x.is_infinite() ? -1 : 0);
        for (const PlaceY& y : fibers(cover, x, precision)) {
          if (y == missed) missed_idx = cons.size();
          cons.push_back({y, m * y.e() * vx});
          need = std::max(need, m * y.e() * vx);
        }
      }
      const std::size_t dim = d * static_cast<std::size_t>(D + 1);
      Expansions ex;
      for (std::int64_t prec = std::max<std::int64_t>(precision, need + 8);; prec *= 2) {
        ex.at.assign(cons.size(), {});
        ex.low = 0;
        bool enough = true;
        for (std::size_t c = 0; c < cons.size(); ++c) {
          const PlaceY y = fibers(cover, cons[c].y.x, prec)[static_cast<std::size_t>(cons[c].y.label() - 1)];
          for (std::size_t i = 0; i < d; ++i)
            for (int kd = 0; kd <= D; ++kd) {
              TruncSeries s = expand_at(basis_element(cover, i, kd), y);
              ex.low = std::min(ex.low, s.valuation_bound());
              if (s.precision() < cons[c].lower) enough = false;
              ex.at[c].push_back(std::move(s));
            }
        }
        if (enough) break;
        if (prec >= kMaxPrecision) throw PrecisionExhausted("witness search needs more precision");
      }
      const auto v = solve_witness(cons, missed_idx, ex, dim, k);
      if (!v) continue;
      // monic in the last nonzero coordinate
      FieldElem lead = k.zero();
      for (const auto& c : *v)
        if (!c.is_zero()) lead = c;
      const FieldElem inv = lead.inverse();
      OmegaElem f;
      f.c.assign(d, RatFn(k));
      const RatFn den = at_infinity ? RatFn::constant(k.one())
                                    : (RatFn::variable(k) - RatFn::constant(missed.x.point())).pow(m);
      for (std::size_t i = 0; i < d; ++i) {
        RatFn num(k);
        for (int kd = 0; kd <= D; ++kd)
          num += RatFn::constant((*v)[i * static_cast<std::size_t>(D + 1) + static_cast<std::size_t>(kd)] * inv) *
                 RatFn::variable(k).pow(kd);
        f.c[i] = num / den;
      }
      // exact check of the divisor over the special places
      for (const auto& [y, val] : omega_divisor(f, cover, S, precision)) {
        if (y == missed ? val >= 0 : val < 0)
          throw InternalInconsistency("witness candidate " + f.to_string() + " has the wrong divisor");
      }
      if (valuation_at(f, missed, cover, precision) >= 0)
        throw InternalInconsistency("witness candidate " + f.to_string() + " has no pole at " + missed.to_string());
      return f;
    }
  }
  return std::nullopt;
}

std::vector<OmegaElem> default_tests(const Embedding& emb) {
  const CoverSpec& cover = emb.cover;
  const Field& k = cover.field();
  std::vector<OmegaElem> out;
  auto add = [&](const std::string& text) {
    OmegaElem f = parse_omega(text, cover);
    if (f.is_zero() || std::find(out.begin(), out.end(), f) != out.end()) return;
    try {
      content_of_function(emb, f);
    } catch (const NeedsLargerField&) {
      return;
    }
    out.push_back(std::move(f));
  };
  std::vector<std::string> small;
  for (std::uint64_t i = 0; i < std::min<std::uint64_t>(3, k.is_finite() ? k.order() : 3); ++i)
    small.push_back("(" + k.nth_element(i).to_string() + ")");
  for (const auto& a : small) add("w + " + a);
  for (const auto& a : small) add("u - " + a);
  for (std::size_t i = 0; i < 2 && i < small.size(); ++i)
    for (std::size_t j = 0; j < 2 && j < small.size(); ++j) add("(w + " + small[i] + ") / (u - " + small[j] + ")");
  return out;
}

Verdict classify_embedding(const Embedding& emb, const std::vector<OmegaElem>& tests, int bound) {
  Verdict v;
  v.d = emb.cover.degree();
  v.n = emb.p.degree();
  const InjectivityReport inj = check_injectivity(emb);
  v.contents = verify_product_formula(emb, tests);
  v.missed = inj.missed;
  if (inj.injective) {
    v.discrete = true;
    v.degree_bound_ok = v.d <= v.n;
    if (!v.degree_bound_ok) throw InternalInconsistency("discrete embedding with deg Omega > n");
    if (!v.contents.pass) throw InternalInconsistency("discrete embedding violates the product formula");
    return v;
  }
  v.degree_bound_ok = v.d <= v.n;
  for (const PlaceY& y : inj.missed) {
    v.witness = find_witness(emb, y, bound);
    if (v.witness) break;
  }
  if (!v.witness)
    throw WitnessNotFound("no witness function within bound " + std::to_string(bound) + " for " +
                          inj.missed.front().to_string());
  v.witness_content = content_of_function(emb, *v.witness).total;
  if (v.witness_content <= 0)
    throw InternalInconsistency("witness " + v.witness->to_string() + " has content " +
                                std::to_string(v.witness_content));
  return v;
}

}  // namespace adelic
