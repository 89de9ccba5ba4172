#include "adelic/local.hpp"

#include <algorithm>
#include <numeric>

#include "adelic/linalg.hpp"

namespace adelic {

namespace {

const Field& field_of(const LocalPoly& p) { return p.zero_elem().field(); }

void require_monic(const LocalPoly& p, const char* op) {
  if (p.degree() < 1 || !p.is_monic())
    throw PreconditionViolation(std::string(op) + " needs a monic polynomial of positive degree");
}

void require_exact(const LocalPoly& p, const char* op) {
  for (const auto& c : p.coeffs())
    if (!c.is_exact()) throw PreconditionViolation(std::string(op) + " needs exact coefficients");
}

// Horner evaluation over series.
TruncSeries horner(const SeriesPoly& q, const TruncSeries& x) {
  TruncSeries acc = TruncSeries::zero(x.field());
  for (std::size_t i = q.size(); i-- > 0;) acc = acc * x + q[i];
  return acc;
}

template <class R>
R horner_exact(const Polynomial<R>& q, const R& x) {
  R acc = x.zero_like();
  for (std::size_t i = q.size(); i-- > 0;) acc = acc * x + q[i];
  return acc;
}

SeriesPoly to_series(const LocalPoly& p, std::int64_t precision) {
  std::vector<TruncSeries> c;
  for (const auto& a : p.coeffs()) c.push_back(a.series(precision));
  return SeriesPoly(TruncSeries::zero(field_of(p)), std::move(c));
}

Polynomial<RatFn> to_ratfn_poly(const LocalPoly& p) {
  std::vector<RatFn> c;
  for (const auto& a : p.coeffs()) c.push_back(a.exact());
  return Polynomial<RatFn>(RatFn(field_of(p)), std::move(c));
}

SeriesPoly expand_poly(const Polynomial<RatFn>& q, std::int64_t precision) {
  const Field& k = q.zero_elem().field();
  std::vector<TruncSeries> c;
  for (const auto& a : q.coeffs()) c.push_back(TruncSeries::expand(a, precision));
  return SeriesPoly(TruncSeries::zero(k), std::move(c));
}

// A truncated root, promoted to an exact Laurent polynomial when it is one.
TruncSeries promote_if_exact(const Polynomial<RatFn>& q, const TruncSeries& r) {
  if (r.is_exact()) return r;
  const TruncSeries cand = TruncSeries::from_coeffs(r.field(), r.first_exp(), r.raw());
  RatFn x(r.field());
  if (!cand.known_zero()) {
    Poly body(r.field().zero(), cand.raw());
    const std::int64_t v = cand.first_exp();
    x = v >= 0 ? RatFn(body.shifted(static_cast<std::size_t>(v)))
               : RatFn(body, poly_x(r.field()).pow(static_cast<unsigned>(-v)));
  }
  if (horner_exact(q, x).is_zero()) return cand;
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::string to_string(const LocalPoly& p, const std::string& var) {
  return p.to_string(var, [](const LocalElem& c) { return c.to_string(); });
}

LocalElem discriminant(const LocalPoly& p) {
  require_monic(p, "discriminant");
  return discriminant_of(p);
}

bool is_integral(const LocalPoly& p) {
  for (const auto& c : p.coeffs())
    if (!c.known_zero() && c.valuation() < 0) return false;
  return true;
}

Poly residue_poly(const LocalPoly& p) {
  if (!is_integral(p)) throw PreconditionViolation("residue of a non-integral polynomial");
  const Field& k = field_of(p);
  std::vector<FieldElem> c;
  for (const auto& a : p.coeffs()) c.push_back(a.series(1).coeff(0));
  return Poly(k.zero(), std::move(c));
}

ResidueReport residue_separable(const LocalPoly& p) {
  require_monic(p, "residue_separable");
  require_exact(p, "residue_separable");
  if (!is_integral(p)) throw PreconditionViolation("residue_separable needs integral coefficients");
  ResidueReport r;

  const LocalElem d = discriminant(p);
  if (!d.is_zero()) r.disc_valuation = d.valuation();
  r.disc_unit = r.disc_valuation && *r.disc_valuation == 0;

  r.residue_squarefree = is_squarefree(residue_poly(p));

  const auto b = xgcd(p, p.derivative());
  if (b.gcd.degree() == 0) {
    r.bezout_integral = true;
    for (const LocalPoly* q : {&b.a, &b.b})
      for (const auto& c : q->coeffs())
        if (!c.is_zero() && c.valuation() < 0) r.bezout_integral = false;
  }
  return r;
}

TruncSeries newton_lift(const SeriesPoly& q, const FieldElem& r0, std::int64_t precision) {
  const SeriesPoly dq = q.derivative();
  TruncSeries x = TruncSeries::monomial(r0, 0);
  for (int it = 0; it < 128; ++it) {
    const TruncSeries val = horner(q, x).truncated(precision);
    if (val.known_zero()) return x.truncated(precision);
    const TruncSeries der = horner(dq, x).truncated(precision);
    if (der.known_zero() || der.valuation() != 0)
      throw InternalInconsistency("Newton lifting from a residue root that is not simple");
    x = (x - val * der.inverse(precision)).truncated(precision);
  }
  throw InternalInconsistency("Newton lifting did not converge");
}

std::vector<TruncSeries> hensel_split(const LocalPoly& p, std::int64_t precision) {
  require_monic(p, "hensel_split");
  if (!is_integral(p)) throw PreconditionViolation("hensel_split needs integral coefficients");
  const bool exact = std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const LocalElem& c) { return c.is_exact(); });
  if (exact) {
    const ResidueReport rep = residue_separable(p);
    if (!rep.separable())
      throw WildOrInseparableResidue("residue polynomial is not separable (discriminant valuation " +
                                     (rep.disc_valuation ? std::to_string(*rep.disc_valuation) : std::string("inf")) +
                                     ")");
  } else if (!is_squarefree(residue_poly(p))) {
    throw WildOrInseparableResidue("residue polynomial is not separable");
  }
  const Poly bar = residue_poly(p);
  const SplitResult split = poly_split_roots(bar, true);
  const SeriesPoly ps = to_series(p, precision);
  std::vector<TruncSeries> roots;
  for (const FieldElem& r0 : split.roots) {
    TruncSeries r = newton_lift(ps, r0, precision);
    if (exact) r = promote_if_exact(to_ratfn_poly(p), r);
    roots.push_back(std::move(r));
  }
  return roots;
}

std::vector<TruncSeries> psi_eval(const LocalPoly& q, const std::vector<TruncSeries>& roots) {
  std::vector<TruncSeries> out;
  for (const auto& a : roots) out.push_back(horner(to_series(q, a.precision()), a));
  return out;
}

SeriesPoly psi_interp(const std::vector<TruncSeries>& values, const std::vector<TruncSeries>& roots) {
  if (values.size() != roots.size() || roots.empty())
    throw PreconditionViolation("psi_interp needs one value per root");
  const Field& k = roots.front().field();
  const TruncSeries zero = TruncSeries::zero(k);
  std::int64_t rel = kDefaultRelativePrecision;
  for (const auto& r : roots)
    if (!r.is_exact()) rel = std::min(rel, r.precision());
  for (const auto& v : values)
    if (!v.is_exact()) rel = std::min(rel, v.precision());
  SeriesPoly out(zero);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    SeriesPoly basis = SeriesPoly::constant(values[i]);
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i) continue;
      const TruncSeries diff = roots[i] - roots[j];
      if (diff.known_zero()) throw PrecisionExhausted("roots not separated at the stored precision");
      const TruncSeries inv = diff.inverse(std::max<std::int64_t>(rel, 1));
      basis = basis * SeriesPoly(zero, {(-roots[j]) * inv, inv});
    }
    out += basis;
  }
  return out;
}

namespace {

// Lower hull of {(i, v_i)} over the indices where the coefficient is nonzero.
NewtonPolygon hull_of(const std::vector<std::optional<std::int64_t>>& vals) {
  NewtonPolygon np;
  struct Pt {
    std::int64_t i, v;
  };
  std::vector<Pt> pts;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i]) pts.push_back({static_cast<std::int64_t>(i), *vals[i]});
  if (pts.empty()) throw ZeroInput("Newton polygon of the zero polynomial");
  np.zero_roots = pts.front().i;
  std::vector<Pt> hull;
  for (const Pt& q : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      // drop b when it lies on or above the chord a-q
      if ((b.v - a.v) * (q.i - a.i) >= (q.v - a.v) * (b.i - a.i))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(q);
  }
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const std::int64_t dv = hull[s + 1].v - hull[s].v, di = hull[s + 1].i - hull[s].i;
    const std::int64_t g = std::gcd(dv, di);
    np.segments.push_back({dv / g, di / g, di, hull[s].i});
  }
  return np;
}

NewtonPolygon hull_of(const Polynomial<RatFn>& q) {
  std::vector<std::optional<std::int64_t>> vals;
  for (const auto& c : q.coeffs()) vals.push_back(c.is_zero() ? std::nullopt : std::optional(c.order_at_zero()));
  return hull_of(vals);
}

}  // namespace

NewtonPolygon newton_polygon(const LocalPoly& p) {
  require_monic(p, "newton_polygon");
  require_exact(p, "newton_polygon");
  return hull_of(to_ratfn_poly(p));
}

namespace {

struct Branch {
  std::int64_t e;
  TruncSeries root;  // in the branch uniformizer, tau^e = sigma
  std::int64_t val_h;
  bool zero_root;
};

void puiseux(const Polynomial<RatFn>& q0, bool positive_only, std::int64_t precision, int depth,
             std::vector<Branch>& out) {
  if (depth > 64) throw InternalInconsistency("Newton-Puiseux recursion too deep");
  const Field& k = q0.zero_elem().field();
  Polynomial<RatFn> q = q0;
  const long z = q.order();
  if (z > 1) throw PreconditionViolation("polynomial is not separable over K_x (repeated root 0)");
  if (z == 1) {
    out.push_back({1, TruncSeries::zero(k), 0, true});
    q = q.divmod(Polynomial<RatFn>::x(q.zero_elem())).first;
  }
  if (q.degree() < 1) return;

  const NewtonPolygon np = hull_of(q);
  const std::uint64_t ch = k.characteristic();

  for (const NewtonSegment& seg : np.segments) {
    // root valuation h/e = -slope
    const std::int64_t h = -seg.h, e = seg.e;
    if (positive_only && h <= 0) continue;
    if (ch != 0 && e % static_cast<std::int64_t>(ch) == 0)
      throw UnsupportedWildRamification("ramification index " + std::to_string(e) + " divisible by the characteristic");
    const std::int64_t v0 = q[static_cast<std::size_t>(seg.start)].order_at_zero();
    std::vector<FieldElem> phi;
    for (std::int64_t i = seg.start; i <= seg.start + seg.length; i += e) {
      const RatFn& a = q[static_cast<std::size_t>(i)];
      const bool on = !a.is_zero() && a.order_at_zero() * e == v0 * e - h * (i - seg.start);
      phi.push_back(on ? a.leading_at_zero() : k.zero());
    }
    const SplitResult split = poly_split_roots(Poly(k.zero(), phi), true);
    std::vector<std::pair<FieldElem, std::int64_t>> groups;
    for (const FieldElem& r : split.roots) {
      if (!groups.empty() && groups.back().first == r)
        ++groups.back().second;
      else
        groups.push_back({r, 1});
    }
    for (const auto& [zeta, mu] : groups) {
      const std::vector<FieldElem> cs = kth_roots(zeta, static_cast<long>(e));
      if (cs.empty()) {
        std::vector<FieldElem> c(static_cast<std::size_t>(e) + 1, k.zero());
        c[0] = -zeta;
        c.back() = k.one();
        throw NeedsLargerField("no " + std::to_string(e) + "-th root of " + zeta.to_string() + " in " + k.name(),
                               to_string(irreducible_factor(Poly(k.zero(), c)), "X"));
      }
      const FieldElem& c = cs.front();
      // Q1(T1) = s^{-m} Q(s^h (c + T1)) with sigma = s^e.
      const std::int64_t m = e * v0 + h * seg.start;
      const RatFn zero(k);
      const Polynomial<RatFn> lin(zero, {RatFn::constant(c), zero.one_like()});
      Polynomial<RatFn> q1(zero), pw = Polynomial<RatFn>::constant(zero.one_like());
      const RatFn sv = RatFn::variable(k);
      for (std::size_t i = 0; i < q.size(); ++i) {
        const RatFn scale = q[i].inflate(static_cast<unsigned>(e)) * sv.pow(h * static_cast<std::int64_t>(i) - m);
        q1 += pw.scaled(scale);
        pw = pw * lin;
      }
      const TruncSeries lead = TruncSeries::monomial(k.one(), h);
      const TruncSeries cc = TruncSeries::monomial(c, 0);
      if (mu == 1) {
        TruncSeries r = newton_lift(expand_poly(q1, precision), k.zero(), precision);
        r = promote_if_exact(q1, r);
        out.push_back({e, lead * (cc + r), h, false});
      } else {
        std::vector<Branch> sub;
        puiseux(q1, true, precision, depth + 1, sub);
        std::int64_t total = 0;
        for (const Branch& b : sub) total += b.e;
        if (total != mu) throw InternalInconsistency("Newton-Puiseux branch count mismatch");
        for (const Branch& b : sub) {
          const TruncSeries inner = b.root;
          const TruncSeries up = TruncSeries::monomial(k.one(), h * b.e);
          out.push_back({e * b.e, up * (cc + inner), h * b.e, false});
        }
      }
    }
  }
}

}  // namespace

std::vector<LocalFactor> local_factor(const LocalPoly& p, std::int64_t precision) {
  require_monic(p, "local_factor");
  require_exact(p, "local_factor");
  if (discriminant(p).is_zero()) {
    const std::uint64_t ch = field_of(p).characteristic();
    if (p.derivative().is_zero()) throw UnsupportedWildRamification("polynomial is inseparable");
    for (const NewtonSegment& seg : newton_polygon(p).segments)
      if (ch != 0 && seg.e % static_cast<std::int64_t>(ch) == 0)
        throw UnsupportedWildRamification("ramification index " + std::to_string(seg.e) +
                                          " divisible by the characteristic");
    throw PreconditionViolation("polynomial is not separable over K_x");
  }
  std::vector<Branch> branches;
  puiseux(to_ratfn_poly(p), false, precision, 0, branches);
  std::int64_t total = 0;
  std::vector<LocalFactor> out;
  for (const Branch& b : branches) {
    total += b.e;
    LocalFactor f;
    f.label = static_cast<int>(out.size()) + 1;
    f.e = b.e;
    f.root = b.root;
    f.val_h = b.val_h;
    f.zero_root = b.zero_root;
    out.push_back(std::move(f));
  }
  if (total != p.degree()) throw InternalInconsistency("local factor degrees do not add up to deg P");
  return out;
}

std::vector<LocalFactor> local_decompose(const LocalPoly& p, std::int64_t precision) {
  require_monic(p, "local_decompose");
  require_exact(p, "local_decompose");
  if (is_integral(p) && residue_separable(p).separable()) {
    std::vector<LocalFactor> out;
    for (TruncSeries& r : hensel_split(p, precision)) {
      LocalFactor f;
      f.label = static_cast<int>(out.size()) + 1;
      f.e = 1;
      f.zero_root = r.is_zero();
      f.val_h = r.known_zero() ? 0 : r.valuation();
      f.root = std::move(r);
      out.push_back(std::move(f));
    }
    return out;
  }
  return local_factor(p, precision);
}

TruncSeries eval_at_root(const LocalPoly& q, const LocalFactor& f) {
  const Field& k = field_of(q);
  const std::int64_t abs_s = f.root.precision();
  std::int64_t prec_t = kExact;
  if (abs_s < kExact) prec_t = floor_div(abs_s, f.e) + 1;
  // Coefficients with poles need extra terms to compensate.
  std::int64_t worst = 0;
  for (const auto& c : q.coeffs())
    if (!c.is_zero() && !c.known_zero()) worst = std::min(worst, c.valuation_bound());
  std::int64_t deficit = 0;
  if (!f.root.known_zero() && f.root.first_exp() < 0)
    deficit = -f.root.first_exp() * static_cast<std::int64_t>(q.degree());
  prec_t = prec_add(prec_t, (deficit + f.e - 1) / f.e - worst);
  TruncSeries acc = TruncSeries::zero(k);
  for (std::size_t i = q.size(); i-- > 0;) acc = acc * f.root + q[i].series(prec_t).inflated(f.e);
  return acc;
}

std::int64_t factor_valuation(const LocalPoly& q, const LocalFactor& f) { return eval_at_root(q, f).valuation(); }

std::string LocalFactor::to_string(const std::string& place) const {
  return "(x=" + place + ", j=" + std::to_string(label) + ", e=" + std::to_string(e) + ", root=" + root.to_string("s") +
         ")";
}

}  // namespace adelic
