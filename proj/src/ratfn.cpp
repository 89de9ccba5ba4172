#include "adelic/ratfn.hpp"

#include <sstream>

namespace adelic {

RatFn::RatFn(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.zero_elem().one_like())) {}

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ZeroInput("rational function with zero denominator");
  canonicalize();
}

void RatFn::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.zero_elem().one_like());
    return;
  }
  if (den_.degree() > 0) {
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  const FieldElem lc = den_.leading();
  if (!lc.is_one()) {
    const FieldElem inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFn RatFn::inverse() const {
  if (is_zero()) throw ZeroInput("inverse of the zero rational function");
  return RatFn(den_, num_);
}

RatFn RatFn::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  return RatFn(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RatFn RatFn::operator-() const {
  RatFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFn operator+(const RatFn& a, const RatFn& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFn(a.num_ + b.num_, a.den_);
  return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFn operator*(const RatFn& a, const RatFn& b) {
  if (a.is_zero() || b.is_zero()) return a.zero_like();
  return RatFn(a.num_ * b.num_, a.den_ * b.den_);
}

FieldElem RatFn::operator()(const FieldElem& a) const {
  const FieldElem d = den_(a);
  if (d.is_zero()) throw ZeroInput("rational function evaluated at a pole");
  return num_(a) / d;
}

std::int64_t RatFn::order_at_zero() const {
  if (is_zero()) throw ZeroInput("order of the zero function");
  return num_.order() - den_.order();
}

FieldElem RatFn::leading_at_zero() const {
  if (is_zero()) throw ZeroInput("leading coefficient of the zero function");
  return num_[static_cast<std::size_t>(num_.order())] / den_[static_cast<std::size_t>(den_.order())];
}

RatFn RatFn::inflate(unsigned k) const {
  auto infl = [k](const Poly& p) {
    std::vector<FieldElem> v(p.is_zero() ? 0 : static_cast<std::size_t>(p.degree()) * k + 1, p.zero_elem());
    for (std::size_t i = 0; i < p.size(); ++i) v[i * k] = p[i];
    return Poly(p.zero_elem(), std::move(v));
  };
  return RatFn(infl(num_), infl(den_));
}

std::string RatFn::to_string(const std::string& var) const {
  const std::string n = adelic::to_string(num_, var);
  if (den_.degree() == 0) return n;
  const std::string d = adelic::to_string(den_, var);
  const bool nc = n.find_first_of("+- ") != std::string::npos;
  const bool dc = d.find_first_of("+-* ") != std::string::npos || d.find('^') != std::string::npos;
  return (nc ? "(" + n + ")" : n) + "/" + (dc ? "(" + d + ")" : d);
}

const FieldElem& Place::point() const {
  if (inf_) throw PreconditionViolation("the place at infinity has no coordinate");
  return a_;
}

std::string Place::to_string() const { return inf_ ? "@inf" : "@" + a_.to_string(); }

std::strong_ordering Place::operator<=>(const Place& o) const {
  if (inf_ != o.inf_) return inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
  if (inf_) return std::strong_ordering::equal;
  return a_ <=> o.a_;
}

Divisor::Divisor(Map m) {
  for (auto& [x, k] : m)
    if (k != 0) m_.emplace(x, k);
}

std::int64_t Divisor::operator[](const Place& x) const {
  auto it = m_.find(x);
  return it == m_.end() ? 0 : it->second;
}

std::int64_t Divisor::degree() const {
  std::int64_t d = 0;
  for (const auto& [x, k] : m_) d += k;
  return d;
}

bool Divisor::is_effective() const {
  for (const auto& [x, k] : m_)
    if (k < 0) return false;
  return true;
}

void Divisor::add(const Place& x, std::int64_t k) {
  if (k == 0) return;
  auto [it, inserted] = m_.emplace(x, k);
  if (!inserted) {
    it->second += k;
    if (it->second == 0) m_.erase(it);
  }
}

bool Divisor::dominates(const Divisor& o) const {
  for (const auto& [x, k] : o.m_)
    if ((*this)[x] < k) return false;
  for (const auto& [x, k] : m_)
    if (k < o[x]) return false;
  return true;
}

std::string Divisor::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [x, k] : m_) {
    if (!first) os << ", ";
    first = false;
    os << x.to_string() << ": " << k;
  }
  os << "}";
  return os.str();
}

std::int64_t ratfn_valuation(const RatFn& f, const Place& x) {
  if (f.is_zero()) throw ZeroInput("valuation of the zero function");
  if (&f.field() != &x.field()) throw FieldMismatch("place and function live over different fields");
  if (x.is_infinite()) return f.den().degree() - f.num().degree();
  const Poly lin = poly_linear(x.point());
  auto order = [&](Poly p) {
    std::int64_t k = 0;
    while (true) {
      auto [q, r] = p.divmod(lin);
      if (!r.is_zero()) return k;
      p = q;
      ++k;
    }
  };
  return order(f.num()) - order(f.den());
}

Divisor ratfn_divisor(const RatFn& f) {
  if (f.is_zero()) throw ZeroInput("divisor of the zero function");
  Divisor d;
  auto add_roots = [&](const Poly& p, std::int64_t sign) {
    if (p.degree() < 1) return;
    SplitResult s = poly_split_roots(p, true);
    for (const FieldElem& r : s.roots) d.add(Place::finite(r), sign);
  };
  add_roots(f.num(), 1);
  add_roots(f.den(), -1);
  d.add(Place::infinity(f.field()), f.den().degree() - f.num().degree());
  return d;
}

std::vector<Place> ratfn_poles(const RatFn& f) {
  std::vector<Place> out;
  if (f.den().degree() > 0) {
    SplitResult s = poly_split_roots(f.den(), true);
    for (const FieldElem& r : distinct_roots(f.den())) out.push_back(Place::finite(r));
    (void)s;
  }
  if (!f.is_zero() && f.num().degree() > f.den().degree()) out.push_back(Place::infinity(f.field()));
  return out;
}

RatFn germ(const RatFn& f, const Place& x) {
  if (!x.is_infinite()) {
    const FieldElem& a = x.point();
    return RatFn(taylor_shift(f.num(), a), taylor_shift(f.den(), a));
  }
  if (f.is_zero()) return f;
  const long dn = f.num().degree(), dd = f.den().degree();
  Poly n = f.num().reversed(static_cast<std::size_t>(dn));
  Poly d = f.den().reversed(static_cast<std::size_t>(dd));
  if (dd > dn) n = n.shifted(static_cast<std::size_t>(dd - dn));
  if (dn > dd) d = d.shifted(static_cast<std::size_t>(dn - dd));
  return RatFn(n, d);
}

RatFn ungerm(const RatFn& g, const Place& x) {
  if (!x.is_infinite()) return RatFn(taylor_shift(g.num(), -x.point()), taylor_shift(g.den(), -x.point()));
  return germ(g, x);  // t -> 1/u is an involution
}

}  // namespace adelic
