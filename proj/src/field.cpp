#include "adelic/field.hpp"

#include <charconv>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include "adelic/errors.hpp"

namespace adelic {

namespace {

using RawPoly = std::vector<std::uint64_t>;  // ascending, over F_p

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>((unsigned __int128)r * b % p);
    b = static_cast<std::uint64_t>((unsigned __int128)b * b % p);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void trim(RawPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

RawPoly raw_mulmod(const RawPoly& a, const RawPoly& b, const RawPoly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  RawPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  // f is monic
  const std::size_t n = f.size() - 1;
  for (std::size_t k = r.size(); k-- > n;) {
    const std::uint64_t c = r[k];
    if (!c) continue;
    for (std::size_t i = 0; i <= n; ++i) r[k - n + i] = (r[k - n + i] + (p - c) * f[i]) % p;
  }
  r.resize(std::min(r.size(), n));
  trim(r);
  return r;
}

RawPoly raw_powmod(RawPoly b, std::uint64_t e, const RawPoly& f, std::uint64_t p) {
  RawPoly r{1};
  while (e) {
    if (e & 1) r = raw_mulmod(r, b, f, p);
    b = raw_mulmod(b, b, f, p);
    e >>= 1;
  }
  return r;
}

RawPoly raw_mod(RawPoly a, const RawPoly& b, std::uint64_t p) {
  trim(a);
  const std::uint64_t inv_lc = mod_pow(b.back(), p - 2, p);
  const std::size_t n = b.size() - 1;
  while (a.size() > n) {
    const std::uint64_t c = a.back() * inv_lc % p;
    const std::size_t shift = a.size() - 1 - n;
    for (std::size_t i = 0; i <= n; ++i) a[shift + i] = (a[shift + i] + (p - c) * b[i] % p) % p;
    trim(a);
  }
  return a;
}

RawPoly raw_gcd(RawPoly a, RawPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RawPoly r = raw_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's irreducibility test.
bool raw_irreducible(const RawPoly& f, std::uint64_t p) {
  const int m = static_cast<int>(f.size()) - 1;
  if (m == 1) return true;
  const RawPoly x{0, 1};
  auto x_pow_p_k = [&](int k) {
    RawPoly r = x;
    for (int i = 0; i < k; ++i) r = raw_powmod(r, p, f, p);
    return r;
  };
  auto minus_x = [&](RawPoly r) {
    if (r.size() < 2) r.resize(2, 0);
    r[1] = (r[1] + p - 1) % p;
    trim(r);
    return r;
  };
  if (!minus_x(x_pow_p_k(m)).empty()) return false;
  for (int r = 2; r <= m; ++r) {
    if (m % r != 0 || !is_prime(static_cast<std::uint64_t>(r))) continue;
    RawPoly g = raw_gcd(f, minus_x(x_pow_p_k(m / r)), p);
    if (g.size() > 1) return false;
  }
  return true;
}

RawPoly smallest_irreducible(std::uint64_t p, int m) {
  std::uint64_t count = 1;
  for (int i = 0; i < m; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    RawPoly f(static_cast<std::size_t>(m) + 1, 0);
    std::uint64_t v = idx;
    for (int i = 0; i < m; ++i) {
      f[static_cast<std::size_t>(i)] = v % p;
      v /= p;
    }
    f[static_cast<std::size_t>(m)] = 1;
    if (f[0] == 0) continue;
    if (raw_irreducible(f, p)) return f;
  }
  throw Error("no irreducible polynomial found");
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<std::uint64_t, int>, std::unique_ptr<Field>>& registry() {
  static std::map<std::pair<std::uint64_t, int>, std::unique_ptr<Field>> r;
  return r;
}

constexpr std::uint64_t kMaxExtensionOrder = std::uint64_t{1} << 20;

}  // namespace

Field::Field(std::uint64_t p, int m, std::vector<std::uint64_t> modulus)
    : p_(p), m_(m), q_(0), modulus_(std::move(modulus)) {
  if (p_ != 0) {
    q_ = 1;
    for (int i = 0; i < m_; ++i) q_ *= p_;
    if (m_ > 1) build_tables();
  }
}

const Field& Field::prime(std::uint64_t p) { return galois(p, 1); }

const Field& Field::galois(std::uint64_t p, int m) {
  if (!is_prime(p) || p >= (std::uint64_t{1} << 31))
    throw Error("field characteristic must be a prime below 2^31, got " + std::to_string(p));
  if (m < 1) throw Error("extension degree must be positive");
  std::uint64_t q = 1;
  for (int i = 0; i < m; ++i) {
    q *= p;
    if (m > 1 && q > kMaxExtensionOrder)
      throw Error("extension fields are limited to 2^20 elements");
  }
  std::lock_guard lock(registry_mutex());
  auto& slot = registry()[{p, m}];
  if (!slot) {
    RawPoly modulus = m == 1 ? RawPoly{0, 1} : smallest_irreducible(p, m);
    slot.reset(new Field(p, m, std::move(modulus)));
  }
  return *slot;
}

const Field& Field::rationals() {
  std::lock_guard lock(registry_mutex());
  auto& slot = registry()[{0, 1}];
  if (!slot) slot.reset(new Field(0, 1, {}));
  return *slot;
}

const Field& Field::parse(std::string_view spec) {
  std::string s;
  for (char c : spec)
    if (c != ' ' && c != '{' && c != '}') s.push_back(c);
  if (s == "Q" || s == "QQ") return rationals();
  if (s.size() < 3 || s[0] != 'F' || s[1] != '_') throw ParseError("bad field specification '" + std::string(spec) + "'");
  std::uint64_t p = 0;
  int m = 1;
  const char* b = s.data() + 2;
  const char* e = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(b, e, p);
  if (ec != std::errc() || ptr == b) throw ParseError("bad field specification '" + std::string(spec) + "'");
  if (ptr != e) {
    if (*ptr != '^') throw ParseError("bad field specification '" + std::string(spec) + "'");
    auto [ptr2, ec2] = std::from_chars(ptr + 1, e, m);
    if (ec2 != std::errc() || ptr2 != e) throw ParseError("bad field specification '" + std::string(spec) + "'");
  }
  try {
    return galois(p, m);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    throw ParseError(err.what());
  }
}

std::string Field::name() const {
  if (is_rational()) return "Q";
  std::string s = "F_" + std::to_string(p_);
  if (m_ > 1) s += "^" + std::to_string(m_);
  return s;
}

FieldElem Field::zero() const {
  if (is_rational()) return FieldElem(this, mpq_class(0));
  return FieldElem(this, std::uint64_t{0});
}

FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(std::int64_t n) const {
  if (is_rational()) return FieldElem(this, mpq_class(static_cast<long>(n)));
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return FieldElem(this, static_cast<std::uint64_t>(r));
}

FieldElem Field::from_rational(const mpq_class& q) const {
  if (is_rational()) return FieldElem(this, q);
  const mpz_class pz(static_cast<unsigned long>(p_));
  mpz_class num = q.get_num() % pz;
  mpz_class den = q.get_den() % pz;
  if (den == 0) throw ZeroInput("denominator divisible by the characteristic");
  if (num < 0) num += pz;
  const FieldElem a = from_int(static_cast<std::int64_t>(num.get_si()));
  const FieldElem d = from_int(static_cast<std::int64_t>(den.get_si()));
  return a / d;
}

FieldElem Field::element(std::uint64_t code) const {
  if (!is_finite() || code >= q_) throw Error("element code out of range");
  return FieldElem(this, code);
}

FieldElem Field::generator() const {
  if (is_rational()) throw Error("the rationals have no generator symbol");
  if (m_ == 1) throw Error("the prime field " + name() + " has no generator symbol");
  return FieldElem(this, p_);
}

FieldElem Field::nth_element(std::uint64_t index) const {
  if (is_finite()) return element(index);
  if (index == 0) return zero();
  const std::int64_t k = static_cast<std::int64_t>((index + 1) / 2);
  return from_int(index % 2 == 1 ? k : -k);
}

std::uint64_t Field::add(std::uint64_t a, std::uint64_t b) const {
  if (m_ == 1) {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t r = 0, scale = 1;
  for (int i = 0; i < m_; ++i) {
    const std::uint64_t d = (a % p_ + b % p_) % p_;
    r += d * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

std::uint64_t Field::neg(std::uint64_t a) const {
  if (m_ == 1) return a == 0 ? 0 : p_ - a;
  std::uint64_t r = 0, scale = 1;
  for (int i = 0; i < m_; ++i) {
    const std::uint64_t d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * scale;
    scale *= p_;
    a /= p_;
  }
  return r;
}

std::uint64_t Field::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const {
  if (m_ == 1) return a * b % p_;
  if (a == 0 || b == 0) return 0;
  const std::uint64_t s = (std::uint64_t{log_[a]} + log_[b]) % (q_ - 1);
  return exp_[s];
}

std::uint64_t Field::inv(std::uint64_t a) const {
  if (a == 0) throw ZeroInput("inverse of zero in " + name());
  if (m_ == 1) return mod_pow(a, p_ - 2, p_);
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint64_t Field::mul_slow(std::uint64_t a, std::uint64_t b) const {
  auto digits = [&](std::uint64_t v) {
    RawPoly d(static_cast<std::size_t>(m_), 0);
    for (int i = 0; i < m_; ++i) {
      d[static_cast<std::size_t>(i)] = v % p_;
      v /= p_;
    }
    trim(d);
    return d;
  };
  const RawPoly r = raw_mulmod(digits(a), digits(b), modulus_, p_);
  std::uint64_t code = 0, scale = 1;
  for (std::uint64_t d : r) {
    code += d * scale;
    scale *= p_;
  }
  return code;
}

void Field::build_tables() {
  exp_.assign(q_, 0);
  log_.assign(q_, 0);
  for (std::uint64_t g = 2; g < q_; ++g) {
    std::uint64_t x = 1;
    std::uint64_t k = 0;
    bool primitive = true;
    for (k = 0; k < q_ - 1; ++k) {
      if (k > 0 && x == 1) {
        primitive = false;
        break;
      }
      exp_[k] = static_cast<std::uint32_t>(x);
      x = mul_slow(x, g);
    }
    if (!primitive) continue;
    for (std::uint64_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = static_cast<std::uint32_t>(i);
    return;
  }
  throw Error("no primitive element found");
}

FieldElem::FieldElem(const Field* field, mpq_class q) : field_(field), value_(std::move(q)) {
  std::get<mpq_class>(value_).canonicalize();
}

void FieldElem::check_same(const FieldElem& o) const {
  if (field_ != o.field_) throw FieldMismatch("field element operands live in different fields");
}

bool FieldElem::is_zero() const {
  if (field_->is_rational()) return rational() == 0;
  return code() == 0;
}

bool FieldElem::is_one() const {
  if (field_->is_rational()) return rational() == 1;
  return code() == 1;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw ZeroInput("inverse of zero");
  if (field_->is_rational()) return FieldElem(field_, mpq_class(1) / rational());
  return FieldElem(field_, field_->inv(code()));
}

FieldElem FieldElem::pow(std::int64_t e) const {
  FieldElem base = e < 0 ? inverse() : *this;
  std::uint64_t k = static_cast<std::uint64_t>(e < 0 ? -e : e);
  FieldElem r = one_like();
  while (k) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

FieldElem FieldElem::operator-() const {
  if (field_->is_rational()) return FieldElem(field_, mpq_class(-rational()));
  return FieldElem(field_, field_->neg(code()));
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  check_same(o);
  if (field_->is_rational())
    std::get<mpq_class>(value_) += o.rational();
  else
    value_ = field_->add(code(), o.code());
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  check_same(o);
  if (field_->is_rational())
    std::get<mpq_class>(value_) -= o.rational();
  else
    value_ = field_->sub(code(), o.code());
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  check_same(o);
  if (field_->is_rational())
    std::get<mpq_class>(value_) *= o.rational();
  else
    value_ = field_->mul(code(), o.code());
  return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
  check_same(o);
  return *this *= o.inverse();
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (field_ != o.field_) return false;
  if (field_->is_rational()) return rational() == o.rational();
  return code() == o.code();
}

std::strong_ordering FieldElem::operator<=>(const FieldElem& o) const {
  check_same(o);
  if (field_->is_rational()) {
    const int c = cmp(rational(), o.rational());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  return code() <=> o.code();
}

std::string FieldElem::to_string() const {
  if (!field_) return "<invalid>";
  if (field_->is_rational()) return rational().get_str();
  if (field_->degree() == 1) return std::to_string(code());
  const std::uint64_t p = field_->characteristic();
  std::uint64_t v = code();
  std::vector<std::uint64_t> d;
  for (int i = 0; i < field_->degree(); ++i) {
    d.push_back(v % p);
    v /= p;
  }
  std::string s;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0) {
      s += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) s += std::to_string(d[i]) + "*";
    s += i == 1 ? "z" : "z^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

std::ostream& operator<<(std::ostream& os, const FieldElem& a) { return os << a.to_string(); }

}  // namespace adelic
