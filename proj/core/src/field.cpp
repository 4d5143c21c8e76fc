#include "algebroid/field.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace algebroid {

namespace {

constexpr std::uint64_t kTableLimit = 1u << 20;
constexpr std::uint64_t kRootSearchLimit = 1u << 22;

using UPolyP = std::vector<std::uint64_t>;  // low degree first, mod p

void trim(UPolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

// Remainder of a modulo monic-or-not b over F_p.
UPolyP poly_rem(UPolyP a, const UPolyP& b, std::uint64_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = invmod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, b[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

std::string poly_to_string(const UPolyP& c, const std::string& name) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c[i];
      continue;
    }
    if (c[i] != 1) os << c[i] << '*';
    os << name;
    if (i > 1) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

// Parses an integer-coefficient polynomial in a single named variable.
UPolyP parse_univariate(std::string_view text, const std::string& name, std::uint64_t p) {
  std::vector<long long> coeffs;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto syntax = [&](const std::string& what) {
    fail(ErrorCode::SyntaxError, "field polynomial: " + what + " at column " + std::to_string(i + 1));
  };
  skip();
  if (i == text.size()) syntax("empty polynomial");
  while (i < text.size()) {
    int sign = 1;
    skip();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -1;
      ++i;
      skip();
    }
    long long coeff = 1;
    bool have_coeff = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coeff = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        coeff = coeff * 10 + (text[i] - '0');
        ++i;
      }
      have_coeff = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    std::size_t exponent = 0;
    if (text.substr(i, name.size()) == name) {
      i += name.size();
      exponent = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        exponent = 0;
        if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) syntax("expected exponent");
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          exponent = exponent * 10 + static_cast<std::size_t>(text[i] - '0');
          ++i;
        }
      }
    } else if (!have_coeff) {
      syntax("expected term");
    }
    if (coeffs.size() <= exponent) coeffs.resize(exponent + 1, 0);
    coeffs[exponent] += sign * coeff;
    skip();
    if (i < text.size() && text[i] != '+' && text[i] != '-') syntax("unexpected character");
  }
  UPolyP out(coeffs.size());
  const auto sp = static_cast<long long>(p);
  for (std::size_t k = 0; k < coeffs.size(); ++k) out[k] = static_cast<std::uint64_t>(((coeffs[k] % sp) + sp) % sp);
  trim(out);
  return out;
}

}  // namespace

namespace detail {

struct FieldImpl {
  Field::Kind kind = Field::Kind::Rationals;
  std::uint64_t p = 0;
  int k = 1;
  std::uint64_t q = 0;
  std::string gen = "a";
  UPolyP minpoly;
  const FieldImpl* parent = nullptr;
  std::uint64_t parent_gen_image = 0;
  std::vector<std::uint64_t> pw;  // p^i
  std::vector<std::uint32_t> exp_table, log_table;

  UPolyP decode(std::uint64_t code) const {
    UPolyP c(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
      c[static_cast<std::size_t>(i)] = code % p;
      code /= p;
    }
    return c;
  }
  std::uint64_t encode(const UPolyP& c) const {
    std::uint64_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
    return code;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (k == 1) return (a + b) % p;
    std::uint64_t out = 0;
    for (int i = 0; i < k; ++i) {
      const std::uint64_t d = ((a % p) + (b % p)) % p;
      out += d * pw[static_cast<std::size_t>(i)];
      a /= p;
      b /= p;
    }
    return out;
  }
  std::uint64_t neg(std::uint64_t a) const {
    if (k == 1) return (p - a) % p;
    std::uint64_t out = 0;
    for (int i = 0; i < k; ++i) {
      out += ((p - a % p) % p) * pw[static_cast<std::size_t>(i)];
      a /= p;
    }
    return out;
  }
  std::uint64_t slow_mul(std::uint64_t a, std::uint64_t b) const {
    const UPolyP x = decode(a), y = decode(b);
    UPolyP prod(2 * static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        prod[static_cast<std::size_t>(i + j)] =
            (prod[static_cast<std::size_t>(i + j)] + mulmod(x[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(j)], p)) % p;
    UPolyP r = poly_rem(prod, minpoly, p);
    r.resize(static_cast<std::size_t>(k), 0);
    return encode(r);
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (k == 1) return mulmod(a, b, p);
    if (a == 0 || b == 0) return 0;
    if (!log_table.empty()) {
      std::uint64_t e = static_cast<std::uint64_t>(log_table[a]) + log_table[b];
      if (e >= q - 1) e -= q - 1;
      return exp_table[e];
    }
    return slow_mul(a, b);
  }
  std::uint64_t pow_code(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) fail(ErrorCode::InvalidArgument, "division by zero in " + spec());
    if (k == 1) return invmod(a, p);
    if (!log_table.empty()) {
      const std::uint64_t l = log_table[a];
      return exp_table[(q - 1 - l) % (q - 1)];
    }
    return pow_code(a, q - 2);
  }

  void build_tables() {
    if (k == 1 || q > kTableLimit) return;
    // Find a primitive element by brute force.
    std::vector<std::uint64_t> prime_factors;
    std::uint64_t n = q - 1;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime_factors.push_back(d);
        while (n % d == 0) n /= d;
      }
    }
    if (n > 1) prime_factors.push_back(n);
    auto slow_pow = [&](std::uint64_t a, std::uint64_t e) {
      std::uint64_t r = 1;
      while (e) {
        if (e & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    std::uint64_t g = 0;
    for (std::uint64_t c = 2; c < q; ++c) {
      bool ok = true;
      for (std::uint64_t f : prime_factors) {
        if (slow_pow(c, (q - 1) / f) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g = c;
        break;
      }
    }
    exp_table.assign(q - 1, 0);
    log_table.assign(q, 0);
    std::uint64_t cur = 1;
    for (std::uint64_t e = 0; e < q - 1; ++e) {
      exp_table[e] = static_cast<std::uint32_t>(cur);
      log_table[cur] = static_cast<std::uint32_t>(e);
      cur = slow_mul(cur, g);
    }
  }

  static Field wrap(const FieldImpl* impl) { return Field(impl); }

  std::string spec() const {
    if (kind == Field::Kind::Rationals) return "char=0";
    if (kind == Field::Kind::Prime) return "char=" + std::to_string(p);
    UPolyP m = minpoly;
    return "char=" + std::to_string(p) + "; ext=" + gen + ":" + poly_to_string(m, gen);
  }
};

}  // namespace detail

namespace {

struct Registry {
  std::mutex mutex;
  std::map<std::string, std::unique_ptr<detail::FieldImpl>> fields;

  const detail::FieldImpl* intern(std::unique_ptr<detail::FieldImpl> impl) {
    std::ostringstream key;
    key << impl->spec() << '|' << static_cast<const void*>(impl->parent) << '|' << impl->parent_gen_image;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = fields.find(key.str());
    if (it != fields.end()) return it->second.get();
    impl->build_tables();
    const detail::FieldImpl* raw = impl.get();
    fields.emplace(key.str(), std::move(impl));
    return raw;
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

std::unique_ptr<detail::FieldImpl> make_extension_impl(std::uint64_t p, UPolyP minpoly, std::string gen) {
  auto impl = std::make_unique<detail::FieldImpl>();
  impl->kind = Field::Kind::Extension;
  impl->p = p;
  impl->k = static_cast<int>(minpoly.size()) - 1;
  impl->gen = std::move(gen);
  impl->minpoly = std::move(minpoly);
  impl->pw.assign(static_cast<std::size_t>(impl->k) + 1, 1);
  for (int i = 1; i <= impl->k; ++i) impl->pw[static_cast<std::size_t>(i)] = impl->pw[static_cast<std::size_t>(i - 1)] * p;
  impl->q = impl->pw[static_cast<std::size_t>(impl->k)];
  return impl;
}

UPolyP first_irreducible(std::uint64_t p, int degree) {
  const std::size_t d = static_cast<std::size_t>(degree);
  std::uint64_t count = 1;
  for (int i = 0; i < degree; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    UPolyP poly(d + 1, 0);
    std::uint64_t c = code;
    for (std::size_t i = 0; i < d; ++i) {
      poly[i] = c % p;
      c /= p;
    }
    poly[d] = 1;
    if (poly[0] == 0) continue;
    if (is_irreducible_mod_p(poly, p)) return poly;
  }
  fail(ErrorCode::ReduciblePolynomial, "no irreducible polynomial found");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_mod_p(const std::vector<std::uint64_t>& poly_in, std::uint64_t p) {
  UPolyP poly = poly_in;
  trim(poly);
  if (poly.size() < 2) return false;
  const std::size_t deg = poly.size() - 1;
  if (deg == 1) return true;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      UPolyP divisor(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = c % p;
        c /= p;
      }
      divisor[d] = 1;
      if (poly_rem(poly, divisor, p).empty()) return false;
    }
  }
  return true;
}

// ---- Field --------------------------------------------------------------

Field::Field() : Field(rationals()) {}

Field Field::rationals() {
  auto impl = std::make_unique<detail::FieldImpl>();
  impl->kind = Kind::Rationals;
  return Field(registry().intern(std::move(impl)));
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::NotPrime, "characteristic " + std::to_string(p) + " is not prime");
  auto impl = std::make_unique<detail::FieldImpl>();
  impl->kind = Kind::Prime;
  impl->p = p;
  impl->k = 1;
  impl->q = p;
  impl->pw = {1, p};
  return Field(registry().intern(std::move(impl)));
}

Field Field::extension(std::uint64_t p, std::vector<std::uint64_t> minpoly, std::string generator) {
  if (!is_prime(p)) fail(ErrorCode::NotPrime, "characteristic " + std::to_string(p) + " is not prime");
  for (auto& c : minpoly) c %= p;
  trim(minpoly);
  if (minpoly.size() < 2 || minpoly.back() != 1)
    fail(ErrorCode::InvalidArgument, "minimal polynomial must be monic of degree >= 1");
  if (!is_irreducible_mod_p(minpoly, p))
    fail(ErrorCode::ReduciblePolynomial, poly_to_string(minpoly, generator) + " is reducible over F_" + std::to_string(p));
  if (minpoly.size() == 2) return prime(p);
  return Field(registry().intern(make_extension_impl(p, std::move(minpoly), std::move(generator))));
}

Field Field::galois(std::uint64_t p, int degree, std::string generator) {
  if (degree == 1) return prime(p);
  return extension(p, first_irreducible(p, degree), std::move(generator));
}

Field Field::parse(std::string_view spec) {
  auto strip = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  spec = strip(spec);
  std::string_view head = spec, ext;
  if (auto semi = spec.find(';'); semi != std::string_view::npos) {
    head = strip(spec.substr(0, semi));
    ext = strip(spec.substr(semi + 1));
  }
  if (head.substr(0, 5) != "char=") fail(ErrorCode::SyntaxError, "field spec must start with 'char=': " + std::string(spec));
  std::string digits(strip(head.substr(5)));
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorCode::SyntaxError, "bad characteristic '" + digits + "'");
  const std::uint64_t p = std::stoull(digits);
  if (p == 0) {
    if (!ext.empty()) fail(ErrorCode::InvalidArgument, "extensions of Q are not supported");
    return rationals();
  }
  if (!is_prime(p)) fail(ErrorCode::NotPrime, "characteristic " + digits + " is not prime");
  if (ext.empty()) return prime(p);
  if (ext.substr(0, 4) != "ext=") fail(ErrorCode::SyntaxError, "expected 'ext=<name>:<poly>'");
  ext = ext.substr(4);
  auto colon = ext.find(':');
  if (colon == std::string_view::npos) fail(ErrorCode::SyntaxError, "expected ':' in extension spec");
  std::string name(strip(ext.substr(0, colon)));
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
    fail(ErrorCode::SyntaxError, "bad generator name '" + name + "'");
  return extension(p, parse_univariate(ext.substr(colon + 1), name, p), name);
}

Field::Kind Field::kind() const { return impl_->kind; }
std::uint64_t Field::characteristic() const { return impl_->p; }
int Field::degree() const { return impl_->k; }
std::uint64_t Field::size() const { return impl_->q; }
const std::string& Field::generator_name() const { return impl_->gen; }
const std::vector<std::uint64_t>& Field::minimal_polynomial() const { return impl_->minpoly; }
std::string Field::spec() const { return impl_->spec(); }

Elem Field::zero() const {
  if (kind() == Kind::Rationals) return Elem(impl_, mpq_class(0));
  return Elem(impl_, std::uint64_t{0});
}
Elem Field::one() const {
  if (kind() == Kind::Rationals) return Elem(impl_, mpq_class(1));
  return Elem(impl_, std::uint64_t{1});
}
Elem Field::from_int(long long v) const {
  if (kind() == Kind::Rationals) return Elem(impl_, mpq_class(static_cast<long>(v)));
  const auto p = static_cast<long long>(impl_->p);
  return Elem(impl_, static_cast<std::uint64_t>(((v % p) + p) % p));
}
Elem Field::from_rational(const mpq_class& v) const {
  if (kind() == Kind::Rationals) {
    mpq_class c = v;
    c.canonicalize();
    return Elem(impl_, c);
  }
  mpz_class num = v.get_num() % static_cast<unsigned long>(impl_->p);
  mpz_class den = v.get_den() % static_cast<unsigned long>(impl_->p);
  if (num < 0) num += static_cast<unsigned long>(impl_->p);
  if (den == 0) fail(ErrorCode::InvalidArgument, "denominator divisible by the characteristic");
  Elem n(impl_, static_cast<std::uint64_t>(num.get_ui()));
  Elem d(impl_, static_cast<std::uint64_t>(den.get_ui()));
  return n / d;
}
Elem Field::generator() const {
  if (kind() != Kind::Extension) fail(ErrorCode::InvalidArgument, "field has no generator");
  return Elem(impl_, impl_->p);
}
Elem Field::from_code(std::uint64_t code) const {
  if (!is_finite() || code >= impl_->q) fail(ErrorCode::InvalidArgument, "bad element code");
  return Elem(impl_, code);
}
std::vector<Elem> Field::elements() const {
  if (!is_finite()) fail(ErrorCode::InvalidArgument, "cannot enumerate Q");
  std::vector<Elem> out;
  out.reserve(impl_->q);
  for (std::uint64_t c = 0; c < impl_->q; ++c) out.push_back(Elem(impl_, c));
  return out;
}
Elem Field::random(std::mt19937_64& rng, bool nonzero) const {
  if (kind() == Kind::Rationals) {
    std::uniform_int_distribution<long> d(-5, 5);
    long v = 0;
    do {
      v = d(rng);
    } while (nonzero && v == 0);
    return Elem(impl_, mpq_class(v));
  }
  std::uniform_int_distribution<std::uint64_t> d(nonzero ? 1 : 0, impl_->q - 1);
  return Elem(impl_, d(rng));
}

std::optional<Field> Field::parent() const {
  if (!impl_->parent) return std::nullopt;
  return Field(impl_->parent);
}

bool Field::contains(const Field& sub) const {
  if (sub.impl_ == impl_) return true;
  if (kind() == Kind::Rationals || sub.kind() == Kind::Rationals) return false;
  if (sub.characteristic() != characteristic()) return false;
  if (sub.kind() == Kind::Prime) return true;
  if (impl_->parent) return Field(impl_->parent).contains(sub);
  return false;
}

Elem Field::embed(const Elem& e) const {
  if (e.f_ == impl_) return e;
  if (!e.f_) fail(ErrorCode::FieldMismatch, "uninitialised element");
  if (kind() != Kind::Rationals && e.f_->kind == Kind::Prime && e.f_->p == impl_->p) return Elem(impl_, e.code_);
  if (!impl_->parent) fail(ErrorCode::FieldMismatch, "cannot embed element of " + e.f_->spec() + " into " + spec());
  const Field parent_field(impl_->parent);
  const Elem in_parent = parent_field.embed(e);
  // Evaluate the parent representative at the image of the parent generator.
  const UPolyP digits = impl_->parent->decode(in_parent.code_);
  Elem acc = zero();
  const Elem image(impl_, impl_->parent_gen_image);
  for (std::size_t i = digits.size(); i-- > 0;) acc = acc * image + from_int(static_cast<long long>(digits[i]));
  return acc;
}

// ---- Elem ---------------------------------------------------------------

namespace {
const detail::FieldImpl* common(const detail::FieldImpl* a, const detail::FieldImpl* b) {
  if (a != b || !a) fail(ErrorCode::FieldMismatch, "arithmetic on elements of different fields");
  return a;
}
}  // namespace

const mpq_class& Elem::rational() const {
  static const mpq_class zero;
  return q_ ? *q_ : zero;
}

Field Elem::field() const {
  if (!f_) fail(ErrorCode::FieldMismatch, "uninitialised element");
  return Field(f_);
}

bool Elem::is_zero() const {
  if (f_->kind == Field::Kind::Rationals) return q() == 0;
  return code_ == 0;
}
bool Elem::is_one() const {
  if (f_->kind == Field::Kind::Rationals) return q() == 1;
  return code_ == 1;
}

Elem Elem::operator+(const Elem& o) const {
  const auto* f = common(f_, o.f_);
  if (f->kind == Field::Kind::Rationals) return Elem(f, mpq_class(q() + o.q()));
  return Elem(f, f->add(code_, o.code_));
}
Elem Elem::operator-(const Elem& o) const {
  const auto* f = common(f_, o.f_);
  if (f->kind == Field::Kind::Rationals) return Elem(f, mpq_class(q() - o.q()));
  return Elem(f, f->add(code_, f->neg(o.code_)));
}
Elem Elem::operator*(const Elem& o) const {
  const auto* f = common(f_, o.f_);
  if (f->kind == Field::Kind::Rationals) return Elem(f, mpq_class(q() * o.q()));
  return Elem(f, f->mul(code_, o.code_));
}
Elem Elem::operator/(const Elem& o) const { return *this * o.inv(); }
Elem Elem::operator-() const {
  if (f_->kind == Field::Kind::Rationals) return Elem(f_, mpq_class(-q()));
  return Elem(f_, f_->neg(code_));
}
Elem Elem::inv() const {
  if (f_->kind == Field::Kind::Rationals) {
    if (q() == 0) fail(ErrorCode::InvalidArgument, "division by zero in Q");
    return Elem(f_, mpq_class(1 / q()));
  }
  return Elem(f_, f_->inv(code_));
}
Elem Elem::pow(std::uint64_t e) const {
  Elem r = Field(f_).one();
  Elem base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}
bool Elem::operator==(const Elem& o) const {
  if (f_ != o.f_) return false;
  if (!f_) return true;
  if (f_->kind == Field::Kind::Rationals) return q() == o.q();
  return code_ == o.code_;
}

std::optional<mpq_class> Elem::as_rational() const {
  if (f_->kind == Field::Kind::Rationals) return q();
  if (f_->kind == Field::Kind::Prime) return mpq_class(static_cast<unsigned long>(code_));
  return std::nullopt;
}

std::string Elem::to_string() const {
  if (!f_) return "<null>";
  if (f_->kind == Field::Kind::Rationals) return q().get_str();
  if (f_->kind == Field::Kind::Prime) return std::to_string(code_);
  UPolyP digits = f_->decode(code_);
  trim(digits);
  return poly_to_string(digits, f_->gen);
}

// ---- tower growth -------------------------------------------------------

namespace {

// Degree-`m` extension of `base` that records how `base` embeds into it.
Field grow(const Field& base, int m) {
  if (m == 1) return base;
  const std::uint64_t p = base.characteristic();
  const int total = base.degree() * m;
  UPolyP minpoly = first_irreducible(p, total);
  auto impl = make_extension_impl(p, minpoly, base.generator_name() == "a" ? "b" : "a");
  if (impl->q > kRootSearchLimit)
    fail(ErrorCode::SearchSpaceTooLarge, "extension of size " + std::to_string(impl->q) + " exceeds the search limit");
  impl->parent = base.impl();
  if (base.kind() == Field::Kind::Extension) {
    // Find a root of the base minimal polynomial in the new field.
    auto probe = make_extension_impl(p, minpoly, impl->gen);
    probe->build_tables();
    const UPolyP& bm = base.minimal_polynomial();
    bool found = false;
    for (std::uint64_t c = 1; c < probe->q && !found; ++c) {
      std::uint64_t acc = 0;
      for (std::size_t i = bm.size(); i-- > 0;) acc = probe->add(probe->mul(acc, c), bm[i]);
      if (acc == 0) {
        impl->parent_gen_image = c;
        found = true;
      }
    }
    if (!found) fail(ErrorCode::InvalidArgument, "tower construction failed");
  }
  return detail::FieldImpl::wrap(registry().intern(std::move(impl)));
}

}  // namespace

Field extend(const Field& field, int m) {
  if (!field.is_finite()) fail(ErrorCode::CharZero, "extensions of Q are not supported");
  if (m < 1) fail(ErrorCode::InvalidArgument, "extension degree must be positive");
  return grow(field, m);
}

std::pair<Field, Elem> adjoin_nth_root(const Field& field, const Elem& a, int n) {
  if (n <= 0) fail(ErrorCode::InvalidArgument, "root index must be positive");
  if (a.field() != field) fail(ErrorCode::FieldMismatch, "element not in field");
  if (a.is_zero()) fail(ErrorCode::InvalidArgument, "adjoin_nth_root requires a nonzero element");
  if (field.kind() == Field::Kind::Rationals) {
    const mpq_class& v = a.rational();
    if (v < 0 && n % 2 == 0) fail(ErrorCode::NoRationalRoot, a.to_string() + " has no rational root of even index");
    mpz_class num = abs(v.get_num()), den = v.get_den();
    mpz_class rn, rd;
    const bool exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
    const bool exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
    if (!exact_n || !exact_d)
      fail(ErrorCode::NoRationalRoot, a.to_string() + " has no rational " + std::to_string(n) + "-th root");
    mpq_class r(rn, rd);
    r.canonicalize();
    if (v < 0) r = -r;
    return {field, field.from_rational(r)};
  }
  for (int m = 1; m <= 12; ++m) {
    if (m > 1) {
      std::uint64_t size = 1;
      for (int i = 0; i < field.degree() * m; ++i) {
        size *= field.characteristic();
        if (size > kRootSearchLimit) break;
      }
      if (size > kRootSearchLimit)
        fail(ErrorCode::SearchSpaceTooLarge, "root of index " + std::to_string(n) + " needs an extension beyond the search limit");
    }
    const Field ext = grow(field, m);
    const Elem target = ext.embed(a);
    for (std::uint64_t c = 1; c < ext.size(); ++c) {
      const Elem r = ext.from_code(c);
      if (r.pow(static_cast<std::uint64_t>(n)) == target) return {ext, r};
    }
  }
  fail(ErrorCode::SearchSpaceTooLarge, "no root found in extensions of degree <= 12");
}

std::pair<Field, Elem> primitive_root_of_unity(const Field& field, int n) {
  if (n <= 0) fail(ErrorCode::InvalidArgument, "root index must be positive");
  if (field.kind() == Field::Kind::Rationals) {
    if (n == 1) return {field, field.one()};
    if (n == 2) return {field, field.from_int(-1)};
    fail(ErrorCode::NoRationalRoot, "Q has no primitive " + std::to_string(n) + "-th root of unity");
  }
  const std::uint64_t p = field.characteristic();
  if (static_cast<std::uint64_t>(n) % p == 0) fail(ErrorCode::BadCharacteristic, "characteristic divides the root index");
  // Smallest m with n | q^m - 1.
  int m = 1;
  std::uint64_t qm = field.size() % static_cast<std::uint64_t>(n);
  while ((qm + static_cast<std::uint64_t>(n) - 1) % static_cast<std::uint64_t>(n) != 0) {
    qm = qm * (field.size() % static_cast<std::uint64_t>(n)) % static_cast<std::uint64_t>(n);
    ++m;
    if (m > 12) fail(ErrorCode::SearchSpaceTooLarge, "root of unity needs an extension of degree > 12");
  }
  std::uint64_t size = 1;
  for (int i = 0; i < field.degree() * m; ++i) {
    size *= p;
    if (size > kRootSearchLimit) fail(ErrorCode::SearchSpaceTooLarge, "extension beyond the search limit");
  }
  const Field ext = grow(field, m);
  for (std::uint64_t c = 1; c < ext.size(); ++c) {
    const Elem r = ext.from_code(c);
    if (!r.pow(static_cast<std::uint64_t>(n)).is_one()) continue;
    bool primitive = true;
    for (int d = 1; d < n && primitive; ++d)
      if (n % d == 0 && r.pow(static_cast<std::uint64_t>(d)).is_one()) primitive = false;
    if (primitive) return {ext, r};
  }
  fail(ErrorCode::InvalidArgument, "no primitive root of unity found");
}

Elem frobenius(const Field& field, const Elem& a) {
  if (field.characteristic() == 0) fail(ErrorCode::CharZero, "Frobenius needs positive characteristic");
  return a.pow(field.characteristic());
}

}  // namespace algebroid
