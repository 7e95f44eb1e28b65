#include "hopfq/scalars.hpp"

#include <algorithm>
#include <limits>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace hopfq {

namespace detail {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

Elem rational_make(__int128 num, __int128 den) {
    if (den == 0) throw NotInvertible("division by zero in Q");
    if (num == 0) return {0, 1};
    if (den < 0) {
        num = -num;
        den = -den;
    }
    __int128 g = gcd128(num, den);
    num /= g;
    den /= g;
    if (num > kMax || num < -kMax || den > kMax)
        throw std::overflow_error("rational arithmetic exceeded 64-bit range");
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

Elem ext_add(const FieldData& d, Elem a, Elem b) {
    std::int64_t x = a.num, y = b.num, r = 0;
    for (int i = 0; i < d.degree; ++i) {
        std::int64_t s = x % d.p + y % d.p;
        if (s >= d.p) s -= d.p;
        r += s * d.pow_p[i];
        x /= d.p;
        y /= d.p;
    }
    return {r, 1};
}

Elem ext_neg(const FieldData& d, Elem a) {
    std::int64_t x = a.num, r = 0;
    for (int i = 0; i < d.degree; ++i) {
        std::int64_t c = x % d.p;
        r += (c == 0 ? 0 : d.p - c) * d.pow_p[i];
        x /= d.p;
    }
    return {r, 1};
}

}  // namespace detail

namespace {

using detail::FieldData;
using Poly = std::vector<std::int64_t>;  // low-to-high coefficients mod p

std::int64_t mod(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1 % p;
    b = mod(b, p);
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic polynomial m.
Poly poly_rem(Poly a, const Poly& m, std::int64_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm) {
        std::int64_t lead = a.back();
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = mod(a[shift + i] - lead * m[i], p);
        trim(a);
    }
    return a;
}

// Remainder modulo an arbitrary nonzero divisor (leading coefficient inverted mod p).
Poly poly_rem_general(Poly a, Poly m, std::int64_t p) {
    trim(m);
    std::int64_t lead_inv = powmod(m.back(), p - 2, p);
    for (auto& c : m) c = c * lead_inv % p;
    return poly_rem(std::move(a), m, p);
}

Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

bool is_irreducible(const Poly& m, std::int64_t p) {
    const int deg = static_cast<int>(m.size()) - 1;
    for (int d = 1; d <= deg / 2; ++d) {
        // all monic divisors of degree d
        std::int64_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::int64_t code = 0; code < count; ++code) {
            Poly div(d + 1, 0);
            std::int64_t c = code;
            for (int i = 0; i < d; ++i) {
                div[i] = c % p;
                c /= p;
            }
            div[d] = 1;
            if (poly_rem_general(m, div, p).empty()) return false;
        }
    }
    return true;
}

Poly decode(std::int64_t code, const FieldData& d) {
    Poly r(d.degree, 0);
    for (int i = 0; i < d.degree; ++i) {
        r[i] = code % d.p;
        code /= d.p;
    }
    trim(r);
    return r;
}

std::int64_t encode(const Poly& a, const FieldData& d) {
    std::int64_t r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * d.pow_p[i];
    return r;
}

void build_log_tables(FieldData& d) {
    const std::int64_t q = d.order;
    if (q > (1 << 22)) throw InvalidInput("extension field too large: " + std::to_string(q));
    std::vector<std::int32_t> exp_t(q - 1), log_t(q, -1);
    for (std::int64_t g = 2; g < q; ++g) {
        Poly gp = decode(g, d);
        Poly cur = {1};
        bool primitive = true;
        std::fill(log_t.begin(), log_t.end(), -1);
        for (std::int64_t e = 0; e < q - 1; ++e) {
            std::int64_t c = encode(cur, d);
            if (log_t[c] != -1) {
                primitive = false;
                break;
            }
            log_t[c] = static_cast<std::int32_t>(e);
            exp_t[e] = static_cast<std::int32_t>(c);
            cur = poly_rem(poly_mul(cur, gp, d.p), d.modulus, d.p);
        }
        if (primitive) {
            d.exp_table = std::move(exp_t);
            d.log_table = std::move(log_t);
            return;
        }
    }
    // q = 2 has no element >= 2 to try; 1 generates the trivial group.
    d.exp_table = {1};
    d.log_table = {-1, 0};
}

struct Registry {
    std::mutex m;
    std::map<std::tuple<int, std::int64_t, Poly>, std::unique_ptr<FieldData>> fields;
};

Registry& registry() {
    static Registry r;
    return r;
}

const std::map<std::pair<std::int64_t, int>, Poly>& conway() {
    static const std::map<std::pair<std::int64_t, int>, Poly> table = {
        {{2, 2}, {1, 1, 1}}, {{2, 3}, {1, 1, 0, 1}},
        {{3, 2}, {2, 2, 1}}, {{3, 3}, {1, 2, 0, 1}},
        {{5, 2}, {2, 4, 1}}, {{5, 3}, {3, 3, 0, 1}},
        {{7, 2}, {3, 6, 1}}, {{7, 3}, {4, 0, 6, 1}},
    };
    return table;
}

std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto first = s.data(), last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
        throw SchemaError("not an integer: '" + std::string(s) + "'");
    return v;
}

}  // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::prime(std::int64_t p) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (p >= (std::int64_t{1} << 31)) throw InvalidInput("prime too large for 64-bit products");
    auto& reg = registry();
    std::lock_guard lock(reg.m);
    auto key = std::make_tuple(0, p, Poly{});
    auto& slot = reg.fields[key];
    if (!slot) {
        slot = std::make_unique<FieldData>();
        slot->kind = FieldKind::prime;
        slot->p = p;
        slot->order = p;
        slot->pow_p = {1};
    }
    return Field(slot.get());
}

Field Field::extension(std::int64_t p, int degree, std::vector<std::int64_t> modulus) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (degree < 1) throw InvalidInput("extension degree must be positive");
    if (degree == 1) return prime(p);
    for (auto& c : modulus) c = mod(c, p);
    if (static_cast<int>(modulus.size()) != degree + 1 || modulus.back() != 1)
        throw ReduciblePolynomial("modulus must be monic of degree " + std::to_string(degree));
    if (!is_irreducible(modulus, p))
        throw ReduciblePolynomial("modulus is reducible over F_" + std::to_string(p));
    auto& reg = registry();
    std::lock_guard lock(reg.m);
    auto key = std::make_tuple(1, p, modulus);
    auto& slot = reg.fields[key];
    if (!slot) {
        auto d = std::make_unique<FieldData>();
        d->kind = FieldKind::extension;
        d->p = p;
        d->degree = degree;
        d->modulus = modulus;
        d->order = 1;
        for (int i = 0; i < degree; ++i) {
            d->pow_p.push_back(d->order);
            if (d->order > (std::int64_t{1} << 40) / p) throw InvalidInput("extension field too large");
            d->order *= p;
        }
        build_log_tables(*d);
        slot = std::move(d);
    }
    return Field(slot.get());
}

Field Field::extension(std::int64_t p, int degree) {
    if (degree == 1) return prime(p);
    auto it = conway().find({p, degree});
    if (it == conway().end())
        throw InvalidInput("no built-in polynomial for p=" + std::to_string(p) +
                           ", k=" + std::to_string(degree) + "; supply one");
    return extension(p, degree, it->second);
}

Field Field::rationals() {
    auto& reg = registry();
    std::lock_guard lock(reg.m);
    auto key = std::make_tuple(2, std::int64_t{0}, Poly{});
    auto& slot = reg.fields[key];
    if (!slot) {
        slot = std::make_unique<FieldData>();
        slot->kind = FieldKind::rationals;
    }
    return Field(slot.get());
}

Field Field::parse(std::string_view text) {
    std::string s(text);
    if (s == "q" || s == "Q") return rationals();
    if (!s.empty() && (s[0] == 'p' || s[0] == 'F')) s.erase(0, 1);
    auto colon = s.find(':');
    std::string head = s.substr(0, colon);
    auto caret = head.find('^');
    std::int64_t p = parse_int(head.substr(0, caret));
    if (caret == std::string::npos) {
        if (colon != std::string::npos) throw SchemaError("modulus given for a prime field");
        return prime(p);
    }
    int k = static_cast<int>(parse_int(head.substr(caret + 1)));
    if (colon == std::string::npos) return extension(p, k);
    Poly m;
    std::stringstream ss(s.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) m.push_back(parse_int(tok));
    return extension(p, k, m);
}

std::string Field::name() const {
    switch (d_->kind) {
        case FieldKind::prime:
            return "F" + std::to_string(d_->p);
        case FieldKind::extension:
            return "F" + std::to_string(d_->p) + "^" + std::to_string(d_->degree);
        default:
            return "Q";
    }
}

std::string Field::spec_string() const {
    switch (d_->kind) {
        case FieldKind::prime:
            return "p" + std::to_string(d_->p);
        case FieldKind::extension: {
            std::string s = "p" + std::to_string(d_->p) + "^" + std::to_string(d_->degree) + ":";
            for (std::size_t i = 0; i < d_->modulus.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(d_->modulus[i]);
            }
            return s;
        }
        default:
            return "q";
    }
}

Elem Field::from_int(std::int64_t n) const {
    switch (d_->kind) {
        case FieldKind::prime:
            return {mod(n, d_->p), 1};
        case FieldKind::extension:
            return {mod(n, d_->p), 1};
        default:
            return {n, 1};
    }
}

Elem Field::inv(Elem a) const {
    if (a.num == 0) throw NotInvertible("inverse of zero");
    switch (d_->kind) {
        case FieldKind::prime:
            return {powmod(a.num, d_->p - 2, d_->p), 1};
        case FieldKind::extension: {
            std::int64_t n = d_->order - 1;
            std::int64_t e = d_->log_table[a.num];
            return {d_->exp_table[(n - e) % n], 1};
        }
        default:
            return detail::rational_make(a.den, a.num);
    }
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::vector<Elem> Field::elements() const {
    if (!is_finite()) throw FieldTooLargeForEnumeration("cannot enumerate Q");
    std::vector<Elem> out;
    out.reserve(d_->order);
    for (std::int64_t c = 0; c < d_->order; ++c) out.push_back({c, 1});
    return out;
}

Elem Field::element(std::int64_t code) const {
    if (!is_finite() || code < 0 || code >= d_->order) throw InvalidInput("element code out of range");
    return {code, 1};
}

std::int64_t Field::code(Elem a) const {
    if (!is_finite()) throw InvalidInput("element codes exist only for finite fields");
    return a.num;
}

std::vector<std::int64_t> Field::coefficients(Elem a) const {
    if (d_->kind == FieldKind::rationals) throw InvalidInput("coefficients of a rational");
    std::vector<std::int64_t> c(d_->degree, 0);
    std::int64_t x = a.num;
    for (int i = 0; i < d_->degree; ++i) {
        c[i] = x % d_->p;
        x /= d_->p;
    }
    return c;
}

Elem Field::from_coefficients(const std::vector<std::int64_t>& c) const {
    if (d_->kind == FieldKind::rationals) throw InvalidInput("coefficients of a rational");
    if (static_cast<int>(c.size()) > d_->degree) throw SchemaError("too many coefficients");
    std::int64_t r = 0;
    for (std::size_t i = 0; i < c.size(); ++i) r += mod(c[i], d_->p) * d_->pow_p[i];
    return {r, 1};
}

std::string Field::format(Elem a) const {
    switch (d_->kind) {
        case FieldKind::prime:
            return std::to_string(a.num);
        case FieldKind::extension: {
            auto c = coefficients(a);
            std::string s = "[";
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(c[i]);
            }
            return s + "]";
        }
        default:
            return std::to_string(a.num) + "/" + std::to_string(a.den);
    }
}

Elem Field::parse_elem(std::string_view text) const {
    std::string s(text);
    switch (d_->kind) {
        case FieldKind::prime:
            return from_int(parse_int(s));
        case FieldKind::extension: {
            if (s.size() < 2 || s.front() != '[' || s.back() != ']') return from_int(parse_int(s));
            std::vector<std::int64_t> c;
            std::stringstream ss(s.substr(1, s.size() - 2));
            std::string tok;
            while (std::getline(ss, tok, ',')) c.push_back(parse_int(tok));
            return from_coefficients(c);
        }
        default: {
            auto slash = s.find('/');
            if (slash == std::string::npos) return {parse_int(s), 1};
            return detail::rational_make(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
        }
    }
}

namespace {

// binom(m, n) mod p for 0 <= n <= m < p.
std::int64_t small_binomial_mod(std::int64_t m, std::int64_t n, std::int64_t p) {
    if (n < 0 || n > m) return 0;
    std::int64_t num = 1, den = 1;
    for (std::int64_t i = 0; i < n; ++i) {
        num = num * ((m - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    return num * powmod(den, p - 2, p) % p;
}

}  // namespace

Scalar binomial(std::int64_t m, std::int64_t n, Field f) {
    if (m < 0 || n < 0) throw InvalidInput("binomial arguments must be non-negative");
    if (n > m) return {f, Field::zero()};
    if (f.kind() == FieldKind::rationals) {
        n = std::min(n, m - n);
        __int128 r = 1;
        for (std::int64_t i = 1; i <= n; ++i) {
            r = r * (m - n + i) / i;  // exact: r * C(m-n+i, i) stays integral at every step
            if (r > std::numeric_limits<std::int64_t>::max())
                throw std::overflow_error("binomial exceeds 64-bit range");
        }
        return {f, Elem{static_cast<std::int64_t>(r), 1}};
    }
    const std::int64_t p = f.characteristic();
    std::int64_t r = 1;
    while (m > 0 || n > 0) {
        r = r * small_binomial_mod(m % p, n % p, p) % p;
        if (r == 0) break;
        m /= p;
        n /= p;
    }
    return {f, f.from_int(r)};
}

FactorialUnit factorial_unit(std::int64_t n, Field f) {
    if (n < 0) throw InvalidInput("factorial of a negative number");
    const std::int64_t p = f.characteristic();
    if (p > 0 && n >= p)
        throw NotInvertible(std::to_string(n) + "! is zero in characteristic " + std::to_string(p));
    Scalar v(f, 1);
    for (std::int64_t i = 2; i <= n; ++i) v = v * Scalar(f, i);
    return {v, v.inverse()};
}

}  // namespace hopfq
