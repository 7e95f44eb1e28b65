#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hopfq/errors.hpp"

namespace hopfq {

// Raw field element. Finite fields keep a code in [0, q) with den == 1;
// extension elements store their coefficient vector as base-p digits.
// Rationals keep a reduced fraction with positive denominator.
struct Elem {
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(const Elem&, const Elem&) = default;
    friend auto operator<=>(const Elem&, const Elem&) = default;
};

enum class FieldKind { prime, extension, rationals };

namespace detail {

struct FieldData {
    FieldKind kind;
    std::int64_t p = 0;  // characteristic
    int degree = 1;
    std::int64_t order = 0;               // q, or 0 for Q
    std::vector<std::int64_t> modulus;    // monic, low-to-high, extension only
    std::vector<std::int32_t> exp_table;  // extension: powers of a primitive element
    std::vector<std::int32_t> log_table;
    std::vector<std::int64_t> pow_p;      // p^i for digit extraction
};

Elem rational_make(__int128 num, __int128 den);
Elem ext_add(const FieldData& d, Elem a, Elem b);
Elem ext_neg(const FieldData& d, Elem a);

}  // namespace detail

class Field {
public:
    Field() = default;

    static Field prime(std::int64_t p);
    static Field extension(std::int64_t p, int degree, std::vector<std::int64_t> modulus);
    static Field extension(std::int64_t p, int degree);  // built-in Conway polynomial
    static Field rationals();

    // Accepts "q", "p7", "7", "p5^2", "p2^3:1,1,0,1" (modulus low-to-high).
    static Field parse(std::string_view text);

    FieldKind kind() const { return d_->kind; }
    std::int64_t characteristic() const { return d_->p; }
    std::int64_t order() const { return d_->order; }
    int degree() const { return d_->degree; }
    bool is_finite() const { return d_->kind != FieldKind::rationals; }
    const std::vector<std::int64_t>& modulus() const { return d_->modulus; }

    std::string name() const;
    std::string spec_string() const;

    static Elem zero() { return {0, 1}; }
    static Elem one() { return {1, 1}; }
    static bool is_zero(Elem a) { return a.num == 0; }

    Elem from_int(std::int64_t n) const;

    Elem add(Elem a, Elem b) const {
        switch (d_->kind) {
            case FieldKind::prime: {
                std::int64_t s = a.num + b.num;
                return {s >= d_->p ? s - d_->p : s, 1};
            }
            case FieldKind::extension:
                return detail::ext_add(*d_, a, b);
            default:
                return detail::rational_make(static_cast<__int128>(a.num) * b.den +
                                                 static_cast<__int128>(b.num) * a.den,
                                             static_cast<__int128>(a.den) * b.den);
        }
    }

    Elem neg(Elem a) const {
        switch (d_->kind) {
            case FieldKind::prime:
                return {a.num == 0 ? 0 : d_->p - a.num, 1};
            case FieldKind::extension:
                return detail::ext_neg(*d_, a);
            default:
                return {-a.num, a.den};
        }
    }

    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const {
        if (a.num == 0 || b.num == 0) return zero();
        switch (d_->kind) {
            case FieldKind::prime:
                return {(a.num * b.num) % d_->p, 1};
            case FieldKind::extension: {
                auto n = static_cast<std::int64_t>(d_->order - 1);
                std::int64_t e = d_->log_table[a.num] + d_->log_table[b.num];
                if (e >= n) e -= n;
                return {d_->exp_table[e], 1};
            }
            default:
                return detail::rational_make(static_cast<__int128>(a.num) * b.num,
                                             static_cast<__int128>(a.den) * b.den);
        }
    }

    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    // Finite fields only: all elements in code order, and code <-> element.
    std::vector<Elem> elements() const;
    Elem element(std::int64_t code) const;
    std::int64_t code(Elem a) const;

    // Extension coefficient vector (low-to-high, length degree).
    std::vector<std::int64_t> coefficients(Elem a) const;
    Elem from_coefficients(const std::vector<std::int64_t>& c) const;

    std::string format(Elem a) const;
    Elem parse_elem(std::string_view text) const;

    friend bool operator==(Field a, Field b) { return a.d_ == b.d_; }

private:
    explicit Field(const detail::FieldData* d) : d_(d) {}
    const detail::FieldData* d_ = nullptr;
};

// Field element bundled with its field, for code that prefers operators.
class Scalar {
public:
    Scalar() = default;
    Scalar(Field f, Elem v) : f_(f), v_(v) {}
    Scalar(Field f, std::int64_t n) : f_(f), v_(f.from_int(n)) {}

    Field field() const { return f_; }
    Elem value() const { return v_; }
    bool is_zero() const { return v_.num == 0; }

    Scalar operator+(const Scalar& o) const { return {f_, f_.add(v_, same(o))}; }
    Scalar operator-(const Scalar& o) const { return {f_, f_.sub(v_, same(o))}; }
    Scalar operator*(const Scalar& o) const { return {f_, f_.mul(v_, same(o))}; }
    Scalar operator/(const Scalar& o) const { return {f_, f_.div(v_, same(o))}; }
    Scalar operator-() const { return {f_, f_.neg(v_)}; }
    Scalar inverse() const { return {f_, f_.inv(v_)}; }
    Scalar pow(std::uint64_t e) const { return {f_, f_.pow(v_, e)}; }

    bool operator==(const Scalar& o) const { return f_ == o.f_ && v_ == o.v_; }

    std::string to_string() const { return f_.format(v_); }

private:
    Elem same(const Scalar& o) const {
        if (!(o.f_ == f_)) throw FieldMismatch("scalar arithmetic across fields");
        return o.v_;
    }
    Field f_;
    Elem v_;
};

bool is_prime(std::int64_t n);

// binom(m, n) reduced into the field; Lucas digitwise in characteristic p.
Scalar binomial(std::int64_t m, std::int64_t n, Field f);

struct FactorialUnit {
    Scalar value;
    Scalar inverse;
};

// n! and its inverse; NotInvertible when n >= char > 0.
FactorialUnit factorial_unit(std::int64_t n, Field f);

}  // namespace hopfq
