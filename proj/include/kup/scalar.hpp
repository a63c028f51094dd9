#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "kup/errors.hpp"

namespace kup {

// Ground field: p == 0 means the rationals, otherwise the prime field F_p.
struct Field {
    std::uint64_t p = 0;

    static Field rational() { return Field{0}; }
    static Field prime(std::uint64_t p) {
        mpz_class z(std::to_string(p));
        if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 30) == 0)
            fail(ErrorKind::ParseError, "field modulus " + std::to_string(p) + " is not prime");
        return Field{p};
    }
    bool is_rational() const { return p == 0; }
    bool operator==(const Field&) const = default;
};

// Exact element of a Field. Rationals are kept canonical by GMP; prime-field
// elements store their residue in [0, p) in the numerator.
class Scalar {
public:
    Scalar() = default;
    Scalar(long n) : v_(n) {}
    Scalar(int n) : v_(n) {}
    explicit Scalar(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    Scalar(Field f, const mpq_class& q) : v_(q), p_(f.p) {
        v_.canonicalize();
        reduce();
    }
    Scalar(Field f, long n) : Scalar(f, mpq_class(n)) {}

    static Scalar zero(Field f) { return Scalar(f, 0L); }
    static Scalar one(Field f) { return Scalar(f, 1L); }

    Field field() const { return Field{p_}; }
    const mpq_class& value() const { return v_; }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    Scalar operator-() const {
        Scalar r = *this;
        r.v_ = -r.v_;
        r.reduce();
        return r;
    }
    Scalar& operator+=(const Scalar& o) {
        if (o.p_ != p_) return *this += align(o);
        v_ += o.v_;
        reduce();
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        if (o.p_ != p_) return *this -= align(o);
        v_ -= o.v_;
        reduce();
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        if (o.p_ != p_) return *this *= align(o);
        v_ *= o.v_;
        reduce();
        return *this;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const {
        if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
        Scalar r = *this;
        if (p_ == 0) {
            r.v_ = 1 / v_;
        } else {
            mpz_class inv, mod(static_cast<unsigned long>(p_));
            mpz_invert(inv.get_mpz_t(), v_.get_num_mpz_t(), mod.get_mpz_t());
            r.v_ = inv;
        }
        return r;
    }

    bool operator==(const Scalar& o) const {
        if (p_ == o.p_) return v_ == o.v_;
        if (p_ == 0) return Scalar(o.field(), v_).v_ == o.v_;
        if (o.p_ == 0) return Scalar(field(), o.v_).v_ == v_;
        return false;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Canonical text: "p/q", or "p" when q = 1. Prime-field elements print their residue.
    std::string str() const { return v_.get_str(); }

    static Scalar parse(const std::string& s, Field f = Field::rational()) {
        mpq_class q;
        if (s.empty() || q.set_str(s, 10) != 0 || sgn(q.get_den()) == 0)
            fail(ErrorKind::ParseError, "not a rational: '" + s + "'");
        q.canonicalize();
        return Scalar(f, q);
    }

private:
    void reduce() {
        if (p_ == 0) return;
        mpz_class mod(static_cast<unsigned long>(p_));
        mpz_class num = v_.get_num(), den = v_.get_den();
        if (den != 1) {
            mpz_class inv;
            if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
                fail(ErrorKind::DivisionByZero, "denominator vanishes mod " + std::to_string(p_));
            num *= inv;
        }
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t());
        v_ = r;
    }

    // Bring o into this field; a rational operand is reduced into a prime field.
    Scalar align(const Scalar& o) {
        if (o.p_ == 0) return Scalar(field(), o.v_);
        if (p_ == 0) {
            p_ = o.p_;
            reduce();
            return o;
        }
        fail(ErrorKind::FieldMismatch,
             "F_" + std::to_string(p_) + " vs F_" + std::to_string(o.p_));
    }

    mpq_class v_;
    std::uint64_t p_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace kup
