/**
 * Exact field scalars: arbitrary-precision rationals or residues mod a prime.
 */

#ifndef COHESIVE_SCALAR_HPP
#define COHESIVE_SCALAR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cohesive {

using Rational = boost::multiprecision::cpp_rational;

/// Field tag: p == 0 means the rationals, otherwise the prime field F_p.
struct Field {
    std::uint32_t p = 0;

    bool is_rational() const { return p == 0; }
    friend bool operator==(const Field&, const Field&) = default;

    static Field rationals() { return Field{0}; }
    static Field prime(std::uint32_t p) {
        if (p < 2) throw std::invalid_argument("Field: modulus must be a prime >= 2");
        return Field{p};
    }

    std::string str() const { return is_rational() ? "Q" : "F" + std::to_string(p); }
};

inline void require_same_field(const Field& a, const Field& b) {
    if (!(a == b)) throw std::invalid_argument("field tag mismatch: " + a.str() + " vs " + b.str());
}

/// An exact element of Q or F_p.  F_p residues are kept in [0, p).
class Scalar {
public:
    Scalar() : field_{0}, res_(0) {}

    static Scalar zero(const Field& f) { return Scalar(f, 0); }
    static Scalar one(const Field& f) { return Scalar(f, 1); }

    Scalar(const Field& f, long long n) : field_(f) {
        if (f.is_rational()) {
            rat_ = Rational(n);
        } else {
            long long m = n % static_cast<long long>(f.p);
            if (m < 0) m += f.p;
            res_ = static_cast<std::uint64_t>(m);
        }
    }

    /// Rational constructor; reduces mod p in F_p mode (denominator must be a unit).
    Scalar(const Field& f, const Rational& q) : field_(f) {
        if (f.is_rational()) {
            rat_ = q;
        } else {
            Scalar num = from_integer(f, boost::multiprecision::numerator(q));
            Scalar den = from_integer(f, boost::multiprecision::denominator(q));
            *this = num / den;
        }
    }

    const Field& field() const { return field_; }

    bool is_zero() const { return field_.is_rational() ? rat_.is_zero() : res_ == 0; }
    bool is_one() const { return field_.is_rational() ? rat_ == 1 : res_ == 1; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        require_same_field(a.field_, b.field_);
        return a.field_.is_rational() ? a.rat_ == b.rat_ : a.res_ == b.res_;
    }

    Scalar operator-() const {
        Scalar r(*this);
        if (field_.is_rational()) r.rat_ = -r.rat_;
        else if (r.res_ != 0) r.res_ = field_.p - r.res_;
        return r;
    }

    Scalar& operator+=(const Scalar& o) {
        require_same_field(field_, o.field_);
        if (field_.is_rational()) rat_ += o.rat_;
        else res_ = (res_ + o.res_) % field_.p;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) { return *this += -o; }
    Scalar& operator*=(const Scalar& o) {
        require_same_field(field_, o.field_);
        if (field_.is_rational()) rat_ *= o.rat_;
        else res_ = (res_ * o.res_) % field_.p;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }

    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("Scalar: division by zero");
        Scalar r(*this);
        if (field_.is_rational()) {
            r.rat_ = 1 / rat_;
        } else {
            // Fermat: a^(p-2) mod p.
            std::uint64_t base = res_, acc = 1, e = field_.p - 2;
            while (e) {
                if (e & 1) acc = acc * base % field_.p;
                base = base * base % field_.p;
                e >>= 1;
            }
            r.res_ = acc;
        }
        return r;
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    const Rational& rational() const {
        if (!field_.is_rational()) throw std::logic_error("Scalar: not a rational");
        return rat_;
    }
    std::uint64_t residue() const { return res_; }

    std::string str() const {
        if (field_.is_rational()) return rat_.str();
        return std::to_string(res_);
    }

private:
    static Scalar from_integer(const Field& f, const boost::multiprecision::cpp_int& n) {
        boost::multiprecision::cpp_int m = n % f.p;
        if (m < 0) m += f.p;
        Scalar s(f, 0);
        s.res_ = static_cast<std::uint64_t>(m);
        return s;
    }

    Field field_;
    Rational rat_;
    std::uint64_t res_ = 0;
};

}  // namespace cohesive

#endif
