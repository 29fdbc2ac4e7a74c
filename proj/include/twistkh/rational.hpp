// rational.hpp -- exact rational arithmetic on 128-bit integers.
//
// All homological linear algebra in this project runs over Q (or over Q[a]
// with rational coefficients), so we need exact fractions.  Khovanov-cube
// differentials have entries in {-1,0,1} and Gaussian elimination keeps
// magnitudes small; 128-bit headroom is enormous for these workloads, and
// every operation is overflow-checked so a failure is loud, never silent.

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace twistkh {

struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using int128 = __int128;

inline int128 abs128(int128 x) { return x < 0 ? -x : x; }

inline std::string to_string_128(int128 x) {
    if (x == 0)
        return "0";
    bool neg = x < 0;
    std::string s;
    while (x != 0) {
        int digit = static_cast<int>(neg ? -(x % 10) : (x % 10));
        s.push_back(static_cast<char>('0' + digit));
        x /= 10;
    }
    if (neg)
        s.push_back('-');
    return {s.rbegin(), s.rend()};
}

inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw InternalError("rational overflow (add)");
    return r;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw InternalError("rational overflow (mul)");
    return r;
}

inline int128 gcd128(int128 a, int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Always normalized: den > 0, gcd(num, den) = 1.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(int128 n, int128 d) : num_(n), den_(d) { normalize(); }

    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }

    int128 num() const { return num_; }
    int128 den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        int128 g = gcd128(a.den_, b.den_);
        int128 bd = b.den_ / g;
        int128 n = checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, a.den_ / g));
        return Rational(n, checked_mul(a.den_, bd));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        int128 g1 = gcd128(a.num_, b.den_);
        int128 g2 = gcd128(b.num_, a.den_);
        Rational r;
        r.num_ = checked_mul(a.num_ / g1, b.num_ / g2);
        r.den_ = checked_mul(a.den_ / g2, b.den_ / g1);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0)
            throw InternalError("rational division by zero");
        return a * Rational(b.den_, b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    std::string str() const {
        if (den_ == 1)
            return to_string_128(num_);
        return to_string_128(num_) + "/" + to_string_128(den_);
    }

  private:
    void normalize() {
        if (den_ == 0)
            throw InternalError("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        int128 g = gcd128(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    int128 num_;
    int128 den_;
};

} // namespace twistkh
