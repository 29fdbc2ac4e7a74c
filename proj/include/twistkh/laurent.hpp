// laurent.hpp -- sparse Laurent polynomials in one variable.

#pragma once

#include <map>
#include <sstream>
#include <string>

#include "twistkh/rational.hpp"

namespace twistkh {

// Coefficients live in an exact ring (Rational or a 128-bit integer wrapper).
template <typename C>
class Laurent {
  public:
    Laurent() = default;
    explicit Laurent(C c) {
        if (!(c == C{}))
            terms_[0] = c;
    }
    static Laurent monomial(C c, int exp) {
        Laurent p;
        if (!(c == C{}))
            p.terms_[exp] = c;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, C>& terms() const { return terms_; }

    void add_term(int exp, C c) {
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            if (!(c == C{}))
                terms_[exp] = c;
            return;
        }
        it->second = it->second + c;
        if (it->second == C{})
            terms_.erase(it);
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        for (auto& [e, c] : b.terms_)
            r.add_term(e, c);
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) {
        Laurent r = a;
        for (auto& [e, c] : b.terms_)
            r.add_term(e, C{} - c);
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_)
                r.add_term(ea + eb, ca * cb);
        return r;
    }
    Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
    Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    // Shift all exponents by k (multiply by x^k).
    Laurent shifted(int k) const {
        Laurent r;
        for (auto& [e, c] : terms_)
            r.terms_[e + k] = c;
        return r;
    }

    int min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    std::string str(const std::string& var) const {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : terms_) {
            std::string cs = coeff_str(c);
            if (!first)
                os << (cs[0] == '-' ? " - " : " + ");
            else if (cs[0] == '-')
                os << "-";
            std::string mag = (cs[0] == '-') ? cs.substr(1) : cs;
            if (e == 0)
                os << mag;
            else {
                if (mag != "1")
                    os << mag << "*";
                os << var;
                if (e != 1)
                    os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

  private:
    static std::string coeff_str(const Rational& c) { return c.str(); }
    static std::string coeff_str(long long c) { return std::to_string(c); }

    std::map<int, C> terms_;
};

using LaurentQ = Laurent<Rational>;

} // namespace twistkh
