#ifndef SNDG_EPS_COST_HPP
#define SNDG_EPS_COST_HPP

#include "sndg/rational.hpp"

#include <string>

namespace sndg {

// Exact value of the form base + eps_coeff * eps, where eps is a formal
// positive infinitesimal. The lexicographic order on (base, eps_coeff)
// coincides with the numeric order of base + eps_coeff*eps for every
// sufficiently small eps > 0, so "for eps small enough" statements become
// exact comparisons.
struct EpsCost {
    Rational base;
    Rational eps_coeff;

    EpsCost() = default;
    EpsCost(Rational b) : base(std::move(b)) {}
    EpsCost(Rational b, Rational e) : base(std::move(b)), eps_coeff(std::move(e)) {}

    static EpsCost zero() { return EpsCost(); }

    // Edge costs must be positive: base > 0, or base = 0 with a positive
    // infinitesimal part.
    bool is_positive() const {
        return base > 0 || (base == 0 && eps_coeff > 0);
    }

    EpsCost& operator+=(const EpsCost& o) {
        base += o.base;
        eps_coeff += o.eps_coeff;
        return *this;
    }
    EpsCost& operator-=(const EpsCost& o) {
        base -= o.base;
        eps_coeff -= o.eps_coeff;
        return *this;
    }
    friend EpsCost operator+(EpsCost a, const EpsCost& b) { return a += b; }
    friend EpsCost operator-(EpsCost a, const EpsCost& b) { return a -= b; }
    friend EpsCost operator-(const EpsCost& a) { return EpsCost(-a.base, -a.eps_coeff); }
    friend EpsCost operator*(const Rational& s, const EpsCost& a) {
        return EpsCost(s * a.base, s * a.eps_coeff);
    }
    friend EpsCost operator*(const EpsCost& a, const Rational& s) { return s * a; }
    friend EpsCost operator/(const EpsCost& a, const Rational& s) {
        return EpsCost(a.base / s, a.eps_coeff / s);
    }
    friend EpsCost operator/(const EpsCost& a, int s) { return a / Rational(s); }

    friend bool operator==(const EpsCost& a, const EpsCost& b) {
        return a.base == b.base && a.eps_coeff == b.eps_coeff;
    }
    friend bool operator!=(const EpsCost& a, const EpsCost& b) { return !(a == b); }
    friend bool operator<(const EpsCost& a, const EpsCost& b) {
        if (a.base != b.base) return a.base < b.base;
        return a.eps_coeff < b.eps_coeff;
    }
    friend bool operator>(const EpsCost& a, const EpsCost& b) { return b < a; }
    friend bool operator<=(const EpsCost& a, const EpsCost& b) { return !(b < a); }
    friend bool operator>=(const EpsCost& a, const EpsCost& b) { return !(a < b); }
};

// "a", "a+b*eps" or "a-b*eps"; "b*eps" when a = 0.
std::string eps_cost_str(const EpsCost& c);

}  // namespace sndg

#endif
