#pragma once

#include <limits>
#include <ostream>
#include <string>

#include "padicrep/errors.hpp"
#include "padicrep/rational.hpp"

namespace padicrep {

// Valuation in (1/2)Z together with +infinity. Stored as twice the value so
// comparisons and sums stay in integers.
class Val {
public:
    Val() = default;

    static Val infinity() {
        Val v;
        v.inf_ = true;
        return v;
    }
    static Val of(long long whole) { return Val(false, 2 * whole); }
    static Val half_units(long long twice) { return Val(false, twice); }
    static Val from_rat(const Rat& x) {
        Rat t = 2 * x;
        if (den(t) != 1) throw DomainError("Val: denominator must divide 2");
        return Val(false, static_cast<long long>(num(t)));
    }

    bool is_infinite() const { return inf_; }
    bool is_integer() const { return inf_ || twice_ % 2 == 0; }

    long long twice() const {
        if (inf_) throw DomainError("Val: infinite has no finite value");
        return twice_;
    }
    long long whole() const {
        long long t = twice();
        if (t % 2 != 0) throw DomainError("Val: not an integer");
        return t / 2;
    }
    Rat to_rat() const { return Rat(Int(twice()), Int(2)); }

    Val operator+(const Val& o) const {
        if (inf_ || o.inf_) return infinity();
        return half_units(twice_ + o.twice_);
    }
    Val operator-(const Val& o) const {
        if (o.inf_) throw DomainError("Val: cannot subtract infinity");
        if (inf_) return infinity();
        return half_units(twice_ - o.twice_);
    }
    Val operator-() const {
        if (inf_) throw DomainError("Val: cannot negate infinity");
        return half_units(-twice_);
    }

    friend bool operator==(const Val& a, const Val& b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.twice_ == b.twice_;
    }
    friend bool operator!=(const Val& a, const Val& b) { return !(a == b); }
    friend bool operator<(const Val& a, const Val& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.twice_ < b.twice_;
    }
    friend bool operator<=(const Val& a, const Val& b) { return a < b || a == b; }
    friend bool operator>(const Val& a, const Val& b) { return b < a; }
    friend bool operator>=(const Val& a, const Val& b) { return b <= a; }

    static Val min(const Val& a, const Val& b) { return a < b ? a : b; }

    std::string str() const {
        if (inf_) return "inf";
        if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

    friend std::ostream& operator<<(std::ostream& os, const Val& v) {
        return os << v.str();
    }

private:
    Val(bool inf, long long twice) : inf_(inf), twice_(twice) {}

    bool inf_ = false;
    long long twice_ = 0;
};

} // namespace padicrep
