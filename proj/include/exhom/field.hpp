// Exact scalar fields: prime fields F_p and arbitrary-precision rationals.
// A field is a small value object that owns the arithmetic; matrix/complex
// data stays plain so it can be shared and compared bit-for-bit.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace exhom {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline void check(bool ok, const std::string& msg) {
    if (!ok) throw error(msg);
}

// Residues live in [0,p).  p < 2^31 so products fit in signed 64-bit.
struct FpField {
    using Elt = std::int64_t;
    std::int64_t p = 2;

    Elt zero() const { return 0; }
    Elt one() const { return p == 1 ? 0 : 1; }
    Elt reduce(std::int64_t v) const {
        std::int64_t r = v % p;
        return r < 0 ? r + p : r;
    }
    Elt add(Elt a, Elt b) const { return (a + b) % p; }
    Elt sub(Elt a, Elt b) const { return reduce(a - b); }
    Elt neg(Elt a) const { return a == 0 ? 0 : p - a; }
    Elt mul(Elt a, Elt b) const { return (a * b) % p; }
    Elt inv(Elt a) const {
        check(a != 0, "division by zero in F_p");
        // extended Euclid; p prime so every nonzero residue is a unit
        std::int64_t t = 0, nt = 1, r = p, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt; nt = tmp;
            tmp = r - q * nr;
            r = nr; nr = tmp;
        }
        check(r == 1, "non-invertible residue (p not prime?)");
        return t < 0 ? t + p : t;
    }
    bool is_zero(Elt a) const { return a == 0; }
    bool eq(Elt a, Elt b) const { return a == b; }
    std::string str(Elt a) const { return std::to_string(a); }

    bool operator==(const FpField& o) const { return p == o.p; }
    bool operator!=(const FpField& o) const { return p != o.p; }
};

struct QField {
    using Elt = boost::multiprecision::cpp_rational;

    Elt zero() const { return Elt(0); }
    Elt one() const { return Elt(1); }
    Elt add(const Elt& a, const Elt& b) const { return a + b; }
    Elt sub(const Elt& a, const Elt& b) const { return a - b; }
    Elt neg(const Elt& a) const { return -a; }
    Elt mul(const Elt& a, const Elt& b) const { return a * b; }
    Elt inv(const Elt& a) const {
        check(a != 0, "division by zero in Q");
        return Elt(1) / a;
    }
    bool is_zero(const Elt& a) const { return a == 0; }
    bool eq(const Elt& a, const Elt& b) const { return a == b; }
    std::string str(const Elt& a) const { return a.str(); }

    bool operator==(const QField&) const { return true; }
    bool operator!=(const QField&) const { return false; }
};

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace exhom
