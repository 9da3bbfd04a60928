#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace logdiv {

/// Arbitrary-precision signed integer used throughout the library. All
/// lattice, monoid and fan computations are exact; nothing here rounds.
using Int = boost::multiprecision::cpp_int;

/// Dense integer vector (a point of some ambient lattice, a covector, ...).
using Vec = std::vector<Int>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline int sgn(const Int& a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs_int(a / gcd_int(a, b) * b);
}

/// Floor division (rounds toward negative infinity, unlike cpp_int's
/// operator/ which truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

inline Int dot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec vec_neg(const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline Vec vec_scale(const Int& c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline bool is_zero_vec(const Vec& a) {
    for (const Int& x : a)
        if (x != 0) return false;
    return true;
}

/// gcd of all entries (0 for the zero vector).
inline Int content(const Vec& a) {
    Int g = 0;
    for (const Int& x : a) g = gcd_int(g, x);
    return g;
}

/// Divides out the content so the first nonzero entry keeps its sign.
/// The zero vector is returned unchanged.
inline Vec primitive_part(Vec a) {
    Int g = content(a);
    if (g > 1)
        for (Int& x : a) x /= g;
    return a;
}

/// Lexicographic order on vectors of equal length; used everywhere a
/// canonical, reproducible ordering of rays/generators is needed.
inline bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

inline std::string vec_to_string(const Vec& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += a[i].str();
    }
    s += ")";
    return s;
}

} // namespace logdiv
