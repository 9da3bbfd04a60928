#pragma once

#include "logdiv/blowup.hpp"
#include "logdiv/deform.hpp"
#include "logdiv/divided.hpp"
#include "logdiv/fan.hpp"
#include "logdiv/fanspace.hpp"
#include "logdiv/io.hpp"
#include "logdiv/monoid.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace logdiv::testsupport {

inline Vec vl(std::initializer_list<long long> entries) {
    Vec v;
    for (long long e : entries) v.push_back(Int(e));
    return v;
}

inline std::vector<Vec> vecs(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<Vec> out;
    for (const auto& r : rows) out.push_back(vl(r));
    return out;
}

inline IntMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<Vec> rs;
    for (const auto& r : rows) rs.push_back(vl(r));
    const int cols = rs.empty() ? 0 : static_cast<int>(rs[0].size());
    return IntMatrix::from_rows(cols, rs);
}

inline FsMonoid fsm(int rank, std::initializer_list<std::initializer_list<long long>> gens) {
    return FsMonoid(Ambient{rank, {}}, vecs(gens));
}

inline Fan a2_fan() {
    return Fan(2, {Cone::from_rays(2, vecs({{0, 1}, {1, 0}}))});
}

/// Both quadrants of the upper half plane; the toric picture of a line times
/// an affine line.
inline Fan halfplane_fan() {
    return Fan(2, {Cone::from_rays(2, vecs({{0, 1}, {1, 0}})),
                   Cone::from_rays(2, vecs({{-1, 0}, {0, 1}}))});
}

inline Fan star11() { return star_subdivision(a2_fan(), vl({1, 1})); }

inline Fan line_fan() { return Fan(1, {Cone::from_rays(1, {vl({1})})}); }

/// Two affine-line charts glued along the torus (the zero cone) with the
/// inversion transition.
inline FanSpaceData p1_space() {
    FanSpaceData data;
    data.charts = {line_fan(), line_fan()};
    OverlapDatum d;
    d.i = 0;
    d.j = 1;
    d.cones = {Cone::from_rays(1, {})};
    d.transition = mat({{-1}});
    data.overlaps = {d};
    return data;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Exact test for h = sum c_i g_i with integer c_i >= 0, independent of the
/// library's membership code. Requires the g_i to span a pointed cone (no
/// cancellation), which every fixture here satisfies; terminates via a
/// strictly positive grading functional.
inline bool nonneg_combo(const Vec& h, const std::vector<Vec>& gens) {
    if (std::all_of(h.begin(), h.end(), [](const Int& x) { return x == 0; })) return true;
    if (gens.empty()) return false;
    const int dim = static_cast<int>(h.size());
    std::vector<Vec> all = gens;
    ConeConstraints cc = constraints_from_generators(all, dim);
    Vec w(std::size_t(dim), Int(0));
    for (const Vec& n : cc.ineqs)
        for (int i = 0; i < dim; ++i) w[std::size_t(i)] += n[std::size_t(i)];
    for (const Vec& g : gens) {
        Int d(0);
        for (int i = 0; i < dim; ++i) d += w[std::size_t(i)] * g[std::size_t(i)];
        if (d <= 0) throw std::logic_error("nonneg_combo: generators are not pointed");
    }
    std::set<Vec> seen;
    std::vector<Vec> stack{h};
    while (!stack.empty()) {
        Vec cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur).second) continue;
        Int wc(0);
        for (int i = 0; i < dim; ++i) wc += w[std::size_t(i)] * cur[std::size_t(i)];
        if (wc < 0) continue;
        if (std::all_of(cur.begin(), cur.end(), [](const Int& x) { return x == 0; })) return true;
        for (const Vec& g : gens) stack.push_back(vec_sub(cur, g));
    }
    return false;
}

/// Dense reachability table for a monoid with nonnegative generators,
/// restricted to the box [0, side]^rank. Brute force, used as an oracle.
struct MonoidBoxOracle {
    int rank = 0;
    long long side = 0;
    std::vector<char> in;

    MonoidBoxOracle(int rank_, long long side_, const std::vector<Vec>& gens)
        : rank(rank_), side(side_) {
        std::vector<std::vector<long long>> gs;
        for (const Vec& g : gens) {
            std::vector<long long> gg;
            for (const Int& x : g) {
                if (x < 0) throw std::logic_error("MonoidBoxOracle needs nonnegative generators");
                gg.push_back(x.convert_to<long long>());
            }
            gs.push_back(gg);
        }
        std::size_t cells = 1;
        for (int i = 0; i < rank; ++i) cells *= std::size_t(side + 1);
        in.assign(cells, 0);
        std::vector<std::vector<long long>> queue{std::vector<long long>(std::size_t(rank), 0)};
        in[0] = 1;
        while (!queue.empty()) {
            std::vector<long long> cur = queue.back();
            queue.pop_back();
            for (const auto& g : gs) {
                std::vector<long long> nxt = cur;
                bool ok = true;
                for (int i = 0; i < rank; ++i) {
                    nxt[std::size_t(i)] += g[std::size_t(i)];
                    if (nxt[std::size_t(i)] > side) ok = false;
                }
                if (!ok) continue;
                const std::size_t idx = index_of(nxt);
                if (!in[idx]) {
                    in[idx] = 1;
                    queue.push_back(nxt);
                }
            }
        }
    }

    std::size_t index_of(const std::vector<long long>& v) const {
        std::size_t idx = 0;
        for (int i = 0; i < rank; ++i) idx = idx * std::size_t(side + 1) + std::size_t(v[std::size_t(i)]);
        return idx;
    }

    bool contains(const std::vector<long long>& v) const {
        for (long long x : v)
            if (x < 0 || x > side) return false;
        return in[index_of(v)] != 0;
    }

    /// Does some positive multiple n*v (1 <= n <= n_max) lie in the monoid?
    bool multiple_member(const std::vector<long long>& v, int n_max) const {
        for (int n = 1; n <= n_max; ++n) {
            std::vector<long long> nv = v;
            bool fits = true;
            for (long long& x : nv) {
                x *= n;
                if (x < 0 || x > side) fits = false;
            }
            if (fits && in[index_of(nv)]) return true;
        }
        return false;
    }
};

/// Deterministic primitive direction inside the closed first quadrant.
inline Vec random_q1_direction(std::mt19937& rng) {
    std::uniform_int_distribution<int> coord(0, 4);
    for (;;) {
        long long a = coord(rng), b = coord(rng);
        if (a == 0 && b == 0) continue;
        Int g = gcd_int(Int(a), Int(b));
        return Vec{Int(a) / g, Int(b) / g};
    }
}

/// Random iterated star subdivision of the quadrant fan.
inline Fan random_subdivision(std::mt19937& rng, int steps) {
    Fan f = a2_fan();
    for (int s = 0; s < steps; ++s) f = star_subdivision(f, random_q1_direction(rng));
    return f;
}

} // namespace logdiv::testsupport
