#pragma once

// Bounded double complexes: a finite tower of complexes z_a, ..., z_b joined
// by chain maps D_n : z_n -> z_{n-1} with DD = 0, and the collapse of such a
// tower into a single complex.  The collapse tot is built by iterated cones,
// so tot of a tower concentrated in one outer degree n is T^n of its column
// on the nose, and tot of [z ==id== z] in outer degrees 1,0 is Cz.  The
// stepwise reduction (reduce_once / reduce_full) folds the top outer degree
// into a cone and certifies tot degreewise; canonical_factorization splits an
// arbitrary map out of tot(x) into a strict tower map followed by a
// quasi-isomorphism, exactly.
//
// Representation invariant: stored towers are normalized.  Zero columns are
// dropped at both ends; the zero tower is a single zero column at position 0.

#include <algorithm>
#include <climits>
#include <map>
#include <utility>
#include <vector>

#include "exhom/complex.hpp"
#include "exhom/cone.hpp"
#include "exhom/homotopy.hpp"
#include "exhom/standard.hpp"

namespace exhom {

template <class F>
struct BiComplex {
    F field;
    int lo = 0;
    int hi = 0;
    std::vector<Complex<F>> cols;    // z_lo .. z_hi
    std::vector<ChainMap<F>> dmaps;  // D_{lo+1} .. D_hi, D_n : z_n -> z_{n-1}

    // Column at any outer degree, zero outside the window.
    Complex<F> col(int n) const {
        if (n < lo || n > hi) return zero_complex<F>(field);
        return cols[static_cast<size_t>(n - lo)];
    }

    // Outer differential z_n -> z_{n-1} at any outer degree.
    ChainMap<F> dmap(int n) const {
        if (n <= lo || n > hi) return zero_map<F>(col(n), col(n - 1));
        return dmaps[static_cast<size_t>(n - lo - 1)];
    }

    bool is_zero() const { return cols.size() == 1 && cols[0].is_zero(); }
    int length() const { return is_zero() ? 0 : hi - lo + 1; }

    bool operator==(const BiComplex& o) const {
        return field == o.field && lo == o.lo && hi == o.hi && cols == o.cols &&
               dmaps == o.dmaps;
    }
    bool operator!=(const BiComplex& o) const { return !(*this == o); }
};

namespace detail {

template <class F>
void normalize_bicomplex(BiComplex<F>& z) {
    while (z.hi > z.lo && z.cols.back().is_zero()) {
        z.cols.pop_back();
        z.dmaps.pop_back();
        --z.hi;
    }
    while (z.lo < z.hi && z.cols.front().is_zero()) {
        z.cols.erase(z.cols.begin());
        z.dmaps.erase(z.dmaps.begin());
        ++z.lo;
    }
    if (z.hi == z.lo && z.cols[0].is_zero()) {
        z.lo = z.hi = 0;
        z.cols[0] = zero_complex<F>(z.field);
    }
}

}  // namespace detail

template <class F>
BiComplex<F> make_bicomplex(const F& field, int lo,
                            std::vector<Complex<F>> cols,
                            std::vector<ChainMap<F>> dmaps) {
    check(!cols.empty(), "make_bicomplex: no columns");
    check(dmaps.size() + 1 == cols.size(), "make_bicomplex: map count");
    for (size_t i = 0; i < dmaps.size(); ++i) {
        check(dmaps[i].src == cols[i + 1] && dmaps[i].dst == cols[i],
              "make_bicomplex: joining map endpoints");
        if (i + 1 < dmaps.size())
            check(compose(dmaps[i], dmaps[i + 1]) ==
                      zero_map<F>(cols[i + 2], cols[i]),
                  "make_bicomplex: DD != 0");
    }
    BiComplex<F> z{field, lo, lo + static_cast<int>(cols.size()) - 1,
                   std::move(cols), std::move(dmaps)};
    detail::normalize_bicomplex(z);
    return z;
}

template <class F>
BiComplex<F> zero_bicomplex(const F& field) {
    return BiComplex<F>{field, 0, 0, {zero_complex<F>(field)}, {}};
}

// Single column at outer degree q.
template <class F>
BiComplex<F> embed_column(const Complex<F>& x, int q = 0) {
    return make_bicomplex<F>(x.field, q, {x}, {});
}

// Shift of the outer grading; columns and joining maps are carried unchanged.
template <class F>
BiComplex<F> shift_bicomplex(const BiComplex<F>& z, int s) {
    if (z.is_zero()) return z;
    BiComplex<F> r = z;
    r.lo += s;
    r.hi += s;
    return r;
}

template <class F>
BiComplex<F> direct_sum_bicomplex(const BiComplex<F>& a, const BiComplex<F>& b) {
    int lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
    std::vector<Complex<F>> cols;
    std::vector<ChainMap<F>> dmaps;
    for (int n = lo; n <= hi; ++n)
        cols.push_back(direct_sum<F>(a.col(n), b.col(n)));
    for (int n = lo + 1; n <= hi; ++n)
        dmaps.push_back(direct_sum_map<F>(a.dmap(n), b.dmap(n)));
    return make_bicomplex<F>(a.field, lo, std::move(cols), std::move(dmaps));
}

// ---------------------------------------------------------------------------
// Tower morphisms: outer-degreewise chain maps commuting with D on the nose.

template <class F>
struct BiMap {
    BiComplex<F> src, dst;
    int lo = 0, hi = 0;               // window [min lo, max hi]
    std::vector<ChainMap<F>> levels;  // f_lo .. f_hi

    ChainMap<F> level(int n) const {
        if (n < lo || n > hi) return zero_map<F>(src.col(n), dst.col(n));
        return levels[static_cast<size_t>(n - lo)];
    }

    bool operator==(const BiMap& o) const {
        return src == o.src && dst == o.dst && lo == o.lo && hi == o.hi &&
               levels == o.levels;
    }
    bool operator!=(const BiMap& o) const { return !(*this == o); }
};

template <class F>
BiMap<F> make_bimap(const BiComplex<F>& src, const BiComplex<F>& dst,
                    std::vector<ChainMap<F>> levels) {
    int lo = std::min(src.lo, dst.lo), hi = std::max(src.hi, dst.hi);
    check(levels.size() == static_cast<size_t>(hi - lo + 1),
          "make_bimap: level count");
    BiMap<F> f{src, dst, lo, hi, std::move(levels)};
    for (int n = lo; n <= hi; ++n)
        check(f.level(n).src == src.col(n) && f.level(n).dst == dst.col(n),
              "make_bimap: level endpoints");
    for (int n = lo + 1; n <= hi; ++n)
        check(compose(dst.dmap(n), f.level(n)) ==
                  compose(f.level(n - 1), src.dmap(n)),
              "make_bimap: levels do not commute with D");
    return f;
}

template <class F>
BiMap<F> identity_bimap(const BiComplex<F>& z) {
    std::vector<ChainMap<F>> levels;
    for (int n = z.lo; n <= z.hi; ++n)
        levels.push_back(identity_map<F>(z.col(n)));
    return make_bimap<F>(z, z, std::move(levels));
}

template <class F>
BiMap<F> zero_bimap(const BiComplex<F>& src, const BiComplex<F>& dst) {
    int lo = std::min(src.lo, dst.lo), hi = std::max(src.hi, dst.hi);
    std::vector<ChainMap<F>> levels;
    for (int n = lo; n <= hi; ++n)
        levels.push_back(zero_map<F>(src.col(n), dst.col(n)));
    return make_bimap<F>(src, dst, std::move(levels));
}

template <class F>
BiMap<F> compose_bimaps(const BiMap<F>& g, const BiMap<F>& f) {
    check(f.dst == g.src, "compose_bimaps: middle mismatch");
    int lo = std::min(f.src.lo, g.dst.lo), hi = std::max(f.src.hi, g.dst.hi);
    std::vector<ChainMap<F>> levels;
    for (int n = lo; n <= hi; ++n)
        levels.push_back(compose(g.level(n), f.level(n)));
    return make_bimap<F>(f.src, g.dst, std::move(levels));
}

// The outer-level cone of a tower morphism: column q is z_{q-1} (+) w_q with
// the usual cone sign pattern on the joining maps.
template <class F>
BiComplex<F> outer_cone(const BiMap<F>& f) {
    const F& k = f.src.field;
    const BiComplex<F>& z = f.src;
    const BiComplex<F>& w = f.dst;
    int lo = std::min(z.lo + 1, w.lo), hi = std::max(z.hi + 1, w.hi);
    std::vector<Complex<F>> cols;
    for (int n = lo; n <= hi; ++n)
        cols.push_back(direct_sum<F>(z.col(n - 1), w.col(n)));
    std::vector<ChainMap<F>> dmaps;
    for (int n = lo + 1; n <= hi; ++n) {
        const Complex<F>& s = cols[static_cast<size_t>(n - lo)];
        const Complex<F>& t = cols[static_cast<size_t>(n - 1 - lo)];
        ChainMap<F> dz = z.dmap(n - 1), dw = w.dmap(n);
        std::map<int, Mat<F>> mats;
        for (int m = std::min(s.lo, t.lo); m <= std::max(s.hi, t.hi); ++m) {
            Mat<F> blk = from_blocks<F>(
                {{neg(k, dz.at(m)),
                  zeros<F>(z.col(n - 2).dim(m), w.col(n).dim(m))},
                 {neg(k, f.level(n - 1).at(m)), dw.at(m)}});
            if (!is_zero_entries<F>(blk)) mats[m] = std::move(blk);
        }
        dmaps.push_back(make_chain_map(s, t, std::move(mats)));
    }
    return make_bicomplex<F>(k, lo, std::move(cols), std::move(dmaps));
}

// ---------------------------------------------------------------------------
// The collapse.  For a tower supported in outer degrees [0,b] the ladder
// stores, descending from the top column, the partial collapses
//   obj[j] = collapse of z_b, ..., z_j placed in outer degrees b-j, ..., 0,
// together with the connecting map conn[j] : obj[j+1] -> z_j that hits the
// trailing z_{j+1} block with D_{j+1}; obj[j] is its cone.

namespace detail {

template <class F>
struct TotLadder {
    std::vector<Complex<F>> obj;    // index j = 0..b
    std::vector<ChainMap<F>> conn;  // conn[j] : obj[j+1] -> col(j), obj[b+1]=0
};

template <class F>
TotLadder<F> tot_ladder(const BiComplex<F>& z) {
    check(z.lo >= 0, "tot_ladder: outer support below 0");
    const F& k = z.field;
    int b = z.hi;
    TotLadder<F> lad;
    lad.obj.assign(static_cast<size_t>(b) + 1, zero_complex<F>(k));
    lad.conn.assign(static_cast<size_t>(b) + 1,
                    zero_map<F>(zero_complex<F>(k), zero_complex<F>(k)));
    Complex<F> above = zero_complex<F>(k);
    for (int j = b; j >= 0; --j) {
        Complex<F> target = z.col(j);
        ChainMap<F> d1 = z.dmap(j + 1);  // z_{j+1} -> z_j, zero at j = b
        std::map<int, Mat<F>> mats;
        for (int m = std::min(above.lo, target.lo);
             m <= std::max(above.hi, target.hi); ++m) {
            if (target.dim(m) == 0 || above.dim(m) == 0) continue;
            Mat<F> blk = zeros<F>(target.dim(m), above.dim(m));
            int off = above.dim(m) - z.col(j + 1).dim(m);
            const Mat<F>& dm = d1.at(m);
            for (int i = 0; i < dm.rows; ++i)
                for (int c = 0; c < dm.cols; ++c) blk.at(i, off + c) = dm.at(i, c);
            if (!is_zero_entries<F>(blk)) mats[m] = std::move(blk);
        }
        lad.conn[static_cast<size_t>(j)] =
            make_chain_map(above, target, std::move(mats));
        lad.obj[static_cast<size_t>(j)] =
            cone_complex(lad.conn[static_cast<size_t>(j)]);
        above = lad.obj[static_cast<size_t>(j)];
    }
    return lad;
}

// Tower with the bottom outer degree removed and the rest shifted down once.
template <class F>
BiComplex<F> drop_bottom(const BiComplex<F>& z) {
    if (z.hi <= 0) return zero_bicomplex<F>(z.field);
    std::vector<Complex<F>> cols;
    std::vector<ChainMap<F>> dmaps;
    for (int n = std::max(z.lo, 1); n <= z.hi; ++n) cols.push_back(z.col(n));
    for (int n = std::max(z.lo, 1) + 1; n <= z.hi; ++n)
        dmaps.push_back(z.dmap(n));
    return make_bicomplex<F>(z.field, std::max(z.lo, 1) - 1, std::move(cols),
                             std::move(dmaps));
}

template <class F>
ChainMap<F> tot_map_nonneg(const BiMap<F>& f) {
    const BiComplex<F>& z = f.src;
    const BiComplex<F>& w = f.dst;
    int b = std::max(z.hi, w.hi);
    if (b <= 0) return f.level(0);
    BiComplex<F> zs = drop_bottom(z), ws = drop_bottom(w);
    std::vector<ChainMap<F>> levels;
    for (int n = std::min(zs.lo, ws.lo); n <= std::max(zs.hi, ws.hi); ++n)
        levels.push_back(f.level(n + 1));
    ChainMap<F> g = tot_map_nonneg(make_bimap<F>(zs, ws, std::move(levels)));
    ChainMap<F> top = tot_ladder(z).conn[0];
    ChainMap<F> bottom = tot_ladder(w).conn[0];
    return cone_of_square(strict_square(top, bottom, g, f.level(0)));
}

}  // namespace detail

// Collapse of a tower into a single complex.  For support [0,b] this is the
// iterated cone down the ladder; support reaching below 0 is shifted up first
// and the result is shifted back degreewise.
template <class F>
Complex<F> tot(const BiComplex<F>& z) {
    if (z.is_zero()) return zero_complex<F>(z.field);
    if (z.lo >= 0) return detail::tot_ladder(z).obj[0];
    int s = -z.lo;
    Complex<F> t = detail::tot_ladder(shift_bicomplex(z, s)).obj[0];
    for (int i = 0; i < s; ++i) t = apply_functor<F>(FunctorTag::Tinv, t);
    return t;
}

template <class F>
ChainMap<F> tot_map(const BiMap<F>& f) {
    int s = std::min(std::min(f.src.lo, f.dst.lo), 0);
    if (s == 0) return detail::tot_map_nonneg(f);
    BiComplex<F> zs = shift_bicomplex(f.src, -s), ws = shift_bicomplex(f.dst, -s);
    std::vector<ChainMap<F>> levels = f.levels;
    ChainMap<F> g = detail::tot_map_nonneg(make_bimap<F>(zs, ws, std::move(levels)));
    for (int i = 0; i < -s; ++i) g = apply_functor_map<F>(FunctorTag::Tinv, g);
    return g;
}

// Direct antidiagonal form of the collapse:
//   tot(z)_m = (+)_q (z_q)_{m-q}  descending in q, and on the q block the
// differential acts by (-1)^q (d^{z_q} + D_q).  Equal to tot on the nose;
// kept as an independently assembled cross-check.
template <class F>
Complex<F> tot_antidiagonal(const BiComplex<F>& z) {
    const F& k = z.field;
    if (z.is_zero()) return zero_complex<F>(k);
    int lo = INT_MAX, hi = INT_MIN;
    for (int q = z.lo; q <= z.hi; ++q) {
        const Complex<F> c = z.col(q);
        if (c.is_zero()) continue;
        lo = std::min(lo, c.lo + q);
        hi = std::max(hi, c.hi + q);
    }
    if (lo > hi) return zero_complex<F>(k);
    std::map<int, int> dims;
    std::map<int, Mat<F>> diffs;
    for (int m = lo; m <= hi; ++m) {
        int total = 0;
        for (int q = z.hi; q >= z.lo; --q) total += z.col(q).dim(m - q);
        dims[m] = total;
    }
    for (int m = lo; m <= hi; ++m) {
        std::vector<std::vector<Mat<F>>> grid;
        for (int qt = z.hi; qt >= z.lo; --qt) {
            std::vector<Mat<F>> row;
            for (int qs = z.hi; qs >= z.lo; --qs) {
                int r = z.col(qt).dim(m - 1 - qt), c = z.col(qs).dim(m - qs);
                Mat<F> blk = zeros<F>(r, c);
                if (qs == qt) {
                    blk = z.col(qs).d(m - qs);
                    if (qs % 2 != 0) blk = neg(k, blk);
                } else if (qt == qs - 1) {
                    blk = z.dmap(qs).at(m - qs);
                    if (qs % 2 != 0) blk = neg(k, blk);
                }
                row.push_back(std::move(blk));
            }
            grid.push_back(std::move(row));
        }
        Mat<F> d = from_blocks<F>(grid);
        if (!is_zero_entries<F>(d)) diffs[m] = std::move(d);
    }
    return make_complex(k, dims, diffs);
}

// The collapse of the outer cone of f against the cone of the collapse of f:
// the two interleave the same blocks, and sorting them with sign (-1)^q on
// the source blocks of outer position q is a degreewise invertible chain map
//   tot(outer_cone(f)) -> Cone(tot_map(f)).
template <class F>
ChainMap<F> outer_cone_iso(const BiMap<F>& f) {
    const F& k = f.src.field;
    const BiComplex<F>& z = f.src;
    const BiComplex<F>& w = f.dst;
    BiComplex<F> oc = outer_cone(f);
    Complex<F> s = tot(oc);
    Complex<F> tz = tot(z);
    Complex<F> t = cone_complex(tot_map(f));
    std::map<int, Mat<F>> mats;
    for (int m = s.lo; m <= s.hi; ++m) {
        if (s.dim(m) == 0) continue;
        Mat<F> pm = zeros<F>(t.dim(m), s.dim(m));
        int colpos = 0;
        for (int q = oc.hi; q >= oc.lo; --q) {
            int zw = z.col(q - 1).dim(m - q);
            int ww = w.col(q).dim(m - q);
            int zoff = 0;
            for (int p = z.hi; p > q - 1; --p) zoff += z.col(p).dim(m - 1 - p);
            int woff = tz.dim(m - 1);
            for (int p = w.hi; p > q; --p) woff += w.col(p).dim(m - p);
            typename F::Elt sgn = q % 2 != 0 ? k.neg(k.one()) : k.one();
            for (int i = 0; i < zw; ++i) pm.at(zoff + i, colpos + i) = sgn;
            for (int i = 0; i < ww; ++i)
                pm.at(woff + i, colpos + zw + i) = k.one();
            colpos += zw + ww;
        }
        mats[m] = std::move(pm);
    }
    return make_chain_map(s, t, std::move(mats));
}

// ---------------------------------------------------------------------------
// Stepwise reduction.  One step folds the top of the tower: the column at k
// is replaced by C z_k over Cone D_k, which is then cut off.  u embeds the
// tower in the fold, v slips the cut tower back in levelwise.

template <class F>
struct Reduction {
    int k = 0;
    BiComplex<F> Q, L;
    BiMap<F> u;  // z -> Q, collapses to a quasi-isomorphism
    BiMap<F> v;  // L -> Q, a levelwise quasi-isomorphism
};

template <class F>
Reduction<F> reduce_once(int k, const BiComplex<F>& z) {
    check(z.hi <= k || z.is_zero(), "reduce_once: outer support above k");
    const F& fld = z.field;
    ChainMap<F> dk = z.dmap(k);
    ConeData<F> cn = cone(dk);
    int lo = std::min(z.lo, k - 1);

    std::vector<Complex<F>> qcols, lcols;
    std::vector<ChainMap<F>> qd, ld;
    for (int n = lo; n <= k - 2; ++n) qcols.push_back(z.col(n));
    qcols.push_back(cn.cone);
    qcols.push_back(apply_functor<F>(FunctorTag::C, z.col(k)));
    for (int n = lo + 1; n <= k - 2; ++n) qd.push_back(z.dmap(n));
    if (k - 1 > lo) {
        ChainMap<F> fold = cone_of_square(
            strict_square(dk, zero_map<F>(zero_complex<F>(fld), z.col(k - 2)),
                          zero_map<F>(z.col(k), zero_complex<F>(fld)),
                          z.dmap(k - 1)));
        qd.push_back(std::move(fold));
    }
    qd.push_back(cn.mu);
    lcols = qcols;
    lcols.pop_back();
    ld = qd;
    ld.pop_back();
    BiComplex<F> Q = make_bicomplex<F>(fld, lo, qcols, qd);
    BiComplex<F> L = make_bicomplex<F>(fld, lo, lcols, ld);

    std::vector<ChainMap<F>> ulv, vlv;
    for (int n = std::min(z.lo, Q.lo); n <= std::max(z.hi, Q.hi); ++n) {
        if (n <= k - 2)
            ulv.push_back(identity_map<F>(z.col(n)));
        else if (n == k - 1)
            ulv.push_back(cn.kappa);
        else if (n == k)
            ulv.push_back(nat<F>(NatTag::make(NatTag::iota), z.col(k)));
        else
            ulv.push_back(zero_map<F>(z.col(n), Q.col(n)));
    }
    for (int n = std::min(L.lo, Q.lo); n <= std::max(L.hi, Q.hi); ++n) {
        if (n <= k - 1)
            vlv.push_back(identity_map<F>(L.col(n)));
        else
            vlv.push_back(zero_map<F>(L.col(n), Q.col(n)));
    }
    return Reduction<F>{k, Q, L, make_bimap<F>(z, Q, std::move(ulv)),
                        make_bimap<F>(L, Q, std::move(vlv))};
}

// Full collapse from the top.  The certificate lists every fold; the final
// single column equals T^m tot(z) entry for entry.
template <class F>
struct Collapse {
    int m = 0;
    Complex<F> core;
    std::vector<Reduction<F>> certificate;
};

template <class F>
Collapse<F> reduce_full(const BiComplex<F>& z) {
    Collapse<F> out;
    BiComplex<F> cur = z;
    while (cur.length() > 1) {
        Reduction<F> step = reduce_once<F>(cur.hi, cur);
        cur = step.L;
        out.certificate.push_back(std::move(step));
    }
    out.m = -cur.lo;
    out.core = cur.col(cur.lo);
    return out;
}

// ---------------------------------------------------------------------------
// Canonical factorization.  For a tower x in outer degrees [0,n] and a map
// u : tot(x) -> y, the ladder of x is wrapped levelwise in C and capped by y;
// the strict tower map lift : x -> z_u collapses to a factor of u and the
// counit a_u : tot(z_u) -> y is a quasi-isomorphism built from an explicit
// contraction of the C-wrapped part.  The identity u = a_u . tot_map(lift)
// holds on the nose.

template <class F>
struct Factorization {
    BiComplex<F> z_u;
    BiMap<F> lift;    // x -> z_u
    ChainMap<F> a_u;  // tot(z_u) -> y
};

namespace detail {

// Family of the canonical contraction of Cx: on (Cx)_m = x_{m-1} (+) x_m the
// degree +1 block sends x_m identically into the x_m slot of (Cx)_{m+1},
// negated; then d h + h d = id.
template <class F>
std::map<int, Mat<F>> c_contraction(const Complex<F>& x) {
    const F& k = x.field;
    std::map<int, Mat<F>> fam;
    for (int m = x.lo; m <= x.hi; ++m) {
        if (x.dim(m) == 0) continue;
        Mat<F> blk = from_blocks<F>(
            {{zeros<F>(x.dim(m), x.dim(m - 1)), neg(k, eye<F>(x.dim(m)))},
             {zeros<F>(x.dim(m + 1), x.dim(m - 1)),
              zeros<F>(x.dim(m + 1), x.dim(m))}});
        if (!is_zero_entries<F>(blk)) fam[m] = std::move(blk);
    }
    return fam;
}

// Contraction of the cone of g : A -> Cw from a contraction p of A and the
// canonical contraction q of Cw; the mixed block is -q g p.
template <class F>
std::map<int, Mat<F>> cone_contraction(const ChainMap<F>& g,
                                       const std::map<int, Mat<F>>& p,
                                       const std::map<int, Mat<F>>& q) {
    const F& k = g.src.field;
    const Complex<F>& a = g.src;
    const Complex<F>& c = g.dst;
    Complex<F> cn = cone_complex(g);
    auto fam_at = [&](const std::map<int, Mat<F>>& fam, const Complex<F>& x,
                      int m) {
        auto it = fam.find(m);
        if (it != fam.end()) return it->second;
        return zeros<F>(x.dim(m + 1), x.dim(m));
    };
    std::map<int, Mat<F>> out;
    for (int m = cn.lo; m <= cn.hi; ++m) {
        if (cn.dim(m) == 0) continue;
        Mat<F> pa = fam_at(p, a, m - 1);
        Mat<F> qc = fam_at(q, c, m);
        Mat<F> mix = neg(k, mul(k, qc, mul(k, g.at(m), pa)));
        Mat<F> blk = from_blocks<F>(
            {{neg(k, pa), zeros<F>(a.dim(m), c.dim(m))}, {mix, qc}});
        if (!is_zero_entries<F>(blk)) out[m] = std::move(blk);
    }
    return out;
}

}  // namespace detail

template <class F>
Factorization<F> canonical_factorization(const BiComplex<F>& x,
                                         const ChainMap<F>& u) {
    const F& fld = x.field;
    check(x.lo >= 0, "canonical_factorization: outer support below 0");
    detail::TotLadder<F> lad = detail::tot_ladder(x);
    check(u.src == lad.obj[0], "canonical_factorization: u source is not tot(x)");
    const Complex<F>& y = u.dst;
    int n = x.hi;

    std::vector<Complex<F>> zcols{y};
    std::vector<ChainMap<F>> zd;
    std::vector<ConeData<F>> cones;
    for (int j = 0; j <= n; ++j) cones.push_back(cone(lad.conn[static_cast<size_t>(j)]));
    for (int j = 1; j <= n; ++j)
        zcols.push_back(apply_functor<F>(FunctorTag::C, lad.obj[static_cast<size_t>(j)]));
    for (int j = 1; j <= n; ++j) {
        // C x'_j drops through the fold of d'_j and is re-included; at the
        // bottom the cap composes with u instead.
        const ChainMap<F>& mu = cones[static_cast<size_t>(j - 1)].mu;
        if (j == 1)
            zd.push_back(compose(u, mu));
        else
            zd.push_back(compose(
                nat<F>(NatTag::make(NatTag::iota), lad.obj[static_cast<size_t>(j - 1)]),
                mu));
    }
    BiComplex<F> zu = make_bicomplex<F>(fld, 0, std::move(zcols), std::move(zd));

    std::vector<ChainMap<F>> lift_lv;
    for (int j = std::min(x.lo, zu.lo); j <= std::max(x.hi, zu.hi); ++j) {
        if (j == 0 && zu.lo <= 0) {
            lift_lv.push_back(compose(u, cones[0].kappa));
        } else if (j >= 1 && j <= std::min(n, zu.hi)) {
            ChainMap<F> kap = cones[static_cast<size_t>(j)].kappa;
            lift_lv.push_back(compose(
                nat<F>(NatTag::make(NatTag::iota), lad.obj[static_cast<size_t>(j)]),
                kap));
        } else {
            lift_lv.push_back(zero_map<F>(x.col(j), zu.col(j)));
        }
    }
    BiMap<F> lift = make_bimap<F>(x, zu, std::move(lift_lv));

    // Counit: the sub-ladder above y is an iterated cone of C objects; its
    // contraction turns the connecting map into a null homotopy, and the cone
    // of the resulting square over [0 -> y] is a_u.
    detail::TotLadder<F> lzu = detail::tot_ladder(zu);
    std::map<int, Mat<F>> contr;
    for (int j = zu.hi; j >= 1; --j) {
        std::map<int, Mat<F>> q =
            detail::c_contraction<F>(lad.obj[static_cast<size_t>(j)]);
        if (j == zu.hi)
            contr = std::move(q);
        else
            contr = detail::cone_contraction<F>(lzu.conn[static_cast<size_t>(j)],
                                                contr, q);
    }
    ChainMap<F> cmap = lzu.conn[0];  // sub-collapse -> y
    const Complex<F>& A = cmap.src;
    std::map<int, Mat<F>> nullfam;
    for (int m = A.lo; m <= A.hi; ++m) {
        if (A.dim(m) == 0 || y.dim(m + 1) == 0) continue;
        auto it = contr.find(m);
        Mat<F> hm = it != contr.end() ? it->second
                                      : zeros<F>(A.dim(m + 1), A.dim(m));
        Mat<F> blk = neg(fld, mul(fld, cmap.at(m + 1), hm));
        if (!is_zero_entries<F>(blk)) nullfam[m] = std::move(blk);
    }
    HomotopySquare<F> sq = make_homotopy_square<F>(
        cmap, zero_map<F>(zero_complex<F>(fld), y),
        zero_map<F>(A, zero_complex<F>(fld)), identity_map<F>(y),
        std::move(nullfam));
    ChainMap<F> au = cone_of_square(sq);
    return Factorization<F>{std::move(zu), std::move(lift), std::move(au)};
}

}  // namespace exhom
