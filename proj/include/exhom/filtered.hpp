#pragma once

// Bounded stage diagrams x_a -> x_{a+1} -> ... -> x_b of chain complexes,
// read as constant 0 below the window and constant x_b above it.  Morphisms
// carry a chosen homotopy in every structure square and compose by pasting
// those homotopies.  The stage-k cone functor, the stage-k skip functor, the
// truncations, shifts, and the cylinder strictification all live here.
//
// Representation invariant: stored objects are normalized.  Leading zero
// stages are dropped, and trailing stages equal to their predecessor along an
// identity structure map are dropped, so == on objects is meaningful.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exhom/complex.hpp"
#include "exhom/cone.hpp"
#include "exhom/homotopy.hpp"
#include "exhom/standard.hpp"

namespace exhom {

template <class F>
struct Filtered {
    F field;
    int a = 0;
    int b = 0;
    std::vector<Complex<F>> stages;  // x_a .. x_b
    std::vector<ChainMap<F>> maps;   // i_a .. i_{b-1}

    // Stage at any index: zero below the window, the stalk above it.
    Complex<F> stage(int n) const {
        if (n < a) return zero_complex<F>(field);
        if (n > b) return stages.back();
        return stages[static_cast<size_t>(n - a)];
    }

    // Structure map x_n -> x_{n+1} at any index.
    ChainMap<F> imap(int n) const {
        if (n < a) return zero_map<F>(stage(n), stage(n + 1));
        if (n >= b) return identity_map<F>(stages.back());
        return maps[static_cast<size_t>(n - a)];
    }

    const Complex<F>& stalk() const { return stages.back(); }

    bool is_zero() const {
        return stages.size() == 1 && stages[0].dims.empty();
    }

    // Smallest k with constant stages from k on; -1 for the zero object.
    int dim() const { return is_zero() ? -1 : b; }

    bool operator==(const Filtered& o) const {
        return field == o.field && a == o.a && b == o.b &&
               stages == o.stages && maps == o.maps;
    }
    bool operator!=(const Filtered& o) const { return !(*this == o); }
};

template <class F>
Filtered<F> zero_filtered(const F& field) {
    return Filtered<F>{field, 0, 0, {zero_complex<F>(field)}, {}};
}

namespace detail {

template <class F>
void normalize_filtered(Filtered<F>& x) {
    while (x.stages.size() > 1) {
        size_t last = x.stages.size() - 1;
        if (x.stages[last] == x.stages[last - 1] &&
            x.maps[last - 1] == identity_map<F>(x.stages[last - 1])) {
            x.stages.pop_back();
            x.maps.pop_back();
            --x.b;
        } else {
            break;
        }
    }
    while (x.stages.size() > 1 && x.stages.front().dims.empty()) {
        x.stages.erase(x.stages.begin());
        x.maps.erase(x.maps.begin());
        ++x.a;
    }
    if (x.stages.size() == 1 && x.stages[0].dims.empty()) {
        x.a = 0;
        x.b = 0;
    }
}

}  // namespace detail

template <class F>
Filtered<F> make_filtered(const F& field, int a,
                          std::vector<Complex<F>> stages,
                          std::vector<ChainMap<F>> maps) {
    check(!stages.empty(), "make_filtered: no stages");
    check(maps.size() + 1 == stages.size(), "make_filtered: map count");
    for (size_t i = 0; i < maps.size(); ++i) {
        check(maps[i].src == stages[i] && maps[i].dst == stages[i + 1],
              "make_filtered: structure map ends mismatch at stage " +
                  std::to_string(a + static_cast<int>(i)));
    }
    Filtered<F> x{field, a, a + static_cast<int>(stages.size()) - 1,
                  std::move(stages), std::move(maps)};
    detail::normalize_filtered(x);
    return x;
}

// Constant-in-one-stage object: z placed so that stage -k is first nonzero.
template <class F>
Filtered<F> embed(const Complex<F>& z, int k = 0) {
    return make_filtered<F>(z.field, -k, {z}, {});
}

template <class F>
Complex<F> stalk(const Filtered<F>& x) {
    return x.stalk();
}

template <class F>
Filtered<F> shift_filtered(const Filtered<F>& x, int k) {
    if (x.is_zero()) return x;
    Filtered<F> y = x;
    y.a -= k;
    y.b -= k;
    return y;
}

template <class F>
Filtered<F> direct_sum_filtered(const Filtered<F>& x, const Filtered<F>& y) {
    int lo = std::min(x.a, y.a);
    int hi = std::max(x.b, y.b);
    std::vector<Complex<F>> st;
    std::vector<ChainMap<F>> mp;
    for (int n = lo; n <= hi; ++n)
        st.push_back(direct_sum<F>(x.stage(n), y.stage(n)));
    for (int n = lo; n < hi; ++n)
        mp.push_back(direct_sum_map<F>(x.imap(n), y.imap(n)));
    return make_filtered<F>(x.field, lo, std::move(st), std::move(mp));
}

// ---------------------------------------------------------------------------
// Morphisms: a level map f_n per stage and a chosen homotopy H_n in each
// structure square, i^y f_n => f_{n+1} i^x.  Stored over the joint window;
// below it everything is zero, above it the level map is constant and the
// homotopy is zero.

template <class F>
struct DiagramMap {
    Filtered<F> src, dst;
    int lo = 0;
    int hi = 0;
    std::vector<ChainMap<F>> f;    // f_lo .. f_hi
    std::vector<CHomotopy<F>> H;   // H_lo .. H_{hi-1}

    ChainMap<F> level(int n) const {
        if (n < lo) return zero_map<F>(src.stage(n), dst.stage(n));
        if (n > hi) return f.back();
        return f[static_cast<size_t>(n - lo)];
    }

    CHomotopy<F> homotopy(int n) const {
        if (n >= lo && n < hi) return H[static_cast<size_t>(n - lo)];
        return zero_homotopy<F>(compose<F>(dst.imap(n), level(n)));
    }

    HomotopySquare<F> square(int n) const {
        return HomotopySquare<F>{src.imap(n), dst.imap(n), level(n),
                                 level(n + 1), homotopy(n)};
    }

    bool operator==(const DiagramMap& o) const {
        return src == o.src && dst == o.dst && f == o.f && H == o.H;
    }
    bool operator!=(const DiagramMap& o) const { return !(*this == o); }
};

template <class F>
DiagramMap<F> make_diagram_map(const Filtered<F>& src, const Filtered<F>& dst,
                               std::vector<ChainMap<F>> levels,
                               std::vector<std::map<int, Mat<F>>> families) {
    check(src.field == dst.field, "make_diagram_map: field mismatch");
    int lo = std::min(src.a, dst.a);
    int hi = std::max(src.b, dst.b);
    size_t w = static_cast<size_t>(hi - lo + 1);
    check(levels.size() == w, "make_diagram_map: level count");
    check(families.size() + 1 == w, "make_diagram_map: homotopy count");
    for (size_t i = 0; i < w; ++i) {
        int n = lo + static_cast<int>(i);
        check(levels[i].src == src.stage(n) && levels[i].dst == dst.stage(n),
              "make_diagram_map: level ends mismatch at stage " +
                  std::to_string(n));
    }
    std::vector<CHomotopy<F>> H;
    for (size_t i = 0; i + 1 < w; ++i) {
        int n = lo + static_cast<int>(i);
        H.push_back(make_c_homotopy<F>(compose<F>(dst.imap(n), levels[i]),
                                       compose<F>(levels[i + 1], src.imap(n)),
                                       std::move(families[i])));
    }
    return DiagramMap<F>{src, dst, lo, hi, std::move(levels), std::move(H)};
}

template <class F>
DiagramMap<F> strict_diagram_map(const Filtered<F>& src, const Filtered<F>& dst,
                                 std::vector<ChainMap<F>> levels) {
    std::vector<std::map<int, Mat<F>>> fams;
    if (!levels.empty()) fams.resize(levels.size() - 1);
    return make_diagram_map<F>(src, dst, std::move(levels), std::move(fams));
}

template <class F>
DiagramMap<F> identity_diagram(const Filtered<F>& x) {
    std::vector<ChainMap<F>> levels;
    for (int n = x.a; n <= x.b; ++n)
        levels.push_back(identity_map<F>(x.stage(n)));
    return strict_diagram_map<F>(x, x, std::move(levels));
}

template <class F>
DiagramMap<F> zero_diagram_map(const Filtered<F>& x, const Filtered<F>& y) {
    int lo = std::min(x.a, y.a);
    int hi = std::max(x.b, y.b);
    std::vector<ChainMap<F>> levels;
    for (int n = lo; n <= hi; ++n)
        levels.push_back(zero_map<F>(x.stage(n), y.stage(n)));
    return strict_diagram_map<F>(x, y, std::move(levels));
}

// Composition pastes the square homotopies: the level-n homotopy of the
// composite is the side-by-side composite of the two level-n squares.
template <class F>
DiagramMap<F> compose_diagram_maps(const DiagramMap<F>& g,
                                   const DiagramMap<F>& f) {
    check(f.dst == g.src, "compose_diagram_maps: ends mismatch");
    int lo = std::min(f.src.a, g.dst.a);
    int hi = std::max(f.src.b, g.dst.b);
    std::vector<ChainMap<F>> levels;
    std::vector<CHomotopy<F>> H;
    for (int n = lo; n <= hi; ++n)
        levels.push_back(compose<F>(g.level(n), f.level(n)));
    for (int n = lo; n < hi; ++n)
        H.push_back(star_C<F>(g.square(n), f.square(n)).H);
    return DiagramMap<F>{f.src, g.dst, lo, hi, std::move(levels),
                         std::move(H)};
}

template <class F>
DiagramMap<F> add_diagram_maps(const DiagramMap<F>& A, const DiagramMap<F>& B) {
    check(A.src == B.src && A.dst == B.dst, "add_diagram_maps: ends differ");
    std::vector<ChainMap<F>> levels;
    std::vector<CHomotopy<F>> H;
    for (int n = A.lo; n <= A.hi; ++n)
        levels.push_back(add_maps<F>(A.level(n), B.level(n)));
    for (int n = A.lo; n < A.hi; ++n)
        H.push_back(add_homotopies<F>(A.homotopy(n), B.homotopy(n)));
    return DiagramMap<F>{A.src, A.dst, A.lo, A.hi, std::move(levels),
                         std::move(H)};
}

// Equality up to replacing each chosen square homotopy by a CC-homotopic one.
template <class F>
bool cc_equal(const DiagramMap<F>& A, const DiagramMap<F>& B) {
    if (A.src != B.src || A.dst != B.dst) return false;
    for (int n = A.lo; n <= A.hi; ++n)
        if (A.level(n) != B.level(n)) return false;
    for (int n = A.lo; n < A.hi; ++n)
        if (!cc_equal<F>(A.homotopy(n), B.homotopy(n))) return false;
    return true;
}

template <class F>
DiagramMap<F> shift_diagram(const DiagramMap<F>& m, int k) {
    DiagramMap<F> r = m;
    r.src = shift_filtered<F>(m.src, k);
    r.dst = shift_filtered<F>(m.dst, k);
    r.lo -= k;
    r.hi -= k;
    return r;
}

template <class F>
bool is_level_weq(const DiagramMap<F>& m) {
    for (int n = m.lo; n <= m.hi; ++n)
        if (!is_quasi_iso<F>(m.level(n))) return false;
    return true;
}

template <class F>
bool is_stable_weq(const DiagramMap<F>& m) {
    return is_quasi_iso<F>(m.level(m.hi));
}

// ---------------------------------------------------------------------------
// Truncations.  Below-n truncation freezes the diagram at stage n; above-n
// truncation kills the stages below n.  Both come with strict unit maps
// into the original object.

template <class F>
Filtered<F> truncate_le(const Filtered<F>& x, int n) {
    if (n >= x.b) return x;
    if (n < x.a) return zero_filtered<F>(x.field);
    std::vector<Complex<F>> st(x.stages.begin(),
                               x.stages.begin() + (n - x.a + 1));
    std::vector<ChainMap<F>> mp(x.maps.begin(), x.maps.begin() + (n - x.a));
    return make_filtered<F>(x.field, x.a, std::move(st), std::move(mp));
}

template <class F>
Filtered<F> truncate_ge(const Filtered<F>& x, int n) {
    if (n <= x.a) return x;
    int s = std::min(n, x.b);
    std::vector<Complex<F>> st(x.stages.begin() + (s - x.a), x.stages.end());
    std::vector<ChainMap<F>> mp(x.maps.begin() + (s - x.a), x.maps.end());
    Filtered<F> y = make_filtered<F>(x.field, s, std::move(st), std::move(mp));
    if (n > x.b && !y.is_zero()) {
        y.a = n;
        y.b = n;
    }
    return y;
}

template <class F>
DiagramMap<F> truncate_le(const DiagramMap<F>& m, int n) {
    Filtered<F> s = truncate_le<F>(m.src, n);
    Filtered<F> d = truncate_le<F>(m.dst, n);
    int lo = std::min(s.a, d.a);
    int hi = std::max(s.b, d.b);
    std::vector<ChainMap<F>> levels;
    std::vector<std::map<int, Mat<F>>> fams;
    for (int k = lo; k <= hi; ++k)
        levels.push_back(m.level(std::min(k, n)));
    for (int k = lo; k < hi; ++k)
        fams.push_back(k < n ? m.homotopy(k).h : std::map<int, Mat<F>>{});
    return make_diagram_map<F>(s, d, std::move(levels), std::move(fams));
}

template <class F>
DiagramMap<F> truncate_ge(const DiagramMap<F>& m, int n) {
    Filtered<F> s = truncate_ge<F>(m.src, n);
    Filtered<F> d = truncate_ge<F>(m.dst, n);
    int lo = std::min(s.a, d.a);
    int hi = std::max(s.b, d.b);
    std::vector<ChainMap<F>> levels;
    std::vector<std::map<int, Mat<F>>> fams;
    for (int k = lo; k <= hi; ++k) {
        levels.push_back(k >= n ? m.level(k)
                                : zero_map<F>(s.stage(k), d.stage(k)));
    }
    for (int k = lo; k < hi; ++k)
        fams.push_back(k >= n ? m.homotopy(k).h : std::map<int, Mat<F>>{});
    return make_diagram_map<F>(s, d, std::move(levels), std::move(fams));
}

template <class F>
DiagramMap<F> truncate_le_unit(const Filtered<F>& x, int n) {
    Filtered<F> t = truncate_le<F>(x, n);
    int lo = std::min(t.a, x.a);
    int hi = std::max(t.b, x.b);
    std::vector<ChainMap<F>> levels;
    for (int k = lo; k <= hi; ++k) {
        if (k <= n) {
            levels.push_back(identity_map<F>(x.stage(k)));
        } else {
            ChainMap<F> c = identity_map<F>(x.stage(n));
            for (int j = n; j < k; ++j) c = compose<F>(x.imap(j), c);
            levels.push_back(c);
        }
    }
    return strict_diagram_map<F>(t, x, std::move(levels));
}

template <class F>
DiagramMap<F> truncate_ge_unit(const Filtered<F>& x, int n) {
    Filtered<F> t = truncate_ge<F>(x, n);
    int lo = std::min(t.a, x.a);
    int hi = std::max(t.b, x.b);
    std::vector<ChainMap<F>> levels;
    for (int k = lo; k <= hi; ++k) {
        if (k >= n)
            levels.push_back(identity_map<F>(x.stage(k)));
        else
            levels.push_back(zero_map<F>(t.stage(k), x.stage(k)));
    }
    return strict_diagram_map<F>(t, x, std::move(levels));
}

// ---------------------------------------------------------------------------
// Stage-k cone functor: apply the cone endofunctor from stage k on, with the
// twisted inclusion at the seam.  The stalk becomes contractible.

template <class F>
Filtered<F> cone_functor(const Filtered<F>& x, int k) {
    const F& fld = x.field;
    int bb = std::max(x.b, k);
    std::vector<Complex<F>> st;
    std::vector<ChainMap<F>> mp;
    for (int n = x.a; n <= bb; ++n) {
        st.push_back(n <= k - 1 ? x.stage(n)
                                : apply_functor<F>(FunctorTag::C, x.stage(n)));
    }
    for (int n = x.a; n < bb; ++n) {
        if (n <= k - 2) {
            mp.push_back(x.imap(n));
        } else if (n == k - 1) {
            ChainMap<F> inc = nat<F>(NatTag::make(NatTag::Kind::iota),
                                     x.stage(k));
            mp.push_back(compose<F>(inc, x.imap(k - 1)));
        } else {
            mp.push_back(apply_functor_map<F>(FunctorTag::C, x.imap(n)));
        }
    }
    return make_filtered<F>(fld, x.a, std::move(st), std::move(mp));
}

template <class F>
DiagramMap<F> cone_functor(const DiagramMap<F>& m, int k) {
    Filtered<F> s = cone_functor<F>(m.src, k);
    Filtered<F> d = cone_functor<F>(m.dst, k);
    int lo = std::min(s.a, d.a);
    int hi = std::max(s.b, d.b);
    std::vector<ChainMap<F>> levels;
    std::vector<std::map<int, Mat<F>>> fams;
    for (int n = lo; n <= hi; ++n) {
        levels.push_back(n <= k - 1
                             ? m.level(n)
                             : apply_functor_map<F>(FunctorTag::C, m.level(n)));
    }
    for (int n = lo; n < hi; ++n) {
        if (n <= k - 2) {
            fams.push_back(m.homotopy(n).h);
        } else if (n == k - 1) {
            ChainMap<F> ix = nat<F>(NatTag::make(NatTag::Kind::iota),
                                    m.src.stage(k));
            ChainMap<F> iy = nat<F>(NatTag::make(NatTag::Kind::iota),
                                    m.dst.stage(k));
            HomotopySquare<F> seam = strict_square<F>(
                ix, iy, m.level(k),
                apply_functor_map<F>(FunctorTag::C, m.level(k)));
            fams.push_back(bullet_C<F>(seam, m.square(k - 1)).H.h);
        } else {
            fams.push_back(c_on_homotopy<F>(m.homotopy(n)).h);
        }
    }
    return make_diagram_map<F>(s, d, std::move(levels), std::move(fams));
}

// Stage-k skip functor: delete stage k, bridging with the composite
// structure map; on morphisms the two seam squares are pasted vertically.
template <class F>
Filtered<F> skip_functor(const Filtered<F>& x, int k) {
    int lo = k <= x.a - 1 ? x.a - 1 : x.a;  // deleting below the window
                                            // pulls stage x_a down one slot
    std::vector<Complex<F>> st;
    std::vector<ChainMap<F>> mp;
    for (int n = lo; n <= x.b; ++n)
        st.push_back(n <= k - 1 ? x.stage(n) : x.stage(n + 1));
    for (int n = lo; n < x.b; ++n) {
        if (n <= k - 2)
            mp.push_back(x.imap(n));
        else if (n == k - 1)
            mp.push_back(compose<F>(x.imap(k), x.imap(k - 1)));
        else
            mp.push_back(x.imap(n + 1));
    }
    return make_filtered<F>(x.field, lo, std::move(st), std::move(mp));
}

template <class F>
DiagramMap<F> skip_functor(const DiagramMap<F>& m, int k) {
    Filtered<F> s = skip_functor<F>(m.src, k);
    Filtered<F> d = skip_functor<F>(m.dst, k);
    int lo = std::min(s.a, d.a);
    int hi = std::max(s.b, d.b);
    std::vector<ChainMap<F>> levels;
    std::vector<std::map<int, Mat<F>>> fams;
    for (int n = lo; n <= hi; ++n)
        levels.push_back(n <= k - 1 ? m.level(n) : m.level(n + 1));
    for (int n = lo; n < hi; ++n) {
        if (n <= k - 2)
            fams.push_back(m.homotopy(n).h);
        else if (n == k - 1)
            fams.push_back(bullet_C<F>(m.square(k), m.square(k - 1)).H.h);
        else
            fams.push_back(m.homotopy(n + 1).h);
    }
    return make_diagram_map<F>(s, d, std::move(levels), std::move(fams));
}

// ---------------------------------------------------------------------------
// Strictification over a window [a, b] containing the amplitude.  Stage a+k
// of the result is x_{a+k} with one cone summand per consumed stage, the
// structure maps are cylinder front inclusions, and a homotopy coherent
// morphism becomes a strictly commuting one whose seam blocks are cylinder
// maps plus a correction tail fed by the chosen homotopies.

namespace detail {

// C x_t + C x_{t-1} + ... + C x_s, newest stage first; zero when t < s.
template <class F>
Complex<F> cone_tail(const Filtered<F>& x, int s, int t) {
    if (t < s) return zero_complex<F>(x.field);
    Complex<F> r = apply_functor<F>(FunctorTag::C, x.stage(t));
    for (int n = t - 1; n >= s; --n)
        r = direct_sum<F>(r, apply_functor<F>(FunctorTag::C, x.stage(n)));
    return r;
}

template <class F>
ChainMap<F> cone_tail_map(const DiagramMap<F>& m, int s, int t) {
    if (t < s) {
        return zero_map<F>(cone_tail<F>(m.src, s, t), cone_tail<F>(m.dst, s, t));
    }
    ChainMap<F> r = apply_functor_map<F>(FunctorTag::C, m.level(t));
    for (int n = t - 1; n >= s; --n)
        r = direct_sum_map<F>(
            r, apply_functor_map<F>(FunctorTag::C, m.level(n)));
    return r;
}

}  // namespace detail

template <class F>
Filtered<F> strictify_object(const Filtered<F>& x, int a, int b) {
    check(a <= b, "strictify_object: empty window");
    check(x.is_zero() || (a <= x.a && x.b <= b),
          "strictify_object: amplitude outside window");
    if (x.is_zero()) return x;
    std::vector<Complex<F>> st;
    std::vector<ChainMap<F>> mp;
    st.push_back(x.stage(a));
    for (int k = 1; k <= b - a; ++k) {
        st.push_back(direct_sum<F>(x.stage(a + k),
                                   detail::cone_tail<F>(x, a, a + k - 1)));
    }
    for (int k = 0; k < b - a; ++k) {
        ChainMap<F> front = cyl<F>(x.imap(a + k)).xi1;
        Complex<F> tail = detail::cone_tail<F>(x, a, a + k - 1);
        if (k == 0)
            mp.push_back(front);
        else
            mp.push_back(direct_sum_map<F>(front, identity_map<F>(tail)));
    }
    return make_filtered<F>(x.field, a, std::move(st), std::move(mp));
}

template <class F>
DiagramMap<F> strictify(const DiagramMap<F>& m, int a, int b) {
    check(a <= b, "strictify: empty window");
    check(m.src.is_zero() || (a <= m.src.a && m.src.b <= b),
          "strictify: source amplitude outside window");
    check(m.dst.is_zero() || (a <= m.dst.a && m.dst.b <= b),
          "strictify: target amplitude outside window");
    const Filtered<F>& x = m.src;
    const Filtered<F>& y = m.dst;
    Filtered<F> rx = strictify_object<F>(x, a, b);
    Filtered<F> ry = strictify_object<F>(y, a, b);

    std::vector<ChainMap<F>> levels;  // indexed by k = 0 .. b-a
    levels.push_back(m.level(a));
    if (b > a) levels.push_back(cyl_of_square<F>(m.square(a)));

    // Correction block: cone tail of x through stage a+k-2 into the top
    // k summands of stage a+k of the target.  Grown one stage at a time.
    Complex<F> head = direct_sum<F>(y.stage(a + 1),
                                    detail::cone_tail<F>(y, a + 1, a));
    ChainMap<F> corr = zero_map<F>(detail::cone_tail<F>(x, a, a - 1), head);

    for (int k = 2; k <= b - a; ++k) {
        // Step the correction from stage a+k-1 to stage a+k.
        ChainMap<F> front = cyl<F>(y.imap(a + k - 1)).xi1;
        Complex<F> two = direct_sum<F>(
            y.stage(a + k),
            apply_functor<F>(FunctorTag::C, y.stage(a + k - 1)));
        Complex<F> tail_prev_y = detail::cone_tail<F>(y, a + 1, a + k - 2);
        ChainMap<F> into_two = sum_inclusion<F>(two, tail_prev_y, 0);
        ChainMap<F> col1 = compose<F>(
            into_two,
            compose<F>(neg_map<F>(front), c_form<F>(m.homotopy(a + k - 2))));
        ChainMap<F> step = add_maps<F>(
            compose<F>(into_two,
                       compose<F>(front, sum_projection<F>(
                                             y.stage(a + k - 1),
                                             tail_prev_y, 0))),
            compose<F>(sum_inclusion<F>(two, tail_prev_y, 1),
                       sum_projection<F>(y.stage(a + k - 1), tail_prev_y, 1)));
        Complex<F> cx_new = apply_functor<F>(
            FunctorTag::C, x.stage(a + k - 2));
        Complex<F> tail_prev_x = detail::cone_tail<F>(x, a, a + k - 3);
        corr = add_maps<F>(
            compose<F>(col1, sum_projection<F>(cx_new, tail_prev_x, 0)),
            compose<F>(compose<F>(step, corr),
                       sum_projection<F>(cx_new, tail_prev_x, 1)));
        head = direct_sum<F>(two, tail_prev_y);

        // Assemble the level map at stage a+k.
        Complex<F> cyl_x = direct_sum<F>(
            x.stage(a + k),
            apply_functor<F>(FunctorTag::C, x.stage(a + k - 1)));
        Complex<F> tail_x = detail::cone_tail<F>(x, a, a + k - 2);
        ChainMap<F> base = direct_sum_map<F>(
            cyl_of_square<F>(m.square(a + k - 1)),
            detail::cone_tail_map<F>(m, a, a + k - 2));
        Complex<F> cy_a = apply_functor<F>(FunctorTag::C, y.stage(a));
        ChainMap<F> lift = compose<F>(
            sum_inclusion<F>(head, cy_a, 0),
            compose<F>(corr, sum_projection<F>(cyl_x, tail_x, 1)));
        levels.push_back(add_maps<F>(base, lift));
    }

    int lo = std::min(rx.a, ry.a);
    int hi = std::max(rx.b, ry.b);
    std::vector<ChainMap<F>> window;
    for (int n = lo; n <= hi; ++n) {
        if (n < a)
            window.push_back(zero_map<F>(rx.stage(n), ry.stage(n)));
        else
            window.push_back(levels[static_cast<size_t>(std::min(n, b) - a)]);
    }
    return strict_diagram_map<F>(rx, ry, std::move(window));
}

}  // namespace exhom
