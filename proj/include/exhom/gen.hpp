// Deterministic random generators for complexes, maps, homotopies, and
// squares.  A fixed seed reproduces the exact same objects on any platform:
// the generator is a self-contained 64-bit mixer and every sampling routine
// draws in a documented order, so suite output can be compared byte for byte.
//
// Differentials are sampled in kernel-compatible factored form
// d_n = K_{n-1} W_n V_n with K_{n-1} a kernel basis of V_{n-1}, which makes
// d d = 0 hold by construction rather than by rejection.
#pragma once

#include <exhom/filtered.hpp>
#include <exhom/homotopy.hpp>
#include <exhom/total.hpp>

#include <cstdint>

namespace exhom {

struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), unbiased via rejection; n = 0 yields 0.
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        uint64_t lim = (0ull - n) % n;
        uint64_t v;
        do {
            v = next();
        } while (v < lim);
        return v % n;
    }

    // Uniform in [a, b] inclusive.
    int range(int a, int b) {
        check(a <= b, "Rng::range: empty interval");
        return a + static_cast<int>(below(static_cast<uint64_t>(b - a) + 1));
    }
};

inline FpField::Elt random_elt(const FpField& k, Rng& g) {
    return static_cast<FpField::Elt>(g.below(static_cast<uint64_t>(k.p)));
}

inline QField::Elt random_elt(const QField&, Rng& g) {
    int num = g.range(-3, 3);
    int den = g.range(1, 3);
    return QField::Elt(num, den);
}

template <class F>
Mat<F> random_mat(const F& k, Rng& g, int r, int c) {
    Mat<F> m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = random_elt(k, g);
    return m;
}

template <class F>
Mat<F> random_invertible(const F& k, Rng& g, int n) {
    for (;;) {
        Mat<F> m = random_mat(k, g, n, n);
        if (is_invertible(k, m)) return m;
    }
}

template <class F>
Complex<F> random_complex(const F& k, Rng& g, int lo, int hi, int maxdim) {
    check(lo <= hi, "random_complex: empty range");
    std::map<int, int> dims;
    for (int n = lo; n <= hi; ++n) dims[n] = g.range(0, maxdim);
    std::map<int, Mat<F>> vmat;  // V_n: dims[n] -> middle
    for (int n = lo; n <= hi; ++n) {
        int cap = std::min(dims[n], n > lo ? dims[n - 1] : 0);
        int m = cap > 0 ? g.range(0, cap) : 0;
        vmat[n] = random_mat(k, g, m, dims[n]);
    }
    std::map<int, Mat<F>> diffs;
    for (int n = lo + 1; n <= hi; ++n) {
        Mat<F> kerprev = kernel_basis(k, vmat[n - 1]);
        Mat<F> w = random_mat(k, g, kerprev.cols, vmat[n].rows);
        diffs[n] = mul(k, kerprev, mul(k, w, vmat[n]));
    }
    return make_complex(k, dims, diffs);
}

// Conjugate every degree by a random invertible change of basis; the second
// component is the isomorphism from x to the conjugated complex.
template <class F>
std::pair<Complex<F>, ChainMap<F>> random_conjugate(const Complex<F>& x, Rng& g) {
    const F& k = x.field;
    std::map<int, Mat<F>> basis;
    for (int n = x.lo; n <= x.hi; ++n) basis[n] = random_invertible(k, g, x.dim(n));
    std::map<int, int> dims;
    std::map<int, Mat<F>> diffs;
    for (int n = x.lo; n <= x.hi; ++n) {
        dims[n] = x.dim(n);
        if (n > x.lo)
            diffs[n] = mul(k, basis[n - 1], mul(k, x.d(n), inverse(k, basis[n])));
    }
    Complex<F> conj = make_complex(k, dims, diffs);
    std::map<int, Mat<F>> mats;
    for (auto& [n, b] : basis)
        if (!is_zero_entries<F>(b)) mats[n] = b;
    return {conj, make_chain_map(x, conj, mats)};
}

// d eta + eta d for one random family eta_n : x_n -> y_{n+1}.
template <class F>
ChainMap<F> random_null_map(Rng& g, const Complex<F>& x, const Complex<F>& y) {
    const F& k = x.field;
    std::map<int, Mat<F>> eta;
    for (int n = x.lo; n <= x.hi; ++n)
        eta[n] = random_mat(k, g, y.dim(n + 1), x.dim(n));
    auto eta_at = [&](int n) {
        auto it = eta.find(n);
        if (it != eta.end()) return it->second;
        return zeros<F>(y.dim(n + 1), x.dim(n));
    };
    std::map<int, Mat<F>> nul;
    for (int n = x.lo; n <= x.hi; ++n) {
        Mat<F> m = add(k, mul(k, y.d(n + 1), eta_at(n)),
                       mul(k, eta_at(n - 1), x.d(n)));
        if (!is_zero_entries<F>(m)) nul[n] = m;
    }
    return make_chain_map(x, y, std::move(nul));
}

// A chain map with an arbitrary homotopy class: transfer a random map of
// minimal models along the model data, then add a random null-homotopic part.
template <class F>
ChainMap<F> random_chain_map(Rng& g, const Complex<F>& x, const Complex<F>& y) {
    MinimalModel<F> mx = minimal_model(x);
    MinimalModel<F> my = minimal_model(y);
    const F& k = x.field;
    std::map<int, Mat<F>> phi;
    for (int n = std::min(mx.model.lo, my.model.lo);
         n <= std::max(mx.model.hi, my.model.hi); ++n) {
        Mat<F> m = random_mat(k, g, my.model.dim(n), mx.model.dim(n));
        if (!is_zero_entries<F>(m)) phi[n] = m;
    }
    ChainMap<F> base = compose(
        my.s, compose(ChainMap<F>{mx.model, my.model, std::move(phi)}, mx.p));
    return add_maps(base, random_null_map(g, x, y));
}

// A homotopy with free family: pick h at random and set g := f - (dh + hd).
template <class F>
CHomotopy<F> random_c_homotopy(Rng& g, const ChainMap<F>& f) {
    const F& k = f.src.field;
    std::map<int, Mat<F>> fam, gm;
    for (int n = f.src.lo; n <= f.src.hi; ++n)
        fam[n] = random_mat(k, g, f.dst.dim(n + 1), f.src.dim(n));
    auto at = [&](int n) {
        return detail::family_at(fam, n, f.dst.dim(n + 1), f.src.dim(n));
    };
    for (int n = f.src.lo; n <= f.src.hi; ++n) {
        Mat<F> m = sub(k, f.at(n),
                       add(k, mul(k, f.dst.d(n + 1), at(n)),
                           mul(k, at(n - 1), f.src.d(n))));
        if (!is_zero_entries<F>(m)) gm[n] = m;
    }
    return make_c_homotopy(f, make_chain_map(f.src, f.dst, std::move(gm)),
                           detail::normalize_family<F>(std::move(fam)));
}

// Build a square over a given top map and right leg: the left leg is the
// summand inclusion s -> s (+) pad and the bottom row is solved so that a
// random family witnesses the square.
template <class F>
HomotopySquare<F> pad_square(Rng& g, const ChainMap<F>& top,
                             const ChainMap<F>& bleg, const Complex<F>& pad) {
    const F& k = top.src.field;
    check(bleg.src == top.dst, "pad_square: right leg does not meet top");
    const Complex<F>& s = top.src;
    const Complex<F>& tprime = bleg.dst;
    ChainMap<F> a = sum_inclusion(s, pad, 0);
    ChainMap<F> bu = compose(bleg, top);
    std::map<int, Mat<F>> fam;
    for (int n = s.lo; n <= s.hi; ++n)
        fam[n] = random_mat(k, g, tprime.dim(n + 1), s.dim(n));
    auto at = [&](int n) {
        return detail::family_at(fam, n, tprime.dim(n + 1), s.dim(n));
    };
    std::map<int, Mat<F>> cm;
    for (int n = s.lo; n <= s.hi; ++n) {
        Mat<F> m = add(k, bu.at(n),
                       add(k, mul(k, tprime.d(n + 1), at(n)),
                           mul(k, at(n - 1), s.d(n))));
        if (!is_zero_entries<F>(m)) cm[n] = m;
    }
    ChainMap<F> c = make_chain_map(s, tprime, std::move(cm));
    ChainMap<F> e = random_chain_map(g, pad, tprime);
    ChainMap<F> bottom =
        add_maps(compose(c, sum_projection(s, pad, 0)),
                 compose(e, sum_projection(s, pad, 1)));
    return make_homotopy_square(top, bottom, a, bleg,
                                detail::normalize_family<F>(std::move(fam)));
}

template <class F>
HomotopySquare<F> random_square(const F& k, Rng& g, int lo, int hi, int maxdim) {
    Complex<F> x = random_complex(k, g, lo, hi, maxdim);
    Complex<F> xp = random_complex(k, g, lo, hi, maxdim);
    Complex<F> pad = random_complex(k, g, lo, hi, maxdim);
    Complex<F> yp = random_complex(k, g, lo, hi, maxdim);
    ChainMap<F> top = random_chain_map(g, x, xp);
    ChainMap<F> bleg = random_chain_map(g, xp, yp);
    return pad_square(g, top, bleg, pad);
}

// Four squares shaped for the interchange law: H: [u] -> [v], K: [v] -> [w],
// L: [u'] -> [v'], M: [v'] -> [w'] with L.a = H.b and M.a = K.b.
template <class F>
struct SquareQuadruple {
    HomotopySquare<F> H, K, L, M;
};

template <class F>
SquareQuadruple<F> random_square_quadruple(const F& k, Rng& g, int lo, int hi,
                                           int maxdim) {
    Complex<F> x = random_complex(k, g, lo, hi, maxdim);
    Complex<F> xp = random_complex(k, g, lo, hi, maxdim);
    Complex<F> xpp = random_complex(k, g, lo, hi, maxdim);
    Complex<F> p = random_complex(k, g, lo, hi, maxdim);
    Complex<F> pp = random_complex(k, g, lo, hi, maxdim);
    Complex<F> ppp = random_complex(k, g, lo, hi, maxdim);
    Complex<F> q = random_complex(k, g, lo, hi, maxdim);
    Complex<F> qp = random_complex(k, g, lo, hi, maxdim);
    Complex<F> qpp = random_complex(k, g, lo, hi, maxdim);

    ChainMap<F> u = random_chain_map(g, x, xp);
    ChainMap<F> up = random_chain_map(g, xp, xpp);
    ChainMap<F> b = sum_inclusion(xp, pp, 0);           // x' -> y'
    HomotopySquare<F> H = pad_square(g, u, b, p);       // [u] -> [v]
    Complex<F> ypp = direct_sum(xpp, ppp);
    ChainMap<F> cleg = random_chain_map(g, xpp, ypp);
    HomotopySquare<F> L = pad_square(g, up, cleg, pp);  // [u'] -> [v']
    const Complex<F>& yprime = b.dst;
    ChainMap<F> e = sum_inclusion(yprime, qp, 0);       // y' -> z'
    HomotopySquare<F> K = pad_square(g, H.bottom, e, q);
    Complex<F> zpp = direct_sum(ypp, qpp);
    ChainMap<F> f = random_chain_map(g, ypp, zpp);
    HomotopySquare<F> M = pad_square(g, L.bottom, f, qp);
    return SquareQuadruple<F>{std::move(H), std::move(K), std::move(L),
                              std::move(M)};
}

// ---------------------------------------------------------------------------
// Homotopy equivalences

template <class F>
struct EquivalenceData {
    ChainMap<F> g, h;       // both inverse to f up to homotopy (g = h here)
    CHomotopy<F> H;         // h f => id_x
    CHomotopy<F> K;         // f g => id_y
};

// Explicit two-sided inverse data for a quasi-isomorphism, computed through
// the minimal models of source and target.
template <class F>
EquivalenceData<F> homotopy_equivalence_data(const ChainMap<F>& f) {
    const F& k = f.src.field;
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    MinimalModel<F> mx = minimal_model(x);
    MinimalModel<F> my = minimal_model(y);
    ChainMap<F> phi = compose(my.p, compose(f, mx.s));
    check(is_iso(phi), "homotopy_equivalence_data: map is not invertible up to homotopy");
    std::map<int, Mat<F>> psim;
    for (int n = phi.src.lo; n <= phi.src.hi; ++n) {
        Mat<F> m = inverse(k, phi.at(n));
        if (!is_zero_entries<F>(m)) psim[n] = m;
    }
    ChainMap<F> psi{phi.dst, phi.src, std::move(psim)};
    ChainMap<F> ginv = compose(mx.s, compose(psi, my.p));  // y -> x

    ChainMap<F> c = compose(ginv, f);  // x -> x, equals s psi p f
    std::map<int, Mat<F>> hfam;
    for (int n = x.lo; n <= x.hi; ++n) {
        Mat<F> m = sub(k, mul(k, c.at(n + 1), mx.h_at(n)), mx.h_at(n));
        if (!is_zero_entries<F>(m)) hfam[n] = m;
    }
    CHomotopy<F> H = make_c_homotopy(c, identity_map(x), std::move(hfam));

    ChainMap<F> e = compose(f, ginv);  // y -> y
    std::map<int, Mat<F>> kfam;
    for (int n = y.lo; n <= y.hi; ++n) {
        Mat<F> m = sub(k, mul(k, my.h_at(n), e.at(n)), my.h_at(n));
        if (!is_zero_entries<F>(m)) kfam[n] = m;
    }
    CHomotopy<F> K = make_c_homotopy(e, identity_map(y), std::move(kfam));
    return EquivalenceData<F>{ginv, ginv, std::move(H), std::move(K)};
}

// A random sum of discs, used to pad equivalent complexes.
template <class F>
Complex<F> random_disc_sum(const F& k, Rng& g, int lo, int hi) {
    Complex<F> out = zero_complex(k);
    if (lo + 1 > hi) return out;
    int count = g.range(0, 2);
    for (int i = 0; i < count; ++i) {
        int n = g.range(lo + 1, hi);
        int d = g.range(1, 2);
        out = direct_sum(out, disc(k, n, d));
    }
    return out;
}

// A random homotopy equivalence: both sides share a core complex, padded by
// different disc sums, with a random null-homotopic perturbation on top.
template <class F>
ChainMap<F> random_homotopy_equivalence(const F& k, Rng& g, int lo, int hi,
                                        int maxdim) {
    Complex<F> z = random_complex(k, g, lo, hi, maxdim);
    Complex<F> dx = random_disc_sum(k, g, lo, hi);
    Complex<F> dy = random_disc_sum(k, g, lo, hi);
    Complex<F> x = direct_sum(z, dx);
    Complex<F> y = direct_sum(z, dy);
    ChainMap<F> f0 = compose(sum_inclusion(z, dy, 0), sum_projection(z, dx, 0));
    return add_maps(f0, random_null_map(g, x, y));
}

// Homology concentrated in a single degree: spheres there, discs elsewhere,
// then a random change of basis.
template <class F>
Complex<F> random_heart(const F& k, Rng& g, int deg, int lo, int hi) {
    Complex<F> base = zero_complex(k);
    int spheres = g.range(0, 2);
    if (spheres > 0) base = sphere(k, deg, spheres);
    base = direct_sum(base, random_disc_sum(k, g, lo, hi));
    return random_conjugate(base, g).first;
}

// Random stage diagram on window [a, b]: independent stage complexes joined
// by arbitrary-class maps.  The result is normalized, so its amplitude may
// be smaller than the requested window.
template <class F>
Filtered<F> random_filtered(const F& k, Rng& g, int a, int b, int lo, int hi,
                            int maxdim) {
    std::vector<Complex<F>> st;
    for (int n = a; n <= b; ++n)
        st.push_back(random_complex(k, g, lo, hi, maxdim));
    std::vector<ChainMap<F>> mp;
    for (size_t i = 0; i + 1 < st.size(); ++i)
        mp.push_back(random_chain_map(g, st[i], st[i + 1]));
    return make_filtered(k, a, std::move(st), std::move(mp));
}

// Homotopy coherent morphism of stage diagrams: a strict base (zero, or the
// identity when endo is set and then x == y is required) plus a levelwise
// null perturbation d e_n + e_n d.  The square homotopies are the families
// i^y e_n - e_{n+1} i^x induced by the same free choices, so the result is
// valid by construction while exercising nonzero homotopies.
template <class F>
DiagramMap<F> random_diagram_map(Rng& g, const Filtered<F>& x,
                                 const Filtered<F>& y, bool endo = false) {
    const F& k = x.field;
    if (endo) check(x == y, "random_diagram_map: identity base needs x == y");
    int lo = std::min(x.a, y.a);
    int hi = std::max(x.b, y.b);
    std::map<int, std::map<int, Mat<F>>> e;
    for (int n = lo; n <= hi; ++n) {
        Complex<F> xs = x.stage(n);
        Complex<F> ys = y.stage(n);
        for (int m = xs.lo; m <= xs.hi; ++m)
            e[n][m] = random_mat(k, g, ys.dim(m + 1), xs.dim(m));
    }
    auto e_at = [&](int n, int m) {
        int nn = std::min(n, hi);
        Complex<F> xs = x.stage(nn);
        Complex<F> ys = y.stage(nn);
        auto it = e.find(nn);
        if (it != e.end()) {
            auto jt = it->second.find(m);
            if (jt != it->second.end()) return jt->second;
        }
        return zeros<F>(ys.dim(m + 1), xs.dim(m));
    };
    std::vector<ChainMap<F>> levels;
    for (int n = lo; n <= hi; ++n) {
        Complex<F> xs = x.stage(n);
        Complex<F> ys = y.stage(n);
        std::map<int, Mat<F>> mats;
        for (int m = xs.lo; m <= xs.hi; ++m) {
            Mat<F> v = add(k, mul(k, ys.d(m + 1), e_at(n, m)),
                           mul(k, e_at(n, m - 1), xs.d(m)));
            if (endo) {
                for (int i = 0; i < std::min(v.rows, v.cols); ++i)
                    v.at(i, i) = k.add(v.at(i, i), k.one());
            }
            if (!is_zero_entries<F>(v)) mats[m] = v;
        }
        levels.push_back(make_chain_map(xs, ys, std::move(mats)));
    }
    std::vector<std::map<int, Mat<F>>> fams;
    for (int n = lo; n < hi; ++n) {
        Complex<F> xs = x.stage(n);
        ChainMap<F> ix = x.imap(n);
        ChainMap<F> iy = y.imap(n);
        std::map<int, Mat<F>> fam;
        for (int m = xs.lo; m <= xs.hi; ++m) {
            Mat<F> v = sub(k, mul(k, iy.at(m + 1), e_at(n, m)),
                           mul(k, e_at(n + 1, m), ix.at(m)));
            if (!is_zero_entries<F>(v)) fam[m] = v;
        }
        fams.push_back(std::move(fam));
    }
    return make_diagram_map(x, y, std::move(levels), std::move(fams));
}

// Levelwise inverse of a degreewise invertible chain map.
template <class F>
ChainMap<F> invert_iso(const ChainMap<F>& f) {
    const F& k = f.src.field;
    std::map<int, Mat<F>> mats;
    for (int n = f.dst.lo; n <= f.dst.hi; ++n) {
        Mat<F> m = inverse(k, f.at(n));
        if (!is_zero_entries<F>(m)) mats[n] = m;
    }
    return make_chain_map(f.dst, f.src, std::move(mats));
}

// Conjugate every column by a random change of basis.  The new outer maps
// V_{q-1} D_q V_q^{-1} still compose to zero, and the bases form a strict
// invertible map of towers from z to the conjugate, returned alongside it.
template <class F>
std::pair<BiComplex<F>, BiMap<F>> random_bicomplex_conjugate(const BiComplex<F>& z,
                                                             Rng& g) {
    const F& k = z.field;
    std::vector<Complex<F>> cols;
    std::vector<ChainMap<F>> fwd, bwd;
    for (int q = z.lo; q <= z.hi; ++q) {
        auto [conj, iso] = random_conjugate(z.col(q), g);
        cols.push_back(conj);
        bwd.push_back(invert_iso(iso));
        fwd.push_back(std::move(iso));
    }
    std::vector<ChainMap<F>> dmaps;
    for (int q = z.lo + 1; q <= z.hi; ++q) {
        size_t i = static_cast<size_t>(q - z.lo);
        dmaps.push_back(compose(fwd[i - 1], compose(z.dmap(q), bwd[i])));
    }
    BiComplex<F> out = make_bicomplex(k, z.lo, std::move(cols), std::move(dmaps));
    return {out, make_bimap(z, out, std::move(fwd))};
}

// Random bounded double complex over outer positions [olo, ohi] and inner
// degrees around [ilo, ihi]: a direct sum of elementary towers (a lone
// column, an identity pair, and a contraction triple x -> Cx -> Tx whose
// outer maps compose to zero), then a columnwise change of basis to make the
// outer maps dense.
template <class F>
BiComplex<F> random_bicomplex(const F& k, Rng& g, int olo, int ohi, int ilo,
                              int ihi, int maxdim, int pieces) {
    check(olo <= ohi && ilo <= ihi, "random_bicomplex: empty range");
    BiComplex<F> acc = zero_bicomplex(k);
    for (int t = 0; t < pieces; ++t) {
        int kind = static_cast<int>(g.below(3));
        if (kind == 1 && ohi - olo < 1) kind = 0;
        if (kind == 2 && ohi - olo < 2) kind = 0;
        Complex<F> w = random_complex(k, g, ilo, ihi, maxdim);
        if (kind == 0) {
            acc = direct_sum_bicomplex(acc, embed_column(w, g.range(olo, ohi)));
        } else if (kind == 1) {
            int q = g.range(olo + 1, ohi);
            std::vector<Complex<F>> cols = {w, w};
            std::vector<ChainMap<F>> dm = {identity_map(w)};
            acc = direct_sum_bicomplex(
                acc, make_bicomplex(k, q - 1, std::move(cols), std::move(dm)));
        } else {
            int q = g.range(olo + 2, ohi);
            std::vector<Complex<F>> cols = {apply_functor<F>(FunctorTag::T, w),
                                            apply_functor<F>(FunctorTag::C, w), w};
            std::vector<ChainMap<F>> dm = {nat<F>(NatTag::make(NatTag::pi), w),
                                           nat<F>(NatTag::make(NatTag::iota), w)};
            acc = direct_sum_bicomplex(
                acc, make_bicomplex(k, q - 2, std::move(cols), std::move(dm)));
        }
    }
    if (acc.is_zero()) return acc;
    return random_bicomplex_conjugate(acc, g).first;
}

}  // namespace exhom
