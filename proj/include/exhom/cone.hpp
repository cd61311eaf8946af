#pragma once

// Mapping cone and cylinder, homotopy fiber and path space, and the canonical
// morphisms connecting them.  The cone of f : x -> y sits on the chosen blocks
// (x_{n-1}, y_n) so that the convention equalities Cone id = C, Cone(x->0) = T
// and Cone(0->x) = id hold as equalities of complexes, not just isomorphisms.

#include <exhom/homotopy.hpp>

namespace exhom {

namespace detail {

// Assemble a validated chain map from a per-degree component builder.
template <class F, class Fn>
ChainMap<F> build_map(const Complex<F>& src, const Complex<F>& dst, Fn&& comp) {
    std::map<int, Mat<F>> mats;
    int lo = std::min(src.lo, dst.lo), hi = std::max(src.hi, dst.hi);
    for (int n = lo; n <= hi; ++n) {
        Mat<F> m = comp(n);
        check(m.rows == dst.dim(n) && m.cols == src.dim(n),
              "build_map: component shape at degree " + std::to_string(n));
        if (!is_zero_entries<F>(m)) mats[n] = std::move(m);
    }
    return make_chain_map(src, dst, std::move(mats));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cone

template <class F>
struct ConeData {
    Complex<F> cone;
    ChainMap<F> kappa;    // y -> Cone f
    ChainMap<F> mu;       // Cx -> Cone f
    ChainMap<F> psi;      // Cone f -> Tx
};

template <class F>
Complex<F> cone_complex(const ChainMap<F>& f) {
    const F& k = f.src.field;
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    std::map<int, int> dims;
    std::map<int, Mat<F>> diffs;
    int lo = std::min(x.lo + 1, y.lo), hi = std::max(x.hi + 1, y.hi);
    for (int n = lo; n <= hi; ++n) dims[n] = x.dim(n - 1) + y.dim(n);
    for (int n = lo; n <= hi; ++n) {
        Mat<F> m = from_blocks<F>(
            {{neg(k, x.d(n - 1)), zeros<F>(x.dim(n - 2), y.dim(n))},
             {neg(k, f.at(n - 1)), y.d(n)}});
        if (!is_zero_entries<F>(m)) diffs[n] = std::move(m);
    }
    return make_complex(k, dims, diffs);
}

template <class F>
ConeData<F> cone(const ChainMap<F>& f) {
    const F& k = f.src.field;
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    Complex<F> cn = cone_complex(f);
    Complex<F> cx = apply_functor(FunctorTag::C, x);
    Complex<F> tx = apply_functor(FunctorTag::T, x);
    ChainMap<F> kappa = detail::build_map(y, cn, [&](int n) {
        return detail::blockmat<F>(k, {x.dim(n - 1), y.dim(n)}, {y.dim(n)},
                                   {{0}, {1}});
    });
    ChainMap<F> mu = detail::build_map(cx, cn, [&](int n) {
        return from_blocks<F>(
            {{eye<F>(x.dim(n - 1)), zeros<F>(x.dim(n - 1), x.dim(n))},
             {zeros<F>(y.dim(n), x.dim(n - 1)), f.at(n)}});
    });
    ChainMap<F> psi = detail::build_map(cn, tx, [&](int n) {
        return detail::blockmat<F>(k, {x.dim(n - 1)}, {x.dim(n - 1), y.dim(n)},
                                   {{1, 0}});
    });
    return ConeData<F>{std::move(cn), std::move(kappa), std::move(mu),
                       std::move(psi)};
}

// Cone applied to a homotopy square: Cone(top) -> Cone(bottom) with blocks
// [[a, 0], [h, b]] for the square's witness family h.
template <class F>
ChainMap<F> cone_of_square(const HomotopySquare<F>& sq) {
    Complex<F> src = cone_complex(sq.top);
    Complex<F> dst = cone_complex(sq.bottom);
    const Complex<F>& y = sq.top.dst;
    const Complex<F>& xp = sq.bottom.src;
    return detail::build_map(src, dst, [&](int n) {
        return from_blocks<F>(
            {{sq.a.at(n - 1), zeros<F>(xp.dim(n - 1), y.dim(n))},
             {sq.H.at(n - 1), sq.b.at(n)}});
    });
}

// ---------------------------------------------------------------------------
// Cylinder

template <class F>
struct CylData {
    Complex<F> cyl;       // y (+) Cx as a complex
    ChainMap<F> xi1;      // x -> Cyl f, the twisted front inclusion
    ChainMap<F> xi2;      // y -> Cyl f
    ChainMap<F> xi3;      // Cx -> Cyl f
    ChainMap<F> eta;      // Cyl f -> Cone f
    ChainMap<F> upsilon;  // Cyl f -> y
};

template <class F>
CylData<F> cyl(const ChainMap<F>& f) {
    const F& k = f.src.field;
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    Complex<F> cx = apply_functor(FunctorTag::C, x);
    Complex<F> cy = direct_sum(y, cx);
    ChainMap<F> xi1 = detail::build_map(x, cy, [&](int n) {
        return from_blocks<F>({{f.at(n)},
                               {zeros<F>(x.dim(n - 1), x.dim(n))},
                               {neg(k, eye<F>(x.dim(n)))}});
    });
    ChainMap<F> xi2 = sum_inclusion(y, cx, 0);
    ChainMap<F> xi3 = sum_inclusion(y, cx, 1);
    ChainMap<F> ups = sum_projection(y, cx, 0);
    Complex<F> cn = cone_complex(f);
    ChainMap<F> eta = detail::build_map(cy, cn, [&](int n) {
        return from_blocks<F>(
            {{zeros<F>(x.dim(n - 1), y.dim(n)), eye<F>(x.dim(n - 1)),
              zeros<F>(x.dim(n - 1), x.dim(n))},
             {eye<F>(y.dim(n)), zeros<F>(y.dim(n), x.dim(n - 1)), f.at(n)}});
    });
    return CylData<F>{std::move(cy), std::move(xi1), std::move(xi2),
                      std::move(xi3), std::move(eta), std::move(ups)};
}

// Cylinder applied to a homotopy square: [[b, -H], [0, Ca]] against the
// assembled witness H : Cx -> y'.
template <class F>
ChainMap<F> cyl_of_square(const HomotopySquare<F>& sq) {
    const F& k = sq.top.src.field;
    const Complex<F>& y = sq.top.dst;
    Complex<F> src = direct_sum(y, apply_functor(FunctorTag::C, sq.top.src));
    Complex<F> dst = direct_sum(sq.bottom.dst,
                                apply_functor(FunctorTag::C, sq.bottom.src));
    ChainMap<F> hc = c_form(sq.H);
    ChainMap<F> ca = apply_functor_map(FunctorTag::C, sq.a);
    return detail::build_map(src, dst, [&](int n) {
        return from_blocks<F>(
            {{sq.b.at(n), neg(k, hc.at(n))},
             {zeros<F>(ca.dst.dim(n), y.dim(n)), ca.at(n)}});
    });
}

// ---------------------------------------------------------------------------
// Retractions of C(kappa) and kappa_{Cf}, and the assembled null-homotopies

// C Cone f -> Cy, the retraction characterized by r_c_cone . C(kappa) = id
// and r_c_cone . C(mu) = Cf . r_x.
template <class F>
ChainMap<F> r_c_cone(const ChainMap<F>& f) {
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    Complex<F> src = apply_functor(FunctorTag::C, cone_complex(f));
    Complex<F> dst = apply_functor(FunctorTag::C, y);
    return detail::build_map(src, dst, [&](int n) {
        return from_blocks<F>(
            {{zeros<F>(y.dim(n - 1), x.dim(n - 2)), eye<F>(y.dim(n - 1)),
              f.at(n - 1), zeros<F>(y.dim(n - 1), y.dim(n))},
             {zeros<F>(y.dim(n), x.dim(n - 2)),
              zeros<F>(y.dim(n), y.dim(n - 1)),
              zeros<F>(y.dim(n), x.dim(n - 1)), eye<F>(y.dim(n))}});
    });
}

// Cone(Cf) -> Cy, the companion retraction of kappa_{Cf}.
template <class F>
ChainMap<F> r_cone_c(const ChainMap<F>& f) {
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    Complex<F> src = cone_complex(apply_functor_map(FunctorTag::C, f));
    Complex<F> dst = apply_functor(FunctorTag::C, y);
    return detail::build_map(src, dst, [&](int n) {
        return from_blocks<F>(
            {{zeros<F>(y.dim(n - 1), x.dim(n - 2)), f.at(n - 1),
              eye<F>(y.dim(n - 1)), zeros<F>(y.dim(n - 1), y.dim(n))},
             {zeros<F>(y.dim(n), x.dim(n - 2)),
              zeros<F>(y.dim(n), x.dim(n - 1)),
              zeros<F>(y.dim(n), y.dim(n - 1)), eye<F>(y.dim(n))}});
    });
}

// For a commutative square over f with a diagonal h : y -> x' satisfying
// f' . h = b, the assembled null-homotopy C Cone f -> Cone f' of the induced
// map on cones.
template <class F>
ChainMap<F> theta(const ChainMap<F>& f, const ChainMap<F>& fprime,
                  const ChainMap<F>& h, const ChainMap<F>& b) {
    check(h.src == f.dst && h.dst == fprime.src, "theta: diagonal shape");
    check(compose(fprime, h) == b, "theta: diagonal does not factor the base");
    ChainMap<F> cone_hb =
        cone_of_square(strict_square(identity_map(f.dst), fprime, h, b));
    return compose(cone_hb, r_c_cone(f));
}

// Special case against the zero target: C Cone f -> Ty.
template <class F>
ChainMap<F> theta_f(const ChainMap<F>& f) {
    const Complex<F>& y = f.dst;
    Complex<F> z = zero_complex(f.src.field);
    return theta(f, zero_map(y, z), identity_map(y), zero_map(y, z));
}

// ---------------------------------------------------------------------------
// Structure isomorphisms of the cone under C and T

// C Cone f -> Cone(Cf), blockwise (p,q,r,s) |-> (-p,r,q,s).
template <class F>
ChainMap<F> sigma_cone(const ChainMap<F>& f) {
    const F& k = f.src.field;
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    Complex<F> src = apply_functor(FunctorTag::C, cone_complex(f));
    Complex<F> dst = cone_complex(apply_functor_map(FunctorTag::C, f));
    return detail::build_map(src, dst, [&](int n) {
        return detail::blockmat<F>(
            k, {x.dim(n - 2), x.dim(n - 1), y.dim(n - 1), y.dim(n)},
            {x.dim(n - 2), y.dim(n - 1), x.dim(n - 1), y.dim(n)},
            {{-1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
    });
}

// T Cone f -> Cone(Tf), blockwise (p,q) |-> (-p,q).
template <class F>
ChainMap<F> sigma_t_cone(const ChainMap<F>& f) {
    const F& k = f.src.field;
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    Complex<F> src = apply_functor(FunctorTag::T, cone_complex(f));
    Complex<F> dst = cone_complex(apply_functor_map(FunctorTag::T, f));
    return detail::build_map(src, dst, [&](int n) {
        return detail::blockmat<F>(k, {x.dim(n - 2), y.dim(n - 1)},
                                   {x.dim(n - 2), y.dim(n - 1)},
                                   {{-1, 0}, {0, 1}});
    });
}

// ---------------------------------------------------------------------------
// The projection sequence of the cone

// Tx -> Ty (+) CTx, where the target carries the split model of Cone(psi_f).
template <class F>
ChainMap<F> kappa_psi(const ChainMap<F>& f) {
    Complex<F> tx = apply_functor(FunctorTag::T, f.src);
    Complex<F> ty = apply_functor(FunctorTag::T, f.dst);
    ChainMap<F> tf = apply_functor_map(FunctorTag::T, f);
    Complex<F> ctx = apply_functor(FunctorTag::C, tx);
    ChainMap<F> top = compose(sum_inclusion(ty, ctx, 0), neg_map(tf));
    ChainMap<F> bot = compose(sum_inclusion(ty, ctx, 1),
                              nat(NatTag::make(NatTag::iota), tx));
    return add_maps(top, bot);
}

// C Cone f -> Ty (+) CTx, the matching quotient map.
template <class F>
ChainMap<F> mu_psi(const ChainMap<F>& f) {
    Complex<F> tx = apply_functor(FunctorTag::T, f.src);
    Complex<F> ty = apply_functor(FunctorTag::T, f.dst);
    Complex<F> ctx = apply_functor(FunctorTag::C, tx);
    ConeData<F> cd = cone(f);
    ChainMap<F> cpsi = apply_functor_map(FunctorTag::C, cd.psi);
    ChainMap<F> top = compose(sum_inclusion(ty, ctx, 0), neg_map(theta_f(f)));
    ChainMap<F> bot = compose(sum_inclusion(ty, ctx, 1), cpsi);
    return add_maps(top, bot);
}

// Cone(psi_f) -> Ty (+) CTx, carrying the canonical cofiber data of psi_f to
// the split model: (p,q,r) |-> (-q - fr, p, r).
template <class F>
ChainMap<F> puppe_iso(const ChainMap<F>& f) {
    const F& k = f.src.field;
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    ConeData<F> cd = cone(f);
    Complex<F> tx = apply_functor(FunctorTag::T, x);
    Complex<F> src = cone_complex(cd.psi);
    Complex<F> dst = direct_sum(apply_functor(FunctorTag::T, y),
                                apply_functor(FunctorTag::C, tx));
    return detail::build_map(src, dst, [&](int n) {
        // blocks (x_{n-2}, y_{n-1}, x_{n-1}) -> (y_{n-1}, x_{n-2}, x_{n-1})
        return from_blocks<F>(
            {{zeros<F>(y.dim(n - 1), x.dim(n - 2)),
              neg(k, eye<F>(y.dim(n - 1))), neg(k, f.at(n - 1))},
             {eye<F>(x.dim(n - 2)), zeros<F>(x.dim(n - 2), y.dim(n - 1)),
              zeros<F>(x.dim(n - 2), x.dim(n - 1))},
             {zeros<F>(x.dim(n - 1), x.dim(n - 2)),
              zeros<F>(x.dim(n - 1), y.dim(n - 1)), eye<F>(x.dim(n - 1))}});
    });
}

// ---------------------------------------------------------------------------
// Swapping the two cone directions of a square

// Exchange the roles of the arrows and the legs, reversing the witness.
template <class F>
HomotopySquare<F> transpose_square(const HomotopySquare<F>& sq) {
    return HomotopySquare<F>{sq.a, sq.b, sq.top, sq.bottom,
                             neg_homotopy(sq.H)};
}

// Cone(cone_of_square(sq)) -> Cone(cone_of_square(transpose_square(sq))),
// blockwise (p,q,r,s) |-> (-p,r,q,s).  The same map built on the transposed
// square is the inverse.
template <class F>
ChainMap<F> cone_cone_swap(const HomotopySquare<F>& sq) {
    const F& k = sq.top.src.field;
    const Complex<F>& x = sq.top.src;
    const Complex<F>& y = sq.top.dst;
    const Complex<F>& xp = sq.bottom.src;
    const Complex<F>& yp = sq.bottom.dst;
    Complex<F> src = cone_complex(cone_of_square(sq));
    Complex<F> dst = cone_complex(cone_of_square(transpose_square(sq)));
    return detail::build_map(src, dst, [&](int n) {
        return detail::blockmat<F>(
            k, {x.dim(n - 2), xp.dim(n - 1), y.dim(n - 1), yp.dim(n)},
            {x.dim(n - 2), y.dim(n - 1), xp.dim(n - 1), yp.dim(n)},
            {{-1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
    });
}

// ---------------------------------------------------------------------------
// Cone of a composition

template <class F>
struct ConeCompData {
    ChainMap<F> mono;         // Cone f -> Cone gf (+) Cy
    ChainMap<F> epi;          // Cone gf (+) Cy -> Cone g
    ChainMap<F> comparison;   // Cone g -> Cone(Cone(id_x, g)), an h-equivalence
};

template <class F>
ConeCompData<F> cone_of_composition(const ChainMap<F>& f,
                                    const ChainMap<F>& g) {
    check(f.dst == g.src, "cone_of_composition: maps do not compose");
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    const Complex<F>& z = g.dst;
    ChainMap<F> gf = compose(g, f);
    Complex<F> cgf = cone_complex(gf);
    Complex<F> cy = apply_functor(FunctorTag::C, y);
    ChainMap<F> into_gf =
        cone_of_square(strict_square(f, gf, identity_map(x), g));
    ChainMap<F> into_cy =
        cone_of_square(strict_square(f, identity_map(y), f, identity_map(y)));
    ChainMap<F> mono = add_maps(compose(sum_inclusion(cgf, cy, 0), into_gf),
                                compose(sum_inclusion(cgf, cy, 1),
                                        neg_map(into_cy)));
    ChainMap<F> from_gf =
        cone_of_square(strict_square(gf, g, f, identity_map(z)));
    ChainMap<F> from_cy =
        cone_of_square(strict_square(identity_map(y), g, identity_map(y), g));
    ChainMap<F> epi = add_maps(compose(from_gf, sum_projection(cgf, cy, 0)),
                               compose(from_cy, sum_projection(cgf, cy, 1)));
    ConeData<F> df = cone(f);
    ConeData<F> dgf = cone(gf);
    ChainMap<F> comparison =
        cone_of_square(strict_square(g, into_gf, df.kappa, dgf.kappa));
    return ConeCompData<F>{std::move(mono), std::move(epi),
                           std::move(comparison)};
}

// ---------------------------------------------------------------------------
// Fundamental triangle of the cone

// The pair Cone f -> Cone mu_f -> Cone f composing to the identity: the cone
// of (iota_x, kappa_f) followed by the cone of (0, id) witnessed by -mu . r.
template <class F>
std::pair<ChainMap<F>, ChainMap<F>> fundamental_triangle(const ChainMap<F>& f) {
    const Complex<F>& x = f.src;
    ConeData<F> cd = cone(f);
    Complex<F> cx = apply_functor(FunctorTag::C, x);
    ChainMap<F> iota_x = nat(NatTag::make(NatTag::iota), x);
    ChainMap<F> into =
        cone_of_square(strict_square(f, cd.mu, iota_x, cd.kappa));
    ChainMap<F> r_x = nat(NatTag::make(NatTag::r), x);
    ChainMap<F> wit = neg_map(compose(cd.mu, r_x));   // CCx -> Cone f
    CHomotopy<F> H = c_homotopy_from_form(zero_map(cx, cd.cone), cd.mu, wit);
    Complex<F> zc = zero_complex(x.field);
    HomotopySquare<F> back_sq = make_homotopy_square(
        cd.mu, zero_map(zc, cd.cone), zero_map(cx, zc), identity_map(cd.cone),
        H.h);
    return {std::move(into), cone_of_square(back_sq)};
}

// ---------------------------------------------------------------------------
// Homotopy fiber and path space

template <class F>
struct FibData {
    Complex<F> hfib;      // blocks (x_n, y_{n+1})
    Complex<F> pat;       // x (+) Py
    ChainMap<F> nu;       // hFib f -> Py
    ChainMap<F> upsilon;  // hFib f -> x
    ChainMap<F> lambda;   // T^{-1}y -> hFib f
    ChainMap<F> rho;      // hFib f -> Pat f
    ChainMap<F> t1;       // Pat f -> x
    ChainMap<F> t2;       // Pat f -> y
    ChainMap<F> chi;      // x -> Pat f
};

template <class F>
Complex<F> hfib_complex(const ChainMap<F>& f) {
    const F& k = f.src.field;
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    std::map<int, int> dims;
    std::map<int, Mat<F>> diffs;
    int lo = std::min(x.lo, y.lo - 1), hi = std::max(x.hi, y.hi - 1);
    for (int n = lo; n <= hi; ++n) dims[n] = x.dim(n) + y.dim(n + 1);
    for (int n = lo; n <= hi; ++n) {
        Mat<F> m = from_blocks<F>(
            {{x.d(n), zeros<F>(x.dim(n - 1), y.dim(n + 1))},
             {neg(k, f.at(n)), neg(k, y.d(n + 1))}});
        if (!is_zero_entries<F>(m)) diffs[n] = std::move(m);
    }
    return make_complex(k, dims, diffs);
}

template <class F>
Complex<F> pat(const ChainMap<F>& f) {
    return direct_sum(f.src, apply_functor(FunctorTag::P, f.dst));
}

template <class F>
FibData<F> hfib(const ChainMap<F>& f) {
    const F& k = f.src.field;
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    Complex<F> hf = hfib_complex(f);
    Complex<F> py = apply_functor(FunctorTag::P, y);
    Complex<F> tiy = apply_functor(FunctorTag::Tinv, y);
    Complex<F> pt = direct_sum(x, py);
    ChainMap<F> nu = detail::build_map(hf, py, [&](int n) {
        return from_blocks<F>(
            {{f.at(n), zeros<F>(y.dim(n), y.dim(n + 1))},
             {zeros<F>(y.dim(n + 1), x.dim(n)), eye<F>(y.dim(n + 1))}});
    });
    ChainMap<F> ups = detail::build_map(hf, x, [&](int n) {
        return detail::blockmat<F>(k, {x.dim(n)}, {x.dim(n), y.dim(n + 1)},
                                   {{1, 0}});
    });
    ChainMap<F> lambda = detail::build_map(tiy, hf, [&](int n) {
        return detail::blockmat<F>(k, {x.dim(n), y.dim(n + 1)}, {y.dim(n + 1)},
                                   {{0}, {1}});
    });
    ChainMap<F> rho = add_maps(compose(sum_inclusion(x, py, 0), ups),
                               compose(sum_inclusion(x, py, 1), neg_map(nu)));
    ChainMap<F> t1 = sum_projection(x, py, 0);
    ChainMap<F> q_y = nat(NatTag::make(NatTag::q), y);
    ChainMap<F> t2 = add_maps(compose(f, t1),
                              compose(q_y, sum_projection(x, py, 1)));
    ChainMap<F> chi = sum_inclusion(x, py, 0);
    return FibData<F>{std::move(hf), std::move(pt), std::move(nu),
                      std::move(ups), std::move(lambda), std::move(rho),
                      std::move(t1), std::move(t2), std::move(chi)};
}

// T hFib f -> Cone f, blockwise (u, v) |-> (-u, v).
template <class F>
ChainMap<F> cone_thfib_iso(const ChainMap<F>& f) {
    const F& k = f.src.field;
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    Complex<F> src = apply_functor(FunctorTag::T, hfib_complex(f));
    Complex<F> dst = cone_complex(f);
    return detail::build_map(src, dst, [&](int n) {
        return detail::blockmat<F>(k, {x.dim(n - 1), y.dim(n)},
                                   {x.dim(n - 1), y.dim(n)}, {{-1, 0}, {0, 1}});
    });
}

// ---------------------------------------------------------------------------
// Canonical homotopy pushout and pullback

template <class F>
struct PushoutData {
    Complex<F> space;        // blocks (y_{n-1}, x_n, z_n)
    ChainMap<F> i_f;         // z -> space
    ChainMap<F> i_g;         // x -> space
    CHomotopy<F> witness;    // i_f . g  =>  i_g . f
};

// Pushout of the span x <-f- y -g-> z.
template <class F>
PushoutData<F> homotopy_pushout(const ChainMap<F>& f, const ChainMap<F>& g) {
    check(f.src == g.src, "homotopy_pushout: legs must share their source");
    const Complex<F>& x = f.dst;
    const Complex<F>& z = g.dst;
    ChainMap<F> corner = add_maps(compose(sum_inclusion(x, z, 0), f),
                                  compose(sum_inclusion(x, z, 1), g));
    ConeData<F> cd = cone(corner);
    ChainMap<F> i_g = compose(cd.kappa, sum_inclusion(x, z, 0));
    ChainMap<F> i_f = neg_map(compose(cd.kappa, sum_inclusion(x, z, 1)));
    ChainMap<F> wit = neg_map(cd.mu);    // Cy -> space
    CHomotopy<F> W =
        c_homotopy_from_form(compose(i_f, g), compose(i_g, f), wit);
    return PushoutData<F>{std::move(cd.cone), std::move(i_f), std::move(i_g),
                          std::move(W)};
}

// The mediating map for a cocone (gprime : x -> u, fprime : z -> u,
// H : fprime . g => gprime . f) on the span x <-f- y -g-> z.
template <class F>
ChainMap<F> pushout_solve(const PushoutData<F>& P, const ChainMap<F>& f,
                          const ChainMap<F>& g, const ChainMap<F>& fprime,
                          const ChainMap<F>& gprime, const CHomotopy<F>& H) {
    check(H.f == compose(fprime, g) && H.g == compose(gprime, f),
          "pushout_solve: witness does not connect the cocone");
    const F& k = f.src.field;
    const Complex<F>& u = gprime.dst;
    return detail::build_map(P.space, u, [&](int n) {
        return from_blocks<F>(
            {{H.at(n - 1), gprime.at(n), neg(k, fprime.at(n))}});
    });
}

template <class F>
struct PullbackData {
    Complex<F> space;        // blocks (x_n, z_n, y_{n+1})
    ChainMap<F> p_f;         // space -> z
    ChainMap<F> p_g;         // space -> x
    PHomotopy<F> witness;    // g . p_f  =>  f . p_g
};

// Pullback of the cospan x -f-> y <-g- z.
template <class F>
PullbackData<F> homotopy_pullback(const ChainMap<F>& f, const ChainMap<F>& g) {
    check(f.dst == g.dst, "homotopy_pullback: legs must share their target");
    const Complex<F>& x = f.src;
    const Complex<F>& z = g.src;
    ChainMap<F> corner = add_maps(compose(f, sum_projection(x, z, 0)),
                                  compose(g, sum_projection(x, z, 1)));
    FibData<F> fd = hfib(corner);
    ChainMap<F> p_g = compose(sum_projection(x, z, 0), fd.upsilon);
    ChainMap<F> p_f = neg_map(compose(sum_projection(x, z, 1), fd.upsilon));
    ChainMap<F> wit = neg_map(fd.nu);    // space -> Py
    PHomotopy<F> W =
        p_homotopy_from_form(compose(g, p_f), compose(f, p_g), wit);
    return PullbackData<F>{std::move(fd.hfib), std::move(p_f), std::move(p_g),
                           std::move(W)};
}

// The mediating map for a cone (b : u -> x, c : u -> z, H : g . c => f . b)
// on the cospan x -f-> y <-g- z.
template <class F>
ChainMap<F> pullback_solve(const PullbackData<F>& P, const ChainMap<F>& f,
                           const ChainMap<F>& g, const ChainMap<F>& b,
                           const ChainMap<F>& c, const PHomotopy<F>& H) {
    check(H.f == compose(g, c) && H.g == compose(f, b),
          "pullback_solve: witness does not connect the cone");
    const F& k = f.src.field;
    const Complex<F>& u = b.src;
    return detail::build_map(u, P.space, [&](int n) {
        return from_blocks<F>({{b.at(n)}, {neg(k, c.at(n))}, {H.at(n)}});
    });
}

}  // namespace exhom
