// The standard complicial structure on bounded complexes: the functors
// C, T, T^{-1}, P on objects and maps, all named natural transformations as
// explicit block matrices, and a batch identity verifier.
//
// Conventions (fixed throughout): (Cx)_n = x_{n-1} (+) x_n with
// d^{Cx} = [[-d, 0], [-id, d]]; T shifts up with negated differential and
// T^{-1} is its strict inverse; (Px)_n = x_n (+) x_{n+1} with
// d^{Px} = [[d, 0], [-id, -d]], so P = C T^{-1} holds on the nose.
// Composition of natural transformations reads right to left.
#pragma once

#include <exhom/complex.hpp>

#include <functional>
#include <utility>

namespace exhom {

enum class FunctorTag { C, T, Tinv, P };

inline const char* functor_name(FunctorTag t) {
    switch (t) {
        case FunctorTag::C: return "C";
        case FunctorTag::T: return "T";
        case FunctorTag::Tinv: return "Tinv";
        default: return "P";
    }
}

template <class F>
Complex<F> apply_functor(FunctorTag tag, const Complex<F>& x) {
    const F& k = x.field;
    std::map<int, int> dims;
    std::map<int, Mat<F>> diffs;
    switch (tag) {
        case FunctorTag::C:
            for (int n = x.lo; n <= x.hi + 1; ++n) {
                dims[n] = x.dim(n - 1) + x.dim(n);
                diffs[n] = from_blocks<F>(
                    {{neg(k, x.d(n - 1)), zeros<F>(x.dim(n - 2), x.dim(n))},
                     {neg(k, eye<F>(x.dim(n - 1))), x.d(n)}});
            }
            break;
        case FunctorTag::T:
            for (int n = x.lo + 1; n <= x.hi + 1; ++n) {
                dims[n] = x.dim(n - 1);
                diffs[n] = neg(k, x.d(n - 1));
            }
            break;
        case FunctorTag::Tinv:
            for (int n = x.lo - 1; n <= x.hi - 1; ++n) {
                dims[n] = x.dim(n + 1);
                diffs[n] = neg(k, x.d(n + 1));
            }
            break;
        case FunctorTag::P:
            for (int n = x.lo - 1; n <= x.hi; ++n) {
                dims[n] = x.dim(n) + x.dim(n + 1);
                diffs[n] = from_blocks<F>(
                    {{x.d(n), zeros<F>(x.dim(n - 1), x.dim(n + 1))},
                     {neg(k, eye<F>(x.dim(n))), neg(k, x.d(n + 1))}});
            }
            break;
    }
    return make_complex(k, dims, diffs);
}

template <class F>
ChainMap<F> apply_functor_map(FunctorTag tag, const ChainMap<F>& f) {
    Complex<F> src = apply_functor(tag, f.src);
    Complex<F> dst = apply_functor(tag, f.dst);
    std::map<int, Mat<F>> mats;
    int lo = std::min(src.lo, dst.lo), hi = std::max(src.hi, dst.hi);
    for (int n = lo; n <= hi; ++n) {
        Mat<F> m;
        switch (tag) {
            case FunctorTag::C:
                m = from_blocks<F>(
                    {{f.at(n - 1), zeros<F>(f.dst.dim(n - 1), f.src.dim(n))},
                     {zeros<F>(f.dst.dim(n), f.src.dim(n - 1)), f.at(n)}});
                break;
            case FunctorTag::T: m = f.at(n - 1); break;
            case FunctorTag::Tinv: m = f.at(n + 1); break;
            case FunctorTag::P:
                m = from_blocks<F>(
                    {{f.at(n), zeros<F>(f.dst.dim(n), f.src.dim(n + 1))},
                     {zeros<F>(f.dst.dim(n + 1), f.src.dim(n)), f.at(n + 1)}});
                break;
        }
        if (!is_zero_entries<F>(m)) mats[n] = m;
    }
    return ChainMap<F>{std::move(src), std::move(dst), std::move(mats)};
}

// A word of functors, outermost first: {C, Tinv} acts as x -> C(Tinv(x)).
using Word = std::vector<FunctorTag>;

template <class F>
Complex<F> apply_word(const Word& w, Complex<F> x) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = apply_functor(*it, x);
    return x;
}

template <class F>
ChainMap<F> apply_word_map(const Word& w, ChainMap<F> f) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) f = apply_functor_map(*it, f);
    return f;
}

// ---------------------------------------------------------------------------
// Natural transformations

struct NatTag {
    enum Kind { iota, pi, r, sigma, zeta, j, q, l, s, s_prime, tau } kind;
    FunctorTag tf = FunctorTag::C, tg = FunctorTag::C;  // used by tau only

    static NatTag make(Kind k) { return NatTag{k}; }
    static NatTag make_tau(FunctorTag f, FunctorTag g) {
        return NatTag{tau, f, g};
    }
};

// Domain and codomain of a transformation, as functor words.
inline std::pair<Word, Word> nat_signature(const NatTag& t) {
    using FT = FunctorTag;
    switch (t.kind) {
        case NatTag::iota: return {{}, {FT::C}};
        case NatTag::pi: return {{FT::C}, {FT::T}};
        case NatTag::r: return {{FT::C, FT::C}, {FT::C}};
        case NatTag::sigma: return {{FT::C, FT::C}, {FT::C, FT::C}};
        case NatTag::zeta: return {{FT::T, FT::C}, {FT::C, FT::C}};
        case NatTag::j: return {{FT::Tinv}, {FT::P}};
        case NatTag::q: return {{FT::P}, {}};
        case NatTag::l: return {{FT::T, FT::C}, {FT::T, FT::C}};
        case NatTag::s: return {{FT::P}, {FT::P, FT::P}};
        case NatTag::s_prime: return {{FT::C}, {FT::P, FT::C}};
        case NatTag::tau: return {{t.tf, t.tg}, {t.tg, t.tf}};
    }
    throw error("nat_signature: unknown tag");
}

namespace detail {

template <class F>
Mat<F> blockmat(const F& k, const std::vector<int>& rows,
                const std::vector<int>& cols,
                const std::vector<std::vector<int>>& sign) {
    // sign[i][j] in {-1,0,1} places -id/0/+id blocks; off-diagonal blocks of
    // unequal size must be 0.
    std::vector<std::vector<Mat<F>>> g(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) {
            int sg = sign[i][j];
            if (sg == 0) {
                g[i].push_back(zeros<F>(rows[i], cols[j]));
            } else {
                check(rows[i] == cols[j], "blockmat: id block shape");
                g[i].push_back(sg > 0 ? eye<F>(rows[i]) : neg(k, eye<F>(rows[i])));
            }
        }
    return from_blocks<F>(g);
}

// tau^{F,G}: FG -> GF per degree, straight from the table.
template <class F>
Mat<F> tau_component(const F& k, FunctorTag tf, FunctorTag tg,
                     const Complex<F>& x, int n) {
    using FT = FunctorTag;
    auto d = [&](int m) { return x.dim(m); };
    // abbreviations for the frequent split patterns
    auto diag2 = [&](int a, int b, int sa, int sb) {
        return blockmat<F>(k, {a, b}, {a, b}, {{sa, 0}, {0, sb}});
    };
    auto swap4 = [&](int a, int b, int c, int e, int s_bc, int s_cb, int s_dd) {
        // blocks (a,b,c,e) -> (a,c,b,e) with the middle swap signed
        return blockmat<F>(k, {a, b, c, e}, {a, c, b, e},
                           {{1, 0, 0, 0},
                            {0, 0, s_bc, 0},
                            {0, s_cb, 0, 0},
                            {0, 0, 0, s_dd}});
    };
    switch (tf) {
        case FT::C:
            switch (tg) {
                case FT::C:  // sigma
                    return blockmat<F>(k, {d(n - 2), d(n - 1), d(n - 1), d(n)},
                                       {d(n - 2), d(n - 1), d(n - 1), d(n)},
                                       {{-1, 0, 0, 0},
                                        {0, 0, 1, 0},
                                        {0, 1, 0, 0},
                                        {0, 0, 0, 1}});
                case FT::T: return diag2(d(n - 2), d(n - 1), -1, 1);
                case FT::Tinv: return diag2(d(n), d(n + 1), -1, 1);
                case FT::P:  // CP -> PC: (a,b,c,e) -> (a,c,-b,e)
                    return swap4(d(n - 1), d(n), d(n), d(n + 1), 1, -1, 1);
            }
            break;
        case FT::T:
            switch (tg) {
                case FT::C: return diag2(d(n - 2), d(n - 1), -1, 1);
                case FT::T: return neg(k, eye<F>(d(n - 2)));
                case FT::Tinv: return neg(k, eye<F>(d(n)));
                case FT::P: return diag2(d(n - 1), d(n), 1, -1);
            }
            break;
        case FT::Tinv:
            switch (tg) {
                case FT::C: return diag2(d(n), d(n + 1), -1, 1);
                case FT::T: return neg(k, eye<F>(d(n)));
                case FT::Tinv: return neg(k, eye<F>(d(n + 2)));
                case FT::P: return diag2(d(n + 1), d(n + 2), 1, -1);
            }
            break;
        case FT::P:
            switch (tg) {
                case FT::C:  // PC -> CP: (a,b,c,e) -> (a,-c,b,e)
                    return swap4(d(n - 1), d(n), d(n), d(n + 1), -1, 1, 1);
                case FT::T: return diag2(d(n - 1), d(n), 1, -1);
                case FT::Tinv: return diag2(d(n + 1), d(n + 2), 1, -1);
                case FT::P:  // (a,b,c,e) -> (a,c,b,-e)
                    return swap4(d(n), d(n + 1), d(n + 1), d(n + 2), 1, 1, -1);
            }
            break;
    }
    throw error("tau_component: unreachable");
}

}  // namespace detail

template <class F>
ChainMap<F> nat(const NatTag& t, const Complex<F>& x) {
    const F& k = x.field;
    auto [dw, cw] = nat_signature(t);
    Complex<F> src = apply_word(dw, x);
    Complex<F> dst = apply_word(cw, x);
    std::map<int, Mat<F>> mats;
    int lo = std::min(src.lo, dst.lo), hi = std::max(src.hi, dst.hi);
    auto d = [&](int m) { return x.dim(m); };
    for (int n = lo; n <= hi; ++n) {
        Mat<F> m;
        switch (t.kind) {
            case NatTag::iota:  // x_n -> x_{n-1} (+) x_n
                m = detail::blockmat<F>(k, {d(n - 1), d(n)}, {d(n)}, {{0}, {1}});
                break;
            case NatTag::pi:  // x_{n-1} (+) x_n -> x_{n-1}
                m = detail::blockmat<F>(k, {d(n - 1)}, {d(n - 1), d(n)}, {{1, 0}});
                break;
            case NatTag::r:  // (a,b,c,e) -> (b+c, e)
                m = detail::blockmat<F>(k, {d(n - 1), d(n)},
                                        {d(n - 2), d(n - 1), d(n - 1), d(n)},
                                        {{0, 1, 1, 0}, {0, 0, 0, 1}});
                break;
            case NatTag::sigma:
                m = detail::tau_component(k, FunctorTag::C, FunctorTag::C, x, n);
                break;
            case NatTag::zeta:  // (a,b) -> (a,b,-b,0)
                m = detail::blockmat<F>(k, {d(n - 2), d(n - 1), d(n - 1), d(n)},
                                        {d(n - 2), d(n - 1)},
                                        {{1, 0}, {0, 1}, {0, -1}, {0, 0}});
                break;
            case NatTag::j:  // x_{n+1} -> x_n (+) x_{n+1}
                m = detail::blockmat<F>(k, {d(n), d(n + 1)}, {d(n + 1)}, {{0}, {1}});
                break;
            case NatTag::q:  // x_n (+) x_{n+1} -> x_n
                m = detail::blockmat<F>(k, {d(n)}, {d(n), d(n + 1)}, {{1, 0}});
                break;
            case NatTag::l:  // -id on (TCx)_n = x_{n-2} (+) x_{n-1}
                m = detail::blockmat<F>(k, {d(n - 2), d(n - 1)},
                                        {d(n - 2), d(n - 1)}, {{-1, 0}, {0, -1}});
                break;
            case NatTag::s:  // (a,b) -> (a,b,b,0) into (x_n,x_{n+1},x_{n+1},x_{n+2})
                m = detail::blockmat<F>(k, {d(n), d(n + 1), d(n + 1), d(n + 2)},
                                        {d(n), d(n + 1)},
                                        {{1, 0}, {0, 1}, {0, 1}, {0, 0}});
                break;
            case NatTag::s_prime:  // (a,b) -> (a,b,b,0) into (x_{n-1},x_n,x_n,x_{n+1})
                m = detail::blockmat<F>(k, {d(n - 1), d(n), d(n), d(n + 1)},
                                        {d(n - 1), d(n)},
                                        {{1, 0}, {0, 1}, {0, 1}, {0, 0}});
                break;
            case NatTag::tau:
                m = detail::tau_component(k, t.tf, t.tg, x, n);
                break;
        }
        check(m.rows == dst.dim(n) && m.cols == src.dim(n),
              "nat: component shape mismatch");
        if (!is_zero_entries<F>(m)) mats[n] = m;
    }
    ChainMap<F> out{std::move(src), std::move(dst), std::move(mats)};
    check(is_chain_map(out), "nat: component is not a chain map");
    return out;
}

// ---------------------------------------------------------------------------
// Batch identity verifier

struct IdentityReport {
    std::vector<std::pair<std::string, bool>> items;
    bool all_ok = true;

    void add(const std::string& name, bool ok) {
        items.emplace_back(name, ok);
        all_ok = all_ok && ok;
    }
};

template <class F>
IdentityReport verify_complicial_identities(const Complex<F>& x) {
    using FT = FunctorTag;
    IdentityReport rep;
    auto N = [&](NatTag::Kind k, const Complex<F>& at) { return nat(NatTag::make(k), at); };
    auto Tau = [&](FT f, FT g, const Complex<F>& at) {
        return nat(NatTag::make_tau(f, g), at);
    };
    auto Fm = [&](FT f, const ChainMap<F>& m) { return apply_functor_map(f, m); };

    Complex<F> Cx = apply_functor(FT::C, x);
    Complex<F> CCx = apply_functor(FT::C, Cx);
    Complex<F> Tx = apply_functor(FT::T, x);
    Complex<F> Tix = apply_functor(FT::Tinv, x);
    Complex<F> Px = apply_functor(FT::P, x);
    Complex<F> TCx = apply_functor(FT::T, Cx);

    ChainMap<F> iota_x = N(NatTag::iota, x);
    ChainMap<F> iota_Cx = N(NatTag::iota, Cx);
    ChainMap<F> pi_Cx = N(NatTag::pi, Cx);
    ChainMap<F> r_x = N(NatTag::r, x);
    ChainMap<F> sigma_x = N(NatTag::sigma, x);
    ChainMap<F> zeta_x = N(NatTag::zeta, x);
    ChainMap<F> l_x = N(NatTag::l, x);

    // strict inverses and the path composite
    rep.add("T Tinv = id", apply_functor(FT::T, Tix) == x);
    rep.add("Tinv T = id", apply_functor(FT::Tinv, Tx) == x);
    rep.add("P = C Tinv", apply_functor(FT::C, Tix) == Px);

    // unitary law
    rep.add("r (C*iota) = id", compose(r_x, Fm(FT::C, iota_x)) == identity_map(Cx));
    rep.add("r (iota*C) = id", compose(r_x, iota_Cx) == identity_map(Cx));
    // semi-commutativity
    rep.add("sigma (C*iota) = iota*C", compose(sigma_x, Fm(FT::C, iota_x)) == iota_Cx);
    // involution and commutativity
    rep.add("sigma sigma = id", compose(sigma_x, sigma_x) == identity_map(CCx));
    rep.add("r sigma = r", compose(r_x, sigma_x) == r_x);

    // zeta split-sequence relations
    rep.add("r zeta = 0", compose(r_x, zeta_x) == zero_map(TCx, Cx));
    rep.add("(pi*C) zeta = id", compose(pi_Cx, zeta_x) == identity_map(TCx));
    rep.add("(iota*C) r + zeta (pi*C) = id",
            add_maps(compose(iota_Cx, r_x), compose(zeta_x, pi_Cx)) ==
                identity_map(CCx));
    rep.add("sigma zeta = zeta l", compose(sigma_x, zeta_x) == compose(zeta_x, l_x));

    // tau inversion for all 16 ordered pairs, plus the strictness signs
    {
        const FT tags[4] = {FT::C, FT::T, FT::Tinv, FT::P};
        bool inv_ok = true;
        for (FT f : tags)
            for (FT g : tags) {
                Complex<F> fgx = apply_functor(f, apply_functor(g, x));
                if (compose(Tau(g, f, x), Tau(f, g, x)) != identity_map(fgx))
                    inv_ok = false;
            }
        rep.add("tau{F,G} tau{G,F} = id (16 pairs)", inv_ok);
        Complex<F> TTx = apply_functor(FT::T, Tx);
        Complex<F> TiTix = apply_functor(FT::Tinv, Tix);
        rep.add("tau{T,T} = -id", Tau(FT::T, FT::T, x) == neg_map(identity_map(TTx)));
        rep.add("tau{Tinv,Tinv} = -id",
                Tau(FT::Tinv, FT::Tinv, x) == neg_map(identity_map(TiTix)));
    }

    // s as the two defining composites: both evaluate to (a,b) -> (a,b,b,0)
    {
        // s1 = (C*tau{C,Tinv}*Tinv).(sigma*TinvTinv).(zeta*TinvTinv)
        //      .(tau{C,T}*TinvTinv).(C*tau{Tinv,T}*Tinv).(P*alpha^{-1})
        Complex<F> TiTix2 = apply_functor(FT::Tinv, Tix);
        ChainMap<F> s1 = compose(
            Fm(FT::C, Tau(FT::C, FT::Tinv, Tix)),
            compose(N(NatTag::sigma, TiTix2),
                    compose(N(NatTag::zeta, TiTix2),
                            compose(Tau(FT::C, FT::T, TiTix2),
                                    Fm(FT::C, Tau(FT::Tinv, FT::T, Tix))))));
        // s2 = (C*tau{C,Tinv}*Tinv).(CC*tau{Tinv}).(zeta*TinvTinv)
        //      .(TC*tau{Tinv}).(T*tau{Tinv,C}*Tinv).(alpha^{-1}*P)
        ChainMap<F> tauTi = Tau(FT::Tinv, FT::Tinv, x);
        ChainMap<F> s2 = compose(
            Fm(FT::C, Tau(FT::C, FT::Tinv, Tix)),
            compose(Fm(FT::C, Fm(FT::C, tauTi)),
                    compose(N(NatTag::zeta, TiTix2),
                            compose(Fm(FT::T, Fm(FT::C, tauTi)),
                                    Fm(FT::T, Tau(FT::Tinv, FT::C, Tix))))));
        ChainMap<F> s_x = N(NatTag::s, x);
        rep.add("s1 = s2", s1 == s2);
        rep.add("s = s1", s_x == s1);
        // counit laws for the dual structure
        ChainMap<F> q_x = N(NatTag::q, x);
        rep.add("(P*q) s = id", compose(Fm(FT::P, q_x), s_x) == identity_map(Px));
        rep.add("(q*P) s = id", compose(N(NatTag::q, Px), s_x) == identity_map(Px));
        // dual multiplication law: s (r*Tinv) = (r*TinvP) (C*s)
        rep.add("s (r*Tinv) = (r*TinvP) (C*s)",
                compose(s_x, N(NatTag::r, Tix)) ==
                    compose(N(NatTag::r, apply_functor(FT::Tinv, Px)),
                            Fm(FT::C, s_x)));
    }

    // s' relations
    {
        ChainMap<F> sp = N(NatTag::s_prime, x);
        rep.add("(q*C) s' = id", compose(N(NatTag::q, Cx), sp) == identity_map(Cx));
        rep.add("(r*TinvC) (C*s') = s' r",
                compose(N(NatTag::r, apply_functor(FT::Tinv, Cx)), Fm(FT::C, sp)) ==
                    compose(sp, r_x));
    }

    // the four fundamental composite equalities
    {
        ChainMap<F> zeta_Cx = N(NatTag::zeta, Cx);       // TCC -> CCC
        ChainMap<F> sigma_Cx = N(NatTag::sigma, Cx);     // CCC -> CCC
        ChainMap<F> r_Cx = N(NatTag::r, Cx);             // CCC -> CC
        ChainMap<F> C_sigma = Fm(FT::C, sigma_x);        // CCC -> CCC
        ChainMap<F> C_piC = Fm(FT::C, pi_Cx);            // CCC -> CTC
        ChainMap<F> C_zeta = Fm(FT::C, zeta_x);          // CTC -> CCC
        // (r*C)(C*zeta)(C*pi*C)(C*sigma)(zeta*C) = 0
        ChainMap<F> lhs1 = compose(
            r_Cx, compose(C_zeta, compose(C_piC, compose(C_sigma, zeta_Cx))));
        rep.add("(r*C)(C*zeta)(C*pi*C)(C*sigma)(zeta*C) = 0",
                lhs1 == zero_map(apply_functor(FT::T, CCx), CCx));
        // zeta (pi*C) sigma (r*C) = (r*C)(C*zeta)(C*pi*C)(C*sigma)
        rep.add("zeta (pi*C) sigma (r*C) = (r*C)(C*zeta)(C*pi*C)(C*sigma)",
                compose(zeta_x, compose(pi_Cx, compose(sigma_x, r_Cx))) ==
                    compose(r_Cx, compose(C_zeta, compose(C_piC, C_sigma))));
        // (zeta*C)(T*zeta)(T*pi*C)(T*sigma) = (C*zeta)(C*pi*C)(C*sigma)(zeta*C)
        rep.add("(zeta*C)(T*zeta)(T*pi*C)(T*sigma) = (C*zeta)(C*pi*C)(C*sigma)(zeta*C)",
                compose(zeta_Cx,
                        compose(Fm(FT::T, zeta_x),
                                compose(Fm(FT::T, pi_Cx), Fm(FT::T, sigma_x)))) ==
                    compose(C_zeta, compose(C_piC, compose(C_sigma, zeta_Cx))));
        // zeta tau{C,T} (r*T) = (r*C)(C*zeta)(C*tau{C,T})
        ChainMap<F> tauCT = Tau(FT::C, FT::T, x);
        rep.add("zeta tau{C,T} (r*T) = (r*C)(C*zeta)(C*tau{C,T})",
                compose(zeta_x, compose(tauCT, N(NatTag::r, Tx))) ==
                    compose(r_Cx, compose(C_zeta, Fm(FT::C, tauCT))));
    }

    return rep;
}

// Naturality of a transformation against a test map: G(f) nat_x = nat_y F(f).
template <class F>
bool nat_is_natural(const NatTag& t, const ChainMap<F>& f) {
    auto [dw, cw] = nat_signature(t);
    return compose(apply_word_map(cw, f), nat(t, f.src)) ==
           compose(nat(t, f.dst), apply_word_map(dw, f));
}

}  // namespace exhom
