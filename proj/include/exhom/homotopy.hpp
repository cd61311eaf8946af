// Chain-homotopy calculus: C-homotopies, P-homotopies, CC-homotopies,
// homotopy commutative squares, and their composition laws.
//
// A homotopy is stored as its classical degree +1 family h_n: x_n -> y_{n+1};
// the assembled forms Cx -> y and x -> Py are derived views. The defining
// equation d^y_{n+1} h_n + h_{n-1} d^x_n = f_n - g_n is validated exactly on
// construction. A CC-homotopy from H to L stores the family s_n: x_n -> y_{n+2}
// with h_n - l_n = d^y_{n+2} s_n - s_{n-1} d^x_n.
#pragma once

#include <exhom/standard.hpp>

#include <optional>

namespace exhom {

namespace detail {

// Materialize a family entry with the expected shape.
template <class F>
Mat<F> family_at(const std::map<int, Mat<F>>& fam, int n, int rows, int cols) {
    auto it = fam.find(n);
    if (it == fam.end()) return zeros<F>(rows, cols);
    check(it->second.rows == rows && it->second.cols == cols,
          "family entry has wrong shape");
    return it->second;
}

template <class F>
std::map<int, Mat<F>> normalize_family(std::map<int, Mat<F>> fam) {
    for (auto it = fam.begin(); it != fam.end();) {
        if (is_zero_entries<F>(it->second))
            it = fam.erase(it);
        else
            ++it;
    }
    return fam;
}

// Solve d^y_{n+off} u_n + qsign * u_{n-1} d^x_n = rhs(n) for a degree-indexed
// family {u_n: x_n -> y_{n+off}}, as one sparse linear system over all n.
template <class F>
std::optional<std::map<int, Mat<F>>> solve_family(
    const F& k, const Complex<F>& x, const Complex<F>& y, int off, int qsign,
    const std::function<Mat<F>(int)>& rhs) {
    std::map<int, int> var_off;
    int nvars = 0;
    for (int n = x.lo; n <= x.hi; ++n)
        if (x.dim(n) > 0 && y.dim(n + off) > 0) {
            var_off[n] = nvars;
            nvars += y.dim(n + off) * x.dim(n);
        }
    int neqs = 0;
    std::map<int, int> eq_off;
    for (int n = x.lo; n <= x.hi; ++n)
        if (x.dim(n) > 0 && y.dim(n + off - 1) > 0) {
            eq_off[n] = neqs;
            neqs += y.dim(n + off - 1) * x.dim(n);
        }
    Mat<F> A = zeros<F>(neqs, nvars);
    Mat<F> b = zeros<F>(neqs, 1);
    for (auto [n, eo] : eq_off) {
        const int yd = y.dim(n + off - 1);
        Mat<F> r = rhs(n);
        check(r.rows == yd && r.cols == x.dim(n), "solve_family: rhs shape");
        for (int i = 0; i < yd; ++i)
            for (int j = 0; j < x.dim(n); ++j)
                b.at(eo + i * x.dim(n) + j, 0) = r.at(i, j);
        if (auto vo = var_off.find(n); vo != var_off.end()) {
            const Mat<F> dy = y.d(n + off);  // y_{n+off} -> y_{n+off-1}
            for (int i = 0; i < yd; ++i)
                for (int j = 0; j < x.dim(n); ++j)
                    for (int t = 0; t < y.dim(n + off); ++t)
                        A.at(eo + i * x.dim(n) + j, vo->second + t * x.dim(n) + j) =
                            k.add(A.at(eo + i * x.dim(n) + j,
                                       vo->second + t * x.dim(n) + j),
                                  dy.at(i, t));
        }
        if (auto vo = var_off.find(n - 1); vo != var_off.end()) {
            const Mat<F> dx = x.d(n);  // x_n -> x_{n-1}
            for (int i = 0; i < yd; ++i)
                for (int j = 0; j < x.dim(n); ++j)
                    for (int m = 0; m < x.dim(n - 1); ++m) {
                        auto& cell = A.at(eo + i * x.dim(n) + j,
                                          vo->second + i * x.dim(n - 1) + m);
                        auto term = dx.at(m, j);
                        if (qsign < 0) term = k.neg(term);
                        cell = k.add(cell, term);
                    }
        }
    }
    auto sol = solve(k, A, b);
    if (!sol) return std::nullopt;
    std::map<int, Mat<F>> out;
    for (auto [n, vo] : var_off) {
        Mat<F> u(y.dim(n + off), x.dim(n));
        for (int t = 0; t < u.rows; ++t)
            for (int j = 0; j < u.cols; ++j) u.at(t, j) = sol->at(vo + t * u.cols + j, 0);
        if (!is_zero_entries<F>(u)) out[n] = u;
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// C-homotopies

template <class F>
struct CHomotopy {
    ChainMap<F> f, g;            // parallel maps x -> y
    std::map<int, Mat<F>> h;     // h_n: x_n -> y_{n+1}

    const Complex<F>& src() const { return f.src; }
    const Complex<F>& dst() const { return f.dst; }
    Mat<F> at(int n) const {
        return detail::family_at(h, n, f.dst.dim(n + 1), f.src.dim(n));
    }
    bool operator==(const CHomotopy& o) const {
        return f == o.f && g == o.g && h == o.h;
    }
    bool operator!=(const CHomotopy& o) const { return !(*this == o); }
};

template <class F>
CHomotopy<F> make_c_homotopy(const ChainMap<F>& f, const ChainMap<F>& g,
                             std::map<int, Mat<F>> h, bool validate = true) {
    check(f.src == g.src && f.dst == g.dst, "make_c_homotopy: maps not parallel");
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    const F& k = x.field;
    for (auto& [n, m] : h)
        check(m.rows == y.dim(n + 1) && m.cols == x.dim(n),
              "make_c_homotopy: family shape at degree " + std::to_string(n));
    CHomotopy<F> H{f, g, detail::normalize_family<F>(std::move(h))};
    if (validate) {
        for (int n = x.lo - 1; n <= x.hi + 1; ++n) {
            Mat<F> lhs = add(k, mul(k, y.d(n + 1), H.at(n)),
                             mul(k, H.at(n - 1), x.d(n)));
            if (lhs != sub(k, f.at(n), g.at(n)))
                throw error("homotopy equation fails at degree " +
                            std::to_string(n));
        }
    }
    return H;
}

template <class F>
CHomotopy<F> zero_homotopy(const ChainMap<F>& f) {
    return CHomotopy<F>{f, f, {}};
}

// Assembled form Cx -> y with H_n = (-h_{n-1} | f_n - g_n).
template <class F>
ChainMap<F> c_form(const CHomotopy<F>& H) {
    const F& k = H.src().field;
    Complex<F> cx = apply_functor(FunctorTag::C, H.src());
    std::map<int, Mat<F>> mats;
    for (int n = cx.lo; n <= cx.hi; ++n) {
        Mat<F> m = hcat(neg(k, H.at(n - 1)), sub(k, H.f.at(n), H.g.at(n)));
        if (!is_zero_entries<F>(m)) mats[n] = m;
    }
    return ChainMap<F>{cx, H.dst(), std::move(mats)};
}

// Recover the family from a map Cx -> y with M iota = f - g.
template <class F>
CHomotopy<F> c_homotopy_from_form(const ChainMap<F>& f, const ChainMap<F>& g,
                                  const ChainMap<F>& M) {
    const Complex<F>& x = f.src;
    const F& k = x.field;
    check(M.dst == f.dst && M.src == apply_functor(FunctorTag::C, x),
          "c_homotopy_from_form: shape mismatch");
    std::map<int, Mat<F>> h;
    for (int n = x.lo; n <= x.hi; ++n) {
        Mat<F> mn = M.at(n + 1);  // x_n (+) x_{n+1} -> y_{n+1}
        std::vector<int> rows(mn.rows), cols(x.dim(n));
        for (int i = 0; i < mn.rows; ++i) rows[i] = i;
        for (int j = 0; j < x.dim(n); ++j) cols[j] = j;
        h[n] = neg(k, submatrix(mn, rows, cols));
    }
    CHomotopy<F> H = make_c_homotopy(f, g, std::move(h));
    check(c_form(H) == M, "c_homotopy_from_form: map is not in homotopy form");
    return H;
}

template <class F>
CHomotopy<F> neg_homotopy(const CHomotopy<F>& H) {
    const F& k = H.src().field;
    std::map<int, Mat<F>> h;
    for (auto& [n, m] : H.h) h[n] = neg(k, m);
    return CHomotopy<F>{H.g, H.f, std::move(h)};
}

// Sum of homotopies: (f0 => g0) + (f1 => g1) is f0+f1 => g0+g1.
template <class F>
CHomotopy<F> add_homotopies(const CHomotopy<F>& A, const CHomotopy<F>& B) {
    const F& k = A.src().field;
    check(A.src() == B.src() && A.dst() == B.dst(),
          "add_homotopies: shape mismatch");
    std::map<int, Mat<F>> h;
    for (int n = A.src().lo; n <= A.src().hi; ++n) {
        Mat<F> m = add(k, A.at(n), B.at(n));
        if (!is_zero_entries<F>(m)) h[n] = m;
    }
    return CHomotopy<F>{add_maps(A.f, B.f), add_maps(A.g, B.g), std::move(h)};
}

// Transitive pasting: (f => g) then (g => e) gives f => e.
template <class F>
CHomotopy<F> concat_homotopies(const CHomotopy<F>& A, const CHomotopy<F>& B) {
    const F& k = A.src().field;
    check(A.g == B.f, "concat_homotopies: middle maps differ");
    std::map<int, Mat<F>> h;
    for (int n = A.src().lo; n <= A.src().hi; ++n) {
        Mat<F> m = add(k, A.at(n), B.at(n));
        if (!is_zero_entries<F>(m)) h[n] = m;
    }
    return CHomotopy<F>{A.f, B.g, std::move(h)};
}

// m (f => g): homotopy m f => m g with family m_{n+1} h_n.
template <class F>
CHomotopy<F> post_compose(const ChainMap<F>& m, const CHomotopy<F>& H) {
    const F& k = H.src().field;
    check(m.src == H.dst(), "post_compose: shape mismatch");
    std::map<int, Mat<F>> h;
    for (auto& [n, hn] : H.h) {
        Mat<F> v = mul(k, m.at(n + 1), hn);
        if (!is_zero_entries<F>(v)) h[n] = v;
    }
    return CHomotopy<F>{compose(m, H.f), compose(m, H.g), std::move(h)};
}

// (f => g) m: homotopy f m => g m with family h_n m_n.
template <class F>
CHomotopy<F> pre_compose(const CHomotopy<F>& H, const ChainMap<F>& m) {
    const F& k = H.src().field;
    check(m.dst == H.src(), "pre_compose: shape mismatch");
    std::map<int, Mat<F>> h;
    for (int n = m.src.lo; n <= m.src.hi; ++n) {
        Mat<F> v = mul(k, H.at(n), m.at(n));
        if (!is_zero_entries<F>(v)) h[n] = v;
    }
    return CHomotopy<F>{compose(H.f, m), compose(H.g, m), std::move(h)};
}

// C applied to a homotopy: Cf => Cg with family diag(-h_{n-1}, h_n); the
// assembled form is C(H) sigma_x.
template <class F>
CHomotopy<F> c_on_homotopy(const CHomotopy<F>& H) {
    const F& k = H.src().field;
    const Complex<F>& x = H.src();
    const Complex<F>& y = H.dst();
    std::map<int, Mat<F>> h;
    for (int n = x.lo - 1; n <= x.hi + 1; ++n) {
        Mat<F> m = from_blocks<F>(
            {{neg(k, H.at(n - 1)), zeros<F>(y.dim(n), x.dim(n))},
             {zeros<F>(y.dim(n + 1), x.dim(n - 1)), H.at(n)}});
        if (!is_zero_entries<F>(m)) h[n] = m;
    }
    return make_c_homotopy(apply_functor_map(FunctorTag::C, H.f),
                           apply_functor_map(FunctorTag::C, H.g), std::move(h));
}

// Search for a homotopy f => g; empty when f and g are not homotopic.
template <class F>
std::optional<CHomotopy<F>> find_c_homotopy(const ChainMap<F>& f,
                                            const ChainMap<F>& g) {
    check(f.src == g.src && f.dst == g.dst, "find_c_homotopy: not parallel");
    const F& k = f.src.field;
    auto fam = detail::solve_family<F>(
        k, f.src, f.dst, 1, +1,
        [&](int n) { return sub(k, f.at(n), g.at(n)); });
    if (!fam) return std::nullopt;
    return make_c_homotopy(f, g, std::move(*fam));
}

// ---------------------------------------------------------------------------
// P-homotopies

template <class F>
struct PHomotopy {
    ChainMap<F> f, g;
    std::map<int, Mat<F>> h;

    const Complex<F>& src() const { return f.src; }
    const Complex<F>& dst() const { return f.dst; }
    Mat<F> at(int n) const {
        return detail::family_at(h, n, f.dst.dim(n + 1), f.src.dim(n));
    }
    bool operator==(const PHomotopy& o) const {
        return f == o.f && g == o.g && h == o.h;
    }
    bool operator!=(const PHomotopy& o) const { return !(*this == o); }
};

template <class F>
PHomotopy<F> make_p_homotopy(const ChainMap<F>& f, const ChainMap<F>& g,
                             std::map<int, Mat<F>> h) {
    CHomotopy<F> tmp = make_c_homotopy(f, g, std::move(h));
    return PHomotopy<F>{tmp.f, tmp.g, std::move(tmp.h)};
}

// Assembled form x -> Py with H'_n = (f_n - g_n ; -h_n).
template <class F>
ChainMap<F> p_form(const PHomotopy<F>& H) {
    const F& k = H.src().field;
    Complex<F> py = apply_functor(FunctorTag::P, H.dst());
    std::map<int, Mat<F>> mats;
    for (int n = H.src().lo; n <= H.src().hi; ++n) {
        Mat<F> m = vcat(sub(k, H.f.at(n), H.g.at(n)), neg(k, H.at(n)));
        if (!is_zero_entries<F>(m)) mats[n] = m;
    }
    return ChainMap<F>{H.src(), std::move(py), std::move(mats)};
}

template <class F>
PHomotopy<F> p_homotopy_from_form(const ChainMap<F>& f, const ChainMap<F>& g,
                                  const ChainMap<F>& M) {
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    const F& k = x.field;
    check(M.src == x && M.dst == apply_functor(FunctorTag::P, y),
          "p_homotopy_from_form: shape mismatch");
    std::map<int, Mat<F>> h;
    for (int n = x.lo; n <= x.hi; ++n) {
        Mat<F> mn = M.at(n);  // x_n -> y_n (+) y_{n+1}
        std::vector<int> rows(y.dim(n + 1)), cols(mn.cols);
        for (int i = 0; i < y.dim(n + 1); ++i) rows[i] = y.dim(n) + i;
        for (int j = 0; j < mn.cols; ++j) cols[j] = j;
        h[n] = neg(k, submatrix(mn, rows, cols));
    }
    PHomotopy<F> H = make_p_homotopy(f, g, std::move(h));
    check(p_form(H) == M, "p_homotopy_from_form: map is not in homotopy form");
    return H;
}

// The conversion P(H) s'_x iota_x, which is the identity on families.
template <class F>
PHomotopy<F> convert_A(const CHomotopy<F>& H) {
    return PHomotopy<F>{H.f, H.g, H.h};
}

// The conversion q_y (r * Tinv y) C(H'), inverse to convert_A.
template <class F>
CHomotopy<F> convert_B(const PHomotopy<F>& H) {
    return CHomotopy<F>{H.f, H.g, H.h};
}

// ---------------------------------------------------------------------------
// CC-homotopies

template <class F>
struct CCHomotopy {
    CHomotopy<F> from, to;      // H, L: f => g
    std::map<int, Mat<F>> s;    // s_n: x_n -> y_{n+2}

    const Complex<F>& src() const { return from.src(); }
    const Complex<F>& dst() const { return from.dst(); }
    Mat<F> at(int n) const {
        return detail::family_at(s, n, from.f.dst.dim(n + 2),
                                 from.f.src.dim(n));
    }
};

template <class F>
CCHomotopy<F> make_cc_homotopy(const CHomotopy<F>& H, const CHomotopy<F>& L,
                               std::map<int, Mat<F>> s, bool validate = true) {
    check(H.f == L.f && H.g == L.g, "make_cc_homotopy: ends differ");
    const Complex<F>& x = H.src();
    const Complex<F>& y = H.dst();
    const F& k = x.field;
    for (auto& [n, m] : s)
        check(m.rows == y.dim(n + 2) && m.cols == x.dim(n),
              "make_cc_homotopy: family shape at degree " + std::to_string(n));
    CCHomotopy<F> S{H, L, detail::normalize_family<F>(std::move(s))};
    if (validate) {
        for (int n = x.lo - 1; n <= x.hi + 1; ++n) {
            Mat<F> lhs = sub(k, mul(k, y.d(n + 2), S.at(n)),
                             mul(k, S.at(n - 1), x.d(n)));
            if (lhs != sub(k, H.at(n), L.at(n)))
                throw error("second-level homotopy equation fails at degree " +
                            std::to_string(n));
        }
    }
    return S;
}

// Assembled form CCx -> y with row (s_{n-2} | 0 | -h_{n-1}+l_{n-1} | 0).
template <class F>
ChainMap<F> cc_form(const CCHomotopy<F>& S) {
    const F& k = S.src().field;
    const Complex<F>& x = S.src();
    const Complex<F>& y = S.dst();
    Complex<F> ccx =
        apply_functor(FunctorTag::C, apply_functor(FunctorTag::C, x));
    std::map<int, Mat<F>> mats;
    for (int n = ccx.lo; n <= ccx.hi; ++n) {
        Mat<F> m = from_blocks<F>(
            {{S.at(n - 2), zeros<F>(y.dim(n), x.dim(n - 1)),
              sub(k, S.to.at(n - 1), S.from.at(n - 1)),
              zeros<F>(y.dim(n), x.dim(n))}});
        if (!is_zero_entries<F>(m)) mats[n] = m;
    }
    return ChainMap<F>{std::move(ccx), y, std::move(mats)};
}

template <class F>
CCHomotopy<F> cc_reflexive(const CHomotopy<F>& H) {
    return CCHomotopy<F>{H, H, {}};
}

template <class F>
CCHomotopy<F> cc_invert(const CCHomotopy<F>& S) {
    const F& k = S.src().field;
    std::map<int, Mat<F>> s;
    for (auto& [n, m] : S.s) s[n] = neg(k, m);
    return CCHomotopy<F>{S.to, S.from, std::move(s)};
}

template <class F>
CCHomotopy<F> cc_concat(const CCHomotopy<F>& S, const CCHomotopy<F>& T) {
    const F& k = S.src().field;
    check(S.to == T.from, "cc_concat: middle homotopies differ");
    std::map<int, Mat<F>> s;
    for (int n = S.src().lo; n <= S.src().hi; ++n) {
        Mat<F> m = add(k, S.at(n), T.at(n));
        if (!is_zero_entries<F>(m)) s[n] = m;
    }
    return CCHomotopy<F>{S.from, T.to, std::move(s)};
}

// Decide whether H and L are CC-homotopic, producing a witness when they are.
template <class F>
std::optional<CCHomotopy<F>> cc_homotopic(const CHomotopy<F>& H,
                                          const CHomotopy<F>& L) {
    check(H.f == L.f && H.g == L.g, "cc_homotopic: ends differ");
    const F& k = H.src().field;
    auto fam = detail::solve_family<F>(
        k, H.src(), H.dst(), 2, -1,
        [&](int n) { return sub(k, H.at(n), L.at(n)); });
    if (!fam) return std::nullopt;
    return make_cc_homotopy(H, L, std::move(*fam));
}

template <class F>
bool cc_equal(const CHomotopy<F>& H, const CHomotopy<F>& L) {
    return cc_homotopic(H, L).has_value();
}

// ---------------------------------------------------------------------------
// Homotopy commutative squares

// (a, b, H): [top: x -> x'] -> [bottom: y -> y'] with H: bottom a => b top.
template <class F>
struct HomotopySquare {
    ChainMap<F> top, bottom;
    ChainMap<F> a, b;
    CHomotopy<F> H;

    bool operator==(const HomotopySquare& o) const {
        return top == o.top && bottom == o.bottom && a == o.a && b == o.b &&
               H == o.H;
    }
    bool operator!=(const HomotopySquare& o) const { return !(*this == o); }
};

template <class F>
HomotopySquare<F> make_homotopy_square(const ChainMap<F>& top,
                                       const ChainMap<F>& bottom,
                                       const ChainMap<F>& a, const ChainMap<F>& b,
                                       std::map<int, Mat<F>> h) {
    check(a.src == top.src && a.dst == bottom.src, "square: left leg shape");
    check(b.src == top.dst && b.dst == bottom.dst, "square: right leg shape");
    CHomotopy<F> H =
        make_c_homotopy(compose(bottom, a), compose(b, top), std::move(h));
    return HomotopySquare<F>{top, bottom, a, b, std::move(H)};
}

template <class F>
HomotopySquare<F> strict_square(const ChainMap<F>& top, const ChainMap<F>& bottom,
                                const ChainMap<F>& a, const ChainMap<F>& b) {
    return make_homotopy_square(top, bottom, a, b, {});
}

// Horizontal composition: K: [v] -> [w] after H: [u] -> [v] gives [u] -> [w]
// with legs (K.a H.a, K.b H.b) and family e_{n+1} h_n + kappa_n a_n.
template <class F>
HomotopySquare<F> star_C(const HomotopySquare<F>& K, const HomotopySquare<F>& H) {
    const F& k = H.top.src.field;
    check(K.top == H.bottom, "star_C: squares not composable");
    const Complex<F>& x = H.top.src;
    std::map<int, Mat<F>> h;
    for (int n = x.lo; n <= x.hi; ++n) {
        Mat<F> m = add(k, mul(k, K.b.at(n + 1), H.H.at(n)),
                       mul(k, K.H.at(n), H.a.at(n)));
        if (!is_zero_entries<F>(m)) h[n] = m;
    }
    return make_homotopy_square(H.top, K.bottom, compose(K.a, H.a),
                                compose(K.b, H.b), std::move(h));
}

// Vertical composition: K: [u'] -> [v'] above H: [u] -> [v] with K.a = H.b
// gives [u' u] -> [v' v] with legs (H.a, K.b) and family
// kappa_n u_n + v'_{n+1} h_n.
template <class F>
HomotopySquare<F> bullet_C(const HomotopySquare<F>& K, const HomotopySquare<F>& H) {
    const F& k = H.top.src.field;
    check(K.a == H.b, "bullet_C: squares not composable");
    const Complex<F>& x = H.top.src;
    std::map<int, Mat<F>> h;
    for (int n = x.lo; n <= x.hi; ++n) {
        Mat<F> m = add(k, mul(k, K.H.at(n), H.top.at(n)),
                       mul(k, K.bottom.at(n + 1), H.H.at(n)));
        if (!is_zero_entries<F>(m)) h[n] = m;
    }
    return make_homotopy_square(compose(K.top, H.top),
                                compose(K.bottom, H.bottom), H.a, K.b,
                                std::move(h));
}

// Path-functor versions, computed through the assembled x -> P(-) forms:
// P(K.b) H~ + K~ H.a for star, K~ H.top + P(K.bottom) H~ for bullet. Both
// agree with the C-versions on families; the detour is kept as a live check.
template <class F>
HomotopySquare<F> star_P(const HomotopySquare<F>& K, const HomotopySquare<F>& H) {
    check(K.top == H.bottom, "star_P: squares not composable");
    ChainMap<F> m = add_maps(
        compose(apply_functor_map(FunctorTag::P, K.b), p_form(convert_A(H.H))),
        compose(p_form(convert_A(K.H)), H.a));
    ChainMap<F> a2 = compose(K.a, H.a);
    ChainMap<F> b2 = compose(K.b, H.b);
    PHomotopy<F> ph = p_homotopy_from_form(compose(K.bottom, a2),
                                           compose(b2, H.top), m);
    return HomotopySquare<F>{H.top, K.bottom, a2, b2, convert_B(ph)};
}

template <class F>
HomotopySquare<F> bullet_P(const HomotopySquare<F>& K, const HomotopySquare<F>& H) {
    check(K.a == H.b, "bullet_P: squares not composable");
    ChainMap<F> m = add_maps(
        compose(p_form(convert_A(K.H)), H.top),
        compose(apply_functor_map(FunctorTag::P, K.bottom),
                p_form(convert_A(H.H))));
    ChainMap<F> top2 = compose(K.top, H.top);
    ChainMap<F> bot2 = compose(K.bottom, H.bottom);
    PHomotopy<F> ph =
        p_homotopy_from_form(compose(bot2, H.a), compose(K.b, top2), m);
    return HomotopySquare<F>{top2, bot2, H.a, K.b, convert_B(ph)};
}

// For squares H: [u] -> [v], K: [v] -> [w], L: [u'] -> [v'], M: [v'] -> [w']
// with L.a = H.b and M.a = K.b, the composite M C(c_form H) witnesses
// (M bullet K) star (L bullet H)  =>  (M star L) bullet (K star H),
// with family -m_{n+1} h_n.
template <class F>
CCHomotopy<F> cc_interchange_witness(const HomotopySquare<F>& H,
                                     const HomotopySquare<F>& K,
                                     const HomotopySquare<F>& L,
                                     const HomotopySquare<F>& M) {
    const F& k = H.top.src.field;
    check(K.top == H.bottom && M.top == L.bottom, "interchange: rows mismatch");
    check(L.a == H.b && M.a == K.b, "interchange: columns mismatch");
    HomotopySquare<F> small = star_C(bullet_C(M, K), bullet_C(L, H));
    HomotopySquare<F> big = bullet_C(star_C(M, L), star_C(K, H));
    std::map<int, Mat<F>> s;
    const Complex<F>& x = H.top.src;
    for (int n = x.lo; n <= x.hi; ++n) {
        Mat<F> m = neg(k, mul(k, M.H.at(n + 1), H.H.at(n)));
        if (!is_zero_entries<F>(m)) s[n] = m;
    }
    return make_cc_homotopy(small.H, big.H, std::move(s));
}

// ---------------------------------------------------------------------------
// Homotopy inverses

// Given H: h f => id_x and K: f g => id_y, produce the homotopy h => g
// (-h K + H C(g), family eta_n g_n - h_{n+1} kappa_n) and the induced
// homotopy f h => id_y, certifying f as a homotopy equivalence.
template <class F>
std::pair<CHomotopy<F>, CHomotopy<F>> merge_homotopy_inverses(
    const ChainMap<F>& f, const ChainMap<F>& g, const ChainMap<F>& h,
    const CHomotopy<F>& H, const CHomotopy<F>& K) {
    const F& k = f.src.field;
    const Complex<F>& x = f.src;
    const Complex<F>& y = f.dst;
    check(H.f == compose(h, f) && H.g == identity_map(x),
          "merge_homotopy_inverses: H is not h f => id");
    check(K.f == compose(f, g) && K.g == identity_map(y),
          "merge_homotopy_inverses: K is not f g => id");
    std::map<int, Mat<F>> hm;
    for (int n = y.lo; n <= y.hi; ++n) {
        Mat<F> m = sub(k, mul(k, H.at(n), g.at(n)),
                       mul(k, h.at(n + 1), K.at(n)));
        if (!is_zero_entries<F>(m)) hm[n] = m;
    }
    CHomotopy<F> h_to_g = make_c_homotopy(h, g, std::move(hm));
    std::map<int, Mat<F>> tm;
    for (int n = y.lo; n <= y.hi; ++n) {
        Mat<F> m = add(k, mul(k, f.at(n + 1), h_to_g.at(n)), K.at(n));
        if (!is_zero_entries<F>(m)) tm[n] = m;
    }
    CHomotopy<F> fh_to_id =
        make_c_homotopy(compose(f, h), identity_map(y), std::move(tm));
    return {std::move(h_to_g), std::move(fh_to_id)};
}

}  // namespace exhom
