// Bounded chain complexes of finite-dimensional vector spaces, chain maps,
// homology, and constructive minimal models.  Homological convention: the
// differential at degree n lands in degree n-1.
//
// Complexes are canonical values: support is trimmed to the minimal interval
// carrying nonzero dimensions, and chain maps drop zero component matrices,
// so operator== decides "equal on the nose".
#pragma once

#include <exhom/matrix.hpp>

#include <map>
#include <string>
#include <vector>

namespace exhom {

template <class F>
struct Complex {
    F field;
    int lo = 0, hi = -1;         // degree support [lo,hi]; lo > hi means the zero complex
    std::vector<int> dims;       // dims[i] = dim in degree lo+i
    std::vector<Mat<F>> diffs;   // diffs[i] = d_{lo+i} : (lo+i) -> (lo+i-1); diffs[0] has 0 rows

    bool is_zero() const { return lo > hi; }
    int dim(int n) const {
        return (n < lo || n > hi) ? 0 : dims[static_cast<size_t>(n - lo)];
    }
    Mat<F> d(int n) const {
        if (n < lo || n > hi) return zeros<F>(dim(n - 1), dim(n));
        return diffs[static_cast<size_t>(n - lo)];
    }

    bool operator==(const Complex& o) const {
        return field == o.field && lo == o.lo && hi == o.hi && dims == o.dims &&
               diffs == o.diffs;
    }
    bool operator!=(const Complex& o) const { return !(*this == o); }
};

template <class F>
bool is_zero_entries(const Mat<F>& m) {
    for (const auto& e : m.a)
        if (!(e == typename F::Elt())) return false;
    return true;
}

// Trim leading/trailing zero-dimension degrees; the zero complex becomes
// the canonical (lo=0, hi=-1) value.
template <class F>
Complex<F> normalize_complex(Complex<F> c) {
    int a = 0, b = static_cast<int>(c.dims.size()) - 1;
    while (a <= b && c.dims[static_cast<size_t>(a)] == 0) ++a;
    while (b >= a && c.dims[static_cast<size_t>(b)] == 0) --b;
    if (a > b) return Complex<F>{c.field, 0, -1, {}, {}};
    Complex<F> r{c.field, c.lo + a, c.lo + b, {}, {}};
    r.dims.assign(c.dims.begin() + a, c.dims.begin() + b + 1);
    r.diffs.assign(c.diffs.begin() + a, c.diffs.begin() + b + 1);
    if (!r.diffs.empty()) {
        // the bottom differential maps into a trimmed zero space
        r.diffs[0] = zeros<F>(0, r.dims[0]);
    }
    return r;
}

template <class F>
Complex<F> make_complex(const F& field, const std::map<int, int>& dims,
                        const std::map<int, Mat<F>>& diffs) {
    int lo = 0, hi = -1;
    for (const auto& [n, d] : dims) {
        check(d >= 0, "make_complex: negative dimension");
        if (d > 0) {
            if (lo > hi) { lo = hi = n; } else { hi = std::max(hi, n); lo = std::min(lo, n); }
        }
    }
    Complex<F> c{field, lo, hi, {}, {}};
    if (lo > hi) {
        for (const auto& [n, m] : diffs)
            check(m.rows == 0 && m.cols == 0, "make_complex: differential on zero complex");
        return c;
    }
    c.dims.assign(static_cast<size_t>(hi - lo + 1), 0);
    for (const auto& [n, d] : dims)
        if (n >= lo && n <= hi) c.dims[static_cast<size_t>(n - lo)] = d;
    for (int n = lo; n <= hi; ++n) {
        int r = c.dim(n - 1), cc = c.dim(n);
        auto it = diffs.find(n);
        if (it == diffs.end()) {
            c.diffs.push_back(zeros<F>(r, cc));
        } else {
            check(it->second.rows == r && it->second.cols == cc,
                  "make_complex: differential shape mismatch at degree " + std::to_string(n));
            c.diffs.push_back(it->second);
        }
    }
    for (const auto& [n, m] : diffs)
        if (n < lo || n > hi)
            check(m.rows == 0 || m.cols == 0 || is_zero_entries<F>(m),
                  "make_complex: differential outside support at degree " + std::to_string(n));
    return c;
}

template <class F>
Complex<F> zero_complex(const F& field) {
    return Complex<F>{field, 0, -1, {}, {}};
}

// One-dimensional space concentrated in a single degree.
template <class F>
Complex<F> sphere(const F& field, int n, int dim = 1) {
    std::map<int, int> dims;
    dims[n] = dim;
    return make_complex<F>(field, dims, {});
}

// Identity-differential disc in degrees n, n-1: contractible.
template <class F>
Complex<F> disc(const F& field, int n, int dim = 1) {
    std::map<int, int> dims{{n, dim}, {n - 1, dim}};
    std::map<int, Mat<F>> diffs{{n, eye<F>(dim)}};
    return make_complex<F>(field, dims, diffs);
}

struct Report {
    bool ok = true;
    std::string message;  // first violation when not ok
};

template <class F>
Report validate_complex(const Complex<F>& c) {
    if (c.lo > c.hi) {
        if (!c.dims.empty() || !c.diffs.empty())
            return {false, "zero complex carries data"};
        return {true, ""};
    }
    if (c.dims.size() != static_cast<size_t>(c.hi - c.lo + 1) ||
        c.diffs.size() != c.dims.size())
        return {false, "support interval does not match stored data"};
    if (c.dims.front() == 0 || c.dims.back() == 0)
        return {false, "support not trimmed"};
    for (int n = c.lo; n <= c.hi; ++n) {
        const Mat<F>& dn = c.diffs[static_cast<size_t>(n - c.lo)];
        if (dn.rows != c.dim(n - 1) || dn.cols != c.dim(n))
            return {false, "differential shape mismatch at degree " + std::to_string(n)};
    }
    for (int n = c.lo + 1; n <= c.hi; ++n) {
        Mat<F> dd = mul(c.field, c.d(n - 1), c.d(n));
        if (!is_zero_mat(c.field, dd))
            return {false, "d∘d ≠ 0 at degree " + std::to_string(n)};
    }
    return {true, ""};
}

// ---------------------------------------------------------------------------
// Chain maps

template <class F>
struct ChainMap {
    Complex<F> src, dst;
    std::map<int, Mat<F>> mats;  // normalized: zero components are not stored

    Mat<F> at(int n) const {
        auto it = mats.find(n);
        if (it != mats.end()) return it->second;
        return zeros<F>(dst.dim(n), src.dim(n));
    }

    bool operator==(const ChainMap& o) const {
        return src == o.src && dst == o.dst && mats == o.mats;
    }
    bool operator!=(const ChainMap& o) const { return !(*this == o); }
};

template <class F>
ChainMap<F> make_chain_map(const Complex<F>& src, const Complex<F>& dst,
                           const std::map<int, Mat<F>>& mats,
                           bool validate = true) {
    check(src.field == dst.field, "chain map: field mismatch");
    ChainMap<F> f{src, dst, {}};
    for (const auto& [n, m] : mats) {
        check(m.rows == dst.dim(n) && m.cols == src.dim(n),
              "chain map: component shape mismatch at degree " + std::to_string(n));
        if (!is_zero_entries<F>(m)) f.mats[n] = m;
    }
    if (validate) {
        const F& k = src.field;
        int lo = std::min(src.lo, dst.lo), hi = std::max(src.hi, dst.hi);
        for (int n = lo; n <= hi; ++n) {
            Mat<F> lhs = mul(k, f.at(n - 1), src.d(n));
            Mat<F> rhs = mul(k, dst.d(n), f.at(n));
            check(lhs == rhs,
                  "chain map: does not commute with d at degree " + std::to_string(n));
        }
    }
    return f;
}

template <class F>
ChainMap<F> zero_map(const Complex<F>& src, const Complex<F>& dst) {
    return make_chain_map(src, dst, {}, false);
}

template <class F>
ChainMap<F> identity_map(const Complex<F>& x) {
    std::map<int, Mat<F>> mats;
    for (int n = x.lo; n <= x.hi; ++n)
        if (x.dim(n) > 0) mats[n] = eye<F>(x.dim(n));
    return make_chain_map(x, x, mats, false);
}

template <class F>
ChainMap<F> compose(const ChainMap<F>& g, const ChainMap<F>& f) {
    check(g.src == f.dst, "compose: middle complexes differ");
    std::map<int, Mat<F>> mats;
    int lo = std::min(f.src.lo, g.dst.lo), hi = std::max(f.src.hi, g.dst.hi);
    for (int n = lo; n <= hi; ++n) {
        Mat<F> m = mul(f.src.field, g.at(n), f.at(n));
        if (!is_zero_entries<F>(m)) mats[n] = m;
    }
    return ChainMap<F>{f.src, g.dst, std::move(mats)};
}

template <class F>
ChainMap<F> add_maps(const ChainMap<F>& f, const ChainMap<F>& g) {
    check(f.src == g.src && f.dst == g.dst, "add_maps: shape mismatch");
    std::map<int, Mat<F>> mats;
    int lo = std::min(f.src.lo, f.dst.lo), hi = std::max(f.src.hi, f.dst.hi);
    for (int n = lo; n <= hi; ++n) {
        Mat<F> m = add(f.src.field, f.at(n), g.at(n));
        if (!is_zero_entries<F>(m)) mats[n] = m;
    }
    return ChainMap<F>{f.src, f.dst, std::move(mats)};
}

template <class F>
ChainMap<F> neg_map(const ChainMap<F>& f) {
    std::map<int, Mat<F>> mats;
    for (const auto& [n, m] : f.mats) mats[n] = neg(f.src.field, m);
    return ChainMap<F>{f.src, f.dst, std::move(mats)};
}

template <class F>
ChainMap<F> sub_maps(const ChainMap<F>& f, const ChainMap<F>& g) {
    return add_maps(f, neg_map(g));
}

template <class F>
bool is_chain_map(const ChainMap<F>& f) {
    const F& k = f.src.field;
    int lo = std::min(f.src.lo, f.dst.lo), hi = std::max(f.src.hi, f.dst.hi);
    for (int n = lo; n <= hi; ++n)
        if (mul(k, f.at(n - 1), f.src.d(n)) != mul(k, f.dst.d(n), f.at(n))) return false;
    return true;
}

template <class F>
bool is_iso(const ChainMap<F>& f) {
    const F& k = f.src.field;
    int lo = std::min(f.src.lo, f.dst.lo), hi = std::max(f.src.hi, f.dst.hi);
    for (int n = lo; n <= hi; ++n) {
        if (f.src.dim(n) != f.dst.dim(n)) return false;
        if (!is_invertible(k, f.at(n))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Direct sums

template <class F>
Complex<F> direct_sum(const Complex<F>& x, const Complex<F>& y) {
    check(x.field == y.field, "direct_sum: field mismatch");
    std::map<int, int> dims;
    std::map<int, Mat<F>> diffs;
    int lo = std::min(x.lo, y.lo), hi = std::max(x.hi, y.hi);
    for (int n = lo; n <= hi; ++n) {
        dims[n] = x.dim(n) + y.dim(n);
        diffs[n] = from_blocks<F>({{x.d(n), zeros<F>(x.dim(n - 1), y.dim(n))},
                                   {zeros<F>(y.dim(n - 1), x.dim(n)), y.d(n)}});
    }
    return make_complex(x.field, dims, diffs);
}

// Component maps of x (+) y; block layout is [x; y] in both degrees.
template <class F>
ChainMap<F> sum_inclusion(const Complex<F>& x, const Complex<F>& y, int which) {
    Complex<F> s = direct_sum(x, y);
    const Complex<F>& part = which == 0 ? x : y;
    std::map<int, Mat<F>> mats;
    for (int n = s.lo; n <= s.hi; ++n) {
        Mat<F> m = zeros<F>(s.dim(n), part.dim(n));
        int off = which == 0 ? 0 : x.dim(n);
        for (int j = 0; j < part.dim(n); ++j) m.at(off + j, j) = typename F::Elt(1);
        if (!is_zero_entries<F>(m)) mats[n] = m;
    }
    return ChainMap<F>{part, s, std::move(mats)};
}

template <class F>
ChainMap<F> sum_projection(const Complex<F>& x, const Complex<F>& y, int which) {
    Complex<F> s = direct_sum(x, y);
    const Complex<F>& part = which == 0 ? x : y;
    std::map<int, Mat<F>> mats;
    for (int n = s.lo; n <= s.hi; ++n) {
        Mat<F> m = zeros<F>(part.dim(n), s.dim(n));
        int off = which == 0 ? 0 : x.dim(n);
        for (int j = 0; j < part.dim(n); ++j) m.at(j, off + j) = typename F::Elt(1);
        if (!is_zero_entries<F>(m)) mats[n] = m;
    }
    return ChainMap<F>{s, part, std::move(mats)};
}

template <class F>
ChainMap<F> direct_sum_map(const ChainMap<F>& f, const ChainMap<F>& g) {
    Complex<F> s = direct_sum(f.src, g.src);
    Complex<F> t = direct_sum(f.dst, g.dst);
    std::map<int, Mat<F>> mats;
    int lo = std::min(s.lo, t.lo), hi = std::max(s.hi, t.hi);
    for (int n = lo; n <= hi; ++n) {
        Mat<F> m = from_blocks<F>(
            {{f.at(n), zeros<F>(f.dst.dim(n), g.src.dim(n))},
             {zeros<F>(g.dst.dim(n), f.src.dim(n)), g.at(n)}});
        if (!is_zero_entries<F>(m)) mats[n] = m;
    }
    return ChainMap<F>{s, t, std::move(mats)};
}

// ---------------------------------------------------------------------------
// Homology

template <class F>
struct HomologyEntry {
    int h = 0;
    Mat<F> cycles;      // columns: basis of ker d_n
    Mat<F> boundaries;  // columns: basis of im d_{n+1}
};

template <class F>
struct HomologyTable {
    int lo = 0, hi = -1;
    std::vector<HomologyEntry<F>> entries;

    int h(int n) const {
        return (n < lo || n > hi) ? 0 : entries[static_cast<size_t>(n - lo)].h;
    }
    const HomologyEntry<F>* entry(int n) const {
        return (n < lo || n > hi) ? nullptr : &entries[static_cast<size_t>(n - lo)];
    }
    bool all_zero() const {
        for (const auto& e : entries)
            if (e.h != 0) return false;
        return true;
    }
};

template <class F>
HomologyTable<F> homology(const Complex<F>& x) {
    HomologyTable<F> t;
    t.lo = x.lo;
    t.hi = x.hi;
    for (int n = x.lo; n <= x.hi; ++n) {
        HomologyEntry<F> e;
        e.cycles = kernel_basis(x.field, x.d(n));
        e.boundaries = image_basis(x.field, x.d(n + 1));
        e.h = e.cycles.cols - e.boundaries.cols;
        t.entries.push_back(std::move(e));
    }
    return t;
}

template <class F>
long long euler(const Complex<F>& x) {
    long long chi = 0;
    for (int n = x.lo; n <= x.hi; ++n)
        chi += (n % 2 == 0) ? x.dim(n) : -x.dim(n);
    return chi;
}

template <class F>
bool is_contractible(const Complex<F>& x) {
    return homology(x).all_zero();
}

// ---------------------------------------------------------------------------
// Minimal model: x deformation-retracts onto its homology with explicit
// projection p, inclusion s and contraction h satisfying
//   p s = id,   d h + h d = id - s p,   d_model = 0.

template <class F>
struct MinimalModel {
    Complex<F> model;
    ChainMap<F> p;               // x -> model
    ChainMap<F> s;               // model -> x
    std::map<int, Mat<F>> h;     // h_n : x_n -> x_{n+1}, zero entries dropped

    Mat<F> h_at(int n) const {
        auto it = h.find(n);
        if (it != h.end()) return it->second;
        return zeros<F>(p.src.dim(n + 1), p.src.dim(n));
    }
};

template <class F>
MinimalModel<F> minimal_model(const Complex<F>& x) {
    const F& k = x.field;
    // Per degree: split x_n = B_n (+) R_n (+) A_n with B_n the boundaries,
    // B_n (+) R_n the cycles, and d injective on A_n.  The splitting is the
    // deterministic complement rule, so the model is reproducible.
    std::map<int, Mat<F>> basisA;     // A_n columns
    std::map<int, Mat<F>> basisR;
    std::map<int, Mat<F>> basisB;
    std::map<int, Mat<F>> ginv;       // inverse of [B|R|A] per degree
    for (int n = x.lo; n <= x.hi; ++n) {
        int dn = x.dim(n);
        Mat<F> Z = kernel_basis(k, x.d(n));
        Mat<F> A = complement(k, Z, dn);          // columns completing the cycles
        basisA[n] = A;
    }
    for (int n = x.lo; n <= x.hi; ++n) {
        int dn = x.dim(n);
        Mat<F> Z = kernel_basis(k, x.d(n));
        Mat<F> A_up = basisA.count(n + 1) ? basisA[n + 1] : zeros<F>(x.dim(n + 1), 0);
        Mat<F> B = mul(k, x.d(n + 1), A_up);      // boundary basis, coords = A_{n+1}
        // complement of B inside the cycle space, computed in Z-coordinates
        auto y = solve(k, Z, B);
        check(y.has_value(), "minimal_model: boundaries escape cycles");
        Mat<F> Rc = complement(k, *y, Z.cols);
        Mat<F> R = mul(k, Z, Rc);
        Mat<F> G = hcat(hcat(B, R), basisA[n]);
        basisB[n] = B;
        basisR[n] = R;
        ginv[n] = inverse(k, G);
    }
    std::map<int, int> mdims;
    for (int n = x.lo; n <= x.hi; ++n) mdims[n] = basisR[n].cols;
    Complex<F> model = make_complex<F>(k, mdims, {});

    std::map<int, Mat<F>> pmats, smats, hmats;
    for (int n = x.lo; n <= x.hi; ++n) {
        int b = basisB[n].cols, r = basisR[n].cols;
        // p_n: R-block rows of [B|R|A]^{-1}
        std::vector<int> rrows;
        for (int i = 0; i < r; ++i) rrows.push_back(b + i);
        Mat<F> pn = submatrix(ginv[n], rrows, all_indices<F>(x.dim(n)));
        if (!is_zero_entries<F>(pn)) pmats[n] = pn;
        if (!is_zero_entries<F>(basisR[n])) smats[n] = basisR[n];
        // h_n lifts the boundary part through d_{n+1}: h = A_{n+1} . (B rows)
        std::vector<int> brows;
        for (int i = 0; i < b; ++i) brows.push_back(i);
        Mat<F> hb = submatrix(ginv[n], brows, all_indices<F>(x.dim(n)));
        Mat<F> hn = mul(k, basisA.count(n + 1) ? basisA[n + 1] : zeros<F>(x.dim(n + 1), 0), hb);
        if (!is_zero_entries<F>(hn)) hmats[n] = hn;
    }
    MinimalModel<F> mm{model, make_chain_map(x, model, pmats),
                       make_chain_map(model, x, smats), hmats};
    return mm;
}

// Induced map on homology via the minimal models: p_y . f . s_x degreewise.
template <class F>
ChainMap<F> homology_map(const ChainMap<F>& f) {
    MinimalModel<F> mx = minimal_model(f.src);
    MinimalModel<F> my = minimal_model(f.dst);
    return compose(my.p, compose(f, mx.s));
}

template <class F>
bool is_quasi_iso(const ChainMap<F>& f) {
    return is_iso(homology_map(f));
}

}  // namespace exhom
