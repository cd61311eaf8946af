#pragma once

// Cell structures cut out by homology vanishing, devissage filtrations with
// their per-step certificates, a constructive devissage through minimal
// models, and the integer Euler shadow of the block/grid functor identities.
//
// Membership: leq(n, x) holds when H_k(x) = 0 for k > n, geq(m, x) when
// H_k(x) = 0 for k < m, and heart(n) is their intersection.  A stage diagram
// is a devissage filtration when every step cone has homology concentrated
// in a single degree; step n (the map x_n -> x_{n+1}, with the bottom step
// 0 -> x_a sitting at n = a - 1) is charged to degree n + 1 throughout,
// including the Euler weights.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "exhom/filtered.hpp"

namespace exhom {

enum class CellMode { le, ge, eq };

// Membership predicates of a cell structure.  Only the homology instance is
// provided here, but consumers see just the two closures, so a different
// theory can be plugged in without touching them.
template <class F>
struct CellStructure {
    std::function<bool(int, const Complex<F>&)> leq;
    std::function<bool(int, const Complex<F>&)> geq;

    bool heart(int n, const Complex<F>& x) const {
        return leq(n, x) && geq(n, x);
    }
};

template <class F>
CellStructure<F> homology_cells() {
    CellStructure<F> s;
    s.leq = [](int n, const Complex<F>& x) {
        HomologyTable<F> t = homology(x);
        for (int k = std::max(n + 1, t.lo); k <= t.hi; ++k)
            if (t.h(k) != 0) return false;
        return true;
    };
    s.geq = [](int m, const Complex<F>& x) {
        HomologyTable<F> t = homology(x);
        for (int k = t.lo; k <= std::min(m - 1, t.hi); ++k)
            if (t.h(k) != 0) return false;
        return true;
    };
    return s;
}

template <class F>
bool cell_membership(const Complex<F>& x, int n, CellMode mode) {
    CellStructure<F> s = homology_cells<F>();
    switch (mode) {
        case CellMode::le:
            return s.leq(n, x);
        case CellMode::ge:
            return s.geq(n, x);
        default:
            return s.heart(n, x);
    }
}

// f is m-connected when the homology of its cone vanishes below m + 1.
template <class F>
bool is_m_connected(const ChainMap<F>& f, int m) {
    return homology_cells<F>().geq(m + 1, cone_complex(f));
}

// A stage diagram whose every step cone is concentrated in its charged
// degree, together with the computed witness tables, keyed by step index.
template <class F>
struct DevissageFiltration {
    Filtered<F> x;
    std::map<int, HomologyTable<F>> certificates;  // step n -> cone homology
};

template <class F>
struct DevissageReport {
    bool ok = false;
    int step = 0;         // first offending step, or stage, when not ok
    std::string message;  // empty when ok
    DevissageFiltration<F> filtration;  // populated when ok
};

// Certify every step cone concentrated in its charged degree, naming the
// first step that is not.  On success the stages are re-checked against the
// containment the certificates imply: x_k has no homology above degree k.
template <class F>
DevissageReport<F> validate_devissage(const Filtered<F>& x) {
    DevissageReport<F> out;
    DevissageFiltration<F> dev{x, {}};
    for (int n = x.a - 1; n <= x.b - 1; ++n) {
        HomologyTable<F> t = homology(cone_complex(x.imap(n)));
        for (int k = t.lo; k <= t.hi; ++k) {
            if (k == n + 1 || t.h(k) == 0) continue;
            out.step = n;
            out.message = "step " + std::to_string(n) +
                          ": cone homology in degree " + std::to_string(k) +
                          ", outside " + std::to_string(n + 1);
            return out;
        }
        dev.certificates[n] = std::move(t);
    }
    CellStructure<F> cs = homology_cells<F>();
    for (int k = x.a; k <= x.b; ++k) {
        if (cs.leq(k, x.stage(k))) continue;
        out.step = k;
        out.message = "stage " + std::to_string(k) +
                      ": homology above degree " + std::to_string(k);
        return out;
    }
    out.ok = true;
    out.filtration = std::move(dev);
    return out;
}

template <class F>
struct BuiltDevissage {
    DevissageFiltration<F> filtration;
    ChainMap<F> a;  // stalk of the filtration -> input, a quasi-isomorphism
};

// Constructive devissage of z through its minimal model: stage k is the
// truncation of the model to degrees <= k, the steps are the identity-block
// inclusions (split by construction), and the comparison map is the model's
// section into z.  An acyclic z gets the zero filtration and the zero map.
template <class F>
BuiltDevissage<F> build_devissage(const Complex<F>& z) {
    const F& k = z.field;
    MinimalModel<F> mm = minimal_model(z);
    Filtered<F> y = zero_filtered<F>(k);
    if (!mm.model.dims.empty()) {
        std::vector<Complex<F>> stages;
        std::vector<ChainMap<F>> maps;
        for (int c = mm.model.lo; c <= mm.model.hi; ++c) {
            std::map<int, int> dims;
            for (int n = mm.model.lo; n <= c; ++n)
                if (mm.model.dim(n) > 0) dims[n] = mm.model.dim(n);
            stages.push_back(make_complex<F>(k, dims, {}));
        }
        for (size_t i = 0; i + 1 < stages.size(); ++i) {
            std::map<int, Mat<F>> mats;
            for (int n = stages[i].lo; n <= stages[i].hi; ++n)
                if (stages[i].dim(n) > 0) mats[n] = eye<F>(stages[i].dim(n));
            maps.push_back(
                make_chain_map(stages[i], stages[i + 1], std::move(mats)));
        }
        y = make_filtered<F>(k, mm.model.lo, std::move(stages),
                             std::move(maps));
        check(y.stalk() == mm.model, "build_devissage: stalk drifted");
    }
    DevissageReport<F> rep = validate_devissage(y);
    check(rep.ok, "build_devissage: built filtration failed validation");
    return {std::move(rep.filtration), mm.s};
}

// Integer Euler weights: gamma_{n+1} is the Euler characteristic of the
// step-n cone, read off the stored certificate.  Zero weights are dropped,
// and the total telescopes to the Euler characteristic of the stalk.
struct GradedEuler {
    std::map<int, long long> gamma;

    long long at(int n) const {
        auto it = gamma.find(n);
        return it == gamma.end() ? 0 : it->second;
    }
    long long total() const {
        long long s = 0;
        for (const auto& [n, c] : gamma) s += c;
        return s;
    }
    bool operator==(const GradedEuler& o) const { return gamma == o.gamma; }
    bool operator!=(const GradedEuler& o) const { return !(*this == o); }
};

template <class F>
GradedEuler graded_euler(const DevissageFiltration<F>& x) {
    GradedEuler g;
    for (const auto& [n, t] : x.certificates) {
        long long c = 0;
        for (int k = t.lo; k <= t.hi; ++k)
            c += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(t.h(k));
        if (c != 0) g.gamma[n + 1] = c;
    }
    return g;
}

// chi(Tx) = -chi(x), checked pointwise.
template <class F>
bool euler_of_T(const Complex<F>& x) {
    return euler(apply_functor<F>(FunctorTag::T, x)) == -euler(x);
}

// Graded piece of the step x_n -> x_{n+1}.  For a degreewise injective step
// the image is split off along the pivot rows of each matrix and the piece
// is the quotient in the surviving coordinates, so block-built filtrations
// are taken apart on the nose.  Otherwise the mapping cone stands in; it
// computes the same homology without needing a splitting.
template <class F>
Complex<F> graded_piece(const Filtered<F>& x, int n) {
    const F& k = x.field;
    ChainMap<F> i = x.imap(n);
    const Complex<F>& s = i.src;
    const Complex<F>& t = i.dst;
    for (int d = s.lo; d <= s.hi; ++d)
        if (rank(k, i.at(d)) < s.dim(d)) return cone_complex(i);
    std::map<int, Mat<F>> proj;  // t_d -> quotient coordinates
    std::map<int, Mat<F>> sect;  // quotient coordinates -> t_d
    std::map<int, int> qdims;
    for (int d = t.lo; d <= t.hi; ++d) {
        int td = t.dim(d);
        int sd = s.dim(d);
        std::vector<int> prows = rref(k, transpose(i.at(d))).pivots;
        std::vector<bool> inp(static_cast<size_t>(td), false);
        for (int r : prows) inp[static_cast<size_t>(r)] = true;
        std::vector<int> nrows;
        for (int r = 0; r < td; ++r)
            if (!inp[static_cast<size_t>(r)]) nrows.push_back(r);
        Mat<F> ip_inv = inverse(k, submatrix(i.at(d), prows, all_indices<F>(sd)));
        Mat<F> corr = mul(k, submatrix(i.at(d), nrows, all_indices<F>(sd)), ip_inv);
        Mat<F> p(static_cast<int>(nrows.size()), td);
        Mat<F> u(td, static_cast<int>(nrows.size()));
        for (size_t j = 0; j < nrows.size(); ++j) {
            p.at(static_cast<int>(j), nrows[j]) = k.one();
            u.at(nrows[j], static_cast<int>(j)) = k.one();
        }
        for (size_t j = 0; j < prows.size(); ++j)
            for (size_t r = 0; r < nrows.size(); ++r)
                p.at(static_cast<int>(r), prows[j]) =
                    k.neg(corr.at(static_cast<int>(r), static_cast<int>(j)));
        proj[d] = std::move(p);
        sect[d] = std::move(u);
        qdims[d] = td - sd;
    }
    std::map<int, int> dims;
    for (const auto& [d, q] : qdims)
        if (q > 0) dims[d] = q;
    std::map<int, Mat<F>> diffs;
    for (int d = t.lo + 1; d <= t.hi; ++d) {
        if (qdims[d] == 0 || qdims[d - 1] == 0) continue;
        Mat<F> m = mul(k, proj[d - 1], mul(k, t.d(d), sect[d]));
        if (!is_zero_entries<F>(m)) diffs[d] = std::move(m);
    }
    return make_complex<F>(k, dims, std::move(diffs));
}

// Block filtration of a heart tuple: component k lands in stage k, so the
// steps are leading-block inclusions and the graded piece of step n is the
// component n + 1 itself.
template <class F>
DevissageFiltration<F> grid_A(int a, int b, const std::vector<Complex<F>>& v) {
    check(a <= b, "grid_A: empty window");
    check(static_cast<int>(v.size()) == b - a + 1, "grid_A: tuple length");
    CellStructure<F> cs = homology_cells<F>();
    for (size_t j = 0; j < v.size(); ++j)
        check(cs.heart(a + static_cast<int>(j), v[j]),
              "grid_A: component " + std::to_string(a + static_cast<int>(j)) +
                  " is not in its heart");
    Filtered<F> acc = embed(v[0], -a);
    for (size_t j = 1; j < v.size(); ++j)
        acc = direct_sum_filtered(acc, embed(v[j], -(a + static_cast<int>(j))));
    DevissageReport<F> rep = validate_devissage(acc);
    check(rep.ok, "grid_A: assembled filtration failed validation");
    return rep.filtration;
}

// Cone-functor sum over a heart tuple: summand k runs v_k -> C v_k across
// the step k -> k+1.  The stalk is a sum of cones, hence contractible, and
// the result is again a devissage filtration.
template <class F>
Filtered<F> grid_B(int a, int b, const std::vector<Complex<F>>& v) {
    check(a < b, "grid_B: window too small");
    check(static_cast<int>(v.size()) == b - a, "grid_B: tuple length");
    CellStructure<F> cs = homology_cells<F>();
    for (size_t j = 0; j < v.size(); ++j)
        check(cs.heart(a + static_cast<int>(j), v[j]),
              "grid_B: component " + std::to_string(a + static_cast<int>(j)) +
                  " is not in its heart");
    Filtered<F> acc = zero_filtered<F>(v[0].field);
    for (size_t j = 0; j < v.size(); ++j) {
        int c = a + static_cast<int>(j);
        acc = direct_sum_filtered(acc, cone_functor(embed(v[j], -c), c + 1));
    }
    return acc;
}

// Stage-and-graded-piece extractor, the exact left inverse of the block
// filtration: (x_a, piece of step a, ..., piece of step b-1).
template <class F>
std::vector<Complex<F>> grid_C(int a, int b, const Filtered<F>& x) {
    check(a <= b, "grid_C: empty window");
    std::vector<Complex<F>> out;
    out.push_back(x.stage(a));
    for (int n = a; n < b; ++n) out.push_back(graded_piece(x, n));
    return out;
}

// Stage tuple (x_a, ..., x_{b-1}).
template <class F>
std::vector<Complex<F>> grid_D(int a, int b, const Filtered<F>& x) {
    check(a < b, "grid_D: window too small");
    std::vector<Complex<F>> out;
    for (int n = a; n < b; ++n) out.push_back(x.stage(n));
    return out;
}

// Two-diagonal expansion: component i of the output is v_i (+) T v_{i-1},
// reading v as zero outside [a, b-1]; the output runs over [a, b].
template <class F>
std::vector<Complex<F>> grid_E(int a, int b, const std::vector<Complex<F>>& v) {
    check(a < b, "grid_E: window too small");
    check(static_cast<int>(v.size()) == b - a, "grid_E: tuple length");
    const F& k = v[0].field;
    std::vector<Complex<F>> out;
    for (int i = a; i <= b; ++i) {
        Complex<F> cur =
            i <= b - 1 ? v[static_cast<size_t>(i - a)] : zero_complex<F>(k);
        Complex<F> prev =
            i - 1 >= a ? v[static_cast<size_t>(i - 1 - a)] : zero_complex<F>(k);
        out.push_back(direct_sum<F>(cur, apply_functor<F>(FunctorTag::T, prev)));
    }
    return out;
}

}  // namespace exhom
