#pragma once

// JSON documents for the library's values.  Degree-indexed data keys on
// decimal strings (JSON objects cannot key on integers), matrices are
// row-major arrays of rows, and scalar entries are integers, with "a/b"
// strings for rationals that need them.  Parsing funnels through the
// library constructors, so a document that parses carries a valid value,
// and parse after emit is the identity on canonical values.  Errors name
// the JSON path to the offending member.

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "exhom/cells.hpp"
#include "exhom/total.hpp"

namespace exhom {

using json = nlohmann::json;

[[noreturn]] inline void parse_fail(const std::string& path,
                                    const std::string& why) {
    throw error("parse error at /" + path + ": " + why);
}

inline const json& member(const json& j, const char* key,
                          const std::string& path) {
    if (!j.is_object()) parse_fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) parse_fail(path + "/" + key, "missing");
    return *it;
}

inline int parse_degree_key(const std::string& s, const std::string& path) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size() && !s.empty()) return v;
    } catch (...) {
    }
    parse_fail(path, "bad degree key \"" + s + "\"");
}

// Field descriptors.

inline json field_doc(const FpField& k) {
    return json{{"kind", "prime"}, {"p", k.p}};
}

inline json field_doc(const QField&) { return json{{"kind", "rational"}}; }

// Calls fn with the field named by a {"kind": ...} descriptor.  fn must
// accept both field types and return one type.
template <class Fn>
auto with_field_doc(const json& j, const std::string& path, Fn&& fn) {
    const json& kind = member(j, "kind", path);
    if (kind == "prime") {
        const json& p = member(j, "p", path);
        if (!p.is_number_integer() || !is_prime(p.get<std::int64_t>()))
            parse_fail(path + "/p", "expected a prime");
        return fn(FpField{p.get<std::int64_t>()});
    }
    if (kind == "rational") return fn(QField{});
    parse_fail(path + "/kind", "expected \"prime\" or \"rational\"");
}

// Scalar entries.

inline json elt_doc(const FpField&, FpField::Elt e) { return json(e); }

inline json elt_doc(const QField&, const QField::Elt& e) {
    const auto num = boost::multiprecision::numerator(e);
    const auto den = boost::multiprecision::denominator(e);
    if (den == 1 && num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max())
        return json(num.template convert_to<std::int64_t>());
    return json(e.str());
}

inline FpField::Elt parse_elt(const FpField& k, const json& j,
                              const std::string& path) {
    if (j.is_number_integer()) return k.reduce(j.get<std::int64_t>());
    parse_fail(path, "expected an integer residue");
}

inline QField::Elt parse_elt(const QField&, const json& j,
                             const std::string& path) {
    if (j.is_number_integer()) return QField::Elt(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return QField::Elt(j.get<std::string>());
        } catch (...) {
        }
    }
    parse_fail(path, "expected an integer or an \"a/b\" string");
}

// Matrices, as arrays of rows against a known shape.

template <class F>
json mat_doc(const F& k, const Mat<F>& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(elt_doc(k, m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class F>
Mat<F> parse_mat(const F& k, const json& j, int rows, int cols,
                 const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        parse_fail(path, "expected " + std::to_string(rows) + " rows");
    Mat<F> m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[static_cast<size_t>(i)];
        const std::string rpath = path + "/" + std::to_string(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            parse_fail(rpath, "expected " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c)
            m.at(i, c) = parse_elt(k, row[static_cast<size_t>(c)],
                                   rpath + "/" + std::to_string(c));
    }
    return m;
}

// Complexes.  The body holds "degrees" and "differentials"; complex_doc adds
// the field descriptor for standalone files.

template <class F>
json complex_body(const F& k, const Complex<F>& x) {
    json degrees = json::object();
    for (int n = x.lo; n <= x.hi; ++n) degrees[std::to_string(n)] = x.dim(n);
    json diffs = json::object();
    for (int n = x.lo + 1; n <= x.hi; ++n) {
        Mat<F> m = x.d(n);
        if (!is_zero_entries<F>(m)) diffs[std::to_string(n)] = mat_doc(k, m);
    }
    return json{{"degrees", std::move(degrees)},
                {"differentials", std::move(diffs)}};
}

template <class F>
json complex_doc(const F& k, const Complex<F>& x) {
    json j = complex_body(k, x);
    j["field"] = field_doc(k);
    return j;
}

template <class F>
Complex<F> parse_complex_body(const F& k, const json& j,
                              const std::string& path) {
    const json& dg = member(j, "degrees", path);
    if (!dg.is_object()) parse_fail(path + "/degrees", "expected an object");
    std::map<int, int> dims;
    for (auto it = dg.begin(); it != dg.end(); ++it) {
        int n = parse_degree_key(it.key(), path + "/degrees/" + it.key());
        if (!it->is_number_integer() || it->get<std::int64_t>() < 0 ||
            it->get<std::int64_t>() > std::numeric_limits<int>::max())
            parse_fail(path + "/degrees/" + it.key(), "expected a dimension");
        dims[n] = static_cast<int>(it->get<std::int64_t>());
    }
    auto dim_of = [&](int n) {
        auto f = dims.find(n);
        return f == dims.end() ? 0 : f->second;
    };
    std::map<int, Mat<F>> diffs;
    if (j.is_object() && j.contains("differentials")) {
        const json& df = j.at("differentials");
        if (!df.is_object())
            parse_fail(path + "/differentials", "expected an object");
        for (auto it = df.begin(); it != df.end(); ++it) {
            const std::string mpath = path + "/differentials/" + it.key();
            int n = parse_degree_key(it.key(), mpath);
            diffs.emplace(n, parse_mat(k, *it, dim_of(n - 1), dim_of(n), mpath));
        }
    }
    try {
        return make_complex<F>(k, std::move(dims), std::move(diffs));
    } catch (const error& e) {
        parse_fail(path, e.what());
    }
}

// Chain maps carry both endpoint complexes so a map file stands alone.

template <class F>
json chain_map_body(const F& k, const ChainMap<F>& f) {
    json mats = json::object();
    for (const auto& [n, m] : f.mats) mats[std::to_string(n)] = mat_doc(k, m);
    return json{{"source", complex_body(k, f.src)},
                {"target", complex_body(k, f.dst)},
                {"mats", std::move(mats)}};
}

template <class F>
json chain_map_doc(const F& k, const ChainMap<F>& f) {
    json j = chain_map_body(k, f);
    j["field"] = field_doc(k);
    return j;
}

// Reads the degree-keyed matrix family under j[key], shaped by src and dst
// at each degree.
template <class F>
std::map<int, Mat<F>> parse_level_mats(const F& k, const json& j,
                                       const char* key, const Complex<F>& src,
                                       const Complex<F>& dst,
                                       const std::string& path) {
    std::map<int, Mat<F>> mats;
    if (!j.is_object() || !j.contains(key)) return mats;
    const json& mj = j.at(key);
    const std::string base = path + "/" + key;
    if (!mj.is_object()) parse_fail(base, "expected an object");
    for (auto it = mj.begin(); it != mj.end(); ++it) {
        const std::string mpath = base + "/" + it.key();
        int n = parse_degree_key(it.key(), mpath);
        mats.emplace(n, parse_mat(k, *it, dst.dim(n), src.dim(n), mpath));
    }
    return mats;
}

template <class F>
ChainMap<F> parse_chain_map_body(const F& k, const json& j,
                                 const std::string& path) {
    Complex<F> src =
        parse_complex_body(k, member(j, "source", path), path + "/source");
    Complex<F> dst =
        parse_complex_body(k, member(j, "target", path), path + "/target");
    std::map<int, Mat<F>> mats = parse_level_mats(k, j, "mats", src, dst, path);
    try {
        return make_chain_map(std::move(src), std::move(dst), std::move(mats));
    } catch (const error& e) {
        parse_fail(path, e.what());
    }
}

// Towers of complexes: columns listed from position lo upward, maps[i] the
// structure map from column lo+i+1 down to column lo+i.

template <class F>
json tower_body(const F& k, const BiComplex<F>& z) {
    json cols = json::array();
    for (int q = z.lo; q <= z.hi; ++q) cols.push_back(complex_body(k, z.col(q)));
    json maps = json::array();
    for (int q = z.lo + 1; q <= z.hi; ++q) {
        json mats = json::object();
        for (const auto& [n, m] : z.dmap(q).mats)
            mats[std::to_string(n)] = mat_doc(k, m);
        maps.push_back(std::move(mats));
    }
    return json{{"lo", z.lo}, {"columns", std::move(cols)},
                {"maps", std::move(maps)}};
}

template <class F>
json tower_doc(const F& k, const BiComplex<F>& z) {
    json j = tower_body(k, z);
    j["field"] = field_doc(k);
    return j;
}

template <class F>
BiComplex<F> parse_tower_body(const F& k, const json& j,
                              const std::string& path) {
    const json& lo = member(j, "lo", path);
    if (!lo.is_number_integer()) parse_fail(path + "/lo", "expected an integer");
    const json& cj = member(j, "columns", path);
    if (!cj.is_array() || cj.empty())
        parse_fail(path + "/columns", "expected a nonempty array");
    std::vector<Complex<F>> cols;
    for (size_t i = 0; i < cj.size(); ++i)
        cols.push_back(parse_complex_body(k, cj[i],
                                          path + "/columns/" + std::to_string(i)));
    const json& mj = member(j, "maps", path);
    if (!mj.is_array() || mj.size() + 1 != cj.size())
        parse_fail(path + "/maps",
                   "expected " + std::to_string(cj.size() - 1) + " map families");
    std::vector<ChainMap<F>> dmaps;
    for (size_t i = 0; i < mj.size(); ++i) {
        const std::string mpath = path + "/maps/" + std::to_string(i);
        json holder = json{{"mats", mj[i]}};
        std::map<int, Mat<F>> mats =
            parse_level_mats(k, holder, "mats", cols[i + 1], cols[i], mpath);
        try {
            dmaps.push_back(make_chain_map(cols[i + 1], cols[i], std::move(mats)));
        } catch (const error& e) {
            parse_fail(mpath, e.what());
        }
    }
    try {
        return make_bicomplex(k, lo.get<int>(), std::move(cols),
                              std::move(dmaps));
    } catch (const error& e) {
        parse_fail(path, e.what());
    }
}

// Filtered objects: stages listed from index lo upward, maps[i] the
// inclusion-direction map from stage lo+i into stage lo+i+1.

template <class F>
json filtered_body(const F& k, const Filtered<F>& x) {
    json stages = json::array();
    for (int n = x.a; n <= x.b; ++n)
        stages.push_back(complex_body(k, x.stage(n)));
    json maps = json::array();
    for (int n = x.a; n < x.b; ++n) {
        json mats = json::object();
        for (const auto& [d, m] : x.imap(n).mats)
            mats[std::to_string(d)] = mat_doc(k, m);
        maps.push_back(std::move(mats));
    }
    return json{{"lo", x.a}, {"stages", std::move(stages)},
                {"maps", std::move(maps)}};
}

template <class F>
json filtered_doc(const F& k, const Filtered<F>& x) {
    json j = filtered_body(k, x);
    j["field"] = field_doc(k);
    return j;
}

template <class F>
Filtered<F> parse_filtered_body(const F& k, const json& j,
                                const std::string& path) {
    const json& lo = member(j, "lo", path);
    if (!lo.is_number_integer()) parse_fail(path + "/lo", "expected an integer");
    const json& sj = member(j, "stages", path);
    if (!sj.is_array() || sj.empty())
        parse_fail(path + "/stages", "expected a nonempty array");
    std::vector<Complex<F>> stages;
    for (size_t i = 0; i < sj.size(); ++i)
        stages.push_back(parse_complex_body(k, sj[i],
                                            path + "/stages/" + std::to_string(i)));
    const json& mj = member(j, "maps", path);
    if (!mj.is_array() || mj.size() + 1 != sj.size())
        parse_fail(path + "/maps",
                   "expected " + std::to_string(sj.size() - 1) + " map families");
    std::vector<ChainMap<F>> maps;
    for (size_t i = 0; i < mj.size(); ++i) {
        const std::string mpath = path + "/maps/" + std::to_string(i);
        json holder = json{{"mats", mj[i]}};
        std::map<int, Mat<F>> mats =
            parse_level_mats(k, holder, "mats", stages[i], stages[i + 1], mpath);
        try {
            maps.push_back(make_chain_map(stages[i], stages[i + 1],
                                          std::move(mats)));
        } catch (const error& e) {
            parse_fail(mpath, e.what());
        }
    }
    try {
        return make_filtered(k, lo.get<int>(), std::move(stages),
                             std::move(maps));
    } catch (const error& e) {
        parse_fail(path, e.what());
    }
}

// Degree-keyed matrix families on their own (homotopy h-families and the
// like); shapes come from the caller.

template <class F>
json family_doc(const F& k, const std::map<int, Mat<F>>& fam) {
    json j = json::object();
    for (const auto& [n, m] : fam) j[std::to_string(n)] = mat_doc(k, m);
    return j;
}

// Small readouts.

template <class F>
json homology_doc(const HomologyTable<F>& t) {
    json j = json::object();
    for (int n = t.lo; n <= t.hi; ++n)
        if (t.h(n) != 0) j[std::to_string(n)] = t.h(n);
    return j;
}

inline json graded_euler_doc(const GradedEuler& g) {
    json j = json::object();
    for (const auto& [n, c] : g.gamma) j[std::to_string(n)] = c;
    return j;
}

// Canonical serialized form: two-space indent, sorted keys, one trailing
// newline.
inline std::string dump_doc(const json& j) { return j.dump(2) + "\n"; }

}  // namespace exhom
