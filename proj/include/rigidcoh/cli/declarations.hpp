#pragma once

#include <map>
#include <set>
#include <string>

#include "rigidcoh/cli/codec.hpp"

namespace rigidcoh::cli {

/// A parse, schema or reference failure with a JSON-pointer style location.
class DocumentError : public Error {
public:
    DocumentError(ErrorCode code, std::string location, std::string detail)
        : Error(code, location + ": " + detail), location_(std::move(location)), detail_(std::move(detail)) {}

    const std::string& location() const noexcept { return location_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string location_;
    std::string detail_;
};

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
    throw DocumentError(ErrorCode::SchemaError, path.empty() ? "/" : path, what);
}

inline std::string child(const std::string& path, const std::string& key) {
    std::string escaped;
    for (char c : key) {
        if (c == '~') escaped += "~0";
        else if (c == '/') escaped += "~1";
        else escaped += c;
    }
    return path + "/" + escaped;
}
inline std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

// ---------------------------------------------------------------------------
// Typed field readers. Each checks shape and reports the offending path.

inline void expect_object(const Json& j, const std::string& path) {
    if (!j.is_object()) schema_error(path, "expected an object");
}

inline void only_keys(const Json& j, const std::string& path, const std::set<std::string>& allowed) {
    expect_object(j, path);
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) schema_error(child(path, k), "unknown field");
}

inline const Json& field(const Json& j, const std::string& path, const std::string& key) {
    expect_object(j, path);
    if (!j.contains(key)) schema_error(child(path, key), "missing required field");
    return j.at(key);
}

inline Integer read_integer(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<unsigned long>()) : Integer(j.get<long>());
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        Integer v;
        bool ok = !s.empty() && v.set_str(s, 10) == 0;
        if (ok) return v;
    }
    schema_error(path, "expected an integer");
}

inline long read_long(const Json& j, const std::string& path, long lo, long hi) {
    Integer v = read_integer(j, path);
    if (v < lo || v > hi) schema_error(path, "integer out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v.get_si();
}

inline std::string read_string(const Json& j, const std::string& path) {
    if (!j.is_string()) schema_error(path, "expected a string");
    return j.get<std::string>();
}

inline Vector read_vector(const Json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "expected an array of integers");
    Vector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_integer(j[i], child(path, i)));
    return v;
}

inline std::vector<std::size_t> read_indices(const Json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "expected an array of indices");
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(static_cast<std::size_t>(read_long(j[i], child(path, i), 0, 1L << 20)));
    return v;
}

/// Row-major nested arrays; an empty list has `cols` columns.
inline IntMatrix read_matrix(const Json& j, const std::string& path, std::size_t cols = 0) {
    if (!j.is_array()) schema_error(path, "expected a matrix (array of rows)");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(read_vector(j[i], child(path, i)));
        if (rows.back().size() != rows.front().size()) schema_error(child(path, i), "matrix rows differ in length");
    }
    if (!rows.empty()) cols = rows.front().size();
    return IntMatrix::from_rows(rows, cols);
}

inline IntMatrix read_square(const Json& j, const std::string& path, std::size_t n) {
    IntMatrix m = read_matrix(j, path, n);
    if (m.rows() != n || m.cols() != n) schema_error(path, "expected a " + std::to_string(n) + "×" + std::to_string(n) + " matrix");
    return m;
}

inline QModZ read_qmodz(const Json& j, const std::string& path) {
    try {
        return QModZ::parse(read_string(j, path));
    } catch (const DocumentError&) {
        throw;
    } catch (const Error& e) {
        schema_error(path, e.what());
    }
}

inline Rational read_rational(const Json& j, const std::string& path) {
    std::string s = read_string(j, path);
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) schema_error(path, "expected a rational 'a/b'");
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------------------
// Declarations

/// Built objects, keyed by identifier. Immutable once parsing finishes.
struct Declarations {
    std::map<std::string, GroupPtr> groups;
    std::map<std::string, GaloisLattice> lattices;
    std::map<std::string, FiniteGaloisModule> modules;
    std::map<std::string, IsogenyPair> pairs;
    std::map<std::string, RootDatum> root_data;
    std::map<std::string, ReductivePair> reductive_pairs;
    std::map<std::string, TorsionCharacter> characters;
    std::map<std::string, LaurentSeries> series;
};

/// Declaration sections in dependency order.
inline const std::vector<std::string>& declaration_sections() {
    static const std::vector<std::string> s{"groups",          "lattices",   "modules", "pairs", "root_data",
                                            "reductive_pairs", "characters", "series"};
    return s;
}

template <class T>
const T& resolve(const std::map<std::string, T>& table, const Json& ref, const std::string& path, const char* kind) {
    std::string id = read_string(ref, path);
    auto it = table.find(id);
    if (it == table.end())
        throw DocumentError(ErrorCode::DanglingReference, path, std::string("undefined ") + kind + " '" + id + "'");
    return it->second;
}

namespace detail {

/// Runs a library constructor, reporting its failure at `path`.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const DocumentError&) {
        throw;
    } catch (const Error& e) {
        schema_error(path, e.what());
    }
}

inline GroupPtr build_group(const Json& j, const std::string& path) {
    only_keys(j, path, {"cyclic", "dihedral", "quaternion", "symmetric", "table", "permutations"});
    if (j.size() != 1) schema_error(path, "a group is given by exactly one of cyclic, dihedral, quaternion, symmetric, table, permutations");
    const auto& [kind, v] = *j.items().begin();
    const std::string p = child(path, kind);
    return at_path(p, [&]() -> GroupPtr {
        if (kind == "cyclic") return make_group(FiniteGroup::cyclic(static_cast<std::size_t>(read_long(v, p, 1, 64))));
        if (kind == "dihedral") return make_group(FiniteGroup::dihedral(static_cast<std::size_t>(read_long(v, p, 1, 32))));
        if (kind == "quaternion") return make_group(FiniteGroup::quaternion());
        if (kind == "symmetric") return make_group(FiniteGroup::symmetric(static_cast<std::size_t>(read_long(v, p, 1, 5))));
        if (!v.is_array() || v.empty()) schema_error(p, "expected a nonempty array");
        std::vector<std::vector<std::size_t>> rows;
        for (std::size_t i = 0; i < v.size(); ++i) rows.push_back(read_indices(v[i], child(p, i)));
        if (kind == "table") return make_group(FiniteGroup(rows));
        return make_group(FiniteGroup::from_permutations(rows));
    });
}

inline std::map<std::size_t, IntMatrix> read_action(const Json& j, const std::string& path, std::size_t rank) {
    expect_object(j, path);
    std::map<std::size_t, IntMatrix> gens;
    for (const auto& [k, m] : j.items()) {
        std::size_t idx = 0;
        if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos || k.size() > 6)
            schema_error(child(path, k), "group element keys are decimal indices");
        idx = std::stoul(k);
        gens[idx] = read_square(m, child(path, k), rank);
    }
    return gens;
}

inline GaloisLattice build_lattice(const Declarations& d, const Json& j, const std::string& path) {
    only_keys(j, path, {"group", "rank", "action", "permutation", "regular"});
    GroupPtr g = resolve(d.groups, field(j, path, "group"), child(path, "group"), "group");
    if (j.contains("regular")) {
        if (j.contains("permutation") || j.contains("rank") || j.contains("action"))
            schema_error(path, "regular excludes rank, action and permutation");
        return GaloisLattice::regular(g);
    }
    if (j.contains("permutation")) {
        if (j.contains("rank") || j.contains("action")) schema_error(path, "permutation excludes rank and action");
        auto sub = read_indices(j.at("permutation"), child(path, "permutation"));
        return at_path(child(path, "permutation"), [&] { return GaloisLattice::permutation(g, sub); });
    }
    auto rank = static_cast<std::size_t>(read_long(field(j, path, "rank"), child(path, "rank"), 0, 64));
    if (!j.contains("action")) return GaloisLattice::trivial(g, rank);
    auto gens = read_action(j.at("action"), child(path, "action"), rank);
    return at_path(child(path, "action"), [&] { return GaloisLattice::from_generators(g, rank, gens); });
}

inline FiniteGaloisModule build_module(const Declarations& d, const Json& j, const std::string& path) {
    only_keys(j, path, {"lattice", "relations", "modulus"});
    const GaloisLattice& l = resolve(d.lattices, field(j, path, "lattice"), child(path, "lattice"), "lattice");
    if (j.contains("modulus") == j.contains("relations")) schema_error(path, "give exactly one of relations, modulus");
    if (j.contains("modulus")) {
        Integer n = read_long(j.at("modulus"), child(path, "modulus"), 1, 1L << 30);
        return at_path(path, [&] { return FiniteGaloisModule::reduction(l, n); });
    }
    IntMatrix rel = read_matrix(j.at("relations"), child(path, "relations"), l.rank());
    if (rel.cols() != l.rank()) schema_error(child(path, "relations"), "relation vectors have the wrong length");
    return at_path(path, [&] { return FiniteGaloisModule::quotient(l, SubLattice::span(rel)); });
}

inline IsogenyPair build_pair(const Declarations& d, const Json& j, const std::string& path) {
    only_keys(j, path, {"y", "ybar", "matrix", "sublattice"});
    if (j.contains("sublattice")) {
        if (j.contains("y") || j.contains("matrix")) schema_error(path, "sublattice excludes y and matrix");
        const GaloisLattice& yb = resolve(d.lattices, field(j, path, "ybar"), child(path, "ybar"), "lattice");
        IntMatrix rows = read_matrix(j.at("sublattice"), child(path, "sublattice"), yb.rank());
        return at_path(path, [&] { return IsogenyPair::from_sublattice(yb, SubLattice::span(rows)); });
    }
    const GaloisLattice& y = resolve(d.lattices, field(j, path, "y"), child(path, "y"), "lattice");
    if (!j.contains("ybar")) {
        if (j.contains("matrix")) schema_error(child(path, "matrix"), "matrix requires ybar");
        return IsogenyPair::trivial_center(y);
    }
    const GaloisLattice& yb = resolve(d.lattices, j.at("ybar"), child(path, "ybar"), "lattice");
    IntMatrix m = read_matrix(field(j, path, "matrix"), child(path, "matrix"), y.rank());
    return at_path(path, [&] { return IsogenyPair(EquivariantMap(y, yb, m)); });
}

inline RootDatum build_datum(const Declarations& d, const Json& j, const std::string& path, const std::string& id) {
    if (j.contains("cartan")) {
        only_keys(j, path, {"cartan", "form", "group", "action"});
        std::string type = read_string(j.at("cartan"), child(path, "cartan"));
        std::string form = j.contains("form") ? read_string(j.at("form"), child(path, "form")) : "simply_connected";
        if (form != "simply_connected" && form != "adjoint")
            schema_error(child(path, "form"), "form is simply_connected or adjoint");
        GroupPtr g = j.contains("group") ? resolve(d.groups, j.at("group"), child(path, "group"), "group")
                                         : make_group(FiniteGroup());
        return at_path(path, [&] {
            auto [letter, n] = parse_cartan_type(type);
            RootDatum rd = from_cartan(cartan_matrix(letter, n),
                                       form == "adjoint" ? IsogenyForm::Adjoint : IsogenyForm::SimplyConnected, g, id);
            if (!j.contains("action")) return rd;
            auto gens = read_action(j.at("action"), child(path, "action"), n);
            return rd.with_action(GaloisLattice::from_generators(g, n, gens));
        });
    }
    only_keys(j, path, {"lattice", "simple_roots", "simple_coroots"});
    const GaloisLattice& y = resolve(d.lattices, field(j, path, "lattice"), child(path, "lattice"), "lattice");
    IntMatrix r = read_matrix(field(j, path, "simple_roots"), child(path, "simple_roots"), y.rank());
    IntMatrix c = read_matrix(field(j, path, "simple_coroots"), child(path, "simple_coroots"), y.rank());
    return at_path(path, [&] { return RootDatum(y, r.row_list(), c.row_list(), id); });
}

inline ReductivePair build_reductive(const Declarations& d, const Json& j, const std::string& path) {
    only_keys(j, path, {"datum", "center"});
    const RootDatum& rd = resolve(d.root_data, field(j, path, "datum"), child(path, "datum"), "root datum");
    if (!j.contains("center")) return ReductivePair::trivial_center(rd);
    const Json& c = j.at("center");
    const std::string p = child(path, "center");
    if (c.is_string()) {
        std::string kind = c.get<std::string>();
        if (kind == "trivial") return ReductivePair::trivial_center(rd);
        if (kind == "full") return at_path(p, [&] { return ReductivePair::full_center(rd); });
        schema_error(p, "center is 'trivial', 'full' or a list of rational generators");
    }
    if (!c.is_array()) schema_error(p, "center is 'trivial', 'full' or a list of rational generators");
    std::vector<std::vector<Rational>> gens;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c[i].is_array() || c[i].size() != rd.rank()) schema_error(child(p, i), "generator has the wrong length");
        std::vector<Rational> v;
        for (std::size_t k = 0; k < c[i].size(); ++k) v.push_back(read_rational(c[i][k], child(child(p, i), k)));
        gens.push_back(std::move(v));
    }
    return at_path(p, [&] { return ReductivePair::with_center(rd, gens); });
}

inline TorsionCharacter build_character(const Json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "a character is an array of 'a/b' values");
    std::vector<QModZ> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_qmodz(j[i], child(path, i)));
    return TorsionCharacter(std::move(v));
}

inline LaurentSeries build_series(const Json& j, const std::string& path) {
    only_keys(j, path, {"p", "start", "coefficients", "precision"});
    auto p = static_cast<std::uint64_t>(read_long(field(j, path, "p"), child(path, "p"), 2, (1L << 31) - 1));
    long start = j.contains("start") ? read_long(j.at("start"), child(path, "start"), -(1L << 20), 1L << 20) : 0;
    const Json& cs = field(j, path, "coefficients");
    if (!cs.is_array()) schema_error(child(path, "coefficients"), "expected an array of integers");
    std::vector<long long> coeffs;
    for (std::size_t i = 0; i < cs.size(); ++i)
        coeffs.push_back(read_long(cs[i], child(child(path, "coefficients"), i), -(1L << 40), 1L << 40));
    std::optional<std::size_t> prec;
    if (j.contains("precision"))
        prec = static_cast<std::size_t>(read_long(j.at("precision"), child(path, "precision"), 0, 4096));
    return at_path(path, [&] { return LaurentSeries::from_coefficients(p, start, coeffs, prec); });
}

} // namespace detail

/// Builds every declaration section of a document; identifiers are unique across sections.
inline Declarations build_declarations(const Json& doc) {
    Declarations d;
    std::map<std::string, std::string> seen;
    for (const auto& section : declaration_sections()) {
        if (!doc.contains(section)) continue;
        const std::string sp = "/" + section;
        expect_object(doc.at(section), sp);
        for (const auto& [id, spec] : doc.at(section).items()) {
            const std::string p = child(sp, id);
            if (id.empty()) schema_error(p, "identifiers must be nonempty");
            auto [it, fresh] = seen.emplace(id, section);
            if (!fresh) schema_error(p, "identifier already declared in " + it->second);
            if (section == "groups") d.groups.emplace(id, detail::build_group(spec, p));
            else if (section == "lattices") d.lattices.emplace(id, detail::build_lattice(d, spec, p));
            else if (section == "modules") d.modules.emplace(id, detail::build_module(d, spec, p));
            else if (section == "pairs") d.pairs.emplace(id, detail::build_pair(d, spec, p));
            else if (section == "root_data") d.root_data.emplace(id, detail::build_datum(d, spec, p, id));
            else if (section == "reductive_pairs") d.reductive_pairs.emplace(id, detail::build_reductive(d, spec, p));
            else if (section == "characters") d.characters.emplace(id, detail::build_character(spec, p));
            else d.series.emplace(id, detail::build_series(spec, p));
        }
    }
    return d;
}

} // namespace rigidcoh::cli
