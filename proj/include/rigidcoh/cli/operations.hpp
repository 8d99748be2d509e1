#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rigidcoh/cli/declarations.hpp"

namespace rigidcoh::cli {

enum class ParamKind {
    Group,
    Lattice,
    Module,
    Pair,
    Datum,
    Reductive,
    Character,
    Series,
    SeriesList,
    Integer,
    Count,
    Vector,
    Matrix,
    IndexList,
    Level,
    Flag,
};

struct Param {
    std::string key;
    ParamKind kind;
    bool required = true;
};

using Handler = std::function<Json(const Declarations&, const Json&)>;

struct OpSpec {
    std::string name;
    std::string module;
    std::vector<Param> params;
    Handler run;
};

namespace detail {

/// Checks one task parameter against its kind, resolving references.
inline void check_param(const Declarations& d, const Param& p, const Json& v, const std::string& path) {
    switch (p.kind) {
    case ParamKind::Group: resolve(d.groups, v, path, "group"); break;
    case ParamKind::Lattice: resolve(d.lattices, v, path, "lattice"); break;
    case ParamKind::Module: resolve(d.modules, v, path, "module"); break;
    case ParamKind::Pair: resolve(d.pairs, v, path, "pair"); break;
    case ParamKind::Datum: resolve(d.root_data, v, path, "root datum"); break;
    case ParamKind::Reductive: resolve(d.reductive_pairs, v, path, "reductive pair"); break;
    case ParamKind::Character: resolve(d.characters, v, path, "character"); break;
    case ParamKind::Series: resolve(d.series, v, path, "series"); break;
    case ParamKind::SeriesList:
        if (!v.is_array()) schema_error(path, "expected an array of series identifiers");
        for (std::size_t i = 0; i < v.size(); ++i) resolve(d.series, v[i], child(path, i), "series");
        break;
    case ParamKind::Integer: read_integer(v, path); break;
    case ParamKind::Count: read_long(v, path, 1, 4096); break;
    case ParamKind::Vector: read_vector(v, path); break;
    case ParamKind::Matrix: read_matrix(v, path); break;
    case ParamKind::IndexList: read_indices(v, path); break;
    case ParamKind::Level:
        only_keys(v, path, {"group", "n"});
        resolve(d.groups, field(v, path, "group"), child(path, "group"), "group");
        read_long(field(v, path, "n"), child(path, "n"), 1, 1L << 20);
        break;
    case ParamKind::Flag:
        if (!v.is_boolean()) schema_error(path, "expected true or false");
        break;
    }
}

inline const GaloisLattice& lattice(const Declarations& d, const Json& t) { return d.lattices.at(t.at("lattice")); }
inline const IsogenyPair& pair(const Declarations& d, const Json& t, const char* key = "pair") { return d.pairs.at(t.at(key)); }
inline const ReductivePair& reductive(const Declarations& d, const Json& t) {
    return d.reductive_pairs.at(t.at("reductive_pair"));
}
inline const RootDatum& datum(const Declarations& d, const Json& t, const char* key = "datum") {
    return d.root_data.at(t.at(key));
}
inline const TorsionCharacter& character(const Declarations& d, const Json& t, const char* key = "character") {
    return d.characters.at(t.at(key));
}
inline Vector vec(const Json& t, const char* key) { return read_vector(t.at(key), key); }
inline IntMatrix mat(const Json& t, const char* key, std::size_t cols = 0) { return read_matrix(t.at(key), key, cols); }

inline ULevel level(const Declarations& d, const Json& v) {
    return ULevel(d.groups.at(v.at("group")), Integer(v.at("n").get<long>()));
}

inline std::vector<LaurentSeries> gamma(const Declarations& d, const Json& t) {
    std::vector<LaurentSeries> g;
    for (const auto& id : t.at("gamma")) g.push_back(d.series.at(id));
    return g;
}

inline std::size_t precision(const Json& t) {
    return t.contains("precision") ? static_cast<std::size_t>(t.at("precision").get<long>()) : default_precision;
}

inline Json group_op(const FinAbGroup& g) { return encode(g); }

inline Json check_list(std::initializer_list<std::pair<const char*, bool>> checks) {
    Json out = Json::object();
    for (const auto& [k, v] : checks) out[k] = v;
    return out;
}

} // namespace detail

/// Every task type the runner understands.
inline const std::vector<OpSpec>& operation_table() {
    using K = ParamKind;
    using namespace detail;
    static const std::vector<OpSpec> table{
        // exact_lattice
        {"smith_normal_form", "exact_lattice", {{"matrix", K::Matrix}},
         [](const Declarations&, const Json& t) {
             SmithForm s = smith_normal_form(mat(t, "matrix"));
             return Json{{"U", encode(s.U)}, {"D", encode(s.D)}, {"V", encode(s.V)}, {"diagonal", encode(s.diagonal())}};
         }},
        {"kernel_basis", "exact_lattice", {{"matrix", K::Matrix}},
         [](const Declarations&, const Json& t) { return encode(kernel_basis(mat(t, "matrix"))); }},
        {"subquotient", "exact_lattice", {{"rank", K::Count}, {"numerator", K::Matrix}, {"denominator", K::Matrix}},
         [](const Declarations&, const Json& t) {
             const auto n = static_cast<std::size_t>(t.at("rank").get<long>());
             return encode(subquotient(SubLattice::span(mat(t, "numerator", n)), SubLattice::span(mat(t, "denominator", n))));
         }},
        {"saturation", "exact_lattice", {{"rank", K::Count}, {"generators", K::Matrix}},
         [](const Declarations&, const Json& t) {
             const auto n = static_cast<std::size_t>(t.at("rank").get<long>());
             return encode(saturation(SubLattice::span(mat(t, "generators", n))));
         }},
        // galois
        {"norm_matrix", "galois", {{"lattice", K::Lattice}},
         [](const Declarations& d, const Json& t) { return Json{{"matrix", encode(norm_matrix(lattice(d, t)))}}; }},
        {"augmentation_sublattice", "galois", {{"lattice", K::Lattice}},
         [](const Declarations& d, const Json& t) { return encode(augmentation_sublattice(lattice(d, t))); }},
        {"invariants_sublattice", "galois", {{"lattice", K::Lattice}},
         [](const Declarations& d, const Json& t) { return encode(invariants_sublattice(lattice(d, t))); }},
        {"tate_h0", "galois", {{"lattice", K::Lattice}},
         [](const Declarations& d, const Json& t) { return group_op(tate_h0(lattice(d, t))); }},
        {"tate_h_neg1", "galois", {{"lattice", K::Lattice}},
         [](const Declarations& d, const Json& t) { return group_op(tate_h_neg1(lattice(d, t))); }},
        {"h1_lattice", "galois", {{"lattice", K::Lattice}},
         [](const Declarations& d, const Json& t) { return group_op(h1_lattice(lattice(d, t))); }},
        {"tate_h_neg2_finite", "galois", {{"module", K::Module}},
         [](const Declarations& d, const Json& t) { return group_op(tate_h_neg2_finite(d.modules.at(t.at("module")))); }},
        {"h1_finite", "galois", {{"module", K::Module}},
         [](const Declarations& d, const Json& t) { return group_op(h1_finite(d.modules.at(t.at("module")))); }},
        {"dual_module", "galois", {{"module", K::Module}},
         [](const Declarations& d, const Json& t) {
             FiniteGaloisModule q = dual_module(d.modules.at(t.at("module")));
             return Json{{"group", encode(q.as_group())}, {"rank", q.rank()}, {"relations", encode(q.relations())}};
         }},
        // tori
        {"rigid_h1_torus", "tori", {{"pair", K::Pair}},
         [](const Declarations& d, const Json& t) { return group_op(rigid_h1_torus(pair(d, t))); }},
        {"h1_F_torus", "tori", {{"lattice", K::Lattice}},
         [](const Declarations& d, const Json& t) { return group_op(h1_F_torus(lattice(d, t))); }},
        {"h2_F_torus", "tori", {{"lattice", K::Lattice}},
         [](const Declarations& d, const Json& t) { return group_op(h2_F_torus(lattice(d, t))); }},
        {"restriction_to_band", "tori", {{"pair", K::Pair}, {"class", K::Vector}},
         [](const Declarations& d, const Json& t) {
             const IsogenyPair& p = pair(d, t);
             Vector e = restriction_to_band(p, RigidClass(p, vec(t, "class")));
             return Json{{"band", encode(band_group(p))}, {"element", encode(e)}};
         }},
        {"transgression", "tori", {{"pair", K::Pair}, {"element", K::Vector}},
         [](const Declarations& d, const Json& t) {
             const IsogenyPair& p = pair(d, t);
             Vector e = transgression(p, vec(t, "element"));
             return Json{{"h0", encode(tate_h0(p.y()))}, {"element", encode(e)}};
         }},
        {"infres_check", "tori", {{"pair", K::Pair}},
         [](const Declarations& d, const Json& t) {
             InfresReport r = infres_check(pair(d, t));
             return Json{{"passed", r.passed()},
                         {"checks", check_list({{"injective_at_h_neg1", r.injective_at_h_neg1},
                                                {"exact_at_rigid", r.exact_at_rigid},
                                                {"exact_at_band", r.exact_at_band}})},
                         {"h_neg1_y", encode(r.h_neg1_y)},
                         {"rigid", encode(r.rigid)},
                         {"band", encode(r.band)},
                         {"h0_y", encode(r.h0_y)}};
         }},
        {"induced_class_map", "tori",
         {{"pair", K::Pair}, {"target_pair", K::Pair}, {"on_y", K::Matrix}, {"on_ybar", K::Matrix}, {"class", K::Vector}},
         [](const Declarations& d, const Json& t) {
             const IsogenyPair& src = pair(d, t);
             const IsogenyPair& tgt = pair(d, t, "target_pair");
             PairMorphism f(src, tgt, mat(t, "on_y", src.rank()), mat(t, "on_ybar", src.rank()));
             RigidClass c = induced_class_map(f, RigidClass(src, vec(t, "class")));
             FinAbGroup g = rigid_h1_torus(tgt);
             return Json{{"representative", encode(c.representative())},
                         {"class", encode(g.class_of(c.representative()))},
                         {"group", encode(g)}};
         }},
        // u_band
        {"char_module", "u_band", {{"level", K::Level}},
         [](const Declarations& d, const Json& t) {
             ULevel l = level(d, t.at("level"));
             return Json{{"rank", l.char_module().rank()},
                         {"group", encode(l.char_module().as_group())},
                         {"gcd_order", encode(l.gcd_order())}};
         }},
        {"hom_u_to_Z", "u_band", {{"level", K::Level}, {"pair", K::Pair}},
         [](const Declarations& d, const Json& t) { return group_op(hom_u_to_Z(level(d, t.at("level")), pair(d, t))); }},
        {"h2_u_level", "u_band", {{"level", K::Level}},
         [](const Declarations& d, const Json& t) { return group_op(h2_u_level(level(d, t.at("level")))); }},
        {"alpha_level", "u_band", {{"level", K::Level}},
         [](const Declarations& d, const Json& t) {
             ULevel l = level(d, t.at("level"));
             return Json{{"group", encode(h2_u_level(l))}, {"element", encode(alpha_level(l))}};
         }},
        {"transition_char", "u_band", {{"fine", K::Level}, {"coarse", K::Level}, {"quotient_map", K::IndexList}},
         [](const Declarations& d, const Json& t) {
             CharTransition c = transition_char(level(d, t.at("fine")), level(d, t.at("coarse")),
                                                read_indices(t.at("quotient_map"), "quotient_map"));
             return Json{{"matrix", encode(c.matrix())}};
         }},
        {"transition_h2", "u_band", {{"fine", K::Level}, {"coarse", K::Level}, {"quotient_map", K::IndexList}},
         [](const Declarations& d, const Json& t) {
             CharTransition c = transition_char(level(d, t.at("fine")), level(d, t.at("coarse")),
                                                read_indices(t.at("quotient_map"), "quotient_map"));
             return encode(transition_h2(c));
         }},
        // reductive
        {"coroot_sublattice", "reductive", {{"datum", K::Datum}},
         [](const Declarations& d, const Json& t) { return encode(coroot_sublattice(datum(d, t))); }},
        {"weyl_group", "reductive", {{"datum", K::Datum}},
         [](const Declarations& d, const Json& t) {
             Json elements = Json::array();
             for (const auto& w : datum(d, t).weyl_group()) elements.push_back(encode(w));
             return Json{{"order", elements.size()}, {"elements", std::move(elements)}};
         }},
        {"is_elliptic", "reductive", {{"datum", K::Datum}},
         [](const Declarations& d, const Json& t) { return Json{{"elliptic", is_elliptic(datum(d, t))}}; }},
        {"dual_root_datum", "reductive", {{"datum", K::Datum}},
         [](const Declarations& d, const Json& t) { return encode(dual_root_datum(datum(d, t))); }},
        {"rigid_h1_reductive", "reductive", {{"reductive_pair", K::Reductive}},
         [](const Declarations& d, const Json& t) { return group_op(rigid_h1_reductive(reductive(d, t))); }},
        {"component_group_dual_center", "reductive", {{"reductive_pair", K::Reductive}},
         [](const Declarations& d, const Json& t) { return group_op(component_group_dual_center(reductive(d, t))); }},
        {"tn_pairing", "reductive", {{"reductive_pair", K::Reductive}, {"class", K::Vector}, {"character", K::Character}},
         [](const Declarations& d, const Json& t) {
             return Json{{"value", encode(tn_pairing(reductive(d, t), vec(t, "class"), character(d, t)))}};
         }},
        {"pairing_perfectness", "reductive", {{"reductive_pair", K::Reductive}},
         [](const Declarations& d, const Json& t) {
             PerfectnessReport r = pairing_perfectness(reductive(d, t));
             Json m = Json::array(), chars = Json::array();
             for (const auto& row : r.matrix) {
                 Json jr = Json::array();
                 for (const auto& v : row) jr.push_back(encode(v));
                 m.push_back(std::move(jr));
             }
             for (const auto& c : r.characters) chars.push_back(encode(c));
             return Json{{"passed", r.perfect()},
                         {"checks", check_list({{"injective", r.injective}, {"orders_equal", r.orders_equal}})},
                         {"rigid", encode(r.rigid)},
                         {"component", encode(r.component)},
                         {"characters", std::move(chars)},
                         {"matrix", std::move(m)}};
         }},
        {"weyl_quotient_triviality", "reductive", {{"reductive_pair", K::Reductive}, {"simple_only", K::Flag, false}},
         [](const Declarations& d, const Json& t) {
             bool simple = t.contains("simple_only") && t.at("simple_only").get<bool>();
             WeylTrivialityReport r = weyl_quotient_triviality(reductive(d, t), simple);
             return Json{{"passed", r.passed()},
                         {"weyl_elements", r.weyl_elements},
                         {"checks", r.checks},
                         {"failures", r.failures}};
         }},
        // endoscopy
        {"endoscopic_subsystem", "endoscopy", {{"reductive_pair", K::Reductive}, {"character", K::Character}},
         [](const Declarations& d, const Json& t) { return encode(endoscopic_subsystem(reductive(d, t), character(d, t))); }},
        {"validate_refined", "endoscopy",
         {{"reductive_pair", K::Reductive}, {"character", K::Character}, {"subsystem", K::Datum}},
         [](const Declarations& d, const Json& t) {
             RefinedValidation r =
                 validate_refined(RefinedEndoscopicDatum(reductive(d, t), character(d, t), datum(d, t, "subsystem")));
             return Json{{"passed", r.valid()},
                         {"checks", check_list({{"coroots_match", r.coroots_match},
                                                {"galois_stable", r.galois_stable},
                                                {"plus_condition", r.plus_condition}})},
                         {"violations", r.violations}};
         }},
        {"lift_to_refined", "endoscopy", {{"reductive_pair", K::Reductive}, {"character", K::Character}},
         [](const Declarations& d, const Json& t) {
             return Json{{"character", encode(lift_to_refined(reductive(d, t), character(d, t)))}};
         }},
        {"transfer_pairing_term", "endoscopy", {{"pair", K::Pair}, {"class", K::Vector}, {"character", K::Character}},
         [](const Declarations& d, const Json& t) {
             InvariantClass inv(pair(d, t), vec(t, "class"));
             return Json{{"value", encode(transfer_pairing_term(inv, character(d, t)))}};
         }},
        {"enlarge_center_invariance", "endoscopy",
         {{"pair", K::Pair},
          {"large_pair", K::Pair},
          {"class", K::Vector},
          {"character", K::Character},
          {"large_character", K::Character, false}},
         [](const Declarations& d, const Json& t) {
             const IsogenyPair& small = pair(d, t);
             const IsogenyPair& large = pair(d, t, "large_pair");
             const TorsionCharacter& s_dot = character(d, t);
             TorsionCharacter s_ddot = t.contains("large_character") ? character(d, t, "large_character")
                                                                     : enlarge_character(small, large, s_dot);
             EnlargementReport r = enlarge_center_invariance(small, large, InvariantClass(small, vec(t, "class")), s_dot, s_ddot);
             return Json{{"passed", r.equal()},
                         {"checks", check_list({{"restriction_matches", r.restriction_matches},
                                                {"terms_equal", r.term_small == r.term_large}})},
                         {"large_character", encode(s_ddot)},
                         {"term_small", encode(r.term_small)},
                         {"term_large", encode(r.term_large)}};
         }},
        // local_field
        {"valuation", "local_field", {{"series", K::Series}},
         [](const Declarations& d, const Json& t) { return Json{{"valuation", valuation(d.series.at(t.at("series")))}}; }},
        {"abs_value", "local_field", {{"series", K::Series}},
         [](const Declarations& d, const Json& t) { return encode(abs_value(d.series.at(t.at("series")))); }},
        {"is_strongly_regular", "local_field", {{"datum", K::Datum}, {"gamma", K::SeriesList}, {"precision", K::Count, false}},
         [](const Declarations& d, const Json& t) {
             return Json{{"strongly_regular", is_strongly_regular(datum(d, t), gamma(d, t), precision(t))}};
         }},
        {"delta_IV", "local_field",
         {{"datum", K::Datum}, {"subsystem", K::Datum}, {"gamma", K::SeriesList}, {"precision", K::Count, false}},
         [](const Declarations& d, const Json& t) {
             return encode(delta_IV(datum(d, t), datum(d, t, "subsystem"), gamma(d, t), precision(t)));
         }},
    };
    return table;
}

inline const OpSpec* find_operation(const std::string& name) {
    for (const auto& op : operation_table())
        if (op.name == name) return &op;
    return nullptr;
}

} // namespace rigidcoh::cli
