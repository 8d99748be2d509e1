#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "rigidcoh/endoscopy.hpp"
#include "rigidcoh/local_field.hpp"
#include "rigidcoh/u_band.hpp"

namespace rigidcoh::cli {

using Json = nlohmann::json;

/// Integers that fit a machine word are JSON numbers, larger ones decimal strings.
inline Json encode(const Integer& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

inline Json encode(std::span<const Integer> v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(encode(x));
    return out;
}

inline Json encode(const IntMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(encode(m.row(i)));
    return out;
}

inline Json encode(const QModZ& q) { return Json(q.to_string()); }

inline Json encode(const Rational& q) { return Json(q.get_str()); }

inline Json encode(const SubLattice& s) { return Json{{"rank", s.rank()}, {"basis", encode(s.basis())}}; }

inline Json encode(const FinAbGroup& g) {
    Json lifts = Json::array();
    for (const auto& v : g.generator_lifts()) lifts.push_back(encode(v));
    return Json{{"invariant_factors", encode(g.invariant_factors())},
                {"generator_lifts", std::move(lifts)},
                {"order", encode(g.order())}};
}

inline Json encode(const GroupHom& h) {
    return Json{{"source", encode(h.source())}, {"target", encode(h.target())}, {"matrix", encode(h.matrix())}};
}

inline Json encode(const TorsionCharacter& chi) {
    Json out = Json::array();
    for (const auto& v : chi.values()) out.push_back(encode(v));
    return out;
}

inline Json encode(const ValuedNumber& v) { return Json{{"base", encode(v.base)}, {"exponent", encode(v.exponent)}}; }

inline Json encode(const RootDatum& rd) {
    Json roots = Json::array(), coroots = Json::array();
    for (const auto& r : rd.roots()) roots.push_back(encode(r));
    for (const auto& c : rd.coroots()) coroots.push_back(encode(c));
    return Json{{"rank", rd.rank()},
                {"semisimple_rank", rd.semisimple_rank()},
                {"roots", std::move(roots)},
                {"coroots", std::move(coroots)}};
}

/// ℤ/d₁ ⊕ … ⊕ ℤ/d_k, or 0 for the trivial group.
inline std::string render_group(const Json& g) {
    const Json& f = g.at("invariant_factors");
    if (f.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += " ⊕ ";
        s += "ℤ/" + (f[i].is_string() ? f[i].get<std::string>() : std::to_string(f[i].get<long>()));
    }
    return s;
}

inline bool looks_like_group(const Json& j) {
    return j.is_object() && j.contains("invariant_factors") && j.contains("generator_lifts");
}

namespace detail {

inline void render_into(std::string& out, const Json& j, const std::string& indent) {
    for (const auto& [key, value] : j.items()) {
        out += indent + key + ": ";
        if (looks_like_group(value)) out += render_group(value) + "\n";
        else if (value.is_object() && !value.empty()) {
            out += "\n";
            render_into(out, value, indent + "  ");
        } else if (value.is_string()) out += value.get<std::string>() + "\n";
        else out += value.dump() + "\n";
    }
}

} // namespace detail

/// Human-readable rendering of a result document.
inline std::string render_text(const Json& results) {
    std::string out;
    for (const auto& r : results.at("results")) {
        out += "[" + std::to_string(r.at("task").get<long>()) + "] " + r.at("op").get<std::string>();
        if (r.contains("label")) out += " (" + r.at("label").get<std::string>() + ")";
        if (r.at("status") == "ok") {
            out += ": ok\n";
            const Json& p = r.at("payload");
            if (looks_like_group(p)) out += "  group: " + render_group(p) + "\n";
            else detail::render_into(out, p, "  ");
        } else {
            out += ": " + r.at("error").at("code").get<std::string>() + "\n  " +
                   r.at("error").at("message").get<std::string>() + "\n";
        }
    }
    return out;
}

} // namespace rigidcoh::cli
