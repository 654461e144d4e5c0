#pragma once

// Problem-file format and result reports. The file format is line-based
// "key value" text with nested "name { ... }" blocks; rationals serialize
// as "p/q", +infinity as "inf", unknown sides as "unknown", so exactness
// survives serialization. parse(render(p)) == p.

#include "lagflux/bounds.hpp"
#include "lagflux/errors.hpp"
#include "lagflux/lattice.hpp"
#include "lagflux/rational.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace lagflux {

struct KvBlock {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
    std::vector<KvBlock> blocks;

    bool operator==(const KvBlock&) const = default;

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return &v;
        return nullptr;
    }
    std::string need(const std::string& key) const {
        const std::string* v = find(key);
        if (!v) throw ParseError("missing key '" + key + "' in block '" + name + "'");
        return *v;
    }
    const KvBlock* block(const std::string& bname) const {
        for (const auto& b : blocks)
            if (b.name == bname) return &b;
        return nullptr;
    }
    void set(const std::string& key, const std::string& value) {
        entries.emplace_back(key, value);
    }

    Rat rat(const std::string& key) const { return parse_rat(need(key)); }
    Rat rat_or(const std::string& key, const Rat& fallback) const {
        const std::string* v = find(key);
        return v ? parse_rat(*v) : fallback;
    }
    long integer(const std::string& key) const {
        Rat r = rat(key);
        if (den(r) != 1) throw ParseError("key '" + key + "' must be an integer");
        return (long)num(r);
    }
    long integer_or(const std::string& key, long fallback) const {
        return find(key) ? integer(key) : fallback;
    }
    bool flag(const std::string& key) const {
        const std::string* v = find(key);
        if (!v) return false;
        return *v == "true" || *v == "1" || *v == "yes" || v->empty();
    }
};

inline RatVec parse_rat_list(const std::string& text) {
    RatVec out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        size_t b = cur.find_first_not_of(" \t");
        size_t e = cur.find_last_not_of(" \t");
        if (b == std::string::npos) throw ParseError("empty entry in list '" + text + "'");
        out.push_back(parse_rat(cur.substr(b, e - b + 1)));
    }
    if (out.empty()) throw ParseError("empty list");
    return out;
}

inline IntVec parse_int_list(const std::string& text) {
    IntVec out;
    for (const Rat& r : parse_rat_list(text)) {
        if (den(r) != 1) throw ParseError("list '" + text + "' must be integral");
        out.push_back(num(r));
    }
    return out;
}

inline std::string to_string(const IntVec& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s;
}

namespace detail_io {

inline std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline void render_block(const KvBlock& b, std::ostream& os, int depth) {
    std::string pad(2 * depth, ' ');
    for (const auto& [k, v] : b.entries) os << pad << k << " " << v << "\n";
    for (const auto& sub : b.blocks) {
        os << pad << sub.name << " {\n";
        render_block(sub, os, depth + 1);
        os << pad << "}\n";
    }
}

}  // namespace detail_io

inline std::string render_problem(const KvBlock& root) {
    std::ostringstream os;
    detail_io::render_block(root, os, 0);
    return os.str();
}

inline KvBlock parse_problem(const std::string& text) {
    KvBlock root;
    std::vector<KvBlock*> stack{&root};
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail_io::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto err = [&](const std::string& what) {
            throw ParseError("line " + std::to_string(lineno) + ", column 1: " + what);
        };
        if (line == "}") {
            if (stack.size() == 1) err("unmatched '}'");
            stack.pop_back();
            continue;
        }
        if (line.size() >= 2 && line.back() == '{') {
            std::string name = detail_io::trim(line.substr(0, line.size() - 1));
            if (name.empty()) err("block needs a name");
            stack.back()->blocks.push_back(KvBlock{name, {}, {}});
            stack.push_back(&stack.back()->blocks.back());
            continue;
        }
        size_t sp = line.find_first_of(" \t");
        if (sp == std::string::npos) {
            stack.back()->entries.emplace_back(line, "");
        } else {
            stack.back()->entries.emplace_back(line.substr(0, sp),
                                               detail_io::trim(line.substr(sp + 1)));
        }
    }
    if (stack.size() != 1) throw ParseError("unterminated block at end of file");
    return root;
}

// ---------------------------------------------------------------------------
// Serializers for quadruples and Hamiltonian profiles into the same format,
// so built models round-trip through problem files.

template <typename LabeledIntervals>
inline KvBlock intervals_block(const std::string& name, const LabeledIntervals& arcs,
                               const char* (*label_name)(decltype(arcs[0].label))) {
    KvBlock b;
    b.name = name;
    for (const auto& iv : arcs)
        b.set(label_name(iv.label), to_string(iv.lo) + "," + to_string(iv.hi));
    return b;
}

inline KvBlock profile_block(const std::string& name, const std::vector<double>& xs,
                             const std::vector<double>& ys, double delta) {
    KvBlock b;
    b.name = name;
    std::ostringstream bx, by;
    bx.precision(17);
    by.precision(17);
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) {
            bx << ",";
            by << ",";
        }
        bx << xs[i];
        by << ys[i];
    }
    b.set("breakpoints", bx.str());
    b.set("values", by.str());
    std::ostringstream d;
    d.precision(17);
    d << delta;
    b.set("delta", d.str());
    return b;
}

// ---------------------------------------------------------------------------
// Result reports: theorem-side values are exact and tagged "theorem";
// simulation-side numbers live in a separate certificate tagged
// "simulation". The renderings never mix the two.

struct SimCertificate {
    std::string model;
    double delta_h = 0;
    double declared_delta = 0;
    double declared_error = 0;
    uint64_t samples = 0;
    double t_max = 0;
    double dt = 0;
    uint64_t chords_found = 0;
    double min_chord_time = std::numeric_limits<double>::infinity();
    double margin = 0;
    std::optional<double> claimed_lower;  // finite theorem claim under test
    bool claimed_lower_infinite = false;
    bool consistent = true;
    std::optional<double> confinement_max, confinement_bound;
    std::optional<bool> square_displaced;
    std::optional<double> pb_max;
    std::optional<double> pb_certificate;  // +inf encoded as infinity()
    uint64_t escapes = 0;
    uint64_t flagged = 0;
    std::string note =
        "one-sided: the simulation certifies this witness Hamiltonian up to the horizon; "
        "it does not bound the invariant from above";
};

struct ResultReport {
    std::string command;
    std::string family;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::optional<InvariantBound> bound;
    std::optional<SimCertificate> cert;

    std::string text() const {
        std::ostringstream os;
        os << command << ":";
        for (const auto& [k, v] : inputs) os << " " << k << "=" << v;
        os << "\n";
        if (bound) {
            os << "  bound [theorem]: " << bound->str() << "\n";
        }
        if (cert) {
            const auto& c = *cert;
            os << "  certificate [simulation] (" << c.model << "):\n";
            os << "    delta_H = " << c.delta_h << " (declared " << c.declared_delta
               << ", max deviation " << c.declared_error << ")\n";
            os << "    samples = " << c.samples << ", horizon = " << c.t_max
               << ", dt = " << c.dt << "\n";
            if (c.chords_found > 0)
                os << "    chords found = " << c.chords_found
                   << ", min chord time = " << c.min_chord_time << "\n";
            else
                os << "    no chords up to the horizon\n";
            if (c.confinement_max)
                os << "    max |p| on [0,T] = " << *c.confinement_max << " (bound "
                   << *c.confinement_bound << ")\n";
            if (c.square_displaced)
                os << "    square factor displaced after T: "
                   << (*c.square_displaced ? "yes" : "no") << "\n";
            if (c.pb_max) {
                os << "    max {F,G} on grid = " << *c.pb_max << ", certificate = ";
                if (std::isinf(*c.pb_certificate)) os << "inf";
                else os << *c.pb_certificate;
                os << "\n";
            }
            os << "    margin(eps,delta,dt) = " << c.margin << ", consistency "
               << (c.consistent ? "ok" : "VIOLATED");
            if (c.claimed_lower) os << " against claimed lower " << *c.claimed_lower;
            if (c.claimed_lower_infinite) os << " against claimed lower inf (horizon-limited)";
            os << "\n    " << c.note << "\n";
            if (c.escapes || c.flagged)
                os << "    diagnostics: " << c.escapes << " escaped, " << c.flagged
                   << " energy-flagged\n";
        }
        return os.str();
    }

    nlohmann::json json() const {
        nlohmann::json j;
        j["command"] = command;
        j["family"] = family;
        for (const auto& [k, v] : inputs) j["inputs"][k] = v;
        if (bound) {
            auto side = [](bool has, const ExtRat* v, const std::string& src) {
                nlohmann::json s;
                if (!has) {
                    s["value"] = "unknown";
                } else {
                    s["value"] = v->str();
                    s["source"] = src;
                    s["kind"] = "theorem";
                }
                return s;
            };
            ExtRat lo = bound->has_lower() ? bound->lower() : ExtRat(0);
            ExtRat up = bound->has_upper() ? bound->upper() : ExtRat(0);
            j["bound"]["lower"] = side(bound->has_lower(), &lo, bound->lower_source());
            j["bound"]["upper"] = side(bound->has_upper(), &up, bound->upper_source());
            j["bound"]["exact"] = bound->is_exact();
        }
        if (cert) {
            const auto& c = *cert;
            nlohmann::json s;
            s["kind"] = "simulation";
            s["model"] = c.model;
            s["delta_H"] = c.delta_h;
            s["declared_delta"] = c.declared_delta;
            s["declared_error"] = c.declared_error;
            s["samples"] = c.samples;
            s["t_max"] = c.t_max;
            s["dt"] = c.dt;
            s["chords_found"] = c.chords_found;
            if (std::isfinite(c.min_chord_time)) s["min_chord_time"] = c.min_chord_time;
            else s["min_chord_time"] = "inf";
            s["margin"] = c.margin;
            s["consistent"] = c.consistent;
            if (c.claimed_lower) s["claimed_lower"] = *c.claimed_lower;
            if (c.claimed_lower_infinite) s["claimed_lower"] = "inf";
            if (c.confinement_max) {
                s["confinement_max"] = *c.confinement_max;
                s["confinement_bound"] = *c.confinement_bound;
            }
            if (c.square_displaced) s["square_displaced"] = *c.square_displaced;
            if (c.pb_max) {
                s["pb_max"] = *c.pb_max;
                s["pb_certificate"] =
                    std::isinf(*c.pb_certificate) ? nlohmann::json("inf")
                                                  : nlohmann::json(*c.pb_certificate);
            }
            s["escapes"] = c.escapes;
            s["energy_flagged"] = c.flagged;
            s["note"] = c.note;
            j["certificate"] = s;
        }
        return j;
    }
};

}  // namespace lagflux
