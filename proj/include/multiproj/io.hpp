#pragma once

// JSON problem specifications and reports (schema "multiproj/1"), Graphviz
// export of the chamber adjacency graph and a plain text fan listing.
//
// Integers are written as decimal strings and rationals as "p/q" strings, so
// no report contains a floating point number.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "multiproj/chambers.hpp"
#include "multiproj/grading.hpp"
#include "multiproj/lattice.hpp"
#include "multiproj/proj.hpp"

namespace multiproj::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "multiproj/1";

// ---------------------------------------------------------------------------
// Scalars

inline std::string to_string(const Integer& x) { return x.str(); }

inline std::string to_string(const Rational& x) {
    return Integer(numerator(x)).str() + "/" + Integer(denominator(x)).str();
}

inline Json to_json(const Integer& x) { return to_string(x); }
inline Json to_json(const Rational& x) { return to_string(x); }

inline Json to_json(const IntVector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline Json to_json(const std::vector<IntVector>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(to_json(v));
    return out;
}

inline bool is_integer_text(const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

/// Accepts a JSON integer or a decimal string.
inline Integer parse_integer(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (is_integer_text(s)) return Integer(s);
    }
    throw InputError(where + ": expected an integer, got " + j.dump());
}

/// Accepts an integer or a "p/q" string.
inline Rational parse_rational(const Json& j, const std::string& where) {
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            std::string p = s.substr(0, slash), q = s.substr(slash + 1);
            if (!is_integer_text(p) || !is_integer_text(q) || q[0] == '-' || Integer(q) == 0)
                throw InputError(where + ": malformed rational " + s);
            return Rational(Integer(p), Integer(q));
        }
    }
    return Rational(parse_integer(j, where));
}

inline IntVector parse_vector(const Json& j, std::size_t expected, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array");
    if (j.size() != expected)
        throw InputError(where + ": expected " + std::to_string(expected) + " entries, got " + std::to_string(j.size()));
    IntVector out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_integer(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::size_t parse_count(const Json& j, const std::string& where) {
    Integer x = parse_integer(j, where);
    if (x < 0 || x > 64) throw InputError(where + ": out of range");
    return static_cast<std::size_t>(x);
}

// ---------------------------------------------------------------------------
// Problem specifications

struct Regrading {
    FgAbelianGroup target;
    IntegerMatrix matrix;  // target generators x source generators
};

struct ProblemSpec {
    std::vector<std::string> variables;
    FgAbelianGroup group;
    std::vector<DegreeVector> degrees;
    std::optional<Regrading> regrading;
    std::optional<IntVector> ample_class;
    bool all_gen = false;

    GradedPolyRing ring() const { return GradedPolyRing(DegreeMap::from_degrees(group, degrees), variables); }

    GroupHom delta() const {
        if (!regrading) throw InputError("the specification has no regrading");
        const Regrading& g = *regrading;
        const std::size_t n = group.num_generators(), s = g.target.free_rank();
        IntegerMatrix f(s, n), t(g.target.torsion().size(), n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < s; ++i) f(i, j) = g.matrix(i, j);
            for (std::size_t i = 0; i < t.rows(); ++i) t(i, j) = g.matrix(s + i, j);
        }
        return GroupHom(group, g.target, std::move(f), std::move(t));
    }
};

inline FgAbelianGroup parse_group(const Json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("free_rank")) throw InputError(where + ": expected {free_rank, torsion}");
    std::size_t r = parse_count(j["free_rank"], where + ".free_rank");
    IntVector torsion;
    if (j.contains("torsion")) {
        if (!j["torsion"].is_array()) throw InputError(where + ".torsion: expected an array");
        torsion = parse_vector(j["torsion"], j["torsion"].size(), where + ".torsion");
    }
    return FgAbelianGroup(r, torsion);
}

inline Json group_to_json(const FgAbelianGroup& g) {
    return Json{{"free_rank", g.free_rank()}, {"torsion", to_json(g.torsion())}};
}

inline ProblemSpec parse_spec(const Json& j) {
    if (!j.is_object()) throw InputError("specification: expected a JSON object");
    if (!j.contains("schema") || j["schema"] != schema_version)
        throw InputError(std::string("specification: \"schema\" must be \"") + schema_version + "\"");
    static const std::vector<std::string> known = {"schema", "variables", "grading_group", "degrees",
                                                   "regrading", "ample_class", "all_gen"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InputError("specification: unknown field \"" + key + "\"");
    for (const char* key : {"grading_group", "degrees"})
        if (!j.contains(key)) throw InputError(std::string("specification: missing field \"") + key + "\"");

    ProblemSpec spec;
    spec.group = parse_group(j["grading_group"], "grading_group");
    const Json& degs = j["degrees"];
    if (!degs.is_array()) throw InputError("degrees: expected an array");
    const std::size_t r = spec.group.free_rank(), t = spec.group.torsion().size();
    for (std::size_t i = 0; i < degs.size(); ++i) {
        IntVector c = parse_vector(degs[i], r + t, "degrees[" + std::to_string(i) + "]");
        spec.degrees.push_back({IntVector(c.begin(), c.begin() + r), IntVector(c.begin() + r, c.end())});
    }
    if (j.contains("variables")) {
        const Json& names = j["variables"];
        if (!names.is_array()) throw InputError("variables: expected an array of names");
        for (const auto& n : names) {
            if (!n.is_string()) throw InputError("variables: expected an array of names");
            spec.variables.push_back(n.get<std::string>());
        }
        if (spec.variables.size() != spec.degrees.size())
            throw InputError("variables: " + std::to_string(spec.variables.size()) + " names for " +
                             std::to_string(spec.degrees.size()) + " degree vectors");
    }
    if (j.contains("regrading")) {
        const Json& g = j["regrading"];
        if (!g.is_object() || !g.contains("grading_group") || !g.contains("matrix"))
            throw InputError("regrading: expected {grading_group, matrix}");
        FgAbelianGroup target = parse_group(g["grading_group"], "regrading.grading_group");
        const Json& rows = g["matrix"];
        if (!rows.is_array() || rows.size() != target.num_generators())
            throw InputError("regrading.matrix: expected one row per target generator");
        std::vector<IntVector> parsed;
        for (std::size_t i = 0; i < rows.size(); ++i)
            parsed.push_back(
                parse_vector(rows[i], spec.group.num_generators(), "regrading.matrix[" + std::to_string(i) + "]"));
        spec.regrading = Regrading{target, IntegerMatrix::from_rows(parsed, spec.group.num_generators())};
    }
    if (j.contains("ample_class")) spec.ample_class = parse_vector(j["ample_class"], r, "ample_class");
    if (j.contains("all_gen")) {
        if (!j["all_gen"].is_boolean()) throw InputError("all_gen: expected a boolean");
        spec.all_gen = j["all_gen"].get<bool>();
    }
    spec.ring();  // validates names and degrees
    if (spec.regrading) spec.delta();
    return spec;
}

inline ProblemSpec parse_spec_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("specification is not valid JSON: ") + e.what());
    }
    return parse_spec(j);
}

inline ProblemSpec read_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

inline Json spec_to_json(const ProblemSpec& spec) {
    Json j;
    j["schema"] = schema_version;
    j["variables"] = spec.ring().var_names();
    j["grading_group"] = group_to_json(spec.group);
    Json degs = Json::array();
    for (const auto& d : spec.degrees) degs.push_back(to_json(d.coordinates()));
    j["degrees"] = degs;
    if (spec.regrading)
        j["regrading"] = Json{{"grading_group", group_to_json(spec.regrading->target)},
                              {"matrix", to_json(spec.regrading->matrix.row_vectors())}};
    if (spec.ample_class) j["ample_class"] = to_json(*spec.ample_class);
    j["all_gen"] = spec.all_gen;
    return j;
}

/// The specification of the regraded ring; the regrading itself is consumed.
inline ProblemSpec regraded_spec(const ProblemSpec& spec) {
    GroupHom delta = spec.delta();
    ProblemSpec out;
    out.variables = spec.ring().var_names();
    out.group = delta.target();
    for (const auto& d : spec.degrees) out.degrees.push_back(delta.apply(d));
    out.all_gen = spec.all_gen;
    return out;
}

// ---------------------------------------------------------------------------
// Reports

inline Json header(const std::string& command) { return Json{{"schema", schema_version}, {"command", command}}; }

inline Json support_to_json(Support s) {
    Json out = Json::array();
    for (auto i : s.indices()) out.push_back(i);
    return out;
}

inline Json cone_to_json(const RationalCone& c) {
    return Json{{"dimension", c.dimension()}, {"rays", to_json(c.rays())}, {"lineality", to_json(c.lineality())}};
}

inline Json monomial_entry(const GradedPolyRing& ring, Support s) {
    return Json{{"support", support_to_json(s)}, {"monomial", ring.monomial_name(s)}};
}

inline Json degree_to_json(const DegreeVector& d) { return Json{{"free", to_json(d.free)}, {"torsion", to_json(d.torsion)}}; }

inline std::string monomial_name(const GradedPolyRing& ring, const Monomial& m) {
    std::string out;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        if (m.exponents[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += ring.var_names()[i];
        if (m.exponents[i] != 1) out += "^" + to_string(m.exponents[i]);
    }
    return out.empty() ? "1" : out;
}

inline Json relevance_report(const GradedPolyRing& ring, const std::optional<Monomial>& monomial,
                             const Limits& limits) {
    Json j = header("relevance");
    if (monomial) {
        j["monomial"] = Json{{"exponents", to_json(monomial->exponents)}, {"name", monomial_name(ring, *monomial)}};
        j["degree"] = degree_to_json(degree_of(ring, *monomial));
        j["cone"] = cone_to_json(cone_of_monomial(ring, *monomial));
        j["relevant"] = is_relevant(ring, *monomial);
    } else {
        Json list = Json::array();
        for (Support s : relevant_squarefree_monomials(ring, limits)) list.push_back(monomial_entry(ring, s));
        j["relevant_squarefree"] = list;
    }
    return j;
}

/// Completeness of the fan of a separated spectrum; empty when it is not a fan.
inline std::optional<bool> fan_complete(const ProjData& p) {
    if (!p.separated || !p.dimension) return std::nullopt;
    std::vector<RationalCone> fan;
    for (auto i : p.minimal_charts()) fan.push_back(p.charts[i].sigma);
    return is_complete_fan(fan, *p.dimension);
}

inline Json optional_json(const std::optional<bool>& x) { return x ? Json(*x) : Json(nullptr); }

inline Json proj_report(const ProjData& p, bool cliques, const Limits& limits) {
    const GradedPolyRing& ring = p.ring;
    Json j = header("proj");
    j["status"] = p.empty() ? "empty" : "ok";
    j["dimension"] = p.dimension ? Json(*p.dimension) : Json(nullptr);
    j["m_basis"] = to_json(p.torus.m_basis);
    j["variable_rays"] = to_json(p.torus.ray_images);
    Json charts = Json::array();
    for (const auto& c : p.charts) {
        Json e = monomial_entry(ring, c.support);
        e["degree_cone"] = cone_to_json(c.degree_cone);
        e["sigma"] = cone_to_json(c.sigma);
        Json semigroup = Json::array();
        for (const auto& u : c.semigroup) semigroup.push_back(to_json(p.torus.to_exponents(u)));
        e["semigroup_exponents"] = semigroup;
        charts.push_back(e);
    }
    j["charts"] = charts;
    j["separated"] = p.separated;
    j["witness"] = p.separation_witness ? Json::array({monomial_entry(ring, p.charts[p.separation_witness->first].support),
                                                       monomial_entry(ring, p.charts[p.separation_witness->second].support)})
                                        : Json(nullptr);
    Json maximal = Json::array();
    for (auto i : p.minimal_charts()) maximal.push_back(monomial_entry(ring, p.charts[i].support));
    j["maximal_charts"] = maximal;
    j["complete"] = optional_json(fan_complete(p));
    if (cliques) {
        Json list = Json::array();
        for (const auto& c : maximal_separated_subcollections(p, limits)) {
            Json members = Json::array();
            for (auto i : c) members.push_back(monomial_entry(ring, p.charts[i].support));
            list.push_back(members);
        }
        j["maximal_separated"] = list;
    }
    return j;
}

inline Json chamber_to_json(const GradedPolyRing& ring, const Chamber& c, const ChamberModelSummary& s) {
    Json relevant = Json::array();
    for (Support x : c.relevant_supports) relevant.push_back(monomial_entry(ring, x));
    Json maximal = Json::array();
    for (std::size_t i = 0; i < c.maximal_supports.size(); ++i) {
        Json e = monomial_entry(ring, c.maximal_supports[i]);
        e["sigma"] = to_json(c.fan[i].rays());
        maximal.push_back(e);
    }
    return Json{{"cone", cone_to_json(c.cone)},
                {"sample_point", to_json(c.sample_point)},
                {"relevant_supports", relevant},
                {"fan", maximal},
                {"model",
                 {{"dimension", s.dimension},
                  {"complete", s.complete},
                  {"simplicial", s.simplicial},
                  {"maximal_cones", s.maximal_cones},
                  {"ray_variables", s.ray_variables},
                  {"contracted_variables", s.contracted_variables}}}};
}

inline Json chambers_report(const GradedPolyRing& ring, const EmbeddingReport& rep) {
    Json j = header("chambers");
    j["degree_cone"] = cone_to_json(rep.fan.degree_cone);
    Json chambers = Json::array();
    for (std::size_t i = 0; i < rep.fan.chambers.size(); ++i) {
        Json c = Json{{"index", i}};
        c.update(chamber_to_json(ring, rep.fan.chambers[i], rep.models[i]));
        chambers.push_back(c);
    }
    j["chambers"] = chambers;
    Json walls = Json::array();
    for (const auto& w : rep.fan.walls) walls.push_back(Json{{"chambers", {w.a, w.b}}, {"cone", cone_to_json(w.cone)}});
    j["walls"] = walls;
    j["embedding"] = Json{{"picard_group", group_to_json(rep.picard_group)},
                          {"picard_matches_grading", rep.picard_matches_grading},
                          {"effective_cone", cone_to_json(rep.effective_cone)},
                          {"ample_chamber", rep.ample_chamber ? Json(*rep.ample_chamber) : Json(nullptr)},
                          {"all_gen", rep.all_gen},
                          {"models_conditional", !rep.all_gen}};
    return j;
}

inline Json wall_point_to_json(const WallPoint& w) {
    return Json{{"point", to_json(w.point)}, {"face", cone_to_json(w.face)}, {"incident_chambers", w.incident}};
}

struct RegradeDiff {
    std::vector<Support> gained;
    std::vector<Support> lost;
    std::optional<std::size_t> dimension_before, dimension_after;
    bool separated_before = true, separated_after = true;
    std::optional<bool> complete_before, complete_after;
    std::optional<std::vector<RefinementEntry>> refinement;
    std::string refinement_note;
};

inline RegradeDiff regrade_diff(const ProblemSpec& spec, const Limits& limits) {
    GroupHom delta = spec.delta();
    if (!delta.is_surjective())
        throw InputError("regrading: the homomorphism is not surjective (its Smith normal form has a non-unit "
                         "invariant factor or a rank deficit)");
    GradedPolyRing before = spec.ring();
    GradedPolyRing after = regraded_spec(spec).ring();
    ProjData a = build_proj(before, limits, {.semigroups = false});
    ProjData b = build_proj(after, limits, {.semigroups = false});
    RegradeDiff d;
    for (const auto& c : b.charts)
        if (!a.chart_index(c.support)) d.gained.push_back(c.support);
    for (const auto& c : a.charts)
        if (!b.chart_index(c.support)) d.lost.push_back(c.support);
    d.dimension_before = a.dimension;
    d.dimension_after = b.dimension;
    d.separated_before = a.separated;
    d.separated_after = b.separated;
    d.complete_before = fan_complete(a);
    d.complete_after = fan_complete(b);
    RationalCone cone_a = RationalCone::from_generators(before.rank(), before.free_degrees());
    RationalCone cone_b = RationalCone::from_generators(after.rank(), after.free_degrees());
    if (!cone_a.is_full_dimensional() || !cone_b.is_full_dimensional()) {
        d.refinement_note = "degree cone not full dimensional";
    } else {
        try {
            d.refinement = refinement_relation(enumerate_chambers(before, limits), enumerate_chambers(after, limits), delta);
        } catch (const LimitExceeded& e) {
            d.refinement_note = e.what();
        }
    }
    return d;
}

inline Json regrade_report(const ProblemSpec& spec, const RegradeDiff& d) {
    GradedPolyRing ring = spec.ring();
    Json j = header("regrade");
    j["regraded_spec"] = spec_to_json(regraded_spec(spec));
    Json gained = Json::array(), lost = Json::array();
    for (Support s : d.gained) gained.push_back(monomial_entry(ring, s));
    for (Support s : d.lost) lost.push_back(monomial_entry(ring, s));
    auto opt = [](const std::optional<std::size_t>& x) { return x ? Json(*x) : Json(nullptr); };
    Json diff{{"charts_gained", gained},
              {"charts_lost", lost},
              {"dimension", {{"before", opt(d.dimension_before)}, {"after", opt(d.dimension_after)}}},
              {"separated", {{"before", d.separated_before}, {"after", d.separated_after}}},
              {"complete", {{"before", optional_json(d.complete_before)}, {"after", optional_json(d.complete_after)}}}};
    if (d.refinement) {
        Json rel = Json::array();
        for (const auto& e : *d.refinement)
            rel.push_back(Json{{"chamber", e.chamber}, {"sources", e.sources}, {"images_inside", e.images_inside}});
        diff["chamber_refinement"] = rel;
    } else {
        diff["chamber_refinement"] = nullptr;
        diff["chamber_refinement_note"] = d.refinement_note;
    }
    j["diff"] = diff;
    return j;
}

/// Two-space indented JSON with a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Text formats

inline std::string vector_text(const IntVector& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + to_string(v[i]);
    return out;
}

/// Undirected Graphviz graph: one node per chamber, one edge per wall.
inline std::string chamber_dot(const ChamberFan& fan) {
    std::ostringstream out;
    out << "graph chambers {\n";
    out << "  node [shape=box];\n";
    for (std::size_t i = 0; i < fan.chambers.size(); ++i) {
        out << "  c" << i << " [label=\"chamber " << i;
        for (const auto& r : fan.chambers[i].cone.rays()) out << "\\n(" << vector_text(r) << ")";
        out << "\"];\n";
    }
    for (const auto& w : fan.walls) {
        out << "  c" << w.a << " -- c" << w.b << " [label=\"";
        for (std::size_t i = 0; i < w.cone.rays().size(); ++i) out << (i ? " " : "") << "(" << vector_text(w.cone.rays()[i]) << ")";
        out << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

/// Per-chamber model fans as RAYS / MAXIMAL_CONES sections.
inline std::string fan_text(const ChamberFan& fan) {
    std::ostringstream out;
    for (std::size_t i = 0; i < fan.chambers.size(); ++i) {
        const Chamber& c = fan.chambers[i];
        std::vector<IntVector> rays;
        for (const auto& cone : c.fan)
            for (const auto& r : cone.rays())
                if (std::find(rays.begin(), rays.end(), r) == rays.end()) rays.push_back(r);
        std::sort(rays.begin(), rays.end());
        out << "# chamber " << i << "\n";
        out << "AMBIENT_DIM\n" << c.lattice_dim << "\n\n";
        out << "RAYS\n";
        for (const auto& r : rays) out << vector_text(r, " ") << "\n";
        out << "\nMAXIMAL_CONES\n";
        for (const auto& cone : c.fan) {
            out << "{";
            for (std::size_t k = 0; k < cone.rays().size(); ++k) {
                auto pos = std::find(rays.begin(), rays.end(), cone.rays()[k]) - rays.begin();
                out << (k ? " " : "") << pos;
            }
            out << "}\n";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace multiproj::io
