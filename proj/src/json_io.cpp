#include "conelab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace conelab {

namespace {

[[noreturn]] void bad_input(const std::string& what) { fail("BAD_INPUT", what); }

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        bad_input(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

double number_of(const Json& j) {
    if (!j.is_number()) bad_input("expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) bad_input("numbers must be finite");
    return v;
}

std::vector<Vector> parse_vector_list(const Json& j) {
    if (!j.is_array()) bad_input("expected an array of vectors");
    std::vector<Vector> out;
    out.reserve(j.size());
    for (const auto& row : j) out.push_back(parse_vector(row));
    return out;
}

Json vectors_to_json(const std::vector<Vector>& vs) {
    Json arr = Json::array();
    for (const auto& v : vs) arr.push_back(vector_to_json(v));
    return arr;
}

} // namespace

Vector parse_vector(const Json& j) {
    if (!j.is_array() || j.empty()) bad_input("expected a non-empty numeric array");
    Vector v(static_cast<int>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = number_of(j[i]);
    return v;
}

LinearMap parse_map(const Json& j) {
    const int rows = static_cast<int>(number_of(field(j, "rows")));
    const int cols = static_cast<int>(number_of(field(j, "cols")));
    if (rows < 1 || cols < 1) bad_input("map shape must be positive");
    const Json& entries = field(j, "entries");
    if (!entries.is_array() || static_cast<int>(entries.size()) != rows)
        bad_input("entries must have \"rows\" rows");
    Matrix a(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = entries[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            bad_input("entries rows must have \"cols\" columns");
        for (int k = 0; k < cols; ++k) a(i, k) = number_of(row[k]);
    }
    return make_map(std::move(a));
}

ConvexSet parse_set(const Json& j) {
    const Json& type = field(j, "type");
    if (!type.is_string()) bad_input("set \"type\" must be a string");
    const std::string t = type.get<std::string>();
    if (t == "polyhedron") {
        std::vector<Vector> points, rays;
        if (j.contains("points")) points = parse_vector_list(j.at("points"));
        if (j.contains("rays")) rays = parse_vector_list(j.at("rays"));
        return make_polyhedron(std::move(points), std::move(rays));
    }
    if (t == "polyhedral_cone") {
        const int dim = static_cast<int>(number_of(field(j, "dim")));
        std::vector<Vector> gens;
        if (j.contains("generators")) gens = parse_vector_list(j.at("generators"));
        return make_cone_set(make_polyhedral_cone(dim, gens));
    }
    if (t == "soc") return make_soc_set(static_cast<int>(number_of(field(j, "dim"))));
    if (t == "rsoc") return make_rsoc_set(static_cast<int>(number_of(field(j, "dim"))));
    if (t == "translate")
        return make_translate(parse_set(field(j, "base")), parse_vector(field(j, "offset")));
    bad_input("unknown set type \"" + t + "\"");
}

SetOracle parse_oracle(const Json& j) {
    const Json& type = field(j, "type");
    if (!type.is_string()) bad_input("oracle \"type\" must be a string");
    const std::string t = type.get<std::string>();
    if (t == "affine_subspace") {
        const Vector point = parse_vector(field(j, "point"));
        std::vector<Vector> dirs;
        if (j.contains("directions")) dirs = parse_vector_list(j.at("directions"));
        return affine_subspace_oracle(point, dirs);
    }
    if (t == "point") return singleton_oracle(parse_vector(field(j, "point")));
    if (t == "whole_space")
        return whole_space_oracle(static_cast<int>(number_of(field(j, "dim"))));
    if (t == "rank_deficient")
        return rank_deficient_oracle(static_cast<int>(number_of(field(j, "rows"))),
                                     static_cast<int>(number_of(field(j, "cols"))));
    if (t == "unit_circle") {
        double tol = 1e-4;
        if (j.contains("tol")) tol = number_of(j.at("tol"));
        return unit_circle_oracle(tol);
    }
    bad_input("unknown oracle type \"" + t + "\"");
}

Json vector_to_json(const Vector& v) {
    Json arr = Json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Json map_to_json(const LinearMap& t) {
    Json entries = Json::array();
    for (int i = 0; i < t.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < t.cols(); ++k) row.push_back(t.entries(i, k));
        entries.push_back(std::move(row));
    }
    return Json{{"rows", t.rows()}, {"cols", t.cols()}, {"entries", std::move(entries)}};
}

Json set_to_json(const ConvexSet& x) {
    return std::visit(
        [](const auto& s) -> Json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polyhedron>) {
                return Json{{"type", "polyhedron"},
                            {"points", vectors_to_json(s.points)},
                            {"rays", vectors_to_json(s.rays)}};
            } else if constexpr (std::is_same_v<T, PolyhedralConeSet>) {
                return Json{{"type", "polyhedral_cone"},
                            {"dim", s.rep.ambient_dim},
                            {"generators", vectors_to_json(s.rep.generators)}};
            } else if constexpr (std::is_same_v<T, SecondOrderConeSet>) {
                return Json{{"type", "soc"}, {"dim", s.dim}};
            } else if constexpr (std::is_same_v<T, RotatedSecondOrderConeSet>) {
                return Json{{"type", "rsoc"}, {"dim", s.dim}};
            } else {
                return Json{{"type", "translate"},
                            {"base", set_to_json(*s.base)},
                            {"offset", vector_to_json(s.offset)}};
            }
        },
        x);
}

Json certificate_to_json(const Certificate& c) {
    if (const auto* a = std::get_if<KernelTrivial>(&c)) {
        Json j{{"class", "kernel_trivial"}};
        if (std::isinf(a->radius))
            j["radius"] = "inf";
        else
            j["radius"] = a->radius;
        return j;
    }
    if (const auto* b = std::get_if<RelIntKernel>(&c)) {
        return Json{{"class", "rel_int_kernel"},
                    {"ray", vector_to_json(b->ray.u)},
                    {"delta", b->delta},
                    {"rank_restriction", b->rank_restriction}};
    }
    const auto& u = std::get<Uncertified>(c);
    Json j{{"class", "uncertified"},
           {"reason", u.reason == Uncertified::Reason::RankDeficientOnY
                          ? "rank_deficient_on_y"
                          : "kernel_touches_boundary"}};
    if (u.witness) j["witness"] = vector_to_json(*u.witness);
    return j;
}

Json preimage_to_json(const PreimageWitness& w) {
    return Json{{"x_min", vector_to_json(w.x_min)},
                {"t", w.t},
                {"w", vector_to_json(w.w)},
                {"delta", w.delta},
                {"margin", w.margin}};
}

Json porosity_to_json(const PorosityEstimate& e) {
    return Json{{"center", vector_to_json(e.center)},
                {"radii", e.radii},
                {"gamma_hat", e.gamma_hat},
                {"p_hat", e.p_hat},
                {"budget", e.budget}};
}

Json preimage_report_to_json(const PreimagePorosityReport& r) {
    return Json{{"measured", r.measured},
                {"bound", r.bound},
                {"target_porosity", r.target_porosity},
                {"pass", r.pass}};
}

Json survey_summary_to_json(const SurveyReport& r) {
    Json radius = Json::object();
    radius["count"] = r.radius_count;
    if (r.radius_count > 0) {
        radius["min"] = r.radius_min;
        radius["median"] = r.radius_median;
        radius["max"] = r.radius_max;
    }
    return Json{{"set", r.set_descriptor},
                {"m", r.m},
                {"n", r.n},
                {"samples", r.samples},
                {"seed", r.seed},
                {"fractions",
                 Json{{"kernel_trivial", r.fractions[0]},
                      {"rel_int_kernel", r.fractions[1]},
                      {"uncertified_rank", r.fractions[2]},
                      {"uncertified_boundary", r.fractions[3]}}},
                {"radius_stats", std::move(radius)},
                {"recheck_count", r.recheck_count},
                {"persistence_rate", r.persistence_rate},
                {"wall_seconds", r.wall_seconds}};
}

Json witness_sequence_to_json(const WitnessSequence& w) {
    return Json{{"k", w.ks},
                {"points", vectors_to_json(w.points)},
                {"images", vectors_to_json(w.images)},
                {"limit", vector_to_json(w.limit)},
                {"not_in_image", w.not_in_image}};
}

std::string survey_csv(const SurveyReport& r) {
    std::ostringstream out;
    out.precision(17);
    out << "sample_index,certificate_class,radius_or_delta,recheck_pass\n";
    for (const auto& row : r.rows) {
        out << row.index << ',' << cert_class_name(row.cls) << ',';
        if (std::isfinite(row.payload)) out << row.payload;
        else if (std::isinf(row.payload)) out << "inf";
        out << ',';
        if (row.rechecked) out << (row.recheck_fraction >= 1.0 ? 1 : 0);
        out << '\n';
    }
    return out.str();
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad_input("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        bad_input("invalid json in " + path + ": " + e.what());
    }
    return j;
}

} // namespace conelab
