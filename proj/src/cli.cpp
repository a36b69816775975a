#include "conelab/cli.hpp"

#include "conelab/certify.hpp"
#include "conelab/json_io.hpp"
#include "conelab/porosity.hpp"
#include "conelab/survey.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>

namespace conelab {

namespace {

// input-shaped failures exit 2, numeric failures exit 3
int exit_code_for(const std::string& code) {
    static const std::set<std::string> input_codes = {
        "BAD_INPUT",  "BAD_ARGUMENT", "BAD_DIMENSION", "NON_FINITE",
        "ZERO_RAY",   "EMPTY_SET",    "SCALE_EXCEEDED"};
    return input_codes.count(code) ? 2 : 3;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail("BAD_INPUT", "cannot write file: " + path);
    out << text;
}

void emit(const Json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text(out_path, text);
}

struct CommonOpts {
    std::string set_path;
    std::string map_path;
    std::string out_path;
    std::uint64_t seed = 0;
    long samples = 0;
    CertifierConfig cert;
};

void add_tolerance_flags(CLI::App* cmd, CertifierConfig& cfg) {
    cmd->add_option("--tol-rank", cfg.tol.rank, "relative rank tolerance");
    cmd->add_option("--tol-lp", cfg.tol.lp, "lp feasibility tolerance");
}

void add_oracle_seed(CLI::App* cmd, CertifierConfig& cfg) {
    cmd->add_option("--seed", cfg.oracle_seed, "seed for the internal sampling oracles");
}

} // namespace

int cli_dispatch(int argc, const char* const* argv) {
    CLI::App app{"certify stable closedness of linear images of convex sets"};
    app.require_subcommand(1);

    CommonOpts opt;
    double margin = 0.01;
    double eps = 0.1;
    long budget = 100000;
    long demo_k = 8;
    int survey_m = 1;
    double radius_base = 1.0;
    std::string target_path, oracle_path, at_path;

    auto* certify = app.add_subcommand("certify", "classify a (map, set) pair");
    certify->add_option("--set", opt.set_path, "set description json")->required();
    certify->add_option("--map", opt.map_path, "linear map json")->required();
    certify->add_option("--out", opt.out_path, "write the certificate here");
    add_tolerance_flags(certify, opt.cert);
    add_oracle_seed(certify, opt.cert);

    auto* radius = app.add_subcommand("radius", "condition-A stability radius");
    radius->add_option("--set", opt.set_path)->required();
    radius->add_option("--map", opt.map_path)->required();
    radius->add_option("--out", opt.out_path);
    add_tolerance_flags(radius, opt.cert);
    add_oracle_seed(radius, opt.cert);

    auto* preimage = app.add_subcommand("preimage", "condition-B preimage witness");
    preimage->add_option("--set", opt.set_path)->required();
    preimage->add_option("--map", opt.map_path)->required();
    preimage->add_option("--target", target_path, "target vector json")->required();
    preimage->add_option("--margin", margin, "relative slack on the ray step");
    preimage->add_option("--out", opt.out_path);
    add_tolerance_flags(preimage, opt.cert);
    add_oracle_seed(preimage, opt.cert);

    auto* repair_cmd = app.add_subcommand("repair", "tilt an uncertified map into condition B");
    repair_cmd->add_option("--set", opt.set_path)->required();
    repair_cmd->add_option("--map", opt.map_path)->required();
    repair_cmd->add_option("--eps", eps, "interpolation weight toward the interior ray");
    repair_cmd->add_option("--out", opt.out_path);
    add_tolerance_flags(repair_cmd, opt.cert);
    add_oracle_seed(repair_cmd, opt.cert);

    auto* porosity = app.add_subcommand("porosity", "monte-carlo porosity estimate");
    porosity->add_option("--oracle", oracle_path, "set oracle json")->required();
    porosity->add_option("--at", at_path, "center point json")->required();
    porosity->add_option("--budget", budget, "samples per radius");
    porosity->add_option("--seed", opt.seed);
    porosity->add_option("--radius-base", radius_base, "largest radius of the schedule");
    porosity->add_option("--out", opt.out_path);

    auto* survey_cmd = app.add_subcommand("survey", "random-map genericity survey");
    survey_cmd->add_option("--set", opt.set_path)->required();
    survey_cmd->add_option("--m", survey_m, "target dimension")->required();
    survey_cmd->add_option("--samples", opt.samples)->required();
    survey_cmd->add_option("--seed", opt.seed);
    survey_cmd->add_option("--out", opt.out_path, "per-sample csv path");
    add_tolerance_flags(survey_cmd, opt.cert);

    auto* demo = app.add_subcommand("demo-nonclosed", "non-closed image witness sequence");
    demo->add_option("--k", demo_k, "number of sequence terms");
    demo->add_option("--out", opt.out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            std::cout << app.help();
            return 0;
        }
        std::cerr << "ERROR:BAD_INPUT:" << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (certify->parsed()) {
            const ConvexSet x = parse_set(load_json_file(opt.set_path));
            const LinearMap t = parse_map(load_json_file(opt.map_path));
            emit(certificate_to_json(classify(t, x, opt.cert)), opt.out_path);
        } else if (radius->parsed()) {
            const ConvexSet x = parse_set(load_json_file(opt.set_path));
            const LinearMap t = parse_map(load_json_file(opt.map_path));
            const double r = stability_radius_A(t, asymptotic_cone(x, opt.cert.tol), opt.cert);
            Json j;
            if (std::isinf(r))
                j = Json{{"radius", "inf"}};
            else
                j = Json{{"radius", r}};
            emit(j, opt.out_path);
        } else if (preimage->parsed()) {
            const ConvexSet x = parse_set(load_json_file(opt.set_path));
            const LinearMap t = parse_map(load_json_file(opt.map_path));
            const Vector y = parse_vector(load_json_file(target_path));
            emit(preimage_to_json(preimage_witness(t, x, y, margin, opt.cert)), opt.out_path);
        } else if (repair_cmd->parsed()) {
            const ConvexSet x = parse_set(load_json_file(opt.set_path));
            const LinearMap t = parse_map(load_json_file(opt.map_path));
            const LinearMap repaired = repair(t, x, eps, opt.cert);
            Json j = map_to_json(repaired);
            j["distance"] = operator_norm(LinearMap(repaired.entries - t.entries));
            j["certificate"] = certificate_to_json(classify(repaired, x, opt.cert));
            emit(j, opt.out_path);
        } else if (porosity->parsed()) {
            const SetOracle oracle = parse_oracle(load_json_file(oracle_path));
            const Vector center = parse_vector(load_json_file(at_path));
            const PorosityEstimate est = porosity_estimate(
                center, oracle, default_radius_schedule(radius_base), budget, opt.seed);
            emit(porosity_to_json(est), opt.out_path);
        } else if (survey_cmd->parsed()) {
            const ConvexSet x = parse_set(load_json_file(opt.set_path));
            SurveyConfig cfg;
            cfg.m = survey_m;
            cfg.samples = opt.samples;
            cfg.seed = opt.seed;
            cfg.cert.tol = opt.cert.tol;
            const SurveyReport report = survey(x, cfg);
            if (!opt.out_path.empty()) write_text(opt.out_path, survey_csv(report));
            std::cout << survey_summary_to_json(report).dump(2) << "\n";
        } else if (demo->parsed()) {
            emit(witness_sequence_to_json(witness_nonclosed_demo(demo_k)), opt.out_path);
        }
    } catch (const Error& e) {
        std::cerr << "ERROR:" << e.code() << ":" << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "ERROR:NUMERIC:" << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace conelab
