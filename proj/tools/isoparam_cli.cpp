#include "isoparam/clifford.hpp"
#include "isoparam/fkm.hpp"
#include "isoparam/focal.hpp"
#include "isoparam/io.hpp"
#include "isoparam/quadforms.hpp"
#include "isoparam/reconstruct.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace isoparam;

namespace {

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kNumeric = 3 };

struct RunConfig {
    std::string command;
    std::optional<int> m, k, l;
    std::uint64_t seed{0};
    double tol{1e-9};
    std::optional<std::size_t> samples;
    std::string in, out;
    int max_m1{16};
};

int exit_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::DimensionNotAdmissible:
        case ErrorCode::ShapeMismatch:
        case ErrorCode::NotSpecialOrthogonal:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::InvalidMultiplicities:
        case ErrorCode::InvalidArgument:
        case ErrorCode::ParseError:
            return kConfig;
        default:
            return kNumeric;
    }
}

Json provenance(const RunConfig& c) {
    Json cfg;
    cfg["command"] = c.command;
    cfg["m"] = c.m ? Json(*c.m) : Json(nullptr);
    cfg["k"] = c.k ? Json(*c.k) : Json(nullptr);
    cfg["l"] = c.l ? Json(*c.l) : Json(nullptr);
    cfg["samples"] = c.samples ? Json(*c.samples) : Json(nullptr);
    cfg["in"] = c.in;
    cfg["out"] = c.out;
    cfg["max_m1"] = c.max_m1;
    Json p;
    p["version"] = kVersion;
    p["config"] = std::move(cfg);
    p["seed"] = c.seed;
    p["tol"] = c.tol;
    return p;
}

CliffordSystem load_system(const RunConfig& c) {
    if (!c.in.empty()) return system_from_json(read_json_file(c.in));
    if (!c.m) throw Error(ErrorCode::InvalidArgument, "need --in or --m");
    int k = 0;
    if (c.k) {
        k = *c.k;
    } else if (c.l) {
        long long delta = fkm_delta(*c.m);
        if (*c.l % delta != 0)
            throw Error(ErrorCode::DimensionNotAdmissible,
                        "l = " + std::to_string(*c.l) + " is not a multiple of delta = " + std::to_string(delta));
        k = static_cast<int>(*c.l / delta);
    } else {
        k = minimal_k(*c.m);
    }
    return fkm_system(*c.m, k);
}

std::size_t samples_or(const RunConfig& c, std::size_t d) { return c.samples ? *c.samples : d; }

bool run_construct(const RunConfig& c, Json& body) {
    CliffordSystem sys = load_system(c);
    VerificationReport rep = verify_clifford_system(sys, c.tol);
    body["clifford"] = report_to_json(rep);
    if (!c.out.empty()) {
        write_json_file(c.out, system_to_json(sys));
        body["written"] = c.out;
    } else {
        body["system"] = system_to_json(sys);
    }
    return rep.pass;
}

bool run_verify(const RunConfig& c, Json& body) {
    CliffordSystem sys = load_system(c);
    const std::size_t n = samples_or(c, 200);
    bool pass = true;
    auto keep = [&](const char* key, const VerificationReport& r) {
        body[key] = report_to_json(r);
        pass = pass && r.pass;
    };
    keep("clifford", verify_clifford_system(sys, c.tol));
    CartanMunznerField F = make_field(sys);
    keep("munzner_pdes", verify_munzner_pdes(F, n, c.seed, c.tol));

    Vec x = sample_focal_point(sys, c.seed);
    DarbouxFrame frame = build_frame(sys, x, c.seed);
    FrameTensors t = extract_frame_tensors(sys, frame);
    keep("focal_identities", verify_focal_identities(t, shape_blocks(frame), c.tol));
    keep("antipodal_swap", antipodal_swap_check(sys, frame, c.tol, c.seed));
    keep("slice_formula", verify_slice_formula(sys, F, frame, n, c.seed, c.tol));

    VerificationReport spectra;
    spectra.check = "focal_spectra";
    spectra.seed = c.seed;
    Rng rng(c.seed, 1);
    double res = 0.0;
    bool counts = true;
    for (int j = 0; j < 20; ++j) {
        Vec w = rng.unit(sys.m() + 1);
        FocalSpectrum s = focal_spectrum(shape_operator(frame, frame.normals * w));
        res = std::max(res, s.residual);
        counts = counts && s.plus == frame.N() && s.zero == frame.m() && s.minus == frame.N();
    }
    spectra.add("eigenvalue_residual", res, c.tol);
    spectra.add("multiplicity_mismatch", counts ? 0.0 : 1.0, 0.0);
    keep("focal_spectra", spectra);
    return pass;
}

bool run_frame(const RunConfig& c, Json& body) {
    CliffordSystem sys = load_system(c);
    DarbouxFrame frame = build_frame(sys, sample_focal_point(sys, c.seed), c.seed);
    FrameTensors t = extract_frame_tensors(sys, frame);
    Json f = frame_to_json(frame, t);
    VerificationReport rel = tensor_relations(t, c.tol);
    body["relations"] = report_to_json(rel);
    if (!c.out.empty()) {
        write_json_file(c.out, f);
        body["written"] = c.out;
    } else {
        body["frame"] = std::move(f);
    }
    return rel.pass;
}

bool run_quadforms(const RunConfig& c, Json& body) {
    CliffordSystem sys = load_system(c);
    DarbouxFrame frame = build_frame(sys, sample_focal_point(sys, c.seed), c.seed);
    FrameTensors t = extract_frame_tensors(sys, frame);
    BilinearSystem b = bilinear_from_tensors(t);
    RankSpanReport rs = rank_and_spanning_check(b, 10, c.seed);
    body["rank_spanning"] = rank_span_to_json(rs);
    bool pass = rs.rank_bound;
    body["normal_forms"] = Json::array();
    for (const auto& blk : shape_blocks(frame)) {
        NormalFormResult nf = bilinear_normal_form(blk.A, blk.B, blk.C, c.tol);
        body["normal_forms"].push_back(normal_form_to_json(nf));
        pass = pass && nf.pass;
    }
    ProbeReport pr = incidence_dimension_probe(b, b.m1, samples_or(c, 2000), 100, c.seed);
    body["probe"] = probe_to_json(pr);
    return pass && pr.fiber_bound_holds;
}

bool run_reconstruct(const RunConfig& c, Json& body) {
    CliffordSystem sys = load_system(c);
    const std::size_t points = samples_or(c, 10);
    std::vector<VerificationReport> reps(points);
    parallel_for(points, [&](std::size_t i) {
        std::uint64_t s = mix_seed(c.seed, i);
        DarbouxFrame frame = build_frame(sys, sample_focal_point(sys, s), s);
        reps[i] = verify_reconstruction(build_Q_operators(frame, extract_frame_tensors(sys, frame)), sys, c.tol);
        reps[i].seed = s;
    });
    bool pass = true;
    body["base_points"] = Json::array();
    for (const auto& r : reps) {
        body["base_points"].push_back(report_to_json(r));
        pass = pass && r.pass;
    }
    return pass;
}

bool run_enumerate(const RunConfig& c, Json& body) {
    PairEnumeration e = enumerate_fkm_pairs(c.max_m1);
    body["enumeration"] = enumeration_to_json(e);
    std::cerr << "open cases:";
    for (const auto& [a, b] : e.open_cases) std::cerr << " (" << a << "," << b << ")";
    std::cerr << '\n';
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clifford systems, FKM families and focal diagnostics"};
    app.require_subcommand(1);
    RunConfig cfg;
    int m = 0, k = 0, l = 0;
    std::size_t samples = 0;
    std::vector<CLI::App*> subs;
    for (const char* name : {"construct", "verify", "frame", "quadforms", "reconstruct", "enumerate"}) {
        CLI::App* s = app.add_subcommand(name);
        s->add_option("--m", m, "number of operators minus one");
        s->add_option("--k", k, "module multiplier");
        s->add_option("--l", l, "half dimension");
        s->add_option("--seed", cfg.seed);
        s->add_option("--tol", cfg.tol)->check(CLI::NonNegativeNumber);
        s->add_option("--samples", samples);
        s->add_option("--in", cfg.in);
        s->add_option("--out", cfg.out);
        s->add_option("--max-m1", cfg.max_m1);
        subs.push_back(s);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kConfig;
    }
    for (CLI::App* s : subs) {
        if (!s->parsed()) continue;
        cfg.command = s->get_name();
        if (s->count("--m")) cfg.m = m;
        if (s->count("--k")) cfg.k = k;
        if (s->count("--l")) cfg.l = l;
        if (s->count("--samples")) cfg.samples = samples;
    }

    Json report;
    report["provenance"] = provenance(cfg);
    int status = kPass;
    try {
        Json body;
        bool pass = false;
        if (cfg.command == "construct") pass = run_construct(cfg, body);
        else if (cfg.command == "verify") pass = run_verify(cfg, body);
        else if (cfg.command == "frame") pass = run_frame(cfg, body);
        else if (cfg.command == "quadforms") pass = run_quadforms(cfg, body);
        else if (cfg.command == "reconstruct") pass = run_reconstruct(cfg, body);
        else pass = run_enumerate(cfg, body);
        report["pass"] = pass;
        report["result"] = std::move(body);
        status = pass ? kPass : kFail;
        std::cerr << cfg.command << ": " << (pass ? "pass" : "FAIL") << '\n';
    } catch (const Error& e) {
        status = exit_for(e.code());
        report["pass"] = false;
        report["error"] = {{"code", error_name(e.code())}, {"message", e.what()}};
        std::cerr << cfg.command << ": " << e.what() << '\n';
    }
    std::cout << report.dump(2) << '\n';
    return status;
}
