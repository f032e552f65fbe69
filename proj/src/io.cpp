#include "isoparam/io.hpp"

#include <fstream>
#include <sstream>

namespace isoparam {

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const Json& j) {
    if (!j.is_array()) throw Error(ErrorCode::ShapeMismatch, "matrix must be an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw Error(ErrorCode::ShapeMismatch, "ragged matrix row " + std::to_string(i));
        for (Eigen::Index k = 0; k < cols; ++k) {
            const Json& v = row[static_cast<std::size_t>(k)];
            if (!v.is_number()) throw Error(ErrorCode::ShapeMismatch, "non-numeric matrix entry");
            m(i, k) = v.get<double>();
        }
    }
    return m;
}

Json vector_to_json(const Vec& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Json system_to_json(const CliffordSystem& sys) {
    Json j;
    j["version"] = kVersion;
    j["half_dim"] = sys.half_dim;
    j["m"] = sys.m();
    j["exact"] = sys.exact;
    j["operators"] = Json::array();
    for (const auto& P : sys.operators) j["operators"].push_back(matrix_to_json(P));
    return j;
}

CliffordSystem system_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("half_dim") || !j.contains("operators"))
        throw Error(ErrorCode::ShapeMismatch, "system file needs half_dim and operators");
    CliffordSystem sys;
    sys.half_dim = j["half_dim"].get<int>();
    sys.exact = j.value("exact", false);
    for (const auto& op : j["operators"]) {
        Mat P = matrix_from_json(op);
        if (P.rows() != 2 * sys.half_dim || P.cols() != 2 * sys.half_dim)
            throw Error(ErrorCode::ShapeMismatch, "operator side does not equal 2 * half_dim");
        sys.operators.push_back(P);
    }
    if (sys.operators.empty()) throw Error(ErrorCode::ShapeMismatch, "no operators");
    if (j.contains("m") && j["m"].get<int>() != sys.m())
        throw Error(ErrorCode::ShapeMismatch, "declared m does not match the operator count");
    return sys;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t offset = e.byte ? e.byte - 1 : 0;
        throw Error(ErrorCode::ParseError, path + " at byte offset " + std::to_string(offset) + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << j.dump(2) << '\n';
}

Json report_to_json(const VerificationReport& rep) {
    Json j;
    j["check"] = rep.check;
    j["pass"] = rep.pass;
    j["seed"] = rep.seed;
    j["samples"] = rep.samples;
    j["residuals"] = Json::array();
    for (const auto& r : rep.residuals) {
        Json e;
        e["name"] = r.name;
        if (r.skipped) {
            e["skipped"] = true;
        } else {
            e["value"] = r.value;
            e["tol"] = r.tol;
            e["pass"] = r.pass;
        }
        if (!r.note.empty()) e["note"] = r.note;
        j["residuals"].push_back(std::move(e));
    }
    j["flags"] = rep.flags;
    return j;
}

Json tensor_to_json(const Tensor3& t) {
    Json j;
    j["shape"] = {t.d0, t.d1, t.d2};
    j["data"] = t.data;
    return j;
}

Json frame_to_json(const DarbouxFrame& frame, const FrameTensors& tensors) {
    Json j;
    j["seed"] = frame.seed;
    j["m"] = frame.m();
    j["N"] = frame.N();
    j["basis_order"] = "x, e_0..e_m, e_{m+1}..e_{2m}, e_alpha (Q_0 = -1), e_mu (Q_0 = +1); columns";
    j["x"] = vector_to_json(frame.x);
    j["normals"] = matrix_to_json(frame.normals);
    j["osculating"] = matrix_to_json(frame.osculating);
    j["plus_basis"] = matrix_to_json(frame.plus_basis);
    j["minus_basis"] = matrix_to_json(frame.minus_basis);
    Json t;
    t["index_order"] = "Fapa(alpha,p,a) Fmpa(mu,p,a) Fmaa(mu,alpha,a) Fmap(mu,alpha,p) L(a,b,c); zero based";
    t["Fapa"] = tensor_to_json(tensors.Fapa);
    t["Fmpa"] = tensor_to_json(tensors.Fmpa);
    t["Fmaa"] = tensor_to_json(tensors.Fmaa);
    t["Fmap"] = tensor_to_json(tensors.Fmap);
    t["L"] = tensor_to_json(tensors.L);
    j["tensors"] = std::move(t);
    return j;
}

Json rank_span_to_json(const RankSpanReport& rep) {
    Json j;
    j["ranks"] = rep.ranks;
    j["thresholds"] = rep.thresholds;
    j["rank_bound"] = rep.rank_bound;
    j["spanning"] = rep.spanning;
    j["x_trials"] = rep.x_trials;
    j["y_trials"] = rep.y_trials;
    j["x_certificate"] = rep.x_certificate ? vector_to_json(*rep.x_certificate) : Json(nullptr);
    j["y_certificate"] = rep.y_certificate ? vector_to_json(*rep.y_certificate) : Json(nullptr);
    j["seed"] = rep.seed;
    j["failures"] = rep.failures;
    return j;
}

Json normal_form_to_json(const NormalFormResult& nf) {
    Json j;
    j["rank"] = nf.rank;
    j["sigma"] = nf.sigma;
    j["blocks"] = Json::array();
    for (const auto& b : nf.blocks) {
        Json e;
        e["sigma"] = b.sigma;
        e["dim"] = b.dim;
        e["f"] = b.f;
        e["square_residual"] = b.square_residual;
        j["blocks"].push_back(std::move(e));
    }
    j["structure_residual"] = nf.structure_residual;
    j["square_residual"] = nf.square_residual;
    j["pass"] = nf.pass;
    return j;
}

Json probe_to_json(const ProbeReport& rep) {
    Json j;
    j["n"] = rep.n;
    j["c_samples"] = rep.c_samples;
    j["point_samples"] = rep.point_samples;
    j["seed"] = rep.seed;
    j["rank_threshold_factor"] = rep.rank_threshold_factor;
    j["kernel_histogram"] = rep.kernel_histogram;
    j["max_kernel_dim"] = rep.max_kernel_dim;
    j["generic_kernel_dim"] = rep.generic_kernel_dim;
    j["max_fiber_dim"] = rep.max_fiber_dim;
    j["base_dim"] = rep.base_dim;
    j["z_dim_upper_estimate"] = rep.z_dim_upper_estimate;
    j["fiber_bound"] = rep.fiber_bound;
    j["fiber_bound_holds"] = rep.fiber_bound_holds;
    j["jacobian_ranks"] = rep.jacobian_ranks;
    j["smooth_fraction"] = rep.smooth_fraction;
    return j;
}

Json ozeki_takeuchi_to_json(const OzekiTakeuchiReport& rep) {
    Json j;
    j["h"] = rep.h;
    j["m2"] = rep.system.m2;
    j["kernel_plus_i"] = rep.kernel_plus_i;
    j["kernel_minus_i"] = rep.kernel_minus_i;
    j["transpose_kernel_plus_i"] = rep.transpose_kernel_plus_i;
    j["transpose_kernel_minus_i"] = rep.transpose_kernel_minus_i;
    j["common_kernel_dim"] = rep.common_kernel_dim;
    j["generic_kernel_dims"] = rep.generic_kernel_dims;
    j["generic_kernel_dim"] = rep.generic_kernel_dim;
    j["z2_dim_lower"] = rep.z2_dim_lower;
    j["z2_dim_upper"] = rep.z2_dim_upper;
    j["z2_certified"] = rep.z2_certified;
    return j;
}

Json enumeration_to_json(const PairEnumeration& e) {
    Json j;
    j["pairs"] = Json::array();
    for (const auto& p : e.pairs) j["pairs"].push_back({{"m1", p.m1}, {"m2", p.m2}, {"k", p.k}, {"l", p.l}});
    j["open_cases"] = Json::array();
    for (const auto& [a, b] : e.open_cases) j["open_cases"].push_back({a, b});
    j["annotations"] = Json::array();
    for (const auto& a : e.annotations)
        j["annotations"].push_back({{"m1", a.m1}, {"m2", a.m2}, {"note", a.note}});
    return j;
}

}  // namespace isoparam
