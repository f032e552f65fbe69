#include "isoparam/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isoparam {

CliffordSystem ReconstructedOperators::as_system() const {
    CliffordSystem s;
    s.half_dim = half_dim;
    s.operators = Q;
    s.exact = false;
    return s;
}

ReconstructedOperators build_Q_operators(const DarbouxFrame& frame, const FrameTensors& t) {
    const int m = frame.m();
    const int N = frame.N();
    const int n = frame.dim();
    if (t.m != m || t.N != N) throw Error(ErrorCode::ShapeMismatch, "tensors do not match the frame");
    if (2 * m + 2 + 2 * N != n) throw Error(ErrorCode::ShapeMismatch, "frame is not complete");

    VerificationReport rel = tensor_relations(t, 1e-8);
    if (!rel.pass) {
        std::ostringstream os;
        os << "tensor relations violated:";
        for (const auto& r : rel.residuals)
            if (!r.pass) os << ' ' << r.name << '=' << r.value;
        throw Error(ErrorCode::ConditionViolated, os.str());
    }

    // column offsets inside the full basis
    const int X = 0, E0 = 1, EA = 2, EP = 2 + m, AL = 2 + 2 * m, MU = 2 + 2 * m + N;
    const Mat basis = frame.full_basis();

    ReconstructedOperators out;
    out.half_dim = n / 2;

    // local[j] = coordinates of Q applied to basis vector j
    Mat local = Mat::Zero(n, n);
    local(E0, X) = 1.0;
    local(X, E0) = 1.0;
    for (int a = 0; a < m; ++a) {
        local(EP + a, EA + a) = -1.0;
        local(EA + a, EP + a) = -1.0;
    }
    for (int al = 0; al < N; ++al) local(AL + al, AL + al) = -1.0;
    for (int mu = 0; mu < N; ++mu) local(MU + mu, MU + mu) = 1.0;
    out.Q.push_back(basis * local * basis.transpose());

    for (int a = 0; a < m; ++a) {
        local.setZero();
        local(EA + a, X) = 1.0;
        local(EP + a, E0) = 1.0;
        for (int b = 0; b < m; ++b) {
            // Q_a e_b
            if (a == b) local(X, EA + b) = 1.0;
            for (int c = 0; c < m; ++c) local(EP + c, EA + b) = -t.L(a, b, c);
            for (int al = 0; al < N; ++al) local(AL + al, EA + b) = t.Fapa(al, a, b);
            for (int mu = 0; mu < N; ++mu) local(MU + mu, EA + b) = t.Fmpa(mu, a, b);
            // Q_a e_{b+m}
            if (a == b) local(E0, EP + b) = 1.0;
            for (int c = 0; c < m; ++c) local(EA + c, EP + b) = t.L(a, b, c);
            for (int al = 0; al < N; ++al) local(AL + al, EP + b) = t.Fapa(al, b, a);
            for (int mu = 0; mu < N; ++mu) local(MU + mu, EP + b) = -t.Fmpa(mu, b, a);
        }
        for (int al = 0; al < N; ++al) {
            for (int b = 0; b < m; ++b) {
                local(EA + b, AL + al) = t.Fapa(al, a, b);
                local(EP + b, AL + al) = t.Fapa(al, b, a);
            }
            for (int mu = 0; mu < N; ++mu) local(MU + mu, AL + al) = -2.0 * t.Fmaa(mu, al, a);
        }
        for (int mu = 0; mu < N; ++mu) {
            for (int b = 0; b < m; ++b) {
                local(EA + b, MU + mu) = t.Fmpa(mu, a, b);
                local(EP + b, MU + mu) = -t.Fmpa(mu, b, a);
            }
            for (int al = 0; al < N; ++al) local(AL + al, MU + mu) = -2.0 * t.Fmaa(mu, al, a);
        }
        out.Q.push_back(basis * local * basis.transpose());
    }
    return out;
}

namespace {

Mat frobenius_basis(const std::vector<Mat>& ops) {
    const Eigen::Index n = ops.front().rows();
    Mat cols(n * n, static_cast<Eigen::Index>(ops.size()));
    for (std::size_t i = 0; i < ops.size(); ++i)
        cols.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vec>(ops[i].data(), n * n);
    return orthonormalize(cols, 1e-10);
}

}  // namespace

double span_distance(const std::vector<Mat>& a, const std::vector<Mat>& b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::ShapeMismatch, "empty operator list");
    if (a.front().rows() != b.front().rows()) throw Error(ErrorCode::ShapeMismatch, "operator sizes differ");
    Mat Ua = frobenius_basis(a), Ub = frobenius_basis(b);
    double d2 = (Ua - Ub * (Ub.transpose() * Ua)).squaredNorm() + (Ub - Ua * (Ua.transpose() * Ub)).squaredNorm();
    return std::sqrt(d2);
}

VerificationReport verify_reconstruction(const ReconstructedOperators& recon, const CliffordSystem& original,
                                         double tol) {
    if (recon.Q.empty() || recon.Q.front().rows() != original.dim())
        throw Error(ErrorCode::ShapeMismatch, "reconstructed operators and source differ in size");
    VerificationReport rep = verify_clifford_system(recon.as_system(), tol);
    rep.check = "reconstruction";
    rep.add("span_distance", span_distance(recon.Q, original.operators), tol);
    return rep;
}

}  // namespace isoparam
