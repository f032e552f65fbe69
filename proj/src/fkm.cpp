#include "isoparam/fkm.hpp"

#include "isoparam/focal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isoparam {

CartanMunznerField make_field(const CliffordSystem& sys) {
    CartanMunznerField F;
    F.system = sys;
    F.m1 = sys.m();
    F.m2 = sys.half_dim - sys.m() - 1;
    return F;
}

namespace {

void check_dim(const CartanMunznerField& F, const Vec& x) {
    if (x.size() != F.system.dim())
        throw Error(ErrorCode::DimensionMismatch,
                    "point has dimension " + std::to_string(x.size()) + ", expected " +
                        std::to_string(F.system.dim()));
}

}  // namespace

double field_value(const CartanMunznerField& F, const Vec& x) {
    check_dim(F, x);
    double r2 = x.squaredNorm();
    double s = 0.0;
    for (const auto& P : F.system.operators) {
        double g = x.dot(P * x);
        s += g * g;
    }
    return F.sign * (r2 * r2 - 2.0 * s);
}

FieldEval eval_field(const CartanMunznerField& F, const Vec& x) {
    check_dim(F, x);
    const int n = static_cast<int>(x.size());
    const double r2 = x.squaredNorm();
    FieldEval out;
    double s = 0.0;
    Vec grad = 4.0 * r2 * x;
    Mat hess = 4.0 * r2 * Mat::Identity(n, n) + 8.0 * x * x.transpose();
    for (const auto& P : F.system.operators) {
        Vec px = P * x;
        double g = x.dot(px);
        s += g * g;
        grad -= 8.0 * g * px;
        hess -= 16.0 * px * px.transpose() + 8.0 * g * P;
    }
    out.value = F.sign * (r2 * r2 - 2.0 * s);
    out.gradient = F.sign * grad;
    out.hessian = F.sign * hess;
    out.laplacian = out.hessian.trace();
    return out;
}

VerificationReport verify_munzner_pdes(const CartanMunznerField& F, std::size_t samples,
                                       std::uint64_t seed, double tol) {
    if (F.m2 < 1 || F.m1 < 0)
        throw Error(ErrorCode::InvalidMultiplicities,
                    "m2 = " + std::to_string(F.m2) + " must be at least 1");
    const int n = F.system.dim();
    const double c = 8.0 * (F.m2 - F.m1);
    std::vector<double> grad_res(samples), lap_res(samples), lap_flip(samples);
    parallel_for(samples, [&](std::size_t i) {
        Rng rng(seed, i);
        double r = rng.uniform(0.5, 2.0);
        Vec x = r * rng.unit(n);
        FieldEval e = eval_field(F, x);
        double r2 = x.squaredNorm();
        double r6 = r2 * r2 * r2;
        double scale = 1.0 + r6;
        grad_res[i] = std::abs(e.gradient.squaredNorm() - 16.0 * r6) / scale;
        lap_res[i] = std::abs(e.laplacian - c * r2) / scale;
        lap_flip[i] = std::abs(e.laplacian + c * r2) / scale;
    });
    auto mx = [](const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); };
    VerificationReport rep;
    rep.check = "munzner_pdes";
    rep.seed = seed;
    rep.samples = samples;
    rep.add("gradient_norm", mx(grad_res), tol);
    Residual& lap = rep.add("laplacian", mx(lap_res), tol);
    double flipped = mx(lap_flip);
    if (!lap.pass && flipped <= tol) {
        rep.flags.push_back("orientation_flip");
        lap.note = "passes with -(m2-m1); the field orientation is reversed";
    }
    return rep;
}

TubePoint make_tube_point(const Vec& base, const Vec& normal, double t) {
    if (base.size() != normal.size())
        throw Error(ErrorCode::DimensionMismatch, "base and normal differ in dimension");
    TubePoint p;
    p.base = base;
    p.normal = normal;
    p.t = t;
    p.point = std::cos(t) * base + std::sin(t) * normal;
    return p;
}

TubeStats tube_constancy(const CartanMunznerField& F, std::size_t bases, std::size_t normals,
                         double t, std::uint64_t seed) {
    if (!(t > -std::numbers::pi && t < std::numbers::pi))
        throw Error(ErrorCode::InvalidArgument, "t must lie in (-pi, pi)");
    const CliffordSystem& sys = F.system;
    const int k = static_cast<int>(sys.operators.size());
    std::vector<double> values(bases * normals);
    parallel_for(bases, [&](std::size_t b) {
        Vec x = sample_focal_point(sys, mix_seed(seed, b));
        Rng rng(seed ^ 0x5DEECE66DULL, b);
        for (std::size_t j = 0; j < normals; ++j) {
            Vec c = rng.unit(k);
            Vec e = Vec::Zero(x.size());
            for (int i = 0; i < k; ++i) e += c(i) * (sys.operators[i] * x);
            values[b * normals + j] = field_value(F, make_tube_point(x, e, t).point);
        }
    });
    TubeStats s;
    s.count = values.size();
    if (values.empty()) return s;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    s.spread = s.max - s.min;
    return s;
}

Mat level_shape_operator(const CartanMunznerField& F, const Vec& y) {
    FieldEval e = eval_field(F, y);
    const int n = static_cast<int>(y.size());
    Vec g = e.gradient - 4.0 * e.value * y;
    double gn = g.norm();
    if (gn < 1e-12) throw Error(ErrorCode::FocalRadius, "gradient vanishes: point is focal");
    Mat frame(n, 2);
    frame.col(0) = y / y.norm();
    frame.col(1) = g / gn;
    Mat T = orthonormalize(Mat::Identity(n, n), 1e-8, &frame);
    if (T.cols() != n - 2) throw Error(ErrorCode::FocalRadius, "degenerate tangent space");
    Mat S = T.transpose() * (e.hessian - 4.0 * e.value * Mat::Identity(n, n)) * T / gn;
    return 0.5 * (S + S.transpose());
}

LevelSpectrum level_shape_spectrum(const CartanMunznerField& F, const TubePoint& p, double tol,
                                   double cluster_gap) {
    const double quarter = std::numbers::pi / 4.0;
    double d = p.t / quarter;
    if (std::abs(d - std::round(d)) < 1e-9)
        throw Error(ErrorCode::FocalRadius, "t is a multiple of pi/4");
    Mat S = level_shape_operator(F, p.point);
    Eigen::SelfAdjointEigenSolver<Mat> es(S, Eigen::EigenvaluesOnly);
    Vec ev = es.eigenvalues();

    std::vector<std::vector<double>> groups;
    for (int i = 0; i < ev.size(); ++i) {
        if (!groups.empty()) {
            double prev = groups.back().back();
            double gap = ev(i) - prev;
            if (gap <= cluster_gap * (1.0 + std::abs(prev))) {
                groups.back().push_back(ev(i));
                continue;
            }
            if (gap < 10.0 * tol)
                throw Error(ErrorCode::ClusterAmbiguity, "eigenvalue gap " + std::to_string(gap));
        }
        groups.push_back({ev(i)});
    }
    if (groups.size() != 4)
        throw Error(ErrorCode::ClusterAmbiguity,
                    "expected four curvature clusters, found " + std::to_string(groups.size()));

    LevelSpectrum out;
    for (const auto& g : groups) {
        double sum = 0.0;
        for (double v : g) sum += v;
        out.clusters.push_back({sum / static_cast<double>(g.size()), static_cast<int>(g.size())});
    }

    const double t = p.t;
    auto cot = [](double a) { return std::cos(a) / std::sin(a); };
    // angle offsets 0, pi/4, pi/2, 3pi/4 carry multiplicities m1, m2, m1, m2
    std::vector<std::pair<double, int>> tg = {{cot(-t), F.m1},
                                              {cot(quarter - t), F.m2},
                                              {cot(2 * quarter - t), F.m1},
                                              {cot(3 * quarter - t), F.m2}};
    std::vector<int> order = {0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return tg[a].first < tg[b].first; });
    out.multiplicities_match = true;
    std::vector<double> k(4);
    for (int i = 0; i < 4; ++i) {
        const auto& target = tg[order[i]];
        out.targets.push_back(target.first);
        out.target_multiplicities.push_back(target.second);
        out.target_residual = std::max(out.target_residual, std::abs(out.clusters[i].curvature - target.first));
        if (out.clusters[i].multiplicity != target.second) out.multiplicities_match = false;
        k[order[i]] = out.clusters[i].curvature;
    }
    out.relation_residual = std::max({std::abs(k[1] - (k[0] - 1.0) / (k[0] + 1.0)),
                                      std::abs(k[2] + 1.0 / k[0]),
                                      std::abs(k[3] - (1.0 + k[0]) / (1.0 - k[0]))});
    std::vector<double> theta;
    for (const auto& c : out.clusters) theta.push_back(std::atan2(1.0, c.curvature));
    std::sort(theta.begin(), theta.end());
    double spacing = std::abs(std::numbers::pi - theta[3] + theta[0] - quarter);
    for (int i = 0; i < 3; ++i) spacing = std::max(spacing, std::abs(theta[i + 1] - theta[i] - quarter));
    out.spacing_residual = spacing;
    return out;
}

}  // namespace isoparam
