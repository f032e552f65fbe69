#include "isoparam/focal.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace isoparam;

namespace {

struct Fixture {
    CliffordSystem sys;
    DarbouxFrame frame;
    FrameTensors t;
};

Fixture make(int m, int k, std::uint64_t seed) {
    Fixture s;
    s.sys = fkm_system(m, k);
    s.frame = build_frame(s.sys, sample_focal_point(s.sys, seed), seed);
    s.t = extract_frame_tensors(s.sys, s.frame);
    return s;
}

}  // namespace

TEST(Newton, ConvergesOntoFocalSet) {
    CliffordSystem sys = fkm_system(3, 2);
    for (std::uint64_t s = 0; s < 10; ++s) {
        FocalPoint p = project_to_Mplus(sys, Rng(s).gaussian(sys.dim()));
        EXPECT_LE(p.residual, 1e-12);
        EXPECT_NEAR(p.x.norm(), 1.0, 1e-12);
        for (const auto& P : sys.operators) EXPECT_NEAR(p.x.dot(P * p.x), 0.0, 1e-12);
        EXPECT_LE(p.iterations, 20);
    }
}

TEST(Newton, Errors) {
    CliffordSystem sys = fkm_system(2, 2);
    try {
        project_to_Mplus(sys, Vec::Zero(sys.dim()));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularJacobian);
    }
    EXPECT_THROW(project_to_Mplus(sys, Vec::Ones(3)), Error);
    try {
        project_to_Mplus(sys, Rng(1).gaussian(sys.dim()), 1e-12, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
    }
}

TEST(Frame, OrthonormalAndAdapted) {
    for (auto [m, k] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {3, 2}, {4, 2}}) {
        Fixture s = make(m, k, 3);
        const DarbouxFrame& f = s.frame;
        Mat B = f.full_basis();
        EXPECT_LT(max_abs(B.transpose() * B - Mat::Identity(f.dim(), f.dim())), 1e-12);
        EXPECT_EQ(f.N(), s.sys.half_dim - m - 1);
        EXPECT_LT(max_abs(s.sys.operators[0] * f.plus_basis + f.plus_basis), 1e-12);
        EXPECT_LT(max_abs(s.sys.operators[0] * f.minus_basis - f.minus_basis), 1e-12);
    }
}

TEST(Frame, OffManifoldRejected) {
    CliffordSystem sys = fkm_system(3, 2);
    Vec x = sample_focal_point(sys, 1);
    x(0) += 1e-6;
    try {
        build_frame(sys, x, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OffManifold);
    }
}

TEST(ShapeOperator, SpectrumAndLinearity) {
    Fixture s = make(3, 2, 7);
    const DarbouxFrame& f = s.frame;
    Rng rng(2);
    for (int j = 0; j < 10; ++j) {
        Vec w = rng.unit(f.m() + 1);
        FocalSpectrum sp = focal_spectrum(shape_operator(f, f.normals * w));
        EXPECT_EQ(sp.plus, 4);
        EXPECT_EQ(sp.zero, 3);
        EXPECT_EQ(sp.minus, 4);
        EXPECT_LT(sp.residual, 1e-12);
    }
    Vec n1 = f.normals.col(1), n2 = f.normals.col(2);
    Mat lhs = shape_operator(f, (n1 + n2) / std::sqrt(2.0));
    Mat rhs = (shape_operator(f, n1) + shape_operator(f, n2)) / std::sqrt(2.0);
    EXPECT_LT(max_abs(lhs - rhs), 1e-13);
    try {
        shape_operator(f, 2.0 * n1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotUnitNormal);
    }
    EXPECT_THROW(shape_operator(f, f.plus_basis.col(0)), Error);
}

TEST(ShapeOperator, SignatureBlockAtE0) {
    Fixture s = make(4, 2, 1);
    Mat S0 = shape_operator(s.frame, s.frame.normals.col(0));
    const int N = s.frame.N();
    Mat expect = Mat::Zero(S0.rows(), S0.cols());
    expect.topLeftCorner(N, N).setIdentity();
    expect.block(N, N, N, N) = -Mat::Identity(N, N);
    EXPECT_LT(max_abs(S0 - expect), 1e-12);
}

TEST(Identities, HoldOnFkmFrames) {
    for (auto [m, k] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {3, 2}, {4, 2}})
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            Fixture s = make(m, k, seed);
            VerificationReport r = verify_focal_identities(s.t, shape_blocks(s.frame), 1e-10);
            EXPECT_TRUE(r.pass) << m << "," << k << " seed " << seed;
        }
}

TEST(Identities, SkipsWithoutEnoughIndices) {
    Fixture s = make(1, 3, 0);
    VerificationReport r = verify_focal_identities(s.t, shape_blocks(s.frame), 1e-10);
    ASSERT_NE(r.find("cubic.pair"), nullptr);
    EXPECT_TRUE(r.find("cubic.pair")->skipped);
    EXPECT_TRUE(r.find("cubic.triple")->skipped);
}

TEST(Identities, ReseedInvariance) {
    // a different frame seed rotates V_+ and V_-; the identities must not care
    CliffordSystem sys = fkm_system(3, 2);
    Vec x = sample_focal_point(sys, 2);
    for (std::uint64_t seed : {1ull, 99ull, 12345ull}) {
        DarbouxFrame f = build_frame(sys, x, seed);
        EXPECT_TRUE(verify_focal_identities(extract_frame_tensors(sys, f), shape_blocks(f), 1e-10).pass);
    }
}

TEST(Identities, SensitiveToPerturbation) {
    Fixture s = make(3, 2, 5);
    FrameTensors bad = s.t;
    bad.Fapa(0, 0, 1) += 1e-3;
    VerificationReport r = verify_focal_identities(bad, shape_blocks(s.frame), 1e-10);
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.value("quadratic.pq_ab"), 1e-5);
    EXPECT_GT(r.value("relations.plus_skew"), 5e-4);
}

TEST(Swap, AntipodalAndDoubleSwap) {
    for (auto [m, k] : std::vector<std::pair<int, int>>{{1, 3}, {3, 2}, {4, 2}})
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            Fixture s = make(m, k, seed);
            VerificationReport r = antipodal_swap_check(s.sys, s.frame, 1e-10, seed);
            EXPECT_TRUE(r.pass) << m << "," << k;
            EXPECT_EQ(r.find("double_swap")->tol, 1e-12);
        }
}

TEST(Slice, FormulaHolds) {
    for (auto [m, k] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {3, 2}, {4, 2}}) {
        Fixture s = make(m, k, 1);
        VerificationReport r = verify_slice_formula(s.sys, make_field(s.sys), s.frame, 100, 4, 1e-10);
        EXPECT_TRUE(r.pass) << m << "," << k;
    }
    Fixture s = make(3, 2, 1);
    VerificationReport r = verify_slice_formula(s.sys, make_field(s.sys), s.frame, 50, 4, 1e-10);
    EXPECT_FALSE(r.find("kernel_value")->skipped);
    Fixture t = make(4, 2, 1);
    r = verify_slice_formula(t.sys, make_field(t.sys), t.frame, 50, 4, 1e-10);
    EXPECT_TRUE(r.find("kernel_value")->skipped);
}
