#include "isoparam/fkm.hpp"
#include "isoparam/focal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace isoparam;

namespace {

const std::vector<std::pair<int, int>> kSystems = {{1, 3}, {2, 2}, {3, 2}, {4, 2}};

}  // namespace

TEST(Munzner, PdesHoldOnTestSystems) {
    for (auto [m, k] : kSystems) {
        CartanMunznerField F = make_field(fkm_system(m, k));
        VerificationReport r = verify_munzner_pdes(F, 200, 11, 1e-9);
        EXPECT_TRUE(r.pass) << m << "," << k;
        EXPECT_LT(r.value("gradient_norm"), 1e-12);
        EXPECT_LT(r.value("laplacian"), 1e-12);
    }
}

TEST(Munzner, FiniteDifferenceGradientAndHessian) {
    CartanMunznerField F = make_field(fkm_system(3, 2));
    Rng rng(5);
    Vec x = rng.gaussian(F.system.dim());
    FieldEval e = eval_field(F, x);
    const double h = 1e-5;
    for (int i = 0; i < x.size(); ++i) {
        Vec d = Vec::Zero(x.size());
        d(i) = h;
        double fd = (field_value(F, x + d) - field_value(F, x - d)) / (2 * h);
        EXPECT_NEAR(fd, e.gradient(i), 1e-6 * (1 + std::abs(fd)));
        Vec gd = (eval_field(F, x + d).gradient - eval_field(F, x - d).gradient) / (2 * h);
        EXPECT_LT((gd - e.hessian.col(i)).cwiseAbs().maxCoeff(), 1e-5 * (1 + gd.norm()));
    }
}

TEST(Munzner, HomogeneityAndEuler) {
    CartanMunznerField F = make_field(fkm_system(4, 2));
    Vec x = Rng(9).gaussian(F.system.dim());
    double f = field_value(F, x);
    EXPECT_NEAR(field_value(F, 1.7 * x), std::pow(1.7, 4) * f, 1e-10 * (1 + std::abs(f)));
    EXPECT_NEAR(eval_field(F, x).gradient.dot(x), 4 * f, 1e-10 * (1 + std::abs(f)));
}

TEST(Munzner, DroppedOperatorBreaksLaplacianOnly) {
    CliffordSystem sys = fkm_system(3, 2);
    CartanMunznerField F = make_field(sys);
    F.system.operators.pop_back();
    VerificationReport r = verify_munzner_pdes(F, 50, 1, 1e-9);
    EXPECT_FALSE(r.pass);
    EXPECT_LT(r.value("gradient_norm"), 1e-12);
    EXPECT_GT(r.value("laplacian"), 1e-2);
}

TEST(Munzner, PerturbedOperatorBreaksGradient) {
    CliffordSystem sys = fkm_system(3, 2);
    Mat E = Rng(3).gaussian(sys.dim(), sys.dim());
    sys.operators[0] += 1e-2 * (E + E.transpose());
    VerificationReport r = verify_munzner_pdes(make_field(sys), 50, 1, 1e-9);
    EXPECT_GT(r.value("gradient_norm"), 1e-4);
}

TEST(Munzner, ReversedOrientationFlagged) {
    CartanMunznerField F = make_field(fkm_system(3, 2));
    std::swap(F.m1, F.m2);
    VerificationReport r = verify_munzner_pdes(F, 20, 1, 1e-9);
    EXPECT_FALSE(r.pass);
    EXPECT_TRUE(r.has_flag("orientation_flip"));
}

TEST(Munzner, Errors) {
    CartanMunznerField F = make_field(fkm_system(2, 2));
    EXPECT_THROW(eval_field(F, Vec::Zero(3)), Error);
    F.m2 = 0;
    try {
        verify_munzner_pdes(F, 1, 0, 1e-9);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidMultiplicities);
    }
}

TEST(Tube, ConstantOnTubes) {
    CartanMunznerField F = make_field(fkm_system(3, 2));
    for (double t : {0.1, std::numbers::pi / 8, std::numbers::pi / 4, 0.5}) {
        TubeStats s = tube_constancy(F, 5, 5, t, 2);
        EXPECT_LT(s.spread, 1e-12);
        EXPECT_NEAR(s.mean, std::cos(4 * t), 1e-12) << t;
    }
    EXPECT_THROW(tube_constancy(F, 1, 1, 4.0, 0), Error);
}

TEST(Tube, CurvaturesAtEighthTurn) {
    CliffordSystem sys = fkm_system(3, 2);
    CartanMunznerField F = make_field(sys);
    Vec x = sample_focal_point(sys, 4);
    Vec n = (sys.operators[1] * x + sys.operators[2] * x) / std::sqrt(2.0);
    LevelSpectrum s = level_shape_spectrum(F, make_tube_point(x, n, std::numbers::pi / 8), 1e-9);
    ASSERT_EQ(s.clusters.size(), 4u);
    const double c = 1 + std::sqrt(2.0);
    const std::vector<double> want = {-c, 1 - std::sqrt(2.0), std::sqrt(2.0) - 1, c};
    const std::vector<int> mult = {3, 4, 3, 4};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(s.clusters[i].curvature, want[i], 1e-9);
        EXPECT_EQ(s.clusters[i].multiplicity, mult[i]);
    }
    EXPECT_TRUE(s.multiplicities_match);
    EXPECT_LT(s.relation_residual, 1e-9);
    EXPECT_LT(s.spacing_residual, 1e-9);
}

TEST(Tube, FocalRadiusAndDivergence) {
    CliffordSystem sys = fkm_system(2, 2);
    CartanMunznerField F = make_field(sys);
    Vec x = sample_focal_point(sys, 1);
    Vec n = sys.operators[0] * x;
    try {
        level_shape_spectrum(F, make_tube_point(x, n, std::numbers::pi / 4), 1e-9);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FocalRadius);
    }
    double prev = 0.0;
    for (double t : {1e-1, 1e-2, 1e-3}) {
        LevelSpectrum s = level_shape_spectrum(F, make_tube_point(x, n, t), 1e-9);
        EXPECT_LT(s.clusters.front().curvature, prev);
        EXPECT_NEAR(s.clusters.front().curvature, -1.0 / std::tan(t), 1e-6 / t);
        prev = s.clusters.front().curvature;
    }
    EXPECT_LT(prev, -500.0);
}
