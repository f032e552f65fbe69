#pragma once

#include "isoparam/clifford.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace isoparam {

/// F(x) = sign * (|x|^4 - 2 sum_i <P_i x, x>^2) with declared multiplicities.
struct CartanMunznerField {
    CliffordSystem system;
    double sign{1.0};
    int m1{0};
    int m2{0};
};

CartanMunznerField make_field(const CliffordSystem& sys);

struct FieldEval {
    double value{0.0};
    Vec gradient;
    Mat hessian;
    double laplacian{0.0};
};

FieldEval eval_field(const CartanMunznerField& F, const Vec& x);
double field_value(const CartanMunznerField& F, const Vec& x);

VerificationReport verify_munzner_pdes(const CartanMunznerField& F, std::size_t samples,
                                       std::uint64_t seed, double tol);

struct TubePoint {
    Vec base;
    Vec normal;
    double t{0.0};
    Vec point;
};

TubePoint make_tube_point(const Vec& base, const Vec& normal, double t);

struct TubeStats {
    double mean{0.0};
    double spread{0.0};
    double min{0.0};
    double max{0.0};
    std::size_t count{0};
};

TubeStats tube_constancy(const CartanMunznerField& F, std::size_t bases, std::size_t normals,
                         double t, std::uint64_t seed);

struct CurvatureCluster {
    double curvature{0.0};
    int multiplicity{0};
};

struct LevelSpectrum {
    std::vector<CurvatureCluster> clusters;  // sorted by curvature
    std::vector<double> targets;             // sorted cot values
    std::vector<int> target_multiplicities;
    double target_residual{0.0};
    bool multiplicities_match{false};
    double relation_residual{0.0};
    double spacing_residual{0.0};
};

/// Principal curvatures of the level hypersurface through a tube point,
/// oriented by the unit normal pointing away from M_+.
LevelSpectrum level_shape_spectrum(const CartanMunznerField& F, const TubePoint& p, double tol,
                                   double cluster_gap = 1e-6);

/// Raw shape operator on the level hypersurface tangent space, in an orthonormal basis.
Mat level_shape_operator(const CartanMunznerField& F, const Vec& y);

}  // namespace isoparam
