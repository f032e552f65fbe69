#pragma once

#include "isoparam/fkm.hpp"

#include <cstdint>
#include <vector>

namespace isoparam {

struct FocalPoint {
    Vec x;
    int iterations{0};
    double residual{0.0};
};

/// Newton projection onto {P_i x . x = 0, |x| = 1} using minimum-norm steps.
FocalPoint project_to_Mplus(const CliffordSystem& sys, const Vec& x0, double tol = 1e-12,
                            int max_iter = 50);

/// Seeded point of M_+ obtained by projecting a Gaussian sample.
Vec sample_focal_point(const CliffordSystem& sys, std::uint64_t seed);

/// Frame at a point of M_+. Columns are frame vectors in R^{2l}.
struct DarbouxFrame {
    std::vector<Mat> Q;  // operators used to build the frame
    Vec x;
    Mat normals;      // e_0..e_m
    Mat osculating;   // e_{m+1}..e_{2m}, e_{a+m} = Q_a Q_0 x
    Mat plus_basis;   // V_+, Q_0 = -1
    Mat minus_basis;  // V_-, Q_0 = +1
    std::uint64_t seed{0};

    int m() const { return static_cast<int>(normals.cols()) - 1; }
    int N() const { return static_cast<int>(plus_basis.cols()); }
    int dim() const { return static_cast<int>(x.size()); }
    /// Tangent basis ordered V_+, V_-, V_0.
    Mat tangent_basis() const;
    /// x, e_0..e_m, e_{m+1}..e_{2m}, V_+, V_-.
    Mat full_basis() const;
};

DarbouxFrame build_frame(const CliffordSystem& sys, const Vec& x, std::uint64_t seed);

/// Frame with the given vectors, validated only for shape.
DarbouxFrame assemble_frame(const std::vector<Mat>& Q, const Vec& x, const Mat& normals,
                            const Mat& osculating, const Mat& plus, const Mat& minus);

/// S_n u = -tangential(P u) with P = sum t^i Q_i for n = sum t^i Q_i x.
Mat shape_operator(const DarbouxFrame& frame, const Vec& normal);

/// Simple three-index array, row-major in (i, j, k).
struct Tensor3 {
    int d0{0}, d1{0}, d2{0};
    std::vector<double> data;

    Tensor3() = default;
    Tensor3(int a, int b, int c) : d0(a), d1(b), d2(c), data(static_cast<std::size_t>(a) * b * c, 0.0) {}
    double& operator()(int i, int j, int k) { return data[(static_cast<std::size_t>(i) * d1 + j) * d2 + k]; }
    double operator()(int i, int j, int k) const {
        return data[(static_cast<std::size_t>(i) * d1 + j) * d2 + k];
    }
};

/// Coefficient arrays at a focal point. Index order follows the symbol:
/// Fapa(alpha, p, a), Fmpa(mu, p, a), Fmaa(mu, alpha, a), Fmap(mu, alpha, p), L(a, b, c),
/// where p runs over 0..m-1 for e_{m+1}..e_{2m} and a over 0..m-1 for e_1..e_m.
struct FrameTensors {
    int m{0};
    int N{0};
    Tensor3 Fapa;
    Tensor3 Fmpa;
    Tensor3 Fmaa;
    Tensor3 Fmap;
    Tensor3 L;
};

FrameTensors extract_frame_tensors(const CliffordSystem& sys, const DarbouxFrame& frame);

struct ShapeBlocks {
    Mat A;  // N x N, V_- -> V_+
    Mat B;  // N x m, V_0 -> V_+
    Mat C;  // N x m, V_0 -> V_-
    Mat S;  // full operator in the tangent basis
};

/// Blocks of S_{e_a}, a = 1..m.
std::vector<ShapeBlocks> shape_blocks(const DarbouxFrame& frame);

/// Residuals of the tensor relations between the e_p and e_a slots and skewness of L.
VerificationReport tensor_relations(const FrameTensors& t, double tol);

VerificationReport verify_focal_identities(const FrameTensors& t, const std::vector<ShapeBlocks>& blocks,
                                           double tol);

/// Spectrum of S_n clustered to {1, 0, -1}; returns residual and counts.
struct FocalSpectrum {
    int plus{0};
    int zero{0};
    int minus{0};
    double residual{0.0};
};

FocalSpectrum focal_spectrum(const Mat& S);

/// Frame at e_0 obtained by exchanging x with e_0 and e_a with e_{a+m}.
DarbouxFrame swap_frame(const DarbouxFrame& frame);

VerificationReport antipodal_swap_check(const CliffordSystem& sys, const DarbouxFrame& frame, double tol,
                                        std::uint64_t seed = 0);

VerificationReport verify_slice_formula(const CliffordSystem& sys, const CartanMunznerField& F,
                                        const DarbouxFrame& frame, std::size_t samples, std::uint64_t seed,
                                        double tol);

}  // namespace isoparam
