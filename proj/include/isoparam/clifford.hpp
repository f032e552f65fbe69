#pragma once

#include "isoparam/common.hpp"

#include <utility>
#include <vector>

namespace isoparam {

/// q pairwise anticommuting skew-symmetric signed permutation matrices on R^l.
struct CliffordGenerators {
    int module_dim{0};
    std::vector<IMat> generators;
};

/// Symmetric operators P_0..P_m on R^{2l} with P_iP_j + P_jP_i = 2 delta_ij I.
struct CliffordSystem {
    int half_dim{0};
    std::vector<Mat> operators;
    bool exact{false};

    int m() const { return static_cast<int>(operators.size()) - 1; }
    int dim() const { return 2 * half_dim; }
};

struct MultiplicityPair {
    int m1{0};
    long long m2{0};
    int k{0};
    long long l{0};
};

struct PairAnnotation {
    int m1{0};
    int m2{0};
    std::string note;
};

struct PairEnumeration {
    std::vector<MultiplicityPair> pairs;
    std::vector<std::pair<int, int>> open_cases;
    std::vector<PairAnnotation> annotations;
};

int minimal_module_dimension(int q);

/// Irreducible generator set for q generators, on R^{minimal_module_dimension(q)}.
CliffordGenerators irreducible_generators(int q);

CliffordGenerators build_generators(int q, int l);

/// Largest |E_iE_j + E_jE_i + 2 delta_ij I| and |E + E^T| entry; 0 for a valid set.
long generator_defect(const CliffordGenerators& gen);

CliffordSystem system_from_generators(const CliffordGenerators& gen);

VerificationReport verify_clifford_system(const CliffordSystem& sys, double tol);

CliffordSystem rotate_system(const CliffordSystem& sys, const Mat& A, double tol = 1e-10);

/// delta(m): dimension of the irreducible module carrying m - 1 generators.
long long fkm_delta(int m);

MultiplicityPair fkm_pair(int m, int k);

/// System with m + 1 operators on R^{2 k delta(m)}.
CliffordSystem fkm_system(int m, int k);

/// Smallest k giving a positive second multiplicity.
int minimal_k(int m);

/// max_k = 0 emits, for each m, every k up to the first pair with m2 >= 3m - 1.
PairEnumeration enumerate_fkm_pairs(int max_m1, int max_k = 0);

}  // namespace isoparam
