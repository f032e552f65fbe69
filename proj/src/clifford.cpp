#include "isoparam/clifford.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <set>

namespace isoparam {

namespace {

IMat pauli_x() {
    IMat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

IMat pauli_z() {
    IMat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

IMat rot_j() {
    IMat m(2, 2);
    m << 0, -1, 1, 0;
    return m;
}

IMat id(int n) { return IMat::Identity(n, n); }

IMat kron(const IMat& a, const IMat& b) { return Eigen::kroneckerProduct(a, b).eval(); }

IMat kron(const IMat& a, const IMat& b, const IMat& c) { return kron(kron(a, b), c); }

/// Adjoins one generator by tensoring: {J x I} u {X x E_i}.
std::vector<IMat> double_up(const std::vector<IMat>& gens, int dim) {
    std::vector<IMat> out;
    out.push_back(kron(rot_j(), id(dim)));
    for (const auto& e : gens) out.push_back(kron(pauli_x(), e));
    return out;
}

std::vector<IMat> octonion_block() {
    IMat I = id(2), X = pauli_x(), Z = pauli_z(), J = rot_j();
    std::vector<IMat> left = {kron(J, I), kron(X, J), kron(Z, J)};
    std::vector<IMat> right = {kron(J, X), kron(J, Z), kron(I, J)};
    std::vector<IMat> out;
    out.push_back(kron(J, I, I));
    for (const auto& l : left) out.push_back(kron(X, l));
    for (const auto& r : right) out.push_back(kron(Z, r));
    return out;
}

struct SignedPerm {
    std::vector<int> row;
    std::vector<int> sign;
};

bool as_signed_perm(const IMat& m, SignedPerm& out) {
    const int n = static_cast<int>(m.rows());
    out.row.assign(n, -1);
    out.sign.assign(n, 0);
    std::vector<char> used(n, 0);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            int v = m(i, j);
            if (v == 0) continue;
            if ((v != 1 && v != -1) || out.row[j] != -1 || used[i]) return false;
            out.row[j] = i;
            out.sign[j] = v;
            used[i] = 1;
        }
        if (out.row[j] == -1) return false;
    }
    return true;
}

long perm_defect(const std::vector<SignedPerm>& ps) {
    long worst = 0;
    const std::size_t q = ps.size();
    for (std::size_t a = 0; a < q; ++a) {
        const auto& A = ps[a];
        const int n = static_cast<int>(A.row.size());
        for (int j = 0; j < n; ++j) {
            // column j of E + E^T holds sign[j] at row[j] and, from the transpose,
            // sign[k] at row k where row[k] == j
            int i = A.row[j];
            long entry = A.sign[j] + (A.row[i] == j ? A.sign[i] : 0);
            worst = std::max(worst, std::labs(entry));
            if (A.row[i] != j) worst = std::max(worst, 1L);
        }
        for (std::size_t b = a; b < q; ++b) {
            const auto& B = ps[b];
            for (int j = 0; j < n; ++j) {
                // column j of AB + BA + 2 delta_ab I, at most three nonzero slots
                int r1 = A.row[B.row[j]];
                long s1 = B.sign[j] * A.sign[B.row[j]];
                int r2 = B.row[A.row[j]];
                long s2 = A.sign[j] * B.sign[A.row[j]];
                long target = (a == b) ? 2 : 0;
                long at_j = (r1 == j ? s1 : 0) + (r2 == j ? s2 : 0) + target;
                worst = std::max(worst, std::labs(at_j));
                if (r1 != j) worst = std::max(worst, std::labs(s1 + (r2 == r1 ? s2 : 0)));
                if (r2 != j && r2 != r1) worst = std::max(worst, std::labs(s2));
            }
        }
    }
    return worst;
}

long dense_defect(const std::vector<IMat>& gens) {
    long worst = 0;
    for (std::size_t a = 0; a < gens.size(); ++a) {
        const IMat& A = gens[a];
        IMat skew = A + A.transpose();
        if (skew.size()) worst = std::max<long>(worst, skew.cwiseAbs().maxCoeff());
        for (std::size_t b = a; b < gens.size(); ++b) {
            IMat s = A * gens[b] + gens[b] * A;
            if (a == b) s += 2 * id(static_cast<int>(A.rows()));
            if (s.size()) worst = std::max<long>(worst, s.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

}  // namespace

CliffordGenerators irreducible_generators(int q) {
    if (q < 0) throw Error(ErrorCode::InvalidArgument, "generator count must be nonnegative");
    CliffordGenerators out;
    if (q == 0) {
        out.module_dim = 1;
        return out;
    }
    if (q == 1) {
        out.module_dim = 2;
        out.generators = {rot_j()};
        return out;
    }
    if (q <= 3) {
        IMat I = id(2), X = pauli_x(), Z = pauli_z(), J = rot_j();
        std::vector<IMat> all = {kron(J, I), kron(X, J), kron(Z, J)};
        out.module_dim = 4;
        out.generators.assign(all.begin(), all.begin() + q);
        return out;
    }
    if (q <= 7) {
        auto all = octonion_block();
        out.module_dim = 8;
        out.generators.assign(all.begin(), all.begin() + q);
        return out;
    }
    // q >= 8: the eight generators on R^16, then periodicity by tensoring with them.
    std::vector<IMat> eight = double_up(octonion_block(), 8);
    if (q == 8) {
        out.module_dim = 16;
        out.generators = eight;
        return out;
    }
    IMat omega = id(16);
    for (const auto& g : eight) omega = omega * g;
    CliffordGenerators inner = irreducible_generators(q - 8);
    out.module_dim = inner.module_dim * 16;
    for (const auto& e : inner.generators) out.generators.push_back(kron(e, omega));
    for (const auto& g : eight) out.generators.push_back(kron(id(inner.module_dim), g));
    return out;
}

long generator_defect(const CliffordGenerators& gen) {
    std::vector<SignedPerm> ps(gen.generators.size());
    bool perm = true;
    for (std::size_t i = 0; i < gen.generators.size() && perm; ++i) {
        const IMat& g = gen.generators[i];
        if (g.rows() != gen.module_dim || g.cols() != gen.module_dim) return -1;
        perm = as_signed_perm(g, ps[i]);
    }
    return perm ? perm_defect(ps) : dense_defect(gen.generators);
}

int minimal_module_dimension(int q) {
    CliffordGenerators gen = irreducible_generators(q);
    if (generator_defect(gen) != 0)
        throw Error(ErrorCode::DimensionNotAdmissible, "construction failed certification");
    return gen.module_dim;
}

CliffordGenerators build_generators(int q, int l) {
    CliffordGenerators base = irreducible_generators(q);
    if (l <= 0 || l % base.module_dim != 0)
        throw Error(ErrorCode::DimensionNotAdmissible,
                    "l=" + std::to_string(l) + " is not a multiple of " + std::to_string(base.module_dim));
    int copies = l / base.module_dim;
    CliffordGenerators out;
    out.module_dim = l;
    for (const auto& e : base.generators) out.generators.push_back(kron(id(copies), e));
    return out;
}

CliffordSystem system_from_generators(const CliffordGenerators& gen) {
    if (generator_defect(gen) != 0)
        throw Error(ErrorCode::ShapeMismatch, "generators violate the Clifford relations");
    const int l = gen.module_dim;
    CliffordSystem sys;
    sys.half_dim = l;
    sys.exact = true;
    Mat I = Mat::Identity(l, l);
    Mat p0 = Mat::Zero(2 * l, 2 * l);
    p0.topLeftCorner(l, l) = I;
    p0.bottomRightCorner(l, l) = -I;
    Mat p1 = Mat::Zero(2 * l, 2 * l);
    p1.topRightCorner(l, l) = I;
    p1.bottomLeftCorner(l, l) = I;
    sys.operators = {p0, p1};
    for (const auto& e : gen.generators) {
        Mat p = Mat::Zero(2 * l, 2 * l);
        Mat ed = e.cast<double>();
        p.topRightCorner(l, l) = ed;
        p.bottomLeftCorner(l, l) = -ed;
        sys.operators.push_back(p);
    }
    return sys;
}

VerificationReport verify_clifford_system(const CliffordSystem& sys, double tol) {
    const int n = sys.dim();
    for (const auto& p : sys.operators)
        if (p.rows() != n || p.cols() != n)
            throw Error(ErrorCode::ShapeMismatch, "operator side differs from 2l");
    VerificationReport rep;
    rep.check = "clifford_system";
    double sym = 0.0, orth = 0.0, anti = 0.0;
    const Mat I = Mat::Identity(n, n);
    const std::size_t count = sys.operators.size();
    for (std::size_t i = 0; i < count; ++i) {
        const Mat& p = sys.operators[i];
        sym = std::max(sym, max_abs(p - p.transpose()));
        orth = std::max(orth, max_abs(p.transpose() * p - I));
        for (std::size_t j = i + 1; j < count; ++j) {
            const Mat& q = sys.operators[j];
            anti = std::max(anti, max_abs(p * q + q * p));
        }
        anti = std::max(anti, max_abs(2.0 * p * p - 2.0 * I));
    }
    rep.add("symmetry", sym, tol);
    rep.add("orthogonality", orth, tol);
    rep.add("anticommutation", anti, tol);
    return rep;
}

CliffordSystem rotate_system(const CliffordSystem& sys, const Mat& A, double tol) {
    const int k = static_cast<int>(sys.operators.size());
    if (A.rows() != k || A.cols() != k)
        throw Error(ErrorCode::ShapeMismatch, "rotation must be (m+1)x(m+1)");
    double orth = max_abs(A.transpose() * A - Mat::Identity(k, k));
    double det = A.determinant();
    if (orth > tol || std::abs(det - 1.0) > tol)
        throw Error(ErrorCode::NotSpecialOrthogonal,
                    "orthogonality defect " + std::to_string(orth) + ", det " + std::to_string(det));
    CliffordSystem out;
    out.half_dim = sys.half_dim;
    out.exact = false;
    for (int i = 0; i < k; ++i) {
        Mat q = Mat::Zero(sys.dim(), sys.dim());
        for (int j = 0; j < k; ++j)
            if (A(j, i) != 0.0) q += A(j, i) * sys.operators[j];
        out.operators.push_back(q);
    }
    return out;
}

long long fkm_delta(int m) {
    if (m < 1) throw Error(ErrorCode::InvalidMultiplicities, "m must be positive");
    static constexpr long long base[8] = {1, 2, 4, 4, 8, 8, 8, 8};
    const int q = m - 1;
    if (q / 8 > 14) throw Error(ErrorCode::InvalidArgument, "m too large for 64-bit module dimensions");
    return base[q % 8] << (4 * (q / 8));
}

MultiplicityPair fkm_pair(int m, int k) {
    if (m < 1 || k < 1)
        throw Error(ErrorCode::InvalidMultiplicities, "m and k must be positive");
    long long delta = fkm_delta(m);
    MultiplicityPair p;
    p.m1 = m;
    p.k = k;
    p.l = k * delta;
    p.m2 = p.l - m - 1;
    if (p.m2 < 1)
        throw Error(ErrorCode::InvalidMultiplicities,
                    "m2 = " + std::to_string(k) + "*" + std::to_string(delta) + " - " +
                        std::to_string(m) + " - 1 = " + std::to_string(p.m2));
    return p;
}

CliffordSystem fkm_system(int m, int k) {
    MultiplicityPair p = fkm_pair(m, k);
    if (p.l > (1 << 16)) throw Error(ErrorCode::DimensionNotAdmissible, "l = " + std::to_string(p.l) + " is too large to build");
    return system_from_generators(build_generators(m - 1, static_cast<int>(p.l)));
}

int minimal_k(int m) {
    long long delta = fkm_delta(m);
    return static_cast<int>((m + 1) / delta + 1);
}

PairEnumeration enumerate_fkm_pairs(int max_m1, int max_k) {
    if (max_m1 < 1) throw Error(ErrorCode::InvalidArgument, "max_m1 must be positive");
    PairEnumeration out;
    std::set<std::pair<int, int>> open;
    for (int m = 1; m <= max_m1; ++m) {
        long long delta = fkm_delta(m);
        for (int k = minimal_k(m);; ++k) {
            if (max_k > 0 && k > max_k) break;
            MultiplicityPair p{m, k * delta - m - 1, k, k * delta};
            out.pairs.push_back(p);
            long long lo = std::min<long long>(p.m1, p.m2), hi = std::max<long long>(p.m1, p.m2);
            if (lo >= 3 && hi < 3 * lo - 1) open.insert({lo, hi});
            if (max_k == 0 && p.m2 >= 3 * m - 1) break;
        }
    }
    out.open_cases.assign(open.begin(), open.end());
    out.annotations.push_back({4, 5, "not of FKM type; not produced by the multiplicity formula"});
    out.annotations.push_back({2, 2, "not of FKM type; homogeneous example"});
    return out;
}

}  // namespace isoparam
