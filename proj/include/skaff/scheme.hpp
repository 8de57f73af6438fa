#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skaff/groups.hpp"

namespace skaff {

/// Dense (d+1)^3 array of structure constants, laid out v[(i*(d+1)+j)*(d+1)+k].
struct ParameterTensor {
    int d = 0;
    std::vector<cplx> values;

    cplx at(int i, int j, int k) const { return values[(static_cast<size_t>(i) * (d + 1) + j) * (d + 1) + k]; }
    cplx& at(int i, int j, int k) { return values[(static_cast<size_t>(i) * (d + 1) + j) * (d + 1) + k]; }
};

/// Spectral data: primitive idempotents and the two eigenmatrices.
/// Present only when the scheme was built by a construction that knows its
/// character theory; never computed by a general eigensolver.
struct EigenData {
    std::vector<std::vector<cplx>> idempotents; // E_0..E_d, each n*n row-major
    std::vector<cplx> P;                        // (d+1)^2 row-major, A_i = sum_j P[j][i] E_j
    std::vector<cplx> Q;                        // (d+1)^2 row-major, E_i = (1/n) sum_j Q[j][i] A_j
    std::vector<int> multiplicities;            // m_i = rank E_i
};

enum class Basis { A, E };

/// Element of the Bose-Mesner algebra as a coefficient vector over one of
/// the two distinguished bases.
struct BMElement {
    Basis basis = Basis::A;
    std::vector<cplx> coeffs;

    static BMElement unit(Basis b, int index, int d);

    /// Pure basis element in scheme-independent form (coefficient vector
    /// is cut after the set index; operations pad with zeros as needed).
    static BMElement pure(Basis b, int index);

    /// The index when this is a pure basis element (one coefficient, equal
    /// to one), or -1.
    int pure_index() const;
};

struct AxiomViolation {
    std::string axiom; // "AS1".."AS4" or "shape"
    std::string detail;
};

/// Commutative association scheme on points {0..size-1} with relation
/// classes R_0..R_d given by 0/1 matrices.
struct Scheme {
    int size = 0;
    int d = 0;
    std::vector<std::vector<int>> relations; // A_0..A_d, each n*n row-major 0/1
    std::vector<int> transpose_class;        // i* with A_i^T = A_{i*}
    std::vector<long long> valencies;        // k_i, row sums
    std::vector<long long> p;                // intersection numbers, (d+1)^3
    std::optional<EigenData> eigen;
    std::optional<std::vector<cplx>> krein;  // q_ijk, (d+1)^3, computed with eigen

    long long p_at(int i, int j, int k) const { return p[(static_cast<size_t>(i) * (d + 1) + j) * (d + 1) + k]; }
    cplx q_at(int i, int j, int k) const { return (*krein)[(static_cast<size_t>(i) * (d + 1) + j) * (d + 1) + k]; }
    bool has_eigen() const { return eigen.has_value(); }
};

/// Check AS1..AS4 on candidate relation matrices; empty result means valid.
std::vector<AxiomViolation> validate_scheme_relations(const std::vector<std::vector<int>>& relations, int size);

/// Build a scheme from relation matrices, or throw ValidationFailure naming
/// the violated axioms.  Intersection numbers are computed here, exactly.
Scheme scheme_from_relations(const std::vector<std::vector<int>>& relations, int size);

/// Attach spectral data (validated: idempotency, completeness, PQ = nI) and
/// derive the Krein parameters.
void attach_eigen_data(Scheme& s, EigenData eigen, double tol = 1e-9);

ParameterTensor intersection_numbers(const Scheme& s);

/// Krein parameters; requires eigen data, else UnsupportedOperation.
ParameterTensor krein_parameters(const Scheme& s);

/// Expand a Bose-Mesner element to its n*n matrix.  E-basis requires eigen
/// data.
std::vector<cplx> bm_to_matrix(const Scheme& s, const BMElement& w);

BMElement bm_convert(const Scheme& s, const BMElement& w, Basis target);
BMElement bm_multiply(const Scheme& s, const BMElement& a, const BMElement& b);
BMElement bm_hadamard(const Scheme& s, const BMElement& a, const BMElement& b);

/// True iff every relation matrix is symmetric and the intersection numbers
/// follow the triangle pattern in the given class order: p[i][j][k] = 0
/// whenever one index exceeds the sum of the other two, and nonzero whenever
/// one index equals that sum.
bool check_p_polynomial(const Scheme& s);

/// Same pattern on the Krein parameters (zero test at tolerance); requires
/// eigen data.
bool check_q_polynomial(const Scheme& s, double tol = 1e-9);

/// Scheme with relation classes relabeled by perm (perm[i] = old index of
/// new class i; perm[0] must be 0).  Eigen data does not transfer.
Scheme reorder_classes(const Scheme& s, const std::vector<int>& perm);

} // namespace skaff
