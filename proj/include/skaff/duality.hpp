#pragma once

#include <utility>
#include <vector>

#include "skaff/evaluate.hpp"
#include "skaff/translation.hpp"

namespace skaff {

/// Coefficients of a tensor over the normalized character basis, one
/// character index per axis, same layout as ScaffoldTensor.
struct CoeffTensor {
    int ell = 0;
    AbelianGroup group;
    std::vector<cplx> entries;
};

struct DualityReport {
    int ell = 0;
    int nodes = 0;
    double scalar = 1.0;
    double max_residual = 0.0;
    double gamma_residual = 0.0;
    bool pass = false;
    double eval_primal_ms = 0.0;
    double eval_dual_ms = 0.0;
    double transform_ms = 0.0;
};

/// Expand a tensor over the character basis (one unitary transform per
/// axis).  Isometric and exactly invertible.
CoeffTensor character_coefficients(const ScaffoldTensor& t, const AbelianGroup& g);

ScaffoldTensor inverse_character_coefficients(const CoeffTensor& c);

/// l2 mass of the coefficients whose character tuple does not multiply to
/// the trivial character.
double gamma_residual(const CoeffTensor& c);

/// Pull back along the cyclic difference map: the output coefficient at
/// (h_1..h_l) is the input coefficient at (h_l h_1^{-1}, h_1 h_2^{-1}, ...)
/// divided by sqrt(|X|).  An isometry on tensors supported on tuples that
/// multiply to the trivial character; rejects input with more off-support
/// mass than tol allows.
CoeffTensor apply_psi(const CoeffTensor& c, double tol = 1e-8);

/// Evaluate a relation-basis diagram and its dual, transform the primal
/// tensor, and compare against the dual tensor scaled by
/// |X|^(n - l/2 - 1/2)  (|X|^(n-1) for order zero).
DualityReport verify_duality(const Diagram& d, const TranslationScheme& ts, double tol = 1e-8,
                             const EvalLimits& lim = {});

/// Dualize a formal combination term by term: (a, d) becomes
/// (a * |X|^nodes(d), dual of d).  No evaluation happens.
std::vector<std::pair<cplx, Diagram>> dualize_combination(const std::vector<std::pair<cplx, Diagram>>& terms,
                                                          int group_size);

} // namespace skaff
