#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skaff/diagram.hpp"
#include "skaff/scheme.hpp"

namespace skaff {

/// Dense tensor indexed by one point of X per root, row-major with the
/// first root slowest.  Order zero holds a single scalar.
struct ScaffoldTensor {
    int ell = 0;
    int base_size = 1;
    std::vector<cplx> entries;
};

struct EvalLimits {
    long long max_entries = 10000000;      // output tensor and assignment space
    long long max_intermediate = 10000000; // per contraction step
};

/// Sum over all node assignments of the product of edge-weight entries,
/// accumulated at the root index tuple.
ScaffoldTensor eval_bruteforce(const Diagram& d, const Scheme& s, const EvalLimits& lim = {});

/// Same value, computed by eliminating non-root nodes one at a time.  The
/// order, when given, must list every non-root node exactly once.
ScaffoldTensor eval_elimination(const Diagram& d, const Scheme& s,
                                const std::optional<std::vector<std::string>>& order = std::nullopt,
                                const EvalLimits& lim = {});

/// Greedy minimum-degree order over the non-root nodes, ties broken by
/// node name.
std::vector<std::string> elimination_order(const Diagram& d);

/// Hermitian inner product, conjugate-linear in the second argument.
cplx inner_product(const ScaffoldTensor& a, const ScaffoldTensor& b);

} // namespace skaff
