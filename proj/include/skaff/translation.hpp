#pragma once

#include <optional>
#include <vector>

#include "skaff/groups.hpp"
#include "skaff/scheme.hpp"

namespace skaff {

/// Scheme built from a partition of a finite abelian group into connection
/// sets, with (x,y) in R_i iff y-x lands in set i.  Such schemes carry full
/// spectral data: every group character is a common eigenvector of the
/// relation matrices, and grouping characters by their eigenvalue vectors
/// yields one class per relation class.
struct TranslationScheme {
    AbelianGroup group;
    Scheme scheme;                               // with eigen data attached
    std::vector<std::vector<int>> classes;       // connection sets, element indices
    std::vector<std::vector<int>> eigen_classes; // character classes, character indices
};

/// Build and validate a translation scheme.
///
/// Character classes are ordered with the trivial character's class first
/// and the rest by first occurrence in the enumeration, unless overridden:
/// `expected_P` forces the class order whose eigenvalue rows match it
/// (used when dualizing, to pin the idempotent indexing), and
/// `forced_eigen_classes` replays an explicit grouping (used when loading
/// a serialized scheme).  Both are validated against the computed
/// eigenvalues.
TranslationScheme translation_scheme(const AbelianGroup& g, const std::vector<std::vector<int>>& sets,
                                     const std::optional<std::vector<cplx>>& expected_P = std::nullopt,
                                     const std::optional<std::vector<std::vector<int>>>& forced_eigen_classes =
                                         std::nullopt,
                                     double tol = 1e-9);

/// The spectral data of the embedded scheme.
const EigenData& eigen_data(const TranslationScheme& ts);

/// Scheme on the character group whose connection sets are the character
/// classes of `ts`, with class order forced so that its first eigenmatrix
/// equals Q of `ts` (and its second equals P).
TranslationScheme dual_scheme(const TranslationScheme& ts);

} // namespace skaff
