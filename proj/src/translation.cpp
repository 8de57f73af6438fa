#include "skaff/translation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "skaff/errors.hpp"

namespace skaff {

namespace {

// Invert a small complex matrix by Gauss-Jordan with partial pivoting.
std::vector<cplx> invert(std::vector<cplx> m, int n) {
    std::vector<cplx> inv(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i) * n + i] = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[static_cast<size_t>(r) * n + col]) > std::abs(m[static_cast<size_t>(piv) * n + col]))
                piv = r;
        if (std::abs(m[static_cast<size_t>(piv) * n + col]) < 1e-12)
            fail(ErrorKind::ValidationFailure, "eigenvalue matrix is singular");
        if (piv != col)
            for (int c = 0; c < n; ++c) {
                std::swap(m[static_cast<size_t>(piv) * n + c], m[static_cast<size_t>(col) * n + c]);
                std::swap(inv[static_cast<size_t>(piv) * n + c], inv[static_cast<size_t>(col) * n + c]);
            }
        cplx scale = m[static_cast<size_t>(col) * n + col];
        for (int c = 0; c < n; ++c) {
            m[static_cast<size_t>(col) * n + c] /= scale;
            inv[static_cast<size_t>(col) * n + c] /= scale;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            cplx f = m[static_cast<size_t>(r) * n + col];
            if (f == cplx(0.0)) continue;
            for (int c = 0; c < n; ++c) {
                m[static_cast<size_t>(r) * n + c] -= f * m[static_cast<size_t>(col) * n + c];
                inv[static_cast<size_t>(r) * n + c] -= f * inv[static_cast<size_t>(col) * n + c];
            }
        }
    }
    return inv;
}

} // namespace

TranslationScheme translation_scheme(const AbelianGroup& g, const std::vector<std::vector<int>>& sets,
                                     const std::optional<std::vector<cplx>>& expected_P,
                                     const std::optional<std::vector<std::vector<int>>>& forced_eigen_classes,
                                     double tol) {
    int n = g.size();
    if (sets.empty()) fail(ErrorKind::ValidationFailure, "no connection sets given");
    int d = static_cast<int>(sets.size()) - 1;

    std::vector<int> set_of(n, -1);
    for (int i = 0; i <= d; ++i) {
        if (sets[i].empty()) fail(ErrorKind::ValidationFailure, "connection set " + std::to_string(i) + " is empty");
        for (int z : sets[i]) {
            if (z < 0 || z >= n) fail(ErrorKind::ValidationFailure, "connection set entry out of range");
            if (set_of[z] >= 0)
                fail(ErrorKind::ValidationFailure, "element appears in two connection sets; not a partition");
            set_of[z] = i;
        }
    }
    for (int z = 0; z < n; ++z)
        if (set_of[z] < 0) fail(ErrorKind::ValidationFailure, "connection sets do not cover the group");
    if (sets[0].size() != 1 || sets[0][0] != g.identity_index())
        fail(ErrorKind::ValidationFailure, "connection set 0 must be exactly the identity");

    std::vector<std::vector<int>> rel(d + 1, std::vector<int>(static_cast<size_t>(n) * n, 0));
    for (int x = 0; x < n; ++x) {
        int xinv = g.inverse_index(x);
        for (int y = 0; y < n; ++y) {
            int z = g.multiply_index(y, xinv);
            rel[set_of[z]][static_cast<size_t>(x) * n + y] = 1;
        }
    }

    TranslationScheme ts{g, scheme_from_relations(rel, n), {}, {}};
    ts.classes.resize(d + 1);
    for (int i = 0; i <= d; ++i) {
        ts.classes[i] = sets[i];
        std::sort(ts.classes[i].begin(), ts.classes[i].end());
    }

    // Eigenvalue vector of each character across the relation classes:
    // entry i is the conjugated character sum over connection set i.
    auto chars = character_table(g);
    std::vector<std::vector<cplx>> evec(n, std::vector<cplx>(d + 1, 0.0));
    for (int t = 0; t < n; ++t)
        for (int z = 0; z < n; ++z) evec[t][set_of[z]] += std::conj(chars[static_cast<size_t>(t) * n + z]);

    // Character sums over full orbits are often exact integers; shave the
    // trig roundoff so those print and compare cleanly.  Irrational sums
    // (golden ratio and friends) pass through untouched.
    auto snap = [](double x) {
        double r = std::round(x) + 0.0; // +0.0 keeps the sign bit off zero
        return std::abs(x - r) < 1e-12 ? r : x;
    };
    for (auto& row : evec)
        for (auto& z : row) z = {snap(z.real()), snap(z.imag())};

    auto rows_match = [&](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        for (int i = 0; i <= d; ++i)
            if (std::abs(a[i] - b[i]) > tol) return false;
        return true;
    };

    std::vector<std::vector<int>> eig;
    if (forced_eigen_classes) {
        eig = *forced_eigen_classes;
        if (static_cast<int>(eig.size()) != d + 1)
            fail(ErrorKind::ValidationFailure, "character class count does not match the relation class count");
        std::vector<int> owner(n, -1);
        for (int j = 0; j <= d; ++j) {
            if (eig[j].empty())
                fail(ErrorKind::ValidationFailure, "character class " + std::to_string(j) + " is empty");
            for (int t : eig[j]) {
                if (t < 0 || t >= n || owner[t] >= 0)
                    fail(ErrorKind::ValidationFailure, "character classes do not partition the characters");
                owner[t] = j;
                if (!rows_match(evec[t], evec[eig[j][0]]))
                    fail(ErrorKind::ValidationFailure, "character class " + std::to_string(j) +
                                                            " mixes distinct eigenvalue vectors");
            }
        }
        for (int t = 0; t < n; ++t)
            if (owner[t] < 0) fail(ErrorKind::ValidationFailure, "character classes do not cover the characters");
        if (owner[0] != 0) fail(ErrorKind::ValidationFailure, "the trivial character must land in class 0");
    } else {
        for (int t = 0; t < n; ++t) {
            bool placed = false;
            for (auto& cls : eig)
                if (rows_match(evec[t], evec[cls[0]])) {
                    cls.push_back(t);
                    placed = true;
                    break;
                }
            if (!placed) eig.push_back({t});
        }
        if (static_cast<int>(eig.size()) != d + 1) {
            std::ostringstream msg;
            msg << "expected " << d + 1 << " character classes, found " << eig.size();
            fail(ErrorKind::ValidationFailure, msg.str());
        }
        if (expected_P) {
            if (expected_P->size() != static_cast<size_t>(d + 1) * (d + 1))
                fail(ErrorKind::ValidationFailure, "expected eigenvalue matrix has wrong shape");
            std::vector<std::vector<int>> ordered(d + 1);
            std::vector<bool> used(d + 1, false);
            for (int j = 0; j <= d; ++j) {
                std::vector<cplx> row(expected_P->begin() + static_cast<size_t>(j) * (d + 1),
                                      expected_P->begin() + static_cast<size_t>(j + 1) * (d + 1));
                int hit = -1;
                for (int c = 0; c <= d; ++c)
                    if (!used[c] && rows_match(evec[eig[c][0]], row)) {
                        hit = c;
                        break;
                    }
                if (hit < 0)
                    fail(ErrorKind::ValidationFailure,
                         "no character class matches requested eigenvalue row " + std::to_string(j));
                used[hit] = true;
                ordered[j] = eig[hit];
            }
            eig = std::move(ordered);
        }
    }
    for (auto& cls : eig) std::sort(cls.begin(), cls.end());
    ts.eigen_classes = std::move(eig);

    EigenData ed;
    ed.P.assign(static_cast<size_t>(d + 1) * (d + 1), 0.0);
    for (int j = 0; j <= d; ++j)
        for (int i = 0; i <= d; ++i) ed.P[static_cast<size_t>(j) * (d + 1) + i] = evec[ts.eigen_classes[j][0]][i];
    ed.Q = invert(ed.P, d + 1);
    for (auto& z : ed.Q) z *= static_cast<double>(n);

    // E_j entry (x,y) is the class-j character sum at y-x, divided by |X|.
    ed.idempotents.assign(d + 1, std::vector<cplx>(static_cast<size_t>(n) * n, 0.0));
    for (int j = 0; j <= d; ++j) {
        std::vector<cplx> s(n, 0.0);
        for (int t : ts.eigen_classes[j])
            for (int z = 0; z < n; ++z) s[z] += chars[static_cast<size_t>(t) * n + z];
        for (int x = 0; x < n; ++x) {
            int xinv = g.inverse_index(x);
            for (int y = 0; y < n; ++y)
                ed.idempotents[j][static_cast<size_t>(x) * n + y] =
                    s[g.multiply_index(y, xinv)] / static_cast<double>(n);
        }
    }

    attach_eigen_data(ts.scheme, std::move(ed), tol);

    for (int j = 0; j <= d; ++j)
        if (ts.scheme.eigen->multiplicities[j] != static_cast<int>(ts.eigen_classes[j].size()))
            fail(ErrorKind::ValidationFailure, "character class size disagrees with the idempotent rank");

    return ts;
}

const EigenData& eigen_data(const TranslationScheme& ts) { return *ts.scheme.eigen; }

TranslationScheme dual_scheme(const TranslationScheme& ts) {
    return translation_scheme(dual_group(ts.group), ts.eigen_classes, ts.scheme.eigen->Q);
}

} // namespace skaff
