#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "skaff/errors.hpp"

namespace skaff {

using cplx = std::complex<double>;

/// Element of a finite abelian group held as one coordinate per cyclic
/// factor, each reduced into [0, m_j).
struct GroupElement {
    std::vector<int> coords;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Character of the same group, stored by the coordinates of its label in
/// the (isomorphic) dual group.
struct Character {
    std::vector<int> coords;

    friend bool operator==(const Character&, const Character&) = default;
};

/// Direct product of cyclic groups Z_{m_1} x ... x Z_{m_r}.  Elements are
/// enumerated lexicographically by coordinates; the flat index of an element
/// is used as a basis index everywhere downstream.
class AbelianGroup {
public:
    explicit AbelianGroup(std::vector<int> orders);

    const std::vector<int>& orders() const noexcept { return orders_; }
    int size() const noexcept { return size_; }
    int rank() const noexcept { return static_cast<int>(orders_.size()); }

    int index_of(const GroupElement& x) const;
    GroupElement element(int index) const;

    GroupElement identity() const;
    GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;

    // Flat-index variants used by inner loops.
    int multiply_index(int a, int b) const;
    int inverse_index(int a) const;
    int identity_index() const noexcept { return 0; }

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

private:
    void check_shape(const GroupElement& x) const;

    std::vector<int> orders_;
    std::vector<int> strides_;
    int size_ = 1;
    long long angle_denom_ = 1;          // lcm of the orders
    std::vector<long long> angle_mult_;  // angle_denom_ / m_j
};

AbelianGroup make_abelian_group(std::vector<int> orders);

/// Characters live in an isomorphic group; the pairing below treats a
/// character's coordinates as an element of dual_group(g).
AbelianGroup dual_group(const AbelianGroup& g);

/// eps(x) = exp(2*pi*i * sum_j eps_j x_j / m_j).  Always unit modulus.
cplx character_value(const AbelianGroup& g, const Character& eps, const GroupElement& x);

/// Index-level pairing: character row t evaluated at element x.
cplx character_value_index(const AbelianGroup& g, int t, int x);

/// Full |X| x |X| table M[t][x] = (character t)(element x), row-major.
std::vector<cplx> character_table(const AbelianGroup& g);

} // namespace skaff
