#include "skaff/groups.hpp"

#include <cmath>
#include <numeric>

namespace skaff {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

AbelianGroup::AbelianGroup(std::vector<int> orders) : orders_(std::move(orders)) {
    if (orders_.empty()) fail(ErrorKind::InvalidInput, "group needs at least one cyclic factor");
    for (int m : orders_) {
        if (m <= 0) fail(ErrorKind::InvalidInput, "group factor order must be positive, got " + std::to_string(m));
        size_ *= m;
        angle_denom_ = std::lcm(angle_denom_, static_cast<long long>(m));
    }
    strides_.assign(orders_.size(), 1);
    for (int j = static_cast<int>(orders_.size()) - 2; j >= 0; --j)
        strides_[j] = strides_[j + 1] * orders_[j + 1];
    angle_mult_.reserve(orders_.size());
    for (int m : orders_) angle_mult_.push_back(angle_denom_ / m);
}

void AbelianGroup::check_shape(const GroupElement& x) const {
    if (x.coords.size() != orders_.size())
        fail(ErrorKind::InvalidInput, "element has " + std::to_string(x.coords.size()) +
                                          " coordinates, group has rank " + std::to_string(orders_.size()));
    for (size_t j = 0; j < orders_.size(); ++j)
        if (x.coords[j] < 0 || x.coords[j] >= orders_[j])
            fail(ErrorKind::InvalidInput, "coordinate " + std::to_string(j) + " out of range");
}

int AbelianGroup::index_of(const GroupElement& x) const {
    check_shape(x);
    int idx = 0;
    for (size_t j = 0; j < orders_.size(); ++j) idx += x.coords[j] * strides_[j];
    return idx;
}

GroupElement AbelianGroup::element(int index) const {
    if (index < 0 || index >= size_) fail(ErrorKind::InvalidInput, "element index out of range");
    GroupElement x;
    x.coords.resize(orders_.size());
    for (size_t j = 0; j < orders_.size(); ++j) {
        x.coords[j] = index / strides_[j];
        index %= strides_[j];
    }
    return x;
}

GroupElement AbelianGroup::identity() const {
    return GroupElement{std::vector<int>(orders_.size(), 0)};
}

GroupElement AbelianGroup::multiply(const GroupElement& a, const GroupElement& b) const {
    check_shape(a);
    check_shape(b);
    GroupElement c;
    c.coords.resize(orders_.size());
    for (size_t j = 0; j < orders_.size(); ++j) c.coords[j] = (a.coords[j] + b.coords[j]) % orders_[j];
    return c;
}

GroupElement AbelianGroup::inverse(const GroupElement& a) const {
    check_shape(a);
    GroupElement c;
    c.coords.resize(orders_.size());
    for (size_t j = 0; j < orders_.size(); ++j) c.coords[j] = (orders_[j] - a.coords[j]) % orders_[j];
    return c;
}

int AbelianGroup::multiply_index(int a, int b) const {
    int idx = 0;
    for (size_t j = 0; j < orders_.size(); ++j) {
        int aj = a / strides_[j] % orders_[j];
        int bj = b / strides_[j] % orders_[j];
        idx += (aj + bj) % orders_[j] * strides_[j];
    }
    return idx;
}

int AbelianGroup::inverse_index(int a) const {
    int idx = 0;
    for (size_t j = 0; j < orders_.size(); ++j) {
        int aj = a / strides_[j] % orders_[j];
        idx += (orders_[j] - aj) % orders_[j] * strides_[j];
    }
    return idx;
}

AbelianGroup make_abelian_group(std::vector<int> orders) { return AbelianGroup(std::move(orders)); }

AbelianGroup dual_group(const AbelianGroup& g) { return AbelianGroup(g.orders()); }

cplx character_value(const AbelianGroup& g, const Character& eps, const GroupElement& x) {
    return character_value_index(g, g.index_of(GroupElement{eps.coords}), g.index_of(x));
}

cplx character_value_index(const AbelianGroup& g, int t, int x) {
    // Accumulate the phase as an exact fraction of a turn before touching
    // floating point; keeps |value| = 1 to machine precision.
    const auto& orders = g.orders();
    long long denom = 1;
    for (int m : orders) denom = std::lcm(denom, static_cast<long long>(m));
    long long num = 0;
    int rest_t = t, rest_x = x;
    std::vector<int> strides(orders.size(), 1);
    for (int j = static_cast<int>(orders.size()) - 2; j >= 0; --j) strides[j] = strides[j + 1] * orders[j + 1];
    for (size_t j = 0; j < orders.size(); ++j) {
        int tj = rest_t / strides[j];
        rest_t %= strides[j];
        int xj = rest_x / strides[j];
        rest_x %= strides[j];
        num = (num + static_cast<long long>(tj) * xj % orders[j] * (denom / orders[j])) % denom;
    }
    return std::polar(1.0, kTwoPi * static_cast<double>(num) / static_cast<double>(denom));
}

std::vector<cplx> character_table(const AbelianGroup& g) {
    const int n = g.size();
    std::vector<cplx> table(static_cast<size_t>(n) * n);
    for (int t = 0; t < n; ++t)
        for (int x = 0; x < n; ++x) table[static_cast<size_t>(t) * n + x] = character_value_index(g, t, x);
    return table;
}

} // namespace skaff
