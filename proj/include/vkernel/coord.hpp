#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vkernel/errors.hpp"

namespace vk {

enum class CoordKind : uint8_t { X, Y, Z, Z2 };

/// A jet coordinate: x_i, y_mu, z_{i,mu} or z_{k,i,mu}. Indices are 1-based.
/// Second-order coordinates are stored with k <= i (symmetric derivatives).
struct CoordId {
    CoordKind kind = CoordKind::X;
    uint16_t a = 0;  // X: i, Y: mu, Z: i, Z2: k
    uint16_t b = 0;  // Z: mu, Z2: i
    uint16_t c = 0;  // Z2: mu

    static CoordId x(int i);
    static CoordId y(int mu);
    static CoordId z(int i, int mu);
    static CoordId z2(int k, int i, int mu);  // canonicalizes to k <= i

    /// Packed key that sorts by (kind, indices); the canonical coordinate order.
    uint64_t key() const {
        return (uint64_t(kind) << 48) | (uint64_t(a) << 32) | (uint64_t(b) << 16) | uint64_t(c);
    }

    std::string name() const;

    friend bool operator==(const CoordId& l, const CoordId& r) { return l.key() == r.key(); }
    friend std::strong_ordering operator<=>(const CoordId& l, const CoordId& r) {
        return l.key() <=> r.key();
    }
};

/// A concrete assignment of coordinate values.
struct Point {
    std::map<CoordId, double> values;

    double at(CoordId c) const;
    void set(CoordId c, double v) { values[c] = v; }
    double max_abs() const;
};

}  // namespace vk
