#include "vkernel/coord.hpp"

#include <cmath>
#include <string>

namespace vk {

namespace {
void check_index(int v, const char* what) {
    if (v < 1 || v > 0xFFFF) fail(Errc::index_out_of_range, std::string(what) + " index " + std::to_string(v));
}
}  // namespace

CoordId CoordId::x(int i) {
    check_index(i, "x");
    return {CoordKind::X, static_cast<uint16_t>(i), 0, 0};
}

CoordId CoordId::y(int mu) {
    check_index(mu, "y");
    return {CoordKind::Y, static_cast<uint16_t>(mu), 0, 0};
}

CoordId CoordId::z(int i, int mu) {
    check_index(i, "z");
    check_index(mu, "z");
    return {CoordKind::Z, static_cast<uint16_t>(i), static_cast<uint16_t>(mu), 0};
}

CoordId CoordId::z2(int k, int i, int mu) {
    check_index(k, "z2");
    check_index(i, "z2");
    check_index(mu, "z2");
    if (k > i) std::swap(k, i);
    return {CoordKind::Z2, static_cast<uint16_t>(k), static_cast<uint16_t>(i),
            static_cast<uint16_t>(mu)};
}

std::string CoordId::name() const {
    switch (kind) {
        case CoordKind::X: return "x" + std::to_string(a);
        case CoordKind::Y: return "y" + std::to_string(a);
        case CoordKind::Z: return "z" + std::to_string(a) + "_" + std::to_string(b);
        case CoordKind::Z2:
            return "z" + std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(c);
    }
    return "?";
}

double Point::at(CoordId c) const {
    auto it = values.find(c);
    if (it == values.end()) fail(Errc::eval_domain, "unassigned coordinate " + c.name());
    return it->second;
}

double Point::max_abs() const {
    double mx = 0.0;
    for (const auto& [c, v] : values) mx = std::max(mx, std::fabs(v));
    return mx;
}

}  // namespace vk
