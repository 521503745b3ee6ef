#pragma once

#include <cstdint>
#include <vector>

#include "vkernel/euler.hpp"

namespace vk {

struct SamplerConfig {
    uint64_t seed = 1;
    int trials = 20;
    double box = 1.0;
    double tol = 1e-9;
    double fd_step = 1e-5;
};

/// Deterministic uniform points in [-box, box] per coordinate of the space.
std::vector<Point> sample(const JetSpace& space, const SamplerConfig& cfg);

/// Evaluate e at every point. Domain failures store NaN.
/// Serial reference implementation.
void eval_batch_serial(const Expr& e, const std::vector<Point>& points, std::vector<double>& out);
/// OpenMP kernel; bitwise-identical to the serial reference.
void eval_batch_parallel(const Expr& e, const std::vector<Point>& points, std::vector<double>& out);

/// Max over trials of |central difference - symbolic derivative| / (1 + |exact|).
/// Singular draws are redrawn, at most 10 attempts per trial.
double finite_diff_check(const Expr& e, CoordId c, const SamplerConfig& cfg);

/// Numeric zero test of every Euler component on sampled F2 points.
std::vector<ZeroVerdict> numeric_euler_zero(const Lagrangian& L, const SamplerConfig& cfg);

namespace detail {
/// Deterministic point draw for (seed, trial, attempt) over sorted coords.
Point draw_point(const std::vector<CoordId>& coords, double box, uint64_t seed, uint64_t trial,
                 uint64_t attempt);
}  // namespace detail

}  // namespace vk
