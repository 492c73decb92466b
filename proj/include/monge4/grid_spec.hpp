#pragma once

#include <cstddef>

namespace monge4 {

/// Uniform rectangular sampling grid, nu x nv nodes including both ends.
struct GridSpec {
    double u0 = -1.0;
    double u1 = 1.0;
    double v0 = -1.0;
    double v1 = 1.0;
    int nu = 41;
    int nv = 41;

    /// Throws ParameterError unless u1 > u0, v1 > v0, nu, nv >= 2.
    void validate() const;

    double hu() const { return (u1 - u0) / (nu - 1); }
    double hv() const { return (v1 - v0) / (nv - 1); }
    /// Node coordinates; the last node lands exactly on the upper bound.
    double u_at(int i) const { return i == nu - 1 ? u1 : u0 + i * hu(); }
    double v_at(int j) const { return j == nv - 1 ? v1 : v0 + j * hv(); }
    std::size_t size() const { return static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv); }
};

}  // namespace monge4
