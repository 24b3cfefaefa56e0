#pragma once

#include "arith_orbit/affine.hpp"

#include <cstdint>

namespace arith_orbit {

/// Forward orbit z_0, z_1, ... of some map, advanced one step at a time.
class Orbit {
public:
    virtual ~Orbit() = default;

    const PlanePoint& current() const { return z_; }
    std::uint64_t time() const { return t_; }

    void advance() {
        step();
        ++t_;
    }
    void advance(std::uint64_t steps) {
        for (std::uint64_t i = 0; i < steps; ++i) advance();
    }

protected:
    explicit Orbit(PlanePoint z0) : z_(std::move(z0)) {}
    virtual void step() = 0;

    PlanePoint z_;

private:
    std::uint64_t t_ = 0;
};

class AffineOrbit final : public Orbit {
public:
    AffineOrbit(AffineMap2 map, PlanePoint z0) : Orbit(std::move(z0)), map_(std::move(map)) {}

protected:
    void step() override { z_ = map_(z_); }

private:
    AffineMap2 map_;
};

}  // namespace arith_orbit
