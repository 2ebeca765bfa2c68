// Shared reference terminal/atmosphere parameter set used across the suites.
#pragma once

#include "fsolink/atmosphere.hpp"
#include "fsolink/geometry.hpp"
#include "fsolink/optics.hpp"

namespace fixtures {

inline fsolink::LinkSpec link() {
    return {1550e-9, 10.0, 1e-12, fsolink::Modulation::kOnOffKeying};
}

inline fsolink::TransmitterSpec transmitter() {
    return {0.8, 15e-6, 1e-6};
}

inline fsolink::ReceiverSpec receiver() {
    return {0.8, 0.08, 1e-6, -35.5};
}

inline fsolink::GroundSite site() {
    return {1.0, 40.0};
}

inline fsolink::AtmosphereSpec atmosphere() {
    return {3.128e-4, 0.5, 1.6, 20.0};
}

// Deterministic uniform samples in [0, 1) for hand-rolled property loops.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed) : state_(seed) {}

    double next() {
        state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<double>(state_ >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

}  // namespace fixtures
