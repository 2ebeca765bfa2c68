// Decibel/linear and watt/dBm conversions. All link math runs in linear
// units at full double precision; decibels are the presentation layer.
#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "fsolink/errors.hpp"

namespace fsolink {

namespace detail {

inline std::string describe(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return std::to_string(x);
}

inline void require_finite(double x, std::string_view label) {
    if (!std::isfinite(x)) {
        throw domain_error(std::string(label) + " must be finite, got " + describe(x));
    }
}

inline void require_positive(double x, std::string_view label) {
    require_finite(x, label);
    if (x <= 0.0) {
        throw domain_error(std::string(label) + " must be > 0, got " + describe(x));
    }
}

inline void require_non_negative(double x, std::string_view label) {
    require_finite(x, label);
    if (x < 0.0) {
        throw domain_error(std::string(label) + " must be >= 0, got " + describe(x));
    }
}

}  // namespace detail

// Power magnitude in watts. Strictly positive so the decibel form exists.
class PowerValue {
public:
    explicit PowerValue(double watts, std::string_view label = "power") : watts_(watts) {
        detail::require_positive(watts, label);
    }

    double watts() const { return watts_; }
    double milliwatts() const { return watts_ * 1e3; }

private:
    double watts_;
};

// A finite decibel quantity; dBm when produced by the watt conversions.
class DecibelValue {
public:
    DecibelValue() = default;
    explicit DecibelValue(double db, std::string_view label = "decibel value") : db_(db) {
        detail::require_finite(db, label);
    }

    double db() const { return db_; }

private:
    double db_ = 0.0;
};

inline DecibelValue db_from_linear(double x, std::string_view label = "linear value") {
    detail::require_positive(x, label);
    return DecibelValue(10.0 * std::log10(x));
}

inline double linear_from_db(DecibelValue d) {
    return std::pow(10.0, d.db() / 10.0);
}

inline DecibelValue dbm_from_watts(PowerValue p) {
    return DecibelValue(10.0 * std::log10(p.watts() / 0.001));
}

inline PowerValue watts_from_dbm(DecibelValue dbm) {
    return PowerValue(0.001 * linear_from_db(dbm));
}

}  // namespace fsolink
