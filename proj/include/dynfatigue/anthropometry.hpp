#pragma once

#include "dynfatigue/error.hpp"

namespace dynfatigue {

/// Subject stature in meters and body mass in kilograms.
struct Subject {
    double height = 0.0;
    double mass = 0.0;
};

/// Forearm/hand segment geometry used by the single-link elbow model.
/// Hand mass is not part of the anthropometric set; the dynamic model treats
/// the hand as massless and places the held load on it.
struct BodyParams {
    double forearm_length = 0.0;  ///< m
    double forearm_radius = 0.0;  ///< m
    double hand_length = 0.0;     ///< m
    double forearm_mass = 0.0;    ///< kg
};

namespace anthropometry {
inline constexpr double kForearmLengthPerHeight = 0.146;
inline constexpr double kForearmRadiusPerLength = 0.125;
inline constexpr double kHandLengthPerHeight = 0.108;
inline constexpr double kForearmMassPerBodyMass = 0.023;
}  // namespace anthropometry

/// Segment parameters as fixed fractions of height and body mass.
inline BodyParams derive_body_params(const Subject& subject) {
    if (!(subject.height > 0.0)) {
        throw DomainError("subject height must be positive");
    }
    if (!(subject.mass > 0.0)) {
        throw DomainError("subject mass must be positive");
    }
    BodyParams body;
    body.forearm_length = anthropometry::kForearmLengthPerHeight * subject.height;
    body.forearm_radius = anthropometry::kForearmRadiusPerLength * body.forearm_length;
    body.hand_length = anthropometry::kHandLengthPerHeight * subject.height;
    body.forearm_mass = anthropometry::kForearmMassPerBodyMass * subject.mass;
    return body;
}

}  // namespace dynfatigue
