#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace roadgrid {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfBounds : Error { using Error::Error; };
struct InvalidDistance : Error { using Error::Error; };
struct InvalidCode : Error { using Error::Error; };
struct MisalignedOrigin : Error { using Error::Error; };
struct StorageFailure : Error { using Error::Error; };
struct CentralTileMissing : Error { using Error::Error; };
struct DegeneratePolyline : Error { using Error::Error; };
struct CropOutsideMap : Error { using Error::Error; };
struct InsufficientClearance : Error { using Error::Error; };
struct MissingGroundTruth : Error { using Error::Error; };
struct MissingInferenceFile : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct TooFewPoints : Error { using Error::Error; };
struct NoLaneFound : Error { using Error::Error; };
struct EmptyList : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double squared_norm() const { return x * x + y * y; }
    Vec2 normalized() const {
        double n = norm();
        return n > 0.0 ? Vec2{x / n, y / n} : Vec2{0.0, 0.0};
    }
};

inline Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

// Wraps an angle into (-pi, pi].
inline double normalize_angle(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    if (a > M_PI) a -= 2.0 * M_PI;
    return a;
}

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double yaw = 0.0;  // rad, normalized to (-pi, pi]

    Vec2 position() const { return {x, y}; }
    Vec2 heading() const { return {std::cos(yaw), std::sin(yaw)}; }
    // Unit vector 90 degrees to the left of the heading.
    Vec2 left_normal() const { return {-std::sin(yaw), std::cos(yaw)}; }
};

}  // namespace roadgrid
