#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lowpoly {

/// Point in the ground plane. `z` is the second horizontal axis; Y is up.
struct Vec2 {
    double x = 0.0;
    double z = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.z + b.z}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.z - b.z}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.z}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.z * b.z; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.z - a.z * b.x; }
inline double length_sq(Vec2 a) { return dot(a, a); }
inline double distance_sq(Vec2 a, Vec2 b) { return length_sq(a - b); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double length(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Linear RGB, components in [0,1].
struct Rgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline Rgb lerp(const Rgb& a, const Rgb& b, double t) {
    return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters (non-positive sizes, malformed tables, bad JSON fields).
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Collinear or zero-area geometry where a proper triangle is required.
class DegeneracyError : public Error {
  public:
    using Error::Error;
};

class TriangulationError : public Error {
  public:
    using Error::Error;
};

class ExportError : public Error {
  public:
    using Error::Error;
};

/// A pipeline stage failed; the message is prefixed with the stage name.
class StageError : public Error {
  public:
    StageError(std::string stage, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

  private:
    std::string stage_;
};

}  // namespace lowpoly
